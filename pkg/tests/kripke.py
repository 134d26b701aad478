"""Exhaustive small Kripke models, written independently of the engines under test."""

from __future__ import annotations

import itertools

from proofbench.core import And, Atom, Bottom, Imp, Not, Or

# rooted posets as lists of up-sets (world i sees the worlds in ups[i], itself included)
POSETS = [
    [{0}],
    [{0, 1}, {1}],
    [{0, 1, 2}, {1, 2}, {2}],
    [{0, 1, 2}, {1}, {2}],
    [{0, 1, 2, 3}, {1, 3}, {2, 3}, {3}],
    [{0, 1, 2, 3}, {1}, {2}, {3}],
    [{0, 1, 2, 3}, {1, 2, 3}, {2}, {3}],
]


def _monotone_sets(ups):
    n = len(ups)
    for bits in itertools.product((0, 1), repeat=n):
        s = {i for i in range(n) if bits[i]}
        if all(ups[i] <= s for i in s):
            yield frozenset(s)


def models(atoms):
    for ups in POSETS:
        for vals in itertools.product(list(_monotone_sets(ups)), repeat=len(atoms)):
            yield ups, dict(zip(atoms, vals))


def forces(ups, val, w, f):
    if isinstance(f, Atom):
        return w in val[f.name]
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return forces(ups, val, w, f.left) and forces(ups, val, w, f.right)
    if isinstance(f, Or):
        return forces(ups, val, w, f.left) or forces(ups, val, w, f.right)
    if isinstance(f, Imp):
        return all(not forces(ups, val, v, f.left) or forces(ups, val, v, f.right) for v in ups[w])
    if isinstance(f, Not):
        return all(not forces(ups, val, v, f.body) for v in ups[w])
    raise TypeError(f)


def kripke_valid(f, atoms):
    return all(forces(ups, val, 0, f) for ups, val in models(atoms))
