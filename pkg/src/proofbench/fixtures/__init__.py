"""Shipped proof corpus.  Files ending in .paper-literal keep a printed figure as it
appears, damage included; they are documentation, not checking fixtures."""

import json
from importlib import resources
from pathlib import Path


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__name__) / name))


def fixture_names() -> list:
    return sorted(p.name for p in resources.files(__name__).iterdir()
                  if p.name.endswith((".ndproof", ".skproof", ".hproof", ".json", ".paper-literal")))


def read_fixture(name: str) -> dict:
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))


def load_fixture(name: str):
    from ..syntax import load_proof

    path = fixture_path(name)
    return load_proof(path.read_bytes(), base_dir=path.parent)


def load_connective(name: str):
    from ..connectives import define_connective

    return define_connective(read_fixture(name))
