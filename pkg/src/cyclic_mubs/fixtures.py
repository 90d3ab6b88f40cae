"""Shipped three-qubit generators (``data/*.json``)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .core import CyclicGenerator, GeneratorTriple, build_C, from_explicit
from .gf2 import Gf2Matrix

FIXTURE_NAMES = ("field3", "group3", "semigroup3", "semigroup3_symmetric", "offset3")


@dataclass(frozen=True)
class Fixture:
    name: str
    n: int
    kind: str
    triple: Optional[GeneratorTriple]
    C: Optional[Gf2Matrix]
    offset: Optional[Gf2Matrix]
    expected_structure: tuple[int, ...]
    note: str = ""

    def generator(self) -> CyclicGenerator:
        """Validated generator; raises InvalidGeneratorError for a bad triple or C."""
        if self.triple is not None:
            return build_C(self.triple, self.offset)
        return from_explicit(self.C, self.offset)


def fixture_from_json(obj: dict) -> Fixture:
    triple = None
    if "B" in obj:
        triple = GeneratorTriple(
            Gf2Matrix.from_json(obj["B"]), Gf2Matrix.from_json(obj["R"]), Gf2Matrix.from_json(obj["A"])
        )
    return Fixture(
        name=obj.get("name", ""),
        n=obj["n"],
        kind=obj.get("kind", "explicit" if triple is None else ""),
        triple=triple,
        C=Gf2Matrix.from_json(obj["C"]) if "C" in obj else None,
        offset=Gf2Matrix.from_json(obj["G0x"]) if "G0x" in obj else None,
        expected_structure=tuple(obj.get("expected_structure", ())),
        note=obj.get("note", ""),
    )


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return resources.files(__package__).joinpath("data").joinpath(f"{name}.json").read_text()


def load_fixture(name: str) -> Fixture:
    return fixture_from_json(json.loads(fixture_text(name)))
