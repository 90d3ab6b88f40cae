"""JSON forms of generators and complete sets."""
from __future__ import annotations

from typing import Optional

from .core import (
    CyclicGenerator,
    CyclicMubSet,
    GeneratorTriple,
    MubClass,
    build_C,
    from_explicit,
    standard_seed,
)
from .entanglement import AmbiguousPartitionError, QubitPartition, finest_partition, structure_vector
from .gf2 import Gf2Matrix
from .pauli import vector_from_label


def generator_from_json(obj) -> CyclicGenerator:
    """Validated generator from ``{"B","R","A"[,"G0x"]}``, ``{"C"[,"G0x"]}`` or a bare C matrix."""
    if isinstance(obj, list) or (isinstance(obj, dict) and "data" in obj):
        return from_explicit(Gf2Matrix.from_json(obj))
    offset = Gf2Matrix.from_json(obj["G0x"]) if obj.get("G0x") is not None else None
    if "B" in obj:
        return build_C(GeneratorTriple.from_json(obj), offset)
    if "C" in obj:
        return from_explicit(Gf2Matrix.from_json(obj["C"]), offset)
    raise ValueError("generator JSON needs either B/R/A or C")


def generator_spec(g: CyclicGenerator) -> dict:
    """Input-compatible JSON for a generator."""
    out: dict = {"n": g.n}
    if g.triple is not None:
        out.update({k: v for k, v in g.triple.to_json().items() if k != "n"})
    else:
        out["C"] = g.C.to_json()
    if not g.offset.is_zero():
        out["G0x"] = g.offset.to_json()
    return out


def set_to_json(s: CyclicMubSet) -> dict:
    partitions: list[Optional[QubitPartition]] = []
    structure = None
    try:
        partitions = [finest_partition(c) for c in s.classes]
        structure = structure_vector(s).to_json()
    except (ValueError, AmbiguousPartitionError):
        partitions = [None] * len(s.classes)
    return {
        "n": s.n,
        "set_type": s.set_type,
        "generator": s.generator.to_json(),
        "classes": [
            {
                "index": c.index,
                "G": c.G.to_json(),
                "elements": c.labels(),
                "partition": None if p is None else str(p),
            }
            for c, p in zip(s.classes, partitions)
        ],
        "structure": structure,
    }


def set_from_json(obj: dict) -> CyclicMubSet:
    """Rebuild a set exactly as stored (no validation, element lists kept verbatim)."""
    gen = obj["generator"]
    triple = GeneratorTriple.from_json(gen["triple"]) if "triple" in gen else None
    n = obj["n"]
    G0 = Gf2Matrix.from_json(gen["G0"]) if "G0" in gen else standard_seed(n)
    g = CyclicGenerator(Gf2Matrix.from_json(gen["C"]), G0, triple)
    classes = tuple(
        MubClass(c["index"], Gf2Matrix.from_json(c["G"]), tuple(vector_from_label(e) for e in c["elements"]))
        for c in obj["classes"]
    )
    return CyclicMubSet(g, classes, obj.get("set_type", "explicit"))
