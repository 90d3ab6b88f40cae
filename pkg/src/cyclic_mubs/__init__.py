"""Cyclic mutually unbiased bases for n qubits: construction, validation,
entanglement classification and circuit synthesis."""

from .core import (
    CyclicGenerator,
    CyclicMubSet,
    GeneratorTriple,
    InvalidGeneratorError,
    MubClass,
    build_C,
    build_classes,
    c_power,
    classify_set_type,
    from_explicit,
    generator_j,
    validate_mub_partition,
    validate_triple,
)
from .entanglement import QubitPartition, StructureVector, finest_partition, structure_vector
from .fixtures import FIXTURE_NAMES, load_fixture
from .gf2 import Gf2Matrix, Gf2Poly, char_poly, fibonacci_index, fibonacci_poly
from .pauli import PauliOp, symplectic_product, zx_from_vector
from .synth import Circuit, Gate, export_circuit, synth_field_based, synthesize

__version__ = "0.1.0"
