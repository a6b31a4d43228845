"""zkpin: arithmetic-circuit proof toolkit.

Pipeline: DSL or builder circuits -> rank-1 constraint systems -> quadratic
arithmetic programs -> setup / prove / verify over a pluggable bilinear
backend, plus a gadget library (hashing, comparisons, Merkle membership)
and scripted ledger protocols built on top.
"""

from .circuit import (
    CircuitAst,
    CircuitBuilder,
    ConstraintSystem,
    Witness,
    bind,
    check_constraints,
    eval_witness,
    flatten,
    parse_circuit,
    project_witness,
)
from .fields import FIELD_PRESETS, FieldElement, PrimeField, field_from_name
from .pairing import CurveBackend, TransparentBackend, pair
from .pinocchio import Proof, prove, prove_zk, setup, verify
from .polynomials import Polynomial, interpolate, vanishing_poly
from .qap import Qap, compute_h, qap_satisfied, reduce

__version__ = "0.1.0"


def compile_circuit(text: str, field: PrimeField) -> CircuitAst:
    """Parse DSL source with the standard gadget templates in scope."""
    from .gadgets import standard_templates

    return parse_circuit(text, field, gadgets=standard_templates())
