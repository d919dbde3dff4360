"""Exact arithmetic and extension theory for finite commutative rings."""

from .dsl import build, parse, parse_element, pretty
from .errors import (
    BaseNotField,
    ConductorNotMaximal,
    Finding,
    InconsistentReport,
    InvalidIdeal,
    InvalidQuotient,
    InvalidRing,
    MissingWitness,
    NonUniqueMaximal,
    NotAHomomorphism,
    NotPrime,
    NotPrimitive,
    NotSemiprime,
    NotWellDefined,
    ReducibleImage,
    RingError,
    RingSyntaxError,
    TooLarge,
    UnsupportedModulus,
)
from .extensions import (
    analyze,
    closedness_predicates,
    conductor,
    enumerate_morphisms,
    is_local,
    is_SL,
    make_morphism,
    msupp,
    residual_analysis,
    sl_defect,
)
from .ideals import (
    Ideal,
    idempotents,
    ideal_generated,
    j_regular_witness,
    jacobson,
    local_factors,
    maximal_ideals,
    nilradical,
    quotient,
)
from .lattice import (
    classify_minimal,
    intermediate_rings,
    is_boolean_lattice,
    msl_subextension,
    seminormalization,
    sl_bottom,
    t_closure,
    u_closure,
    unit_generated_check,
)
from .morphism import RingMorphism
from .rings import (
    Element,
    FiniteRing,
    UnitGroup,
    make_idealization,
    make_poly_quot,
    make_product,
    make_zmod,
    prime_subring,
    subring_generated,
    units,
    zerodivisors,
)

__version__ = "0.1.0"
