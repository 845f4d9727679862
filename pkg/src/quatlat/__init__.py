"""Exact arithmetic for definite quaternion orders over Q, Q(sqrt2), Q(sqrt5).

Unit groups, representation numbers with an exact lattice-enumeration
oracle, closed-form prediction formulas, and perceptive-suborder search.
"""

from .errors import (
    CapacityError,
    NoFormula,
    NoGeneratorFound,
    NotContained,
    NotCyclic,
    ParseError,
    PosetNotLinear,
    PreconditionViolated,
    QuatlatError,
    RankDeficient,
)
from .fields import (
    FIELDS_BY_NAME,
    QQ_FIELD,
    QSQRT2,
    QSQRT5,
    FieldElement,
    canonical_associate,
    factor,
    parse_field_element,
    primes_above,
)
from .quat import Quaternion, QuaternionAlgebra, parse_quaternion
from .lattices import (
    Lattice,
    canonicalize,
    colon_left,
    colon_right,
    index_ideal,
    index_z,
    is_order,
    lattice_intersection,
    lattice_product,
    lattice_sum,
    left_order,
    reduced_discriminant,
    right_order,
    scale,
)
from .enumeration import (
    coprime_split,
    norm_counts,
    orbit_profile,
    principal_generator,
    representations,
    unit_migration_equivalent,
    units1,
)
from .perceptive import (
    OrderPoset,
    chain_decompose,
    conductor_chain,
    cyclic_criterion,
    field_criterion,
    intermediate_orders,
    is_perceptive_bruteforce,
    kind_of,
    linear_poset_count_criterion,
    quotient_shape,
    search_perceptive,
)
from .formulas import (
    DivisorSumSpec,
    FormulaDescriptor,
    divisor_sum,
    formula_for,
    predict,
)
from .catalog import catalog, get_order, load_order_file, self_check

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DivisorSumSpec",
    "FieldElement",
    "FIELDS_BY_NAME",
    "FormulaDescriptor",
    "Lattice",
    "NoFormula",
    "NoGeneratorFound",
    "NotContained",
    "NotCyclic",
    "OrderPoset",
    "ParseError",
    "PosetNotLinear",
    "PreconditionViolated",
    "QQ_FIELD",
    "QSQRT2",
    "QSQRT5",
    "Quaternion",
    "QuaternionAlgebra",
    "QuatlatError",
    "RankDeficient",
    "canonical_associate",
    "canonicalize",
    "catalog",
    "chain_decompose",
    "colon_left",
    "colon_right",
    "conductor_chain",
    "coprime_split",
    "cyclic_criterion",
    "divisor_sum",
    "factor",
    "field_criterion",
    "formula_for",
    "get_order",
    "index_ideal",
    "index_z",
    "intermediate_orders",
    "is_order",
    "is_perceptive_bruteforce",
    "kind_of",
    "lattice_intersection",
    "lattice_product",
    "lattice_sum",
    "left_order",
    "linear_poset_count_criterion",
    "load_order_file",
    "norm_counts",
    "orbit_profile",
    "parse_field_element",
    "parse_quaternion",
    "predict",
    "primes_above",
    "principal_generator",
    "quotient_shape",
    "reduced_discriminant",
    "representations",
    "right_order",
    "scale",
    "search_perceptive",
    "self_check",
    "unit_migration_equivalent",
    "units1",
]
