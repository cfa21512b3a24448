"""hkcurves: valuation invariants of curve branches R = k[[y1,...,yn]] in k[[t]].

Given a power-series parametrization with exact rational coefficients, the
package computes the value semigroup, conductor degree, Herzog-Kunz sequence
and generators with rewriting certificates, minimal-generator data of
fractional ideals, the reduced type and the conductor-extension ring, and
performs ring-preserving transforms (parameter normalization, tail
monomialization, truncation to polynomial generators, torsion-witness
construction).
"""

from hkcurves._backend import BACKEND as kernel_backend
from hkcurves.engine import (
    DEFAULT_MAX_PRECISION,
    IDEAL,
    RING,
    Parametrization,
    ReducedBasis,
    analyze_ring,
    ideal_closure,
    ideal_member,
    ideal_min_generators,
    reduce,
    ring_closure,
    ring_member,
)
from hkcurves.errors import (
    ConsistencyError,
    GcdError,
    HKError,
    HypothesisError,
    IndeterminateOrderError,
    InsufficientBoundError,
    MathError,
    NoRationalRootError,
    NotMinimalError,
    NotUnitError,
    ParseError,
    PrecisionError,
)
from hkcurves.genpoly import GenPoly
from hkcurves.invariants import (
    HKProfile,
    RingReport,
    conductor_in_msquare,
    embedding_dimension,
    hk_sequence,
    msquare_basis,
    multiplicity,
    reduced_type,
    ring_report,
    value_semigroup,
)
from hkcurves.parsing import parse_generators, parse_series
from hkcurves.semigroup import (
    NumericalSemigroup,
    sg_close,
    sg_from_value_set,
    sg_genus,
    sg_member,
    sg_minimal_generators,
)
from hkcurves.series import INFINITY, ExactScalar, PowerSeries, format_series
from hkcurves.transforms import (
    ExtensionReport,
    TorsionWitness,
    drop_redundant,
    extend_by_conductor,
    hk_generators,
    mm42_substitution,
    monomialize_tail,
    normalize_parameter,
    perturb_check,
    rings_equal,
    split_element,
    torsion_witness,
    truncate_parametrization,
    unit_order,
)

__version__ = "0.1.0"
