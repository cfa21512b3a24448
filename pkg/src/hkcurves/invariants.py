"""Ring-level invariants assembled from valuation tables.

The Herzog-Kunz sequence a_1 < ... < a_n of a branch R is the set
v(m) \\ v(m^2); its length is the embedding dimension, any elements with these
valuations generate the ring, and it starts with the multiplicity.
"""

from dataclasses import dataclass
from functools import lru_cache

from hkcurves.engine import (
    DEFAULT_MAX_PRECISION,
    Parametrization,
    analyze_ring,
    ideal_closure,
    ideal_min_generators,
)
from hkcurves.errors import ConsistencyError
from hkcurves.semigroup import NumericalSemigroup, sg_from_value_set


@dataclass(frozen=True)
class HKProfile:
    """Herzog-Kunz sequence with chosen generators and optional certificates.

    certificates[i], when present, is a polynomial z_i in the previous
    generators with y_i = x_i + z_i for the parametrization it was derived
    from.
    """

    sequence: tuple
    generators: tuple
    certificates: tuple = None

    def __post_init__(self):
        if list(self.sequence) != sorted(set(self.sequence)):
            raise ConsistencyError("Herzog-Kunz sequence must be strictly increasing")
        if len(self.generators) != len(self.sequence):
            raise ConsistencyError("one generator per sequence entry required")


@dataclass(frozen=True)
class RingReport:
    """Everything the analysis pipeline knows about one branch."""

    parametrization: Parametrization
    basis: object
    m2_basis: object
    multiplicity: int
    value_semigroup: NumericalSemigroup
    conductor_degree: int
    hk: HKProfile
    embedding_dimension: int
    conductor_in_m2: bool
    reduced_type_s: int
    reduced_type_b: tuple
    precision_used: int


def multiplicity(basis):
    """Least nonzero valuation in the ring: the multiplicity."""
    return min(basis.reps)


def value_semigroup(basis, conductor):
    values = frozenset([0, *basis.reps])
    sg = sg_from_value_set(values, basis.precision - 1)
    if sg.conductor != conductor:
        raise ConsistencyError(
            "conductor mismatch: table says %d, semigroup says %d" % (conductor, sg.conductor)
        )
    return sg


def msquare_basis(parametrization, basis):
    """Table for m^2, generated by the pairwise products of the generators."""
    gens = parametrization.gens
    prods = [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]
    return ideal_closure(prods, basis, basis.precision)


def hk_sequence(parametrization, basis, conductor):
    """Herzog-Kunz profile: valuations v(m) \\ v(m^2) with their table reps."""
    m2 = msquare_basis(parametrization, basis)
    pairs = ideal_min_generators(basis.as_ideal(), m2)
    seq = tuple(v for v, _ in pairs)
    gens = tuple(rep for _, rep in pairs)
    return HKProfile(seq, gens), m2


def embedding_dimension(profile):
    return len(profile.sequence)


def conductor_in_msquare(profile, conductor):
    """True iff the conductor ideal is contained in m^2, i.e. a_n < c_R."""
    return profile.sequence[-1] < conductor


def reduced_type(sg, conductor, mult):
    """Gap count of the value semigroup in the window [c_R - a_1, c_R - 1].

    Returns (s, b_list) where the b_i are the window gaps in ascending order.
    """
    lo = max(0, conductor - mult)
    b = tuple(x for x in range(lo, conductor) if not sg.contains(x))
    return len(b), b


@lru_cache(maxsize=256)
def _report_cached(parametrization, precision, max_precision):
    basis, conductor, a1 = analyze_ring(parametrization, precision, max_precision)
    sg = value_semigroup(basis, conductor)
    profile, m2 = hk_sequence(parametrization, basis, conductor)
    if profile.sequence[0] != a1:
        raise ConsistencyError("sequence must start at the multiplicity")
    s, b = reduced_type(sg, conductor, a1)
    return RingReport(
        parametrization=parametrization,
        basis=basis,
        m2_basis=m2,
        multiplicity=a1,
        value_semigroup=sg,
        conductor_degree=conductor,
        hk=profile,
        embedding_dimension=len(profile.sequence),
        conductor_in_m2=conductor_in_msquare(profile, conductor),
        reduced_type_s=s,
        reduced_type_b=b,
        precision_used=basis.precision,
    )


def ring_report(parametrization, precision=None, max_precision=DEFAULT_MAX_PRECISION):
    """Full analysis pipeline for one parametrization."""
    return _report_cached(parametrization, precision, max_precision)
