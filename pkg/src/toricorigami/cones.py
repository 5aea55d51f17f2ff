"""Weight cones at fixed points and the cone form of the DH density.

Every fixed point of an oriented template carries the isotropy weights given
by its edge directions.  Polarizing against a generic vector orients the
weights; the signed indicator sum of the resulting unimodular cones
reproduces the polytope Duistermaat-Heckman density, which
:func:`verify_dh_identity` checks pointwise on seeded rational samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryPoint, DimensionMismatch, NonGenericPolarization
from .exactgeom import as_point, _det, _solve_square
from .invariants import dh_density
from .template import OrigamiTemplate, fixed_points, orientation_signs


@dataclass(frozen=True)
class WeightSet:
    """Isotropy weights (edge directions) at one fixed point."""

    polytope: int
    vertex: tuple
    weights: tuple[tuple[int, ...], ...]
    sign: int


@dataclass(frozen=True)
class PolarizedCone:
    """A weight cone after polarization: all generators pair > 0 with v."""

    apex: tuple
    generators: tuple[tuple[int, ...], ...]
    flips: int
    sign: int


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64.
    Used for reproducible rational sampling: each draw is state' / 2^64.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MODULUS = 1 << 64

    def __init__(self, seed: int = 0):
        self.state = seed % self.MODULUS

    def next_u64(self) -> int:
        self.state = (
            self.MULTIPLIER * self.state + self.INCREMENT
        ) % self.MODULUS
        return self.state

    def next_fraction(self) -> Fraction:
        return Fraction(self.next_u64(), self.MODULUS)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of sampling cone density against polytope density."""

    v: tuple[int, ...]
    requested: int
    samples: int
    agreements: int
    disagreements: int
    boundary_discards: int
    first_counterexample: tuple | None

    @property
    def success(self) -> bool:
        return self.disagreements == 0 and self.samples == self.requested


def weight_sets(T: OrigamiTemplate) -> tuple[WeightSet, ...]:
    """One weight set per fixed point of the oriented template."""
    signs = orientation_signs(T)
    out = []
    for fp in fixed_points(T):
        P = T.polytopes[fp.polytope]
        out.append(
            WeightSet(
                fp.polytope,
                fp.vertex,
                P.edge_directions(fp.vertex),
                signs[fp.polytope],
            )
        )
    return tuple(out)


def default_polarization(T: OrigamiTemplate) -> tuple[int, ...]:
    """The vector (1, N, N^2, ...) with N = 1 + max |weight entry|.

    Generic for every integer vector with entries below N in absolute
    value, hence for all isotropy weights of the template.
    """
    entries = [
        abs(c)
        for fp in fixed_points(T)
        for u in T.polytopes[fp.polytope].edge_directions(fp.vertex)
        for c in u
    ]
    N = 1 + max(entries, default=1)
    return tuple(N ** j for j in range(T.dim))


def polarize(W: WeightSet, v) -> PolarizedCone:
    """Negate the weights pairing negatively with v; track the flip parity.

    The cone sign is the fixed point's side sign times (-1)^flips: each
    negated weight reverses the orientation of the edge basis once.
    """
    vv = tuple(int(c) for c in v)
    if any(len(w) != len(vv) for w in W.weights):
        raise DimensionMismatch(
            f"polarizing vector {vv} does not match weight dimension"
        )
    zeros = [w for w in W.weights if sum(a * b for a, b in zip(w, vv)) == 0]
    if zeros:
        raise NonGenericPolarization(zeros)
    generators = []
    flips = 0
    for w in W.weights:
        if sum(a * b for a, b in zip(w, vv)) > 0:
            generators.append(w)
        else:
            generators.append(tuple(-c for c in w))
            flips += 1
    return PolarizedCone(
        W.vertex, tuple(generators), flips, W.sign * (-1) ** flips
    )


def _cone_contains(cone: PolarizedCone, pt) -> bool:
    """Exact strict membership; raises BoundaryPoint when pt is on a wall."""
    n = len(cone.apex)
    columns = [[cone.generators[j][i] for j in range(n)] for i in range(n)]
    det = _det(columns)
    if abs(det) != 1:
        raise ValueError(f"cone generators are not a lattice basis (det {det})")
    rhs = [c - a for c, a in zip(pt, cone.apex)]
    t = _solve_square(columns, rhs)
    if any(c == 0 for c in t):
        raise BoundaryPoint(f"{pt} lies on a wall of the cone at {cone.apex}")
    return all(c > 0 for c in t)


def cone_density(T: OrigamiTemplate, v, x) -> int:
    """Signed count of polarized weight cones containing x."""
    pt = as_point(x, T.dim)
    density = 0
    for W in weight_sets(T):
        cone = polarize(W, v)
        if _cone_contains(cone, pt):
            density += cone.sign
    return density


def verify_dh_identity(
    T: OrigamiTemplate,
    v=None,
    sample_count: int = 200,
    seed: int = 0,
) -> IdentityReport:
    """Sample rational points and compare cone density with DH density.

    Points come from a box 10% larger than the union bounding box of the
    template polytopes, via the documented 64-bit LCG; samples on either
    decomposition's boundary are discarded and redrawn.
    """
    if sample_count <= 0:
        raise ValueError("sample_count must be positive")
    if v is None:
        v = default_polarization(T)
    v = tuple(int(c) for c in v)
    cones = [polarize(W, v) for W in weight_sets(T)]

    dim = T.dim
    lo = [
        min(vert[j] for P in T.polytopes for vert in P.vertices)
        for j in range(dim)
    ]
    hi = [
        max(vert[j] for P in T.polytopes for vert in P.vertices)
        for j in range(dim)
    ]
    margin = [(h - l) / 20 for l, h in zip(lo, hi)]
    lo = [l - m for l, m in zip(lo, margin)]
    span = [h + m - l for l, h, m in zip(lo, hi, margin)]

    rng = Lcg64(seed)
    kept = agreements = disagreements = discards = 0
    first = None
    budget = 10 * sample_count + 100
    for _ in range(budget):
        if kept == sample_count:
            break
        pt = tuple(l + s * rng.next_fraction() for l, s in zip(lo, span))
        try:
            cd = sum(c.sign for c in cones if _cone_contains(c, pt))
        except BoundaryPoint:
            discards += 1
            continue
        dv = dh_density(T, pt)
        if not dv.generic:
            discards += 1
            continue
        kept += 1
        if cd == dv.density:
            agreements += 1
        else:
            disagreements += 1
            if first is None:
                first = (pt, cd, dv.density)
    return IdentityReport(
        v, sample_count, kept, agreements, disagreements, discards, first
    )
