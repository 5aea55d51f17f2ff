"""Signed lattice-point quantization and Duistermaat-Heckman data.

Both invariants weight each polytope of an oriented template by its sign:
the virtual quantization dimension adds the sign at every lattice point of
every polytope, and the DH density at a point is the signed count of the
polytopes containing it.  Nonorientable templates are rejected, since both
quantities are defined only through orientation signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegralError
from .exactgeom import as_point
from .template import OrigamiTemplate, orientation_signs


@dataclass(frozen=True)
class QuantizationResult:
    """Signed multiplicity per lattice point plus their total."""

    per_point: dict
    virtual_dimension: int

    def items(self):
        return tuple(self.per_point.items())


@dataclass(frozen=True)
class DHValue:
    point: tuple
    density: int
    generic: bool


def quantize(T: OrigamiTemplate) -> QuantizationResult:
    """Add each polytope's sign at each of its lattice points.

    Requires an orientation and integral vertices (the polytope-level
    sufficient condition for an integral form).
    """
    signs = orientation_signs(T)
    bad = [
        v
        for P in T.polytopes
        for v in P.vertices
        if any(c.denominator != 1 for c in v)
    ]
    if bad:
        raise NonIntegralError(bad)
    per: dict = {}
    total = 0
    for sign, P in zip(signs, T.polytopes):
        points = P.lattice_points()
        total += sign * len(points)
        for p in points:
            per[p] = per.get(p, 0) + sign
    return QuantizationResult(dict(sorted(per.items())), total)


def dh_density(T: OrigamiTemplate, x) -> DHValue:
    """Signed number of polytopes containing x (closed containment).

    The ``generic`` flag is False when x lies on some polytope boundary;
    the density is still reported with the closed-containment convention.
    """
    signs = orientation_signs(T)
    pt = as_point(x, T.dim)
    density = 0
    generic = True
    for sign, P in zip(signs, T.polytopes):
        loc = P.contains(pt)
        if loc.kind == "boundary":
            generic = False
        if loc.inside:
            density += sign
    return DHValue(pt, density, generic)


def signed_volume(T: OrigamiTemplate) -> Fraction:
    """Total mass of the signed Lebesgue sum over the template polytopes."""
    signs = orientation_signs(T)
    return sum(
        (sign * P.volume() for sign, P in zip(signs, T.polytopes)),
        Fraction(0),
    )
