"""Equivariant Poincare series for templates with one coorientable fold.

The fold facet's outward normal defines a height function that is zero on
the fold and positive inside both polytopes.  Its critical loci are read off
combinatorially: the maximal faces whose active normals span the height
direction, excluding faces inside the fold facet.  Each contributes a
shifted vertex-counting series; the shift is the Morse index on the positive
side and its complement on the negative side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentIndex, NonorientableError, PreconditionError
from .exactgeom import FaceRef, HPolytope, _rank
from .template import OrigamiTemplate, orientation_signs


@dataclass(frozen=True)
class CriticalFace:
    """A critical face with its Morse data.

    ``m`` is the face dimension (the critical manifold has dimension 2m),
    ``ind`` twice the count of descending transverse edges, and ``r`` the
    degree shift: ind on the +1 side and the complementary transverse index
    2(n - m) - ind on the -1 side, where the height is climbed instead.
    """

    polytope: int
    face: FaceRef
    vertices: tuple
    m: int
    side: int
    ind: int
    r: int


@dataclass(frozen=True)
class PoincareSeries:
    cap: int
    coefficients: tuple[int, ...]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def fold_direction(T: OrigamiTemplate) -> tuple[tuple[int, ...], Fraction]:
    """Outward normal and offset of the unique fused facet.

    The height b - <x, normal> is nonnegative on both polytopes and zero
    exactly on the fold facet.  Requires a valid oriented template whose
    fusion set is a single pair.
    """
    if len(T.fusions) != 1:
        raise PreconditionError(
            f"need exactly one fusion (connected fold), got {len(T.fusions)}"
        )
    fu = T.fusions[0]
    if not fu.is_pair:
        raise PreconditionError("the single fold is not coorientable")
    try:
        orientation_signs(T)
    except NonorientableError as exc:
        raise PreconditionError(f"template is not orientable: {exc}") from exc
    hs_a = T.polytopes[fu.a.polytope].halfspaces[fu.a.facet]
    hs_b = T.polytopes[fu.b.polytope].halfspaces[fu.b.facet]
    if hs_a != hs_b:
        raise PreconditionError(
            "fused facets carry different supporting halfspaces"
        )
    return hs_a.normal, hs_a.offset


def critical_faces(T: OrigamiTemplate, xi) -> tuple[CriticalFace, ...]:
    """Maximal faces whose active normal span contains xi, off the fold."""
    signs = orientation_signs(T)
    xi = tuple(int(c) for c in xi)
    n = T.dim
    out = []
    for i, P in enumerate(T.polytopes):
        fused = T.fused_facets(i)
        candidates = []
        for face in P.faces():
            if fused & set(face.active):
                continue  # maps into the fold
            rows = [P.halfspaces[k].normal for k in face.active]
            if _rank(rows) != _rank(list(rows) + [xi]):
                continue
            candidates.append(face)
        vsets = {
            face: frozenset(P.face_vertices(face)) for face in candidates
        }
        maximal = [
            face
            for face in candidates
            if not any(
                other is not face and vsets[face] < vsets[other]
                for other in candidates
            )
        ]
        for face in sorted(maximal, key=lambda f: f.active):
            verts = P.face_vertices(face)
            counts = set()
            for w in verts:
                descending = 0
                for u in P.edge_directions(w):
                    tangent = all(
                        _dot(P.halfspaces[k].normal, u) == 0
                        for k in face.active
                    )
                    if tangent:
                        continue
                    p = _dot(u, xi)
                    if p == 0:
                        raise InconsistentIndex(
                            f"transverse edge {u} at {w} is level for {xi}"
                        )
                    if p > 0:
                        descending += 1
                counts.add(descending)
            if len(counts) != 1:
                raise InconsistentIndex(
                    f"face {face.active} of polytope {i} has vertexwise "
                    f"descending counts {sorted(counts)}"
                )
            ind = 2 * counts.pop()
            r = ind if signs[i] == 1 else 2 * (n - face.dim) - ind
            out.append(
                CriticalFace(i, face, verts, face.dim, signs[i], ind, r)
            )
    return tuple(out)


def face_ht_series(X: CriticalFace, cap: int, xi_aux=None) -> tuple[int, ...]:
    """Coefficients up to cap of the face's equivariant Poincare series.

    The face is a Delzant polytope in its own affine lattice; a generic
    auxiliary vector sorts its vertices by index and the series is
    sum_w t^(2 ind(w)) / (1 - t^2)^n, n the ambient torus rank.
    """
    if cap < 0 or cap % 2:
        raise ValueError("cap must be a nonnegative even integer")
    P: HPolytope = X.face.polytope
    n = P.dim
    active = set(X.face.active)
    per_vertex = []
    all_dirs = []
    for w in X.vertices:
        dirs = [
            u
            for u in P.edge_directions(w)
            if all(_dot(P.halfspaces[k].normal, u) == 0 for k in active)
        ]
        per_vertex.append(dirs)
        all_dirs.extend(dirs)
    if xi_aux is None:
        N = 1 + max((abs(c) for u in all_dirs for c in u), default=1)
        xi_aux = tuple(N ** j for j in range(n))
    else:
        xi_aux = tuple(int(c) for c in xi_aux)

    numerator = [0] * (cap + 1)
    for dirs in per_vertex:
        index = 0
        for u in dirs:
            p = _dot(u, xi_aux)
            if p == 0:
                raise ValueError(
                    f"auxiliary vector {xi_aux} pairs to zero with face edge {u}"
                )
            if p > 0:
                index += 1
        if 2 * index <= cap:
            numerator[2 * index] += 1

    base = [0] * (cap + 1)
    for k in range(0, cap + 1, 2):
        base[k] = math.comb(k // 2 + n - 1, n - 1)
    coeffs = [0] * (cap + 1)
    for j, c in enumerate(numerator):
        if c:
            for k in range(j, cap + 1):
                coeffs[k] += c * base[k - j]
    return tuple(coeffs)


def ht_poincare(T: OrigamiTemplate, cap: int = 20) -> PoincareSeries:
    """dim H_T^k for k = 0..cap from the critical faces of the fold height."""
    if cap < 0 or cap % 2:
        raise ValueError("cap must be a nonnegative even integer")
    xi, _offset = fold_direction(T)
    coefficients = [0] * (cap + 1)
    for X in critical_faces(T, xi):
        series = face_ht_series(X, cap)
        for k in range(X.r, cap + 1, 2):
            coefficients[k] += series[k - X.r]
    return PoincareSeries(cap, tuple(coefficients))
