"""Moment-curve point placements and exact hemisphere combinatorics.

Points are integer vectors, never normalized: every predicate is a sign of
an exact integer inner product or determinant, so there is no floating
point anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .errors import NoWitnessFound
from .setfam import enumerate_stable_ksubsets


@dataclass(frozen=True)
class GaleEmbedding:
    """n alternating-sign moment-curve points in Z^d, d = n - 2s + 1."""

    n: int
    s: int
    d: int
    points: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HemispherePartition:
    """Signs of <point_i, normal> for an exact integer normal direction."""

    normal: tuple[int, ...]
    signs: tuple[int, ...]  # one of -1, 0, +1 per point

    @property
    def plus_mask(self) -> int:
        return _mask_of(self.signs, 1)

    @property
    def minus_mask(self) -> int:
        return _mask_of(self.signs, -1)

    @property
    def zero_mask(self) -> int:
        return _mask_of(self.signs, 0)

    def signs_string(self) -> str:
        return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs)


@dataclass(frozen=True)
class SignVector:
    """A full-dimensional cell: strict signs plus an exact realizing direction."""

    signs: tuple[int, ...]  # -1 or +1 per point
    direction: tuple[int, ...]

    @property
    def plus_mask(self) -> int:
        return _mask_of(self.signs, 1)

    @property
    def minus_mask(self) -> int:
        return _mask_of(self.signs, -1)

    def signs_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class CellSet:
    cells: tuple[SignVector, ...]
    certified_exhaustive: bool


@dataclass(frozen=True)
class FaceSet:
    """All realizable sign vectors, zeros allowed (covectors of the arrangement)."""

    faces: tuple[HemispherePartition, ...]
    certified_exhaustive: bool


@dataclass(frozen=True)
class Witness:
    """Direction whose two strict open sides both host >= t of the same color.

    The direction may lie on up to d-1 point hyperplanes; those points count
    for neither side.  Witnesses on such boundary faces do occur: there are
    colorings for which no full-dimensional cell works.
    """

    face: HemispherePartition
    color: int
    count_pos: int
    count_neg: int
    t_pos: int
    t_neg: int


def _mask_of(signs, value: int) -> int:
    m = 0
    for i, s in enumerate(signs):
        if s == value:
            m |= 1 << i
    return m


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def det_exact(rows) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    mat = [list(r) for r in rows]
    n = len(mat)
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot = next((r for r in range(c, n) if mat[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                mat[i][j] = (mat[i][j] * mat[c][c] - mat[i][c] * mat[c][j]) // prev
            mat[i][c] = 0
        prev = mat[c][c]
    return sign * mat[n - 1][n - 1]


def build_embedding(n: int, s: int) -> GaleEmbedding:
    """Alternating moment-curve points: point i = (-1)^i (1, i, ..., i^(d-1))."""
    if s < 1:
        raise ValueError(f"s={s} must be >= 1")
    d = n - 2 * s + 1
    if d < 2:
        raise ValueError(f"d = n - 2s + 1 = {d} < 2 (need n >= 2s + 1)")
    points = []
    for i in range(1, n + 1):
        sgn = -1 if i % 2 else 1
        points.append(tuple(sgn * i**j for j in range(d)))
    return GaleEmbedding(n=n, s=s, d=d, points=tuple(points))


def general_position_check(emb: GaleEmbedding) -> bool:
    """True iff every d of the n points are linearly independent."""
    if emb.n < emb.d:
        return True
    for idx in combinations(range(emb.n), emb.d):
        if det_exact([emb.points[i] for i in idx]) == 0:
            return False
    return True


def _cross_normal(rows) -> tuple[int, ...]:
    """Integer vector spanning the orthogonal complement of d-1 rows in R^d."""
    d = len(rows) + 1
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in rows]
        normal.append((-1) ** j * (det_exact(minor) if minor else 1))
    return tuple(normal)


def _primitive(vec) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


def canonical_hemispheres(emb: GaleEmbedding):
    """Both orientations of every great sphere through d-1 of the points.

    Emitted in a fixed order: boundary subsets ascending lexicographically,
    positive orientation first.  In general position exactly the boundary
    subset gets sign 0.
    """
    d = emb.d
    for idx in combinations(range(emb.n), d - 1):
        normal = _primitive(_cross_normal([emb.points[i] for i in idx]))
        if all(x == 0 for x in normal):
            raise RuntimeError(f"rank-deficient boundary subset {idx}")
        signs = tuple(_sign(_dot(p, normal)) for p in emb.points)
        zeros = tuple(i for i, s in enumerate(signs) if s == 0)
        if zeros != idx:
            raise RuntimeError(
                f"embedding not in general position: boundary {idx} zeros {zeros}"
            )
        yield HemispherePartition(normal=normal, signs=signs)
        yield HemispherePartition(
            normal=tuple(-x for x in normal), signs=tuple(-s for s in signs)
        )


def verify_gale_property(emb: GaleEmbedding) -> HemispherePartition | None:
    """None if every canonical open hemisphere contains a stable s-subset.

    Returns the first violating partition otherwise.  Together with the
    orientation-reversed copies this covers both open sides of every
    canonical great sphere; inclusion-minimality of canonical hemispheres
    extends the check to arbitrary ones.
    """
    stable_masks = [t.mask for t in enumerate_stable_ksubsets(emb.n, emb.s)]
    for part in canonical_hemispheres(emb):
        plus = part.plus_mask
        if not any(m & plus == m for m in stable_masks):
            return part
    return None


def _adjugate_columns(mat) -> list[list[int]]:
    """Columns u_j of adj(M), i.e. solutions of M u_j = det(M) e_j."""
    d = len(mat)
    cols = []
    for j in range(d):
        col = []
        for i in range(d):
            minor = [
                [mat[r][c] for c in range(d) if c != i]
                for r in range(d)
                if r != j
            ]
            col.append((-1) ** (i + j) * (det_exact(minor) if minor else 1))
        cols.append(col)
    return cols


def enumerate_cells(emb: GaleEmbedding) -> CellSet:
    """All strict sign vectors of the central arrangement of the n points.

    Every full-dimensional cone of the arrangement is pointed (the points
    span R^d), so each cell has an extreme ray lying on exactly d-1 of the
    hyperplanes; perturbing the two orientations of each canonical normal to
    every side-assignment of its boundary points therefore reaches every
    cell.  Perturbations are realized exactly: directions built from the
    adjugate of [boundary points; normal] with a dominance factor large
    enough that non-boundary signs cannot flip, then re-verified by exact
    sign evaluation.  Falls back to a span-projection when the points do not
    span R^d; the result is flagged uncertified if general position fails.
    """
    points = list(emb.points)
    d = emb.d
    cells, certified = _enumerate_cells_raw(points, d)
    ordered = tuple(cells[k] for k in sorted(cells))
    return CellSet(cells=ordered, certified_exhaustive=certified)


def _enumerate_cells_raw(points, d):
    n = len(points)
    rank, basis = _row_space_basis(points, d)
    if rank == 0:
        return {}, True
    if rank < d:
        projected = [tuple(_dot(p, b) for b in basis) for p in points]
        sub, certified = _enumerate_cells_raw(projected, rank)
        lifted = {}
        for signs, cell in sub.items():
            direction = tuple(
                sum(cell.direction[r] * basis[r][c] for r in range(rank))
                for c in range(d)
            )
            check = tuple(_sign(_dot(p, direction)) for p in points)
            if check != signs:
                raise RuntimeError("projection lift produced inconsistent signs")
            lifted[signs] = SignVector(signs=signs, direction=_primitive(direction))
        return lifted, certified

    cells: dict[tuple[int, ...], SignVector] = {}
    certified = True
    for idx in combinations(range(n), d - 1):
        rows = [points[i] for i in idx]
        normal = _primitive(_cross_normal(rows))
        if all(x == 0 for x in normal):
            certified = False
            continue
        base = [_sign(_dot(p, normal)) for p in points]
        zeros = tuple(i for i, s in enumerate(base) if s == 0)
        if zeros != idx:
            # not in general position; this ray handled only partially
            certified = False
            continue
        mat = rows + [list(normal)]
        det_m = det_exact(mat)
        cols = _adjugate_columns(mat)
        pert = cols[: d - 1]
        sgn_det = _sign(det_m)
        corr = max(
            (
                sum(abs(_dot(points[m], u)) for u in pert)
                for m in range(n)
                if m not in idx
            ),
            default=0,
        )
        scale = corr + 1
        for assign in product((1, -1), repeat=d - 1):
            direction = [scale * x for x in normal]
            for a, u in zip(assign, pert):
                f = a * sgn_det
                for c in range(d):
                    direction[c] += f * u[c]
            signs = tuple(_sign(_dot(p, direction)) for p in points)
            if 0 in signs:
                raise RuntimeError("perturbed direction still on a hyperplane")
            for i, a in zip(idx, assign):
                if signs[i] != a:
                    raise RuntimeError("perturbation failed to realize assignment")
            if signs not in cells:
                cells[signs] = SignVector(
                    signs=signs, direction=_primitive(direction)
                )
            neg = tuple(-s for s in signs)
            if neg not in cells:
                cells[neg] = SignVector(
                    signs=neg, direction=tuple(-x for x in cells[signs].direction)
                )
    return cells, certified


def _nullspace_basis(rows, d) -> list[tuple[int, ...]]:
    """Primitive integer basis of the orthogonal complement of the rows."""
    from fractions import Fraction

    mat = [[Fraction(x) for x in r] for r in rows]
    m = len(mat)
    pivots: list[int] = []
    row = 0
    for col in range(d):
        pivot = next((r for r in range(row, m) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = mat[row][col]
        mat[row] = [x / inv for x in mat[row]]
        for r in range(m):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    basis = []
    free_cols = [c for c in range(d) if c not in pivots]
    for fc in free_cols:
        vec = [Fraction(0)] * d
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        lcm = 1
        for x in vec:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        basis.append(_primitive([int(x * lcm) for x in vec]))
    return basis


def enumerate_faces(emb: GaleEmbedding) -> FaceSet:
    """Every realizable sign vector of the arrangement, zeros included.

    Faces are grouped by their zero set T (any subset of up to d-1 points):
    directions orthogonal to exactly T form cells of the arrangement induced
    on T's orthogonal complement.  Emitted with zero count ascending, cells
    first, each group in a fixed deterministic order.
    """
    points = list(emb.points)
    n, d = emb.n, emb.d
    certified = True
    faces: dict[tuple[int, ...], HemispherePartition] = {}
    order: list[tuple[int, ...]] = []

    def admit(signs, direction):
        if signs not in faces:
            faces[signs] = HemispherePartition(
                normal=_primitive(direction), signs=signs
            )
            order.append(signs)

    for j in range(d):
        for t_set in combinations(range(n), j):
            if j == 0:
                sub, cert = _enumerate_cells_raw(points, d)
                certified = certified and cert
                for signs in sorted(sub):
                    admit(signs, sub[signs].direction)
                continue
            basis = _nullspace_basis([points[t] for t in t_set], d)
            if len(basis) != d - j:
                certified = False
                continue
            projected = [tuple(_dot(p, b) for b in basis) for p in points]
            rest = [m for m in range(n) if m not in t_set]
            if any(all(x == 0 for x in projected[m]) for m in rest):
                # another point vanishes on this complement: not general position
                certified = False
                continue
            sub_points = [projected[m] for m in rest]
            sub, cert = _enumerate_cells_raw(sub_points, d - j)
            certified = certified and cert
            for sub_signs in sorted(sub):
                y = sub[sub_signs].direction
                direction = tuple(
                    sum(y[r] * basis[r][c] for r in range(len(basis)))
                    for c in range(d)
                )
                signs = tuple(_sign(_dot(p, direction)) for p in points)
                if tuple(i for i, s in enumerate(signs) if s == 0) != t_set:
                    raise RuntimeError("face lift produced wrong zero set")
                admit(signs, direction)
    return FaceSet(
        faces=tuple(faces[s] for s in order), certified_exhaustive=certified
    )


def _row_space_basis(points, d):
    """Greedy maximal linearly independent subset of the points (exact)."""
    basis: list = []
    for p in points:
        cand = basis + [list(p)]
        if _rank_exact(cand) == len(cand):
            basis.append(list(p))
        if len(basis) == d:
            break
    return len(basis), basis


def _rank_exact(rows) -> int:
    mat = [list(r) for r in rows]
    m = len(mat)
    if m == 0:
        return 0
    w = len(mat[0])
    rank = 0
    row = 0
    for col in range(w):
        pivot = next((r for r in range(row, m) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        for r in range(row + 1, m):
            if mat[r][col]:
                f1, f2 = mat[row][col], mat[r][col]
                mat[r] = [f1 * a - f2 * b for a, b in zip(mat[r], mat[row])]
        rank += 1
        row += 1
        if row == m:
            break
    return rank


class WitnessSearch:
    """Reusable antipodal-witness search for many colorings of one instance.

    Precomputes the face arrangement of an embedding (full cells first, then
    boundary faces with 1..d-1 zeros) and, per face, which stable k-subsets
    lie strictly inside each open side.  Some colorings admit no witness on
    any full cell, so the boundary faces are part of the search space, with
    per-face thresholds ceil(|side census| / d).
    """

    def __init__(self, emb: GaleEmbedding, k: int):
        self.emb = emb
        self.k = k
        self.stables = enumerate_stable_ksubsets(emb.n, k)
        self.num_stable = len(self.stables)
        self.faceset = enumerate_faces(emb)
        d = emb.d
        self._per_face = []
        for face in self.faceset.faces:
            plus, minus = face.plus_mask, face.minus_mask
            inside_pos = [
                i for i, t in enumerate(self.stables) if t.mask & plus == t.mask
            ]
            inside_neg = [
                i for i, t in enumerate(self.stables) if t.mask & minus == t.mask
            ]
            t_pos = -(-len(inside_pos) // d)
            t_neg = -(-len(inside_neg) // d)
            self._per_face.append((face, inside_pos, inside_neg, t_pos, t_neg))

    def find(self, coloring) -> Witness:
        """First witness in (face order, color index) order; raises if none."""
        d = self.emb.d
        colors = list(coloring)
        if len(colors) != self.num_stable:
            raise ValueError(
                f"coloring must assign all {self.num_stable} stable {self.k}-subsets"
            )
        if any(not 0 <= c < d for c in colors):
            raise ValueError(f"colors must lie in 0..{d - 1}")
        for face, inside_pos, inside_neg, t_pos, t_neg in self._per_face:
            cp = [0] * d
            for i in inside_pos:
                cp[colors[i]] += 1
            cn = [0] * d
            for i in inside_neg:
                cn[colors[i]] += 1
            for color in range(d):
                if cp[color] >= t_pos and cn[color] >= t_neg:
                    return Witness(
                        face=face,
                        color=color,
                        count_pos=cp[color],
                        count_neg=cn[color],
                        t_pos=t_pos,
                        t_neg=t_neg,
                    )
        raise NoWitnessFound(
            "no direction carries the same color above threshold on both sides"
            + (
                ""
                if self.faceset.certified_exhaustive
                else " (face coverage sampled)"
            ),
            certified=self.faceset.certified_exhaustive,
        )


def antipodal_witness(
    emb: GaleEmbedding, k: int, coloring, search: WitnessSearch | None = None
) -> Witness:
    """Find a cell and color meeting the per-side popularity thresholds.

    ``coloring`` is indexed by the colex rank of the stable k-subsets of [n]
    and must take values in 0..d-1.
    """
    if search is None:
        search = WitnessSearch(emb, k)
    return search.find(coloring)


def hemisphere_stable_counts(emb: GaleEmbedding, k: int):
    """Per canonical partition: counts of stable k-subsets strictly inside."""
    stable_masks = [t.mask for t in enumerate_stable_ksubsets(emb.n, k)]
    for part in canonical_hemispheres(emb):
        plus, minus = part.plus_mask, part.minus_mask
        np_ = sum(1 for m in stable_masks if m & plus == m)
        nm = sum(1 for m in stable_masks if m & minus == m)
        yield part, np_, nm


def witness_to_json_dict(w: Witness) -> dict:
    return {
        "normal": list(w.face.normal),
        "signs": w.face.signs_string(),
        "color": w.color,
        "counts": {
            "pos": w.count_pos,
            "neg": w.count_neg,
            "t_pos": w.t_pos,
            "t_neg": w.t_neg,
        },
    }


def partition_to_json_dict(p: HemispherePartition) -> dict:
    return {"normal": list(p.normal), "signs": p.signs_string()}


__all__ = [
    "GaleEmbedding",
    "HemispherePartition",
    "SignVector",
    "CellSet",
    "FaceSet",
    "Witness",
    "WitnessSearch",
    "build_embedding",
    "general_position_check",
    "canonical_hemispheres",
    "verify_gale_property",
    "enumerate_cells",
    "enumerate_faces",
    "antipodal_witness",
    "hemisphere_stable_counts",
    "det_exact",
    "witness_to_json_dict",
    "partition_to_json_dict",
]
