"""Gale transforms of point configurations and their discriminantal meaning.

A configuration of n points spanning dimension d is stored as the columns of
a d x n matrix.  Its Gale transform is the configuration of images of the
standard basis vectors in the cokernel of the evaluation map; concretely,
the columns of the canonical nullspace basis of the input matrix.  Fixing
the canonical basis makes the transform deterministic, and every check
downstream is invariant under the scale/basis ambiguity anyway.

Two configurations are associated when X Lambda Y^t = 0 for a nonsingular
diagonal Lambda; with Lambda the identity this recovers the Gale pairing.

essential_normals_via_gale realizes the essential discriminantal arrangement
inside the cokernel: the hyperplane dual to a (k+1)-subset is spanned by the
Gale points of the complementary n-k-1 indices, and its normal pulls back to
the subset's concurrency coefficient vector.  The function verifies that
proportionality instance by instance.

concurrent_partition_exists answers, for six plane points, whether some
partition into three pairs spans three concurrent lines; this property is a
Gale invariant, and for three groups of s points in dimension s the same
question becomes three hyperplanes in a pencil (pencil_partition_exists).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arrangement import GenericArrangement
from .discriminantal import build_form
from .linalg import QMatrix, primitive_int_vector
from .rng import SplitMix64


class GaleMismatch(AssertionError):
    """The Gale-side normal failed to match the concurrency form (a fault)."""


@dataclass(frozen=True)
class PointConfig:
    vectors: QMatrix  # dim x n, columns are the points

    @property
    def dim(self) -> int:
        return self.vectors.rows

    @property
    def n(self) -> int:
        return self.vectors.cols

    def point(self, i: int) -> tuple[Fraction, ...]:
        """Column i (1-based)."""
        return self.vectors.column(i - 1)


def gale_transform(config: PointConfig) -> PointConfig:
    """The dual configuration of n points in dimension n - d.

    Output satisfies Q.vectors @ P.vectors^t = 0 and has full rank n - d;
    the canonical nullspace basis pins the result down uniquely.
    """
    d, n = config.dim, config.n
    if n <= d:
        raise ValueError(f"need more points than dimensions, got n={n}, d={d}")
    if config.vectors.rank() != d:
        raise ValueError("configuration must span its ambient space")
    return PointConfig(config.vectors.nullspace_basis())


def is_associated(x: PointConfig, diagonal, y: PointConfig) -> bool:
    """Zero-pairing test X Lambda Y^t = 0 for a nonzero diagonal."""
    if x.n != y.n or x.n != len(tuple(diagonal)):
        raise ValueError("configurations and diagonal must share the point count")
    lam = [Fraction(v) if not isinstance(v, Fraction) else v for v in diagonal]
    if any(v == 0 for v in lam):
        raise ValueError("diagonal entries must be nonzero")
    scaled = QMatrix.from_rows(
        [[a * lam[j] for j, a in enumerate(row)] for row in x.vectors.entries]
    )
    return (scaled @ y.vectors.transpose()).is_zero()


def essential_normals_via_gale(arr: GenericArrangement):
    """Normals of the essential arrangement, from complementary Gale points.

    For each (k+1)-subset, the n-k-1 Gale points of the complement span a
    hyperplane of the cokernel; its normal, pulled back along the quotient
    map, must be proportional to the subset's concurrency form.  A mismatch
    raises GaleMismatch: the agreement is guaranteed, so failure means an
    implementation fault.
    """
    n, k = arr.n, arr.k
    if n < k + 2:
        raise ValueError(f"essential part needs n >= k+2, got n={n}, k={k}")
    gale = gale_transform(PointConfig(arr.normals.transpose()))
    g = gale.vectors  # (n-k) x n, columns are Gale points
    out = []
    for subset in combinations(range(1, n + 1), k + 1):
        complement = [j for j in range(1, n + 1) if j not in set(subset)]
        span_rows = QMatrix.from_rows([g.column(j - 1) for j in complement])
        normal = span_rows.nullspace_basis()
        if normal.rows != 1:
            raise GaleMismatch(
                f"Gale points of complement of {subset} do not span a hyperplane"
            )
        pulled = normal @ g  # 1 x n, the normal composed with the quotient map
        form = build_form(arr, subset)
        check = QMatrix.from_rows([pulled.row(0), form.coeffs])
        if check.rank() != 1:
            raise GaleMismatch(
                f"Gale normal for {subset} is not proportional to its form"
            )
        out.append((subset, primitive_int_vector(normal.row(0))))
    return out


def _pair_partitions(items: tuple[int, ...]):
    """Partitions into unordered pairs, lexicographic order."""
    if not items:
        yield ()
        return
    first = items[0]
    for idx in range(1, len(items)):
        partner = items[idx]
        rest = tuple(x for x in items[1:] if x != partner)
        for tail in _pair_partitions(rest):
            yield ((first, partner),) + tail


def _group_partitions(items: tuple[int, ...], size: int):
    """Partitions into three unordered groups of `size`, lexicographic order."""
    first_groups = [
        (items[0],) + rest for rest in combinations(items[1:], size - 1)
    ]
    for g1 in first_groups:
        rem1 = tuple(x for x in items if x not in set(g1))
        for g2rest in combinations(rem1[1:], size - 1):
            g2 = (rem1[0],) + g2rest
            g3 = tuple(x for x in rem1 if x not in set(g2))
            yield (g1, g2, g3)


def concurrent_partition_exists(config: PointConfig):
    """Search the 15 pairings of six plane points for concurrent lines.

    Returns (True, partition) for the lexicographically first partition whose
    three pair-lines meet in a point (determinant of the line coordinates
    vanishes), else (False, None).  Repeated points are rejected.
    """
    if config.dim != 3 or config.n != 6:
        raise ValueError("expected 6 points in the projective plane (3 x 6)")
    pts = [config.point(i) for i in range(1, 7)]
    for a, b in combinations(range(6), 2):
        if QMatrix.from_rows([pts[a], pts[b]]).rank() < 2:
            raise ValueError(f"points {a + 1} and {b + 1} coincide projectively")
    for partition in _pair_partitions(tuple(range(1, 7))):
        lines = [_cross(pts[a - 1], pts[b - 1]) for a, b in partition]
        if QMatrix.from_rows(lines).det() == 0:
            return True, partition
    return False, None


def pencil_partition_exists(config: PointConfig):
    """Generalized search: 3s points in dimension s+1, hyperplanes in a pencil.

    Partitions the points into three groups of s; each group spanning a
    hyperplane contributes its normal, and the partition witnesses the
    property when the three normals have rank <= 2.  For s = 2 this is the
    concurrent-lines test.
    """
    if config.n % 3 != 0:
        raise ValueError("point count must be a multiple of 3")
    s = config.n // 3
    if config.dim != s + 1:
        raise ValueError(f"expected dimension s+1={s + 1} for n=3s={config.n}")
    for partition in _group_partitions(tuple(range(1, config.n + 1)), s):
        normals = []
        for group in partition:
            rows = QMatrix.from_rows([config.point(i) for i in group])
            basis = rows.nullspace_basis()
            if basis.rows != 1:
                break  # group does not span a hyperplane
            normals.append(basis.row(0))
        else:
            if QMatrix.from_rows(normals).rank() <= 2:
                return True, partition
    return False, None


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _projectively_distinct(pts) -> bool:
    for a, b in combinations(range(len(pts)), 2):
        if QMatrix.from_rows([pts[a], pts[b]]).rank() < 2:
            return False
    return True


def random_concurrent_sextuple(seed: int, bound: int = 9) -> PointConfig:
    """Six plane points with pairs 12, 34, 56 spanning concurrent lines.

    Concurrency has measure zero, so positives are built, not sampled: pick
    a point, three lines through it, two points on each, then apply a random
    projective change of coordinates (which preserves the property).
    """
    rng = SplitMix64(seed)
    while True:
        apex = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(3))
        if all(x == 0 for x in apex):
            continue
        comp = QMatrix.from_rows([apex]).nullspace_basis()  # 2 x 3 covectors
        pts = []
        for _ in range(3):
            c1, c2 = rng.nonzero_int(bound), rng.nonzero_int(bound)
            line = tuple(
                c1 * comp.entries[0][j] + c2 * comp.entries[1][j] for j in range(3)
            )
            on_line = QMatrix.from_rows([line]).nullspace_basis()  # 2 x 3 points
            for _ in range(2):
                d1, d2 = rng.nonzero_int(bound), rng.nonzero_int(bound)
                p = tuple(
                    d1 * on_line.entries[0][j] + d2 * on_line.entries[1][j]
                    for j in range(3)
                )
                pts.append(p)
        if not _projectively_distinct(pts):
            continue
        move = QMatrix.from_rows(
            [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        )
        if move.det() == 0:
            continue
        config = PointConfig(move @ QMatrix.from_rows(pts).transpose())
        found, _ = concurrent_partition_exists(config)
        if not found:
            continue  # extra accidental degeneracy spoiled distinctness; retry
        gale_pts = [gale_transform(config).point(i) for i in range(1, 7)]
        if not _projectively_distinct(gale_pts):
            continue
        return config


def random_generic_sextuple(seed: int, bound: int = 9) -> PointConfig:
    """Six plane points with all 15 partition determinants nonzero."""
    rng = SplitMix64(seed)
    while True:
        config = PointConfig(
            QMatrix.from_rows(
                [[rng.randint(-bound, bound) for _ in range(6)] for _ in range(3)]
            )
        )
        if config.vectors.rank() != 3:
            continue
        pts = [config.point(i) for i in range(1, 7)]
        if not _projectively_distinct(pts):
            continue
        found, _ = concurrent_partition_exists(config)
        if found:
            continue
        gale_pts = [gale_transform(config).point(i) for i in range(1, 7)]
        if not _projectively_distinct(gale_pts):
            continue
        return config


def config_to_json(config: PointConfig) -> dict:
    from .arrangement import _fraction_to_json

    return {
        "d": config.dim,
        "n": config.n,
        "vectors": [
            [_fraction_to_json(x) for x in config.point(i)]
            for i in range(1, config.n + 1)
        ],
    }


def config_from_json(doc: dict) -> PointConfig:
    try:
        d = int(doc["d"])
        n = int(doc["n"])
        cols = doc["vectors"]
        if len(cols) != n or any(len(c) != d for c in cols):
            raise ValueError("vectors must be n columns of length d")
        mat = QMatrix.from_rows(cols).transpose()
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed configuration document: {exc}") from exc
    return PointConfig(mat)
