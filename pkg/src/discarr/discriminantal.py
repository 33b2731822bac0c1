"""Discriminantal arrangement of a generic trace and its codimension-2 strata.

Given a trace-generic arrangement of n hyperplanes in k-space, the space of
parallel translates is an n-dimensional affine space; the translate tuples
for which some k+1 of the hyperplanes become concurrent form one hyperplane
per (k+1)-subset.  This module builds those hyperplanes as exact coefficient
vectors, enumerates every codimension-2 flat of the resulting arrangement,
classifies each flat by its multiplicity pattern, and detects or constructs
the geometric dependency that produces multiplicity-3 flats:

* GOOD       multiplicity k+2, the flat where a full (k+2)-subset concurs;
             there are exactly C(n, k+2) of these for every generic trace.
* DEPENDENT  multiplicity 3, present only when three groups of hyperplanes
             have their common subspaces at infinity spanning a proper
             subspace (collinear double points in the smallest case).
* SIMPLE     multiplicity 2, a transverse crossing of two hyperplanes.
* OTHER      anything else.  Never produced silently: an OTHER record on a
             trace-generic input falsifies the classification and is the
             most interesting possible output, so callers surface it loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arrangement import GenericArrangement, is_trace_generic
from .linalg import QMatrix, int_rank, primitive_int_vector
from .rng import SplitMix64

GOOD = "GOOD"
DEPENDENT = "DEPENDENT"
SIMPLE = "SIMPLE"
OTHER = "OTHER"

CONSTRUCT_BUDGET = 400


@dataclass(frozen=True)
class DiscForm:
    """One hyperplane of the discriminantal arrangement.

    `subset` is the sorted (k+1)-tuple of 1-based hyperplane indices;
    `coeffs` is the length-n primitive integer coefficient vector, zero
    outside the subset, first nonzero entry positive.  A translate tuple x
    satisfies coeffs . x = 0 exactly when the subset's hyperplanes concur.
    """

    subset: tuple[int, ...]
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class StratumRecord:
    """A codimension-2 flat: the forms containing it plus its classification."""

    members: tuple[tuple[int, ...], ...]
    flat_basis: tuple[tuple[Fraction, ...], ...]
    multiplicity: int
    kind: str


@dataclass(frozen=True)
class DependentTriple:
    """Three subsets whose hyperplanes fail transversality for geometric reasons.

    `common_count` is the size t of the three-way intersection, `overlap_size`
    the size s = (k+1-t)/2 of each pairwise overlap outside it.
    """

    members: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    common_count: int
    overlap_size: int


def build_form(arr: GenericArrangement, subset) -> DiscForm:
    """Coefficient vector of the concurrency condition for one (k+1)-subset.

    Entry j of the subset carries (-1)^position times the k x k minor of the
    normals on the other members (Laplace expansion of the concurrency
    determinant along its translate column); genericity makes every such
    minor nonzero.
    """
    subset = tuple(sorted(subset))
    if len(subset) != arr.k + 1:
        raise ValueError(f"subset must have k+1={arr.k + 1} elements, got {len(subset)}")
    if len(set(subset)) != len(subset) or subset[0] < 1 or subset[-1] > arr.n:
        raise ValueError("subset must be distinct indices in [1..n]")
    coeffs = [Fraction(0)] * arr.n
    for pos, j in enumerate(subset):
        others = [i for i in subset if i != j]
        minor = arr.normal_rows(others).det()
        if minor == 0:
            raise ValueError("trace is not generic: vanishing k x k minor")
        coeffs[j - 1] = minor if pos % 2 == 0 else -minor
    return DiscForm(subset, primitive_int_vector(coeffs))


def build_all(arr: GenericArrangement) -> list[DiscForm]:
    """All C(n, k+1) hyperplanes of the discriminantal arrangement, lex order."""
    return [
        build_form(arr, subset)
        for subset in combinations(range(1, arr.n + 1), arr.k + 1)
    ]


def codim_intersection(arr: GenericArrangement, subsets) -> int:
    """Codimension of the intersection of the given forms' hyperplanes.

    Equals the rank of the stacked coefficient vectors.
    """
    return int_rank([build_form(arr, s).coeffs for s in subsets])


def _span_key(f: DiscForm, g: DiscForm):
    mat = QMatrix.from_rows([f.coeffs, g.coeffs])
    red, _ = mat.rref()
    return red.entries


def _classify(members: tuple[tuple[int, ...], ...], k: int) -> str:
    mult = len(members)
    union = set()
    for m in members:
        union.update(m)
    if (
        mult == k + 2
        and len(union) == k + 2
        and set(members) == set(combinations(tuple(sorted(union)), k + 1))
    ):
        return GOOD
    if mult == 3:
        return DEPENDENT
    if mult == 2:
        return SIMPLE
    return OTHER


def codim2_census(arr: GenericArrangement) -> list[StratumRecord]:
    """Enumerate and classify every codimension-2 flat.

    Groups the unordered pairs of forms by the canonical echelon form of
    their 2-dimensional span; the multiplicity of a flat is the number of
    forms lying in the span.  Grouping is an associative merge keyed by the
    canonical span, so a parallel split over pairs would give identical
    output; at desk scale the serial loop is fast enough.
    """
    if arr.n < arr.k + 2:
        raise ValueError(f"census needs n >= k+2, got n={arr.n}, k={arr.k}")
    forms = build_all(arr)
    groups: dict[tuple, dict] = {}
    for a, b in combinations(range(len(forms)), 2):
        key = _span_key(forms[a], forms[b])
        entry = groups.setdefault(key, {"members": set(), "pairs": 0})
        entry["members"].add(forms[a].subset)
        entry["members"].add(forms[b].subset)
        entry["pairs"] += 1
    records = []
    for key, entry in groups.items():
        members = tuple(sorted(entry["members"]))
        mult = len(members)
        if entry["pairs"] != mult * (mult - 1) // 2:
            raise AssertionError("span grouping produced an inconsistent flat")
        records.append(StratumRecord(members, key, mult, _classify(members, arr.k)))
    records.sort(key=lambda r: (-r.multiplicity, r.members))
    return records


def _unordered_group_triples(pool: tuple[int, ...], size: int):
    """Unordered triples of pairwise disjoint `size`-subsets of `pool`."""
    for g1 in combinations(pool, size):
        rest1 = tuple(x for x in pool if x not in set(g1))
        for g2 in combinations(rest1, size):
            if g2 < g1:
                continue
            rest2 = tuple(x for x in rest1 if x not in set(g2))
            for g3 in combinations(rest2, size):
                if g3 < g2:
                    continue
                yield g1, g2, g3


def _dependency_test(arr: GenericArrangement, common, groups) -> bool:
    """Geometric dependency: do the groups' infinity subspaces span properly?

    Restricting the trace to the common hyperplanes, each group of size s
    cuts an (s-1)-dimensional direction subspace; the triple is dependent
    when the union of their spanning vectors has rank at most 2s-2 inside
    the (2s-1)-dimensional restricted trace space.
    """
    s = len(groups[0])
    spans = []
    for g in groups:
        rows = arr.normal_rows(tuple(g) + tuple(common))
        basis = rows.nullspace_basis()
        if basis.rows != s - 1:
            raise AssertionError("generic trace must cut subspaces of dimension s-1")
        spans.append(basis)
    stacked = spans[0].vstack(spans[1]).vstack(spans[2])
    return stacked.rank() <= 2 * s - 2


def dependent_triples(arr: GenericArrangement) -> list[DependentTriple]:
    """All triples of forms meeting in codimension 2 for dependency reasons.

    Candidates are pruned combinatorially first: a triple can only fail
    transversality if each subset is covered by its overlaps with the other
    two, the three-way overlap has some size t with k+1-t even, and the
    pairwise overlaps outside it all have equal size s >= 2.  Each surviving
    candidate then takes the geometric span test.
    """
    if not is_trace_generic(arr):
        raise ValueError("trace must be generic")
    found = []
    for s in range(2, (arr.k + 1) // 2 + 1):
        t = arr.k + 1 - 2 * s
        if t + 3 * s > arr.n:
            continue
        for common in combinations(range(1, arr.n + 1), t):
            pool = tuple(j for j in range(1, arr.n + 1) if j not in set(common))
            for groups in _unordered_group_triples(pool, s):
                if _dependency_test(arr, common, groups):
                    g1, g2, g3 = groups
                    members = tuple(
                        sorted(
                            (
                                tuple(sorted(common + g1 + g2)),
                                tuple(sorted(common + g2 + g3)),
                                tuple(sorted(common + g1 + g3)),
                            )
                        )
                    )
                    found.append(DependentTriple(members, t, s))
    found.sort(key=lambda d: d.members)
    return found


def construct_dependent(group_size: int, common_count: int, seed: int) -> GenericArrangement:
    """Build a trace-generic arrangement carrying one dependent triple.

    For group size s and t extra shared hyperplanes this produces n = 3s+t
    hyperplanes in dimension k = 2s-1+t.  Three random (s-1)-dimensional
    subspaces inside a fixed hyperplane of the (2s-1)-dimensional trace
    space are realized as the common direction spaces of three groups of s
    hyperplanes; t generic coordinates lift the picture.  Resamples until
    the trace is generic and the census shows exactly the constructed
    dependent stratum and nothing unexpected.
    """
    s, t = group_size, common_count
    if s < 2 or t < 0:
        raise ValueError("need group_size >= 2 and common_count >= 0")
    n = 3 * s + t
    k = 2 * s - 1 + t
    m = 2 * s - 1
    rng = SplitMix64(seed)
    bound = n + 8
    expected = tuple(
        sorted(
            (
                tuple(sorted(tuple(range(1, 2 * s + 1)) + tuple(range(3 * s + 1, n + 1)))),
                tuple(sorted(tuple(range(s + 1, 3 * s + 1)) + tuple(range(3 * s + 1, n + 1)))),
                tuple(
                    sorted(
                        tuple(range(1, s + 1))
                        + tuple(range(2 * s + 1, 3 * s + 1))
                        + tuple(range(3 * s + 1, n + 1))
                    )
                ),
            )
        )
    )

    for _ in range(CONSTRUCT_BUDGET):
        # three (s-1)-dim subspaces inside the hyperplane {last coord = 0}
        subspaces = []
        for _ in range(3):
            rows = [
                [rng.randint(-bound, bound) for _ in range(m - 1)] + [0]
                for _ in range(s - 1)
            ]
            subspaces.append(QMatrix.from_rows(rows, cols=m))
        if any(u.rank() != s - 1 for u in subspaces):
            continue
        if any(
            subspaces[i].vstack(subspaces[j]).rank() != 2 * s - 2
            for i, j in ((0, 1), (0, 2), (1, 2))
        ):
            continue

        block_rows = []
        degenerate = False
        for u in subspaces:
            annihilator = u.nullspace_basis()  # s x m
            mix = QMatrix.from_rows(
                [[rng.randint(-bound, bound) for _ in range(s)] for _ in range(s)]
            )
            if mix.det() == 0:
                degenerate = True
                break
            for row in (mix @ annihilator).entries:
                block_rows.append(list(primitive_int_vector(row)))
        if degenerate:
            continue

        rows = []
        for r in block_rows:
            rows.append(r + [rng.randint(-bound, bound) for _ in range(t)])
        for i in range(t):
            rows.append([0] * m + [1 if j == i else 0 for j in range(t)])
        arr = GenericArrangement(n, k, QMatrix.from_rows(rows, cols=k))

        if not is_trace_generic(arr):
            continue
        triples = dependent_triples(arr)
        if len(triples) != 1 or triples[0].members != expected:
            continue
        census = codim2_census(arr)
        dep = [r for r in census if r.kind == DEPENDENT]
        if any(r.kind == OTHER for r in census):
            continue
        if len(dep) == 1 and dep[0].members == expected:
            return arr
    raise RuntimeError(
        f"dependent construction failed after {CONSTRUCT_BUDGET} resamples "
        f"(group_size={s}, common_count={t}, seed={seed})"
    )


def project(subsets, kept, k: int) -> list[tuple[int, ...]]:
    """Images of the given index subsets under forgetting indices outside `kept`.

    Mirrors the coordinate projection of the translate space: a subset
    survives exactly when its intersection with `kept` still has more than k
    elements.  Duplicates collapse; output is lex sorted.
    """
    kept_set = set(kept)
    images = {
        tuple(sorted(set(sub) & kept_set))
        for sub in subsets
        if len(set(sub) & kept_set) >= k + 1
    }
    return sorted(images)


def census_to_json(records: list[StratumRecord], k: int) -> list[dict]:
    out = []
    for rec in records:
        doc = {
            "members": [list(m) for m in rec.members],
            "multiplicity": rec.multiplicity,
            "kind": rec.kind,
        }
        if rec.kind == DEPENDENT:
            common = set(rec.members[0])
            for m in rec.members[1:]:
                common &= set(m)
            t = len(common)
            doc["t"] = t
            doc["s"] = (k + 1 - t) // 2
        out.append(doc)
    return out
