"""Generic plane sections, braid monodromy, and fundamental group data.

Substituting a parametrized 2-plane x_i = a_i t + b_i s + c_i into the
concurrency forms turns the discriminantal arrangement into N = C(n, k+1)
lines in the (t, s)-plane, all with rational coefficients, so every sweep
event has exact rational coordinates and the event order is unambiguous.

The sweep runs in increasing s from a basepoint below every singular value.
Strands are numbered by t-order at the basepoint; crossing the i-th singular
value, the block of concurrent lines occupies consecutive strand positions
and undergoes a positive half twist.  The monodromy braid of that value is
the square of its half twist conjugated by the earlier half twists:

    Gamma_i = b_1^-1 ... b_{i-1}^-1 b_i^2 b_{i-1} ... b_1

emitted as an explicit Artin word.  Applying the braids to the free group on
one generator per line (Artin action, see braid.py) and equating images with
generators yields the van Kampen presentation of the complement.

nilpotent_relations emits the three commutator relation families of the
holonomy Lie algebra / nilpotent completion, keyed by the codimension-2
census: one per (hyperplane, full (k+2)-set) incidence, one per member of a
dependent triple, and one per ordered pair in a simple crossing.  The
commuting family ranges over simple-crossing pairs of (k+1)-subsets, the
only cardinality that indexes hyperplanes here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .arrangement import GenericArrangement
from .braid import BraidWord, artin_images, halftwist, invert, reduce_free
from .discriminantal import (
    DEPENDENT,
    GOOD,
    OTHER,
    SIMPLE,
    codim2_census,
    dependent_triples,
    build_all,
)
from .rng import SplitMix64

SECTION_BUDGET = 400


class NonGenericSection(ValueError):
    """Section plane violates a genericity invariant; resample it."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("non-generic section: " + "; ".join(self.failures))


@dataclass(frozen=True)
class SectionPlane:
    """Parametrization x_i = t_coeffs[i] * t + s_coeffs[i] * s + consts[i]."""

    t_coeffs: tuple[Fraction, ...]
    s_coeffs: tuple[Fraction, ...]
    consts: tuple[Fraction, ...]


@dataclass(frozen=True)
class SectionLine:
    """One section line u*t + v*s + w = 0, labeled by its (k+1)-subset."""

    subset: tuple[int, ...]
    u: Fraction
    v: Fraction
    w: Fraction

    def t_at(self, s: Fraction) -> Fraction:
        return -(self.v * s + self.w) / self.u


@dataclass(frozen=True)
class SingularPoint:
    """A multiple point of the section at exact coordinates (s, t).

    `block` lists the concurrent lines by their position in the order the
    lines were handed in (for braid_monodromy: strand numbers at the
    basepoint, 1-based).
    """

    s: Fraction
    t: Fraction
    block: tuple[int, ...]


def section_lines(arr: GenericArrangement, plane: SectionPlane) -> list[SectionLine]:
    """Substitute the plane into every form; validate section genericity.

    Raises NonGenericSection naming each violated invariant: a vanishing
    t-coefficient, coincident or parallel lines, singular points sharing an
    s-coordinate.
    """
    n = arr.n
    if not (len(plane.t_coeffs) == len(plane.s_coeffs) == len(plane.consts) == n):
        raise ValueError("plane vectors must have length n")
    lines = []
    failures = []
    for form in build_all(arr):
        u = sum(Fraction(c) * plane.t_coeffs[j] for j, c in enumerate(form.coeffs))
        v = sum(Fraction(c) * plane.s_coeffs[j] for j, c in enumerate(form.coeffs))
        w = sum(Fraction(c) * plane.consts[j] for j, c in enumerate(form.coeffs))
        if u == 0:
            failures.append(f"line {form.subset} parallel to the t-axis")
        lines.append(SectionLine(form.subset, u, v, w))
    for i, j in combinations(range(len(lines)), 2):
        a, b = lines[i], lines[j]
        if a.u * b.v == b.u * a.v:
            if a.u * b.w == b.u * a.w and a.v * b.w == b.v * a.w:
                failures.append(f"lines {a.subset} and {b.subset} coincide")
            else:
                failures.append(f"lines {a.subset} and {b.subset} are parallel")
    if failures:
        raise NonGenericSection(failures)
    by_s: dict[Fraction, set] = {}
    for pt in singular_points(lines):
        by_s.setdefault(pt.s, set()).add(pt)
    for s_val, pts in by_s.items():
        if len(pts) > 1:
            blocks = sorted(tuple(lines[i - 1].subset for i in p.block) for p in pts)
            failures.append(f"distinct singular points share s={s_val}: {blocks}")
    if failures:
        raise NonGenericSection(failures)
    return lines


def random_section(arr: GenericArrangement, seed: int, bound: int = 12):
    """Sample SectionPlane coefficients until all invariants hold."""
    rng = SplitMix64(seed)
    for _ in range(SECTION_BUDGET):
        plane = SectionPlane(
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(arr.n)),
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(arr.n)),
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(arr.n)),
        )
        try:
            lines = section_lines(arr, plane)
        except NonGenericSection:
            continue
        return plane, lines
    raise RuntimeError(f"no generic section after {SECTION_BUDGET} draws (seed={seed})")


def singular_points(lines: list[SectionLine]) -> list[SingularPoint]:
    """All pairwise intersection points, grouped exactly, sorted by s.

    Blocks refer to 1-based positions in the given list.  Every pair of
    lines meets exactly once, so the block sizes satisfy
    sum C(|P|, 2) = C(N, 2).
    """
    points: dict[tuple[Fraction, Fraction], set[int]] = {}
    for i, j in combinations(range(len(lines)), 2):
        a, b = lines[i], lines[j]
        denom = a.u * b.v - b.u * a.v
        if denom == 0:
            raise ValueError(f"parallel lines {a.subset} and {b.subset}")
        s = (b.u * a.w - a.u * b.w) / denom
        t = (a.v * b.w - b.v * a.w) / denom
        points.setdefault((s, t), set()).update((i + 1, j + 1))
    out = [
        SingularPoint(s, t, tuple(sorted(block)))
        for (s, t), block in points.items()
    ]
    out.sort(key=lambda p: p.s)
    total = sum(comb(len(p.block), 2) for p in out)
    if total != comb(len(lines), 2):
        raise AssertionError("pair count identity violated")
    return out


class SweepError(AssertionError):
    """A concurrency block was not consecutive at its critical value."""


def braid_monodromy(
    lines: list[SectionLine], basepoint_s: Fraction
) -> list[tuple[SingularPoint, BraidWord]]:
    """Monodromy braids of the section, one per singular value of s.

    Requires basepoint_s strictly below every singular s.  Lines are
    renumbered as strands 1..N by t-order at the basepoint; each returned
    SingularPoint carries its block as strand numbers, and each braid is the
    conjugated full twist on the block, fully expanded in Artin generators.
    """
    basepoint_s = Fraction(basepoint_s)
    raw_points = singular_points(lines)
    if raw_points and basepoint_s >= raw_points[0].s:
        raise ValueError("basepoint must lie below every singular s")
    order = sorted(range(len(lines)), key=lambda i: lines[i].t_at(basepoint_s))
    strand_of = {line_idx + 1: pos + 1 for pos, line_idx in enumerate(order)}
    strands = [
        SingularPoint(p.s, p.t, tuple(sorted(strand_of[i] for i in p.block)))
        for p in raw_points
    ]
    n_strands = len(lines)

    # positions[p-1] = strand at position p, evolving along the sweep
    positions = [strand_of[i + 1] for i in order]
    assert positions == list(range(1, n_strands + 1))
    sorted_lines = [lines[i] for i in order]

    twists: list[tuple[int, ...]] = []
    records: list[tuple[SingularPoint, BraidWord]] = []
    prev_s = basepoint_s
    for pt in strands:
        mid = (prev_s + pt.s) / 2
        t_order = sorted(range(1, n_strands + 1), key=lambda j: sorted_lines[j - 1].t_at(mid))
        if t_order != positions:
            raise SweepError("sweep order diverged from predicted strand positions")
        block_positions = sorted(positions.index(j) + 1 for j in pt.block)
        lo, hi = block_positions[0], block_positions[-1]
        if block_positions != list(range(lo, hi + 1)):
            raise SweepError(
                f"block {pt.block} occupies non-consecutive positions {block_positions}"
            )
        beta = halftwist(lo, hi - lo + 1)
        gamma: list[int] = []
        for earlier in twists:
            gamma.extend(invert(earlier))
        gamma.extend(beta)
        gamma.extend(beta)
        for earlier in reversed(twists):
            gamma.extend(earlier)
        records.append((pt, BraidWord(n_strands, tuple(gamma))))
        twists.append(beta)
        positions[lo - 1 : hi] = positions[lo - 1 : hi][::-1]
        prev_s = pt.s
    return records


@dataclass(frozen=True)
class Presentation:
    """Finite presentation: generators x_1..x_N, relators as signed words."""

    generator_count: int
    relators: tuple[tuple[int, ...], ...]

    def exponent_matrix(self) -> list[list[int]]:
        rows = []
        for rel in self.relators:
            row = [0] * self.generator_count
            for x in rel:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows


def presentation(
    braids: list[tuple[SingularPoint, BraidWord]],
    n_strands: int,
    reduce_relators: bool = False,
) -> Presentation:
    """Van Kampen presentation from the monodromy braids.

    Each singular point contributes the relators Gamma_i(x_j) x_j^-1 for the
    strands j through the point; relations for the remaining strands are
    consequences and omitted.  With reduce_relators, the last relator of
    each point (itself a consequence of the others) is dropped too, leaving
    |P_i| - 1 per point.
    """
    relators: list[tuple[int, ...]] = []
    for point, braid in braids:
        images = artin_images(reduce_free(braid.letters), n_strands)
        local = [reduce_free(images[j - 1] + (-j,)) for j in point.block]
        local = [rel for rel in local if rel]
        if reduce_relators and local:
            local.pop()
        relators.extend(local)
    return Presentation(n_strands, tuple(relators))


@dataclass(frozen=True)
class RelationFamilies:
    """Symbolic commutator relation families keyed by the census.

    full_sets:   (subset, containing (k+2)-set) pairs, one per incidence.
    dependents:  (subset, dependent triple) pairs, three per triple.
    commuting:   ordered (subset, other) pairs, two per simple crossing.
    """

    full_sets: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    dependents: tuple[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]], ...]
    commuting: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def nilpotent_relations(arr: GenericArrangement) -> RelationFamilies:
    """Relation families of the nilpotent completion, from the census.

    Cross-checks the census's multiplicity-3 strata against the geometric
    dependency search; a mismatch raises AssertionError since the two are
    provably equivalent.
    """
    census = codim2_census(arr)
    if any(rec.kind == OTHER for rec in census):
        raise AssertionError("census produced an unclassified stratum")
    triples = {d.members for d in dependent_triples(arr)}
    census_dep = {rec.members for rec in census if rec.kind == DEPENDENT}
    if triples != census_dep:
        raise AssertionError(
            f"dependency search and census disagree: {triples} vs {census_dep}"
        )
    full_sets = []
    dependents = []
    commuting = []
    for rec in census:
        if rec.kind == GOOD:
            union = tuple(sorted(set().union(*map(set, rec.members))))
            for member in rec.members:
                full_sets.append((member, union))
        elif rec.kind == DEPENDENT:
            for member in rec.members:
                dependents.append((member, rec.members))
        elif rec.kind == SIMPLE:
            a, b = rec.members
            commuting.append((a, b))
            commuting.append((b, a))
    return RelationFamilies(tuple(full_sets), tuple(dependents), tuple(commuting))


def braids_to_json(records: list[tuple[SingularPoint, BraidWord]], n_strands: int) -> dict:
    def frac(x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    return {
        "N": n_strands,
        "braids": [
            {"s": frac(pt.s), "block": list(pt.block), "word": list(braid.letters)}
            for pt, braid in records
        ],
    }


def presentation_to_text(pres: Presentation) -> str:
    """ASCII rendering: lowercase dJ = generator, uppercase DJ = inverse."""
    gens = " ".join(f"d{j}" for j in range(1, pres.generator_count + 1))
    out = [f"generators: {gens}"]
    for rel in pres.relators:
        out.append(" ".join(f"d{x}" if x > 0 else f"D{-x}" for x in rel))
    return "\n".join(out) + "\n"
