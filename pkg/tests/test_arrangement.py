import json
from fractions import Fraction
from itertools import combinations

import pytest

from discarr.arrangement import (
    GenericArrangement,
    arrangement_from_json,
    arrangement_to_json,
    is_affine_generic,
    is_trace_generic,
    random_generic,
    restrict,
)
from discarr.linalg import QMatrix


def test_trace_generic_trivials():
    ident = GenericArrangement(3, 3, QMatrix.identity(3))
    assert is_trace_generic(ident)
    good = GenericArrangement(3, 2, QMatrix.from_rows([[1, 0], [0, 1], [1, 1]]))
    assert is_trace_generic(good)
    repeated = GenericArrangement(3, 2, QMatrix.from_rows([[1, 0], [0, 1], [1, 0]]))
    assert not is_trace_generic(repeated)


def test_trace_generic_rejects_too_few_hyperplanes():
    arr = GenericArrangement(2, 3, QMatrix.from_rows([[1, 0, 0], [0, 1, 0]]))
    with pytest.raises(ValueError):
        is_trace_generic(arr)


def test_random_generic_contract():
    arr = random_generic(4, 2, seed=1, bound=10)
    assert is_trace_generic(arr)
    assert all(abs(x) <= 10 and x.denominator == 1 for row in arr.normals.entries for x in row)
    again = random_generic(4, 2, seed=1, bound=10)
    assert arr.normals.entries == again.normals.entries
    other = random_generic(4, 2, seed=2, bound=10)
    assert arr.normals.entries != other.normals.entries


def test_random_generic_preconditions():
    with pytest.raises(ValueError):
        random_generic(3, 3, seed=1, bound=10)
    with pytest.raises(ValueError):
        random_generic(5, 2, seed=1, bound=3)


def test_random_generic_with_offsets_is_affine_generic():
    arr = random_generic(5, 2, seed=9, bound=10, with_offsets=True)
    assert is_affine_generic(arr)


def test_normals_transpose_nullspace_dimension():
    for n, k, seed in ((5, 2, 11), (6, 3, 12), (7, 4, 13)):
        arr = random_generic(n, k, seed=seed, bound=12)
        assert arr.normals.transpose().nullspace_basis().rows == n - k


def test_restrict_empty_is_identity():
    arr = random_generic(5, 3, seed=3, bound=10)
    assert restrict(arr, ()) is arr


def test_restrict_seven_planes_to_one():
    arr = random_generic(7, 3, seed=4, bound=12)
    out = restrict(arr, (7,))
    assert (out.n, out.k) == (6, 2)
    assert is_trace_generic(out)


def test_restrict_rejects_too_large():
    arr = random_generic(6, 3, seed=5, bound=10)
    with pytest.raises(ValueError):
        restrict(arr, (1, 2, 3))


def zero_pattern(arr):
    """Zero/nonzero pattern of all row-subset minors up to full rank."""
    pattern = []
    for size in range(1, arr.k + 1):
        for rows in combinations(range(arr.n), size):
            for cols in combinations(range(arr.k), size):
                pattern.append(arr.normals.submatrix(rows, cols).det() == 0)
    return pattern


def test_restrict_composition_agrees_up_to_coordinates():
    arr = random_generic(8, 4, seed=6, bound=12)
    once = restrict(restrict(arr, (7,)), (7,))  # second (7,) is index 8 originally
    both = restrict(arr, (7, 8))
    assert (once.n, once.k) == (both.n, both.k)
    # invertible coordinate change preserves ranks of all row subsets
    for size in range(1, once.k + 1):
        for rows in combinations(range(once.n), size):
            assert (
                once.normals.submatrix(rows).rank()
                == both.normals.submatrix(rows).rank()
            )


def test_json_round_trip():
    arr = random_generic(5, 2, seed=7, bound=10, with_offsets=True)
    doc = json.loads(json.dumps(arrangement_to_json(arr)))
    back = arrangement_from_json(doc)
    assert back == arr


def test_json_rationals_as_strings():
    doc = {"n": 2, "k": 1, "normals": [["1/2"], [3]], "offsets": ["-2/3", 0]}
    arr = arrangement_from_json(doc)
    assert arr.normals.entries[0][0] == Fraction(1, 2)
    assert arr.offsets[0] == Fraction(-2, 3)


def test_json_malformed_rejected():
    with pytest.raises(ValueError):
        arrangement_from_json({"n": 2, "k": 1})
    with pytest.raises(ValueError):
        arrangement_from_json({"n": 2, "k": 1, "normals": [[1], [1], [1]]})


def test_restrict_chart_preserves_incidence_algebra():
    # points on the flat, reconstructed through the chart, satisfy the
    # original equations exactly when the restricted equations hold
    from discarr.rng import SplitMix64

    arr = random_generic(6, 3, seed=15, bound=10, with_offsets=True)
    chosen = (2,)
    out = restrict(arr, chosen, (arr.offsets[1],))
    sub = arr.normal_rows(chosen)
    aug = sub.hstack(QMatrix.from_rows([[arr.offsets[1]]]))
    red, pivots = aug.rref()
    free = [c for c in range(arr.k) if c not in set(pivots)]
    rng = SplitMix64(99)
    remaining = [j for j in range(1, arr.n + 1) if j not in chosen]
    for _ in range(6):
        free_vals = [Fraction(rng.randint(-9, 9)) for _ in free]
        point = [Fraction(0)] * arr.k
        for f, val in zip(free, free_vals):
            point[f] = val
        for i, p in enumerate(pivots):
            point[p] = red.entries[i][arr.k] - sum(
                red.entries[i][f] * v for f, v in zip(free, free_vals)
            )
        # chosen hyperplane holds at this point
        assert sum(a * y for a, y in zip(arr.normals.row(1), point)) == arr.offsets[1]
        for pos, j in enumerate(remaining):
            original = sum(
                a * y for a, y in zip(arr.normals.row(j - 1), point)
            ) - arr.offsets[j - 1]
            restricted = sum(
                a * v for a, v in zip(out.normals.row(pos), free_vals)
            ) - out.offsets[pos]
            assert original == restricted
