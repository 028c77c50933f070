import pytest
from hypothesis import given
from hypothesis import strategies as st

from utils.core import (
    InvalidObjectError,
    Permutation,
    RgfWord,
    RunDecomposition,
    SetPartition,
    avoids_212,
    canonical_form,
    descents,
    flatten,
    has_crossing_pair,
    is_in_T,
    is_merging_free,
    is_noncrossing,
    is_run_sorted,
    is_separated,
    is_weakly_unimodal,
    lrmax_positions,
    lwmp_positions,
    partition_from_rgf,
    rlmin_count,
    rlmin_set,
    run_count,
    run_decomposition,
    unique_letters,
)
from utils.text_format import parse_partition, parse_permutation, parse_rgf


@st.composite
def rgfs(draw, max_size=12):
    n = draw(st.integers(min_value=1, max_value=max_size))
    letters = [1]
    for _ in range(n - 1):
        letters.append(draw(st.integers(min_value=1, max_value=max(letters) + 1)))
    return RgfWord(tuple(letters))


@pytest.mark.parametrize("partition, rgf", [
    ("1,3,8/2/4,7/5,6", "1,2,1,3,4,4,3,1"),
    ("1/2/3", "1,2,3"),
    ("1,4,9/2,3,8/5,7/6", "1,2,2,1,3,4,3,2,1"),
    ("1,2,3", "1,1,1"),
])
def test_canonical_form_and_back(partition, rgf):
    p = parse_partition(partition)
    f = parse_rgf(rgf)
    assert canonical_form(p) == f
    assert partition_from_rgf(f) == p


@given(rgfs())
def test_canonical_form_inverts_partition_from_rgf(f):
    assert canonical_form(partition_from_rgf(f)) == f


@pytest.mark.parametrize("partition, word", [
    ("1,2,6/3/4,8/5,7", "1,2,6,3,4,8,5,7"),
    ("1,2,3", "1,2,3"),
    ("1,4,9/2,3,8/5,7/6", "1,4,9,2,3,8,5,7,6"),
])
def test_flatten(partition, word):
    assert flatten(parse_partition(partition)) == parse_permutation(word)


@given(rgfs())
def test_flatten_is_run_sorted_with_at_most_k_runs(f):
    p = partition_from_rgf(f)
    pi = flatten(p)
    assert is_run_sorted(pi)
    assert run_count(pi) <= p.k
    assert (run_count(pi) == p.k) == is_merging_free(p)


@pytest.mark.parametrize("word, runs", [
    ("1,2,6,3,4,8,5,7", ((1, 2, 6), (3, 4, 8), (5, 7))),
    ("1,2,3,4,5", ((1, 2, 3, 4, 5),)),
    ("1,3,6,2,7,4,5", ((1, 3, 6), (2, 7), (4, 5))),
])
def test_run_decomposition(word, runs):
    pi = parse_permutation(word)
    decomposition = run_decomposition(pi)
    assert decomposition.runs == runs
    assert decomposition.k == run_count(pi) == len(descents(pi)) + 1


def test_run_decomposition_rejects_non_maximal_runs():
    with pytest.raises(InvalidObjectError):
        RunDecomposition(((1,), (2,)), Permutation((1, 2)))


@pytest.mark.parametrize("word, expected", [
    ("1,2,4,3,5", True),
    ("2,1", False),
    ("1,3,6,2,7,4,5", True),
    ("1,4,2,3,5", True),
])
def test_is_run_sorted(word, expected):
    assert is_run_sorted(parse_permutation(word)) is expected


@pytest.mark.parametrize("word, minima", [
    ("1,5,2,6,9,3,8,4,7", {1, 2, 3, 4, 7}),
    ("1,2,3,4,5,6", {1, 2, 3, 4, 5, 6}),
    ("1,4,9,2,3,8,5,7,6", {1, 2, 3, 5, 6}),
])
def test_rlmin_set_returns_values(word, minima):
    pi = parse_permutation(word)
    assert rlmin_set(pi) == minima
    assert rlmin_count(pi) == len(minima)


@pytest.mark.parametrize("rgf, strict, weak", [
    ("1,2,1,1,3,2,3,4,2", {1, 2, 5, 8}, {1, 2, 5, 7, 8}),
    ("1,1,1", {1}, {1, 2, 3}),
    ("1,2,3", {1, 2, 3}, {1, 2, 3}),
    ("1,2,2,1,3,4,3,2,1", {1, 2, 5, 6}, {1, 2, 3, 5, 6}),
])
def test_left_to_right_maxima(rgf, strict, weak):
    f = parse_rgf(rgf)
    assert lrmax_positions(f) == strict
    assert lwmp_positions(f) == weak


@given(rgfs())
def test_strict_maxima_are_weak_maxima(f):
    assert lrmax_positions(f) <= lwmp_positions(f)


def test_unique_letters_are_singleton_blocks():
    assert unique_letters(parse_rgf("1,2,1,3,1,2,4")) == {3, 4}


@pytest.mark.parametrize("partition, expected", [
    ("1,2,6/3,4,8/5,7", True),
    ("1/2", False),
    ("1,2,6/3/4,8/5,7", False),
    ("1,2,3", True),
])
def test_is_merging_free(partition, expected):
    assert is_merging_free(parse_partition(partition)) is expected


@pytest.mark.parametrize("rgf, expected", [
    ("1,2,3,1,3,1,2,3", True),
    ("1,2", False),
    ("1,2,2,1,3,4,3,2,1", True),
    ("1,1", True),
])
def test_is_in_T(rgf, expected):
    assert is_in_T(parse_rgf(rgf)) is expected


@given(rgfs(max_size=10))
def test_is_in_T_matches_merging_free(f):
    assert is_in_T(f) == is_merging_free(partition_from_rgf(f))


@pytest.mark.parametrize("partition, expected", [
    ("1,3,5,8/2,6/4,7", True),
    ("1,2", False),
    ("1,3,6/2,5,8/4,7", True),
])
def test_is_separated(partition, expected):
    assert is_separated(parse_partition(partition)) is expected


@pytest.mark.parametrize("partition, expected", [
    ("1,2,3,9,10/4,6,7,8/5", True),
    ("1,2,5,7/3,9,10/4,6,8", False),
    ("1/2/3/4", True),
    ("1,3/2,4", False),
])
def test_is_noncrossing(partition, expected):
    p = parse_partition(partition)
    assert is_noncrossing(p, verify=True) is expected
    assert has_crossing_pair(p) is not expected


@given(rgfs(max_size=10))
def test_212_avoidance_agrees_with_direct_crossing_test(f):
    p = partition_from_rgf(f)
    assert avoids_212(f) == (not has_crossing_pair(p))


@pytest.mark.parametrize("rgf, expected", [
    ("1,2,2,1,3,4,3,2,1", False),
    ("1,2,3,2,1", True),
    ("1,1,1", True),
    ("1,2,1,2", False),
])
def test_is_weakly_unimodal(rgf, expected):
    assert is_weakly_unimodal(parse_rgf(rgf)) is expected


@pytest.mark.parametrize("blocks", [
    ((1, 3), (2, 2)),
    ((2, 1), (3,)),
    ((2,), (1, 3)),
    ((1, 2), (4,)),
    (),
])
def test_set_partition_rejects_invalid_blocks(blocks):
    with pytest.raises(InvalidObjectError):
        SetPartition(blocks)


def test_from_blocks_normalizes_order():
    assert SetPartition.from_blocks([[6], [7, 5], [3, 1, 8], [2], [4]]) == parse_partition("1,3,8/2/4/5,7/6")


@pytest.mark.parametrize("letters", [(), (2,), (1, 3), (1, 2, 4), (1, 0)])
def test_rgf_rejects_invalid_words(letters):
    with pytest.raises(InvalidObjectError):
        RgfWord(letters)


@pytest.mark.parametrize("word", [(), (1, 1), (2, 3), (0, 1)])
def test_permutation_rejects_invalid_words(word):
    with pytest.raises(InvalidObjectError):
        Permutation(word)


def test_objects_reject_non_integers():
    with pytest.raises(InvalidObjectError):
        Permutation((1, "2"))
    with pytest.raises(InvalidObjectError):
        RgfWord((True,))
