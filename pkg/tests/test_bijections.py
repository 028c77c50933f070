import pytest
from hypothesis import given
from hypothesis import strategies as st

from utils.bijections import (
    BIJECTIONS,
    Insertion,
    alpha,
    apply_bijection,
    beta,
    bijection_trace,
    canonical_extend,
    phi,
    phi_inverse,
    prop0_forward,
    prop0_inverse,
    psi,
    psi_inverse,
    remove_max,
    rlmin_insert,
    rsp_split,
    theta,
    theta_inverse,
)
from utils.core import (
    InvalidObjectError,
    RgfWord,
    flatten,
    is_in_T,
    is_run_sorted,
    lrmax_positions,
    partition_from_rgf,
    rlmin_count,
    run_count,
    weak_maxima,
)
from utils.generation import generate_separated
from utils.text_format import parse_partition as P
from utils.text_format import parse_permutation as W
from utils.text_format import parse_rgf as F


@st.composite
def rgfs(draw, max_size=10):
    n = draw(st.integers(min_value=1, max_value=max_size))
    letters = [1]
    for _ in range(n - 1):
        letters.append(draw(st.integers(min_value=1, max_value=max(letters) + 1)))
    return RgfWord(tuple(letters))


@pytest.mark.parametrize("partition, word", [
    ("1,4/2,5,8/3,7/6", "1,5,2,6,9,3,8,4,7"),
    ("1", "1,2"),
    ("1,2/3", "1,3,2,4"),
])
def test_prop0(partition, word):
    assert prop0_forward(P(partition)) == W(word)
    assert prop0_inverse(W(word)) == P(partition)


@given(rgfs())
def test_prop0_round_trip_keeps_block_count(f):
    p = partition_from_rgf(f)
    pi = prop0_forward(p)
    assert is_run_sorted(pi)
    assert rlmin_count(pi) == p.k + 1
    assert prop0_inverse(pi) == p


def test_prop0_inverse_rejects_bad_input():
    with pytest.raises(InvalidObjectError):
        prop0_inverse(W("2,1"))
    with pytest.raises(InvalidObjectError):
        prop0_inverse(W("1"))


@pytest.mark.parametrize("f, g", [
    ("1,2,1,3,1,2,4", "1,2,3,1,3,1,2,3"),
    ("1", "1,1"),
    ("1,1", "1,2,1"),
    ("1,2,1,3,4,4,3,1", "1,2,2,1,3,4,3,2,1"),
])
def test_alpha_and_beta(f, g):
    assert alpha(F(f)) == F(g)
    assert beta(F(g)) == F(f)


def test_beta_rejects_words_outside_T():
    with pytest.raises(InvalidObjectError):
        beta(F("1,2"))
    with pytest.raises(InvalidObjectError):
        beta(F("1"))


def test_bijection_trace_vectors():
    trace = bijection_trace(F("1,2,1,3,1,2,4"))
    assert trace.u == (0, 0, 0, 0, 0, 0, 1)
    assert trace.delta == (1, 1, 0, 0, 0, 0, 0)
    assert trace.v == (0, 0, 0, 0, 0, 0, 1)
    assert trace.delta_prime == (1, 1, 0, 0, 0, 0, 0)


@given(rgfs())
def test_alpha_lands_in_T_and_beta_inverts_it(f):
    g = alpha(f)
    assert g.n == f.n + 1
    assert is_in_T(g)
    assert beta(g) == f
    assert lrmax_positions(f) == weak_maxima(g.letters[1:])


def test_phi_appends_n_to_a_run():
    sigma = W("1,3,2")
    assert phi(1, sigma) == W("1,3,4,2")
    assert phi(2, sigma) == W("1,3,2,4")
    assert phi(2, W("1,3,2,4")) == W("1,3,2,4,5")
    assert phi_inverse(W("1,3,4,2")) == (1, sigma)
    with pytest.raises(InvalidObjectError):
        phi(3, sigma)


@pytest.mark.parametrize("i, pi, image", [
    (3, "1,3,5,2,4", "1,3,6,2,7,4,5"),
    (1, "1", "1,3,2"),
    (2, "1,2", "1,2,4,3"),
])
def test_psi(i, pi, image):
    assert psi(i, W(pi)) == W(image)
    assert run_count(W(image)) == run_count(W(pi)) + 1
    assert psi_inverse(W(image)) == (i, W(pi))


def test_split_sends_each_permutation_to_one_inverse():
    assert rsp_split(W("1,3,4,2")) == 1
    assert rsp_split(W("1,2,4,3")) == 2
    assert remove_max(W("1,2,4,3")) == W("1,2,3")
    with pytest.raises(InvalidObjectError):
        phi_inverse(W("1,2,4,3"))
    with pytest.raises(InvalidObjectError):
        psi_inverse(W("1,3,4,2"))
    with pytest.raises(InvalidObjectError):
        psi_inverse(W("1,2,3,4"))


@pytest.mark.parametrize("i, f, g", [
    (3, "1,2,1,3,2", "1,2,1,3,4,3,2"),
    (1, "1", "1,2,1"),
    (2, "1,1", "1,1,2,1"),
    (1, "1,1", "1,2,2,1"),
])
def test_canonical_extend(i, f, g):
    extended = canonical_extend(i, F(f))
    assert extended == F(g)
    assert is_in_T(extended)
    assert extended.k == F(f).k + 1


def test_canonical_extension_flattens_to_psi():
    assert flatten(partition_from_rgf(canonical_extend(1, F("1,1")))) == psi(1, W("1,2"))
    assert flatten(partition_from_rgf(canonical_extend(2, F("1,1")))) == psi(2, W("1,2"))


def test_canonical_extend_rejects_bad_input():
    with pytest.raises(InvalidObjectError):
        canonical_extend(1, F("1,2"))
    with pytest.raises(InvalidObjectError):
        canonical_extend(3, F("1,1"))


@pytest.mark.parametrize("pi, target, image", [
    ("1,2", Insertion.END, "1,2,3"),
    ("1,2", 2, "1,3,2"),
    ("1,3,2,4", 2, "1,3,5,2,4"),
])
def test_rlmin_insert(pi, target, image):
    result = rlmin_insert(W(pi), target)
    assert result == W(image)
    assert is_run_sorted(result)


@pytest.mark.parametrize("target", [1, 3, True, "2"])
def test_rlmin_insert_rejects_bad_targets(target):
    with pytest.raises(InvalidObjectError):
        rlmin_insert(W("1,3,2,4"), target)


@pytest.mark.parametrize("partition, word", [
    ("1,3,5,8/2,6/4,7", "1,3,5,6,8,2,7,4"),
    ("1/2/3", "1,2,3"),
    ("1,3/2", "1,3,2"),
    ("1,3,6/2,5,8/4,7", "1,3,6,2,5,7,8,4"),
])
def test_theta(partition, word):
    assert theta(P(partition)) == W(word)
    assert theta_inverse(W(word)) == P(partition)


@pytest.mark.parametrize("n", range(1, 9))
def test_theta_preserves_block_count_as_rlmin(n):
    for p in generate_separated(n):
        pi = theta(p)
        assert is_run_sorted(pi)
        assert rlmin_count(pi) == p.k
        assert theta_inverse(pi) == p


def test_theta_rejects_non_separated_partitions():
    with pytest.raises(InvalidObjectError):
        theta(P("1,2"))


def test_apply_bijection():
    assert apply_bijection("theta", P("1,3/2")) == W("1,3,2")
    assert apply_bijection("psi", W("1,2"), i=2) == W("1,2,4,3")
    assert apply_bijection("psi-inv", W("1,3,6,2,7,4,5")) == (3, W("1,3,5,2,4"))
    assert apply_bijection("rlmin-insert", W("1,2"), target=Insertion.END) == W("1,2,3")


@pytest.mark.parametrize("name, kwargs", [
    ("nope", {}),
    ("phi", {}),
    ("rlmin-insert", {}),
])
def test_apply_bijection_rejects_missing_arguments(name, kwargs):
    with pytest.raises(InvalidObjectError):
        apply_bijection(name, W("1,2"), **kwargs)


def test_registry_input_kinds():
    assert {kind for kind, _, _ in BIJECTIONS.values()} == {"partition", "permutation", "rgf"}
    assert [name for name, (_, _, indexed) in BIJECTIONS.items() if indexed] == ["phi", "psi", "extend"]
