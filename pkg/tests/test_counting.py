import pytest
from sympy import bell as sympy_bell
from sympy.functions.combinatorial.numbers import stirling

from utils.core import InvalidObjectError
from utils.counting import (
    COUNT_TABLES,
    CountTable,
    a_table,
    a_table_binomial,
    bell,
    ceil_half,
    dobinski_estimate,
    h_table,
    l_sequence,
    ncmf_polynomial,
    ncmf_table,
    r_table,
    rsp_totals,
    stirling2,
)

# r_{n,k} for 1 <= k <= n <= 7 as printed, zeros included
PRINTED_RUN_TRIANGLE = {
    1: [0],
    2: [1, 0],
    3: [1, 1, 0],
    4: [1, 4, 0, 0],
    5: [1, 11, 3, 0, 0],
    6: [1, 26, 25, 0, 0, 0],
    7: [1, 57, 130, 15, 0, 0, 0],
}


def test_run_triangle_matches_printed_values():
    table = r_table(7)
    compared = 0
    for n, row in PRINTED_RUN_TRIANGLE.items():
        for k, expected in enumerate(row, start=1):
            if (n, k) == (1, 1):
                continue
            assert table[n, k] == expected, (n, k)
            compared += 1
    assert compared == 27
    assert table[1, 1] == 1
    assert table[0, 0] == 1


def test_run_triangle_rows():
    table = r_table(7)
    assert table.row(7, 1, ceil_half(7)) == [1, 57, 130, 15]
    assert table.row(5, 1, ceil_half(5)) == [1, 11, 3]
    assert table.nmax == 7


@pytest.mark.parametrize("n", range(1, 25))
def test_run_totals_are_shifted_bell_numbers(n):
    assert rsp_totals(n)[n] == int(sympy_bell(n - 1))


def test_rlmin_triangle():
    table = h_table(6)
    assert table[5, 3] == 7
    assert table[5, 2] == 1
    assert table.row(4, 1, 4) == [0, 1, 3, 1]
    for n in range(2, 7):
        for r in range(1, n + 1):
            assert table[n, r] == int(stirling(n - 1, r - 1))


def test_h_table_needs_positive_nmax():
    with pytest.raises(InvalidObjectError):
        h_table(0)


def test_joint_table_values():
    table = a_table(6)
    assert table[5, 2, 3] == 4
    assert table[5, 2, 2] == 1
    assert table[0, 0, 0] == 1
    assert table[5, 1, 5] == 1


@pytest.mark.parametrize("nmax", [6, 12])
def test_joint_table_marginals(nmax):
    joint = a_table(nmax)
    runs = r_table(nmax)
    minima = h_table(nmax)
    for n in range(1, nmax + 1):
        for k in range(1, ceil_half(n) + 1):
            assert sum(joint[n, k, r] for r in range(1, n + 1)) == runs[n, k]
            for r in range(1, k):
                assert joint[n, k, r] == 0
        for r in range(1, n + 1):
            assert sum(joint[n, k, r] for k in range(1, ceil_half(n) + 1)) == minima[n, r]


def test_binomial_recurrence_agrees():
    assert dict(a_table_binomial(14).values) == dict(a_table(14).values)
    assert a_table_binomial(5)[2, 1, 2] == 1
    assert a_table_binomial(5)[5, 1, 5] == 1


def test_l_sequence():
    table = l_sequence(6)
    assert [table[n] for n in range(5)] == [1, 1, 1, 3, 7]
    assert l_sequence(0)[0] == 1


@pytest.mark.parametrize("nmax", [0, 1, 10, 30])
def test_stirling_and_bell_match_sympy(nmax):
    triangle = stirling2(nmax)
    numbers = bell(nmax)
    for n in range(nmax + 1):
        assert numbers[n] == int(sympy_bell(n))
        for k in range(n + 1):
            assert triangle[n, k] == int(stirling(n, k))


@pytest.mark.parametrize("n, coefficients", [
    (1, [1]),
    (2, [1]),
    (4, [1, 3]),
    (5, [1, 6, 1]),
])
def test_ncmf_polynomial(n, coefficients):
    assert ncmf_polynomial(n) == coefficients


def test_ncmf_totals_are_powers_of_two():
    table = ncmf_table(20)
    for n in range(2, 21):
        assert sum(table[n, t] for t in range(1, ceil_half(n) + 1)) == 2 ** (n - 2)


@pytest.mark.parametrize("n, terms, expected", [(5, 40, 15), (8, 60, 877), (1, 30, 1)])
def test_dobinski_estimate(n, terms, expected):
    assert abs(dobinski_estimate(n, terms) - expected) < 1e-20


@pytest.mark.parametrize("args", [(0, 10), (3, 0), (True, 10)])
def test_dobinski_rejects_bad_arguments(args):
    with pytest.raises(InvalidObjectError):
        dobinski_estimate(*args)


def test_count_table_validation():
    with pytest.raises(InvalidObjectError):
        CountTable("q", (1,), {})
    with pytest.raises(InvalidObjectError):
        CountTable("l", (1,), {(0, 1): 1})
    with pytest.raises(InvalidObjectError):
        CountTable("l", (1,), {(0,): -1})


def test_count_table_is_read_only_and_serializable():
    table = r_table(3)
    with pytest.raises(TypeError):
        table.values[9, 9] = 1
    assert table[9, 9] == 0
    assert table.to_jsonable() == {
        "kind": "r",
        "dims": [3, 2],
        "values": [[[0, 0], 1], [[1, 0], 0], [[1, 1], 1], [[2, 1], 1], [[3, 1], 1], [[3, 2], 1]],
    }


@pytest.mark.parametrize("nmax", [-1, "3", True])
def test_tables_reject_bad_nmax(nmax):
    for build in COUNT_TABLES.values():
        with pytest.raises(InvalidObjectError):
            build(nmax)
