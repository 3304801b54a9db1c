import pytest
from hypothesis import given, strategies as st
from sympy import partition as partition_count

from superpoly.centralizer import weight_decomposition
from superpoly.classify import (
    Partition,
    admissible_II,
    labels_type_I,
    labels_type_II,
    partitions,
    weight_compositions,
)

from conftest import GF3, type_I_series, type_II_series


def test_partition_normalises_and_validates():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    assert str(Partition()) == "∅" and str(Partition((2, 1))) == "(2,1)"
    assert Partition((2, 2)).size == 4 and len(Partition((2, 2))) == 2
    for bad in [(1, 2), (2, -1), (-1,)]:
        with pytest.raises(ValueError):
            Partition(bad)


@pytest.mark.parametrize("d", range(10))
def test_partition_count(d):
    ps = list(partitions(d))
    assert len(ps) == int(partition_count(d)) == len(set(ps))
    assert all(p.size == d for p in ps)
    assert ps == sorted(ps, reverse=True)


def test_type_I_examples():
    assert len(labels_type_I(1, 3)) == 1
    assert len(labels_type_I(3, 3)) == 4
    assert (Partition(), Partition((1,))) in labels_type_I(3, 3)
    assert labels_type_I(0, 5) == [(Partition(), Partition())]


def test_type_I_refuses_characteristic_zero():
    with pytest.raises(ValueError):
        labels_type_I(2, 0)
    with pytest.raises(ValueError):
        labels_type_I(2, 4)
    with pytest.raises(ValueError):
        labels_type_I(-1, 3)


def test_type_II_examples():
    assert labels_type_II(4, 0) == [Partition((4,)), Partition((3, 1))]
    assert len(labels_type_II(4, 3)) == 2
    six = labels_type_II(6, 3)
    assert Partition((3, 3)) in six and Partition((2, 2, 2)) not in six
    assert labels_type_II(0, 3) == [Partition()]
    assert admissible_II(Partition((3, 3, 1)), 3) and not admissible_II(Partition((3, 3)), 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_type_I_generating_function(p):
    N = 8
    series = type_I_series(p, N)
    assert [len(labels_type_I(d, p)) for d in range(N + 1)] == series


@pytest.mark.parametrize("p", [0, 3, 5])
def test_type_II_generating_function(p):
    N = 10
    series = type_II_series(p, N)
    assert [len(labels_type_II(d, p)) for d in range(N + 1)] == series


@pytest.mark.parametrize("p", [0, 3, 5])
@pytest.mark.parametrize("d", range(10))
def test_type_II_sandwich(p, d):
    strict = sum(1 for lam in partitions(d) if len(set(lam.parts)) == len(lam))
    assert strict <= len(labels_type_II(d, p)) <= int(partition_count(d))


@given(st.integers(1, 4), st.integers(0, 5))
def test_weight_compositions(n, d):
    ws = weight_compositions(n, d)
    assert len(ws) == len(set(ws))
    assert all(len(w) == n and sum(w) == d and min(w) >= 0 for w in ws)
    assert ws == sorted(ws, reverse=True)
    from math import comb

    assert len(ws) == comb(n + d - 1, d)


def test_weight_compositions_small():
    assert weight_compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(weight_compositions(3, 2)) == 6
    assert weight_compositions(1, 4) == [(4,)]
    with pytest.raises(ValueError):
        weight_compositions(0, 1)


@pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (2, 3)])
def test_weight_keys_match(n, d):
    wd = weight_decomposition(n, d, GF3)
    assert list(wd.dims) == weight_compositions(n, d)
