import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superpoly.algebras import (
    AlgebraError,
    AlgebraMap,
    SuperAlgebra,
    build_algebra,
    clifford,
    clifford_factorization,
    clifford_matrix_model,
    generator,
    ground_field,
    group_algebra,
    identity_algebra_map,
    minus_algebra,
    sergeev,
    sergeev_generator,
    split_algebra,
    tau_antiautomorphism,
    tensor_algebra,
    tensor_power_algebra,
    tensor_swap,
    wreath,
    wreath_embeddings,
)
from superpoly.symaction import perm_compose, perm_inverse, transposition

from conftest import GF3, GF5, QQ, dense_equal


def clifford_word_oracle(word):
    """Normal form of c_{i1} c_{i2} ... by bubble sort: (sign, sorted square-free set)."""
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                sign = -sign
                changed = True
            elif w[k] == w[k + 1]:
                del w[k : k + 2]
                changed = True
                break
    return sign, tuple(w)


def clifford_element(C, d, subset):
    bits = tuple(int(k + 1 in subset) for k in range(d))
    return {sorted(itertools.product((0, 1), repeat=d)).index(bits): 1}


# Clifford


def test_clifford_small(field):
    assert clifford(0, field).dim == 1
    C1 = clifford(1, field)
    c = generator(C1, "c1")
    assert C1.dim == 2 and C1.mul(c, c) == C1.unit
    C2 = clifford(2, field)
    c12 = generator(C2, "c1c2")
    assert C2.mul(c12, c12) == {0: field.norm(-1)}
    assert all(p == 1 for p, lab in zip(C2.parities, C2.labels) if lab in ("c1", "c2"))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_clifford_table_matches_word_oracle(field, d):
    C = clifford(d, field)
    subsets = [tuple(k + 1 for k in range(d) if b[k]) for b in itertools.product((0, 1), repeat=d)]
    for s, t in itertools.product(subsets, repeat=2):
        sign, nf = clifford_word_oracle(s + t)
        got = C.mul(clifford_element(C, d, s), clifford_element(C, d, t))
        expected = {next(iter(clifford_element(C, d, nf))): field.norm(sign)}
        assert got == expected


def test_clifford_generators_anticommute(field):
    C = clifford(3, field)
    gens = [generator(C, f"c{i}") for i in (1, 2, 3)]
    for i, j in itertools.permutations(range(3), 2):
        assert C.mul(gens[i], gens[j]) == {k: field.norm(-v) for k, v in C.mul(gens[j], gens[i]).items()}


def test_clifford_matrix_model(field):
    model, iso, mats = clifford_matrix_model(field)
    I, J = mats
    assert dense_equal(field.matmul(J, J), I)
    assert model.parities == [0, 1]
    assert iso.is_bijective()
    assert model.same_table(clifford(1, field))


@pytest.mark.parametrize("d1,d2", [(1, 1), (0, 2), (2, 0), (1, 2)])
def test_clifford_factorization(field, d1, d2):
    phi = clifford_factorization(d1, d2, field)
    assert phi.is_bijective() and phi.source.dim == 2 ** (d1 + d2)
    phi.check()


def test_clifford_equals_iterated_tensor(field):
    assert tensor_power_algebra(clifford(1, field), 3).same_table(clifford(3, field))


# tensor products


def test_tensor_algebra_signs(field):
    C = clifford(1, field)
    CC = tensor_algebra(C, C)
    c1 = {CC.labels.index("c1⊗1"): 1}
    c2 = {CC.labels.index("1⊗c1"): 1}
    cc = CC.labels.index("c1⊗c1")
    assert CC.mul(c1, c2) == {cc: 1}
    assert CC.mul(c2, c1) == {cc: field.norm(-1)}
    assert tensor_algebra(C, ground_field(field)).same_table(C)


def test_tensor_swap_is_iso(field):
    C = clifford(1, field)
    s = tensor_swap(C, C)
    s.check()
    assert s.is_bijective()
    with pytest.raises(AlgebraError):
        # the swap without the Koszul sign
        AlgebraMap(s.source, s.target, [{0: 1}, {2: 1}, {1: 1}, {3: 1}]).check()


def test_tensor_field_mismatch():
    with pytest.raises(AlgebraError):
        tensor_algebra(clifford(1, QQ), clifford(1, GF3))


# group algebra and wreath products


def test_group_algebra(field):
    assert group_algebra(1, field).same_table(ground_field(field))
    kS = group_algebra(3, field)
    assert kS.dim == 6 and set(kS.parities) == {0}
    perms = list(itertools.permutations(range(3)))
    s1, s2 = ({perms.index(transposition(3, i)): 1} for i in (1, 2))
    assert kS.product(s1, s2, s1) == kS.product(s2, s1, s2)
    assert kS.mul(s1, s1) == kS.unit


def test_wreath_of_ground_is_group_algebra(field):
    assert wreath(ground_field(field), 3).same_table(group_algebra(3, field))


def test_wreath_dims(field):
    assert sergeev(1, field).same_table(clifford(1, field))
    assert sergeev(2, field).dim == 8
    assert wreath(split_algebra(field), 2).dim == 8


def test_sergeev_w3_dim():
    assert sergeev(3, GF3).dim == 48


def test_w2_example(field):
    W = sergeev(2, field)
    s = (1, 0)
    x = {W.element_index(s, (1, 0)): 1}
    y = {W.element_index(s, (0, 1)): 1}
    assert W.mul(x, y) == W.unit


@pytest.mark.parametrize("d", [2, 3])
def test_sergeev_presentation(field, d):
    W = sergeev(d, field)
    c = [sergeev_generator(W, j) for j in range(1, d + 1)]
    neg = lambda x: {k: field.norm(-v) for k, v in x.items()}
    for i in range(d):
        assert W.mul(c[i], c[i]) == W.unit
        for j in range(i + 1, d):
            assert W.mul(c[i], c[j]) == neg(W.mul(c[j], c[i]))
    for sigma in itertools.permutations(range(d)):
        P, Pinv = W.perm_element(sigma), W.perm_element(perm_inverse(sigma))
        for j in range(d):
            # σ c_j σ^{-1} = c_{σ(j)} in one-line notation
            assert W.product(P, c[j], Pinv) == c[sigma[j]]
    s1 = W.perm_element(transposition(d, 1))
    assert W.product(s1, c[0], s1) == c[1]


def test_wreath_embeddings(field):
    perm_map, tens_map = wreath_embeddings(sergeev(2, field))
    assert perm_map.source.dim == 2 and tens_map.source.dim == 4


def test_wreath_multiplies_per_rule(field):
    W = sergeev(2, field)
    for sigma in W.perms:
        for m in W.multis:
            assert W.mul(W.perm_element(sigma), W.tensor_element(m)) == {W.element_index(sigma, m): 1}


# minus twist


def test_minus_algebra(field):
    kS = group_algebra(3, field)
    assert minus_algebra(kS).same_table(kS)
    C = clifford(1, field)
    c = generator(C, "c1")
    assert minus_algebra(C).mul(c, c) == {0: field.norm(-1)}
    W = sergeev(2, field)
    assert minus_algebra(minus_algebra(W)).same_table(W)


# antiautomorphism


def test_tau_trivial_degree(field):
    C = clifford(1, field)
    tau = identity_algebra_map(C, anti=True)
    t1 = tau_antiautomorphism(C, tau, 1)
    assert t1.images == [{0: 1}, {1: 1}]


def test_tau_on_w2(field):
    C = clifford(1, field)
    tau = identity_algebra_map(C, anti=True)
    W = sergeev(2, field)
    t = tau_antiautomorphism(C, tau, 2, W)
    s1 = W.perm_element((1, 0))
    assert t(s1) == s1
    c1c2 = W.mul(sergeev_generator(W, 1), sergeev_generator(W, 2))
    assert t(c1c2) == {k: field.norm(-v) for k, v in c1c2.items()}


def test_tau_anti_multiplicative_gf5():
    C = clifford(1, GF5)
    W = sergeev(2, GF5)
    t = tau_antiautomorphism(C, identity_algebra_map(C, anti=True), 2, W)
    rng = random.Random(1)
    for _ in range(50):
        x = {rng.randrange(8): rng.randrange(1, 5) for _ in range(3)}
        y = {rng.randrange(8): rng.randrange(1, 5) for _ in range(3)}
        x = {k: v for k, v in x.items() if v}
        y = {k: v for k, v in y.items() if v}
        assert t(W.mul(x, y)) == W.mul(t(y), t(x))


def test_tau_rejects_non_antiautomorphism(field):
    C = clifford(2, field)
    with pytest.raises(AlgebraError):
        tau_antiautomorphism(C, identity_algebra_map(C, anti=False), 2)
    # identity is not anti-multiplicative on C(2): c1c2 != c2c1
    with pytest.raises(AlgebraError):
        tau_antiautomorphism(C, identity_algebra_map(C, anti=True), 2)


# audits and serialisation


def test_audit_catches_non_associative(field):
    # x·x = y, y·x = x, x·y = 0: (xx)x = x but x(xx) = 0
    table = {(1, 1): {2: 1}, (2, 1): {1: 1}}

    def rule(i, j):
        if i == 0 or j == 0:
            return {i + j: 1}
        return table.get((i, j), {})

    with pytest.raises(AlgebraError):
        build_algebra(field, [0, 0, 0], ["1", "x", "y"], rule, {0: 1}, "bad")


def test_audit_catches_parity_violation(field):
    with pytest.raises(AlgebraError):
        build_algebra(field, [0, 1], ["1", "x"], lambda i, j: {(i + j) % 2: 1} if (i, j) != (1, 1) else {1: 1}, {0: 1}, "bad")


@pytest.mark.parametrize("make", [lambda f: clifford(2, f), lambda f: sergeev(2, f), split_algebra])
def test_json_roundtrip(field, make):
    A = make(field)
    data = json.loads(json.dumps(A.to_json()))
    assert set(data) >= {"name", "field", "dim", "parities", "unit", "constants"}
    assert SuperAlgebra.from_json(data).same_table(A)
    assert json.dumps(A.to_json(), sort_keys=True) == json.dumps(make(field).to_json(), sort_keys=True)


@given(st.integers(0, 3), st.sampled_from([QQ, GF3]))
def test_clifford_dim(d, f):
    C = clifford(d, f)
    assert C.dim == 2**d and sum(C.parities) == 2 ** (d - 1) * (d > 0)
