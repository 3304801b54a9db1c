import itertools

import pytest

from superpoly.algebras import (
    AlgebraError,
    clifford,
    ground_field,
    identity_algebra_map,
    minus_algebra,
    sergeev,
    split_algebra,
    tensor_power_algebra,
)
from superpoly.centralizer import commutant
from superpoly.duality import (
    Coalgebra,
    cosalg_duality_check,
    double_dual_algebra_check,
    dual_algebra,
    dual_coalgebra,
    gamma_subalgebra,
    gamma_sym_pairing,
    hom_dual_report,
    symmetric_power_coalgebra,
    tensor_dual_check,
    tensor_pairing_sign,
    tensor_power_coalgebra,
    twisted_dual_module,
)
from superpoly.modules import RIGHT, trivial_module, u1_module
from superpoly.superlinear import dual_map, dual_space, make_space, minus_twist
from superpoly.symaction import VerificationError, gamma_dim

from conftest import GF3, GF5, QQ, oracle_rank


def test_tensor_pairing_sign():
    assert [tensor_pairing_sign([1] * k) for k in range(5)] == [1, 1, -1, -1, 1]
    assert tensor_pairing_sign([0, 1, 0]) == 1


# Γ / S pairing


def test_pairing_examples(field):
    P = gamma_sym_pairing(make_space(field, 1, 0), 2)
    assert P.gram.tolist() == [[1]]
    P = gamma_sym_pairing(make_space(field, 0, 1), 2)
    assert P.left.dim == P.right.dim == 0 and P.nondegenerate
    P = gamma_sym_pairing(make_space(field, 1, 1), 2)
    assert P.gram.shape == (2, 2) and P.nondegenerate


@pytest.mark.parametrize("m", range(3))
@pytest.mark.parametrize("n", range(3))
@pytest.mark.parametrize("d", [1, 2, 3])
def test_pairing_perfect(field, m, n, d):
    P = gamma_sym_pairing(make_space(field, m, n), d)
    assert P.nondegenerate
    assert P.left.dim == gamma_dim(m, n, d)
    assert P.left.sdim == P.right.sdim
    if P.gram.size:
        assert oracle_rank(field, P.gram.tolist()) == P.rank


# twisted duals


def test_twisted_dual_u1(field):
    U = u1_module(1, RIGHT, field)
    tau = identity_algebra_map(U.algebra, anti=True)
    D = twisted_dual_module(U, tau)
    assert D.space.sdim == (1, 1)
    D.audit()


def test_twisted_dual_trivial_algebra(field):
    V = trivial_module(make_space(field, 2, 1))
    tau = identity_algebra_map(V.algebra, anti=True)
    D = twisted_dual_module(V, tau)
    assert D.space == dual_space(V.space)
    assert D.cols == V.cols


def test_twisted_dual_needs_antiautomorphism(field):
    U = u1_module(1, RIGHT, field)
    with pytest.raises(AlgebraError):
        twisted_dual_module(U, identity_algebra_map(U.algebra, anti=False))


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_hom_dual(field, a, b):
    V, W = u1_module(a, RIGHT, field), u1_module(b, RIGHT, field)
    tau = identity_algebra_map(V.algebra, anti=True)
    rep = hom_dual_report(V, W, tau)
    assert rep.hom_dim == rep.dual_hom_dim == 2 * a * b
    assert rep.even_literal and rep.odd_after_twist
    # with the unsigned rule <f.a, v> = <f, v.τ(a)> the odd duals need the minus twist
    assert not rep.odd_literal
    assert rep.passed


def test_hom_dual_trivial_algebra(field):
    V, W = trivial_module(make_space(field, 1, 1)), trivial_module(make_space(field, 2, 1))
    rep = hom_dual_report(V, W, identity_algebra_map(V.algebra, anti=True))
    assert rep.even_literal and rep.odd_literal and rep.passed


def test_dual_contravariance_on_module_maps(field):
    U1, U2 = u1_module(1, RIGHT, field), u1_module(2, RIGHT, field)
    A = commutant(U1, U2).maps()
    B = commutant(U2, U1).maps()
    for phi, psi in itertools.product(A, B):
        p, q = phi.parity, psi.parity
        assert dual_map(psi @ phi) == (dual_map(phi) @ dual_map(psi)).scaled(field.sign(p * q))


# coalgebras and Prop-style checks


def test_dual_coalgebra_audits(field):
    for B in (ground_field(field), split_algebra(field), clifford(1, field), clifford(2, field)):
        C = dual_coalgebra(B)
        C.audit()
        assert C.dim == B.dim


def test_coalgebra_audit_catches_errors(field):
    C = Coalgebra(field, [0, 0], [{(0, 0): 1}, {(1, 0): 1}], [1, 0], "bad")
    with pytest.raises(VerificationError):
        C.audit()


def test_symmetric_power_coalgebra_dims(field):
    for B in (split_algebra(field), clifford(1, field)):
        SC, mons = symmetric_power_coalgebra(dual_coalgebra(B), 2)
        SC.audit()
        m = sum(1 for p in B.parities if not p)
        assert SC.dim == gamma_dim(m, B.dim - m, 2)


def test_tensor_power_coalgebra(field):
    T, multis = tensor_power_coalgebra(dual_coalgebra(clifford(1, field)), 2)
    T.audit()
    assert T.dim == 4 and len(multis) == 4


def test_gamma_subalgebra(field):
    alg, vectors, G = gamma_subalgebra(split_algebra(field), 2)
    assert alg.dim == 3 == len(vectors)
    alg.audit()


@pytest.mark.parametrize("d", [1, 2, 3])
def test_cosalg(field, d):
    for B in (ground_field(field), split_algebra(field), clifford(1, field)):
        rep = cosalg_duality_check(B, d)
        assert rep.passed, (B.name, rep)
    assert cosalg_duality_check(ground_field(field), d).dim_gamma == 1


def test_cosalg_examples(field):
    assert cosalg_duality_check(split_algebra(field), 2).dim_gamma == 3
    assert cosalg_duality_check(clifford(1, field), 2).dim_gamma == 2


def test_cosalg_needs_minus_twist(field):
    # comparing with Γ^d(B) instead of Γ^d(B^-) breaks multiplicativity for C(1)
    rep = cosalg_duality_check(clifford(1, field), 2, minus=False)
    assert not rep.multiplicative and not rep.passed


@pytest.mark.parametrize("make", [lambda f: clifford(1, f), lambda f: sergeev(2, f), lambda f: clifford(2, f), split_algebra, ground_field])
def test_double_dual(field, make):
    rep = double_dual_algebra_check(make(field))
    assert rep.isomorphism


def test_double_dual_of_c1_has_negative_square(field):
    dd = dual_algebra(dual_coalgebra(clifford(1, field)))
    assert dd.basis_product(1, 1) == {0: field.norm(-1)}
    assert dd.same_table(minus_algebra(clifford(1, field)))


def test_double_dual_size_limit():
    with pytest.raises(ValueError):
        double_dual_algebra_check(sergeev(3, GF3))


@pytest.mark.parametrize("d", [2, 3])
def test_tensor_dual(field, d):
    rep = tensor_dual_check(dual_coalgebra(clifford(1, field)), d)
    assert rep.isomorphism and rep.dim == 2**d


def test_tensor_dual_table_match(field):
    # (C(1)^∨)^∨ ⊗ (C(1)^∨)^∨ against (C(1)^∨ ⊗ C(1)^∨)^∨: same dimension, explicit iso
    C = dual_coalgebra(clifford(1, field))
    left = tensor_power_algebra(dual_algebra(C), 2)
    T, _ = tensor_power_coalgebra(C, 2)
    assert left.dim == dual_algebra(T).dim == 4
