"""The eight acceptance criteria, each with its time budget.

Every test records one PASS/FAIL line, shown in the terminal summary.
"""

import itertools
import random
import time
from collections import Counter
from math import factorial

import pytest

from superpoly import linalg
from superpoly.algebras import clifford, ground_field, sergeev, split_algebra
from superpoly.centralizer import (
    double_centralizer,
    schur_I_commutant,
    schur_I_dim,
    schur_II_commutant,
    schur_II_dim,
    weight_decomposition,
)
from superpoly.classify import labels_type_I, labels_type_II
from superpoly.duality import cosalg_duality_check, double_dual_algebra_check, gamma_sym_pairing
from superpoly.gammacat import surjectivity_report
from superpoly.modules import RIGHT, trivial_module, u1_module
from superpoly.superlinear import SuperMap, boxtimes, dual_map, make_space, minus_twist
from superpoly.symaction import (
    all_reduced_words,
    gamma_dim,
    gamma_invariants,
    invariant_kernel,
    permutation_action,
    tensor_power,
    transposition_action,
    word_action,
)

from conftest import GF3, QQ, oracle_rank, record_acceptance, type_I_series


class Criterion:
    """Times a block of checks and records the outcome."""

    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"took {elapsed:.2f} s")
        record_acceptance(self.number, self.title, not self.failures, elapsed, self.limit)
        assert not self.failures, self.failures
        return True


def random_map(rng, f, source, target, parity):
    m = f.zeros((target.dim, source.dim))
    for t, s in itertools.product(range(target.dim), range(source.dim)):
        if (target.parities[t] + source.parities[s]) % 2 == parity:
            m[t, s] = f.norm(rng.randint(-4, 4))
    return SuperMap(source, target, m)


def random_space(rng, f):
    return make_space(f, rng.randint(0, 2), rng.randint(0, 2))


def regular_rank(A):
    """Rank of the span of left multiplication matrices, a second count of dim A."""
    rows = []
    for i in range(A.dim):
        row = []
        for j in range(A.dim):
            prod = A.basis_product(i, j)
            row.extend(prod.get(k, 0) for k in range(A.dim))
        rows.append(row)
    return oracle_rank(A.field, rows)


def test_criterion_1_dimensions():
    with Criterion(1, "dimension suite", 5.0) as c:
        for f in (QQ, GF3):
            for (m, n, d), want in [((2, 0, 2), 10), ((1, 1, 2), 8)]:
                com = schur_I_commutant(m, n, d, f).dim
                c.check(com == schur_I_dim(m, n, d) == want, f"S({m}|{n},{d}) over {f.name}")
            for (n, d), want in [((1, 2), 2), ((2, 2), 32)]:
                com = schur_II_commutant(n, d, f).dim
                c.check(com == schur_II_dim(n, d) == want, f"Q({n},{d}) over {f.name}")
            W = sergeev(3, f)
            c.check(W.dim == regular_rank(W) == factorial(3) * 2**3 == 48, f"W(3) over {f.name}")
            M = make_space(f, 0, 1)
            c.check(len(invariant_kernel(M, 2)) == gamma_dim(0, 1, 2) == 0, f"Γ² odd line over {f.name}")


def test_criterion_2_signs():
    rng = random.Random(20240517)
    with Criterion(2, "sign coherence", 10.0) as c:
        for f in (QQ, GF3):
            for (m, n), d in itertools.product([(1, 0), (0, 1), (1, 1)], [2, 3, 4]):
                M = make_space(f, m, n)
                for sigma in itertools.permutations(range(d)):
                    mats = [word_action(M, d, w) for w in all_reduced_words(sigma)]
                    c.check(all(x == mats[0] for x in mats), f"reduced words {sigma} on {m}|{n}")
                    c.check(mats[0] == permutation_action(M, d, sigma), f"permutation {sigma}")
        quads = 0
        while quads < 120:
            f = (QQ, GF3)[quads % 2]
            M1, M2, N1, N2, P1, P2 = (random_space(rng, f) for _ in range(6))
            pa, pb, pc, pe = (rng.randint(0, 1) for _ in range(4))
            a, b = random_map(rng, f, N1, P1, pa), random_map(rng, f, N2, P2, pb)
            cc, e = random_map(rng, f, M1, N1, pc), random_map(rng, f, M2, N2, pe)
            lhs = boxtimes(a, b) @ boxtimes(cc, e)
            rhs = boxtimes(a @ cc, b @ e).scaled(f.sign(pb * pc))
            c.check(lhs == rhs, f"interchange quadruple {quads}")
            quads += 1
        for k in range(100):
            f = (QQ, GF3)[k % 2]
            L, M, N = (random_space(rng, f) for _ in range(3))
            p, q = rng.randint(0, 1), rng.randint(0, 1)
            phi, psi = random_map(rng, f, L, M, p), random_map(rng, f, M, N, q)
            c.check(dual_map(psi @ phi) == (dual_map(phi) @ dual_map(psi)).scaled(f.sign(p * q)), "contravariance")
            c.check(minus_twist(minus_twist(phi)) == phi, "twist involution")


def test_criterion_3_divided_power_basis():
    with Criterion(3, "divided power basis", None) as c:
        for f in (QQ, GF3):
            for m, n, d in itertools.product(range(3), range(3), range(1, 4)):
                M = make_space(f, m, n)
                G = gamma_invariants(M, d, check=False)
                T = tensor_power(M, d)
                dense = [linalg.to_dense(f, v, T.dim) for v in G.vectors]
                c.check(len(G.vectors) == gamma_dim(m, n, d), f"count {m}|{n} d={d}")
                c.check(oracle_rank(f, dense) == len(G.vectors) if dense else True, f"independent {m}|{n} d={d}")
                for i in range(1, d):
                    s = transposition_action(M, d, i)
                    for v in dense:
                        c.check(list(s.apply(v)) == list(v), f"invariant under s{i}")
                kernel = invariant_kernel(M, d)
                c.check(linalg.same_span(f, G.vectors, kernel), f"span {m}|{n} d={d}")


def test_criterion_4_surjectivity():
    with Criterion(4, "Γ composition surjectivity", 30.0) as c:
        for f in (QQ, GF3):
            for d in (1, 2):
                P = trivial_module(make_space(f, d, d))
                for (a, b), (x, y) in itertools.product([(1, 0), (0, 1), (1, 1)], repeat=2):
                    V, W = trivial_module(make_space(f, a, b)), trivial_module(make_space(f, x, y))
                    rep = surjectivity_report(V, P, W, d)
                    c.check(rep.surjective and rep.rank == rep.target_dim, f"k: {a}|{b} -> {x}|{y}, d={d}")
                U = u1_module(1, RIGHT, f)
                rep = surjectivity_report(U, u1_module(d, RIGHT, f), U, d)
                c.check(rep.surjective and rep.rank == rep.target_dim, f"C(1), d={d}")


def test_criterion_5_double_centralizer():
    with Criterion(5, "double centralizer", 60.0) as c:
        for n, d in [(1, 1), (2, 1), (2, 2)]:
            rep = double_centralizer(n, d, QQ)
            c.check(rep.hypothesis and rep.injective and rep.equal, f"({n},{d})")
            c.check(rep.image_dim == rep.wreath_dim == factorial(d) * 2**d, f"image ({n},{d})")
            c.check(rep.commutant_dim == rep.image_dim, f"commutant ({n},{d})")


def test_criterion_6_duality():
    with Criterion(6, "duality over GF(3)", None) as c:
        for m, n, d in itertools.product(range(3), range(3), range(1, 4)):
            P = gamma_sym_pairing(make_space(GF3, m, n), d)
            full = P.rank == P.left.dim == P.right.dim
            if P.gram.size:
                full = full and oracle_rank(GF3, P.gram.tolist()) == P.left.dim
            c.check(full, f"pairing {m}|{n} d={d}")
        for B in (split_algebra(GF3), clifford(1, GF3)):
            c.check(cosalg_duality_check(B, 2).passed, f"cosalg {B.name}")
        for B in (clifford(1, GF3), sergeev(2, GF3)):
            c.check(double_dual_algebra_check(B).isomorphism, f"double dual {B.name}")


def test_criterion_7_classification():
    with Criterion(7, "classification counts", 1.0) as c:
        c.check(len(labels_type_II(4, 3)) == 2, "II(4,3)")
        c.check(len(labels_type_II(4, 0)) == 2, "II(4,0)")
        c.check(len(labels_type_I(3, 3)) == 4, "I(3,3)")
        for p in (3, 5):
            c.check([len(labels_type_I(d, p)) for d in range(9)] == type_I_series(p, 8), f"series p={p}")


def test_criterion_8_weights():
    with Criterion(8, "weight decomposition", None) as c:
        for f in (QQ, GF3):
            wd = weight_decomposition(2, 2, f)
            c.check(wd.dims == {(2, 0): 4, (1, 1): 8, (0, 2): 4}, f"dims over {f.name}")
            c.check(wd.stable, f"stable over {f.name}")
            # oracle: a basis tensor of U(1)^{⊗2} for n = 2 picks a colour and a parity per slot
            counts = Counter()
            for slots in itertools.product(range(2), repeat=2):
                w = tuple(slots.count(i) for i in range(2))
                counts[w] += 2**2
            c.check(dict(counts) == wd.dims, "multinomial count")
