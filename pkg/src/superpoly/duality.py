"""Pairings, twisted duals, and duality between divided and symmetric powers.

Coalgebras are stored by their comultiplication on a basis m_k:
``comult[k] = {(a, b): D}`` meaning Δ(m_k) = Σ D m_a ⊗ m_b.  The dual
algebra uses the dual basis ψ^k with ψ^a(m_b) = δ_ab and the product

    <ψ^a ψ^b, m> = <ψ^a ⊠ ψ^b, Δ m>,  <f ⊠ g, x ⊗ y> = (-1)^{|g||x|} f(x) g(y).

The dual of an algebra is made a coalgebra by transposing its structure
constants: Δ(f^k) = Σ c_ij^k f^i ⊗ f^j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebras import (
    AlgebraError,
    AlgebraMap,
    SuperAlgebra,
    build_algebra,
    minus_algebra,
    tensor_power_algebra,
    tensor_power_product,
)
from .linalg import SparseVec
from .modules import ModuleAction, RIGHT
from .centralizer import commutant
from .scalars import Field
from .superlinear import SuperSpace, dual_map, dual_space, minus_twist, space_from_parities
from .symaction import (
    VerificationError,
    act_on_multi,
    gamma_invariants,
    sort_with_sign,
    symmetric_power,
    transposition,
)


def tensor_pairing_sign(parities) -> int:
    """Sign of <f_1⊗...⊗f_d, v_1⊗...⊗v_d> for dual basis vectors of the given parities."""
    odd = sum(p % 2 for p in parities)
    return -1 if (odd * (odd - 1) // 2) % 2 else 1


# divided versus symmetric powers


@dataclass
class Pairing:
    left: SuperSpace
    right: SuperSpace
    gram: np.ndarray  # gram[a, b] = <right_b, left_a>
    rank: int

    @property
    def nondegenerate(self) -> bool:
        return self.left.dim == self.right.dim == self.rank


def _pair_tensor_with(T, vec: SparseVec, fmulti, parities) -> object:
    """<f^{i_1}⊗...⊗f^{i_d}, vec> for a sparse vector in M^{⊗d}."""
    x = vec.get(T.index[tuple(fmulti)], 0)
    if not x:
        return 0
    return x * tensor_pairing_sign([parities[i] for i in fmulti])


def gamma_sym_pairing(M: SuperSpace, d: int) -> Pairing:
    """Evaluate monomial representatives of S^d(M^∨) on the orbit-sum basis of Γ^d M.

    Independence of the representative is certified by checking that every
    relation x - x.s_i of (M^∨)^{⊗d} pairs to zero with Γ^d M.
    """
    f = M.field
    G = gamma_invariants(M, d)
    S = symmetric_power(dual_space(M), d)
    T = G.tensor
    pars = M.parities
    gram = f.zeros((G.dim, S.dim))
    for a, vec in enumerate(G.vectors):
        for b, mon in enumerate(S.monomials):
            gram[a, b] = f.norm(_pair_tensor_with(T, vec, mon, pars))
    for multi in T.multis:
        for i in range(1, d):
            sign, moved = act_on_multi(multi, pars, transposition(d, i))
            for vec in G.vectors:
                lhs = _pair_tensor_with(T, vec, multi, pars)
                rhs = sign * _pair_tensor_with(T, vec, moved, pars)
                if f.norm(lhs - rhs):
                    raise VerificationError("pairing does not factor through the coinvariants")
    lspace, _ = space_from_parities(f, G.parities)
    rank = linalg.matrix_rank(f, gram) if gram.size else 0
    return Pairing(lspace, S.space, gram, rank)


# twisted duals


def twisted_dual_module(action: ModuleAction, tau: AlgebraMap) -> ModuleAction:
    """Right action on V^∨ with <f.a, v> = <f, v.τ(a)>, i.e. D_a = R_{τ(a)}^T."""
    if action.side != RIGHT:
        raise ValueError("right modules expected")
    A = action.algebra
    if not tau.anti or tau.source is not tau.target or not tau.source.same_table(A):
        raise AlgebraError("τ must be an antiautomorphism of the acting algebra")
    tau.check()
    f = action.field
    n = action.dim
    cols = []
    for i in range(A.dim):
        R = action.element_cols(tau.images[i])
        Dt: list[dict] = [dict() for _ in range(n)]
        for s, col in enumerate(R):
            for t, x in col.items():
                Dt[t][s] = x  # transpose: column t of D holds row t of R
        cols.append(Dt)
    dual = ModuleAction(A, dual_space(action.space), RIGHT, cols, list(action.generators), name=f"{action.name}^τ∨")
    dual.audit()
    return dual


@dataclass
class HomDualReport:
    hom_dim: int
    dual_hom_dim: int
    even_literal: bool  # φ^∨ ∈ Hom for even φ
    odd_literal: bool  # φ^∨ ∈ Hom for odd φ, as written
    odd_after_twist: bool  # (φ^∨)^- ∈ Hom for odd φ

    @property
    def passed(self) -> bool:
        return self.hom_dim == self.dual_hom_dim and self.even_literal and self.odd_after_twist


def hom_dual_report(V: ModuleAction, W: ModuleAction, tau: AlgebraMap) -> HomDualReport:
    Vd, Wd = twisted_dual_module(V, tau), twisted_dual_module(W, tau)
    hom = commutant(V, W)
    dual_hom = commutant(Wd, Vd)
    even_ok, odd_lit, odd_tw = True, True, True
    for phi in hom.maps():
        pd = dual_map(phi)
        vec = _map_vec(pd)
        if phi.parity == 0:
            even_ok &= dual_hom.contains(vec)
        else:
            odd_lit &= dual_hom.contains(vec)
            odd_tw &= dual_hom.contains(_map_vec(minus_twist(pd)))
    return HomDualReport(hom.dim, dual_hom.dim, even_ok, odd_lit, odd_tw)


def _map_vec(phi) -> SparseVec:
    n = phi.source.dim
    return {t * n + s: phi.matrix[t, s] for t in range(phi.target.dim) for s in range(n) if phi.matrix[t, s]}


# coalgebras


@dataclass
class Coalgebra:
    field: Field
    parities: list[int]
    comult: list[dict]  # k -> {(a, b): coefficient}
    counit: list  # k -> ε(m_k)
    name: str = "C"

    @property
    def dim(self) -> int:
        return len(self.parities)

    def audit(self) -> None:
        """Coassociativity and counit laws on every basis element."""
        f = self.field
        for k in range(self.dim):
            left: dict = {}
            right: dict = {}
            for (a, b), x in self.comult[k].items():
                for (p, q), y in self.comult[a].items():
                    key = (p, q, b)
                    left[key] = f.norm(left.get(key, 0) + x * y)
                for (p, q), y in self.comult[b].items():
                    key = (a, p, q)
                    right[key] = f.norm(right.get(key, 0) + x * y)
            if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                raise VerificationError(f"{self.name}: coassociativity fails on {k}")
            l1: dict = {}
            r1: dict = {}
            for (a, b), x in self.comult[k].items():
                l1[b] = f.norm(l1.get(b, 0) + self.counit[a] * x)
                r1[a] = f.norm(r1.get(a, 0) + self.counit[b] * x)
            if {i: v for i, v in l1.items() if v} != {k: 1} or {i: v for i, v in r1.items() if v} != {k: 1}:
                raise VerificationError(f"{self.name}: counit law fails on {k}")


def dual_coalgebra(B: SuperAlgebra) -> Coalgebra:
    comult: list[dict] = [dict() for _ in range(B.dim)]
    for (i, j), vec in B.constants.items():
        for k, c in vec.items():
            comult[k][(i, j)] = c
    counit = [B.unit.get(k, 0) for k in range(B.dim)]
    C = Coalgebra(B.field, list(B.parities), comult, counit, f"{B.name}^∨")
    C.audit()
    return C


def dual_algebra(C: Coalgebra, name: str | None = None) -> SuperAlgebra:
    """C^∨ with the signed ⊠ product."""
    f = C.field
    table: dict[tuple[int, int], dict] = {}
    for k in range(C.dim):
        for (a, b), x in C.comult[k].items():
            s = -1 if C.parities[a] and C.parities[b] else 1
            table.setdefault((a, b), {})
            table[(a, b)][k] = f.norm(table[(a, b)].get(k, 0) + s * x)
    unit = {k: e for k, e in enumerate(C.counit) if e}
    return build_algebra(
        f,
        C.parities,
        [f"ψ{k}" for k in range(C.dim)],
        lambda a, b: table.get((a, b), {}),
        unit,
        name or f"({C.name})^∨",
    )


def tensor_power_coalgebra(C: Coalgebra, d: int) -> tuple[Coalgebra, list[tuple[int, ...]]]:
    """C^{⊗d}: Δ(x_1⊗...⊗x_d) = Σ (-1)^{Σ_{r<s}|x_r''||x_s'|} (⊗x_r') ⊗ (⊗x_r'')."""
    f = C.field
    multis = list(itertools.product(range(C.dim), repeat=d))
    index = {m: i for i, m in enumerate(multis)}
    comult = []
    for m in multis:
        out: dict = {}
        for choice in itertools.product(*(C.comult[k].items() for k in m)):
            sign = 0
            odd_second = 0
            coef = 1
            for (a, b), x in choice:
                sign += odd_second * C.parities[a]
                odd_second += C.parities[b]
                coef = coef * x
            key = (index[tuple(c[0][0] for c in choice)], index[tuple(c[0][1] for c in choice)])
            out[key] = f.norm(out.get(key, 0) + (-coef if sign % 2 else coef))
        comult.append({k: v for k, v in out.items() if v})
    counit = []
    for m in multis:
        e = 1
        for k in m:
            e = e * C.counit[k]
        counit.append(f.norm(e))
    pars = [sum(C.parities[k] for k in m) % 2 for m in multis]
    T = Coalgebra(f, pars, comult, counit, f"{C.name}^⊗{d}")
    T.audit()
    return T, multis


def symmetric_power_coalgebra(C: Coalgebra, d: int) -> tuple[Coalgebra, list[tuple[int, ...]]]:
    """S^d C through the sorted-monomial section; the coproduct is certified
    to be constant on S_d-orbits of representatives."""
    f = C.field
    space, _ = space_from_parities(f, C.parities)
    if list(space.parities) != list(C.parities):
        raise ValueError("coalgebra basis must list even elements first")
    S = symmetric_power(space, d)
    T, multis = tensor_power_coalgebra(C, d)
    mon_index = {m: i for i, m in enumerate(S.monomials)}
    tindex = {m: i for i, m in enumerate(multis)}

    def q(multi):
        sign, mon = sort_with_sign(multi, C.parities)
        return (sign, mon_index[mon]) if sign else (0, None)

    def pushed(t: int) -> dict:
        out: dict = {}
        for (a, b), x in T.comult[t].items():
            sa, ia = q(multis[a])
            sb, ib = q(multis[b])
            if sa and sb:
                out[(ia, ib)] = f.norm(out.get((ia, ib), 0) + sa * sb * x)
        return {k: v for k, v in out.items() if v}

    for t, m in enumerate(multis):
        base = pushed(t)
        for i in range(1, d):
            sign, moved = act_on_multi(m, C.parities, transposition(d, i))
            other = {k: f.norm(sign * v) for k, v in pushed(tindex[moved]).items()}
            if base != other:
                raise VerificationError("coproduct on S^d depends on the representative")
    comult = [pushed(tindex[mon]) for mon in S.monomials]
    counit = [T.counit[tindex[mon]] for mon in S.monomials]
    pars = [sum(C.parities[k] for k in mon) % 2 for mon in S.monomials]
    out = Coalgebra(f, pars, comult, counit, f"S^{d}({C.name})")
    out.audit()
    return out, S.monomials


def reorder_even_first(B: SuperAlgebra) -> tuple[SuperAlgebra, list[int]]:
    """Isomorphic copy of B whose basis lists even elements first; returns (copy, new position of each old index)."""
    _, pos = space_from_parities(B.field, B.parities)
    inv = [0] * B.dim
    for old, new in enumerate(pos):
        inv[new] = old
    constants = {}
    for (i, j), vec in B.constants.items():
        constants[(pos[i], pos[j])] = {pos[k]: c for k, c in vec.items()}
    out = SuperAlgebra(
        B.field,
        [B.parities[inv[n]] for n in range(B.dim)],
        [B.labels[inv[n]] for n in range(B.dim)],
        constants,
        {pos[k]: c for k, c in B.unit.items()},
        B.name,
    )
    return out, list(pos)


def gamma_subalgebra(B: SuperAlgebra, d: int) -> tuple[SuperAlgebra, list[SparseVec], object]:
    """Γ^d B as the S_d-invariant subalgebra of B^{⊗d}, on the orbit-sum basis."""
    f = B.field
    space, _ = space_from_parities(f, B.parities)
    if list(space.parities) != list(B.parities):
        raise ValueError("algebra basis must list even elements first")
    G = gamma_invariants(space, d)
    multis = G.tensor.multis
    ech = linalg.Echelon(f, track=True).extend(G.vectors)

    def prod(x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            for j, b in y.items():
                for m, c in tensor_power_product(B, multis[i], multis[j]).items():
                    k = G.tensor.index[m]
                    out[k] = f.norm(out.get(k, 0) + a * b * c)
        return {k: v for k, v in out.items() if v}

    def rule(a, b):
        try:
            return ech.coordinates(prod(G.vectors[a], G.vectors[b]))
        except ValueError as exc:
            raise VerificationError("Γ^d is not closed under multiplication") from exc

    # (Σ u_k b_k)^{⊗d}
    unit_tensor: SparseVec = {}
    for combo in itertools.product(B.unit.items(), repeat=d):
        key = G.tensor.index[tuple(k for k, _ in combo)]
        c = 1
        for _, u in combo:
            c = c * u
        unit_tensor[key] = f.norm(unit_tensor.get(key, 0) + c)
    unit = ech.coordinates(unit_tensor)
    alg = build_algebra(f, G.parities, [str(l) for l in G.labels], rule, unit, f"Γ^{d}({B.name})")
    return alg, G.vectors, G


@dataclass
class CosalgReport:
    d: int
    dim_sym_dual: int
    dim_gamma: int
    bijective: bool
    unital: bool
    multiplicative: bool

    @property
    def passed(self) -> bool:
        return self.dim_sym_dual == self.dim_gamma and self.bijective and self.unital and self.multiplicative

    def to_json(self) -> dict:
        return dict(self.__dict__, passed=self.passed)


def cosalg_duality_check(B: SuperAlgebra, d: int, minus: bool = True) -> CosalgReport:
    """Compare S^d(B^∨)^∨ with Γ^d(B^-) through the tensor-power pairing.

    ``minus=False`` compares with Γ^d(B) instead (a negative control).
    """
    f = B.field
    B, _ = reorder_even_first(B)
    C = dual_coalgebra(B)
    SC, monomials = symmetric_power_coalgebra(C, d)
    left = dual_algebra(SC, f"S^{d}({B.name}^∨)^∨")
    gam, vectors, G = gamma_subalgebra(minus_algebra(B) if minus else B, d)
    T = G.tensor
    images = []
    for a, vec in enumerate(vectors):
        par = gam.parities[a]
        img = {}
        for k, mon in enumerate(monomials):
            # <γ, m> = (-1)^{|γ||m|} <m, γ>
            x = _pair_tensor_with(T, vec, mon, B.parities)
            if x:
                img[k] = f.norm(x * (-1 if par and SC.parities[k] else 1))
        images.append(img)
    phi = AlgebraMap(gam, left, images)
    bij = phi.is_bijective()
    unital = phi(gam.unit) == left.unit
    try:
        phi.check()
        mult = True
    except AlgebraError:
        mult = False
    return CosalgReport(d, left.dim, gam.dim, bij, unital, mult)


@dataclass
class DoubleDualReport:
    dim: int
    pairs_checked: int
    isomorphism: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def double_dual_algebra_check(B: SuperAlgebra) -> DoubleDualReport:
    """ι(b)(f) = (-1)^{|b||f|} f(b) as a map B^- -> (B^∨)^∨."""
    if B.dim > 16:
        raise ValueError("double dual check limited to dim <= 16")
    f = B.field
    dd = dual_algebra(dual_coalgebra(B), f"({B.name}^∨)^∨")
    Bm = minus_algebra(B)
    iota = AlgebraMap(Bm, dd, [{i: f.sign(B.parities[i])} for i in range(B.dim)])
    try:
        iota.check()
        ok = iota.is_bijective()
    except AlgebraError:
        ok = False
    return DoubleDualReport(B.dim, B.dim * B.dim, ok)


@dataclass
class TensorDualReport:
    d: int
    dim: int
    isomorphism: bool


def tensor_dual_check(C: Coalgebra, d: int) -> TensorDualReport:
    """(C^∨)^{⊗d} -> (C^{⊗d})^∨ through the tensor-power pairing."""
    f = C.field
    left = tensor_power_algebra(dual_algebra(C), d)
    T, multis = tensor_power_coalgebra(C, d)
    right = dual_algebra(T)
    images = []
    for i, m in enumerate(multis):
        images.append({i: f.norm(tensor_pairing_sign([C.parities[k] for k in m]))})
    phi = AlgebraMap(left, right, images)
    try:
        phi.check()
        ok = phi.is_bijective()
    except AlgebraError:
        ok = False
    return TensorDualReport(d, len(multis), ok)
