"""Commutants of module actions, Schur superalgebras and the Sergeev double centralizer."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebras import AlgebraError, AlgebraMap, SuperAlgebra, build_algebra
from .classify import weight_compositions
from .linalg import Columns, SparseVec
from .modules import LEFT, RIGHT, ModuleAction, sergeev_action, sym_group_action_module, u1_module
from .scalars import Field
from .superlinear import SuperMap, SuperSpace, make_space, minus_twist
from .symaction import gamma_dim, tensor_power


class CommutantError(ValueError):
    pass


@dataclass(eq=False)
class Commutant:
    """Hom_A(V, W) with a homogeneous basis.

    Basis vectors are sparse over matrix units, unit (t, s) at t * dim V + s.
    """

    source: SuperSpace
    target: SuperSpace
    basis: list[SparseVec]
    method: str
    _coords: linalg.Echelon | None = dc_field(default=None, repr=False)

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def dim(self) -> int:
        return len(self.basis)

    def unit_parity(self, key: int) -> int:
        t, s = divmod(key, self.source.dim)
        return (self.target.parities[t] + self.source.parities[s]) % 2

    @property
    def parities(self) -> list[int]:
        return [self.unit_parity(next(iter(v))) for v in self.basis]

    @property
    def sdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return self.dim - odd, odd

    def to_map(self, vec: SparseVec) -> SuperMap:
        f = self.field
        m = f.zeros((self.target.dim, self.source.dim))
        for key, x in vec.items():
            t, s = divmod(key, self.source.dim)
            m[t, s] = x
        return SuperMap(self.source, self.target, m)

    def maps(self) -> list[SuperMap]:
        return [self.to_map(v) for v in self.basis]

    def coordinates(self, vec: SparseVec) -> SparseVec:
        """Coordinates of a Hom element in the basis; ValueError if outside."""
        if self._coords is None:
            self._coords = linalg.Echelon(self.field, track=True).extend(self.basis)
        return self._coords.coordinates(vec)

    def contains(self, vec: SparseVec) -> bool:
        try:
            self.coordinates(vec)
        except ValueError:
            return False
        return True

    def as_algebra(self, name: str = "End", audit: bool = True) -> SuperAlgebra:
        """Endomorphism superalgebra under composition, basis ordered as ``basis``."""
        if self.source != self.target:
            raise CommutantError("only endomorphism spaces form an algebra")
        f = self.field
        n = self.source.dim
        constants = {}
        for i, x in enumerate(self.basis):
            xrows: dict[int, dict] = {}
            for key, a in x.items():
                t, u = divmod(key, n)
                xrows.setdefault(u, {})[t] = a
            for j, y in enumerate(self.basis):
                prod: SparseVec = {}
                for key, b in y.items():
                    u, s = divmod(key, n)
                    for t, a in xrows.get(u, {}).items():
                        k = t * n + s
                        v = f.norm(prod.get(k, 0) + a * b)
                        if v:
                            prod[k] = v
                        else:
                            prod.pop(k, None)
                c = self.coordinates(prod)
                if c:
                    constants[(i, j)] = c
        unit = self.coordinates({t * n + t: 1 for t in range(n)})
        labels = [f"x{i}" for i in range(self.dim)]
        alg = SuperAlgebra(f, self.parities, labels, constants, unit, name)
        if audit:
            alg.audit()
        return alg


def _equations(V: ModuleAction, W: ModuleAction, g: SparseVec, super_sign: bool) -> list[SparseVec]:
    """Rows of X ρ_V(g) - ε ρ_W(g) X = 0 with ε = (-1)^{|X||g|} when super_sign."""
    f = V.field
    nv, nw = V.dim, W.dim
    rv = V.element_cols(g)
    rw = W.element_cols(g)
    gpar = V.algebra.element_parity(g)
    if gpar is None:
        raise CommutantError("generators must be homogeneous")
    # rows of ρ_V(g): rv_rows[s] = {u: value} meaning ρ_V[s, u]
    rv_rows: dict[int, dict] = {}
    for u, col in enumerate(rv):
        for s, x in col.items():
            rv_rows.setdefault(s, {})[u] = x
    eqs: dict[int, SparseVec] = {}
    # (X ρ_V)[t, u] = sum_s X[t, s] ρ_V[s, u]
    for t in range(nw):
        for s, row in rv_rows.items():
            for u, x in row.items():
                eq = eqs.setdefault(t * nv + u, {})
                k = t * nv + s
                eq[k] = f.norm(eq.get(k, 0) + x)
    # (ρ_W X)[t, u] = sum_r ρ_W[t, r] X[r, u]
    for r, col in enumerate(rw):
        for t, x in col.items():
            for u in range(nv):
                q = (W.space.parities[r] + V.space.parities[u]) % 2
                eps = -1 if super_sign and q and gpar else 1
                eq = eqs.setdefault(t * nv + u, {})
                k = r * nv + u
                eq[k] = f.norm(eq.get(k, 0) - eps * x)
    return [{k: v for k, v in e.items() if v} for e in eqs.values()]


def _split_homogeneous(V: ModuleAction, W: ModuleAction, vecs: list[SparseVec]) -> list[SparseVec]:
    nv = V.dim
    out = []
    for v in vecs:
        parts: dict[int, SparseVec] = {0: {}, 1: {}}
        for k, x in v.items():
            t, s = divmod(k, nv)
            parts[(W.space.parities[t] + V.space.parities[s]) % 2][k] = x
        out.extend(p for p in (parts[0], parts[1]) if p)
    # splitting never enlarges the span here, but keep only an independent subset
    ech = linalg.Echelon(V.field)
    return [v for v in out if ech.add(v)]


def _kernel_basis(V, W, gens, super_sign):
    eqs = []
    for g in gens:
        eqs.extend(_equations(V, W, g, super_sign))
    return linalg.kernel(V.field, eqs, V.dim * W.dim)


def _monomial_data(act: ModuleAction, g: SparseVec):
    cols = act.element_cols(g)
    if not linalg.is_monomial(cols):
        return None
    perm, scal = [], []
    for col in cols:
        ((r, x),) = col.items()
        perm.append(r)
        scal.append(x)
    return perm, scal


def _orbit_basis(V, W, gens, super_sign):
    """Invariants of X -> ρ_W(g) X ρ_V(g)^{-1} for signed monomial generators.

    The group generated permutes matrix units up to scalars, so the fixed
    space has one basis vector per orbit without a scalar conflict.
    Returns None if some generator is not monomial.
    """
    f = V.field
    nv, nw = V.dim, W.dim
    moves = []
    for g in gens:
        dv, dw = _monomial_data(V, g), _monomial_data(W, g)
        if dv is None or dw is None:
            return None
        gpar = V.algebra.element_parity(g)
        if gpar is None:
            return None
        moves.append((dv, dw, gpar))
    seen: dict[int, object] = {}
    basis = []
    for start in range(nv * nw):
        if start in seen:
            continue
        orbit = {start: 1}
        seen[start] = 1
        queue = deque([start])
        consistent = True
        while queue:
            key = queue.popleft()
            t, s = divmod(key, nv)
            val = orbit[key]
            q = (W.space.parities[t] + V.space.parities[s]) % 2
            for (pv, sv), (pw, sw), gpar in moves:
                # E[t, s] -> (sw[t] / sv[s]) E[pw[t], pv[s]], times ε for the super sign
                eps = -1 if super_sign and q and gpar else 1
                new = pw[t] * nv + pv[s]
                x = f.norm(eps * val * sw[t] * f.inv(sv[s]))
                if new in orbit:
                    if orbit[new] != x:
                        consistent = False
                else:
                    orbit[new] = x
                    seen[new] = 1
                    queue.append(new)
        if consistent:
            basis.append(orbit)
    return basis


def commutant(
    action: ModuleAction,
    target_action: ModuleAction | None = None,
    method: str = "auto",
    audit: bool = True,
) -> Commutant:
    """Hom_A(V, W) for two actions of the same algebra on the same side.

    Right-module maps commute plainly with the action matrices; for left
    modules a map of parity q satisfies X ρ(g) = (-1)^{q|g|} ρ(g) X.
    ``method`` is "kernel" (elimination), "orbit" (signed monomial
    generators only) or "auto".
    """
    V = action
    W = target_action if target_action is not None else action
    if V.algebra is not W.algebra and not V.algebra.same_table(W.algebra):
        raise CommutantError("actions of different algebras")
    if V.side != W.side:
        raise CommutantError("actions on different sides")
    if V.field != W.field:
        raise CommutantError("actions over different fields")
    super_sign = V.side == LEFT
    gens = V.generators
    basis = None
    used = method
    if method in ("auto", "orbit"):
        basis = _orbit_basis(V, W, gens, super_sign)
        used = "orbit"
        if basis is None and method == "orbit":
            raise CommutantError("orbit method needs monomial generator matrices")
    if basis is None:
        basis = _split_homogeneous(V, W, _kernel_basis(V, W, gens, super_sign))
        used = "kernel"
    com = Commutant(V.space, W.space, basis, used)
    if audit:
        audit_commutant(com, V, W)
    return com


def audit_commutant(com: Commutant, V: ModuleAction, W: ModuleAction) -> None:
    """Every basis map intertwines the action of every algebra basis element."""
    f = V.field
    nv = V.dim
    super_sign = V.side == LEFT
    for vec in com.basis:
        q = com.unit_parity(next(iter(vec)))
        X: Columns = [dict() for _ in range(nv)]
        for key, x in vec.items():
            t, s = divmod(key, nv)
            X[s][t] = x
        for i in range(V.algebra.dim):
            eps = -1 if super_sign and q and V.algebra.parities[i] else 1
            lhs = linalg.compose_columns(f, X, V.cols[i])
            rhs = linalg.compose_columns(f, W.cols[i], X)
            rhs = [linalg.scale(f, eps, c) for c in rhs]
            if lhs != rhs:
                raise CommutantError(f"basis map fails to intertwine algebra basis element {i}")


# Schur superalgebras


def schur_I_dim(m: int, n: int, d: int) -> int:
    """dim S(m|n, d) = sum_l C(m²+n²+d-l-1, d-l) C(2mn, l)."""
    return gamma_dim(m * m + n * n, 2 * m * n, d)


def schur_II_dim(n: int, d: int) -> int:
    """dim Q(n, d) = sum_l C(n²+d-l-1, d-l) C(n², l)."""
    return gamma_dim(n * n, n * n, d)


def schur_I_commutant(m: int, n: int, d: int, field: Field, method: str = "auto") -> Commutant:
    return commutant(sym_group_action_module(m, n, d, field), method=method)


def schur_I(m: int, n: int, d: int, field: Field, method: str = "auto") -> SuperAlgebra:
    """S(m|n, d) = End_{kS_d}((k^{m|n})^{⊗d})."""
    com = schur_I_commutant(m, n, d, field, method)
    return com.as_algebra(f"S({m}|{n},{d})")


def schur_II_commutant(n: int, d: int, field: Field, method: str = "auto") -> Commutant:
    return commutant(sergeev_action(n, d, field), method=method)


def schur_II(n: int, d: int, field: Field, method: str = "auto") -> SuperAlgebra:
    """Q(n, d) = End_{W(d)}((U(1)^{⊕n})^{⊗d})."""
    com = schur_II_commutant(n, d, field, method)
    return com.as_algebra(f"Q({n},{d})")


@dataclass
class DoubleCentralizerReport:
    n: int
    d: int
    field: str
    hypothesis: bool  # n >= d
    wreath_dim: int
    image_dim: int
    q_dim: int
    commutant_dim: int
    injective: bool
    equal: bool | None  # None when the hypothesis fails and the assertion is skipped

    @property
    def passed(self) -> bool:
        return bool(self.injective and self.equal) if self.hypothesis else True

    def to_json(self) -> dict:
        return dict(self.__dict__, passed=self.passed)


def double_centralizer(n: int, d: int, field: Field) -> DoubleCentralizerReport:
    """Compare the image of W(d) in End(V^{⊗d}) with the commutant of Q(n, d)."""
    act = sergeev_action(n, d, field)
    Q = schur_II_commutant(n, d, field)
    N = act.dim
    image = []
    for i in range(act.algebra.dim):
        vec = {}
        for s, col in enumerate(act.cols[i]):
            for t, x in col.items():
                vec[t * N + s] = x
        image.append(vec)
    image_rank = linalg.rank(field, image)
    # plain commutant of every basis map of Q(n, d)
    eqs = []
    for qvec in Q.basis:
        Y: dict[int, dict] = {}  # Y[t][s]
        for key, x in qvec.items():
            t, s = divmod(key, N)
            Y.setdefault(t, {})[s] = x
        Ycols: dict[int, dict] = {}
        for t, row in Y.items():
            for s, x in row.items():
                Ycols.setdefault(s, {})[t] = x
        # (X Y - Y X)[t, u] = sum_s X[t,s] Y[s,u] - sum_r Y[t,r] X[r,u]
        rows: dict[int, SparseVec] = {}
        for s, row in Y.items():
            for u, y in row.items():
                for t in range(N):
                    e = rows.setdefault(t * N + u, {})
                    e[t * N + s] = field.norm(e.get(t * N + s, 0) + y)
        for t, row in Y.items():
            for r, y in row.items():
                for u in range(N):
                    e = rows.setdefault(t * N + u, {})
                    e[r * N + u] = field.norm(e.get(r * N + u, 0) - y)
        eqs.extend({k: v for k, v in e.items() if v} for e in rows.values())
    cent = linalg.kernel(field, eqs, N * N)
    hyp = n >= d
    equal = None
    if hyp:
        equal = len(cent) == image_rank and linalg.span_contains(field, cent, image)
    return DoubleCentralizerReport(
        n, d, field.name, hyp, act.algebra.dim, image_rank, Q.dim, len(cent), image_rank == act.algebra.dim, equal
    )


# weights


@dataclass
class WeightDecomposition:
    n: int
    d: int
    blocks: dict[tuple[int, ...], list[int]]  # weight -> tensor basis positions
    stable: bool  # every W(d) basis element preserves every block

    @property
    def dims(self) -> dict[tuple[int, ...], int]:
        return {w: len(b) for w, b in self.blocks.items()}


def weight_of(multi, n: int) -> tuple[int, ...]:
    w = [0] * n
    for i in multi:
        w[i % n] += 1
    return tuple(w)


def weight_decomposition(n: int, d: int, field: Field, check_stable: bool = True) -> WeightDecomposition:
    """Split (U(1)^{⊕n})^{⊗d} by the multiset of copy indices (e_i and e'_i share copy i)."""
    act = sergeev_action(n, d, field, check=False)
    T = tensor_power(make_space(field, n, n), d)
    blocks: dict[tuple[int, ...], list[int]] = {w: [] for w in weight_compositions(n, d)}
    where = {}
    for pos, multi in enumerate(T.multis):
        w = weight_of(multi, n)
        blocks[w].append(pos)
        where[pos] = w
    stable = True
    if check_stable:
        for cols in act.cols:
            for s, col in enumerate(cols):
                if any(where[t] != where[s] for t in col):
                    stable = False
    return WeightDecomposition(n, d, blocks, stable)


# type Q identifications for C(1)


def type_q_matrices(n: int, m: int, field: Field, sign: int) -> list[SparseVec]:
    """Basis of the block matrices [[A, B], [sign*B, A]] (A even, B odd), n x m blocks."""
    N = 2 * m
    out = []
    for k in range(n):
        for i in range(m):
            out.append({k * N + i: 1, (n + k) * N + m + i: 1})
    for k in range(n):
        for i in range(m):
            out.append({k * N + m + i: 1, (n + k) * N + i: field.norm(sign)})
    return out


def sqrt_minus_one(field: Field):
    """A square root of -1 in the field, or None."""
    if field.is_rational:
        return None
    p = field.characteristic
    if p % 4 != 1:
        return None
    return next(x for x in range(2, p) if (x * x + 1) % p == 0)


@dataclass
class QnReport:
    n: int
    field: str
    left_is_type_q: bool  # End over C(1) of a left module is literally Q_n
    right_block_form: bool  # End over C(1) of a right module is [[A, B], [B, A]]
    right_isomorphic: bool | None  # None when the field lacks a square root of -1

    @property
    def passed(self) -> bool:
        return self.left_is_type_q and self.right_block_form and self.right_isomorphic is not False


def qn_identification(n: int, field: Field) -> QnReport:
    left = commutant(u1_module(n, LEFT, field))
    right = commutant(u1_module(n, RIGHT, field))
    qn = type_q_matrices(n, n, field, -1)
    left_ok = left.dim == len(qn) and linalg.span_contains(field, left.basis, qn)
    rblocks = type_q_matrices(n, n, field, 1)
    right_ok = right.dim == len(rblocks) and linalg.span_contains(field, right.basis, rblocks)
    i = sqrt_minus_one(field)
    iso = None
    if i is not None:
        # [[A, B], [B, A]] -> [[A, iB], [-iB, A]]
        N = 2 * n
        src_alg = Commutant(right.source, right.target, rblocks, "blocks").as_algebra("End_C(1)(V')")
        tgt = Commutant(left.source, left.target, qn, "blocks")
        tgt_alg = tgt.as_algebra("Q_n")
        images = []
        for vec in rblocks:
            img = {}
            for key, x in vec.items():
                t, s = divmod(key, N)
                odd = (t < n) != (s < n)
                if odd:
                    x = field.norm(x * i * (1 if t < n else -1))
                img[key] = x
            images.append(tgt.coordinates(img))
        phi = AlgebraMap(src_alg, tgt_alg, images)
        try:
            phi.check()
            iso = phi.is_bijective()
        except AlgebraError:
            iso = False
    return QnReport(n, field.name, left_ok, right_ok, iso)


@dataclass
class MinusTwistReport:
    m: int
    n: int
    left_dim: int
    right_dim: int
    twisted_inside: bool

    @property
    def passed(self) -> bool:
        return self.left_dim == self.right_dim and self.twisted_inside


def minus_twist_equivalence(m: int, n: int, field: Field) -> MinusTwistReport:
    """φ -> φ^- carries Hom over C(1) of left modules onto that of right modules."""
    left = commutant(u1_module(m, LEFT, field), u1_module(n, LEFT, field))
    right = commutant(u1_module(m, RIGHT, field), u1_module(n, RIGHT, field))
    inside = True
    for phi in left.maps():
        tw = minus_twist(phi)
        N = tw.source.dim
        vec = {t * N + s: tw.matrix[t, s] for t in range(tw.target.dim) for s in range(N) if tw.matrix[t, s]}
        inside &= right.contains(vec)
    return MinusTwistReport(m, n, left.dim, right.dim, inside)
