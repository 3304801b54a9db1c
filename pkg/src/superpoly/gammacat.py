"""Divided powers of hom-spaces, their composition, and the surjectivity criterion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebras import clifford
from .centralizer import Commutant, commutant
from .linalg import SparseVec
from .modules import RIGHT, ModuleAction, restrict_to_ground, u1_module, wreath_action
from .algebras import wreath
from .scalars import Field
from .superlinear import SuperMap, SuperSpace, boxtimes_many, parity_change, space_from_parities
from .symaction import GammaBasis, VerificationError, gamma_dim, gamma_invariants, tensor_power


def map_to_vec(f: SuperMap) -> SparseVec:
    n = f.source.dim
    m = f.matrix
    return {t * n + s: m[t, s] for t in range(f.target.dim) for s in range(n) if m[t, s]}


def vec_to_map(vec: SparseVec, source: SuperSpace, target: SuperSpace) -> SuperMap:
    m = source.field.zeros((target.dim, source.dim))
    for key, x in vec.items():
        t, s = divmod(key, source.dim)
        m[t, s] = x
    return SuperMap(source, target, m)


def compose_vecs(field: Field, g: SparseVec, f: SparseVec, n_mid: int, n_src: int) -> SparseVec:
    """g ∘ f for maps stored as sparse matrix units."""
    g_by_mid: dict[int, list] = {}
    for key, x in g.items():
        t, u = divmod(key, n_mid)
        g_by_mid.setdefault(u, []).append((t, x))
    out: SparseVec = {}
    for key, y in f.items():
        u, s = divmod(key, n_src)
        for t, x in g_by_mid.get(u, ()):
            k = t * n_src + s
            v = field.norm(out.get(k, 0) + x * y)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _supported(V: ModuleAction) -> str:
    A = V.algebra
    if A.dim == 1:
        return "k"
    if A.same_table(clifford(1, A.field)):
        return "C(1)"
    raise ValueError(f"unsupported algebra {A.name}: expected k or C(1)")


def c1_matrix_unit_basis(V: ModuleAction, W: ModuleAction) -> list[SuperMap]:
    """z0(k,i) = [[E,0],[0,E]] and z1(k,i) = [[0,E],[E,0]] for U(1)-sums."""
    (m, m2), (n, n2) = V.space.sdim, W.space.sdim
    if m != m2 or n != n2:
        raise ValueError("modules of sdim (n, n) expected")
    f = V.field
    out = []
    for par in (0, 1):
        for k in range(n):
            for i in range(m):
                mat = f.zeros((2 * n, 2 * m))
                if par == 0:
                    mat[k, i] = mat[n + k, m + i] = 1
                else:
                    mat[k, m + i] = mat[n + k, i] = 1
                out.append(SuperMap(V.space, W.space, mat))
    return out


@dataclass(eq=False)
class GammaHom:
    source: ModuleAction
    target: ModuleAction
    d: int
    hom: Commutant
    hom_space: SuperSpace
    hom_maps: list[SuperMap]  # aligned with hom_space's basis
    gamma: GammaBasis
    basis: list[SparseVec]  # realised maps V^{⊗d} -> W^{⊗d}
    ambient_source: SuperSpace
    ambient_target: SuperSpace
    _ech: linalg.Echelon | None = dc_field(default=None, repr=False)

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def parities(self) -> list[int]:
        return self.gamma.parities

    @property
    def sdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return self.dim - odd, odd

    def maps(self) -> list[SuperMap]:
        return [vec_to_map(v, self.ambient_source, self.ambient_target) for v in self.basis]

    def coordinates(self, vec: SparseVec) -> SparseVec:
        if self._ech is None:
            self._ech = linalg.Echelon(self.field, track=True).extend(self.basis)
        return self._ech.coordinates(vec)

    def contains(self, vec: SparseVec) -> bool:
        try:
            self.coordinates(vec)
        except ValueError:
            return False
        return True

    def identity(self) -> SparseVec:
        if self.ambient_source != self.ambient_target:
            raise ValueError("identity only exists for endomorphisms")
        return {t * self.ambient_source.dim + t: 1 for t in range(self.ambient_source.dim)}


def gamma_hom(
    V: ModuleAction,
    W: ModuleAction,
    d: int,
    hom_basis: str = "commutant",
    check: bool = True,
) -> GammaHom:
    """Γ^d Hom_B(V, W) realised inside Hom(V^{⊗d}, W^{⊗d}).

    The S_d-invariants of Hom_B(V, W)^{⊗d} are pushed through ⊠; with
    ``check`` the result must coincide with the commutant of B≀S_d.
    """
    kind = _supported(V)
    if _supported(W) != kind:
        raise ValueError("source and target are modules over different algebras")
    if V.side != RIGHT or W.side != RIGHT:
        raise ValueError("right modules expected")
    f = V.field
    hom = commutant(V, W)
    maps = hom.maps()
    if hom_basis == "matrix_units":
        if kind != "C(1)":
            raise ValueError("matrix-unit basis is only defined over C(1)")
        units = c1_matrix_unit_basis(V, W)
        if not linalg.same_span(f, [map_to_vec(x) for x in units], hom.basis):
            raise VerificationError("matrix-unit basis does not span Hom over C(1)")
        maps = units
    elif hom_basis != "commutant":
        raise ValueError(f"unknown hom basis {hom_basis!r}")
    pars = [m.parity for m in maps]
    H, pos = space_from_parities(f, pars, [f"h{i}" for i in range(len(maps))])
    ordered = [None] * len(maps)
    for i, p in enumerate(pos):
        ordered[p] = maps[i]
    gb = gamma_invariants(H, d, check=check)
    src = tensor_power(V.space, d).space
    tgt = tensor_power(W.space, d).space
    cache: dict[tuple, SparseVec] = {}
    basis = []
    for vec in gb.vectors:
        out: SparseVec = {}
        for key, c in vec.items():
            multi = gb.tensor.multis[key]
            if multi not in cache:
                cache[multi] = map_to_vec(boxtimes_many([ordered[i] for i in multi], f))
            linalg.axpy(f, out, c, cache[multi])
        basis.append(out)
    G = GammaHom(V, W, d, hom, H, ordered, gb, basis, src, tgt)
    if check:
        if linalg.rank(f, basis) != gamma_dim(*H.sdim, d):
            raise VerificationError("realised divided powers are not independent")
        Wd = wreath(V.algebra, d)
        direct = commutant(wreath_action(V, d, Wd, check=False), wreath_action(W, d, Wd, check=False))
        if direct.dim != len(basis) or not linalg.span_contains(f, direct.basis, basis):
            raise VerificationError("invariants of the tensor power differ from the wreath commutant")
    return G


def gamma_compose(g: SuperMap, f: SuperMap, target: GammaHom | None = None) -> SuperMap:
    """Composite of realised maps, certified to lie in ``target`` when given."""
    if g.source != f.target:
        raise ValueError("middle objects do not match")
    h = g @ f
    if target is not None and not target.contains(map_to_vec(h)):
        raise VerificationError("composite left the divided-power hom space")
    return h


def composition_algebra(G: GammaHom, name: str = "Γ End"):
    """Γ^d End_B(V) as a superalgebra under composition."""
    com = Commutant(G.ambient_source, G.ambient_target, G.basis, "gamma")
    return com.as_algebra(name)


@dataclass
class SurjectivityReport:
    d: int
    pairs_tried: int
    pairs_total: int
    rank: int
    target_dim: int
    surjective: bool
    all_in_target: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def surjectivity_report(V: ModuleAction, P: ModuleAction, W: ModuleAction, d: int, early_stop: bool = True) -> SurjectivityReport:
    """Rank of composition Γ^d Hom(P, W) ⊗ Γ^d Hom(V, P) -> Γ^d Hom(V, W)."""
    f = V.field
    G_pw = gamma_hom(P, W, d)
    G_vp = gamma_hom(V, P, d)
    G_vw = gamma_hom(V, W, d)
    n_mid = G_vp.ambient_target.dim
    n_src = G_vp.ambient_source.dim
    ech = linalg.Echelon(f)
    inside = True
    tried = 0
    total = G_pw.dim * G_vp.dim
    for g, h in itertools.product(G_pw.basis, G_vp.basis):
        if early_stop and ech.rank == G_vw.dim:
            break
        comp = compose_vecs(f, g, h, n_mid, n_src)
        tried += 1
        if comp and not G_vw.contains(comp):
            inside = False
        ech.add(comp)
    return SurjectivityReport(d, tried, total, ech.rank, G_vw.dim, ech.rank == G_vw.dim, inside)


@dataclass
class RestrictionReport:
    n: int
    d: int
    sdim_clifford: tuple[int, int]
    sdim_ground: tuple[int, int]
    contained: bool
    composition_agrees: bool
    identity_preserved: bool
    parity_shift_shadow: bool  # sdim ΠV = sdim V

    @property
    def passed(self) -> bool:
        return self.contained and self.composition_agrees and self.identity_preserved and self.parity_shift_shadow

    def to_json(self) -> dict:
        return dict(self.__dict__, passed=self.passed)


def restriction_functor_check(n: int, d: int, field: Field) -> RestrictionReport:
    """Γ^d End_{C(1)}(V) inside Γ^d End_k(V) for V = U(1)^{⊕n}."""
    V = u1_module(n, RIGHT, field)
    Gc = gamma_hom(V, V, d)
    Vk = restrict_to_ground(V)
    Gk = gamma_hom(Vk, Vk, d)
    contained = linalg.span_contains(field, Gk.basis, Gc.basis)
    N = Gc.ambient_source.dim
    incl = [Gk.coordinates(v) for v in Gc.basis]
    agrees = True
    for x, y in itertools.product(Gc.basis, repeat=2):
        comp = compose_vecs(field, x, y, N, N)
        if not Gc.contains(comp):
            agrees = False
            break
        via_c = linalg.combine(field, ((a, incl[l]) for l, a in Gc.coordinates(comp).items()))
        if via_c != Gk.coordinates(comp):
            agrees = False
            break
    ident = Gc.identity()
    identity_ok = Gc.contains(ident) and Gk.contains(ident)
    shadow = parity_change(V.space).sdim == V.space.sdim
    return RestrictionReport(n, d, Gc.sdim, Gk.sdim, contained, agrees, identity_ok, shadow)
