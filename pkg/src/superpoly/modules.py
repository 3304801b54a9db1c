"""Supermodules given by action matrices.

Matrices follow the column convention for both sides: ``matrix(a) @ v`` is
``a.v`` for a left module and ``v.a`` for a right module.  Consequently a
right module satisfies ``matrix(xy) = matrix(y) @ matrix(x)``.  Use
:meth:`ModuleAction.apply` rather than the raw matrices where possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .algebras import (
    SuperAlgebra,
    WreathAlgebra,
    clifford,
    ground_field,
    group_algebra,
    permutations_lex,
    sergeev,
    sergeev_generator,
    tensor_power_algebra,
    wreath,
)
from .linalg import Columns, SparseVec
from .scalars import Field
from .superlinear import SuperMap, SuperSpace, make_space, space_from_parities
from .symaction import act_on_multi, tensor_power, transposition

LEFT, RIGHT = "left", "right"


class ModuleError(ValueError):
    """An action failed its representation audit."""


@dataclass(eq=False)
class ModuleAction:
    algebra: SuperAlgebra
    space: SuperSpace
    side: str
    cols: list[Columns]  # per algebra basis element, sparse columns
    generators: list[SparseVec] = dc_field(default_factory=list)
    name: str = "V"

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        if len(self.cols) != self.algebra.dim:
            raise ValueError("need one matrix per algebra basis element")
        if not self.generators:
            self.generators = [{i: 1} for i in range(self.algebra.dim)]

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def element_cols(self, x: SparseVec) -> Columns:
        f = self.field
        out = [dict() for _ in range(self.dim)]
        for i, a in x.items():
            for j, col in enumerate(self.cols[i]):
                linalg.axpy(f, out[j], a, col)
        return out

    def matrix(self, x: SparseVec | int) -> np.ndarray:
        if isinstance(x, int):
            x = {x: 1}
        return linalg.columns_to_dense(self.field, self.element_cols(x), self.dim)

    def map(self, x: SparseVec | int) -> SuperMap:
        return SuperMap(self.space, self.space, self.matrix(x))

    @property
    def matrices(self) -> list[SuperMap]:
        return [self.map(i) for i in range(self.algebra.dim)]

    def apply(self, v, x: SparseVec | int) -> np.ndarray:
        """v.x (right) or x.v (left) for a dense coordinate vector v."""
        if isinstance(x, int):
            x = {x: 1}
        f = self.field
        cols = self.element_cols(x)
        vec = {i: f.norm(a) for i, a in enumerate(np.asarray(v, dtype=object).reshape(-1)) if a}
        out = linalg.combine(f, ((a, cols[i]) for i, a in vec.items()))
        return linalg.to_dense(f, out, self.dim)

    def audit(self) -> None:
        """Representation property on all basis pairs and parity of each matrix."""
        A, f = self.algebra, self.field
        for i in range(A.dim):
            for j, col in enumerate(self.cols[i]):
                for k in col:
                    if self.space.parities[k] != (self.space.parities[j] + A.parities[i]) % 2:
                        raise ModuleError(f"action of basis element {i} has the wrong parity")
        unit = self.element_cols(A.unit)
        if unit != [{j: 1} for j in range(self.dim)]:
            raise ModuleError("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.element_cols(A.basis_product(i, j))
                if self.side == LEFT:
                    rhs = linalg.compose_columns(f, self.cols[i], self.cols[j])
                else:
                    rhs = linalg.compose_columns(f, self.cols[j], self.cols[i])
                if lhs != rhs:
                    raise ModuleError(f"{self.name}: representation property fails on ({i}, {j})")

    def to_json(self) -> dict:
        f = self.field
        mats = [
            [[int(r), int(c), f.serialize(x)] for c, col in enumerate(cols) for r, x in sorted(col.items())]
            for cols in self.cols
        ]
        return {
            "name": self.name,
            "side": self.side,
            "algebra": self.algebra.name,
            "space": self.space.to_json(),
            "matrices": mats,
        }


def regular_module(A: SuperAlgebra, side: str = LEFT) -> ModuleAction:
    """A acting on itself by left or right multiplication, basis reordered even-first."""
    space, pos = space_from_parities(A.field, A.parities, A.labels)
    cols = []
    for i in range(A.dim):
        c = [dict() for _ in range(A.dim)]
        for j in range(A.dim):
            prod = A.basis_product(i, j) if side == LEFT else A.basis_product(j, i)
            c[pos[j]] = {pos[k]: v for k, v in prod.items()}
        cols.append(c)
    act = ModuleAction(A, space, side, cols, name=f"{A.name}_{side}")
    act.audit()
    return act


def u1_module(n: int, side: str, field: Field) -> ModuleAction:
    """U(1)^{⊕n} (right) or U_l(1)^{⊕n} (left): c acts by [[0, I_n], [I_n, 0]]."""
    if n < 0:
        raise ValueError("n must be non-negative")
    C = clifford(1, field)
    space = make_space(field, n, n)
    ident = [{j: 1} for j in range(2 * n)]
    swap = [{(j + n) % (2 * n): 1} for j in range(2 * n)]
    act = ModuleAction(C, space, side, [ident, swap], generators=[{1: 1}], name=f"U(1)^{n}" if side == RIGHT else f"U_l(1)^{n}")
    act.audit()
    return act


def involution_J(n: int, field: Field) -> np.ndarray:
    """The odd involution J v_i = v_i' on k^{n|n}."""
    J = field.zeros((2 * n, 2 * n))
    for i in range(2 * n):
        J[(i + n) % (2 * n), i] = 1
    return J


def _tensor_cols(V: ModuleAction, d: int, multi_a: Sequence[int]) -> Columns:
    """Columns of v -> v.(a_1⊗...⊗a_d) with sign (-1)^{sum_{i<j}|v_j||a_i|}."""
    f = V.field
    T = tensor_power(V.space, d)
    A = V.algebra
    cols = []
    for vmulti in T.multis:
        sign = 0
        odd_a = 0
        for i in range(d):
            sign += V.space.parities[vmulti[i]] * odd_a
            odd_a += A.parities[multi_a[i]]
        terms = {(): f.sign(sign)}
        for i in range(d):
            col = V.cols[multi_a[i]][vmulti[i]]
            terms = {key + (k,): f.norm(c * x) for key, c in terms.items() for k, x in col.items()}
        cols.append({T.index[k]: c for k, c in terms.items() if c})
    return cols


def tensor_module(V: ModuleAction, d: int, check: bool = True) -> ModuleAction:
    """A^{⊗d} acting on V^{⊗d} on the right."""
    if V.side != RIGHT:
        raise ValueError("tensor_module expects a right module")
    if d < 1:
        raise ValueError("d must be at least 1")
    Ad = tensor_power_algebra(V.algebra, d)
    T = tensor_power(V.space, d)
    multis = list(np.ndindex(*([V.algebra.dim] * d)))
    cols = [_tensor_cols(V, d, m) for m in multis]
    act = ModuleAction(Ad, T.space, RIGHT, cols, name=f"{V.name}^⊗{d}")
    if check:
        act.audit()
        compatibility_check(V, d, act)
    return act


def _perm_cols(M: SuperSpace, d: int, sigma) -> Columns:
    T = tensor_power(M, d)
    cols = []
    for multi in T.multis:
        sign, new = act_on_multi(multi, M.parities, sigma)
        cols.append({T.index[new]: M.field.norm(sign)})
    return cols


def compatibility_check(V: ModuleAction, d: int, tens: ModuleAction) -> None:
    """(v.a).σ = (v.σ).(a.σ) for every σ and basis tensor a."""
    f = V.field
    A = V.algebra
    multis = list(np.ndindex(*([A.dim] * d)))
    index = {m: i for i, m in enumerate(multis)}
    for sigma in permutations_lex(d):
        P = _perm_cols(V.space, d, sigma)
        for k, a in enumerate(multis):
            sign, moved = act_on_multi(a, A.parities, sigma)
            lhs = linalg.compose_columns(f, P, tens.cols[k])
            rhs = linalg.compose_columns(f, [linalg.scale(f, f.norm(sign), c) for c in tens.cols[index[moved]]], P)
            if lhs != rhs:
                raise ModuleError(f"compatibility fails for σ={sigma}, a={a}")


def wreath_action(V: ModuleAction, d: int, W: WreathAlgebra | None = None, check: bool = True) -> ModuleAction:
    """A≀S_d acting on V^{⊗d}: v.(σ⊗a) = (v.σ).a."""
    if V.side != RIGHT:
        raise ValueError("wreath_action expects a right module")
    if W is None:
        W = wreath(V.algebra, d)
    f = V.field
    tens = {m: _tensor_cols(V, d, m) for m in W.multis}
    cols = []
    for sigma in W.perms:
        P = _perm_cols(V.space, d, sigma)
        for m in W.multis:
            cols.append(linalg.compose_columns(f, tens[m], P))
    if V.algebra.unit == {0: 1}:
        # s_i together with A in the first slot generate A≀S_d
        gens = [W.perm_element(transposition(d, i)) for i in range(1, d)]
        gens += [W.tensor_element((i,) + (0,) * (d - 1)) for i in range(1, V.algebra.dim)]
    else:
        gens = [{i: 1} for i in range(W.dim)]
    act = ModuleAction(W, tensor_power(V.space, d).space, RIGHT, cols, generators=gens, name=f"{V.name}^⊗{d}")
    if check:
        act.audit()
    return act


@lru_cache(maxsize=None)
def _sergeev_cached(d: int, field: Field) -> WreathAlgebra:
    return sergeev(d, field)


def sergeev_action(n: int, d: int, field: Field, check: bool = True) -> ModuleAction:
    """W(d) acting on (U(1)^{⊕n})^{⊗d}; generators s_i and c_1."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be at least 1")
    W = _sergeev_cached(d, field)
    act = wreath_action(u1_module(n, RIGHT, field), d, W, check=check and d <= 3)
    act.generators = [W.perm_element(transposition(d, i)) for i in range(1, d)] + [sergeev_generator(W, 1)]
    return act


def sym_group_action_module(m: int, n: int, d: int, field: Field, check: bool = True) -> ModuleAction:
    """k S_d acting on (k^{m|n})^{⊗d} by signed place permutations."""
    if d < 1:
        raise ValueError("d must be at least 1")
    M = make_space(field, m, n)
    kS = group_algebra(d, field)
    cols = [_perm_cols(M, d, sigma) for sigma in permutations_lex(d)]
    perms = permutations_lex(d)
    gens = [{perms.index(transposition(d, i)): 1} for i in range(1, d)] or [{0: 1}]
    act = ModuleAction(kS, tensor_power(M, d).space, RIGHT, cols, generators=gens, name=f"(k^{m}|{n})^⊗{d}")
    if check:
        act.audit()
    return act


def trivial_module(space: SuperSpace, side: str = RIGHT) -> ModuleAction:
    """The ground field acting by scalars on ``space``."""
    k = _ground_cached(space.field)
    return ModuleAction(k, space, side, [[{j: 1} for j in range(space.dim)]], name=f"k^{space.sdim}")


@lru_cache(maxsize=None)
def _ground_cached(field: Field) -> SuperAlgebra:
    return ground_field(field)


def restrict_to_ground(action: ModuleAction) -> ModuleAction:
    """Forget the algebra: the same superspace as a module over k."""
    return trivial_module(action.space, action.side)
