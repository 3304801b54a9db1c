"""Vector superspaces and linear maps between them.

Bases are always stored in canonical order: every even vector precedes every
odd vector, and constructions that naturally produce another order (tensor
products, direct sums, Hom spaces) stably re-sort and expose the position map.
Matrices are numpy object arrays with columns indexed by the source basis.

Signs are read off the parities of basis labels at the moment they are needed;
no matrix ever carries a pre-applied Koszul sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .scalars import Field


def canonical_order(parities: Sequence[int]) -> list[int]:
    """Stable even-first ordering: ``order[k]`` is the old index placed at k."""
    return sorted(range(len(parities)), key=lambda i: parities[i] % 2)


def _positions(order: Sequence[int]) -> list[int]:
    pos = [0] * len(order)
    for k, i in enumerate(order):
        pos[i] = k
    return pos


@dataclass(frozen=True)
class SuperSpace:
    field: Field
    parities: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.parities) != len(self.labels):
            raise ValueError("parities and labels differ in length")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")
        if list(self.parities) != sorted(self.parities):
            raise ValueError("basis must list even vectors before odd ones")

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def sdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return (self.dim - odd, odd)

    def __repr__(self) -> str:
        m, n = self.sdim
        return f"SuperSpace({self.field.name}^{{{m}|{n}}})"

    def to_json(self) -> dict:
        return {
            "field": self.field.characteristic,
            "parities": list(self.parities),
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SuperSpace":
        return cls(Field(data["field"]), tuple(data["parities"]), tuple(data["labels"]))


def make_space(field: Field, m: int, n: int) -> SuperSpace:
    """k^{m|n} with basis e1..em (even) and e'1..e'n (odd)."""
    if m < 0 or n < 0:
        raise ValueError("negative dimension")
    labels = [f"e{i + 1}" for i in range(m)] + [f"e'{i + 1}" for i in range(n)]
    return SuperSpace(field, (0,) * m + (1,) * n, tuple(labels))


def space_from_parities(field: Field, parities: Sequence[int], labels: Sequence[str] | None = None):
    """Build a canonical space from arbitrary-order parities.

    Returns ``(space, pos)`` where ``pos[i]`` is the canonical position of the
    i-th input vector.
    """
    if labels is None:
        labels = [f"b{i}" for i in range(len(parities))]
    order = canonical_order(parities)
    space = SuperSpace(field, tuple(parities[i] % 2 for i in order), tuple(labels[i] for i in order))
    return space, _positions(order)


def _check_same_field(*spaces: SuperSpace) -> Field:
    fields = {s.field for s in spaces}
    if len(fields) > 1:
        raise ValueError(f"field mismatch: {sorted(f.name for f in fields)}")
    return spaces[0].field


@lru_cache(maxsize=None)
def _product_layout(parity_lists: tuple[tuple[int, ...], ...]):
    multis = list(itertools.product(*(range(len(p)) for p in parity_lists)))
    pars = [sum(p[i] for p, i in zip(parity_lists, mi)) % 2 for mi in multis]
    order = canonical_order(pars)
    index = {multis[i]: k for k, i in enumerate(order)}
    return tuple(multis[i] for i in order), tuple(pars[i] for i in order), index


def tensor_many(spaces: Sequence[SuperSpace], field: Field | None = None) -> SuperSpace:
    """d-fold tensor product, basis = multi-indices (lex) re-sorted even-first."""
    if not spaces:
        if field is None:
            raise ValueError("empty tensor product needs a field")
        return SuperSpace(field, (0,), ("1",))
    fld = _check_same_field(*spaces)
    multis, pars, _ = _product_layout(tuple(s.parities for s in spaces))
    labels = tuple("⊗".join(sp.labels[i] for sp, i in zip(spaces, mi)) for mi in multis)
    return SuperSpace(fld, pars, labels)


def tensor_index(spaces: Sequence[SuperSpace]) -> dict[tuple[int, ...], int]:
    """Multi-index -> position in :func:`tensor_many`."""
    return _product_layout(tuple(s.parities for s in spaces))[2]


def tensor_multis(spaces: Sequence[SuperSpace]) -> tuple[tuple[int, ...], ...]:
    """Position -> multi-index in :func:`tensor_many`."""
    return _product_layout(tuple(s.parities for s in spaces))[0]


def tensor(M: SuperSpace, N: SuperSpace) -> SuperSpace:
    return tensor_many([M, N])


def tensor_witness(M: SuperSpace, N: SuperSpace) -> list[int]:
    """``w[lex]`` = canonical position of the lex-ordered pair number ``lex``."""
    index = tensor_index([M, N])
    return [index[(i, j)] for i in range(M.dim) for j in range(N.dim)]


def parity_change(M: SuperSpace) -> SuperSpace:
    flipped = [1 - p for p in M.parities]
    space, _ = space_from_parities(M.field, flipped, M.labels)
    return space


def dual_space(M: SuperSpace) -> SuperSpace:
    return SuperSpace(M.field, M.parities, tuple(f"{lab}∨" for lab in M.labels))


def hom_space(M: SuperSpace, N: SuperSpace) -> SuperSpace:
    """Hom(M, N) with matrix units E[t,s], re-sorted even-first."""
    fld = _check_same_field(M, N)
    units = [(t, s) for t in range(N.dim) for s in range(M.dim)]
    pars = [(N.parities[t] + M.parities[s]) % 2 for t, s in units]
    labels = [f"E[{N.labels[t]},{M.labels[s]}]" for t, s in units]
    space, _ = space_from_parities(fld, pars, labels)
    return space


@lru_cache(maxsize=None)
def _hom_layout(src: tuple[int, ...], tgt: tuple[int, ...]):
    units = [(t, s) for t in range(len(tgt)) for s in range(len(src))]
    pars = [(tgt[t] + src[s]) % 2 for t, s in units]
    order = canonical_order(pars)
    return tuple(units[i] for i in order)


def hom_units(M: SuperSpace, N: SuperSpace) -> tuple[tuple[int, int], ...]:
    """Position in :func:`hom_space` -> matrix unit (t, s)."""
    return _hom_layout(M.parities, N.parities)


def direct_sum(M: SuperSpace, N: SuperSpace):
    """Return ``(M ⊕ N, inclusion of M, inclusion of N)``."""
    fld = _check_same_field(M, N)
    labels = list(M.labels) + list(N.labels)
    if len(set(labels)) < len(labels):
        labels = [f"{lab}(1)" for lab in M.labels] + [f"{lab}(2)" for lab in N.labels]
    space, pos = space_from_parities(fld, list(M.parities) + list(N.parities), labels)
    inc_m = fld.zeros((space.dim, M.dim))
    inc_n = fld.zeros((space.dim, N.dim))
    for i in range(M.dim):
        inc_m[pos[i], i] = 1
    for j in range(N.dim):
        inc_n[pos[M.dim + j], j] = 1
    return space, SuperMap(M, space, inc_m), SuperMap(N, space, inc_n)


def _parity_mask(M: SuperSpace, N: SuperSpace) -> np.ndarray:
    """mask[t, s] = parity of the matrix unit E[t, s] in Hom(M, N)."""
    return (np.add.outer(np.array(N.parities, dtype=int), np.array(M.parities, dtype=int)) % 2).reshape(
        N.dim, M.dim
    )


@dataclass(frozen=True, eq=False)
class SuperMap:
    source: SuperSpace
    target: SuperSpace
    matrix: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match {self.target.dim}x{self.source.dim}"
            )

    @property
    def field(self) -> Field:
        return self.source.field

    def part(self, parity: int) -> "SuperMap":
        mask = _parity_mask(self.source, self.target) == parity
        m = self.field.zeros(self.matrix.shape)
        m[mask] = self.matrix[mask]
        return SuperMap(self.source, self.target, m)

    @property
    def even(self) -> "SuperMap":
        return self.part(0)

    @property
    def odd(self) -> "SuperMap":
        return self.part(1)

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous maps (the zero map counts as even)."""
        mask = _parity_mask(self.source, self.target)
        nz = np.array([bool(x) for x in self.matrix.reshape(-1)], dtype=bool).reshape(self.matrix.shape)
        pars = set(mask[nz].tolist())
        if not pars:
            return 0
        return pars.pop() if len(pars) == 1 else None

    def is_zero(self) -> bool:
        return not any(self.matrix.reshape(-1))

    def __matmul__(self, other: "SuperMap") -> "SuperMap":
        return compose(self, other)

    def __add__(self, other: "SuperMap") -> "SuperMap":
        self._check_shape(other)
        return SuperMap(self.source, self.target, self.field.normalize(self.matrix + other.matrix))

    def __sub__(self, other: "SuperMap") -> "SuperMap":
        self._check_shape(other)
        return SuperMap(self.source, self.target, self.field.normalize(self.matrix - other.matrix))

    def __neg__(self) -> "SuperMap":
        return SuperMap(self.source, self.target, self.field.normalize(-self.matrix))

    def scaled(self, a) -> "SuperMap":
        return SuperMap(self.source, self.target, self.field.normalize(self.matrix * a))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.field.norm(x) == 0 for x in (self.matrix - other.matrix).reshape(-1))
        )

    __hash__ = None

    def _check_shape(self, other: "SuperMap"):
        if self.source != other.source or self.target != other.target:
            raise ValueError("maps live in different Hom spaces")

    def apply(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=object).reshape(-1, 1)
        return self.field.matmul(self.matrix, v).reshape(-1)

    def to_json(self) -> dict:
        f = self.field
        entries = [
            [int(t), int(s), f.serialize(self.matrix[t, s])]
            for t in range(self.target.dim)
            for s in range(self.source.dim)
            if self.matrix[t, s]
        ]
        return {"source": self.source.to_json(), "target": self.target.to_json(), "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "SuperMap":
        src = SuperSpace.from_json(data["source"])
        tgt = SuperSpace.from_json(data["target"])
        m = src.field.zeros((tgt.dim, src.dim))
        for t, s, x in data["entries"]:
            m[t, s] = src.field.parse(x)
        return cls(src, tgt, m)


def identity_map(M: SuperSpace) -> SuperMap:
    return SuperMap(M, M, M.field.identity(M.dim))


def zero_map(M: SuperSpace, N: SuperSpace) -> SuperMap:
    return SuperMap(M, N, M.field.zeros((N.dim, M.dim)))


def matrix_unit(M: SuperSpace, N: SuperSpace, t: int, s: int) -> SuperMap:
    m = M.field.zeros((N.dim, M.dim))
    m[t, s] = 1
    return SuperMap(M, N, m)


def compose(g: SuperMap, f: SuperMap) -> SuperMap:
    """g ∘ f."""
    if f.target != g.source:
        raise ValueError("composition shape mismatch")
    return SuperMap(f.source, g.target, f.field.matmul(g.matrix, f.matrix))


def hom_vector(f: SuperMap) -> np.ndarray:
    """Coordinates of f in the matrix-unit basis of :func:`hom_space`."""
    units = hom_units(f.source, f.target)
    return np.array([f.matrix[t, s] for t, s in units], dtype=object)


def hom_map(M: SuperSpace, N: SuperSpace, vec) -> SuperMap:
    units = hom_units(M, N)
    m = M.field.zeros((N.dim, M.dim))
    for (t, s), x in zip(units, vec):
        m[t, s] = x
    return SuperMap(M, N, M.field.normalize(m))


def boxtimes(f: SuperMap, g: SuperMap) -> SuperMap:
    """(f ⊠ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w), extended over homogeneous parts."""
    return boxtimes_many([f, g])


def boxtimes_many(maps: Sequence[SuperMap], field: Field | None = None) -> SuperMap:
    """f_1 ⊠ ... ⊠ f_d; a basis tensor v_1⊗...⊗v_d picks up
    (-1)^{sum_{i<j} |f_j| |v_i|}, computed per homogeneous matrix entry."""
    if not maps:
        one = tensor_many([], field)
        return identity_map(one)
    fld = _check_same_field(*(m.source for m in maps), *(m.target for m in maps))
    src = tensor_many([m.source for m in maps])
    tgt = tensor_many([m.target for m in maps])
    src_index = tensor_index([m.source for m in maps])
    tgt_index = tensor_index([m.target for m in maps])
    nonzeros = []
    for m in maps:
        sp, tp = m.source.parities, m.target.parities
        nz = [
            (t, s, m.matrix[t, s], (tp[t] + sp[s]) % 2, sp[s])
            for t in range(m.target.dim)
            for s in range(m.source.dim)
            if m.matrix[t, s]
        ]
        nonzeros.append(nz)
    out = fld.zeros((tgt.dim, src.dim))
    for combo in itertools.product(*nonzeros):
        sign = 0
        odd_sources = 0
        val = 1
        for t, s, x, fpar, vpar in combo:
            sign += fpar * odd_sources
            odd_sources += vpar
            val = val * x
        if sign % 2:
            val = -val
        ti = tgt_index[tuple(c[0] for c in combo)]
        si = src_index[tuple(c[1] for c in combo)]
        out[ti, si] = out[ti, si] + val
    return SuperMap(src, tgt, fld.normalize(out))


def dual_map(f: SuperMap) -> SuperMap:
    """f^∨ : N^∨ -> M^∨ with <f^∨(φ), v> = (-1)^{|f||φ|} <φ, f(v)>."""
    M, N = f.source, f.target
    mask = _parity_mask(M, N)  # [t, s]
    sign = (mask * np.array(N.parities, dtype=int)[:, None]) % 2
    m = f.matrix.copy()
    m[sign == 1] = -m[sign == 1]
    return SuperMap(dual_space(N), dual_space(M), f.field.normalize(m.T.copy()))


def minus_twist(f: SuperMap) -> SuperMap:
    """f^-(v) = (-1)^{|f||v|} f(v)."""
    M, N = f.source, f.target
    mask = _parity_mask(M, N)
    sign = (mask * np.array(M.parities, dtype=int)[None, :]) % 2
    m = f.matrix.copy()
    m[sign == 1] = -m[sign == 1]
    return SuperMap(M, N, f.field.normalize(m))


def double_dual_identification(M: SuperSpace) -> SuperMap:
    """M -> (M^∨)^∨ induced by <v, f> = (-1)^{|v||f|} <f, v>."""
    dd = dual_space(dual_space(M))
    m = M.field.zeros((M.dim, M.dim))
    for i, p in enumerate(M.parities):
        m[i, i] = M.field.sign(p)
    return SuperMap(M, dd, m)


def double_dual_pairing(M: SuperSpace, v: int, f: int) -> int:
    """<e_v, e^f> in (M^∨)^∨ x M^∨ under the identification above."""
    if v != f:
        return 0
    return -1 if M.parities[v] else 1
