"""Sparse exact linear algebra over a :class:`~superpoly.scalars.Field`.

Vectors are ``dict[int, scalar]`` with zero entries omitted.  Everything is
plain Gaussian elimination with field inverses; over Q the entries are Python
ints/Fractions, so there is no overflow and no rounding.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .scalars import Field

SparseVec = dict


def to_sparse(field: Field, values) -> SparseVec:
    flat = np.asarray(values, dtype=object).reshape(-1)
    out = {}
    for i, x in enumerate(flat):
        if x:
            x = field.norm(x)
            if x:
                out[i] = x
    return out


def to_dense(field: Field, vec: SparseVec, n: int) -> np.ndarray:
    out = field.zeros(n)
    for i, x in vec.items():
        out[i] = x
    return out


def axpy(field: Field, y: SparseVec, a, x: SparseVec) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    norm = field.norm
    for k, v in x.items():
        t = norm(y.get(k, 0) + a * v)
        if t:
            y[k] = t
        else:
            y.pop(k, None)


def scale(field: Field, a, x: SparseVec) -> SparseVec:
    if not a:
        return {}
    return {k: field.norm(a * v) for k, v in x.items()}


def combine(field: Field, terms: Iterable[tuple[object, SparseVec]]) -> SparseVec:
    out: SparseVec = {}
    for a, x in terms:
        axpy(field, out, a, x)
    return out


class Echelon:
    """Incremental echelon basis of the span of inserted vectors.

    Each stored row is monic with its pivot at its smallest column.  With
    ``track=True`` every row also records which combination of the inserted
    generators produced it, which gives coordinates with respect to those
    generators (unique when they are independent).
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.rows: dict[int, SparseVec] = {}
        self.combos: dict[int, SparseVec] = {}
        self.generators: list[int] = []  # insertion index of accepted generators
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: SparseVec, combo: SparseVec | None, full: bool):
        f = self.field
        v = dict(vec)
        rows = self.rows
        floor = -1
        while v:
            if full:
                cands = [c for c in v if c in rows and c > floor]
                if not cands:
                    break
                c = min(cands)
            else:
                c = min(v)
                if c not in rows:
                    break
            a = f.norm(-v[c])
            axpy(f, v, a, rows[c])
            if combo is not None:
                axpy(f, combo, a, self.combos[c])
            floor = c
        return v, combo

    def add(self, vec: SparseVec) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        idx = self._count
        self._count += 1
        combo = {idx: 1} if self.track else None
        v, combo = self._reduce(vec, combo, full=False)
        if not v:
            return False
        f = self.field
        c = min(v)
        inv = f.inv(v[c])
        self.rows[c] = scale(f, inv, v)
        if self.track:
            self.combos[c] = scale(f, inv, combo)
        self.generators.append(idx)
        return True

    def extend(self, vecs: Iterable[SparseVec]) -> "Echelon":
        for v in vecs:
            self.add(v)
        return self

    def residual(self, vec: SparseVec) -> SparseVec:
        return self._reduce(vec, None, full=True)[0]

    def contains(self, vec: SparseVec) -> bool:
        return not self.residual(vec)

    def coordinates(self, vec: SparseVec) -> SparseVec:
        """Coefficients on the inserted generators expressing ``vec``.

        Raises ValueError if ``vec`` is outside the span.
        """
        if not self.track:
            raise RuntimeError("coordinates need track=True")
        res, combo = self._reduce(vec, {}, full=True)
        if res:
            raise ValueError("vector not in span")
        return {k: self.field.norm(-v) for k, v in combo.items() if v}

    def reduced_rows(self) -> dict[int, SparseVec]:
        """Return the reduced row echelon form (pivot -> row)."""
        f = self.field
        rows = {p: dict(r) for p, r in self.rows.items()}
        for p in sorted(rows, reverse=True):
            r = rows[p]
            for q in sorted(c for c in r if c != p and c in rows):
                axpy(f, r, f.norm(-r[q]), rows[q])
        return rows


def kernel(field: Field, equations: Iterable[SparseVec], ncols: int) -> list[SparseVec]:
    """Basis of the solutions of ``sum_j eq[j] x_j = 0`` for all equations.

    The basis is the free-variable basis of the reduced echelon form: each
    vector has a 1 at its free column and 0 at every other free column.
    """
    ech = Echelon(field).extend(equations)
    rows = ech.reduced_rows()
    by_free: dict[int, list[int]] = {}
    for p, r in rows.items():
        for c in r:
            if c != p:
                by_free.setdefault(c, []).append(p)
    basis = []
    for fcol in range(ncols):
        if fcol in rows:
            continue
        v = {fcol: 1}
        for p in by_free.get(fcol, ()):
            v[p] = field.norm(-rows[p][fcol])
        basis.append(v)
    return basis


def rank(field: Field, vecs: Iterable[SparseVec]) -> int:
    return Echelon(field).extend(vecs).rank


def span_contains(field: Field, big: Iterable[SparseVec], small: Iterable[SparseVec]) -> bool:
    ech = Echelon(field).extend(big)
    return all(ech.contains(v) for v in small)


def same_span(field: Field, a: list[SparseVec], b: list[SparseVec]) -> bool:
    return span_contains(field, a, b) and span_contains(field, b, a)


def matrix_rank(field: Field, mat: np.ndarray) -> int:
    return rank(field, (to_sparse(field, row) for row in np.asarray(mat, dtype=object)))


def inverse(field: Field, mat: np.ndarray) -> np.ndarray:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = mat.shape[0]
    ech = Echelon(field, track=True)
    for row in mat:
        ech.add(to_sparse(field, row))
    if ech.rank != n:
        raise ValueError("singular matrix")
    out = field.zeros((n, n))
    for j in range(n):
        coords = ech.coordinates({j: 1})
        for i, x in coords.items():
            out[j, i] = x
    return out


# sparse matrices as lists of columns

Columns = list


def columns(field: Field, mat: np.ndarray) -> Columns:
    return [to_sparse(field, mat[:, j]) for j in range(mat.shape[1])]


def columns_to_dense(field: Field, cols: Columns, nrows: int) -> np.ndarray:
    out = field.zeros((nrows, len(cols)))
    for j, col in enumerate(cols):
        for i, x in col.items():
            out[i, j] = x
    return out


def compose_columns(field: Field, a: Columns, b: Columns) -> Columns:
    """Columns of the product a @ b."""
    return [combine(field, ((x, a[k]) for k, x in col.items())) for col in b]


def is_monomial(cols: Columns) -> bool:
    """Exactly one nonzero per column and per row."""
    rows = set()
    for col in cols:
        if len(col) != 1:
            return False
        (r,) = col
        if r in rows:
            return False
        rows.add(r)
    return True
