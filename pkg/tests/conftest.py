from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from superpoly.scalars import Field
from superpoly.superlinear import SuperMap, make_space

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

QQ, GF3, GF5 = Field(0), Field(3), Field(5)
FIELDS = [QQ, GF3]


@pytest.fixture(params=FIELDS, ids=lambda f: f.name)
def field(request) -> Field:
    return request.param


fields = st.sampled_from([QQ, GF3, GF5])


def scalars(f: Field):
    if f.is_rational:
        return st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4)).map(f.norm)
    return st.integers(0, f.characteristic - 1)


@st.composite
def homogeneous_maps(draw, f: Field, source=None, target=None, parity=None, max_dim=2):
    if source is None:
        source = make_space(f, draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim)))
    if target is None:
        target = make_space(f, draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim)))
    if parity is None:
        parity = draw(st.integers(0, 1))
    m = f.zeros((target.dim, source.dim))
    for t in range(target.dim):
        for s in range(source.dim):
            if (target.parities[t] + source.parities[s]) % 2 == parity:
                m[t, s] = draw(scalars(f))
    return SuperMap(source, target, m), parity


def dense_equal(a, b) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(np.asarray(a).reshape(-1), np.asarray(b).reshape(-1)))


def oracle_rank(f: Field, rows) -> int:
    """Rank through sympy's domain matrices; independent of the package's elimination."""
    from sympy import GF, QQ as SQQ
    from sympy.polys.matrices import DomainMatrix

    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    dom = SQQ if f.is_rational else GF(f.characteristic)
    conv = [[dom.convert(int(x)) if not f.is_rational else dom.convert(x) for x in r] for r in rows]
    return DomainMatrix(conv, (len(rows), len(rows[0])), dom).rank()


def oracle_hom_sdim(V, W) -> tuple[int, int]:
    """sdim of Hom_A(V, W) by dense elimination, one parity at a time.

    Right modules: X ρ_V(g) = ρ_W(g) X.  Left modules: X ρ_V(g) = (-1)^{|X||g|} ρ_W(g) X.
    """
    f = V.field
    A = V.algebra
    left = V.side == "left"
    mats = [(A.parities[i], V.matrix(i), W.matrix(i)) for i in range(A.dim)]
    out = []
    for q in (0, 1):
        unknowns = [
            (t, s)
            for t in range(W.dim)
            for s in range(V.dim)
            if (W.space.parities[t] + V.space.parities[s]) % 2 == q
        ]
        col = {u: k for k, u in enumerate(unknowns)}
        rows = []
        for pg, RV, RW in mats:
            eps = -1 if left and q and pg else 1
            for t in range(W.dim):
                for u in range(V.dim):
                    row = [0] * len(unknowns)
                    # (X RV)[t,u] = sum_s X[t,s] RV[s,u];  (RW X)[t,u] = sum_r RW[t,r] X[r,u]
                    for s in range(V.dim):
                        if (t, s) in col and RV[s, u]:
                            row[col[(t, s)]] += RV[s, u]
                    for r in range(W.dim):
                        if (r, u) in col and RW[t, r]:
                            row[col[(r, u)]] -= eps * RW[t, r]
                    if any(row):
                        rows.append(row)
        out.append(len(unknowns) - (oracle_rank(f, rows) if rows and unknowns else 0))
    return out[0], out[1]


# generating-function oracles for label counts


def _series_coeffs(factors, N):
    """Multiply power series truncated at degree N; each factor is a coefficient list."""
    out = [1] + [0] * N
    for f in factors:
        new = [0] * (N + 1)
        for i, a in enumerate(out):
            if a:
                for j, b in enumerate(f[: N + 1 - i]):
                    new[i + j] += a * b
        out = new
    return out


def _geometric(k, N):
    return [1 if i % k == 0 else 0 for i in range(N + 1)]


def _one_plus(k, N):
    c = [0] * (N + 1)
    c[0] = 1
    if k <= N:
        c[k] = 1
    return c


def type_I_series(p, N):
    factors = [_geometric(k, N) for k in range(1, N + 1)]
    factors += [_geometric(p * k, N) for k in range(1, N // p + 1)]
    return _series_coeffs(factors, N)


def type_II_series(p, N):
    factors = []
    for k in range(1, N + 1):
        factors.append(_geometric(k, N) if p and k % p == 0 else _one_plus(k, N))
    return _series_coeffs(factors, N)


# acceptance summary: one line per criterion at the end of the run

ACCEPTANCE: list[str] = []


def record_acceptance(number: int, title: str, passed: bool, seconds: float, limit: float | None) -> None:
    bound = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} in {seconds:.2f} s{bound}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
