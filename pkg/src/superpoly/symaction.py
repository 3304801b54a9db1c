"""Signed place permutations on tensor powers, divided and symmetric powers.

Permutations are 0-based one-line tuples, ``sigma[i]`` being the image of i,
and the product is composition: ``(sigma * tau)[i] = sigma[tau[i]]``.  With
the right action

    (v_1 ⊗ ... ⊗ v_d) . sigma = ± v_{sigma(1)} ⊗ ... ⊗ v_{sigma(d)}

one has ``(v . sigma) . tau = v . (sigma * tau)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from . import linalg
from .linalg import SparseVec
from .superlinear import (
    SuperMap,
    SuperSpace,
    direct_sum,
    space_from_parities,
    tensor_index,
    tensor_many,
    tensor_multis,
)

Perm = tuple[int, ...]


# permutations


def perm_compose(sigma: Perm, tau: Perm) -> Perm:
    return tuple(sigma[t] for t in tau)


def perm_inverse(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def transposition(d: int, i: int) -> Perm:
    """s_i = (i i+1), 1 <= i <= d-1."""
    p = list(range(d))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def reduced_word(sigma: Perm) -> list[int]:
    """A reduced word [i_1, ..., i_k] with sigma = s_{i_1} ... s_{i_k} (bubble sort)."""
    a = list(sigma)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(len(a) - 1):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                swaps.append(j + 1)
                changed = True
    return swaps[::-1]


def all_reduced_words(sigma: Perm) -> list[list[int]]:
    """Every reduced word of sigma (exponential; small d only)."""
    if list(sigma) == sorted(sigma):
        return [[]]
    words = []
    d = len(sigma)
    for i in range(1, d):
        # sigma = tau * s_i with l(tau) < l(sigma) iff sigma has a descent at i
        if sigma[i - 1] > sigma[i]:
            tau = perm_compose(sigma, transposition(d, i))
            words.extend(w + [i] for w in all_reduced_words(tau))
    return words


def koszul_sign(parities: Sequence[int], sigma: Perm) -> int:
    """Sign of (v_1⊗...⊗v_d).sigma for homogeneous v_i of the given parities.

    Counts pairs of odd factors whose relative order is reversed.
    """
    where = perm_inverse(sigma)
    odd = [a for a in range(len(parities)) if parities[a] % 2]
    inv = sum(1 for x, y in itertools.combinations(odd, 2) if where[x] > where[y])
    return -1 if inv % 2 else 1


def act_on_multi(multi: Sequence[int], parities: Sequence[int], sigma: Perm) -> tuple[int, tuple[int, ...]]:
    """(sign, new multi-index) for the basis tensor ``multi`` acted on by sigma."""
    pars = [parities[i] for i in multi]
    return koszul_sign(pars, sigma), tuple(multi[s] for s in sigma)


# tensor powers


@dataclass(frozen=True)
class TensorPower:
    base: SuperSpace
    d: int
    space: SuperSpace
    index: dict  # multi-index -> position
    multis: tuple  # position -> multi-index

    @property
    def dim(self) -> int:
        return self.space.dim


def tensor_power(M: SuperSpace, d: int) -> TensorPower:
    spaces = [M] * d
    space = tensor_many(spaces, M.field)
    if d == 0:
        return TensorPower(M, 0, space, {(): 0}, ((),))
    return TensorPower(M, d, space, tensor_index(spaces), tensor_multis(spaces))


def _perm_matrix(T: TensorPower, sigma: Perm) -> SuperMap:
    fld = T.base.field
    m = fld.zeros((T.dim, T.dim))
    for pos, multi in enumerate(T.multis):
        sign, new = act_on_multi(multi, T.base.parities, sigma)
        m[T.index[new], pos] = fld.norm(sign)
    return SuperMap(T.space, T.space, m)


def transposition_action(M: SuperSpace, d: int, i: int) -> SuperMap:
    """Matrix of v -> v.s_i on M^{⊗d} (columns = basis tensors)."""
    if not 1 <= i <= d - 1:
        raise ValueError(f"transposition index {i} out of range for d={d}")
    T = tensor_power(M, d)
    fld = M.field
    m = fld.zeros((T.dim, T.dim))
    for pos, multi in enumerate(T.multis):
        a, b = multi[i - 1], multi[i]
        sign = -1 if M.parities[a] and M.parities[b] else 1
        new = multi[: i - 1] + (b, a) + multi[i + 1 :]
        m[T.index[new], pos] = fld.norm(sign)
    return SuperMap(T.space, T.space, m)


def word_action(M: SuperSpace, d: int, word: Sequence[int]) -> SuperMap:
    """Action of s_{i_1} ... s_{i_k}: first s_{i_1}, then s_{i_2}, ..."""
    T = tensor_power(M, d)
    result = SuperMap(T.space, T.space, M.field.identity(T.dim))
    for i in word:
        result = transposition_action(M, d, i) @ result
    return result


def permutation_action(M: SuperSpace, d: int, sigma: Perm) -> SuperMap:
    if sorted(sigma) != list(range(d)):
        raise ValueError(f"{sigma} is not a permutation of {d} letters")
    return word_action(M, d, reduced_word(tuple(sigma)))


# divided powers

GammaLabel = tuple[tuple[tuple[int, int], ...], tuple[int, ...]]


def gamma_dim(m: int, n: int, d: int) -> int:
    """sum_{k+l=d} C(m+k-1, k) C(n, l)."""
    total = 0
    for k in range(d + 1):
        l = d - k
        even = 1 if k == 0 else (comb(m + k - 1, k) if m > 0 else 0)
        total += even * comb(n, l)
    return total


def gamma_labels(m: int, n: int, d: int) -> list[GammaLabel]:
    """Labels (even part with multiplicities, strictly increasing odd part)."""
    labels = []
    for l in range(min(n, d) + 1):
        k = d - l
        if k and not m:
            continue
        evens = list(itertools.combinations_with_replacement(range(1, m + 1), k))
        for ev in evens:
            mult = tuple((i, ev.count(i)) for i in sorted(set(ev)))
            for od in itertools.combinations(range(1, n + 1), l):
                labels.append((mult, od))
    return labels


def label_to_json(label: GammaLabel) -> dict:
    even, odd = label
    return {"even": [list(p) for p in even], "odd": list(odd)}


def orbit_sum(M: SuperSpace, label: GammaLabel, T: TensorPower | None = None) -> SparseVec:
    """Sum over the distinct rearrangements of the label's base tensor.

    One term per coset of the stabiliser, signed by the Koszul sign of the
    rearrangement, so nothing is ever divided by a stabiliser order.
    """
    m, _ = M.sdim
    even, odd = label
    base = [i - 1 for i, mult in even for _ in range(mult)] + [m + j - 1 for j in odd]
    d = len(base)
    if T is None:
        T = tensor_power(M, d)
    if d == 0:
        return {0: 1}
    vec: SparseVec = {}
    odd_rank = {m + j - 1: r for r, j in enumerate(odd)}
    for arrangement in multiset_permutations(base):
        seq = [odd_rank[x] for x in arrangement if x in odd_rank]
        inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
        vec[T.index[tuple(arrangement)]] = M.field.norm(-1 if inv % 2 else 1)
    return vec


def invariant_kernel(M: SuperSpace, d: int) -> list[SparseVec]:
    """Joint kernel of (action(s_i) - id), i = 1..d-1, by elimination."""
    T = tensor_power(M, d)
    eqs = []
    fld = M.field
    for i in range(1, d):
        P = transposition_action(M, d, i).matrix
        for r in range(T.dim):
            row = linalg.to_sparse(fld, P[r])
            row[r] = fld.norm(row.get(r, 0) - 1)
            if not row[r]:
                del row[r]
            if row:
                eqs.append(row)
    return linalg.kernel(fld, eqs, T.dim)


@dataclass
class GammaBasis:
    base: SuperSpace
    d: int
    tensor: TensorPower
    labels: list[GammaLabel]
    vectors: list[SparseVec]  # orbit sums, coordinates in tensor.space
    kernel_basis: list[SparseVec]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def parities(self) -> list[int]:
        return [len(odd) % 2 for _, odd in self.labels]

    def embedding(self) -> SuperMap:
        """Γ^d M -> M^{⊗d}."""
        space, pos = space_from_parities(
            self.base.field, self.parities, [str(label_to_json(lab)) for lab in self.labels]
        )
        m = self.base.field.zeros((self.tensor.dim, self.dim))
        for j, v in enumerate(self.vectors):
            for i, x in v.items():
                m[i, pos[j]] = x
        return SuperMap(space, self.tensor.space, m)

    def labels_json(self) -> list[dict]:
        return [label_to_json(lab) for lab in self.labels]


class VerificationError(AssertionError):
    """A mechanical check of an algebraic identity failed."""


def gamma_invariants(M: SuperSpace, d: int, check: bool = True) -> GammaBasis:
    """Γ^d M two ways: combinatorial orbit sums and the joint kernel.

    With ``check`` the orbit sums must be independent and span the kernel.
    """
    m, n = M.sdim
    T = tensor_power(M, d)
    labels = gamma_labels(m, n, d)
    vectors = [orbit_sum(M, lab, T) for lab in labels]
    kern = invariant_kernel(M, d) if d > 0 else [{0: 1}]
    if check:
        fld = M.field
        if linalg.rank(fld, vectors) != len(vectors):
            raise VerificationError("orbit sums are linearly dependent")
        if len(kern) != len(vectors) or not linalg.span_contains(fld, kern, vectors):
            raise VerificationError("orbit sums do not span the invariant kernel")
    return GammaBasis(M, d, T, labels, vectors, kern)


def embedding_check(M: SuperSpace, d: int, e: int) -> bool:
    """Γ^{d+e} M sits inside Γ^d M ⊗ Γ^e M (both realised in M^{⊗(d+e)})."""
    big = gamma_invariants(M, d + e, check=False)
    left = gamma_invariants(M, d, check=False)
    right = gamma_invariants(M, e, check=False)
    T = big.tensor
    products = []
    for x in left.vectors:
        for y in right.vectors:
            v = {}
            for i, a in x.items():
                for j, b in y.items():
                    key = T.index[left.tensor.multis[i] + right.tensor.multis[j]]
                    v[key] = M.field.norm(v.get(key, 0) + a * b)
            products.append({k: c for k, c in v.items() if c})
    return linalg.span_contains(M.field, products, big.vectors)


# symmetric powers


@dataclass
class SymmetricPower:
    base: SuperSpace
    d: int
    tensor: TensorPower
    monomials: list[tuple[int, ...]]  # sorted multi-indices, odd entries distinct
    space: SuperSpace
    quotient: SuperMap  # M^{⊗d} -> S^d M

    @property
    def dim(self) -> int:
        return len(self.monomials)


def sort_with_sign(multi: Sequence[int], parities: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort a basis tensor into its monomial; sign 0 if an odd index repeats."""
    odd = [x for x in multi if parities[x]]
    if len(set(odd)) < len(odd):
        return 0, tuple(sorted(multi))
    inv = sum(1 for a, b in itertools.combinations(odd, 2) if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(multi))


def symmetric_monomials(M: SuperSpace, d: int) -> list[tuple[int, ...]]:
    mons = []
    for multi in itertools.combinations_with_replacement(range(M.dim), d):
        odd = [x for x in multi if M.parities[x]]
        if len(set(odd)) == len(odd):
            mons.append(multi)
    return mons


def symmetric_power(M: SuperSpace, d: int, check: bool = True) -> SymmetricPower:
    """S^d M as coinvariants, with the sorted-monomial section."""
    fld = M.field
    T = tensor_power(M, d)
    mons = symmetric_monomials(M, d)
    pars = [sum(M.parities[i] for i in mon) % 2 for mon in mons]
    space, pos = space_from_parities(fld, pars, ["·".join(M.labels[i] for i in mon) or "1" for mon in mons])
    mons = [mons[i] for i in sorted(range(len(mons)), key=lambda i: pos[i])]
    mon_index = {mon: k for k, mon in enumerate(mons)}
    q = fld.zeros((len(mons), T.dim))
    for c, multi in enumerate(T.multis):
        sign, mon = sort_with_sign(multi, M.parities)
        if sign:
            q[mon_index[mon], c] = fld.norm(sign)
    quotient = SuperMap(T.space, space, q)
    if check and d > 1:
        rel = []
        for i in range(1, d):
            P = transposition_action(M, d, i).matrix
            diff = fld.normalize(P - fld.identity(T.dim))
            if any(x for x in fld.matmul(q, diff).reshape(-1)):
                raise VerificationError("monomial quotient does not kill x - x.s_i")
            rel.extend(linalg.to_sparse(fld, diff[:, c]) for c in range(T.dim))
        if T.dim - linalg.rank(fld, rel) != len(mons):
            raise VerificationError("coinvariant dimension disagrees with monomial count")
    return SymmetricPower(M, d, T, mons, space, quotient)


# exponential property


@dataclass
class ExponentialDecomposition:
    blocks: list[tuple[int, int]]  # (i, dim Γ^{d-i}M ⊗ Γ^i N)
    images: list[SparseVec]  # shuffle products in (M ⊕ N)^{⊗d}
    change_of_basis: list[list]  # column j = orbit-sum coordinates of images[j]
    inverse: list[list]
    gamma_sum: GammaBasis


@lru_cache(maxsize=None)
def _shuffles(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Position sets for the first block in an (a, b) shuffle."""
    return tuple(itertools.combinations(range(a + b), a))


def shuffle_product(x_multi: tuple, y_multi: tuple, parities: Sequence[int]) -> list[tuple[int, tuple]]:
    """Signed shuffles of the basis tensors x ⊗ y (indices in a common space)."""
    a, b = len(x_multi), len(y_multi)
    out = []
    for first in _shuffles(a, b):
        firstset = set(first)
        seq = [None] * (a + b)
        xi, yi = iter(x_multi), iter(y_multi)
        sign = 0
        odd_y_seen = 0
        for p in range(a + b):
            if p in firstset:
                v = next(xi)
                if parities[v]:
                    sign += odd_y_seen
                seq[p] = v
            else:
                v = next(yi)
                odd_y_seen += parities[v]
                seq[p] = v
        out.append((-1 if sign % 2 else 1, tuple(seq)))
    return out


def exponential_decomposition(M: SuperSpace, N: SuperSpace, d: int) -> ExponentialDecomposition:
    """Explicit isomorphism ⊕_i Γ^{d-i}M ⊗ Γ^i N -> Γ^d(M ⊕ N) by shuffles."""
    fld = M.field
    S, inc_m, inc_n = direct_sum(M, N)
    pos_m = [int(next(t for t in range(S.dim) if inc_m.matrix[t, s])) for s in range(M.dim)]
    pos_n = [int(next(t for t in range(S.dim) if inc_n.matrix[t, s])) for s in range(N.dim)]
    target = gamma_invariants(S, d)
    T = target.tensor
    images = []
    blocks = []
    for i in range(d + 1):
        gm = gamma_invariants(M, d - i)
        gn = gamma_invariants(N, i)
        blocks.append((i, gm.dim * gn.dim))
        for x in gm.vectors:
            for y in gn.vectors:
                v: SparseVec = {}
                for px, a in x.items():
                    xm = tuple(pos_m[k] for k in gm.tensor.multis[px])
                    for py, b in y.items():
                        ym = tuple(pos_n[k] for k in gn.tensor.multis[py])
                        for sign, seq in shuffle_product(xm, ym, S.parities):
                            key = T.index[seq]
                            v[key] = fld.norm(v.get(key, 0) + sign * a * b)
                images.append({k: c for k, c in v.items() if c})
    if sum(b for _, b in blocks) != target.dim:
        raise VerificationError("dimension identity of the exponential property fails")
    ech = linalg.Echelon(fld, track=True).extend(target.vectors)
    n = target.dim
    cob = [[0] * n for _ in range(n)]
    for j, img in enumerate(images):
        try:
            coords = ech.coordinates(img)
        except ValueError as exc:
            raise VerificationError("shuffle image is not invariant") from exc
        for i, x in coords.items():
            cob[i][j] = x
    inv = linalg.inverse(fld, np.array(cob, dtype=object)) if n else np.zeros((0, 0), dtype=object)
    return ExponentialDecomposition(blocks, images, cob, inv.tolist(), target)
