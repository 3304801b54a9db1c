"""Finite-dimensional superalgebras given by sparse structure constants."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .linalg import SparseVec
from .scalars import Field
from .symaction import act_on_multi, perm_compose, perm_inverse


class AlgebraError(ValueError):
    """An algebra or algebra map failed one of its structural audits."""


FULL_AUDIT_LIMIT = 64
SAMPLED_TRIPLES = 4000


@dataclass(eq=False)
class SuperAlgebra:
    field: Field
    parities: list[int]
    labels: list[str]
    constants: dict[tuple[int, int], SparseVec]
    unit: SparseVec
    name: str = "A"
    audit_seed: int = 0
    _left: dict = dc_field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.parities)

    def basis_product(self, i: int, j: int) -> SparseVec:
        return self.constants.get((i, j), {})

    def mul(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        f = self.field
        for i, a in x.items():
            for j, b in y.items():
                c = self.constants.get((i, j))
                if c:
                    linalg.axpy(f, out, f.norm(a * b), c)
        return out

    def product(self, *elements: SparseVec) -> SparseVec:
        out = dict(self.unit)
        for e in elements:
            out = self.mul(out, e)
        return out

    def basis(self, i: int) -> SparseVec:
        return {i: 1}

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element_parity(self, x: SparseVec) -> int | None:
        pars = {self.parities[i] for i in x}
        if not pars:
            return 0
        return pars.pop() if len(pars) == 1 else None

    def left_matrix(self, i: int) -> np.ndarray:
        """Matrix of x -> b_i x (columns indexed by basis)."""
        if i not in self._left:
            m = self.field.zeros((self.dim, self.dim))
            for j in range(self.dim):
                for k, c in self.basis_product(i, j).items():
                    m[k, j] = c
            self._left[i] = m
        return self._left[i]

    def right_matrix(self, i: int) -> np.ndarray:
        """Matrix of x -> x b_i."""
        m = self.field.zeros((self.dim, self.dim))
        for j in range(self.dim):
            for k, c in self.basis_product(j, i).items():
                m[k, j] = c
        return m

    # audits

    def audit(self) -> None:
        self.audit_parity()
        self.audit_unit()
        self.audit_associativity()

    def audit_parity(self) -> None:
        for (i, j), c in self.constants.items():
            for k in c:
                if self.parities[k] != (self.parities[i] + self.parities[j]) % 2:
                    raise AlgebraError(f"{self.name}: b{i} b{j} has a term of the wrong parity")
        if any(self.parities[k] for k in self.unit):
            raise AlgebraError(f"{self.name}: unit is not even")

    def audit_unit(self) -> None:
        for i in range(self.dim):
            e = {i: 1}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise AlgebraError(f"{self.name}: unit law fails on basis element {i}")

    def _triples(self):
        n = self.dim
        if n <= FULL_AUDIT_LIMIT:
            return itertools.product(range(n), repeat=3)
        rng = random.Random(self.audit_seed)
        return ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(SAMPLED_TRIPLES))

    def audit_associativity(self) -> None:
        for i, j, k in self._triples():
            left = self.mul(self.basis_product(i, j), {k: 1})
            right = self.mul({i: 1}, self.basis_product(j, k))
            if left != right:
                raise AlgebraError(f"{self.name}: associativity fails on ({i}, {j}, {k})")

    def same_table(self, other: "SuperAlgebra") -> bool:
        if self.dim != other.dim or self.parities != other.parities or self.unit != other.unit:
            return False
        keys = set(self.constants) | set(other.constants)
        return all(self.basis_product(*k) == other.basis_product(*k) for k in keys)

    # serialisation

    def to_json(self) -> dict:
        f = self.field
        constants = [
            [i, j, k, f.serialize(c)]
            for (i, j), vec in sorted(self.constants.items())
            for k, c in sorted(vec.items())
        ]
        unit = [f.serialize(self.unit.get(i, 0)) for i in range(self.dim)]
        return {
            "name": self.name,
            "field": f.characteristic,
            "dim": self.dim,
            "parities": list(self.parities),
            "labels": list(self.labels),
            "unit": unit,
            "constants": constants,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SuperAlgebra":
        f = Field(int(data["field"]))
        constants: dict = {}
        for i, j, k, c in data["constants"]:
            x = f.parse(str(c))
            if x:
                constants.setdefault((int(i), int(j)), {})[int(k)] = x
        unit = {i: f.parse(str(c)) for i, c in enumerate(data["unit"]) if f.parse(str(c))}
        labels = data.get("labels") or [f"b{i}" for i in range(int(data["dim"]))]
        return cls(f, [int(p) for p in data["parities"]], list(labels), constants, unit, data.get("name", "A"))


def build_algebra(
    field: Field,
    parities: Sequence[int],
    labels: Sequence[str],
    rule: Callable[[int, int], SparseVec],
    unit: SparseVec,
    name: str,
    audit: bool = True,
) -> SuperAlgebra:
    n = len(parities)
    constants = {}
    for i in range(n):
        for j in range(n):
            c = {k: field.norm(v) for k, v in rule(i, j).items() if field.norm(v)}
            if c:
                constants[(i, j)] = c
    alg = SuperAlgebra(field, list(parities), list(labels), constants, dict(unit), name)
    if audit:
        alg.audit()
    return alg


@dataclass(eq=False)
class AlgebraMap:
    source: SuperAlgebra
    target: SuperAlgebra
    images: list[SparseVec]  # image of each source basis element
    anti: bool = False

    def __call__(self, x: SparseVec) -> SparseVec:
        f = self.target.field
        return linalg.combine(f, ((a, self.images[i]) for i, a in x.items()))

    @property
    def matrix(self) -> np.ndarray:
        m = self.target.field.zeros((self.target.dim, self.source.dim))
        for j, img in enumerate(self.images):
            for i, x in img.items():
                m[i, j] = x
        return m

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and linalg.rank(self.target.field, self.images) == self.source.dim

    def check(self) -> None:
        """Even, unital, and (anti-)multiplicative on basis pairs."""
        A, B = self.source, self.target
        for i, img in enumerate(self.images):
            if any(B.parities[k] != A.parities[i] for k in img):
                raise AlgebraError("algebra map is not even")
        if self(A.unit) != B.unit:
            raise AlgebraError("algebra map does not preserve the unit")
        n = A.dim
        if n * n <= FULL_AUDIT_LIMIT**2:
            pairs = itertools.product(range(n), repeat=2)
        else:
            rng = random.Random(0)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(SAMPLED_TRIPLES))
        for i, j in pairs:
            lhs = self(A.basis_product(i, j))
            x, y = self.images[i], self.images[j]
            rhs = B.mul(y, x) if self.anti else B.mul(x, y)
            if lhs != rhs:
                kind = "anti-multiplicative" if self.anti else "multiplicative"
                raise AlgebraError(f"map is not {kind} on basis pair ({i}, {j})")


def identity_algebra_map(A: SuperAlgebra, anti: bool = False) -> AlgebraMap:
    return AlgebraMap(A, A, [{i: 1} for i in range(A.dim)], anti)


# constructions


def ground_field(field: Field) -> SuperAlgebra:
    return build_algebra(field, [0], ["1"], lambda i, j: {0: 1}, {0: 1}, "k")


def split_algebra(field: Field) -> SuperAlgebra:
    """k ⊕ k with orthogonal idempotents e1, e2."""
    return build_algebra(field, [0, 0], ["e1", "e2"], lambda i, j: {i: 1} if i == j else {}, {0: 1, 1: 1}, "k+k")


def _bits(d: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=d))


def clifford_sign(s: Sequence[int], t: Sequence[int]) -> int:
    """c_S c_T = sign * c_{S △ T}; counts pairs i in S, j in T with i > j."""
    count = 0
    seen_t = 0
    for k in range(len(s)):
        # t-indices strictly below k, paired with k in s
        if s[k]:
            count += seen_t
        seen_t += t[k]
    return -1 if count % 2 else 1


def clifford(d: int, field: Field) -> SuperAlgebra:
    """C(d): basis c_S for S ⊆ {1..d}, indexed by the bit tuple of S in lex order."""
    if d < 0:
        raise ValueError("d must be non-negative")
    bits = _bits(d)
    index = {b: i for i, b in enumerate(bits)}
    labels = ["".join(f"c{k + 1}" for k in range(d) if b[k]) or "1" for b in bits]

    def rule(i, j):
        s, t = bits[i], bits[j]
        return {index[tuple(a ^ b for a, b in zip(s, t))]: clifford_sign(s, t)}

    return build_algebra(field, [sum(b) % 2 for b in bits], labels, rule, {0: 1}, f"C({d})")


def generator(A: SuperAlgebra, label: str) -> SparseVec:
    return {A.index(label): 1}


def tensor_algebra(A: SuperAlgebra, B: SuperAlgebra, audit: bool = True) -> SuperAlgebra:
    """(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb'; basis (i, j) in lex order."""
    if A.field != B.field:
        raise AlgebraError("tensor product of algebras over different fields")
    f = A.field
    nb = B.dim

    def rule(x, y):
        i, j = divmod(x, nb)
        k, l = divmod(y, nb)
        sign = -1 if B.parities[j] and A.parities[k] else 1
        out: SparseVec = {}
        for p, a in A.basis_product(i, k).items():
            for q, b in B.basis_product(j, l).items():
                out[p * nb + q] = f.norm(out.get(p * nb + q, 0) + sign * a * b)
        return out

    pars = [(pa + pb) % 2 for pa in A.parities for pb in B.parities]
    labels = [f"{a}⊗{b}" for a in A.labels for b in B.labels]
    unit = {i * nb + j: f.norm(a * b) for i, a in A.unit.items() for j, b in B.unit.items()}
    return build_algebra(f, pars, labels, rule, unit, f"{A.name}⊗{B.name}", audit)


def tensor_swap(A: SuperAlgebra, B: SuperAlgebra) -> AlgebraMap:
    """a⊗b -> (-1)^{|a||b|} b⊗a as a map A⊗B -> B⊗A."""
    AB, BA = tensor_algebra(A, B), tensor_algebra(B, A)
    images = []
    for i in range(A.dim):
        for j in range(B.dim):
            sign = -1 if A.parities[i] and B.parities[j] else 1
            images.append({j * A.dim + i: A.field.norm(sign)})
    return AlgebraMap(AB, BA, images)


def tensor_power_multis(A: SuperAlgebra, d: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(A.dim), repeat=d))


def tensor_power_product(A: SuperAlgebra, a: Sequence[int], b: Sequence[int]) -> dict[tuple[int, ...], object]:
    """(a_1⊗...⊗a_d)(b_1⊗...⊗b_d) = (-1)^{sum_{i>j}|a_i||b_j|} ⊗ a_i b_i."""
    f = A.field
    sign = 0
    odd_b = 0
    for i in range(len(a)):
        sign += A.parities[a[i]] * odd_b
        odd_b += A.parities[b[i]]
    terms: dict[tuple[int, ...], object] = {(): f.sign(sign)}
    for x, y in zip(a, b):
        prod = A.basis_product(x, y)
        new: dict = {}
        for key, c in terms.items():
            for k, v in prod.items():
                new[key + (k,)] = f.norm(c * v)
        terms = new
    return {k: v for k, v in terms.items() if v}


def tensor_power_algebra(A: SuperAlgebra, d: int, audit: bool = True) -> SuperAlgebra:
    f = A.field
    multis = tensor_power_multis(A, d)
    index = {m: i for i, m in enumerate(multis)}

    def rule(x, y):
        return {index[k]: v for k, v in tensor_power_product(A, multis[x], multis[y]).items()}

    unit = _tensor_unit(A, d, index)
    pars = [sum(A.parities[i] for i in m) % 2 for m in multis]
    labels = ["⊗".join(A.labels[i] for i in m) or "1" for m in multis]
    return build_algebra(f, pars, labels, rule, unit, f"{A.name}^⊗{d}", audit)


def _tensor_unit(A: SuperAlgebra, d: int, index: dict) -> SparseVec:
    terms = {(): 1}
    for _ in range(d):
        terms = {k + (i,): A.field.norm(c * a) for k, c in terms.items() for i, a in A.unit.items()}
    return {index[k]: c for k, c in terms.items() if c}


def clifford_matrix_model(field: Field) -> tuple[SuperAlgebra, AlgebraMap, list[np.ndarray]]:
    """The 2x2 matrices [[a, b], [b, a]] with a diagonal even, b antidiagonal odd.

    Returns the algebra on the basis (I, J1), the isomorphism onto C(1), and
    the two basis matrices.  Structure constants come from matrix products.
    """
    I = field.identity(2)
    J = field.array([[0, 1], [1, 0]])
    mats = [I, J]
    ech = linalg.Echelon(field, track=True).extend(linalg.to_sparse(field, m) for m in mats)

    def rule(i, j):
        return ech.coordinates(linalg.to_sparse(field, field.matmul(mats[i], mats[j])))

    model = build_algebra(field, [0, 1], ["I", "J1"], rule, {0: 1}, "M(1|1)^C")
    c1 = clifford(1, field)
    iso = AlgebraMap(model, c1, [{0: 1}, {1: 1}])
    iso.check()
    if not iso.is_bijective():
        raise AlgebraError("matrix model is not isomorphic to C(1)")
    return model, iso, mats


def clifford_factorization(d1: int, d2: int, field: Field) -> AlgebraMap:
    """C(d1+d2) -> C(d1)⊗C(d2), c_i -> c_i⊗1, c_{d1+j} -> 1⊗c_j."""
    src = clifford(d1 + d2, field)
    tgt = tensor_algebra(clifford(d1, field), clifford(d2, field))
    n2 = 2**d2
    gens = []
    for i in range(d1):
        gens.append({(1 << (d1 - 1 - i)) * n2: 1})
    for j in range(d2):
        gens.append({1 << (d2 - 1 - j): 1})
    images = []
    for b in _bits(d1 + d2):
        images.append(tgt.product(*(gens[k] for k in range(d1 + d2) if b[k])))
    phi = AlgebraMap(src, tgt, images)
    phi.check()
    if not phi.is_bijective():
        raise AlgebraError("Clifford factorisation is not bijective")
    return phi


def permutations_lex(d: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(d)))


def perm_label(sigma: Sequence[int]) -> str:
    return "[" + "".join(str(s + 1) for s in sigma) + "]"


def group_algebra(d: int, field: Field) -> SuperAlgebra:
    if d < 1:
        raise ValueError("d must be at least 1")
    perms = permutations_lex(d)
    index = {p: i for i, p in enumerate(perms)}
    return build_algebra(
        field,
        [0] * len(perms),
        [perm_label(p) for p in perms],
        lambda i, j: {index[perm_compose(perms[i], perms[j])]: 1},
        {0: 1},
        f"k S{d}",
    )


@dataclass(eq=False)
class WreathAlgebra(SuperAlgebra):
    """A ≀ S_d with basis σ⊗a, permutation-major."""

    base: SuperAlgebra | None = None
    degree: int = 0
    perms: list = dc_field(default_factory=list)
    multis: list = dc_field(default_factory=list)

    def element_index(self, sigma: Sequence[int], multi: Sequence[int]) -> int:
        return self.perms.index(tuple(sigma)) * len(self.multis) + self.multis.index(tuple(multi))

    def split(self, x: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        p, a = divmod(x, len(self.multis))
        return self.perms[p], self.multis[a]

    def perm_element(self, sigma: Sequence[int]) -> SparseVec:
        """σ ⊗ 1."""
        base_unit = _tensor_unit(self.base, self.degree, {m: i for i, m in enumerate(self.multis)})
        off = self.perms.index(tuple(sigma)) * len(self.multis)
        return {off + k: c for k, c in base_unit.items()}

    def tensor_element(self, multi: Sequence[int]) -> SparseVec:
        """e ⊗ a for a basis tensor a."""
        return {self.multis.index(tuple(multi)): 1}


def wreath_product_rule(A: SuperAlgebra, sigma, a, sigma2, b) -> tuple[tuple[int, ...], dict]:
    """(σ⊗a)(σ'⊗b) = σσ' ⊗ (a.σ')b."""
    sign, moved = act_on_multi(a, A.parities, sigma2)
    prod = tensor_power_product(A, moved, b)
    return perm_compose(sigma, sigma2), {k: A.field.norm(sign * v) for k, v in prod.items()}


def wreath(A: SuperAlgebra, d: int, audit: bool = True, name: str | None = None) -> WreathAlgebra:
    if d < 1:
        raise ValueError("d must be at least 1")
    f = A.field
    perms = permutations_lex(d)
    pindex = {p: i for i, p in enumerate(perms)}
    multis = tensor_power_multis(A, d)
    mindex = {m: i for i, m in enumerate(multis)}
    nm = len(multis)
    parities = [sum(A.parities[i] for i in m) % 2 for _ in perms for m in multis]
    labels = [
        perm_label(p) + "⊗" + ("⊗".join(A.labels[i] for i in m)) for p in perms for m in multis
    ]
    constants = {}
    for x in range(len(parities)):
        p1, a1 = divmod(x, nm)
        for y in range(len(parities)):
            p2, a2 = divmod(y, nm)
            sigma, prod = wreath_product_rule(A, perms[p1], multis[a1], perms[p2], multis[a2])
            off = pindex[sigma] * nm
            c = {off + mindex[k]: v for k, v in prod.items() if v}
            if c:
                constants[(x, y)] = c
    unit = _tensor_unit(A, d, mindex)
    alg = WreathAlgebra(
        f, parities, labels, constants, unit, name or f"{A.name}≀S{d}",
        base=A, degree=d, perms=perms, multis=multis,
    )
    if audit:
        alg.audit()
    return alg


def wreath_embeddings(W: WreathAlgebra) -> tuple[AlgebraMap, AlgebraMap]:
    """k S_d -> A≀S_d (σ -> σ⊗1) and A^{⊗d} -> A≀S_d (a -> e⊗a), both checked."""
    A, d = W.base, W.degree
    kS = group_algebra(d, A.field)
    Ad = tensor_power_algebra(A, d)
    perm_map = AlgebraMap(kS, W, [W.perm_element(p) for p in W.perms])
    tens_map = AlgebraMap(Ad, W, [W.tensor_element(m) for m in W.multis])
    perm_map.check()
    tens_map.check()
    return perm_map, tens_map


def sergeev(d: int, field: Field, audit: bool = True) -> WreathAlgebra:
    """W(d) = C(1) ≀ S_d."""
    return wreath(clifford(1, field), d, audit, name=f"W({d})")


def sergeev_generator(W: WreathAlgebra, j: int) -> SparseVec:
    """c_j = e ⊗ 1⊗..⊗c⊗..⊗1 (c in slot j, 1-based)."""
    multi = tuple(1 if k == j - 1 else 0 for k in range(W.degree))
    return W.tensor_element(multi)


def minus_algebra(A: SuperAlgebra) -> SuperAlgebra:
    """Same space, product a·b = (-1)^{|a||b|} ab."""
    f = A.field
    constants = {}
    for (i, j), c in A.constants.items():
        s = -1 if A.parities[i] and A.parities[j] else 1
        constants[(i, j)] = {k: f.norm(s * v) for k, v in c.items()}
    name = A.name[:-1] if A.name.endswith("⁻") else A.name + "⁻"
    alg = SuperAlgebra(f, list(A.parities), list(A.labels), constants, dict(A.unit), name)
    alg.audit()
    return alg


def tau_tensor_power(A: SuperAlgebra, tau: AlgebraMap, multi: Sequence[int]) -> dict[tuple[int, ...], object]:
    """τ_d(a_1⊗...⊗a_d) = (-1)^{sum_{i<j}|a_i||a_j|} τ(a_1)⊗...⊗τ(a_d)."""
    f = A.field
    odd = sum(A.parities[i] for i in multi)
    sign = f.sign(odd * (odd - 1) // 2)
    terms: dict = {(): sign}
    for i in multi:
        new: dict = {}
        for key, c in terms.items():
            for k, v in tau.images[i].items():
                new[key + (k,)] = f.norm(c * v)
        terms = new
    return {k: v for k, v in terms.items() if v}


def tau_antiautomorphism(A: SuperAlgebra, tau: AlgebraMap, d: int, W: WreathAlgebra | None = None) -> AlgebraMap:
    """Extend an antiautomorphism τ of A to A≀S_d, fixing every s_i.

    τ_d(σ⊗a) = σ^{-1} ⊗ (τ_d(a).σ^{-1}).
    """
    if tau.source is not A or tau.target is not A or not tau.anti:
        raise AlgebraError("τ must be flagged as an antiautomorphism of A")
    try:
        tau.check()
    except AlgebraError as exc:
        raise AlgebraError(f"τ is not an antiautomorphism: {exc}") from exc
    if not tau.is_bijective():
        raise AlgebraError("τ is not bijective")
    if W is None:
        W = wreath(A, d)
    f = A.field
    nm = len(W.multis)
    mindex = {m: i for i, m in enumerate(W.multis)}
    pindex = {p: i for i, p in enumerate(W.perms)}
    images = []
    for x in range(W.dim):
        sigma, a = W.split(x)
        inv = perm_inverse(sigma)
        off = pindex[inv] * nm
        img: SparseVec = {}
        for multi, c in tau_tensor_power(A, tau, a).items():
            sign, moved = act_on_multi(multi, A.parities, inv)
            k = off + mindex[moved]
            img[k] = f.norm(img.get(k, 0) + sign * c)
        images.append({k: v for k, v in img.items() if v})
    out = AlgebraMap(W, W, images, anti=True)
    out.check()
    return out

