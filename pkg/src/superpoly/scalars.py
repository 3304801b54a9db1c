"""Exact scalars over GF(p) (p an odd prime) or the rationals.

Scalars are plain Python values: canonical residues ``0 <= x < p`` for GF(p),
and ``int`` or ``fractions.Fraction`` for Q (an ``int`` is a fraction with
denominator one).  A :class:`Field` carries the arithmetic and the
canonicalisation rules, so every other module is field-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
import sympy

Scalar = Union[int, Fraction]

MAX_PRIME = 2**31


@dataclass(frozen=True)
class Field:
    """Descriptor of the ground field; ``characteristic == 0`` means Q."""

    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, (int, np.integer)) or isinstance(c, bool):
            raise TypeError("characteristic must be an integer")
        c = int(c)
        object.__setattr__(self, "characteristic", c)
        if c < 0:
            raise ValueError(f"negative characteristic {c}")
        if c == 2:
            raise ValueError("characteristic two excluded")
        if c != 0:
            if c >= MAX_PRIME:
                raise ValueError(f"characteristic {c} exceeds 2**31")
            if not sympy.isprime(c):
                raise ValueError(f"characteristic {c} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    def __repr__(self) -> str:
        return f"Field({self.name})"

    # scalar arithmetic

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction or string into canonical form."""
        if isinstance(x, str):
            return self.parse(x)
        if self.is_rational:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        p = self.characteristic
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    def norm(self, x) -> Scalar:
        if isinstance(x, np.integer):
            x = int(x)
        if self.is_rational:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        return x % self.characteristic

    def inv(self, x) -> Scalar:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return self.norm(1 / Fraction(x))
        return pow(int(x), -1, self.characteristic)

    def div(self, a, b) -> Scalar:
        return self.norm(a * self.inv(b))

    def sign(self, parity: int) -> Scalar:
        """(-1)**parity as a field element."""
        return self.norm(-1 if parity % 2 else 1)

    # arrays

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        return self.normalize(a)

    def zeros(self, shape) -> np.ndarray:
        a = np.empty(shape, dtype=object)
        a.fill(0)
        return a

    def identity(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = 1
        return a

    def normalize(self, a: np.ndarray) -> np.ndarray:
        if a.size == 0:
            return a.astype(object)
        if self.is_rational:
            out = np.empty(a.shape, dtype=object)
            flat_in, flat_out = a.reshape(-1), out.reshape(-1)
            for i, x in enumerate(flat_in):
                flat_out[i] = self.norm(Fraction(x) if isinstance(x, (float, np.floating)) else x)
            return out
        out = np.empty(a.shape, dtype=object)
        flat_in, flat_out = a.reshape(-1), out.reshape(-1)
        for i, x in enumerate(flat_in):
            flat_out[i] = self(x)
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        out = np.dot(a, b)
        if self.is_rational:
            return out
        return np.mod(out, self.characteristic)

    # serialisation

    def serialize(self, x) -> str:
        if self.is_rational:
            f = Fraction(x)
            return f"{f.numerator}/{f.denominator}"
        return str(self(x))

    def parse(self, s: str) -> Scalar:
        s = s.strip()
        if self.is_rational:
            return self(Fraction(s))
        if "/" in s:
            num, den = s.split("/")
            return self(Fraction(int(num), int(den)))
        return int(s) % self.characteristic


def make_field(characteristic: int) -> Field:
    """Return Q for 0 or GF(p) for an odd prime p < 2**31."""
    return Field(characteristic)


QQ = Field(0)
