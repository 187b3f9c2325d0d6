"""Exact sparse Laurent polynomials in the half-power variable v, with q = v**2.

Coefficients are arbitrary-precision integers.  Values are normalized on
construction (no stored zero coefficients), so equality is structural and the
canonical form is unique.  Instances are immutable and hashable and may be
shared freely between threads.

The half-power variable exists because pairings ⟨λ, ρ̌⟩ are half-integers off
the coroot lattice; every honest q-power is an even v-power.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in v (convention: q = v^2)."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean: Dict[int, int] = {}
        if coeffs:
            for exp, c in coeffs.items():
                if c:
                    clean[int(exp)] = int(c)
        self._coeffs = clean
        self._hash: int | None = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def v_power(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def q_power(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        """coeff * q^exp, stored as an even v-power."""
        return cls({2 * exp: coeff})

    # -- inspection --------------------------------------------------------

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def items(self) -> Tuple[Tuple[int, int], ...]:
        """Terms as (exponent, coefficient), ascending in the exponent."""
        return tuple(sorted(self._coeffs.items()))

    def exponents(self) -> Tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def is_constant(self) -> bool:
        return not self._coeffs or set(self._coeffs) == {0}

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial %s is not constant" % self)
        return self._coeffs.get(0, 0)

    def is_q_polynomial(self) -> bool:
        """True when every exponent is even and nonnegative (a member of Z[q])."""
        return all(e >= 0 and e % 2 == 0 for e in self._coeffs)

    def q_coefficients(self) -> Dict[int, int]:
        """Coefficient map {k: c} of Σ c q^k; requires all v-exponents even."""
        if any(e % 2 for e in self._coeffs):
            raise ValueError("polynomial %s has odd v-powers" % self)
        return {e // 2: c for e, c in self._coeffs.items()}

    def min_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self._coeffs)

    def max_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self._coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a polynomial are not defined")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exp: int) -> "LaurentPoly":
        """Multiply by v^exp."""
        return LaurentPoly({e + exp: c for e, c in self._coeffs.items()})

    def subst_v_inverse(self) -> "LaurentPoly":
        """The image under v ↦ v^{-1}."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    # -- evaluation ----------------------------------------------------------

    def eval_v(self, v0) -> Fraction:
        """Exact evaluation at a nonzero rational v = v0."""
        v0 = Fraction(v0)
        if v0 == 0 and any(e < 0 for e in self._coeffs):
            raise ZeroDivisionError("negative exponents cannot be evaluated at v = 0")
        return sum((c * v0 ** e for e, c in self._coeffs.items()), Fraction(0))

    def eval_q(self, q0) -> Fraction:
        """Exact evaluation at q = q0; requires all v-exponents even."""
        q0 = Fraction(q0)
        if any(e % 2 for e in self._coeffs):
            raise ValueError("polynomial %s has odd v-powers; evaluate at v instead" % self)
        if q0 == 0 and any(e < 0 for e in self._coeffs):
            raise ZeroDivisionError("negative exponents cannot be evaluated at q = 0")
        return sum((c * q0 ** (e // 2) for e, c in self._coeffs.items()), Fraction(0))

    # -- serialization and display -------------------------------------------

    def to_json(self) -> dict:
        return {"v": {str(e): c for e, c in sorted(self._coeffs.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data["v"].items()})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items()):
            if e == 0:
                body = str(abs(c))
            else:
                token = "v" if e == 1 else "v^%d" % e
                body = token if abs(c) == 1 else "%d*%s" % (abs(c), token)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "LaurentPoly(%r)" % (dict(sorted(self._coeffs.items())),)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._coeffs == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
Q = LaurentPoly({2: 1})


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Dispatch-style ring arithmetic: op is one of 'add', 'sub', 'mul'."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown operation %r" % op)


def as_poly(x) -> LaurentPoly:
    """Coerce an int or LaurentPoly to LaurentPoly."""
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError("cannot interpret %r as a Laurent polynomial" % (x,))
