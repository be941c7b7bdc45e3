"""Exact scalar arithmetic: multivariate polynomials over Q.

Every coefficient in the library is a :class:`Scalar`.  A Scalar is a
multivariate polynomial with Fraction coefficients in named indeterminates,
kept in normal form (zero coefficients dropped, monomials sorted), so that
equality is decidable by plain dict comparison.  There is no floating point
anywhere and no silent division: dividing by anything other than a nonzero
constant raises.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

# A monomial is a sorted tuple of (variable name, positive exponent).
Monomial = tuple[tuple[str, int], ...]
ScalarLike = Union["Scalar", Fraction, int]

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged: dict[str, int] = dict(a)
    for name, exp in b:
        merged[name] = merged.get(name, 0) + exp
    return tuple(sorted(merged.items()))


class Scalar:
    """Polynomial over Q in named indeterminates, immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {
            m: c for m, c in (terms or {}).items() if c
        }

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar({_ONE_MONO: Fraction(value)})

    @staticmethod
    def var(name: str) -> "Scalar":
        return Scalar({((name, 1),): Fraction(1)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant scalar: {self}")
        return self.terms.get(_ONE_MONO, Fraction(0))

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    # -- ring operations ----------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.of(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = terms.get(mono)
            if c is None:
                terms[mono] = coeff
            else:
                c = c + coeff
                if c:
                    terms[mono] = c
                else:
                    del terms[mono]
        out = Scalar.__new__(Scalar)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        out = Scalar.__new__(Scalar)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.of(other) + (-self)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.of(other)
        if not self.terms or not other.terms:
            return ZERO
        # fast path: multiplication by a constant
        if other.is_constant():
            c0 = other.terms[_ONE_MONO]
            out = Scalar.__new__(Scalar)
            out.terms = {m: c * c0 for m, c in self.terms.items()}
            return out
        if self.is_constant():
            return other * self
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                c = terms.get(mono)
                if c is None:
                    terms[mono] = c1 * c2
                else:
                    c = c + c1 * c2
                    if c:
                        terms[mono] = c
                    else:
                        del terms[mono]
        out = Scalar.__new__(Scalar)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.of(other)
        if not other.is_constant():
            raise ZeroDivisionError(
                "division only by nonzero constants; denominator-cleared "
                f"identities avoid dividing by {other!r}"
            )
        c = other.constant_value()
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        return self * (Fraction(1) / c)

    # -- substitution ---------------------------------------------------

    def substitute(self, assignment: Mapping[str, ScalarLike]) -> "Scalar":
        """Substitute scalars for variables; unmentioned variables survive."""
        result = ZERO
        for mono, coeff in self.terms.items():
            term = Scalar.of(coeff)
            for name, exp in mono:
                if name in assignment:
                    term = term * (Scalar.of(assignment[name]) ** exp)
                else:
                    term = term * (Scalar.var(name) ** exp)
            result = result + term
        return result

    # -- comparison / display -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            factors = [
                name if exp == 1 else f"{name}^{exp}" for name, exp in mono
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(coeff) + "*" + "*".join(factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


ZERO = Scalar()
ONE = Scalar.of(1)


def rat(p: int, q: int = 1) -> Scalar:
    return Scalar.of(Fraction(p, q))


def ssum(items: Iterable[ScalarLike]) -> Scalar:
    total = ZERO
    for item in items:
        total = total + Scalar.of(item)
    return total
