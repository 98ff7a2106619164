"""Exact Laurent polynomials in q with half-integer exponents.

Exponents are stored doubled, so ``q^{3/2}`` lives under key 3. Coefficients
are Python integers. Values are immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class HalfLaurent:
    """A finite sum of ``c * q^(d/2)`` with integer ``c`` and integer ``d``.

    Parameters
    ----------
    terms : mapping or iterable of pairs, optional
        Map from doubled exponent to coefficient, or ``(doubled_exp, coef)``
        pairs. Repeated exponents are summed and zero coefficients dropped.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for d, c in items:
                if c:
                    acc[int(d)] = acc.get(int(d), 0) + int(c)
        self._terms = {d: c for d, c in acc.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "HalfLaurent":
        return cls({0: c})

    @classmethod
    def mono(cls, doubled_exp: int, coef: int = 1) -> "HalfLaurent":
        """``coef * q^(doubled_exp/2)``."""
        return cls({doubled_exp: coef})

    @classmethod
    def qpow(cls, exp) -> "HalfLaurent":
        """``q^exp`` for an integer, Fraction or half-integer float exponent."""
        return cls({_double(exp): 1})

    # -- basic protocol -----------------------------------------------
    @property
    def terms(self) -> list[tuple[int, int]]:
        """Sorted ``(doubled_exp, coef)`` pairs."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfLaurent.const(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "HalfLaurent":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for d, c in other._terms.items():
            acc[d] = acc.get(d, 0) + c
        return HalfLaurent(acc)

    __radd__ = __add__

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({d: -c for d, c in self._terms.items()})

    def __sub__(self, other) -> "HalfLaurent":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "HalfLaurent":
        return (-self) + other

    def __mul__(self, other) -> "HalfLaurent":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[int, int] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                acc[d1 + d2] = acc.get(d1 + d2, 0) + c1 * c2
        return HalfLaurent(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HalfLaurent":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (d, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial is not a unit")
            return HalfLaurent({d * n: c ** (-n)})
        out = HalfLaurent.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, doubled: int) -> "HalfLaurent":
        """Multiply by ``q^(doubled/2)``."""
        return HalfLaurent({d + doubled: c for d, c in self._terms.items()})

    def bar(self) -> "HalfLaurent":
        """Substitute ``q -> q^-1``."""
        return HalfLaurent({-d: c for d, c in self._terms.items()})

    def at_one(self) -> int:
        return sum(self._terms.values())

    def has_integer_exponents(self) -> bool:
        return all(d % 2 == 0 for d in self._terms)

    def min_doubled(self) -> int:
        return min(self._terms)

    def max_doubled(self) -> int:
        return max(self._terms)

    def exact_div(self, other: "HalfLaurent") -> "HalfLaurent":
        """Quotient ``self / other``; raises ArithmeticError on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return HalfLaurent()
        dmax, dmin = other.max_doubled(), other.min_doubled()
        lead = other._terms[dmax]
        floor = self.min_doubled() - dmin
        rem = self
        quot: dict[int, int] = {}
        while rem:
            top = rem.max_doubled()
            t = top - dmax
            c, r = divmod(rem._terms[top], lead)
            if r or t < floor:
                raise ArithmeticError("polynomial division left a remainder")
            quot[t] = c
            rem = rem - other * HalfLaurent({t: c})
        return HalfLaurent(quot)

    # -- serialization ------------------------------------------------
    def to_json(self) -> list[list[int]]:
        return [[c, d] for d, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "HalfLaurent":
        return cls((int(d), int(c)) for c, d in data)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + _qtext(d)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"HalfLaurent({self})"


def _qtext(d: int) -> str:
    if d == 2:
        return "q"
    if d % 2 == 0:
        return f"q^{d // 2}"
    return f"q^{d}/2"


def _double(exp) -> int:
    f = Fraction(exp) * 2
    if f.denominator != 1:
        raise ValueError(f"exponent {exp} is not a half-integer")
    return int(f)


def _coerce(x):
    if isinstance(x, HalfLaurent):
        return x
    if isinstance(x, int):
        return HalfLaurent.const(x)
    return None


ZERO = HalfLaurent()
ONE = HalfLaurent.const(1)
Q = HalfLaurent.mono(2)
QINV = HalfLaurent.mono(-2)
Z = Q - QINV  # q - q^-1


def add(p: HalfLaurent, r: HalfLaurent) -> HalfLaurent:
    return p + r


def mul(p: HalfLaurent, r: HalfLaurent) -> HalfLaurent:
    return p * r


def qpow(exp) -> HalfLaurent:
    return HalfLaurent.qpow(exp)


def qint(j: int) -> HalfLaurent:
    """Quantum integer ``[j] = q^(j-1) + q^(j-3) + ... + q^(1-j)``."""
    if j < 0:
        raise ValueError("qint needs j >= 0")
    return HalfLaurent({2 * (j - 1 - 2 * i): 1 for i in range(j)})


def qfactorial(n: int) -> HalfLaurent:
    out = ONE
    for j in range(2, n + 1):
        out = out * qint(j)
    return out


def qbinom(n: int, k: int) -> HalfLaurent:
    """Quantum binomial ``[n]! / ([k]! [n-k]!)``, zero outside ``0 <= k <= n``."""
    if k < 0 or k > n:
        return ZERO
    return qfactorial(n).exact_div(qfactorial(k) * qfactorial(n - k))


def monomial_ratio(p: HalfLaurent, r: HalfLaurent):
    """Return ``(sign, halfexp)`` with ``p == sign * q^halfexp * r``, else None.

    ``halfexp`` is an int when integral, otherwise a Fraction.
    """
    if r.is_zero():
        raise ZeroDivisionError("monomial_ratio against the zero polynomial")
    if p.is_zero():
        return None
    d = p.min_doubled() - r.min_doubled()
    c = p._terms[p.min_doubled()]
    c0 = r._terms[r.min_doubled()]
    if c == c0:
        sign = 1
    elif c == -c0:
        sign = -1
    else:
        return None
    if p != r.shift(d) * sign:
        return None
    half = Fraction(d, 2)
    return sign, (int(half) if half.denominator == 1 else half)
