"""Sparse multivariate polynomials with exact rational coefficients.

Variables are single lowercase letters. A monomial's exponent vector is packed
into one Python int: variable ``a`` occupies the most significant 32-bit field
and ``z`` the least significant, so

* multiplying monomials is integer addition of keys, and
* comparing keys compares exponent vectors lexicographically (a > b > ... > z).

Coefficients are ``int`` when integral and ``fractions.Fraction`` otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .errors import UndefinedSplit

FIELD_BITS = 32
NVARS = 26
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
_FIELD_MASK = (1 << FIELD_BITS) - 1

Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def _shift(var: str) -> int:
    if len(var) != 1 or not ("a" <= var <= "z"):
        raise ValueError(f"variable names are single lowercase letters, got {var!r}")
    return FIELD_BITS * (NVARS - 1 - (ord(var) - ord("a")))


def pack_exponents(exponents: Mapping[str, int]) -> int:
    key = 0
    for var, e in exponents.items():
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} of {var!r} out of range")
        key += e << _shift(var)
    return key


@lru_cache(maxsize=1 << 16)
def unpack_exponents(key: int) -> tuple:
    """Return ``((var, exp), ...)`` for the nonzero exponents, in variable order."""
    out = []
    for v in range(NVARS):
        e = (key >> (FIELD_BITS * (NVARS - 1 - v))) & _FIELD_MASK
        if e:
            out.append((chr(ord("a") + v), e))
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def key_degree(key: int) -> int:
    return sum(e for _, e in unpack_exponents(key))


def _render_key(key: int) -> str:
    return "".join(v if e == 1 else f"{v}^{e}" for v, e in unpack_exponents(key))


def _render_term(c: Coeff, key: int, first: bool) -> str:
    mag = abs(c)
    body = _render_key(key)
    if not body:
        body = str(mag)
    elif mag != 1:
        body = f"{mag}{body}"
    if first:
        return f"-{body}" if c < 0 else body
    return f" - {body}" if c < 0 else f" + {body}"


def _order(key: int):
    return (key_degree(key), key)


@dataclass(frozen=True)
class Monomial:
    """A single term ``coeff * x^a y^b ...``.

    The zero monomial is ``Monomial(0, 0)``; any other key with a zero
    coefficient is rejected.
    """

    coeff: Coeff
    key: int = 0

    def __post_init__(self):
        c = _norm(self.coeff)
        object.__setattr__(self, "coeff", c)
        if c == 0 and self.key != 0:
            raise ValueError("zero coefficient is only allowed on the zero monomial")

    @classmethod
    def from_exponents(cls, coeff, exponents: Mapping[str, int]) -> "Monomial":
        return cls(coeff, pack_exponents({v: e for v, e in exponents.items() if e}))

    @property
    def exponents(self) -> dict:
        return dict(unpack_exponents(self.key))

    @property
    def degree(self) -> int:
        return key_degree(self.key)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        c = self.coeff * other.coeff
        return Monomial(c, 0 if c == 0 else self.key + other.key)

    def to_poly(self) -> "Polynomial":
        return Polynomial._from_terms({self.key: self.coeff} if self.coeff else {})

    def __str__(self):
        return "0" if self.coeff == 0 else _render_term(self.coeff, self.key, True)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed keys to nonzero coefficients."""

    __slots__ = ("_terms", "_hash", "_degree")

    def __init__(self, terms: Union[Mapping[int, Coeff], Iterable[Monomial], None] = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else ((m.key, m.coeff) for m in terms)
            for key, c in items:
                c = _norm(c)
                if not c:
                    continue
                s = acc.get(key, 0) + c
                if s:
                    acc[key] = _norm(s)
                else:
                    acc.pop(key, None)
        self._terms = acc
        self._hash = None
        self._degree = None

    @classmethod
    def _from_terms(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        p._degree = None
        return p

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _norm(c)
        return cls._from_terms({0: c} if c else {})

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "Polynomial":
        return cls._from_terms({pack_exponents({name: exponent}): 1})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        from .expr import parse_polynomial

        return parse_polynomial(text)

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, Monomial):
            return value.to_poly()
        if isinstance(value, str):
            return cls.parse(value)
        return cls.const(value)

    @property
    def terms(self) -> Mapping[int, Coeff]:
        return self._terms

    def monomials(self) -> Iterator[Monomial]:
        """Terms in graded-lex descending order."""
        for key in sorted(self._terms, key=_order, reverse=True):
            yield Monomial(self._terms[key], key)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def degree(self) -> int:
        if self._degree is None:
            self._degree = max((key_degree(k) for k in self._terms), default=0)
        return self._degree

    @property
    def variables(self) -> tuple:
        seen = set()
        for k in self._terms:
            seen.update(v for v, _ in unpack_exponents(k))
        return tuple(sorted(seen))

    def coefficients_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                del out[k]
        return Polynomial._from_terms(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_terms({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if self.degree + other.degree > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed exponent range")
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            return Polynomial._from_terms({ka + kb: _norm(ca * cb)})
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Polynomial._from_terms({k: _norm(c) for k, c in out.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, Monomial)):
            return self._terms == Polynomial.coerce(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        return "".join(
            _render_term(m.coeff, m.key, i == 0) for i, m in enumerate(self.monomials())
        )

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


ZERO = Polynomial._from_terms({})
ONE = Polynomial._from_terms({0: 1})


def monomial_count(p: Polynomial) -> int:
    return len(p.terms)


def leading_split(m: Monomial) -> tuple:
    """Split a nonzero monomial into ``(g, h)`` with ``g * h == m``.

    The coefficient and the alphabetically first variable (at its full
    exponent) go to ``g``; the remaining variables form ``h``. A monomial in a
    single variable ``c x^e`` with ``e >= 2`` splits as
    ``(c x^(e//2), x^(e - e//2))``, so ``x^2 -> (x, x)`` and ``x^3 -> (x, x^2)``.
    Constants split as ``(c, 1)``.
    """
    if m.coeff == 0:
        raise UndefinedSplit("the zero monomial has no split")
    exps = unpack_exponents(m.key)
    if not exps:
        return Monomial(m.coeff, 0), Monomial(1, 0)
    if len(exps) == 1:
        var, e = exps[0]
        if e == 1:
            return Monomial(m.coeff, m.key), Monomial(1, 0)
        lo = e // 2
        return (
            Monomial(m.coeff, pack_exponents({var: lo})),
            Monomial(1, pack_exponents({var: e - lo})),
        )
    var, e = exps[0]
    g_key = pack_exponents({var: e})
    return Monomial(m.coeff, g_key), Monomial(1, m.key - g_key)
