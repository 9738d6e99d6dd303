"""Parser and AST for polynomials written in summand-reduced shape.

The grammar is small::

    expr   := sign? term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := INT | INT '/' INT | VAR power? | '(' expr ')' power?
    power  := '^' INT

Multiplication may be implicit (``xy^2z``, ``(x+y)(x-y)``). Whitespace is
ignored. A leading sign is accepted on any ``expr`` so that the canonical
rendering of a polynomial (``-x + y``) always parses back.

Two consumers share the parse tree. :func:`parse_polynomial` evaluates it to
a :class:`~mfkit.poly.Polynomial`. :func:`parse` keeps the written factored
structure as a :class:`SummandForm` and never expands products.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import List, Optional, Sequence, Tuple, Union

from .errors import EmptyInput, ParseError
from .poly import ONE, ZERO, Monomial, Polynomial, monomial_count, pack_exponents, unpack_exponents

# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # INT VAR OP LP RP EOF
    text: str
    pos: int


_OPS = set("+-*/^")


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("INT", text[i:j], i))
            i = j
        elif "a" <= ch <= "z":
            out.append(Token("VAR", ch, i))
            i += 1
        elif ch in _OPS:
            out.append(Token("OP", ch, i))
            i += 1
        elif ch == "(":
            out.append(Token("LP", ch, i))
            i += 1
        elif ch == ")":
            out.append(Token("RP", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    out.append(Token("EOF", "", n))
    return out


# ---------------------------------------------------------------------------
# parse tree


@dataclass(frozen=True)
class Num:
    value: Union[int, Fraction]
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    power: int
    pos: int


@dataclass(frozen=True)
class Group:
    body: "Sum"
    power: int
    pos: int


@dataclass(frozen=True)
class Product:
    factors: Tuple[Union[Num, Var, Group], ...]
    pos: int


@dataclass(frozen=True)
class Sum:
    # (sign, term) with sign +1 or -1
    terms: Tuple[Tuple[int, Product], ...]
    pos: int


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, ch: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == ch

    def parse_top(self) -> Sum:
        if self.tok.kind == "EOF":
            raise EmptyInput("empty expression")
        body = self.parse_sum()
        if self.tok.kind != "EOF":
            t = self.tok
            what = "')'" if t.kind == "RP" else repr(t.text)
            raise ParseError(f"unexpected {what}", t.pos)
        return body

    def parse_sum(self) -> Sum:
        start = self.tok.pos
        sign = 1
        if self.at_op("+") or self.at_op("-"):
            sign = -1 if self.take().text == "-" else 1
        terms = [(sign, self.parse_product())]
        while self.at_op("+") or self.at_op("-"):
            sign = -1 if self.take().text == "-" else 1
            terms.append((sign, self.parse_product()))
        return Sum(tuple(terms), start)

    def _starts_factor(self) -> bool:
        return self.tok.kind in ("INT", "VAR", "LP")

    def parse_product(self) -> Product:
        start = self.tok.pos
        if not self._starts_factor():
            raise ParseError("expected a term", self.tok.pos)
        factors = [self.parse_factor()]
        while True:
            if self.at_op("*"):
                self.take()
                if not self._starts_factor():
                    raise ParseError("expected a factor after '*'", self.tok.pos)
                factors.append(self.parse_factor())
            elif self._starts_factor():
                factors.append(self.parse_factor())
            else:
                break
        return Product(tuple(factors), start)

    def parse_power(self) -> int:
        if not self.at_op("^"):
            return 1
        self.take()
        if self.tok.kind != "INT":
            raise ParseError("expected an integer exponent", self.tok.pos)
        return int(self.take().text)

    def parse_factor(self):
        t = self.tok
        if t.kind == "INT":
            self.take()
            if self.at_op("/"):
                self.take()
                if self.tok.kind != "INT":
                    raise ParseError("expected a denominator", self.tok.pos)
                d = self.take()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.pos)
                return Num(Fraction(int(t.text), int(d.text)), t.pos)
            return Num(int(t.text), t.pos)
        if t.kind == "VAR":
            self.take()
            return Var(t.text, self.parse_power(), t.pos)
        if t.kind == "LP":
            self.take()
            if self.tok.kind == "RP":
                raise ParseError("empty parentheses", self.tok.pos)
            body = self.parse_sum()
            if self.tok.kind != "RP":
                raise ParseError("expected ')'", self.tok.pos)
            self.take()
            return Group(body, self.parse_power(), t.pos)
        raise ParseError("expected a factor", t.pos)


def parse_tree(text: str) -> Sum:
    return _Parser(text).parse_top()


# ---------------------------------------------------------------------------
# evaluation


def _guard(fn, pos: int):
    try:
        return fn()
    except (OverflowError, ValueError) as exc:
        raise ParseError(str(exc), pos) from None


def _pow(p: Polynomial, e: int, pos: int) -> Polynomial:
    out = ONE
    for _ in range(e):
        out = _guard(lambda: out * p, pos)
    return out


def _eval_factor(f) -> Polynomial:
    if isinstance(f, Num):
        return Polynomial.const(f.value)
    if isinstance(f, Var):
        return _guard(lambda: Polynomial.var(f.name, f.power) if f.power else ONE, f.pos)
    return _pow(_eval_sum(f.body), f.power, f.pos)


def _eval_product(t: Product) -> Polynomial:
    out = ONE
    for f in t.factors:
        v = _eval_factor(f)
        out = _guard(lambda: out * v, f.pos)
    return out


def _eval_sum(s: Sum) -> Polynomial:
    out = ZERO
    for sign, t in s.terms:
        v = _eval_product(t)
        out = out + v if sign > 0 else out - v
    return out


def parse_polynomial(text: str) -> Polynomial:
    """Parse and fully expand ``text``. ``"0"`` gives the zero polynomial."""
    return _eval_sum(parse_tree(text))


def _written_monomials(s: Sum) -> Tuple[Monomial, ...]:
    """Monomials of a sum in the order they were written, like terms merged."""
    acc: dict = {}
    for sign, t in s.terms:
        v = _eval_product(t)
        if sign < 0:
            v = -v
        for m in v.monomials():
            acc[m.key] = acc.get(m.key, 0) + m.coeff
    return tuple(Monomial(c, k) for k, c in acc.items() if c != 0)


# ---------------------------------------------------------------------------
# summand form


@dataclass(frozen=True)
class MonomialTerm:
    m: Monomial

    def expand(self) -> Polynomial:
        return self.m.to_poly()


@dataclass(frozen=True)
class Factor:
    """One factor ``g_ji`` of a product term, monomials kept in written order."""

    monomials: Tuple[Monomial, ...]

    def __post_init__(self):
        if not self.monomials:
            raise ValueError("a factor must be nonzero")

    @classmethod
    def of(cls, p: Polynomial) -> "Factor":
        return cls(tuple(p.monomials()))

    @property
    def poly(self) -> Polynomial:
        return Polynomial(self.monomials)

    @property
    def size(self) -> int:
        return len(self.monomials)

    def scaled(self, c) -> "Factor":
        return Factor(tuple(Monomial(m.coeff * c, m.key) for m in self.monomials))


@dataclass(frozen=True)
class ProductTerm:
    factors: Tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product term needs at least one factor")

    @property
    def counts(self) -> Tuple[int, ...]:
        return tuple(f.size for f in self.factors)

    def expand(self) -> Polynomial:
        out = ONE
        for f in self.factors:
            out = out * f.poly
        return out


Term = Union[MonomialTerm, ProductTerm]


@dataclass(frozen=True)
class SummandForm:
    terms: Tuple[Term, ...]

    @property
    def monomial_terms(self) -> Tuple[MonomialTerm, ...]:
        return tuple(t for t in self.terms if isinstance(t, MonomialTerm))

    @property
    def product_terms(self) -> Tuple[ProductTerm, ...]:
        return tuple(t for t in self.terms if isinstance(t, ProductTerm))

    @property
    def s(self) -> int:
        return len(self.monomial_terms)

    @property
    def l(self) -> int:
        return len(self.product_terms)

    def __str__(self) -> str:
        return render(self)


def _build_term(sign: int, t: Product) -> Optional[Term]:
    if not any(isinstance(f, Group) for f in t.factors):
        v = _eval_product(t)
        if sign < 0:
            v = -v
        if v.is_zero():
            return None
        (m,) = v.monomials()
        return MonomialTerm(m)

    const = Fraction(sign)
    factors: List[Factor] = []
    from_group: List[bool] = []
    run: Optional[Polynomial] = None  # consecutive bare variables merge into one factor

    def flush():
        nonlocal run
        if run is not None:
            factors.append(Factor.of(run))
            from_group.append(False)
            run = None

    for f in t.factors:
        if isinstance(f, Num):
            const *= f.value
            continue
        if isinstance(f, Var):
            if f.power:
                v = _eval_factor(f)
                run = v if run is None else run * v
            continue
        flush()
        body = _eval_sum(f.body)
        if body.is_zero():
            raise ParseError("factor is zero", f.pos)
        if f.power == 0:
            continue
        if not body.variables:
            (c,) = body.terms.values()
            const *= Fraction(c) ** f.power
            continue
        written = _written_monomials(f.body)
        for _ in range(f.power):
            factors.append(Factor(written))
            from_group.append(True)
    flush()

    if const == 0:
        return None
    if not factors:
        return MonomialTerm(Monomial(const, 0))
    if const != 1:
        target = from_group.index(True) if True in from_group else 0
        factors[target] = factors[target].scaled(const)
    return ProductTerm(tuple(factors))


def parse(text: str) -> SummandForm:
    """Parse ``text`` into a :class:`SummandForm` without expanding products.

    Top-level terms without parentheses become monomial terms. Any term with
    a parenthesized factor becomes a product term. Constants and the term's
    sign are folded into its first parenthesized factor. Adjacent bare
    variables form one single-monomial factor. ``(g)^k`` repeats ``g``.
    """
    tree = parse_tree(text)
    terms = [t for t in (_build_term(sign, p) for sign, p in tree.terms) if t is not None]
    if not terms:
        raise EmptyInput("expression has no nonzero terms")
    return SummandForm(tuple(terms))


def expand(sf: SummandForm) -> Polynomial:
    out = ZERO
    for t in sf.terms:
        out = out + t.expand()
    return out


# ---------------------------------------------------------------------------
# printing


def _render_monomials(ms: Sequence[Monomial]) -> str:
    parts = []
    for i, m in enumerate(ms):
        s = str(m)
        if i == 0:
            parts.append(s)
        elif s.startswith("-"):
            parts.append(" - " + s[1:])
        else:
            parts.append(" + " + s)
    return "".join(parts)


def _render_product(t: ProductTerm) -> str:
    out = []
    prev_bare = False
    for f in t.factors:
        bare = (
            f.size == 1
            and f.monomials[0].coeff == 1
            and f.monomials[0].key != 0
            and not prev_bare
        )
        out.append(str(f.monomials[0]) if bare else f"({_render_monomials(f.monomials)})")
        prev_bare = bare
    return "".join(out)


def render(sf: SummandForm) -> str:
    """Structure-preserving rendering; ``parse(render(sf)) == sf``."""
    parts = []
    for i, t in enumerate(sf.terms):
        s = str(t.m) if isinstance(t, MonomialTerm) else _render_product(t)
        if i == 0:
            parts.append(s)
        elif s.startswith("-"):
            parts.append(" - " + s[1:])
        else:
            parts.append(" + " + s)
    return "".join(parts)


# ---------------------------------------------------------------------------
# classification


class Classification(enum.Enum):
    PLAIN = "Plain"
    SIMPLE_SUMMAND_REDUCED = "SimpleSummandReduced"
    SUMMAND_REDUCED = "SummandReduced"


@dataclass(frozen=True)
class ClassifyResult:
    kind: Classification
    reasons: Tuple[str, ...] = ()
    lints: Tuple[str, ...] = ()


def _half_key(key: int) -> Optional[int]:
    """Key of ``a`` when ``key`` is the key of ``a^2``, else ``None``."""
    exps = unpack_exponents(key)
    if any(e % 2 for _, e in exps):
        return None
    return pack_exponents({v: e // 2 for v, e in exps})


def _perfect_square(p: Polynomial) -> bool:
    """``a^2 + 2ab + b^2`` or ``a^2 - 2ab + b^2`` for monomials ``a``, ``b``."""
    if len(p.terms) != 3:
        return False
    squares = [k for k, c in p.terms.items() if c == 1 and _half_key(k) is not None]
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            ka, kb = squares[i], squares[j]
            mids = [k for k in p.terms if k not in (ka, kb)]
            if len(mids) != 1:
                continue
            a, b = _half_key(ka), _half_key(kb)
            if mids[0] == a + b and p.terms[mids[0]] in (2, -2):
                return True
    return False


def lint_product(t: ProductTerm) -> Optional[str]:
    if len(t.factors) != 2:
        return None
    e = t.expand()
    shown = _render_product(t)
    if len(e.terms) == 2 and all(abs(c) == 1 for c in e.terms.values()):
        return f"{shown} expands to {e}; writing it expanded gives a smaller factorization"
    if _perfect_square(e):
        return f"{shown} expands to the square {e}; writing it expanded gives a smaller factorization"
    return None


def classify(sf: SummandForm) -> ClassifyResult:
    s, products = sf.s, sf.product_terms
    reasons = []
    if s == 0 and len(products) < 2:
        reasons.append("without monomial terms at least two product terms are required")
    if s > 0 and not products:
        reasons.append("no product term")
    for j, t in enumerate(products):
        n = monomial_count(t.expand())
        if n <= sum(t.counts):
            reasons.append(f"product term {j + 1} expands to {n} monomials, not more than its {sum(t.counts)} written ones")
    if not any(len(t.factors) >= 2 for t in products):
        reasons.append("no product term has two or more factors")
    lints = tuple(x for x in (lint_product(t) for t in products) if x)
    if reasons:
        return ClassifyResult(Classification.PLAIN, tuple(reasons), lints)
    simple = (
        len(sf.terms) >= 2
        and all(len(t.factors) == 2 for t in products)
        and any(t.counts[0] * t.counts[1] >= 6 for t in products)
    )
    kind = Classification.SIMPLE_SUMMAND_REDUCED if simple else Classification.SUMMAND_REDUCED
    return ClassifyResult(kind, (), lints)


# ---------------------------------------------------------------------------
# size prediction


@dataclass(frozen=True)
class SizePrediction:
    """Standard versus improved size for one summand form.

    ``expanded_count`` is the true number of monomials after expansion and
    ``formula_count`` is ``s + sum_j prod_i p_ji``; they differ exactly when
    terms cancel or merge during expansion.
    """

    standard_size: int
    improved_size: int
    ratio: Union[int, Fraction]
    expanded_count: int
    formula_count: int
    factor_total: int  # sum_j sum_i p_ji
    s: int

    @property
    def cancellation(self) -> bool:
        return self.expanded_count != self.formula_count

    @property
    def theorem_ratio(self) -> Union[int, Fraction]:
        """``2^(sum_j prod_i p_ji - sum_j sum_i p_ji)``."""
        return _pow2(self.formula_count - self.s - self.factor_total)


def _pow2(e: int) -> Union[int, Fraction]:
    return 2 ** e if e >= 0 else Fraction(1, 2 ** -e)


def predict_sizes(sf: SummandForm) -> SizePrediction:
    products = sf.product_terms
    sum_p = sum(sum(t.counts) for t in products)
    prod_p = sum(prod(t.counts) for t in products)
    n = monomial_count(expand(sf))
    standard = 2 ** (n - 1) if n >= 1 else 0
    improved = _pow2(sum_p + sf.s - 1)
    ratio = Fraction(standard) / improved
    if ratio.denominator == 1:
        ratio = ratio.numerator
    return SizePrediction(standard, improved, ratio, n, sf.s + prod_p, sum_p, sf.s)
