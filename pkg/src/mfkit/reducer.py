"""The improved factorization algorithm for summand-reduced polynomials.

For ``f = t_1 + ... + t_s + g_11...g_1m_1 + ... + g_l1...g_lm_l``:

1. the monomials ``t_1 + ... + t_s`` go through the standard method (size ``2^(s-1)``);
2. each factor ``g_ji`` goes through the standard method and the factors of a
   product are folded left with a multiplicative product;
3. all parts are folded left with an additive product, monomial part first.

The result has size ``2^(sum p_ji + s - 1)`` where ``p_ji`` counts the
monomials of ``g_ji``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import List, NamedTuple, Optional, Tuple

from .errors import EmptyInput, NotAFactorization, ShapeInfeasible
from .expr import (
    Factor,
    MonomialTerm,
    ProductTerm,
    SizePrediction,
    SummandForm,
    expand,
    predict_sizes,
)
from .factorization import MatrixFactorization, standard_factorize, standard_from_monomials
from .poly import Monomial, monomial_count, pack_exponents
from .tensor import mult_by_form, yoshino_variant

# Largest expanded monomial count for which compare_methods builds the
# standard-method factorization (size 2^(N-1)) instead of using the formula.
STANDARD_BUILD_LIMIT = 10


class Improved(NamedTuple):
    mf: MatrixFactorization
    prediction: SizePrediction
    form: SummandForm  # the form actually factored (differs only under auto_expand)


def effective_form(sf: SummandForm, auto_expand: bool = False) -> SummandForm:
    """``sf`` with product terms that would not gain replaced by their expansion.

    A product term gains when its improved contribution ``2^(sum p - 1)`` is
    smaller than the standard contribution ``2^(n - 1)`` of its ``n``
    expanded monomials, i.e. when ``sum p < n``. With ``auto_expand`` off the
    written form is returned unchanged.
    """
    if not auto_expand:
        return sf
    terms = []
    for t in sf.terms:
        if isinstance(t, ProductTerm) and len(t.factors) > 1:
            e = t.expand()
            if sum(t.counts) > monomial_count(e):
                terms.append(ProductTerm((Factor.of(e),)))
                continue
        terms.append(t)
    return SummandForm(tuple(terms))


def _product_mf(t: ProductTerm, mult) -> MatrixFactorization:
    parts = [standard_from_monomials(f.monomials) for f in t.factors]
    acc = parts[0]
    for x in parts[1:]:
        acc = mult(acc, x)
    return acc


def improved_factorize(
    sf: SummandForm,
    yoshino: int = 0,
    mult_form: str = "tilde",
    auto_expand: bool = False,
) -> Improved:
    """Factor ``sf`` with the improved algorithm.

    ``yoshino`` picks the additive product (0 for the original, 1..3 for the
    variants) and ``mult_form`` the multiplicative one (``"tilde"`` or
    ``"tilde_prime"``). Every choice gives a factorization of the same size.
    """
    if not sf.terms:
        raise EmptyInput("no terms to factor")
    target = expand(sf)
    if target.is_zero():
        raise EmptyInput("the expression expands to zero")
    form = effective_form(sf, auto_expand)
    mult = mult_by_form(mult_form)

    parts: List[MatrixFactorization] = []
    monos = [t.m for t in form.monomial_terms]
    if monos:
        if expand(SummandForm(form.monomial_terms)).is_zero():
            raise EmptyInput("the monomial terms cancel to zero")
        parts.append(standard_from_monomials(monos))
    parts.extend(_product_mf(t, mult) for t in form.product_terms)

    acc = parts[0]
    for x in parts[1:]:
        acc = yoshino_variant(acc, x, yoshino)

    prediction = predict_sizes(form)
    if acc.f != target:
        raise NotAFactorization(f"improved result targets {acc.f}, expected {target}")
    if acc.n != prediction.improved_size:
        raise AssertionError(f"improved size {acc.n} differs from predicted {prediction.improved_size}")
    return Improved(acc, prediction, form)


def compare_methods(
    sf: SummandForm,
    build_limit: int = STANDARD_BUILD_LIMIT,
    **options,
) -> dict:
    """Sizes and verification status of the standard and improved methods.

    The standard method runs on the expanded polynomial (graded-lex order,
    ``leading_split`` for each monomial) when it has at most ``build_limit``
    monomials; otherwise its size comes from ``2^(N-1)`` and
    ``verified_standard`` is ``None``.
    """
    improved = improved_factorize(sf, **options)
    pred = improved.prediction
    target = expand(sf)
    n = monomial_count(target)
    verified_standard: Optional[bool] = None
    standard_size = pred.standard_size
    if n <= build_limit:
        std = standard_factorize(target)
        verified_standard = bool(std.verify())
        standard_size = std.n
    ratio = pred.ratio
    if not pred.cancellation and ratio != pred.theorem_ratio:
        raise AssertionError(f"measured ratio {ratio} differs from the size formula {pred.theorem_ratio}")
    return {
        "standard_size": standard_size,
        "improved_size": improved.mf.n,
        "ratio": ratio,
        "verified_standard": verified_standard,
        "verified_improved": bool(improved.mf.verify()),
        "cancellation": pred.cancellation,
    }


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class Shape:
    """Shape of a summand-reduced instance.

    ``m[j]`` is the number of factors of product term ``j`` and ``p[j][i]``
    the number of monomials of its ``i``-th factor.
    """

    s: int
    m: Tuple[int, ...]
    p: Tuple[Tuple[int, ...], ...]
    vars: str = "xyz"
    max_deg: int = 3

    @property
    def l(self) -> int:
        return len(self.m)

    def validate(self) -> None:
        if self.s < 0:
            raise ShapeInfeasible("s must be non-negative")
        if len(self.p) != len(self.m):
            raise ShapeInfeasible(f"{len(self.m)} product terms but {len(self.p)} monomial-count lists")
        for j, (mj, pj) in enumerate(zip(self.m, self.p)):
            if mj < 1 or len(pj) != mj:
                raise ShapeInfeasible(f"product term {j + 1}: m={mj} but {len(pj)} monomial counts")
            if any(x < 1 for x in pj):
                raise ShapeInfeasible(f"product term {j + 1}: monomial counts must be at least 1")
        if self.s == 0 and not self.m:
            raise ShapeInfeasible("shape has no terms")
        if not self.vars or len(set(self.vars)) != len(self.vars):
            raise ShapeInfeasible("variables must be distinct letters")
        if self.max_deg < 1:
            raise ShapeInfeasible("max_deg must be at least 1")
        space = comb(len(self.vars) + self.max_deg, self.max_deg) - 1
        need = max([self.s] + [x for pj in self.p for x in pj])
        if need > space:
            raise ShapeInfeasible(f"{need} distinct monomials requested but only {space} exist")

    @classmethod
    def parse_p(cls, text: str) -> Tuple[Tuple[int, ...], ...]:
        """``"3,2;2,2"`` -> ``((3, 2), (2, 2))``."""
        try:
            return tuple(tuple(int(x) for x in grp.split(",")) for grp in text.split(";") if grp.strip())
        except ValueError as exc:
            raise ShapeInfeasible(f"bad monomial counts {text!r}") from exc

    @staticmethod
    def format_counts(p) -> str:
        return ";".join(",".join(str(x) for x in pj) for pj in p)


def _random_monomials(rng: random.Random, count: int, variables: str, max_deg: int) -> List[Monomial]:
    seen, out = set(), []
    while len(out) < count:
        deg = rng.randint(1, max_deg)
        exps: dict = {}
        for _ in range(deg):
            v = rng.choice(variables)
            exps[v] = exps.get(v, 0) + 1
        key = pack_exponents(exps)
        if key in seen:
            continue
        seen.add(key)
        out.append(Monomial(rng.choice((1, -1)), key))
    return out


MAX_REROLLS = 1000


def generate_instance(seed: int, shape: Shape) -> SummandForm:
    """Deterministic random instance of ``shape`` whose expansion has no cancellation.

    Monomials within a factor (and among the ``t_i``) are distinct; whole
    instances are redrawn until the expansion has exactly
    ``s + sum_j prod_i p_ji`` monomials.
    """
    shape.validate()
    rng = random.Random(seed)
    for _ in range(MAX_REROLLS):
        terms: list = [MonomialTerm(m) for m in _random_monomials(rng, shape.s, shape.vars, shape.max_deg)]
        for pj in shape.p:
            terms.append(ProductTerm(tuple(
                Factor(tuple(_random_monomials(rng, x, shape.vars, shape.max_deg))) for x in pj
            )))
        sf = SummandForm(tuple(terms))
        if not predict_sizes(sf).cancellation:
            return sf
    raise ShapeInfeasible(f"no cancellation-free instance found in {MAX_REROLLS} draws")
