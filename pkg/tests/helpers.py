"""Random inputs shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from mfkit import Monomial, PolyMatrix, Polynomial, standard_factorize
from mfkit.poly import pack_exponents

VARS = "xyz"


def random_monomial_key(rng: random.Random, variables: str = VARS, max_exp: int = 2) -> int:
    exps = {v: rng.randint(0, max_exp) for v in rng.sample(variables, rng.randint(1, len(variables)))}
    exps = {v: e for v, e in exps.items() if e}
    if not exps:
        exps = {rng.choice(variables): 1}
    return pack_exponents(exps)


def random_poly(rng: random.Random, max_terms: int = 3, variables: str = VARS, max_exp: int = 2,
                fractions: bool = False) -> Polynomial:
    """Nonzero polynomial with 1..max_terms distinct non-constant monomials."""
    keys = set()
    target = rng.randint(1, max_terms)
    while len(keys) < target:
        keys.add(random_monomial_key(rng, variables, max_exp))
    terms = {}
    for k in keys:
        c = rng.choice([1, -1, 2, -3])
        if fractions and rng.random() < 0.3:
            c = Fraction(c, rng.choice([2, 3]))
        terms[k] = c
    return Polynomial(terms)


def random_mf(rng: random.Random, max_terms: int = 3, fractions: bool = False):
    """Verified standard-method factorization of a random polynomial (size <= 4)."""
    return standard_factorize(random_poly(rng, max_terms, fractions=fractions))


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.6,
                  fractions: bool = False) -> PolyMatrix:
    entries = []
    for _ in range(rows * cols):
        if rng.random() < density:
            entries.append(random_poly(rng, 2, fractions=fractions))
        else:
            entries.append(Polynomial())
    return PolyMatrix(rows, cols, entries)


def monomial(text: str) -> Monomial:
    (m,) = Polynomial.parse(text).monomials()
    return m
