"""Tensor products of matrix factorizations, morphisms, and permutation witnesses.

Additive products (target ``f + g``, size ``2nm``), written with
``A1 = A (x) I_m`` and ``1B = I_n (x) B``::

    yoshino     [[phi1,  1phi'], [-1psi', psi1]]    [[psi1, -1phi'], [1psi',  phi1]]
    variant 1   [[1phi', psi1 ], [phi1,  -1psi']]   [[1psi', psi1 ], [phi1,  -1phi']]
    variant 2   [[psi1, -1psi'], [1phi',  phi1 ]]   [[phi1,  1psi'], [-1phi', psi1 ]]
    variant 3   [[-1psi', phi1], [psi1,   1phi']]   [[-1phi', phi1], [psi1,   1psi']]

Multiplicative products (target ``f g``, size ``2nm``)::

    mult_tensor          (diag(phi(x)phi', phi(x)phi'),  diag(psi(x)psi', psi(x)psi'))
    mult_tensor_variant  the same blocks placed anti-diagonally

Every result is verified before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Sequence, Tuple

from .errors import (
    ChainMismatch,
    DimensionMismatch,
    NoValidPlacement,
    NotAMorphism,
    SizeMismatch,
    TargetMismatch,
    WitnessNotFound,
)
from .factorization import MatrixFactorization
from .matrix import PermutationMatrix, PolyMatrix, block, conjugate, direct_sum, kron, mat_mul
from .poly import Polynomial

MULT_FORMS = ("tilde", "tilde_prime")


def _left(a: PolyMatrix, m: int) -> PolyMatrix:
    return kron(a, PolyMatrix.identity(m))


def _right(n: int, b: PolyMatrix) -> PolyMatrix:
    return kron(PolyMatrix.identity(n), b)


# ---------------------------------------------------------------------------
# additive products


def _yoshino_blocks(x: MatrixFactorization, y: MatrixFactorization, k: int):
    n, m = x.n, y.n
    p1, s1 = _left(x.phi, m), _left(x.psi, m)
    q1, t1 = _right(n, y.phi), _right(n, y.psi)
    if k == 0:
        return [[p1, q1], [-t1, s1]], [[s1, -q1], [t1, p1]]
    if k == 1:
        return [[q1, s1], [p1, -t1]], [[t1, s1], [p1, -q1]]
    if k == 2:
        return [[s1, -t1], [q1, p1]], [[p1, t1], [-q1, s1]]
    if k == 3:
        return [[-t1, p1], [s1, q1]], [[-q1, p1], [s1, t1]]
    raise ValueError(f"Yoshino variant must be 0, 1, 2 or 3, got {k!r}")


def yoshino_variant(x: MatrixFactorization, y: MatrixFactorization, k: int) -> MatrixFactorization:
    """Additive tensor product, ``k = 0`` for the original and 1..3 for the variants."""
    phi, psi = _yoshino_blocks(x, y, k)
    return MatrixFactorization(block(phi), block(psi), x.f + y.f)


def yoshino(x: MatrixFactorization, y: MatrixFactorization) -> MatrixFactorization:
    return yoshino_variant(x, y, 0)


# ---------------------------------------------------------------------------
# multiplicative products


def _mult(x, y, anti: bool) -> MatrixFactorization:
    a, b = kron(x.phi, y.phi), kron(x.psi, y.psi)
    if anti:
        phi, psi = block([[None, a], [a, None]]), block([[None, b], [b, None]])
    else:
        phi, psi = direct_sum(a, a), direct_sum(b, b)
    return MatrixFactorization(phi, psi, x.f * y.f)


def mult_tensor(x: MatrixFactorization, y: MatrixFactorization) -> MatrixFactorization:
    return _mult(x, y, anti=False)


def mult_tensor_variant(x: MatrixFactorization, y: MatrixFactorization) -> MatrixFactorization:
    return _mult(x, y, anti=True)


def mult_by_form(which: str) -> Callable:
    if which in ("tilde", 0):
        return mult_tensor
    if which in ("tilde_prime", 1):
        return mult_tensor_variant
    raise ValueError(f"multiplicative form must be 'tilde' or 'tilde_prime', got {which!r}")


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """A pair ``(alpha, beta)`` with ``alpha phi1 == phi2 beta`` and ``psi2 alpha == beta psi1``."""

    __slots__ = ("source", "dest", "alpha", "beta")

    def __init__(self, source: MatrixFactorization, dest: MatrixFactorization, alpha: PolyMatrix, beta: PolyMatrix):
        if source.f != dest.f:
            raise TargetMismatch(f"source targets {source.f} but destination targets {dest.f}")
        want = (dest.n, source.n)
        if alpha.shape != want or beta.shape != want:
            raise DimensionMismatch(f"alpha and beta must be {want[0]}x{want[1]}")
        if mat_mul(alpha, source.phi) != mat_mul(dest.phi, beta):
            raise NotAMorphism("alpha*phi1 != phi2*beta", "i")
        if mat_mul(dest.psi, alpha) != mat_mul(beta, source.psi):
            raise NotAMorphism("psi2*alpha != beta*psi1", "ii")
        for k, v in (("source", source), ("dest", dest), ("alpha", alpha), ("beta", beta)):
            object.__setattr__(self, k, v)

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.dest, self.alpha, self.beta) == (other.source, other.dest, other.alpha, other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"Morphism({self.source.n} -> {self.dest.n}, f={str(self.source.f)!r})"


def morph_new(source, dest, alpha, beta) -> Morphism:
    return Morphism(source, dest, alpha, beta)


def morph_identity(x: MatrixFactorization) -> Morphism:
    i = PolyMatrix.identity(x.n)
    return Morphism(x, x, i, i)


def morph_scalar(x: MatrixFactorization, c) -> Morphism:
    s = PolyMatrix.scalar(Polynomial.coerce(c), x.n)
    return Morphism(x, x, s, s)


def morph_compose(m2: Morphism, m1: Morphism) -> Morphism:
    """``m2 after m1``."""
    if m1.dest != m2.source:
        raise ChainMismatch("destination of the first morphism is not the source of the second")
    return Morphism(m1.source, m2.dest, mat_mul(m2.alpha, m1.alpha), mat_mul(m2.beta, m1.beta))


def morph_mult_tensor(mf: Morphism, mg: Morphism, which: str = "tilde") -> Morphism:
    """The morphism tensor ``(diag(a_f (x) a_g, same), diag(b_f (x) b_g, same))``.

    The same diagonal layout serves both multiplicative forms.
    """
    op = mult_by_form(which)
    a = kron(mf.alpha, mg.alpha)
    b = kron(mf.beta, mg.beta)
    return Morphism(op(mf.source, mg.source), op(mf.dest, mg.dest), direct_sum(a, a), direct_sum(b, b))


# Candidate placements of (alpha (x) 1, beta (x) 1) for the additive products,
# tried in this order. "ab" means diag(alpha (x) 1, beta (x) 1).
YOSHINO_PLACEMENTS: Tuple[Tuple[str, str], ...] = (
    ("aa", "bb"),
    ("ab", "ba"),
    ("ba", "ba"),
    ("ba", "ab"),
    ("ab", "ab"),
)


def find_yoshino_placement(mf: Morphism, yg: MatrixFactorization, variant: int) -> Tuple[Morphism, Tuple[str, str]]:
    """First placement in :data:`YOSHINO_PLACEMENTS` giving a valid morphism.

    Returns the morphism from ``X_f (+) Y`` to ``X_f' (+) Y`` (additive
    product of the chosen variant) together with the placement used.
    """
    src = yoshino_variant(mf.source, yg, variant)
    dst = yoshino_variant(mf.dest, yg, variant)
    m = yg.n
    parts = {"a": _left(mf.alpha, m), "b": _left(mf.beta, m)}
    for pa, pb in YOSHINO_PLACEMENTS:
        alpha = direct_sum(parts[pa[0]], parts[pa[1]])
        beta = direct_sum(parts[pb[0]], parts[pb[1]])
        try:
            return Morphism(src, dst, alpha, beta), (pa, pb)
        except NotAMorphism:
            continue
    raise NoValidPlacement(f"no candidate placement gives a morphism for Yoshino variant {variant}")


def morph_yoshino_left(mf: Morphism, yg: MatrixFactorization, variant: int = 0) -> Morphism:
    return find_yoshino_placement(mf, yg, variant)[0]


# ---------------------------------------------------------------------------
# permutation witnesses
#
# Each witness is built from index labels: rows of both sides are labelled by
# tuples, and row r of the target side is sent to the row of the source side
# carrying the same label. The result is then checked by conjugation.


def _index(dims: Sequence[int], label: Sequence[int]) -> int:
    idx = 0
    for d, v in zip(dims, label):
        idx = idx * d + v
    return idx


def _witness(src_dims, dst_dims, dst_to_src: Callable[[tuple], tuple]) -> PermutationMatrix:
    size = 1
    for d in dst_dims:
        size *= d
    image = [0] * size
    for label in iproduct(*(range(d) for d in dst_dims)):
        image[_index(dst_dims, label)] = _index(src_dims, dst_to_src(label))
    return PermutationMatrix(image)


def _check_witness(p: PermutationMatrix, src: MatrixFactorization, dst: MatrixFactorization, what: str):
    if conjugate(p, src.phi) != dst.phi or conjugate(p, src.psi) != dst.psi:
        raise WitnessNotFound(f"{what}: labelled permutation does not conjugate one side onto the other")
    return p


def commutativity_witness(x: MatrixFactorization, y: MatrixFactorization, which: str = "tilde") -> PermutationMatrix:
    """``P`` with ``P (X*Y) P^T == Y*X`` for both matrices; equals ``I_2 (x) S_{n,m}``."""
    op = mult_by_form(which)
    n, m = x.n, y.n
    # X*Y rows are (c, i, j); Y*X rows are (c, j, i)
    p = _witness((2, n, m), (2, m, n), lambda t: (t[0], t[2], t[1]))
    return _check_witness(p, op(x, y), op(y, x), "commutativity")


@dataclass(frozen=True)
class AssociativityReport:
    exact_equal: bool
    witness: PermutationMatrix
    left: MatrixFactorization  # (X*Y)*Z
    right: MatrixFactorization  # X*(Y*Z)


def associativity_check(x, y, z, which: str = "tilde") -> AssociativityReport:
    """Compare ``(X*Y)*Z`` with ``X*(Y*Z)``; exact equality holds when ``X`` has size 1."""
    op = mult_by_form(which)
    left = op(op(x, y), z)
    right = op(x, op(y, z))
    n, m, k = x.n, y.n, z.n
    # left rows (c1, c2, i, j, l); right rows (c1, i, c2, j, l)
    p = _witness((2, 2, n, m, k), (2, n, 2, m, k), lambda t: (t[0], t[2], t[1], t[3], t[4]))
    _check_witness(p, left, right, "associativity")
    exact = left.phi == right.phi and left.psi == right.psi
    return AssociativityReport(exact, p, left, right)


def distributivity_witness(x1, x2, y, side: str = "left", which: str = "tilde") -> PermutationMatrix:
    """``P`` conjugating ``(X1 + X2)*Y`` onto ``(X1*Y) + (X2*Y)`` (``side='left'``).

    With ``side='right'`` it conjugates ``Y*(X1 + X2)`` onto ``(Y*X1) + (Y*X2)``.
    Here ``+`` is the direct sum and ``*`` the chosen multiplicative product.
    """
    from .factorization import mf_direct_sum

    if x1.n != x2.n:
        raise SizeMismatch(f"sizes {x1.n} and {x2.n} differ")
    if x1.f != x2.f:
        raise TargetMismatch(f"targets differ: {x1.f} and {x2.f}")
    op = mult_by_form(which)
    n, m = x1.n, y.n
    s = mf_direct_sum(x1, x2)
    if side == "left":
        src = op(s, y)
        dst = mf_direct_sum(op(x1, y), op(x2, y))
        # src rows (c, b, i, j); dst rows (b, c, i, j)
        p = _witness((2, 2, n, m), (2, 2, n, m), lambda t: (t[1], t[0], t[2], t[3]))
    elif side == "right":
        src = op(y, s)
        dst = mf_direct_sum(op(y, x1), op(y, x2))
        # src rows (c, j, b, i); dst rows (b, c, j, i)
        p = _witness((2, m, 2, n), (2, 2, m, n), lambda t: (t[1], t[2], t[0], t[3]))
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return _check_witness(p, src, dst, "distributivity")
