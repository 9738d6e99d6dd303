"""Matrix factorizations ``(phi, psi)`` of a polynomial ``f`` and the standard method.

A pair of n x n polynomial matrices is a matrix factorization of ``f`` when
``phi @ psi == psi @ phi == f * I_n`` holds exactly. Every public constructor
checks this. Operations whose block identities guarantee validity may use
:meth:`MatrixFactorization.unchecked`, which still verifies when the
``MFKIT_DEBUG`` environment variable is set.

The standard method starts from ``([g1], [h1])`` and adjoins one summand
``g h`` at a time::

    phi' = [[C, -g I], [h I, D]]      psi' = [[D, g I], [-h I, C]]

so k summands give matrices of size ``2^(k-1)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    CommutationFailure,
    EmptyInput,
    NotAFactorization,
    SizeMismatch,
    TargetMismatch,
)
from .matrix import PolyMatrix, block, direct_sum, mat_mul
from .poly import Monomial, Polynomial, leading_split

ACCEL_MIN_SIZE = int(os.environ.get("MFKIT_ACCEL_MIN", "128"))


def _debug() -> bool:
    return os.environ.get("MFKIT_DEBUG", "").strip() not in ("", "0")


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking ``phi psi == psi phi == f I``.

    ``product`` names the first failing product (``"phi*psi"`` or
    ``"psi*phi"``) and ``position`` its first mismatching entry, 0-based and
    row-major. ``expected``/``actual`` are that entry's polynomials.
    """

    ok: bool
    size: int
    product: Optional[str] = None
    position: Optional[Tuple[int, int]] = None
    expected: Optional[Polynomial] = None
    actual: Optional[Polynomial] = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"verified: size {self.size}"
        if self.position is None:
            return f"not a matrix factorization: {self.reason}"
        i, j = self.position
        return (
            f"not a matrix factorization: {self.product} differs from f*I at ({i}, {j}): "
            f"expected {self.expected}, got {self.actual}"
        )


def _scalar_entry(f: Polynomial, i: int, j: int) -> Polynomial:
    return f if i == j else Polynomial()


def _first_scalar_mismatch(prod: PolyMatrix, f: Polynomial):
    n = prod.cols
    zero = Polynomial()
    for idx, e in enumerate(prod.entries):
        i, j = divmod(idx, n)
        want = f if i == j else zero
        if e != want:
            return (i, j), want, e
    return None


def _accelerated(a: PolyMatrix, b: PolyMatrix, f: Polynomial) -> Optional[bool]:
    if a.rows < ACCEL_MIN_SIZE:
        return None
    from . import _accel

    return _accel.product_is_scalar(a, b, f)


def check_pair(phi: PolyMatrix, psi: PolyMatrix, f) -> VerifyReport:
    """Verify a candidate pair without constructing a :class:`MatrixFactorization`."""
    f = Polynomial.coerce(f)
    if not (phi.is_square() and psi.is_square()) or phi.shape != psi.shape:
        return VerifyReport(False, phi.rows, reason=f"shapes {phi.shape} and {psi.shape} are not equal squares")
    n = phi.rows
    if n < 1:
        return VerifyReport(False, n, reason="size must be at least 1")
    if f.is_zero():
        return VerifyReport(False, n, reason="target polynomial is zero")
    for name, a, b in (("phi*psi", phi, psi), ("psi*phi", psi, phi)):
        if _accelerated(a, b, f):
            continue
        bad = _first_scalar_mismatch(mat_mul(a, b), f)
        if bad is not None:
            pos, want, got = bad
            return VerifyReport(False, n, name, pos, want, got)
    return VerifyReport(True, n)


def mismatch_positions(phi: PolyMatrix, psi: PolyMatrix, f) -> Tuple[list, list]:
    """All mismatching entries of ``phi psi`` and of ``psi phi`` against ``f I``."""
    f = Polynomial.coerce(f)
    out = []
    for a, b in ((phi, psi), (psi, phi)):
        prod = mat_mul(a, b)
        n = prod.cols
        out.append([divmod(k, n) for k, e in enumerate(prod.entries) if e != _scalar_entry(f, *divmod(k, n))])
    return out[0], out[1]


def suspect_entry(phi: PolyMatrix, psi: PolyMatrix, f) -> Optional[Tuple[str, int, int]]:
    """Guess the single corrupted entry behind a failed verification.

    Changing ``phi[r][c]`` alone disturbs only row ``r`` of ``phi psi`` and only
    column ``c`` of ``psi phi``; a change to ``psi[r][c]`` does the transposed.
    Returns ``("phi" | "psi", r, c)`` when the mismatch pattern fits exactly
    one such change, else ``None``.
    """
    left, right = mismatch_positions(phi, psi, f)
    if not left or not right:
        return None
    lrows = {i for i, _ in left}
    lcols = {j for _, j in left}
    rrows = {i for i, _ in right}
    rcols = {j for _, j in right}
    if len(lrows) == 1 and len(rcols) == 1:
        return ("phi", lrows.pop(), rcols.pop())
    if len(lcols) == 1 and len(rrows) == 1:
        return ("psi", rrows.pop(), lcols.pop())
    return None


class MatrixFactorization:
    """A verified matrix factorization of a nonzero polynomial ``f``."""

    __slots__ = ("f", "phi", "psi")

    def __init__(self, phi: PolyMatrix, psi: PolyMatrix, f):
        f = Polynomial.coerce(f)
        if not (phi.is_square() and psi.is_square()) or phi.shape != psi.shape:
            raise SizeMismatch(f"phi is {phi.rows}x{phi.cols} but psi is {psi.rows}x{psi.cols}")
        report = check_pair(phi, psi, f)
        if not report:
            raise NotAFactorization(report)
        self._set(phi, psi, f)

    def _set(self, phi, psi, f):
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixFactorization is immutable")

    @classmethod
    def unchecked(cls, phi: PolyMatrix, psi: PolyMatrix, f) -> "MatrixFactorization":
        """Internal constructor for results whose validity follows from a block identity."""
        if _debug():
            return cls(phi, psi, f)
        obj = cls.__new__(cls)
        obj._set(phi, psi, Polynomial.coerce(f))
        return obj

    @property
    def n(self) -> int:
        return self.phi.rows

    size = n

    def verify(self) -> VerifyReport:
        return check_pair(self.phi, self.psi, self.f)

    def __eq__(self, other):
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return self.f == other.f and self.phi == other.phi and self.psi == other.psi

    def __hash__(self):
        return hash((self.f, self.phi, self.psi))

    def __repr__(self):
        return f"MatrixFactorization(f={str(self.f)!r}, size={self.n})"

    def to_json(self) -> dict:
        return {"f": str(self.f), "size": self.n, "phi": self.phi.to_json(), "psi": self.psi.to_json()}

    @classmethod
    def from_json(cls, data) -> "MatrixFactorization":
        phi, psi, f = parse_json_pair(data)
        return cls(phi, psi, f)


def mf_new(phi, psi, f) -> MatrixFactorization:
    if not isinstance(phi, PolyMatrix):
        phi = PolyMatrix.from_rows(phi)
    if not isinstance(psi, PolyMatrix):
        psi = PolyMatrix.from_rows(psi)
    return MatrixFactorization(phi, psi, f)


def verify(x: MatrixFactorization) -> VerifyReport:
    return x.verify()


def parse_json_pair(data) -> Tuple[PolyMatrix, PolyMatrix, Polynomial]:
    """Decode the factorization JSON schema without verifying the pair.

    Raises ``ValueError`` (or a parse error) when the object does not follow
    ``{"f": str, "size": int, "phi": [[str]], "psi": [[str]]}``.
    """
    if not isinstance(data, dict):
        raise ValueError("factorization must be a JSON object")
    missing = {"f", "size", "phi", "psi"} - set(data)
    if missing:
        raise ValueError(f"missing keys: {', '.join(sorted(missing))}")
    if not isinstance(data["f"], str):
        raise ValueError("'f' must be a string")
    size = data["size"]
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise ValueError("'size' must be a positive integer")
    phi = PolyMatrix.from_json(data["phi"])
    psi = PolyMatrix.from_json(data["psi"])
    if phi.shape != (size, size) or psi.shape != (size, size):
        raise ValueError(f"'size' is {size} but phi is {phi.rows}x{phi.cols} and psi is {psi.rows}x{psi.cols}")
    return phi, psi, Polynomial.parse(data["f"])


# ---------------------------------------------------------------------------
# the standard method


def one_by_one(g, h) -> MatrixFactorization:
    g, h = Polynomial.coerce(g), Polynomial.coerce(h)
    if g.is_zero() or h.is_zero():
        raise ValueError("one_by_one needs nonzero g and h")
    return MatrixFactorization.unchecked(
        PolyMatrix(1, 1, (g,)), PolyMatrix(1, 1, (h,)), g * h
    )


def add_summand(x: MatrixFactorization, g, h) -> MatrixFactorization:
    """Factorization of ``f + g h`` of twice the size of ``x``."""
    g, h = Polynomial.coerce(g), Polynomial.coerce(h)
    gh = g * h
    if gh.is_zero():
        raise ValueError("the adjoined summand g*h is zero")
    n = x.n
    c, d = x.phi, x.psi
    gi, hi = PolyMatrix.scalar(g, n), PolyMatrix.scalar(h, n)
    phi = block([[c, -gi], [hi, d]])
    psi = block([[d, gi], [-hi, c]])
    return MatrixFactorization.unchecked(phi, psi, x.f + gh)


def combine_commuting(x1: MatrixFactorization, x2: MatrixFactorization) -> MatrixFactorization:
    """Factorization of ``f1 + f2`` from factorizations whose cross blocks commute.

    With ``x1 = (C1, D1)`` and ``x2 = (C2, D2)`` the result is
    ``([[C1, -D2], [C2, D1]], [[D1, D2], [-C2, C1]])``. This needs
    ``C1 D2 == D2 C1`` and ``C2 D1 == D1 C2``; both are checked up front.
    """
    if x1.n != x2.n:
        raise SizeMismatch(f"sizes {x1.n} and {x2.n} differ")
    c1, d1, c2, d2 = x1.phi, x1.psi, x2.phi, x2.psi
    if mat_mul(c1, d2) != mat_mul(d2, c1):
        raise CommutationFailure("C1 D2 != D2 C1")
    if mat_mul(c2, d1) != mat_mul(d1, c2):
        raise CommutationFailure("C2 D1 != D1 C2")
    phi = block([[c1, -d2], [c2, d1]])
    psi = block([[d1, d2], [-c2, c1]])
    return MatrixFactorization(phi, psi, x1.f + x2.f)


def standard_method(summands: Sequence[Tuple]) -> MatrixFactorization:
    """Left fold of :func:`add_summand` over ``(g, h)`` pairs, first pair as the seed."""
    pairs = list(summands)
    if not pairs:
        raise EmptyInput("standard method needs at least one summand")
    x = one_by_one(*pairs[0])
    for g, h in pairs[1:]:
        x = add_summand(x, g, h)
    return _checked(x)


def _checked(x: MatrixFactorization) -> MatrixFactorization:
    report = x.verify()
    if not report:
        raise NotAFactorization(report)
    return x


def split_pairs(monomials: Iterable[Monomial]) -> List[Tuple[Polynomial, Polynomial]]:
    out = []
    for m in monomials:
        g, h = leading_split(m)
        out.append((g.to_poly(), h.to_poly()))
    return out


def standard_from_monomials(monomials: Iterable[Monomial]) -> MatrixFactorization:
    """Standard method on monomials in the given order, each split by ``leading_split``."""
    return standard_method(split_pairs(monomials))


def standard_factorize(f) -> MatrixFactorization:
    """Standard method on the expanded form of ``f``, terms in graded-lex descending order."""
    f = Polynomial.coerce(f)
    if f.is_zero():
        raise EmptyInput("cannot factor the zero polynomial")
    return standard_from_monomials(f.monomials())


def mf_direct_sum(x1: MatrixFactorization, x2: MatrixFactorization) -> MatrixFactorization:
    if x1.f != x2.f:
        raise TargetMismatch(f"targets differ: {x1.f} and {x2.f}")
    return _checked(
        MatrixFactorization.unchecked(direct_sum(x1.phi, x2.phi), direct_sum(x1.psi, x2.psi), x1.f)
    )
