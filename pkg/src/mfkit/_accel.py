"""Packed integer kernels for large polynomial-matrix products.

Verification of a size-n factorization multiplies two n x n polynomial
matrices. Above a few hundred rows the Python path (dicts of Python ints) is
the bottleneck, so integer-coefficient matrices are packed into flat numpy
arrays and the term-pair expansion runs in a numba ``@njit`` kernel.

Backends:

* ``numba``  -- the jitted loop kernel (default when numba imports).
* ``numpy``  -- a vectorized pure-numpy expansion with identical output.

Set ``MFKIT_DISABLE_NUMBA=1`` to force the numpy path. Packing refuses inputs
whose coefficients are not integers or whose worst-case accumulated
coefficient or packed exponent could leave int64; callers then use the exact
Python path.
"""
from __future__ import annotations

import os
from typing import NamedTuple, Optional

import numpy as np

from .poly import FIELD_BITS, NVARS, Polynomial, unpack_exponents

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

NUMBA_DISABLED = os.environ.get("MFKIT_DISABLE_NUMBA", "").strip() not in ("", "0")
HAS_NUMBA = numba is not None and not NUMBA_DISABLED

_INT64_SAFE = 1 << 62


def try_jit(func=None, **kwargs):
    """``numba.njit`` when available and enabled, otherwise the plain function."""
    def wrap(f):
        if HAS_NUMBA:
            return numba.njit(**kwargs)(f)
        return f

    if callable(func):
        return wrap(func)
    return wrap


def default_backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


class Packed(NamedTuple):
    """CSR layout over nonzero entries, each entry a run of (key, coef) terms."""

    rows: int
    cols: int
    row_ptr: np.ndarray   # rows + 1, into entry arrays
    col: np.ndarray       # per nonzero entry
    term_ptr: np.ndarray  # nnz + 1, into term arrays
    keys: np.ndarray      # packed exponents over the compact variable basis
    coefs: np.ndarray


class Basis(NamedTuple):
    variables: tuple
    bits: int


def _var_exponents(matrices):
    keys = set()
    for m in matrices:
        if hasattr(m, "row_nonzeros"):
            for row in m.row_nonzeros():
                for _, e in row:
                    keys.update(e.terms)
        else:
            for e in m.entries:
                keys.update(e.terms)
    used: dict = {}
    for k in keys:
        for v, x in unpack_exponents(k):
            if x > used.get(v, 0):
                used[v] = x
    return used


def make_basis(*matrices, headroom: int = 2) -> Optional[Basis]:
    """Compact exponent packing wide enough for products of ``headroom`` factors."""
    used = _var_exponents(matrices)
    variables = tuple(sorted(used))
    top = max(used.values(), default=0) * headroom
    bits = max(1, int(top).bit_length())
    if bits * max(1, len(variables)) > 62:
        return None
    return Basis(variables, bits)


def _compact_key(key: int, index: dict, bits: int, nvars: int) -> int:
    out = 0
    for v, e in unpack_exponents(key):
        out |= e << (bits * (nvars - 1 - index[v]))
    return out


def _expand_key(ckey: int, basis: Basis) -> int:
    nv = len(basis.variables)
    mask = (1 << basis.bits) - 1
    out = 0
    for idx, v in enumerate(basis.variables):
        e = (ckey >> (basis.bits * (nv - 1 - idx))) & mask
        if e:
            out += e << (FIELD_BITS * (NVARS - 1 - (ord(v) - ord("a"))))
    return out


def pack(m, basis: Basis) -> Optional[Packed]:
    index = {v: i for i, v in enumerate(basis.variables)}
    nv = len(basis.variables)
    compact: dict = {}
    row_ptr = [0]
    col, term_ptr, keys, coefs = [], [0], [], []
    for nz in m.row_nonzeros():
        for j, e in nz:
            col.append(j)
            for k, c in e.terms.items():
                if not isinstance(c, int) or abs(c) >= _INT64_SAFE:
                    return None
                ck = compact.get(k)
                if ck is None:
                    ck = compact[k] = _compact_key(k, index, basis.bits, nv)
                keys.append(ck)
                coefs.append(c)
            term_ptr.append(len(keys))
        row_ptr.append(len(col))
    i64 = np.int64
    return Packed(
        m.rows, m.cols,
        np.asarray(row_ptr, dtype=i64), np.asarray(col, dtype=i64),
        np.asarray(term_ptr, dtype=i64), np.asarray(keys, dtype=i64),
        np.asarray(coefs, dtype=i64),
    )


def _pair_counts(a: Packed, b: Packed):
    """Number of term products contributed by each nonzero entry of ``a``."""
    per_row = np.diff(b.term_ptr[b.row_ptr])
    return np.diff(a.term_ptr) * per_row[a.col]


@try_jit(cache=True)
def _expand_numba(a_row_ptr, a_col, a_tptr, a_keys, a_coefs,
                  b_row_ptr, b_col, b_tptr, b_keys, b_coefs,
                  out_row, out_col, out_key, out_coef):
    pos = 0
    n_rows = a_row_ptr.shape[0] - 1
    for i in range(n_rows):
        for ea in range(a_row_ptr[i], a_row_ptr[i + 1]):
            k = a_col[ea]
            for eb in range(b_row_ptr[k], b_row_ptr[k + 1]):
                j = b_col[eb]
                for ta in range(a_tptr[ea], a_tptr[ea + 1]):
                    ka = a_keys[ta]
                    ca = a_coefs[ta]
                    for tb in range(b_tptr[eb], b_tptr[eb + 1]):
                        out_row[pos] = i
                        out_col[pos] = j
                        out_key[pos] = ka + b_keys[tb]
                        out_coef[pos] = ca * b_coefs[tb]
                        pos += 1
    return pos


def _expand_numpy(a: Packed, b: Packed):
    a_rows = np.repeat(np.arange(a.rows, dtype=np.int64), np.diff(a.row_ptr))
    b_len = np.diff(b.row_ptr)
    # entry pairs (ea, eb) sharing the inner index
    cnt = b_len[a.col]
    pa = np.repeat(np.arange(len(a.col), dtype=np.int64), cnt)
    starts = np.repeat(np.cumsum(cnt) - cnt, cnt)
    pb = b.row_ptr[a.col][pa] + (np.arange(len(pa), dtype=np.int64) - starts)
    # term pairs within each entry pair
    na = np.diff(a.term_ptr)[pa]
    nb = np.diff(b.term_ptr)[pb]
    tcnt = na * nb
    q = np.repeat(np.arange(len(pa), dtype=np.int64), tcnt)
    local = np.arange(int(tcnt.sum()), dtype=np.int64) - np.repeat(np.cumsum(tcnt) - tcnt, tcnt)
    ta = a.term_ptr[pa][q] + local // nb[q]
    tb = b.term_ptr[pb][q] + local % nb[q]
    return (a_rows[pa][q], b.col[pb][q], a.keys[ta] + b.keys[tb], a.coefs[ta] * b.coefs[tb])


def _canonical(row, col, key, coef):
    order = np.lexsort((key, col, row))
    row, col, key, coef = row[order], col[order], key[order], coef[order]
    if len(row) == 0:
        return row, col, key, coef
    new = np.ones(len(row), dtype=bool)
    new[1:] = (row[1:] != row[:-1]) | (col[1:] != col[:-1]) | (key[1:] != key[:-1])
    starts = np.flatnonzero(new)
    summed = np.add.reduceat(coef, starts)
    keep = summed != 0
    return row[starts][keep], col[starts][keep], key[starts][keep], summed[keep]


def packed_product(a: Packed, b: Packed, backend: Optional[str] = None):
    """Canonical ``(row, col, key, coef)`` arrays of the product ``a @ b``.

    Returns ``None`` if the accumulated coefficients could overflow int64.
    """
    backend = backend or default_backend()
    counts = _pair_counts(a, b)
    total = int(counts.sum())
    amax = int(np.abs(a.coefs).max(initial=0))
    bmax = int(np.abs(b.coefs).max(initial=0))
    if amax * bmax * max(total, 1) >= _INT64_SAFE:
        return None
    if backend == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable or disabled")
        out = [np.empty(total, dtype=np.int64) for _ in range(4)]
        n = _expand_numba(a.row_ptr, a.col, a.term_ptr, a.keys, a.coefs,
                          b.row_ptr, b.col, b.term_ptr, b.keys, b.coefs, *out)
        assert n == total
        parts = out
    elif backend == "numpy":
        parts = _expand_numpy(a, b)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return _canonical(*parts)


def scalar_identity_arrays(f: Polynomial, n: int, basis: Basis):
    index = {v: i for i, v in enumerate(basis.variables)}
    nv = len(basis.variables)
    fk = sorted(_compact_key(k, index, basis.bits, nv) for k in f.terms)
    inv = {_compact_key(k, index, basis.bits, nv): c for k, c in f.terms.items()}
    t = len(fk)
    diag = np.repeat(np.arange(n, dtype=np.int64), t)
    keys = np.tile(np.asarray(fk, dtype=np.int64), n)
    coefs = np.tile(np.asarray([inv[k] for k in fk], dtype=np.int64), n)
    return diag, diag.copy(), keys, coefs


def product_is_scalar(a, b, f: Polynomial, backend: Optional[str] = None) -> Optional[bool]:
    """Whether ``a @ b == f * I`` exactly; ``None`` when packing is not applicable."""
    if not f.coefficients_integral():
        return None
    basis = make_basis(a, b, PolyMatrixLike(f))
    if basis is None:
        return None
    pa, pb = pack(a, basis), pack(b, basis)
    if pa is None or pb is None:
        return None
    got = packed_product(pa, pb, backend)
    if got is None:
        return None
    want = scalar_identity_arrays(f, a.rows, basis)
    return all(np.array_equal(g, w) for g, w in zip(got, want))


def mat_mul_packed(a, b, backend: Optional[str] = None):
    """Product via the packed kernels, decoded back to a PolyMatrix (or ``None``)."""
    from .matrix import PolyMatrix
    from .poly import ZERO

    basis = make_basis(a, b)
    if basis is None:
        return None
    pa, pb = pack(a, basis), pack(b, basis)
    if pa is None or pb is None:
        return None
    got = packed_product(pa, pb, backend)
    if got is None:
        return None
    acc: dict = {}
    for i, j, k, c in zip(*(x.tolist() for x in got)):
        acc.setdefault((i, j), {})[_expand_key(k, basis)] = c
    out = [ZERO] * (a.rows * b.cols)
    for (i, j), terms in acc.items():
        out[i * b.cols + j] = Polynomial(terms)
    return PolyMatrix(a.rows, b.cols, out)


class PolyMatrixLike:
    """Adapter so a lone polynomial contributes its exponents to ``make_basis``."""

    def __init__(self, p: Polynomial):
        self.entries = (p,)
