import random

import pytest

from mfkit import (
    MatrixFactorization,
    PermutationMatrix,
    PolyMatrix,
    Polynomial,
    associativity_check,
    commutativity_witness,
    conjugate,
    distributivity_witness,
    find_yoshino_placement,
    kron,
    mf_direct_sum,
    morph_compose,
    morph_identity,
    morph_mult_tensor,
    morph_new,
    morph_scalar,
    morph_yoshino_left,
    mult_tensor,
    mult_tensor_variant,
    one_by_one,
    perfect_shuffle,
    perm_kron,
    standard_from_monomials,
    yoshino,
    yoshino_variant,
)
from mfkit.errors import ChainMismatch, DimensionMismatch, NotAMorphism, TargetMismatch
from mfkit.matrix import direct_sum
from mfkit.tensor import mult_by_form

from helpers import monomial, random_mf

M = PolyMatrix.from_rows
P = Polynomial.parse

X2 = MatrixFactorization(M([["x", "-1"], ["1", "x"]]), M([["x", "1"], ["-1", "x"]]), "x^2+1")
Y2 = MatrixFactorization(M([["-x", "1"], ["-1", "-x"]]), M([["x", "1"], ["-1", "x"]]), "-x^2-1")


def std(*texts):
    return standard_from_monomials([monomial(t) for t in texts])


MF_M = std("x^2", "z^2")
MF_P = std("xy", "x^2z", "yz^2")
MF_N = std("xz", "y^2", "y^2z")
XX = one_by_one("x", "x")
ZZ = one_by_one("z", "z")


def test_yoshino_small_sum_of_squares():
    out = yoshino(XX, ZZ)
    assert out.n == 2 and out.f == P("x^2 + z^2")
    assert out.phi @ out.psi == PolyMatrix.scalar("x^2+z^2", 2)
    # same 2x2 size as the standard method on x^2 + z^2
    assert out.n == MF_M.n


def test_yoshino_variant_one_pattern():
    out = yoshino_variant(XX, ZZ, 1)
    assert out.phi == M([["z", "x"], ["x", "-z"]])
    assert out.f == P("x^2 + z^2")


def test_variants_pairwise_distinct():
    outs = [yoshino_variant(XX, ZZ, k) for k in range(4)]
    for a in range(4):
        assert outs[a].f == P("x^2 + z^2")
        for b in range(a + 1, 4):
            assert outs[a].phi != outs[b].phi


@pytest.mark.parametrize("k", range(4))
def test_variants_on_two_by_two_pair(k):
    out = yoshino_variant(X2, X2, k)
    # the displayed pair has f + g = 0, so the sum is taken with X itself
    assert out.n == 8 and out.f == 2 * P("x^2 + 1")
    assert out.phi @ out.psi == PolyMatrix.scalar(out.f, 8)


def test_invalid_variant():
    with pytest.raises(ValueError):
        yoshino_variant(XX, ZZ, 4)


def test_mult_tensor_scalar_examples():
    x, x1, x2 = one_by_one("x", "x^2"), one_by_one("y^2", "y^3"), one_by_one("z^3", "z^4")
    y = mult_tensor(x, x1)
    assert (y.phi, y.psi) == (PolyMatrix.scalar("xy^2", 2), PolyMatrix.scalar("x^2y^3", 2))
    assert y.f == P("x^3y^5")
    z = mult_tensor(y, x2)
    assert (z.phi, z.psi) == (PolyMatrix.scalar("xy^2z^3", 4), PolyMatrix.scalar("x^2y^3z^4", 4))


def test_mult_tensor_two_by_two_display():
    out = mult_tensor(X2, Y2)
    block = M([["-x^2", "x", "x", "-1"], ["-x", "-x^2", "1", "x"], ["-x", "1", "-x^2", "x"], ["-1", "-x", "-x", "-x^2"]])
    assert out.phi == direct_sum(block, block)
    pblock = M([["x^2", "x", "x", "1"], ["-x", "x^2", "-1", "x"], ["-x", "-1", "x^2", "x"], ["1", "-x", "-x", "x^2"]])
    assert out.psi == direct_sum(pblock, pblock)
    assert out.f == -(P("x^2+1") * P("x^2+1"))


def test_mult_forms_distinct_and_sized():
    for x, y in ((X2, Y2), (MF_M, MF_P), (one_by_one("x", "x^2"), one_by_one("y^2", "y^3"))):
        a, b = mult_tensor(x, y), mult_tensor_variant(x, y)
        assert a.n == b.n == 2 * x.n * y.n
        assert a.f == b.f == x.f * y.f
        assert a.phi != b.phi
    assert mult_by_form(1) is mult_tensor_variant
    with pytest.raises(ValueError):
        mult_by_form("hat")


def test_paper_sizes_for_improved_examples():
    assert yoshino(one_by_one("x", "y"), mult_tensor(MF_M, MF_P)).n == 32
    big = yoshino(one_by_one("x^3", "y^2"), mult_tensor(MF_P, MF_N))
    assert big.n == 64
    assert big.f == P("x^3y^2") + MF_P.f * MF_N.f


def test_closure_on_random_inputs():
    r = random.Random(7)
    for _ in range(8):
        x, y = random_mf(r), random_mf(r)
        for k in range(4):
            out = yoshino_variant(x, y, k)
            assert out.n == 2 * x.n * y.n and out.f == x.f + y.f and out.verify()
        for op in (mult_tensor, mult_tensor_variant):
            out = op(x, y)
            assert out.n == 2 * x.n * y.n and out.f == x.f * y.f and out.verify()


# morphisms


def test_identity_and_scalar_morphisms():
    ident = morph_identity(MF_P)
    assert morph_compose(ident, ident) == ident
    c, d = morph_scalar(MF_P, P("1/2")), morph_scalar(MF_P, 3)
    assert morph_compose(c, d) == morph_scalar(MF_P, P("3/2"))
    assert morph_compose(ident, c) == c == morph_compose(c, ident)


def test_morphism_errors():
    i2 = PolyMatrix.identity(2)
    with pytest.raises(TargetMismatch):
        morph_new(MF_M, MF_P, i2, i2)
    with pytest.raises(DimensionMismatch):
        morph_new(MF_M, MF_M, PolyMatrix.identity(3), PolyMatrix.identity(3))
    with pytest.raises(NotAMorphism) as exc:
        morph_new(MF_M, MF_M, M([[1, 0], [0, 0]]), i2)
    # condition (i) is checked first; over a domain it already forces (ii)
    assert exc.value.condition == "i"
    with pytest.raises(ChainMismatch):
        morph_compose(morph_identity(MF_M), morph_identity(mf_direct_sum(MF_M, MF_M)))


def test_commutativity_proof_morphism():
    x, y = MF_M, one_by_one("y", "y^2")
    a = kron(y.phi, x.phi)
    b = kron(x.phi, y.phi)
    m = morph_new(mult_tensor(x, y), mult_tensor(y, x), direct_sum(a, a), direct_sum(b, b))
    assert m.dest.n == 4


def test_morphism_tensor_functor_laws():
    x, y = MF_M, one_by_one("y", "y^2")
    ident = morph_mult_tensor(morph_identity(x), morph_identity(y))
    assert ident == morph_identity(mult_tensor(x, y))
    c, d = morph_scalar(x, 2), morph_scalar(y, P("-1/3"))
    assert morph_mult_tensor(c, d) == morph_scalar(mult_tensor(x, y), P("-2/3"))
    c2, d2 = morph_scalar(x, 5), morph_scalar(y, 7)
    for which in ("tilde", "tilde_prime"):
        left = morph_mult_tensor(morph_compose(c2, c), morph_compose(d2, d), which)
        right = morph_compose(morph_mult_tensor(c2, d2, which), morph_mult_tensor(c, d, which))
        assert left == right


def test_functor_composition_with_nonscalar_morphisms():
    x, y = one_by_one("x", "x^2"), one_by_one("x^2", "x")
    zeta = morph_new(x, y, M([["x"]]), M([["1"]]))
    back = morph_new(y, x, M([["1"]]), M([["x"]]))
    g = one_by_one("z", "z")
    gid = morph_identity(g)
    left = morph_mult_tensor(morph_compose(back, zeta), morph_compose(gid, gid))
    right = morph_compose(morph_mult_tensor(back, gid), morph_mult_tensor(zeta, gid))
    assert left == right


def test_yoshino_left_with_scalars_and_identity():
    x = one_by_one("x", "x^2")
    yg = one_by_one("y", "y^4")
    for k in range(4):
        m, placement = find_yoshino_placement(morph_scalar(x, 3), yg, k)
        assert placement == ("aa", "bb")
        assert morph_yoshino_left(morph_identity(x), yg, k) == morph_identity(yoshino_variant(x, yg, k))


@pytest.mark.parametrize("k, placement", [(0, ("ab", "ba")), (1, ("ba", "ba")), (2, ("ba", "ab")), (3, ("ab", "ab"))])
def test_yoshino_left_nonscalar_placement(k, placement):
    x, y = one_by_one("x", "x^2"), one_by_one("x^2", "x")
    zeta = morph_new(x, y, M([["x"]]), M([["1"]]))
    m, got = find_yoshino_placement(zeta, one_by_one("y", "y^4"), k)
    assert got == placement
    assert m.source == yoshino_variant(x, one_by_one("y", "y^4"), k)


# witnesses


def test_commutativity_witness_scalars_is_identity():
    p = commutativity_witness(one_by_one("x", "y"), one_by_one("z", "w"))
    assert p.is_identity()


def test_commutativity_witness_m_and_p():
    p = commutativity_witness(MF_M, MF_P)
    # I_2 (x) S_{n,m} with n = size of M and m = size of P
    assert p == perm_kron(PermutationMatrix.identity(2), perfect_shuffle(2, 4))
    src, dst = mult_tensor(MF_M, MF_P), mult_tensor(MF_P, MF_M)
    assert conjugate(p, src.phi) == dst.phi and conjugate(p, src.psi) == dst.psi
    p2 = commutativity_witness(MF_M, MF_P, "tilde_prime")
    assert conjugate(p2, mult_tensor_variant(MF_M, MF_P).phi) == mult_tensor_variant(MF_P, MF_M).phi


def test_commutativity_witness_two_by_two_swaps_middle():
    p = commutativity_witness(X2, MF_M)
    assert p.image == (0, 2, 1, 3, 4, 6, 5, 7)


def test_associativity_scalar_triple_exact():
    rep = associativity_check(one_by_one("x", "x^2"), one_by_one("y^2", "y^3"), one_by_one("z^3", "z^4"))
    assert rep.exact_equal and rep.witness.is_identity()
    assert rep.left.phi == PolyMatrix.scalar("xy^2z^3", 4)


def test_associativity_needs_witness_for_larger_x():
    y, z = one_by_one("y", "y"), one_by_one("z", "z^2")
    rep = associativity_check(MF_M, y, z)
    assert not rep.exact_equal
    assert rep.left.n == rep.right.n == 4 * MF_M.n
    assert conjugate(rep.witness, rep.left.phi) == rep.right.phi
    assert rep.left.f == rep.right.f == MF_M.f * y.f * z.f
    rep = associativity_check(MF_M, one_by_one("y", "y"), MF_P, "tilde_prime")
    assert conjugate(rep.witness, rep.left.psi) == rep.right.psi


@pytest.mark.parametrize("side", ["left", "right"])
@pytest.mark.parametrize("which", ["tilde", "tilde_prime"])
def test_distributivity_witnesses(side, which):
    x1, x2 = one_by_one("x", "x"), one_by_one("-x", "-x")
    p = distributivity_witness(x1, x2, one_by_one("y", "y"), side, which)
    assert p.size == 4
    p = distributivity_witness(MF_M, MF_M, MF_P, side, which)
    assert p.size == 2 * 2 * 2 * 4
    p = distributivity_witness(x1, x1, one_by_one(1, "y^2"), side, which)
    assert p.size == 4


def test_distributivity_scalar_block_swap():
    x = one_by_one("x", "x")
    p = distributivity_witness(x, x, one_by_one("y", "y"))
    assert p.image == (0, 2, 1, 3)


def test_distributivity_errors():
    with pytest.raises(Exception):
        distributivity_witness(MF_M, one_by_one("x", "x"), MF_P)
    with pytest.raises(ValueError):
        distributivity_witness(XX, XX, ZZ, side="middle")
