import itertools

import pytest

from mfkit import (
    PolyMatrix,
    Polynomial,
    Shape,
    compare_methods,
    expand,
    generate_instance,
    improved_factorize,
    mult_tensor,
    one_by_one,
    parse,
    predict_sizes,
    standard_from_monomials,
    yoshino,
)
from mfkit.errors import EmptyInput, ShapeInfeasible
from mfkit.expr import SummandForm
from mfkit.reducer import effective_form

from helpers import monomial

EX1 = "xy + (x^2+z^2)(xy+x^2z+yz^2)"
EX2 = "x^3y^2 + (xy+x^2z+yz^2)(xz+y^2+y^2z)"


def std(*texts):
    return standard_from_monomials([monomial(t) for t in texts])


def sub(a, r0, r1, c0, c1):
    return PolyMatrix(r1 - r0, c1 - c0, [a[i, j] for i in range(r0, r1) for j in range(c0, c1)])


def test_example_one_structure():
    res = improved_factorize(parse(EX1))
    x = res.mf
    assert x.n == 32 and x.f == expand(parse(EX1)) and x.verify()
    hg = mult_tensor(std("x^2", "z^2"), std("xy", "x^2z", "yz^2"))
    assert sub(x.phi, 0, 16, 0, 16) == PolyMatrix.scalar("x", 16)
    assert sub(x.phi, 0, 16, 16, 32) == hg.phi
    assert x == yoshino(one_by_one("x", "y"), hg)


def test_example_two_is_l_with_p_times_n():
    res = improved_factorize(parse(EX2))
    assert res.mf.n == 64
    pn = mult_tensor(std("xy", "x^2z", "yz^2"), std("xz", "y^2", "y^2z"))
    assert res.mf == yoshino(one_by_one("x^3", "y^2"), pn)


def test_single_monomial_falls_back():
    res = improved_factorize(parse("xy"))
    assert res.mf == one_by_one("x", "y")


def test_single_factor_product_uses_standard_method():
    res = improved_factorize(parse("(xy + x^2z + yz^2)"))
    assert res.mf == std("xy", "x^2z", "yz^2")


def test_compare_examples():
    r1 = compare_methods(parse(EX1))
    assert (r1["standard_size"], r1["improved_size"], r1["ratio"]) == (64, 32, 2)
    assert r1["verified_standard"] and r1["verified_improved"] and not r1["cancellation"]
    r2 = compare_methods(parse(EX2))
    assert (r2["standard_size"], r2["improved_size"], r2["ratio"]) == (512, 64, 8)


def test_compare_skips_large_standard_builds():
    r = compare_methods(parse(EX2), build_limit=5)
    assert r["verified_standard"] is None and r["standard_size"] == 512


@pytest.mark.parametrize("k, form", list(itertools.product(range(4), ["tilde", "tilde_prime"])))
def test_variant_independence(k, form):
    base = improved_factorize(parse(EX1)).mf
    out = improved_factorize(parse(EX1), yoshino=k, mult_form=form).mf
    assert out.n == base.n and out.f == base.f and out.verify()
    if (k, form) != (0, "tilde"):
        assert out.phi != base.phi


def test_zero_inputs():
    with pytest.raises(EmptyInput):
        improved_factorize(SummandForm(()))
    with pytest.raises(EmptyInput):
        improved_factorize(parse("x^2 - (x)(x)"))
    with pytest.raises(EmptyInput):
        improved_factorize(parse("xy - xy + (x+z)(y+z)"))


def test_auto_expand_replaces_non_gaining_products():
    sf = parse("z + (x+y)(x+y)")
    assert effective_form(sf) is sf
    ex = effective_form(sf, auto_expand=True)
    assert [len(t.factors) for t in ex.product_terms] == [1]
    plain = improved_factorize(sf)
    auto = improved_factorize(sf, auto_expand=True)
    assert auto.mf.n < plain.mf.n and auto.mf.f == plain.mf.f
    # products that gain are left alone
    assert effective_form(parse(EX1), auto_expand=True) == parse(EX1)


def test_generate_instance_deterministic():
    shape = Shape(1, (2,), ((3, 2),))
    a, b = generate_instance(0, shape), generate_instance(0, shape)
    assert a == b
    assert generate_instance(1, shape) != a
    assert a.s == 1 and a.product_terms[0].counts == (3, 2)


@pytest.mark.parametrize(
    "shape, ratio",
    [
        (Shape(1, (2,), ((3, 2),)), 2),
        (Shape(0, (2, 2), ((2, 2), (2, 2))), 1),
        (Shape(1, (2,), ((3, 3),)), 8),
    ],
)
def test_generated_ratio(shape, ratio):
    for seed in range(3):
        sf = generate_instance(seed, shape)
        rep = compare_methods(sf, build_limit=0)
        assert rep["ratio"] == ratio and rep["verified_improved"]


@pytest.mark.parametrize(
    "shape",
    [
        Shape(1, (2,), ((3,),)),
        Shape(0, (), ()),
        Shape(1, (1,), ((20,),), vars="x", max_deg=3),
        Shape(-1, (1,), ((1,),)),
        Shape(1, (1,), ((0,),)),
        Shape(1, (1,), ((1,),), vars="xx"),
    ],
)
def test_infeasible_shapes(shape):
    with pytest.raises(ShapeInfeasible):
        generate_instance(0, shape)


def test_parse_counts():
    assert Shape.parse_p("3,2;2,2") == ((3, 2), (2, 2))
    assert Shape.format_counts(((3, 2), (2, 2))) == "3,2;2,2"
    with pytest.raises(ShapeInfeasible):
        Shape.parse_p("3,a")


def test_prediction_agrees_with_built_size():
    for seed in range(5):
        sf = generate_instance(seed, Shape(2, (1, 2), ((2,), (2, 3))))
        res = improved_factorize(sf)
        assert res.mf.n == predict_sizes(sf).improved_size == 2 ** (2 + 2 + 3 + 2 - 1)
        assert res.mf.f == expand(sf)
        assert res.mf.f == Polynomial.parse(str(expand(sf)))
