"""mfkit: exact matrix factorizations of multivariate polynomials."""
from .errors import *  # noqa: F401,F403
from .expr import (
    Classification,
    Factor,
    MonomialTerm,
    ProductTerm,
    SizePrediction,
    SummandForm,
    classify,
    expand,
    parse,
    parse_polynomial,
    predict_sizes,
    render,
)
from .factorization import (
    MatrixFactorization,
    VerifyReport,
    add_summand,
    check_pair,
    combine_commuting,
    mf_direct_sum,
    mf_new,
    one_by_one,
    standard_factorize,
    standard_from_monomials,
    standard_method,
    verify,
)
from .matrix import (
    PermutationMatrix,
    PolyMatrix,
    apply_perm,
    block,
    conjugate,
    direct_sum,
    kron,
    mat_mul,
    perfect_shuffle,
    perm_kron,
)
from .poly import ONE, ZERO, Monomial, Polynomial, leading_split, monomial_count
from .reducer import Shape, compare_methods, generate_instance, improved_factorize
from .tensor import (
    AssociativityReport,
    Morphism,
    associativity_check,
    commutativity_witness,
    distributivity_witness,
    find_yoshino_placement,
    morph_compose,
    morph_identity,
    morph_mult_tensor,
    morph_new,
    morph_scalar,
    morph_yoshino_left,
    mult_tensor,
    mult_tensor_variant,
    yoshino,
    yoshino_variant,
)

__version__ = "0.1.0"
