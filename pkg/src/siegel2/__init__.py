"""Exact computation with degree 2 Siegel modular forms: truncated Fourier
expansions, Hecke operators, eigenvalue extraction, and mechanical
verification of the multiplicative identities among coefficients."""

from .arith import (
    FundamentalDecomposition,
    bernoulli,
    bernoulli_polynomial,
    cohen_class_number,
    dirichlet_l_at_one_minus,
    divisor_sigma,
    divisors,
    factor,
    fundamental_decomposition,
    generalized_bernoulli,
    is_fundamental_discriminant,
    is_prime,
    kronecker_symbol,
    moebius,
    zeta_at_one_minus,
)
from .eigen import (
    Eigenvalue,
    HWeights,
    InconsistentEigenvalue,
    NoNonzeroWitness,
    NotNormalized,
    VerificationReport,
    eigenvalue_direct,
    eigenvalue_from_weight,
    eigenvalue_normalized,
    hecke_eigen_weights,
    reports_to_json,
    verify_coefficient_relations,
    verify_multiplicativity,
)
from .fourier import (
    ExpansionFileError,
    SiegelExpansion,
    TruncationExceeded,
    cusp_form_10,
    cusp_form_12,
    eisenstein,
    read_expansion,
    write_expansion,
)
from .hecke import (
    CosetSet,
    HeckeIndex,
    apply_hecke,
    coset_set,
    divides_all,
    first_rows_equivalent,
    hecke_coefficient,
    hecke_coefficient_coprime_s,
    hecke_coefficient_order1,
    hecke_coefficient_order2,
    hecke_coefficient_scalar_index,
    required_source_trace,
    source_indices,
)
from .quadform import (
    HalfIntegralForm,
    ReducedClass,
    UnimodularMatrix,
    enumerate_forms,
    enumerate_reduced,
    is_reduced,
    reduce_form,
    sts_matrix,
    transform,
    two_squares,
)

__version__ = "0.1.0"
