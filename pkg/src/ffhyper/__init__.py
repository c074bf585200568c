"""Exact finite-field hypergeometric functions with identity verification."""

from .characters import (Character, char_group, char_inv, char_mul, chi_eval, delta,
                         parse_character, value_field)
from .charsums import (BinomialTable, binom, binomial_expansion, build_binom_table, jacobi,
                       multi_jacobi, multinom, multinom_product, multinom_product_signed,
                       multinom_recursive, multinomial_expansion)
from .cyclotomic import (CycloCtx, CycloNum, cyclo_arith, cyclotomic_polynomial, embed_complex,
                         root_of_unity)
from .errors import CacheError, CapacityError, DomainError, FFHyperError, FieldMismatchError
from .field import FieldCtx, build_field, field_for_order, field_ops, parse_element
from .hypergeometric import (SeriesParams, appell_f2, gauss_2f1, hyper_np1_fn, lauricella_fa,
                             lauricella_fa_shifted, permute)
from .identities import (IDENTITIES, Instance, VerificationReport, check, sweep,
                         verify_eps_reduction, verify_equal_reduction, verify_genfunc_forward,
                         verify_genfunc_local, verify_genfunc_reversed, verify_reduction_cov1,
                         verify_reduction_cov2, verify_reduction_split)

__version__ = "0.1.0"
