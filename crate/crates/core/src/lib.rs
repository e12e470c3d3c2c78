//! Frobenius levels of pairs of polynomials over F_p, the p^e-th root ideals
//! behind them, and Cartier-Manin invariants of hyperelliptic curves.
//!
//! The central quantity is the *level* of a pair (g, f): the least e such that
//! some differential operator that is linear over p^e-th powers maps g/f to
//! (g/f)^p. Levels are detected by a Gröbner-basis containment between ideals
//! of p^e-th roots, and every finite answer ships with an independently
//! checkable certificate. A separate module classifies hyperelliptic curves
//! (p-rank, a-number, ordinariness) through the Cartier-Manin matrix, which
//! meets the level machinery in the elliptic and genus-2 dichotomies.

pub mod binom;
pub mod curves;
pub mod diffop;
pub mod field;
pub mod groebner;
pub mod level;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod roots;

pub use binom::{binom_mod_p, multinomial_mod_p, PartitionError};
pub use curves::{
    cartier_manin, classify, stratification_kernel, stratified_test, CartierManinMatrix,
    CurveClassification, CurveError, HyperellipticModel,
};
pub use diffop::{divided_power_apply, operator_word_apply, OperatorAtom, OperatorWord};
pub use field::{FieldError, PrimeField};
pub use groebner::{
    groebner_basis, ideal_contains, ideal_equal, normal_form, GroebnerBasis, MembershipResult,
    MonomialOrder,
};
pub use level::{
    build_certificate, level_one_test, level_pair, level_pair_with_limit, level_single,
    lower_bound_filter, verify_certificate, CertTerm, FrobeniusCertificate, LevelError,
    LevelOutcome, LevelQuery, DEFAULT_E_MAX,
};
pub use monomial::{ContextError, Monomial, VarContext};
pub use parse::{parse_poly, ParseError};
pub use poly::{MultiPoly, PolyError};
pub use roots::{
    bracket_power, ie_roots, pe_decompose, IdealGens, LinearChange, LinearChangeError,
    PeDecomposition,
};
