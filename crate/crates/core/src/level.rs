//! The level of a pair of polynomials.
//!
//! For g, f in R = F_p[x_1..x_d] with f nonzero, the level of (g, f) is the
//! least e >= 0 such that some operator delta that is linear over p^e-th
//! powers sends g/f to (g/f)^p; it is 0 exactly when f divides g, and may be
//! infinite. The computable criterion: level <= e iff
//!
//! ```text
//! I_e(g^p * f^(p^e - p))  is contained in  I_e(g * f^(p^e - 1))
//! ```
//!
//! where I_e is the ideal of p^e-th roots. The driver tests e = 1, 2, ... up
//! to a caller-set bound, always at the root level (small degrees), and the
//! required f powers are assembled from Frobenius twists of f^(p-1) rather
//! than by naive exponentiation. A successful bound comes with a
//! [`FrobeniusCertificate`] exhibiting the operator as a cofactor combination
//! of projections, checkable by plain polynomial arithmetic.

use std::error::Error;
use std::fmt;

use crate::groebner::{groebner_basis_with_transform, normal_form, MonomialOrder};
use crate::groebner::ideal_contains;
use crate::monomial::Monomial;
use crate::poly::{MultiPoly, PolyError};
use crate::roots::{ie_roots, pe_decompose};

/// Default search bound for the level driver.
pub const DEFAULT_E_MAX: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelError {
    /// The denominator is the zero polynomial.
    ZeroDenominator,
    /// Numerator and denominator live in different rings.
    Mismatch,
    /// Arithmetic failed (exponent overflow or term cap) while working on the
    /// given exponent e, when known.
    Arithmetic { e: Option<u32>, source: PolyError },
    /// `build_certificate` was asked for a level bound that does not hold.
    NoContainment { e: u32 },
}

impl fmt::Display for LevelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelError::ZeroDenominator => write!(f, "denominator polynomial is zero"),
            LevelError::Mismatch => write!(f, "numerator and denominator use different rings"),
            LevelError::Arithmetic { e: Some(e), source } => {
                write!(f, "while testing e = {e}: {source}")
            }
            LevelError::Arithmetic { e: None, source } => write!(f, "{source}"),
            LevelError::NoContainment { e } => {
                write!(f, "root-ideal containment does not hold at e = {e}")
            }
        }
    }
}

impl Error for LevelError {
    fn source(&self) -> Option<&(dyn Error + 'static)> {
        match self {
            LevelError::Arithmetic { source, .. } => Some(source),
            _ => None,
        }
    }
}

fn at(e: u32) -> impl Fn(PolyError) -> LevelError {
    move |source| LevelError::Arithmetic { e: Some(e), source }
}

/// A level question: numerator, denominator, and the largest e to try.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelQuery {
    pub g: MultiPoly,
    pub f: MultiPoly,
    pub e_max: u32,
}

impl LevelQuery {
    pub fn new(g: MultiPoly, f: MultiPoly) -> Self {
        LevelQuery { g, f, e_max: DEFAULT_E_MAX }
    }

    pub fn with_e_max(mut self, e_max: u32) -> Self {
        assert!(e_max >= 1, "e_max must be at least 1");
        self.e_max = e_max;
        self
    }
}

/// One certificate term: the cofactor multiplying the projection onto the
/// basis monomial x^residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub cofactor: MultiPoly,
    pub residue: Monomial,
}

/// Witness that level(g, f) <= e: with c_alpha the p^e-th root entries of
/// g * f^(p^e - 1), the terms satisfy
///
/// ```text
/// sum_i cofactor_i * (c_{residue_i})^(p^e)  =  g^p * f^(p^e - p)
/// ```
///
/// which exhibits the operator sum_i cofactor_i * (projection onto residue_i)
/// mapping g * f^(p^e - 1) to g^p * f^(p^e - p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCertificate {
    pub e: u32,
    pub terms: Vec<CertTerm>,
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl FrobeniusCertificate {
    /// Re-derive everything and check the defining identity; never panics,
    /// any inconsistency (including arithmetic overflow) reports as `false`.
    pub fn verify(&self) -> bool {
        verify_certificate(self)
    }
}

/// Outcome of the level search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    /// f divides g, so g/f is a polynomial and the level is 0.
    LevelZero,
    /// The least e with the containment, plus its operator certificate.
    Finite { e: u32, certificate: FrobeniusCertificate },
    /// No containment for any e <= e_max; says nothing about e > e_max.
    ExceedsBound { e_max: u32 },
}

impl LevelOutcome {
    pub fn finite_level(&self) -> Option<u32> {
        match self {
            LevelOutcome::Finite { e, .. } => Some(*e),
            _ => None,
        }
    }

    pub fn level_value(&self) -> Option<u32> {
        match self {
            LevelOutcome::LevelZero => Some(0),
            LevelOutcome::Finite { e, .. } => Some(*e),
            LevelOutcome::ExceedsBound { .. } => None,
        }
    }
}

fn check_pair(g: &MultiPoly, f: &MultiPoly) -> Result<(), LevelError> {
    if g.field() != f.field() || g.context() != f.context() {
        return Err(LevelError::Mismatch);
    }
    if f.is_zero() {
        return Err(LevelError::ZeroDenominator);
    }
    Ok(())
}

/// Compute the level of (g, f) up to `e_max`.
pub fn level_pair(query: &LevelQuery) -> Result<LevelOutcome, LevelError> {
    level_pair_with_limit(query, None)
}

/// Like [`level_pair`] but aborts with an error if any intermediate
/// polynomial grows beyond `term_limit` terms.
pub fn level_pair_with_limit(
    query: &LevelQuery,
    term_limit: Option<usize>,
) -> Result<LevelOutcome, LevelError> {
    let g = &query.g;
    let f = &query.f;
    check_pair(g, f)?;
    assert!(query.e_max >= 1, "e_max must be at least 1");
    if g
        .exact_divide(f)
        .map_err(|source| LevelError::Arithmetic { e: None, source })?
        .is_some()
    {
        return Ok(LevelOutcome::LevelZero);
    }
    let p = f.field().modulus();
    let f_pm1 = f
        .pow_capped(p - 1, term_limit)
        .map_err(|source| LevelError::Arithmetic { e: None, source })?;
    // b holds g * f^(p^e - 1); it grows by one Frobenius twist of f^(p-1)
    // per round, and its p-th power is exactly the next numerator side
    // g^p * f^(p^e - p).
    let mut b = g.clone();
    for e in 1..=query.e_max {
        let a = b.frobenius_power(1).map_err(at(e))?;
        let twist = f_pm1.frobenius_power(e - 1).map_err(at(e))?;
        b = b.mul_capped(&twist, term_limit).map_err(at(e))?;
        let ia = ie_roots(&a, e);
        let ib = ie_roots(&b, e);
        if ideal_contains(&ia, &ib, MonomialOrder::GrevLex).map_err(at(e))? {
            let certificate = build_certificate_from(&b, g, f, e, term_limit)?;
            return Ok(LevelOutcome::Finite { e, certificate });
        }
    }
    Ok(LevelOutcome::ExceedsBound { e_max: query.e_max })
}

/// Level of a single polynomial: the pair (1, f).
pub fn level_single(f: &MultiPoly, e_max: u32) -> Result<LevelOutcome, LevelError> {
    let one = MultiPoly::one(f.field(), f.context());
    level_pair(&LevelQuery::new(one, f.clone()).with_e_max(e_max))
}

/// Direct test for level <= 1: membership of g in I_1(g * f^(p-1)).
pub fn level_one_test(g: &MultiPoly, f: &MultiPoly) -> Result<bool, LevelError> {
    check_pair(g, f)?;
    let p = f.field().modulus();
    let wrap = |source| LevelError::Arithmetic { e: Some(1), source };
    let b = g.mul(&f.pow(p - 1).map_err(wrap)?).map_err(wrap)?;
    let gb = crate::groebner::groebner_basis(&ie_roots(&b, 1), MonomialOrder::GrevLex)
        .map_err(wrap)?;
    Ok(normal_form(g, &gb).map_err(wrap)?.member)
}

/// Sound-but-incomplete lower bound: if either
/// `I_e(g^p f^(p^e - p))` is not inside `I_e(f^(p^e - 1))` or not inside
/// `I_e(g)`, then level(g, f) > e. A `false` answer says nothing.
pub fn lower_bound_filter(g: &MultiPoly, f: &MultiPoly, e: u32) -> Result<bool, LevelError> {
    check_pair(g, f)?;
    assert!(e >= 1, "e must be at least 1");
    let wrap = at(e);
    let p = f.field().modulus();
    let q_prev = p.checked_pow(e - 1).ok_or_else(|| wrap(PolyError::ExponentOverflow))?;
    // g^p * f^(p^e - p) = (g * f^(p^(e-1) - 1))^p.
    let a = g
        .mul(&f.pow(q_prev - 1).map_err(&wrap)?)
        .map_err(&wrap)?
        .frobenius_power(1)
        .map_err(&wrap)?;
    let ia = ie_roots(&a, e);
    let q = q_prev
        .checked_mul(p)
        .ok_or_else(|| wrap(PolyError::ExponentOverflow))?;
    let f_side = ie_roots(&f.pow(q - 1).map_err(&wrap)?, e);
    let in_f = ideal_contains(&ia, &f_side, MonomialOrder::GrevLex).map_err(&wrap)?;
    if !in_f {
        return Ok(true);
    }
    let g_side = ie_roots(g, e);
    let in_g = ideal_contains(&ia, &g_side, MonomialOrder::GrevLex).map_err(&wrap)?;
    Ok(!in_g)
}

/// Build the operator certificate for level(g, f) <= e; errors with
/// [`LevelError::NoContainment`] if the containment does not actually hold.
pub fn build_certificate(
    g: &MultiPoly,
    f: &MultiPoly,
    e: u32,
) -> Result<FrobeniusCertificate, LevelError> {
    check_pair(g, f)?;
    assert!(e >= 1, "e must be at least 1");
    let p = f.field().modulus();
    let wrap = at(e);
    let q = p.checked_pow(e).ok_or_else(|| wrap(PolyError::ExponentOverflow))?;
    let b = g.mul(&f.pow(q - 1).map_err(&wrap)?).map_err(&wrap)?;
    build_certificate_from(&b, g, f, e, None)
}

/// Shared construction: `b` must equal g * f^(p^e - 1).
fn build_certificate_from(
    b: &MultiPoly,
    g: &MultiPoly,
    f: &MultiPoly,
    e: u32,
    term_limit: Option<usize>,
) -> Result<FrobeniusCertificate, LevelError> {
    let field = g.field();
    let ctx = g.context();
    let p = field.modulus();
    let wrap = at(e);
    let dec = pe_decompose(b, e);
    // Scalar-duplicate entries generate the same bracket ideal, so keep one
    // representative residue per ray; the certificate only needs some valid
    // residues, not all of them.
    let mut monic_seen: Vec<MultiPoly> = Vec::new();
    let mut reps: Vec<(Monomial, MultiPoly)> = Vec::new();
    for (alpha, c) in dec.entries() {
        let lc = c.leading_grevlex().map(|(_, v)| v).unwrap_or(1);
        let monic = c.scale(field.inv(lc));
        if !monic_seen.contains(&monic) {
            monic_seen.push(monic);
            reps.push((alpha.clone(), c.clone()));
        }
    }
    // The bracketed generators (c_alpha)^(p^e) generate the ideal the target
    // must fall in; tracking the transform back to them yields the cofactors.
    let mut twisted = Vec::with_capacity(reps.len());
    for (_, c) in &reps {
        twisted.push(c.frobenius_power(e).map_err(&wrap)?);
    }
    let gens = crate::roots::IdealGens::new(field, ctx, twisted).map_err(&wrap)?;
    let (basis, transform) =
        groebner_basis_with_transform(&gens, MonomialOrder::GrevLex).map_err(&wrap)?;
    // Target g^p * f^(p^e - p) = (g * f^(p^(e-1) - 1))^p.
    let q_prev = p.checked_pow(e - 1).ok_or_else(|| wrap(PolyError::ExponentOverflow))?;
    let target = g
        .mul_capped(&f.pow_capped(q_prev - 1, term_limit).map_err(&wrap)?, term_limit)
        .map_err(&wrap)?
        .frobenius_power(1)
        .map_err(&wrap)?;
    let nf = normal_form(&target, &basis).map_err(&wrap)?;
    if !nf.member {
        return Err(LevelError::NoContainment { e });
    }
    // target = sum_k cofactor_k basis_k and basis_k = sum_j T[k][j] gens_j,
    // so the generator-level cofactors are s_j = sum_k cofactor_k T[k][j].
    let mut terms = Vec::new();
    for (j, (alpha, _)) in reps.iter().enumerate() {
        let mut s = MultiPoly::zero(field, ctx);
        for (k, q) in nf.cofactors.iter().enumerate() {
            if q.is_zero() || transform[k][j].is_zero() {
                continue;
            }
            s = s.add(&q.mul(&transform[k][j]).map_err(&wrap)?).map_err(&wrap)?;
        }
        if !s.is_zero() {
            terms.push(CertTerm { cofactor: s, residue: alpha.clone() });
        }
    }
    Ok(FrobeniusCertificate {
        e,
        terms,
        numerator: g.clone(),
        denominator: f.clone(),
    })
}

/// Recompute the decomposition of g * f^(p^e - 1) from scratch and check the
/// certificate identity by exact arithmetic. Returns `false` on any mismatch
/// or failure; shares no intermediate data with the construction.
pub fn verify_certificate(cert: &FrobeniusCertificate) -> bool {
    verify_inner(cert).unwrap_or(false)
}

fn verify_inner(cert: &FrobeniusCertificate) -> Result<bool, PolyError> {
    let g = &cert.numerator;
    let f = &cert.denominator;
    if g.field() != f.field() || g.context() != f.context() || f.is_zero() || cert.e == 0 {
        return Ok(false);
    }
    let field = g.field();
    let p = field.modulus();
    let q = match p.checked_pow(cert.e) {
        Some(q) => q,
        None => return Ok(false),
    };
    let b = g.mul(&f.pow(q - 1)?)?;
    let dec = pe_decompose(&b, cert.e);
    let mut lhs = MultiPoly::zero(field, g.context());
    for term in &cert.terms {
        let c = match dec.entry(&term.residue) {
            Some(c) => c,
            None => return Ok(false),
        };
        let powered = c.frobenius_power(cert.e)?;
        lhs = lhs.add(&term.cofactor.mul(&powered)?)?;
    }
    let rhs = g.mul(&f.pow(q / p - 1)?)?.frobenius_power(1)?;
    Ok(lhs == rhs)
}
