//! Hyperelliptic curves y^2 = h(x) in odd characteristic and their
//! Cartier-Manin matrices.
//!
//! For squarefree h of degree n >= 3 over F_p (p odd), write
//! h^((p-1)/2) = sum_j c_j x^j. The genus is g = floor((n-1)/2) and the
//! g x g Cartier-Manin matrix has entry `M[j-1][i-1] = c_{jp-i}` for
//! 1 <= i, j <= g. Because the curve is defined over the prime field, the
//! iterated (semilinear) Cartier operator is plain matrix powering, and the
//! invariants read off as: a-number = g - rank(M), p-rank = rank(M^g),
//! ordinary iff p-rank = g, superspecial iff M = 0. Vanishing of a row
//! combination of M (a left-kernel vector) pins the curve to the
//! corresponding non-ordinary stratum.

use std::error::Error;
use std::fmt;

use crate::field::PrimeField;
use crate::poly::MultiPoly;

/// Guard against powering h to astronomically many dense coefficients.
const MAX_DENSE_COEFFS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// The hyperelliptic model y^2 = h(x) needs odd characteristic.
    EvenCharacteristic,
    /// h must be univariate; the ring has `dim` variables.
    NotUnivariate { dim: usize },
    /// deg h >= 3 is required for genus >= 1.
    DegreeTooSmall { degree: usize },
    /// h has a repeated root, so y^2 = h(x) is not smooth in the chart.
    NotSquarefree,
    /// deg(h) * (p - 1) / 2 coefficients would not fit in memory.
    PrimeTooLarge { p: u64 },
    /// A stratification vector must have exactly `expected` entries.
    WrongVectorLength { expected: usize, got: usize },
    /// The zero vector carries no stratification information.
    ZeroVector,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::EvenCharacteristic => {
                write!(f, "the model y^2 = h(x) requires an odd prime")
            }
            CurveError::NotUnivariate { dim } => {
                write!(f, "h must be univariate, but its ring has {dim} variables")
            }
            CurveError::DegreeTooSmall { degree } => {
                write!(f, "deg h = {degree}, but degree at least 3 is required")
            }
            CurveError::NotSquarefree => write!(f, "h has a repeated root"),
            CurveError::PrimeTooLarge { p } => {
                write!(f, "p = {p} is too large for dense coefficient expansion")
            }
            CurveError::WrongVectorLength { expected, got } => {
                write!(f, "expected a vector of length {expected}, got {got}")
            }
            CurveError::ZeroVector => write!(f, "the zero vector is not a valid test vector"),
        }
    }
}

impl Error for CurveError {}

// ---------------------------------------------------------------------------
// Dense univariate arithmetic (coefficients ascending by degree)
// ---------------------------------------------------------------------------

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn dense_mul(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj));
        }
    }
    trim(out)
}

fn dense_pow(field: PrimeField, base: &[u64], mut n: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut sq = base.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            result = dense_mul(field, &result, &sq);
        }
        n >>= 1;
        if n > 0 {
            sq = dense_mul(field, &sq, &sq);
        }
    }
    result
}

fn dense_derivative(field: PrimeField, a: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len().saturating_sub(1));
    for (i, &c) in a.iter().enumerate().skip(1) {
        out.push(field.mul(field.reduce(i as u64), c));
    }
    trim(out)
}

/// Euclidean gcd of dense univariate polynomials; result is monic or empty.
fn dense_gcd(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        // a mod b by schoolbook division.
        let lb_inv = field.inv(*b.last().unwrap());
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = field.mul(*a.last().unwrap(), lb_inv);
            for (i, &bc) in b.iter().enumerate() {
                let t = field.mul(factor, bc);
                a[shift + i] = field.sub(a[shift + i], t);
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = field.inv(lead);
        for c in &mut a {
            *c = field.mul(*c, inv);
        }
    }
    a
}

// ---------------------------------------------------------------------------
// F_p matrices
// ---------------------------------------------------------------------------

fn mat_mul(field: PrimeField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = field.add(out[i][j], field.mul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

fn mat_pow(field: PrimeField, m: &[Vec<u64>], mut n: u32) -> Vec<Vec<u64>> {
    let dim = m.len();
    let mut result: Vec<Vec<u64>> = (0..dim)
        .map(|i| (0..dim).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut sq = m.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            result = mat_mul(field, &result, &sq);
        }
        n >>= 1;
        if n > 0 {
            sq = mat_mul(field, &sq, &sq);
        }
    }
    result
}

/// Reduce to row echelon form in place; returns the rank.
fn echelonize(field: PrimeField, m: &mut [Vec<u64>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]);
        for j in col..cols {
            m[rank][j] = field.mul(m[rank][j], inv);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for j in col..cols {
                    let t = field.mul(factor, m[rank][j]);
                    m[r][j] = field.sub(m[r][j], t);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mat_rank(field: PrimeField, m: &[Vec<u64>]) -> usize {
    let mut work = m.to_vec();
    echelonize(field, &mut work)
}

// ---------------------------------------------------------------------------
// Public types
// ---------------------------------------------------------------------------

/// A validated model y^2 = h(x) over F_p with p odd and h squarefree of
/// degree at least 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticModel {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl HyperellipticModel {
    /// Validate a univariate h and build the model.
    pub fn new(h: &MultiPoly) -> Result<Self, CurveError> {
        let field = h.field();
        if field.modulus() == 2 {
            return Err(CurveError::EvenCharacteristic);
        }
        let dim = h.context().dim();
        if dim != 1 {
            return Err(CurveError::NotUnivariate { dim });
        }
        let mut coeffs = vec![0u64; h.total_degree().unwrap_or(0) as usize + 1];
        for (m, c) in h.terms() {
            coeffs[m.exps()[0] as usize] = c;
        }
        let coeffs = trim(coeffs);
        let degree = coeffs.len().saturating_sub(1);
        if degree < 3 {
            return Err(CurveError::DegreeTooSmall { degree });
        }
        let threshold = (degree as u64)
            .checked_mul((field.modulus() - 1) / 2)
            .unwrap_or(u64::MAX);
        if threshold >= MAX_DENSE_COEFFS {
            return Err(CurveError::PrimeTooLarge { p: field.modulus() });
        }
        let gcd = dense_gcd(field, &coeffs, &dense_derivative(field, &coeffs));
        if gcd.len() > 1 {
            return Err(CurveError::NotSquarefree);
        }
        Ok(HyperellipticModel { field, coeffs })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Coefficients of h, ascending by degree, no trailing zeros.
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Genus of the smooth projective model: floor((deg h - 1) / 2).
    pub fn genus(&self) -> usize {
        (self.degree() - 1) / 2
    }
}

/// The g x g matrix of the Cartier operator on H^0(C, Omega^1) in the basis
/// x^(i-1) dx / y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierManinMatrix {
    field: PrimeField,
    entries: Vec<Vec<u64>>,
}

impl CartierManinMatrix {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.entries.len()
    }

    /// Row-major entries: `entries()[j-1][i-1]` is c_{jp-i}.
    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        mat_rank(self.field, &self.entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|&c| c == 0))
    }
}

/// Invariants read off the Cartier-Manin matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveClassification {
    pub genus: usize,
    pub a_number: usize,
    pub p_rank: usize,
    pub ordinary: bool,
    pub superspecial: bool,
}

/// Compute the Cartier-Manin matrix of the model.
pub fn cartier_manin(model: &HyperellipticModel) -> CartierManinMatrix {
    let field = model.field();
    let p = field.modulus();
    let c = dense_pow(field, model.coefficients(), (p - 1) / 2);
    let g = model.genus();
    let coeff = |k: u64| -> u64 {
        let k = k as usize;
        if k < c.len() {
            c[k]
        } else {
            0
        }
    };
    let entries = (1..=g as u64)
        .map(|j| (1..=g as u64).map(|i| coeff(j * p - i)).collect())
        .collect();
    CartierManinMatrix { field, entries }
}

/// a-number, p-rank, and the ordinary / superspecial flags.
pub fn classify(matrix: &CartierManinMatrix) -> CurveClassification {
    let g = matrix.genus();
    let rank = matrix.rank();
    let stable = mat_pow(matrix.field, &matrix.entries, g as u32);
    let p_rank = mat_rank(matrix.field, &stable);
    CurveClassification {
        genus: g,
        a_number: g - rank,
        p_rank,
        ordinary: p_rank == g,
        superspecial: matrix.is_zero(),
    }
}

/// Whether the row combination a^T M vanishes, i.e. whether `a` lies in the
/// left kernel of the Cartier-Manin matrix.
pub fn stratified_test(matrix: &CartierManinMatrix, a: &[u64]) -> Result<bool, CurveError> {
    let g = matrix.genus();
    if a.len() != g {
        return Err(CurveError::WrongVectorLength { expected: g, got: a.len() });
    }
    let field = matrix.field;
    let reduced: Vec<u64> = a.iter().map(|&c| field.reduce(c)).collect();
    if reduced.iter().all(|&c| c == 0) {
        return Err(CurveError::ZeroVector);
    }
    for i in 0..g {
        let mut acc = 0u64;
        for (j, &aj) in reduced.iter().enumerate() {
            acc = field.add(acc, field.mul(aj, matrix.entries[j][i]));
        }
        if acc != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic basis of the left kernel {a : a^T M = 0}. Each basis vector
/// has a 1 in its free coordinate; vectors are ordered by that coordinate.
pub fn stratification_kernel(matrix: &CartierManinMatrix) -> Vec<Vec<u64>> {
    let field = matrix.field;
    let g = matrix.genus();
    // Left kernel of M = (right) null space of M^T.
    let mut mt: Vec<Vec<u64>> = (0..g)
        .map(|i| (0..g).map(|j| matrix.entries[j][i]).collect())
        .collect();
    let rank = echelonize(field, &mut mt);
    let mut pivot_of_row: Vec<usize> = Vec::with_capacity(rank);
    for row in mt.iter().take(rank) {
        let col = row.iter().position(|&c| c != 0).expect("nonzero row");
        pivot_of_row.push(col);
    }
    let mut basis = Vec::with_capacity(g - rank);
    for free in 0..g {
        if pivot_of_row.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; g];
        v[free] = 1;
        for (r, &pc) in pivot_of_row.iter().enumerate() {
            v[pc] = field.neg(mt[r][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VarContext;
    use crate::parse::parse_poly;

    fn model(p: u64, h: &str) -> HyperellipticModel {
        try_model(p, h).unwrap()
    }

    fn try_model(p: u64, h: &str) -> Result<HyperellipticModel, CurveError> {
        let field = PrimeField::new(p).unwrap();
        let ctx = VarContext::new(vec!["x"]).unwrap();
        HyperellipticModel::new(&parse_poly(h, field, &ctx).unwrap())
    }

    #[test]
    fn model_validation() {
        assert_eq!(try_model(2, "x^3 + x + 1"), Err(CurveError::EvenCharacteristic));
        assert_eq!(
            try_model(5, "x^2 + 1"),
            Err(CurveError::DegreeTooSmall { degree: 2 })
        );
        assert_eq!(try_model(5, "x^3"), Err(CurveError::NotSquarefree));
        // x^5 + 1 = (x + 1)^5 over F_5.
        assert_eq!(try_model(5, "x^5 + 1"), Err(CurveError::NotSquarefree));
        let field = PrimeField::new(5).unwrap();
        let ctx = VarContext::new(vec!["x", "y"]).unwrap();
        let h = parse_poly("x^3 + y", field, &ctx).unwrap();
        assert_eq!(
            HyperellipticModel::new(&h),
            Err(CurveError::NotUnivariate { dim: 2 })
        );
        assert!(try_model(7, "x^3 + x").is_ok());
    }

    #[test]
    fn genus_from_degree() {
        assert_eq!(model(7, "x^3 + x").genus(), 1);
        assert_eq!(model(7, "x^4 + x + 1").genus(), 1);
        // Not x^5 + x + 1: that factors as (x^2+x+1)(x^3-x^2+1) with the
        // shared root 4 mod 7, so it is not squarefree there.
        assert_eq!(model(7, "x^5 + x").genus(), 2);
        assert_eq!(model(7, "x^6 + x").genus(), 2);
        assert_eq!(model(7, "x^7 + x + 1").genus(), 3);
        assert_eq!(model(11, "x^8 - 1").genus(), 3);
    }

    #[test]
    fn quintic_matrix_mod_13() {
        // (x^5 + 1)^6 has x-powers only at multiples of 5, so the only
        // surviving entry is c_25 = binom(6, 5) = 6.
        let m = cartier_manin(&model(13, "x^5 + 1"));
        assert_eq!(m.entries(), &[vec![0, 0], vec![6, 0]]);
        let cls = classify(&m);
        assert_eq!(cls.genus, 2);
        assert_eq!(cls.a_number, 1);
        assert_eq!(cls.p_rank, 0);
        assert!(!cls.ordinary);
        assert!(!cls.superspecial);
    }

    #[test]
    fn quintic_matrix_mod_19() {
        // No exponent of (x^5 + 1)^9 has the form 19j - i for i, j in 1..=2.
        let m = cartier_manin(&model(19, "x^5 + 1"));
        assert!(m.is_zero());
        let cls = classify(&m);
        assert_eq!(cls.a_number, 2);
        assert_eq!(cls.p_rank, 0);
        assert!(cls.superspecial);
        assert!(!cls.ordinary);
    }

    #[test]
    fn quintic_matrix_mod_11() {
        // c_10 = binom(5, 2) = 10 and c_20 = binom(5, 4) = 5.
        let m = cartier_manin(&model(11, "x^5 + 1"));
        assert_eq!(m.entries(), &[vec![10, 0], vec![0, 5]]);
        let cls = classify(&m);
        assert_eq!(cls.a_number, 0);
        assert_eq!(cls.p_rank, 2);
        assert!(cls.ordinary);
        assert!(!cls.superspecial);
    }

    #[test]
    fn elliptic_supersingular_dichotomy() {
        // y^2 = x^3 + x is supersingular iff p = 3 mod 4.
        for (p, ordinary) in [(3u64, false), (5, true), (7, false), (13, true)] {
            let cls = classify(&cartier_manin(&model(p, "x^3 + x")));
            assert_eq!(cls.genus, 1);
            assert_eq!(cls.ordinary, ordinary, "p = {p}");
            assert_eq!(cls.p_rank, usize::from(ordinary), "p = {p}");
        }
        // y^2 = x^3 + 1 is supersingular iff p = 2 mod 3.
        for (p, ordinary) in [(5u64, false), (7, true), (11, false), (13, true)] {
            let cls = classify(&cartier_manin(&model(p, "x^3 + 1")));
            assert_eq!(cls.ordinary, ordinary, "p = {p}");
        }
    }

    #[test]
    fn octic_family_matrices() {
        // h = x^8 - 1, genus 3. At p = 3 the matrix comes straight from
        // h^1 = x^8 + 2.
        let m3 = cartier_manin(&model(3, "x^8 - 1"));
        assert_eq!(
            m3.entries(),
            &[vec![0, 0, 2], vec![0, 0, 0], vec![1, 0, 0]]
        );
        let cls3 = classify(&m3);
        assert_eq!((cls3.a_number, cls3.p_rank), (1, 2));
        // p = 5: h^2 = x^16 + 3x^8 + 1 leaves the single entry c_8 = 3.
        let cls5 = classify(&cartier_manin(&model(5, "x^8 - 1")));
        assert_eq!((cls5.a_number, cls5.p_rank), (2, 1));
        // p = 7: h^3 has exponents 0, 8, 16, 24 only; none match 7j - i.
        let m7 = cartier_manin(&model(7, "x^8 - 1"));
        assert!(m7.is_zero());
        let cls7 = classify(&m7);
        assert_eq!((cls7.a_number, cls7.p_rank), (3, 0));
        assert!(cls7.superspecial);
        // p = 17: diagonal (11, 2, 11), fully ordinary.
        let m17 = cartier_manin(&model(17, "x^8 - 1"));
        assert_eq!(
            m17.entries(),
            &[vec![11, 0, 0], vec![0, 2, 0], vec![0, 0, 11]]
        );
        let cls17 = classify(&cartier_manin(&model(17, "x^8 - 1")));
        assert_eq!((cls17.a_number, cls17.p_rank), (0, 3));
        assert!(cls17.ordinary);
    }

    #[test]
    fn stratified_test_left_combination() {
        let m = cartier_manin(&model(13, "x^5 + 1"));
        // Rows: [0,0] and [6,0]: the first basis differential is killed.
        assert!(stratified_test(&m, &[1, 0]).unwrap());
        assert!(!stratified_test(&m, &[0, 1]).unwrap());
        assert!(!stratified_test(&m, &[1, 1]).unwrap());
        assert_eq!(
            stratified_test(&m, &[1]),
            Err(CurveError::WrongVectorLength { expected: 2, got: 1 })
        );
        assert_eq!(stratified_test(&m, &[0, 0]), Err(CurveError::ZeroVector));
        // Entries are reduced mod p: 13 = 0 and 14 = 1.
        assert_eq!(stratified_test(&m, &[13, 13]), Err(CurveError::ZeroVector));
        assert!(stratified_test(&m, &[14, 13]).unwrap());
    }

    #[test]
    fn kernel_bases() {
        let m13 = cartier_manin(&model(13, "x^5 + 1"));
        assert_eq!(stratification_kernel(&m13), vec![vec![1, 0]]);
        let m19 = cartier_manin(&model(19, "x^5 + 1"));
        assert_eq!(stratification_kernel(&m19), vec![vec![1, 0], vec![0, 1]]);
        let m11 = cartier_manin(&model(11, "x^5 + 1"));
        assert!(stratification_kernel(&m11).is_empty());
    }

    #[test]
    fn kernel_vectors_satisfy_the_test() {
        for (p, h) in [(3u64, "x^8 - 1"), (5, "x^8 - 1"), (13, "x^5 + 1"), (13, "x^7 + x + 1")] {
            let m = cartier_manin(&model(p, h));
            let kernel = stratification_kernel(&m);
            assert_eq!(kernel.len(), m.genus() - m.rank(), "p = {p}, h = {h}");
            for v in &kernel {
                assert!(stratified_test(&m, v).unwrap(), "p = {p}, h = {h}");
            }
        }
    }
}
