//! Ideals of p^e-th roots.
//!
//! R = F_p[x_1..x_d] is free over its subring of p^e-th powers with basis the
//! monomials whose exponents all stay below p^e. Writing
//! `f = sum_alpha (c_alpha)^(p^e) * x^alpha` over that basis, the ideal
//! generated by the roots c_alpha is the smallest ideal J with f in J^[p^e]
//! (bracket power). Over the prime field the coefficient roots are the
//! coefficients themselves, so splitting each exponent vector into quotient
//! and remainder mod p^e computes the decomposition exactly.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use crate::field::PrimeField;
use crate::monomial::{Monomial, VarContext};
use crate::poly::{MultiPoly, PolyError};

/// The basis-indexed decomposition `f = sum_alpha (entry_alpha)^(p^e) x^alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeDecomposition {
    field: PrimeField,
    ctx: VarContext,
    e: u32,
    entries: BTreeMap<Monomial, MultiPoly>,
}

impl PeDecomposition {
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Entries keyed by basis monomial (every exponent < p^e), in grevlex order.
    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &MultiPoly)> {
        self.entries.iter()
    }

    pub fn entry(&self, alpha: &Monomial) -> Option<&MultiPoly> {
        self.entries.get(alpha)
    }

    /// Re-assemble `sum_alpha entry^(p^e) * x^alpha`; equals the decomposed
    /// polynomial by construction, and the test suites hold it to that.
    pub fn reconstruct(&self) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::zero(self.field, &self.ctx);
        for (alpha, c) in &self.entries {
            let powered = c.frobenius_power(self.e)?;
            let shifted = powered.mul_term(alpha, 1)?;
            acc = acc.add(&shifted)?;
        }
        Ok(acc)
    }
}

/// Split `f` over the free basis of R over R^(p^e).
///
/// Each term c*x^beta lands in the entry at `beta mod p^e` as the term
/// c*x^(beta div p^e), componentwise.
pub fn pe_decompose(f: &MultiPoly, e: u32) -> PeDecomposition {
    assert!(e >= 1, "pe_decompose requires e >= 1");
    let p = f.field().modulus();
    let q: u64 = p.checked_pow(e).expect("p^e fits u64 for supported inputs");
    let mut entries: BTreeMap<Monomial, Vec<(Monomial, u64)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut rem = Vec::with_capacity(m.dim());
        let mut quo = Vec::with_capacity(m.dim());
        for &b in m.exps() {
            rem.push((b as u64 % q) as u32);
            quo.push((b as u64 / q) as u32);
        }
        entries
            .entry(Monomial::new(rem))
            .or_default()
            .push((Monomial::new(quo), c));
    }
    let field = f.field();
    let ctx = f.context().clone();
    let entries = entries
        .into_iter()
        .map(|(alpha, terms)| (alpha, MultiPoly::from_terms(field, &ctx, terms)))
        .filter(|(_, poly)| !poly.is_zero())
        .collect();
    PeDecomposition { field, ctx, e, entries }
}

/// A finite generating set for an ideal of R; an empty list is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    field: PrimeField,
    ctx: VarContext,
    gens: Vec<MultiPoly>,
}

impl IdealGens {
    /// Keeps nonzero generators only; order of the input is preserved.
    /// Generators must all live in the stated ring.
    pub fn new(
        field: PrimeField,
        ctx: &VarContext,
        gens: Vec<MultiPoly>,
    ) -> Result<Self, PolyError> {
        for g in &gens {
            if g.field() != field || g.context() != ctx {
                return Err(PolyError::ContextMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealGens { field, ctx: ctx.clone(), gens })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }
}

/// The ideal I_e(f) generated by the p^e-th root entries of `f`, deduplicated
/// up to scalar multiples (generators are *not* otherwise minimalized).
pub fn ie_roots(f: &MultiPoly, e: u32) -> IdealGens {
    let dec = pe_decompose(f, e);
    let field = f.field();
    let mut seen: Vec<MultiPoly> = Vec::new();
    let mut gens: Vec<MultiPoly> = Vec::new();
    for (_, c) in dec.entries() {
        let lc = c.leading_grevlex().map(|(_, c)| c).unwrap_or(1);
        let monic = c.scale(field.inv(lc));
        if !seen.contains(&monic) {
            seen.push(monic);
            gens.push(c.clone());
        }
    }
    IdealGens { field, ctx: f.context().clone(), gens }
}

/// The bracket power J^[p^e]: each generator raised to the p^e-th power.
pub fn bracket_power(ideal: &IdealGens, e: u32) -> Result<IdealGens, PolyError> {
    let mut gens = Vec::with_capacity(ideal.gens.len());
    for g in &ideal.gens {
        gens.push(g.frobenius_power(e)?);
    }
    Ok(IdealGens { field: ideal.field, ctx: ideal.ctx.clone(), gens })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearChangeError {
    /// The matrix is not square of the context dimension.
    Shape { rows: usize, dim: usize },
    /// det = 0 mod p: the substitution is not a change of coordinates.
    Singular,
}

impl fmt::Display for LinearChangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearChangeError::Shape { rows, dim } => {
                write!(f, "matrix shape {rows}x? does not match {dim} variables")
            }
            LinearChangeError::Singular => write!(f, "matrix is singular mod p"),
        }
    }
}

impl Error for LinearChangeError {}

/// An invertible linear substitution x_i -> sum_j A[i][j] x_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    field: PrimeField,
    matrix: Vec<Vec<u64>>,
}

impl LinearChange {
    pub fn new(field: PrimeField, matrix: Vec<Vec<u64>>) -> Result<Self, LinearChangeError> {
        let n = matrix.len();
        let reduced: Vec<Vec<u64>> = matrix
            .iter()
            .map(|row| row.iter().map(|&v| field.reduce(v)).collect())
            .collect();
        for row in &reduced {
            if row.len() != n {
                return Err(LinearChangeError::Shape { rows: n, dim: row.len() });
            }
        }
        if n == 0 || invert_matrix(field, &reduced).is_none() {
            return Err(LinearChangeError::Singular);
        }
        Ok(LinearChange { field, matrix: reduced })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    /// The inverse substitution; exists by construction.
    pub fn inverse(&self) -> LinearChange {
        let inv = invert_matrix(self.field, &self.matrix).expect("validated invertible");
        LinearChange { field: self.field, matrix: inv }
    }

    /// Apply the substitution to a polynomial: f(x) -> f(A x).
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if f.context().dim() != self.dim() || f.field() != self.field {
            return Err(PolyError::ContextMismatch);
        }
        let field = self.field;
        let ctx = f.context();
        // Linear forms replacing each variable, with power caches filled on
        // demand: powers[i][k] = L_i^k.
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.dim());
        for row in &self.matrix {
            let form = MultiPoly::from_terms(
                field,
                ctx,
                row.iter()
                    .enumerate()
                    .map(|(j, &a)| (Monomial::var(ctx.dim(), j), a)),
            );
            powers.push(vec![MultiPoly::one(field, ctx), form]);
        }
        let mut acc = MultiPoly::zero(field, ctx);
        for (m, c) in f.terms() {
            let mut term = MultiPoly::constant(field, ctx, c);
            for (i, &b) in m.exps().iter().enumerate() {
                let b = b as usize;
                while powers[i].len() <= b {
                    let next = powers[i].last().unwrap().mul(&powers[i][1])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][b])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Gauss-Jordan inverse over F_p; `None` when singular.
fn invert_matrix(field: PrimeField, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = field.inv(a[col][col]);
        for j in 0..n {
            a[col][j] = field.mul(a[col][j], scale);
            inv[col][j] = field.mul(inv[col][j], scale);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for j in 0..n {
                    let s = field.mul(factor, a[col][j]);
                    a[r][j] = field.sub(a[r][j], s);
                    let s = field.mul(factor, inv[col][j]);
                    inv[r][j] = field.sub(inv[r][j], s);
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(p: u64, vars: &[&str]) -> (PrimeField, VarContext) {
        (
            PrimeField::new(p).unwrap(),
            VarContext::new(vars.to_vec()).unwrap(),
        )
    }

    fn gens_as_strings(ideal: &IdealGens) -> Vec<String> {
        let mut v: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn fermat_times_xyz_mod_2() {
        // I_1(xyz * (x^3+y^3+z^3)) = (x^2, y^2, z^2) over F_2.
        let (f, ctx) = ring(2, &["x", "y", "z"]);
        let g = parse_poly("x*y*z*(x^3 + y^3 + z^3)", f, &ctx).unwrap();
        let ideal = ie_roots(&g, 1);
        assert_eq!(gens_as_strings(&ideal), vec!["x^2", "y^2", "z^2"]);
    }

    #[test]
    fn fermat_times_xyz_mod_3() {
        // Over F_3 the e=1 roots of xyz*(x^3+y^3+z^3)^2 collapse to the single
        // quadric x^2 + 2xy + y^2 + 2xz + 2yz + z^2.
        let (f, ctx) = ring(3, &["x", "y", "z"]);
        let g = parse_poly("x*y*z*(x^3 + y^3 + z^3)^2", f, &ctx).unwrap();
        let ideal = ie_roots(&g, 1);
        assert_eq!(ideal.generators().len(), 1);
        let expect = parse_poly("x^2 + 2*x*y + y^2 + 2*x*z + 2*y*z + z^2", f, &ctx).unwrap();
        assert_eq!(ideal.generators()[0], expect);
    }

    #[test]
    fn monomial_shift_example() {
        // I_1(y^3 * x^12) over F_5: single entry x^2 at residue (2,3).
        let (f, ctx) = ring(5, &["x", "y"]);
        let g = parse_poly("y^3 * x^12", f, &ctx).unwrap();
        let dec = pe_decompose(&g, 1);
        assert_eq!(dec.len(), 1);
        let (alpha, c) = dec.entries().next().unwrap();
        assert_eq!(alpha.exps(), &[2, 3]);
        assert_eq!(c.to_string(), "x^2");
        assert_eq!(gens_as_strings(&ie_roots(&g, 1)), vec!["x^2"]);
    }

    #[test]
    fn reconstruction_inverts_decomposition() {
        let (f, ctx) = ring(3, &["x", "y"]);
        for text in [
            "x^10 + 2*x^7*y^3 + y + 1",
            "(x + y)^8",
            "2*x^26 + x^9*y^9 + 2",
            "0",
        ] {
            let g = parse_poly(text, f, &ctx).unwrap();
            for e in 1..=3u32 {
                let dec = pe_decompose(&g, e);
                assert_eq!(dec.reconstruct().unwrap(), g, "f = {text}, e = {e}");
                // Basis residues really are reduced mod p^e.
                let q = 3u64.pow(e);
                for (alpha, _) in dec.entries() {
                    assert!(alpha.exps().iter().all(|&r| (r as u64) < q));
                }
            }
        }
    }

    #[test]
    fn roots_of_pth_power_recover_original() {
        // I_1(g^p) = (g).
        let (f, ctx) = ring(3, &["x", "y"]);
        let g = parse_poly("x^2*y + 2*x + 1", f, &ctx).unwrap();
        let cube = g.pow(3).unwrap();
        let ideal = ie_roots(&cube, 1);
        assert_eq!(ideal.generators(), &[g]);
    }

    #[test]
    fn scalar_duplicates_coalesce() {
        // f = x^3 + 2y^3 over F_3 decomposes at e=1 into entries x and 2y...
        // no: distinct entries stay; build a real scalar-duplicate case:
        // f = c^3 * m1 + (2c)^3 * m2 with the same root up to scalar.
        let (f, ctx) = ring(3, &["x", "y"]);
        // Entries: residue (1,0) -> x+y, residue (0,1) -> 2x+2y = 2(x+y).
        let g = MultiPoly::from_terms(
            f,
            &ctx,
            [
                // (x+y)^3 * x = x^4 + y^3 x
                (Monomial::new(vec![4, 0]), 1),
                (Monomial::new(vec![1, 3]), 1),
                // (2x+2y)^3 * y = 2x^3 y + 2 y^4
                (Monomial::new(vec![3, 1]), 2),
                (Monomial::new(vec![0, 4]), 2),
            ],
        );
        let dec = pe_decompose(&g, 1);
        assert_eq!(dec.len(), 2);
        let ideal = ie_roots(&g, 1);
        assert_eq!(ideal.generators().len(), 1, "{:?}", gens_as_strings(&ideal));
    }

    #[test]
    fn bracket_power_of_roots_contains_f_terms() {
        // Low-tech containment check: each term of f is divisible by some
        // generator of I_e(f)^[p^e]... not true termwise in general, so just
        // check the e = 0 identity and Frobenius behaviour here; the Gröbner
        // membership witness lives in the integration tests.
        let (f, ctx) = ring(2, &["x", "y"]);
        let g = parse_poly("x^3*y + x*y^3", f, &ctx).unwrap();
        let i1 = ie_roots(&g, 1);
        let b0 = bracket_power(&i1, 0).unwrap();
        assert_eq!(b0, i1);
        let b2 = bracket_power(&i1, 2).unwrap();
        for (orig, br) in i1.generators().iter().zip(b2.generators()) {
            assert_eq!(&orig.frobenius_power(2).unwrap(), br);
        }
    }

    #[test]
    fn zero_polynomial_gives_zero_ideal() {
        let (f, ctx) = ring(5, &["x"]);
        let z = MultiPoly::zero(f, &ctx);
        assert!(pe_decompose(&z, 2).is_empty());
        assert!(ie_roots(&z, 2).is_zero_ideal());
    }

    #[test]
    fn linear_change_validates_and_inverts() {
        let (f, _ctx) = ring(5, &["x", "y"]);
        assert_eq!(
            LinearChange::new(f, vec![vec![1, 2], vec![2, 4]]),
            Err(LinearChangeError::Singular)
        );
        assert!(matches!(
            LinearChange::new(f, vec![vec![1, 2, 3], vec![0, 1, 0]]),
            Err(LinearChangeError::Shape { .. })
        ));
        let a = LinearChange::new(f, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let ainv = a.inverse();
        // A * A^{-1} = I, checked through substitution round trip below.
        let (_, ctx) = ring(5, &["x", "y"]);
        let g = parse_poly("x^3*y + 2*x + 4", f, &ctx).unwrap();
        let moved = a.apply(&g).unwrap();
        let back = ainv.apply(&moved).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn linear_change_is_ring_map() {
        let (f, ctx) = ring(7, &["x", "y", "z"]);
        let a = LinearChange::new(
            f,
            vec![vec![1, 1, 0], vec![0, 1, 0], vec![2, 0, 3]],
        )
        .unwrap();
        let g = parse_poly("x^2*z + 3*y", f, &ctx).unwrap();
        let h = parse_poly("z^2 + x*y + 6", f, &ctx).unwrap();
        let lhs = a.apply(&g.mul(&h).unwrap()).unwrap();
        let rhs = a.apply(&g).unwrap().mul(&a.apply(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = a.apply(&g.add(&h).unwrap()).unwrap();
        let rhs = a.apply(&g).unwrap().add(&a.apply(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
