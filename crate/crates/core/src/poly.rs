//! Sparse multivariate polynomials over F_p.
//!
//! Terms live in a `BTreeMap<Monomial, u64>` keyed by the grevlex order, so a
//! polynomial has exactly one representation: no zero coefficients, exponent
//! vectors of the context dimension, coefficients in `[0, p)`. Everything
//! downstream (root ideals, Gröbner bases, certificates) relies on that
//! canonical form for equality checks and deterministic printing.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use crate::field::PrimeField;
use crate::monomial::{Monomial, VarContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Operands come from different variable contexts or fields.
    ContextMismatch,
    /// An exponent left u32 range.
    ExponentOverflow,
    /// A capped product grew past the configured number of terms.
    TermLimit { limit: usize },
    /// Division by the zero polynomial.
    ZeroDivisor,
    /// A variable index at or past the context dimension.
    VarIndex { index: usize, dim: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ContextMismatch => write!(f, "operands use different variables or fields"),
            PolyError::ExponentOverflow => write!(f, "monomial exponent exceeds u32 range"),
            PolyError::TermLimit { limit } => {
                write!(f, "intermediate polynomial exceeds the {limit}-term limit")
            }
            PolyError::ZeroDivisor => write!(f, "division by the zero polynomial"),
            PolyError::VarIndex { index, dim } => {
                write!(f, "variable index {index} out of range for {dim} variables")
            }
        }
    }
}

impl Error for PolyError {}

/// A sparse polynomial in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    ctx: VarContext,
    terms: BTreeMap<Monomial, u64>,
}

impl MultiPoly {
    // ------------------------------------------------------------------
    // Constructors
    // ------------------------------------------------------------------

    pub fn zero(field: PrimeField, ctx: &VarContext) -> Self {
        MultiPoly { field, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, ctx: &VarContext, c: u64) -> Self {
        let mut p = Self::zero(field, ctx);
        let c = field.reduce(c);
        if c != 0 {
            p.terms.insert(Monomial::one(ctx.dim()), c);
        }
        p
    }

    pub fn one(field: PrimeField, ctx: &VarContext) -> Self {
        Self::constant(field, ctx, 1)
    }

    /// The variable x_i as a polynomial.
    pub fn var(field: PrimeField, ctx: &VarContext, i: usize) -> Result<Self, PolyError> {
        if i >= ctx.dim() {
            return Err(PolyError::VarIndex { index: i, dim: ctx.dim() });
        }
        let mut p = Self::zero(field, ctx);
        p.terms.insert(Monomial::var(ctx.dim(), i), 1);
        Ok(p)
    }

    /// Build from raw (monomial, coefficient) pairs, folding duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(field: PrimeField, ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut p = Self::zero(field, ctx);
        for (m, c) in terms {
            debug_assert_eq!(m.dim(), ctx.dim());
            p.add_term(m, field.reduce(c));
        }
        p
    }

    /// A single term c * x^m.
    pub fn term(field: PrimeField, ctx: &VarContext, m: Monomial, c: u64) -> Self {
        Self::from_terms(field, ctx, [(m, c)])
    }

    // ------------------------------------------------------------------
    // Inspection
    // ------------------------------------------------------------------

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, &c)| m.is_one() && c == 1) == Some(true)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree of the highest term, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.total_degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Largest term under the grevlex order.
    pub fn leading_grevlex(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    fn same_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field == other.field && self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    // ------------------------------------------------------------------
    // Ring operations
    // ------------------------------------------------------------------

    fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> MultiPoly {
        let c = self.field.reduce(c);
        if c == 0 {
            return MultiPoly::zero(self.field, &self.ctx);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(*v, c);
        }
        out
    }

    /// Multiply by a single term in place-ish (used heavily by division).
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Result<MultiPoly, PolyError> {
        let c = self.field.reduce(c);
        if c == 0 {
            return Ok(MultiPoly::zero(self.field, &self.ctx));
        }
        let mut out = MultiPoly::zero(self.field, &self.ctx);
        for (k, &v) in &self.terms {
            let km = k.checked_mul(m).ok_or(PolyError::ExponentOverflow)?;
            out.terms.insert(km, self.field.mul(v, c));
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.mul_capped(other, None)
    }

    /// Product with an optional cap on the number of accumulated terms;
    /// breaching the cap aborts with [`PolyError::TermLimit`].
    pub fn mul_capped(
        &self,
        other: &MultiPoly,
        cap: Option<usize>,
    ) -> Result<MultiPoly, PolyError> {
        self.same_ring(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = MultiPoly::zero(self.field, &self.ctx);
        for (ma, &ca) in &small.terms {
            for (mb, &cb) in &large.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                out.add_term(m, self.field.mul(ca, cb));
            }
            if let Some(cap) = cap {
                if out.terms.len() > cap {
                    return Err(PolyError::TermLimit { limit: cap });
                }
            }
        }
        Ok(out)
    }

    /// f^(p^i): in characteristic p this just scales every exponent vector by
    /// p^i, coefficients unchanged (they satisfy c^p = c in F_p).
    pub fn frobenius_power(&self, i: u32) -> Result<MultiPoly, PolyError> {
        if i == 0 {
            return Ok(self.clone());
        }
        let mut factor: u64 = 1;
        for _ in 0..i {
            factor = factor
                .checked_mul(self.field.modulus())
                .ok_or(PolyError::ExponentOverflow)?;
        }
        let mut out = MultiPoly::zero(self.field, &self.ctx);
        for (m, &c) in &self.terms {
            let scaled = m.checked_scale(factor).ok_or(PolyError::ExponentOverflow)?;
            out.terms.insert(scaled, c);
        }
        Ok(out)
    }

    /// f^n via the base-p expansion of n: writing n = sum_i d_i p^i with
    /// digits d_i < p, the product of Frobenius twists
    /// f^n = prod_i (f^(d_i))^(p^i) keeps intermediate sizes near the size of
    /// the answer. For n = p^e - 1 this is exactly the twisted-factor form
    /// prod_{i<e} (f^(p-1))^(p^i) that the level routines depend on.
    pub fn pow(&self, n: u64) -> Result<MultiPoly, PolyError> {
        self.pow_capped(n, None)
    }

    pub fn pow_capped(&self, n: u64, cap: Option<usize>) -> Result<MultiPoly, PolyError> {
        if n == 0 {
            return Ok(MultiPoly::one(self.field, &self.ctx));
        }
        let p = self.field.modulus();
        // Digit powers f^d are tiny (d < p); cache them by digit value.
        let mut digit_pows: BTreeMap<u64, MultiPoly> = BTreeMap::new();
        let mut acc: Option<MultiPoly> = None;
        let mut rest = n;
        let mut i: u32 = 0;
        while rest > 0 {
            let d = rest % p;
            rest /= p;
            if d != 0 {
                if !digit_pows.contains_key(&d) {
                    let fd = self.pow_binary(d, cap)?;
                    digit_pows.insert(d, fd);
                }
                let twisted = digit_pows[&d].frobenius_power(i)?;
                acc = Some(match acc {
                    None => twisted,
                    Some(a) => a.mul_capped(&twisted, cap)?,
                });
            }
            i += 1;
        }
        Ok(acc.expect("n > 0 has a nonzero digit"))
    }

    /// Plain square-and-multiply; also the independent oracle path used by
    /// certificate verification.
    pub(crate) fn pow_binary(&self, n: u64, cap: Option<usize>) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::one(self.field, &self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_capped(&base, cap)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    /// Exact division: `Some(q)` with `self = q * divisor` when the divisor
    /// divides exactly, `None` otherwise. Errors only on a zero divisor.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>, PolyError> {
        self.same_ring(divisor)?;
        let (dm, dc) = match divisor.leading_grevlex() {
            None => return Err(PolyError::ZeroDivisor),
            Some(lt) => lt,
        };
        let dm = dm.clone();
        let dc_inv = self.field.inv(dc);
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.field, &self.ctx);
        while let Some((rm, rc)) = rem.leading_grevlex() {
            if !dm.divides(rm) {
                return Ok(None);
            }
            let qm = dm.quotient_into(rm);
            let qc = self.field.mul(rc, dc_inv);
            quot.add_term(qm.clone(), qc);
            let sub = divisor.mul_term(&qm, qc)?;
            rem = rem.sub(&sub)?;
        }
        Ok(Some(quot))
    }
}

// ----------------------------------------------------------------------
// Printing: descending grevlex, coefficient-first, grammar-compatible.
// ----------------------------------------------------------------------

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut wrote_factor = false;
            if c != 1 || m.is_one() {
                write!(f, "{c}")?;
                wrote_factor = true;
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                wrote_factor = true;
                write!(f, "{}", self.ctx.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
