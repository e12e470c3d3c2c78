//! Variable contexts and exponent vectors.
//!
//! A [`VarContext`] fixes the ambient polynomial ring k[x_1..x_d] by naming its
//! variables; a [`Monomial`] is an exponent vector of that dimension. The
//! intrinsic `Ord` on monomials is graded reverse lexicographic, which is the
//! canonical term order everywhere in this crate (term maps iterate in it,
//! printing uses it, and Gröbner runs default to it).

use std::cmp::Ordering;
use std::error::Error;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextError {
    /// Contexts need at least one variable.
    Empty,
    /// The same name was given twice.
    Duplicate(String),
    /// Names must match `[a-zA-Z][a-zA-Z0-9]*`.
    BadName(String),
}

impl fmt::Display for ContextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextError::Empty => write!(f, "variable context must not be empty"),
            ContextError::Duplicate(n) => write!(f, "duplicate variable name `{n}`"),
            ContextError::BadName(n) => write!(f, "invalid variable name `{n}`"),
        }
    }
}

impl Error for ContextError {}

/// An ordered list of distinct variable names; clones share the name table.
#[derive(Debug, Clone)]
pub struct VarContext {
    names: Arc<[String]>,
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarContext {}

pub fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric()),
        _ => false,
    }
}

impl VarContext {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, ContextError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ContextError::Empty);
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(ContextError::BadName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(ContextError::Duplicate(n.clone()));
            }
        }
        Ok(VarContext { names: names.into() })
    }

    /// Number of variables d.
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// An exponent vector; the entry at position i is the exponent of the i-th
/// context variable. Exponents are u32 by design: anything that would push
/// past u32::MAX is reported as overflow by the callers doing the pushing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    /// The basis monomial x_i.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise sum; `None` when an exponent leaves u32 range.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(b)?);
        }
        Some(Monomial { exps })
    }

    /// Componentwise scaling by an integer factor (Frobenius twists).
    pub fn checked_scale(&self, factor: u64) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for &a in &self.exps {
            let v = (a as u64).checked_mul(factor)?;
            exps.push(u32::try_from(v).ok()?);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// Exact quotient `other / self`; caller must have checked divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(&b, &a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    /// True when the two monomials share no variable (their gcd is 1).
    pub fn coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Graded reverse lexicographic comparison: higher total degree wins;
    /// on equal degree the monomial whose *last* differing exponent is
    /// *smaller* is the larger one.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (&a, &b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(&b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison: the first differing exponent decides.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn context_validation() {
        assert!(VarContext::new(Vec::<String>::new()).is_err());
        assert!(matches!(
            VarContext::new(vec!["x", "x"]),
            Err(ContextError::Duplicate(_))
        ));
        assert!(matches!(
            VarContext::new(vec!["1x"]),
            Err(ContextError::BadName(_))
        ));
        assert!(matches!(
            VarContext::new(vec!["x y"]),
            Err(ContextError::BadName(_))
        ));
        let ctx = VarContext::new(vec!["x", "y2", "Zw"]).unwrap();
        assert_eq!(ctx.dim(), 3);
        assert_eq!(ctx.index_of("y2"), Some(1));
        assert_eq!(ctx.index_of("w"), None);
    }

    #[test]
    fn grevlex_textbook_order() {
        // In k[x,y,z], grevlex on degree 2: x^2 > xy > y^2 > xz > yz > z^2.
        let expect = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in expect.windows(2) {
            assert_eq!(w[0].grevlex_cmp(&w[1]), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
        // Degree dominates.
        assert_eq!(m(&[0, 0, 3]).grevlex_cmp(&m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_differs_from_lex() {
        // x z^2 vs y^3: lex says x wins; grevlex compares degree (equal) then
        // last exponent (z^2 loses to z^0), so y^3 < x z^2 in lex but
        // x z^2 < y^3 in grevlex.
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
        assert_eq!(a.grevlex_cmp(&b), Ordering::Less);
    }

    #[test]
    fn arithmetic_helpers() {
        let a = m(&[3, 1]);
        let b = m(&[1, 4]);
        assert_eq!(a.checked_mul(&b), Some(m(&[4, 5])));
        assert_eq!(a.lcm(&b), m(&[3, 4]));
        assert!(m(&[1, 1]).divides(&m(&[3, 1])));
        assert!(!m(&[1, 2]).divides(&m(&[3, 1])));
        assert_eq!(m(&[1, 1]).quotient_into(&m(&[3, 1])), m(&[2, 0]));
        assert!(m(&[2, 0]).coprime_with(&m(&[0, 5])));
        assert!(!m(&[2, 1]).coprime_with(&m(&[0, 5])));
        assert_eq!(m(&[u32::MAX, 0]).checked_mul(&m(&[1, 0])), None);
        assert_eq!(m(&[1 << 20, 0]).checked_scale(1 << 13), None);
        assert_eq!(m(&[2, 3]).checked_scale(4), Some(m(&[8, 12])));
    }
}
