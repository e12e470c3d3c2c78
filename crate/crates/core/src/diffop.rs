//! Divided-power differential operators and composite operator words.
//!
//! The operator `D_{x_i, t}` sends `x_i^s` to `binom(s, t) * x_i^(s-t)` (zero
//! for `s < t`) and treats the other variables as constants. These operators
//! together with multiplications generate the relevant differential operators
//! in characteristic p, where the plain iterated derivative `d^t/dx^t` would
//! vanish for `t >= p` but the divided power does not.

use crate::binom::binom_mod_p;
use crate::monomial::Monomial;
use crate::poly::{MultiPoly, PolyError};

/// One letter of an operator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorAtom {
    /// The divided-power operator `D_{x_var, order}` with `order >= 1`.
    DividedPower { var: usize, order: u32 },
    /// Multiplication by a fixed polynomial.
    MultiplyBy(MultiPoly),
}

/// A composition of atoms, applied right to left: the last atom in the list
/// acts first, like reading a composition `a_1 ∘ a_2 ∘ ... ∘ a_k` off the page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorWord {
    atoms: Vec<OperatorAtom>,
}

impl OperatorWord {
    pub fn new(atoms: Vec<OperatorAtom>) -> Self {
        OperatorWord { atoms }
    }

    pub fn atoms(&self) -> &[OperatorAtom] {
        &self.atoms
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        operator_word_apply(self, f)
    }
}

/// Apply `D_{x_var, order}` to `f`.
pub fn divided_power_apply(
    f: &MultiPoly,
    var: usize,
    order: u32,
) -> Result<MultiPoly, PolyError> {
    let dim = f.context().dim();
    if var >= dim {
        return Err(PolyError::VarIndex { index: var, dim });
    }
    let field = f.field();
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        let s = m.exps()[var];
        if s < order {
            continue;
        }
        let b = binom_mod_p(field, s as u64, order as u64);
        if b == 0 {
            continue;
        }
        let mut exps = m.exps().to_vec();
        exps[var] = s - order;
        out.push((Monomial::new(exps), field.mul(c, b)));
    }
    Ok(MultiPoly::from_terms(field, f.context(), out))
}

/// Apply a word atom by atom, rightmost first.
pub fn operator_word_apply(word: &OperatorWord, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let mut acc = f.clone();
    for atom in word.atoms().iter().rev() {
        acc = match atom {
            OperatorAtom::DividedPower { var, order } => {
                divided_power_apply(&acc, *var, *order)?
            }
            OperatorAtom::MultiplyBy(g) => g.mul(&acc)?,
        };
    }
    Ok(acc)
}
