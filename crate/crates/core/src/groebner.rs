//! Gröbner bases over F_p and ideal membership with cofactors.
//!
//! Buchberger's algorithm with the normal pair-selection strategy (smallest
//! lcm degree first) and the coprime and chain criteria, followed by full
//! interreduction, so the output is *the* reduced Gröbner basis: monic,
//! no term of any element divisible by another element's leading monomial,
//! unique for the ideal and order. Membership tests return the division
//! cofactors, and an internal variant tracks how each basis element is built
//! from the input generators, which is what turns a successful containment
//! into an explicit operator certificate in the level module.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::monomial::Monomial;
use crate::poly::{MultiPoly, PolyError};
use crate::roots::IdealGens;

/// Supported monomial orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the crate-wide default).
    GrevLex,
    /// Pure lexicographic in context variable order.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.grevlex_cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
        }
    }
}

fn leading(p: &MultiPoly, order: MonomialOrder) -> Option<(Monomial, u64)> {
    match order {
        MonomialOrder::GrevLex => p.leading_grevlex().map(|(m, c)| (m.clone(), c)),
        MonomialOrder::Lex => p
            .terms()
            .max_by(|(a, _), (b, _)| a.lex_cmp(b))
            .map(|(m, c)| (m.clone(), c)),
    }
}

/// A reduced Gröbner basis. The zero ideal is the empty basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<MultiPoly>,
    leads: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Basis elements, monic, sorted by decreasing leading monomial.
    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Result of dividing `f` by a Gröbner basis:
/// `f = sum_i cofactors[i] * basis[i] + remainder`, with no remainder term
/// divisible by any basis leading monomial. `member` iff the remainder is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipResult {
    pub member: bool,
    pub cofactors: Vec<MultiPoly>,
    pub remainder: MultiPoly,
}

// ----------------------------------------------------------------------
// Division
// ----------------------------------------------------------------------

struct Division {
    cofactors: Vec<MultiPoly>,
    remainder: MultiPoly,
}

/// Multivariate division by monic divisors; deterministic (first divisor in
/// list order whose leading monomial divides wins each step).
fn divide(
    f: &MultiPoly,
    divisors: &[MultiPoly],
    leads: &[Monomial],
    order: MonomialOrder,
    want_cofactors: bool,
) -> Result<Division, PolyError> {
    let field = f.field();
    let ctx = f.context();
    let mut cofactors = if want_cofactors {
        vec![MultiPoly::zero(field, ctx); divisors.len()]
    } else {
        Vec::new()
    };
    let mut remainder = MultiPoly::zero(field, ctx);
    let mut h = f.clone();
    while let Some((lm, lc)) = leading(&h, order) {
        match leads.iter().position(|g| g.divides(&lm)) {
            Some(i) => {
                let qm = leads[i].quotient_into(&lm);
                let step = divisors[i].mul_term(&qm, lc)?;
                h = h.sub(&step)?;
                if want_cofactors {
                    let t = MultiPoly::term(field, ctx, qm, lc);
                    cofactors[i] = cofactors[i].add(&t)?;
                }
            }
            None => {
                let t = MultiPoly::term(field, ctx, lm, lc);
                remainder = remainder.add(&t)?;
                h = h.sub(&t)?;
            }
        }
    }
    Ok(Division { cofactors, remainder })
}

/// Reduce `f` modulo the basis, returning membership plus the division data.
pub fn normal_form(f: &MultiPoly, basis: &GroebnerBasis) -> Result<MembershipResult, PolyError> {
    for b in &basis.elements {
        if b.field() != f.field() || b.context() != f.context() {
            return Err(PolyError::ContextMismatch);
        }
    }
    let div = divide(f, &basis.elements, &basis.leads, basis.order, true)?;
    Ok(MembershipResult {
        member: div.remainder.is_zero(),
        cofactors: div.cofactors,
        remainder: div.remainder,
    })
}

// ----------------------------------------------------------------------
// Buchberger
// ----------------------------------------------------------------------

struct WorkElem {
    poly: MultiPoly,
    lead: Monomial,
    /// Expression of `poly` over the original generators, when tracked.
    rep: Option<Vec<MultiPoly>>,
}

struct Engine {
    order: MonomialOrder,
    elems: Vec<WorkElem>,
    /// Pairs not yet handled, as (i, j) with i < j.
    pending: BTreeSet<(usize, usize)>,
    /// Pairs already selected (and either skipped by a criterion or reduced).
    done: BTreeSet<(usize, usize)>,
}

impl Engine {
    fn leads(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lead.clone()).collect()
    }

    fn polys(&self) -> Vec<MultiPoly> {
        self.elems.iter().map(|e| e.poly.clone()).collect()
    }

    /// Reduce `f` (with representation bookkeeping) against the current
    /// elements and push it if nonzero.
    fn absorb(
        &mut self,
        f: MultiPoly,
        rep: Option<Vec<MultiPoly>>,
    ) -> Result<(), PolyError> {
        let polys = self.polys();
        let leads = self.leads();
        let track = rep.is_some();
        let div = divide(&f, &polys, &leads, self.order, track)?;
        if div.remainder.is_zero() {
            return Ok(());
        }
        let field = f.field();
        let mut rep = rep;
        if let Some(r) = rep.as_mut() {
            // remainder = f - sum_i q_i * elem_i, so its representation is
            // rep(f) - sum_i q_i * rep(elem_i).
            for (i, q) in div.cofactors.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let elem_rep = self.elems[i].rep.as_ref().expect("tracked run");
                for (slot, er) in r.iter_mut().zip(elem_rep) {
                    *slot = slot.sub(&q.mul(er)?)?;
                }
            }
        }
        let (lm, lc) = leading(&div.remainder, self.order).expect("nonzero");
        let inv = field.inv(lc);
        let poly = div.remainder.scale(inv);
        if let Some(r) = rep.as_mut() {
            for slot in r.iter_mut() {
                *slot = slot.scale(inv);
            }
        }
        let idx = self.elems.len();
        self.elems.push(WorkElem { poly, lead: lm, rep });
        for i in 0..idx {
            self.pending.insert((i, idx));
        }
        Ok(())
    }

    fn select_pair(&self) -> Option<(usize, usize)> {
        // Normal strategy: minimal lcm total degree, ties broken by the
        // monomial order on the lcm and then by index, for determinism.
        self.pending
            .iter()
            .copied()
            .min_by(|&(a, b), &(c, d)| {
                let l1 = self.elems[a].lead.lcm(&self.elems[b].lead);
                let l2 = self.elems[c].lead.lcm(&self.elems[d].lead);
                l1.total_degree()
                    .cmp(&l2.total_degree())
                    .then_with(|| self.order.cmp(&l1, &l2))
                    .then_with(|| (a, b).cmp(&(c, d)))
            })
    }

    fn run(&mut self) -> Result<(), PolyError> {
        while let Some((i, j)) = self.select_pair() {
            self.pending.remove(&(i, j));
            self.done.insert((i, j));
            let li = &self.elems[i].lead;
            let lj = &self.elems[j].lead;
            // Buchberger's first criterion: coprime leading monomials.
            if li.coprime_with(lj) {
                continue;
            }
            // Chain criterion: some k with lead_k | lcm(i,j) and both
            // (i,k), (j,k) already handled before this pair.
            let lcm = li.lcm(lj);
            let chained = (0..self.elems.len()).any(|k| {
                k != i
                    && k != j
                    && self.elems[k].lead.divides(&lcm)
                    && self.done.contains(&key(i, k))
                    && self.done.contains(&key(j, k))
            });
            if chained {
                continue;
            }
            let (s, rep) = self.spoly(i, j)?;
            self.absorb(s, rep)?;
        }
        Ok(())
    }

    fn spoly(&self, i: usize, j: usize) -> Result<(MultiPoly, Option<Vec<MultiPoly>>), PolyError> {
        let li = &self.elems[i].lead;
        let lj = &self.elems[j].lead;
        let lcm = li.lcm(lj);
        let mi = li.quotient_into(&lcm);
        let mj = lj.quotient_into(&lcm);
        let s = self.elems[i]
            .poly
            .mul_term(&mi, 1)?
            .sub(&self.elems[j].poly.mul_term(&mj, 1)?)?;
        let rep = match (&self.elems[i].rep, &self.elems[j].rep) {
            (Some(ri), Some(rj)) => {
                let mut out = Vec::with_capacity(ri.len());
                for (a, b) in ri.iter().zip(rj) {
                    out.push(a.mul_term(&mi, 1)?.sub(&b.mul_term(&mj, 1)?)?);
                }
                Some(out)
            }
            _ => None,
        };
        Ok((s, rep))
    }

    /// Minimalize and tail-reduce, producing the reduced basis (still with
    /// representations when tracked).
    fn interreduce(&mut self) -> Result<(), PolyError> {
        // Minimal: drop any element whose lead is divisible by another kept
        // element's lead (scan ascending by lead so the survivor is minimal).
        let mut order_idx: Vec<usize> = (0..self.elems.len()).collect();
        order_idx.sort_by(|&a, &b| self.order.cmp(&self.elems[a].lead, &self.elems[b].lead));
        let mut kept: Vec<usize> = Vec::new();
        for idx in order_idx {
            let lead = &self.elems[idx].lead;
            if !kept.iter().any(|&k| self.elems[k].lead.divides(lead)) {
                kept.push(idx);
            }
        }
        let mut minimal: Vec<WorkElem> = Vec::with_capacity(kept.len());
        for idx in kept {
            minimal.push(WorkElem {
                poly: self.elems[idx].poly.clone(),
                lead: self.elems[idx].lead.clone(),
                rep: self.elems[idx].rep.clone(),
            });
        }
        // Tail-reduce each element against all the others until stable.
        let n = minimal.len();
        for i in 0..n {
            let others_poly: Vec<MultiPoly> = (0..n)
                .filter(|&k| k != i)
                .map(|k| minimal[k].poly.clone())
                .collect();
            let others_lead: Vec<Monomial> = (0..n)
                .filter(|&k| k != i)
                .map(|k| minimal[k].lead.clone())
                .collect();
            let track = minimal[i].rep.is_some();
            let div = divide(&minimal[i].poly, &others_poly, &others_lead, self.order, track)?;
            // Leads are minimal, so the remainder keeps the same lead and
            // stays monic.
            debug_assert!(!div.remainder.is_zero());
            if track {
                let mut rep = minimal[i].rep.clone().expect("tracked");
                let other_idx: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                for (pos, q) in div.cofactors.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let k = other_idx[pos];
                    let kr = minimal[k].rep.clone().expect("tracked");
                    for (slot, er) in rep.iter_mut().zip(&kr) {
                        *slot = slot.sub(&q.mul(er)?)?;
                    }
                }
                minimal[i].rep = Some(rep);
            }
            minimal[i].poly = div.remainder;
        }
        // Canonical presentation: decreasing leading monomial.
        minimal.sort_by(|a, b| self.order.cmp(&b.lead, &a.lead));
        self.elems = minimal;
        Ok(())
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn buchberger(
    gens: &IdealGens,
    order: MonomialOrder,
    track: bool,
) -> Result<(GroebnerBasis, Option<Vec<Vec<MultiPoly>>>), PolyError> {
    let field = gens.field();
    let ctx = gens.context();
    let mut engine = Engine {
        order,
        elems: Vec::new(),
        pending: BTreeSet::new(),
        done: BTreeSet::new(),
    };
    let n = gens.generators().len();
    for (j, g) in gens.generators().iter().enumerate() {
        let rep = track.then(|| {
            let mut r = vec![MultiPoly::zero(field, ctx); n];
            r[j] = MultiPoly::one(field, ctx);
            r
        });
        engine.absorb(g.clone(), rep)?;
    }
    engine.run()?;
    engine.interreduce()?;
    let leads = engine.leads();
    let elements = engine.polys();
    let transform = track.then(|| {
        engine
            .elems
            .iter()
            .map(|e| e.rep.clone().expect("tracked run"))
            .collect()
    });
    Ok((GroebnerBasis { order, elements, leads }, transform))
}

/// The reduced Gröbner basis of the ideal under the given order.
pub fn groebner_basis(gens: &IdealGens, order: MonomialOrder) -> Result<GroebnerBasis, PolyError> {
    buchberger(gens, order, false).map(|(b, _)| b)
}

/// Reduced basis plus, for each basis element, cofactors expressing it in
/// terms of the input generators: `basis[i] = sum_j transform[i][j] * gens[j]`.
pub(crate) fn groebner_basis_with_transform(
    gens: &IdealGens,
    order: MonomialOrder,
) -> Result<(GroebnerBasis, Vec<Vec<MultiPoly>>), PolyError> {
    let (basis, transform) = buchberger(gens, order, true)?;
    Ok((basis, transform.expect("tracked run")))
}

/// Does the ideal generated by `inner` sit inside the one generated by
/// `outer`? Every generator of `inner` must reduce to zero.
pub fn ideal_contains(
    inner: &IdealGens,
    outer: &IdealGens,
    order: MonomialOrder,
) -> Result<bool, PolyError> {
    if inner.field() != outer.field() || inner.context() != outer.context() {
        return Err(PolyError::ContextMismatch);
    }
    let basis = groebner_basis(outer, order)?;
    for g in inner.generators() {
        if !normal_form(g, &basis)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal equality through identical reduced Gröbner bases.
pub fn ideal_equal(
    a: &IdealGens,
    b: &IdealGens,
    order: MonomialOrder,
) -> Result<bool, PolyError> {
    if a.field() != b.field() || a.context() != b.context() {
        return Err(PolyError::ContextMismatch);
    }
    let ba = groebner_basis(a, order)?;
    let bb = groebner_basis(b, order)?;
    Ok(ba.elements() == bb.elements())
}
