use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;
use std::hash::BuildHasherDefault;

use rustc_hash::FxHasher;
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use crate::error::{Error, Result};

type TermMap<C> = HashMap<Monomial, C, BuildHasherDefault<FxHasher>>;

/// Layout of the variables a polynomial ranges over.
///
/// Slots are laid out as `x_0..x_{n-1}`, then `q_0..q_{r-1}`, then
/// `z_0..z_{m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarContext {
    pub x: usize,
    pub q: usize,
    pub z: usize,
}

impl VarContext {
    pub fn new(x: usize, q: usize, z: usize) -> Self {
        Self { x, q, z }
    }

    /// A context holding only `n` anonymous variables.
    pub fn plain(n: usize) -> Self {
        Self { x: n, q: 0, z: 0 }
    }

    pub fn len(&self) -> usize {
        self.x + self.q + self.z
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x_slot(&self, vertex: usize) -> usize {
        debug_assert!(vertex < self.x);
        vertex
    }

    pub fn q_slot(&self, edge: usize) -> usize {
        debug_assert!(edge < self.q);
        self.x + edge
    }

    pub fn z_slot(&self, vertex: usize) -> usize {
        debug_assert!(vertex < self.z);
        self.x + self.q + vertex
    }

    fn check(&self, other: &VarContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// Exponent vector, one slot per variable of the ambient [`VarContext`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(ctx: &VarContext, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ctx.len() {
            return Err(Error::ContextMismatch(format!(
                "monomial has {} slots, context has {}",
                exponents.len(),
                ctx.len()
            )));
        }
        Ok(Self(exponents.into_boxed_slice()))
    }

    /// Builds a monomial from wide exponents, rejecting any that overflow `u32`.
    pub fn from_wide(ctx: &VarContext, exponents: &[u64]) -> Result<Self> {
        let narrow = exponents
            .iter()
            .map(|&e| u32::try_from(e).map_err(|_| Error::ExponentOverflow(e)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, narrow)
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self(vec![0; ctx.len()].into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Borrow<[u32]> for Monomial {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

/// Term filter applied while multiplying.
///
/// `exact` entries discard every product term whose exponent in that
/// variable differs from the target; this is only sound when no later
/// factor involves the variable. `ceiling` entries discard terms whose
/// exponent exceeds the bound; this is sound whenever all later factors
/// have nonnegative exponents, which always holds here.
#[derive(Debug, Clone, Default)]
pub struct Prune {
    exact: Vec<(usize, u32)>,
    ceiling: Vec<(usize, u32)>,
}

impl Prune {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn exact(mut self, var: usize, target: u32) -> Self {
        self.exact.push((var, target));
        self
    }

    pub fn ceiling(mut self, var: usize, bound: u32) -> Self {
        self.ceiling.push((var, bound));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty() && self.ceiling.is_empty()
    }

    fn keeps(&self, exps: &[u32]) -> bool {
        self.exact.iter().all(|&(v, t)| exps[v] == t)
            && self.ceiling.iter().all(|&(v, b)| exps[v] <= b)
    }

    fn check(&self, ctx: &VarContext) -> Result<()> {
        let n = ctx.len();
        match self.exact.iter().chain(&self.ceiling).find(|&&(v, _)| v >= n) {
            Some((v, _)) => Err(Error::ContextMismatch(format!(
                "prune variable {v} outside a context of {n} slots"
            ))),
            None => Ok(()),
        }
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Zero coefficients are never stored, so equal polynomials have equal
/// term maps.
#[derive(Clone)]
pub struct SparsePoly<C> {
    ctx: VarContext,
    terms: TermMap<C>,
}

impl<C: Coeff> SparsePoly<C> {
    pub fn zero(ctx: VarContext) -> Self {
        Self {
            ctx,
            terms: TermMap::default(),
        }
    }

    pub fn constant(ctx: VarContext, c: C) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one(&ctx), c);
        p
    }

    pub fn one(ctx: VarContext) -> Self {
        Self::constant(ctx, C::one())
    }

    /// Single term `c * x^exponents`.
    pub fn term(ctx: VarContext, exponents: Vec<u32>, c: C) -> Result<Self> {
        let m = Monomial::new(&ctx, exponents)?;
        let mut p = Self::zero(ctx);
        p.add_term(m, c);
        Ok(p)
    }

    pub fn from_terms(ctx: VarContext, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            p.add_term(Monomial::new(&ctx, e)?, c);
        }
        Ok(p)
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Adds `c * m` to the polynomial, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.len(), self.ctx.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        Self {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_pruned(other, &Prune::default())
    }

    /// Product `self * other`, discarding terms rejected by `prune`.
    pub fn mul_pruned(&self, other: &Self, prune: &Prune) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        prune.check(&self.ctx)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out: TermMap<C> = TermMap::default();
        let mut scratch = vec![0u32; self.ctx.len()];
        for (ma, ca) in small.terms.iter() {
            for (mb, cb) in large.terms.iter() {
                for ((s, a), b) in scratch.iter_mut().zip(ma.0.iter()).zip(mb.0.iter()) {
                    *s = a.checked_add(*b).ok_or(Error::ExponentOverflow(*a as u64 + *b as u64))?;
                }
                if !prune.keeps(&scratch) {
                    continue;
                }
                let prod = ca.clone() * cb;
                match out.get_mut(scratch.as_slice()) {
                    Some(acc) => *acc += &prod,
                    None => {
                        out.insert(Monomial(scratch.clone().into_boxed_slice()), prod);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self {
            ctx: self.ctx,
            terms: out,
        })
    }

    pub fn coefficient_of_term(&self, m: &Monomial) -> Result<C> {
        if m.len() != self.ctx.len() {
            return Err(Error::ContextMismatch(format!(
                "monomial has {} slots, context has {}",
                m.len(),
                self.ctx.len()
            )));
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(C::zero))
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&Monomial, &C) -> bool) {
        self.terms.retain(|m, c| keep(m, c));
    }

    /// Terms in lexicographic exponent order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn to_serialized(&self) -> Vec<SerializedTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| SerializedTerm {
                exponents: m.exponents().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_serialized(ctx: VarContext, terms: &[SerializedTerm]) -> Result<Self> {
        let mut p = Self::zero(ctx);
        for t in terms {
            let c = C::parse_decimal(&t.coeff)
                .ok_or_else(|| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(Monomial::new(&ctx, t.exponents.clone())?, c);
        }
        Ok(p)
    }
}

impl<C: Coeff> PartialEq for SparsePoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for SparsePoly<C> {}

impl<C: Coeff> fmt::Debug for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (slot, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    write!(f, "*v{slot}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Wire form of one polynomial term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}
