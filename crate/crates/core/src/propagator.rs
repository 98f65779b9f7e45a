//! Closed-form propagator pieces.
//!
//! x-exponents are stored unsquared (`w` where the squared convention
//! writes `2w`) and every non-loop factor is multiplied by the shift
//! `x_i^N x_j^N`, so all exponents are nonnegative. The q-exponent of an
//! edge is its branch degree `a_k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyarith::{Coeff, Integer, Monomial, Rational, SparsePoly, TruncatedSeries, VarContext};

/// One non-loop edge factor to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTermRequest {
    /// Receives exponents `N + w` in the zero-degree term.
    pub vertex_hi: usize,
    /// Receives exponents `N - w` in the zero-degree term.
    pub vertex_lo: usize,
    pub edge_index: usize,
    pub degree: u32,
    pub shift: u32,
}

impl EdgeTermRequest {
    fn check(&self, ctx: &VarContext) -> Result<()> {
        if self.vertex_hi == self.vertex_lo {
            return Err(Error::LoopRequested(self.vertex_hi + 1));
        }
        if self.vertex_hi >= ctx.x || self.vertex_lo >= ctx.x || self.edge_index >= ctx.q {
            return Err(Error::ContextMismatch(format!("edge term {self:?} outside {ctx:?}")));
        }
        if self.degree > self.shift {
            return Err(Error::InvalidDegree(format!(
                "edge degree {} exceeds shift {}",
                self.degree, self.shift
            )));
        }
        Ok(())
    }

    /// The weights `w` and x-exponent pairs `(hi, lo)` this factor sums over.
    fn weighted_exponents(&self) -> Vec<(u32, u32, u32)> {
        let n = self.shift;
        if self.degree == 0 {
            (1..=n).map(|w| (w, n + w, n - w)).collect()
        } else {
            divisors(self.degree)
                .into_iter()
                .flat_map(|w| [(w, n + w, n - w), (w, n - w, n + w)])
                .collect()
        }
    }

    fn exponents(&self, ctx: &VarContext, hi: u32, lo: u32) -> Vec<u32> {
        let mut e = vec![0u32; ctx.len()];
        e[ctx.x_slot(self.vertex_hi)] = hi;
        e[ctx.x_slot(self.vertex_lo)] = lo;
        e[ctx.q_slot(self.edge_index)] = self.degree;
        e
    }
}

/// Positive divisors of `n` in increasing order (empty for `n = 0`).
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisor power sum `sigma_k(n)`.
pub fn sigma(k: u32, n: u32) -> Integer {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// `sum_{w=1}^{N} w x_hi^{N+w} x_lo^{N-w}`: the shifted q-constant part
/// of a zero-degree edge, with `hi` the earlier vertex.
pub fn const_term<C: Coeff>(ctx: &VarContext, hi: usize, lo: usize, edge: usize, shift: u32) -> Result<SparsePoly<C>> {
    let req = EdgeTermRequest {
        vertex_hi: hi,
        vertex_lo: lo,
        edge_index: edge,
        degree: 0,
        shift,
    };
    build_hurwitz(ctx, &req)
}

/// `sum_{w | d} w (x_i^{N+w} x_j^{N-w} + x_i^{N-w} x_j^{N+w}) q_k^d`.
pub fn non_const_term<C: Coeff>(
    ctx: &VarContext,
    i: usize,
    j: usize,
    edge: usize,
    degree: u32,
    shift: u32,
) -> Result<SparsePoly<C>> {
    if degree == 0 {
        return Err(Error::InvalidDegree("zero-degree edges use const_term".into()));
    }
    let req = EdgeTermRequest {
        vertex_hi: i,
        vertex_lo: j,
        edge_index: edge,
        degree,
        shift,
    };
    build_hurwitz(ctx, &req)
}

fn build_hurwitz<C: Coeff>(ctx: &VarContext, req: &EdgeTermRequest) -> Result<SparsePoly<C>> {
    req.check(ctx)?;
    let mut p = SparsePoly::zero(*ctx);
    for (w, hi, lo) in req.weighted_exponents() {
        let m = Monomial::new(ctx, req.exponents(ctx, hi, lo))?;
        p.add_term(m, C::from_integer(BigInt::from(w)));
    }
    Ok(p)
}

/// Coefficient of `q^a` in the loop propagator: `sigma(a)`, and 0 for `a = 0`.
pub fn loop_coefficient(a: u32) -> Integer {
    sigma(1, a)
}

/// `S(w z) = sinh(w z / 2) / (w z / 2)` truncated after `z^order`.
pub fn s_series(scale: u32, order: usize) -> TruncatedSeries {
    let w2 = BigInt::from(scale).pow(2);
    let mut coeffs = Vec::with_capacity(order + 1);
    // c_{2m} = w^{2m} / (4^m (2m+1)!)
    let mut c = Rational::one();
    for k in 0..=order {
        if k % 2 == 1 {
            coeffs.push(Rational::zero());
            continue;
        }
        if k > 0 {
            let m = (k / 2) as i64;
            c = c * Rational::from_integer(w2.clone())
                / Rational::from_integer(BigInt::from(4 * (2 * m) * (2 * m + 1)));
        }
        coeffs.push(c.clone());
    }
    TruncatedSeries::new("z", order, coeffs)
}

/// Places a univariate series in the `z`-slot of `vertex`.
pub fn series_in_z(ctx: &VarContext, vertex: usize, s: &TruncatedSeries) -> Result<SparsePoly<Rational>> {
    if vertex >= ctx.z {
        return Err(Error::ContextMismatch(format!("no z-slot for vertex {}", vertex + 1)));
    }
    let mut p = SparsePoly::zero(*ctx);
    for (k, c) in s.coeffs().iter().enumerate() {
        let mut e = vec![0u32; ctx.len()];
        e[ctx.z_slot(vertex)] = k as u32;
        p.add_term(Monomial::new(ctx, e)?, c.clone());
    }
    Ok(p)
}

/// Edge factor with vertex contributions: each weight-`w` summand of the
/// Hurwitz term is multiplied by `S(w z_hi) S(w z_lo)`, truncated at the
/// per-vertex orders.
pub fn descendant_edge_term(
    ctx: &VarContext,
    req: &EdgeTermRequest,
    order_hi: usize,
    order_lo: usize,
) -> Result<SparsePoly<Rational>> {
    req.check(ctx)?;
    if req.vertex_hi >= ctx.z || req.vertex_lo >= ctx.z {
        return Err(Error::ContextMismatch("descendant terms need a z-slot per vertex".into()));
    }
    let mut p = SparsePoly::zero(*ctx);
    for (w, hi, lo) in req.weighted_exponents() {
        let s_hi = s_series(w, order_hi);
        let s_lo = s_series(w, order_lo);
        let base = req.exponents(ctx, hi, lo);
        let weight = Rational::from_integer(BigInt::from(w));
        for (k, ck) in s_hi.coeffs().iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (l, cl) in s_lo.coeffs().iter().enumerate() {
                if cl.is_zero() {
                    continue;
                }
                let mut e = base.clone();
                e[ctx.z_slot(req.vertex_hi)] = k as u32;
                e[ctx.z_slot(req.vertex_lo)] = l as u32;
                p.add_term(Monomial::new(ctx, e)?, ck * cl * &weight);
            }
        }
    }
    Ok(p)
}

/// `sum_{w | a} w S(w z)^2`, truncated after `z^order`; zero for `a = 0`.
pub fn descendant_loop_coefficient(a: u32, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero("z", order);
    for w in divisors(a) {
        let s = s_series(w, order);
        let sq = s.mul(&s).expect("same tag");
        acc = acc
            .add(&sq.scale(&Rational::from_integer(BigInt::from(w))))
            .expect("same tag");
    }
    acc
}
