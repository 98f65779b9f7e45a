//! Naive reference evaluation: expand the full truncated propagator
//! product for every total vertex order and read off the x-constant term.
//!
//! Nothing here groups orders or prunes intermediate products; it shares
//! only the polynomial primitives with the fast path.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::FeynmanGraph;
use crate::integral::{DegreeSeries, Mode};
use crate::polyarith::{Integer, Monomial, SparsePoly, VarContext};
use crate::signature::VertexOrder;

/// Largest vertex count the oracle will enumerate orders for.
pub const MAX_NAIVE_VERTICES: usize = 8;

/// How far the propagator expansions are carried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationSpec {
    /// Maximum total q-degree.
    pub q_order: u32,
    /// Maximum `|w|` in each ratio expansion.
    pub x_order: u32,
}

impl TruncationSpec {
    /// The smallest truncation that is exact through `q_order`.
    pub fn sufficient(q_order: u32) -> Self {
        Self {
            q_order,
            x_order: q_order,
        }
    }
}

fn divisor_list(n: u32) -> Vec<u32> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

/// Truncated `-P(x_hi / x_lo, q_k)` with every x-exponent offset by
/// `x_order` at both endpoints, so the ratio power `x^w` is stored as
/// `x_hi^{X+w} x_lo^{X-w}`.
pub fn truncated_propagator(ctx: &VarContext, hi: usize, lo: usize, edge: usize, t: &TruncationSpec) -> Result<SparsePoly<Integer>> {
    if hi == lo {
        return Err(Error::LoopRequested(hi + 1));
    }
    let x = t.x_order as i64;
    let mut p = SparsePoly::zero(*ctx);
    let mut push = |w: i64, n: u32, c: u32| -> Result<()> {
        let mut e = vec![0u64; ctx.len()];
        e[ctx.x_slot(hi)] = (x + w) as u64;
        e[ctx.x_slot(lo)] = (x - w) as u64;
        e[ctx.q_slot(edge)] = n as u64;
        p.add_term(Monomial::from_wide(ctx, &e)?, BigInt::from(c));
        Ok(())
    };
    for w in 1..=t.x_order {
        push(w as i64, 0, w)?;
    }
    for n in 1..=t.q_order {
        for d in divisor_list(n) {
            if d > t.x_order {
                continue;
            }
            push(d as i64, n, d)?;
            push(-(d as i64), n, d)?;
        }
    }
    Ok(p)
}

fn loop_series(ctx: &VarContext, edge: usize, t: &TruncationSpec) -> Result<SparsePoly<Integer>> {
    let mut p = SparsePoly::zero(*ctx);
    for n in 1..=t.q_order {
        let sigma: u32 = divisor_list(n).iter().sum();
        let mut e = vec![0u32; ctx.len()];
        e[ctx.q_slot(edge)] = n;
        p.add_term(Monomial::new(ctx, e)?, BigInt::from(sigma));
    }
    Ok(p)
}

fn total_q(ctx: &VarContext, m: &Monomial) -> u64 {
    m.exponents()[ctx.x..ctx.x + ctx.q].iter().map(|&e| e as u64).sum()
}

/// `I_{Gamma, Omega}` per branch type through `t.q_order`.
pub fn naive_integral_ordered(g: &FeynmanGraph, omega: &VertexOrder, t: &TruncationSpec) -> Result<DegreeSeries<Integer>> {
    g.validate()?;
    let ctx = VarContext::new(g.vertex_count(), g.edge_count(), 0);
    for v in 0..g.vertex_count() {
        omega.position(v).ok_or(Error::MissingVertex(v + 1))?;
    }
    let mut product = SparsePoly::one(ctx);
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        let factor = if u == v {
            loop_series(&ctx, k, t)?
        } else if omega.position(u) < omega.position(v) {
            truncated_propagator(&ctx, u, v, k, t)?
        } else {
            truncated_propagator(&ctx, v, u, k, t)?
        };
        product = product.mul(&factor)?;
        product.retain(|m, _| total_q(&ctx, m) <= t.q_order as u64);
    }

    let target: Vec<u32> = g.nonloop_valence().iter().map(|&v| v as u32 * t.x_order).collect();
    let mut out = DegreeSeries::new(Mode::Hurwitz);
    for (m, c) in product.iter() {
        let e = m.exponents();
        if e[..ctx.x] == target[..] && total_q(&ctx, m) >= 1 {
            out.insert(e[ctx.x..].to_vec(), c.clone());
        }
    }
    Ok(out)
}

/// `I_Gamma = sum over all n! total orders of I_{Gamma, Omega}`.
pub fn naive_integral(g: &FeynmanGraph, t: &TruncationSpec) -> Result<DegreeSeries<Integer>> {
    let n = g.vertex_count();
    if n > MAX_NAIVE_VERTICES {
        return Err(Error::SizeLimit(format!("naive evaluation supports at most {MAX_NAIVE_VERTICES} vertices, got {n}")));
    }
    let mut out = DegreeSeries::new(Mode::Hurwitz);
    for perm in (0..n).permutations(n) {
        let part = naive_integral_ordered(g, &VertexOrder::new(perm)?, t)?;
        for (a, c) in part.multivariate {
            *out.multivariate.entry(a).or_insert_with(Integer::zero) += &c;
        }
    }
    out.multivariate.retain(|_, c| !c.is_zero());
    Ok(out)
}
