//! Feynman integrals via flip signatures: per-branch-type coefficients,
//! degree-bounded multivariate series, the univariate collapse, assembly
//! over a catalog of graphs, and the version with vertex contributions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{count_automorphisms, weak_compositions, BranchType, FeynmanGraph, GenusFunction};
use crate::polyarith::{Coeff, Integer, Monomial, Prune, Rational, SparsePoly, VarContext};
use crate::propagator::{
    const_term, descendant_edge_term, descendant_loop_coefficient, loop_coefficient, non_const_term, s_series,
    series_in_z, EdgeTermRequest,
};
use crate::signature::{signature_and_multiplicities, BACKWARD_ENTRY, FORWARD_ENTRY, LOOP_ENTRY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hurwitz,
    Descendant,
}

impl Mode {
    /// Rendering convention for the collapsed series variable.
    pub fn exponent_convention(&self) -> &'static str {
        match self {
            Mode::Hurwitz => "q^(2d)",
            Mode::Descendant => "q^d",
        }
    }

    /// Printed q-exponent for internal degree `d`.
    pub fn rendered_exponent(&self, d: u64) -> u64 {
        match self {
            Mode::Hurwitz => 2 * d,
            Mode::Descendant => d,
        }
    }
}

/// Generating-series payload: coefficients per branch type and/or per
/// total degree. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSeries<C> {
    pub mode: Mode,
    pub multivariate: BTreeMap<Vec<u32>, C>,
    pub collapsed: BTreeMap<u64, C>,
}

impl<C: Coeff> DegreeSeries<C> {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            multivariate: BTreeMap::new(),
            collapsed: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, a: Vec<u32>, c: C) {
        if !c.is_zero() {
            self.multivariate.insert(a, c);
        }
    }

    pub fn coefficient(&self, a: &[u32]) -> C {
        self.multivariate.get(a).cloned().unwrap_or_else(C::zero)
    }

    pub fn collapsed_coefficient(&self, d: u64) -> C {
        self.collapsed.get(&d).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.multivariate.is_empty() && self.collapsed.is_empty()
    }

    /// Maps coefficients into another domain.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> DegreeSeries<D> {
        DegreeSeries {
            mode: self.mode,
            multivariate: self.multivariate.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
            collapsed: self.collapsed.iter().map(|(k, v)| (*k, f(v))).collect(),
        }
    }

    pub fn to_json(&self) -> DegreeSeriesJson {
        DegreeSeriesJson {
            mode: self.mode,
            multivariate: self
                .multivariate
                .iter()
                .map(|(a, c)| MultivariateEntry {
                    a: a.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
            collapsed: self
                .collapsed
                .iter()
                .map(|(d, c)| CollapsedEntry {
                    degree: *d,
                    coeff: c.to_string(),
                })
                .collect(),
            exponent_convention: self.mode.exponent_convention().to_string(),
        }
    }

    pub fn from_json(j: &DegreeSeriesJson) -> Result<Self> {
        let parse = |s: &str| C::parse_decimal(s).ok_or_else(|| Error::Parse(format!("bad coefficient `{s}`")));
        let mut out = Self::new(j.mode);
        for e in &j.multivariate {
            out.insert(e.a.clone(), parse(&e.coeff)?);
        }
        for e in &j.collapsed {
            let c = parse(&e.coeff)?;
            if !c.is_zero() {
                out.collapsed.insert(e.degree, c);
            }
        }
        Ok(out)
    }
}

/// Sums multivariate coefficients over branch types of equal total.
pub fn collapse_to_univariate<C: Coeff>(s: &DegreeSeries<C>) -> DegreeSeries<C> {
    let mut out = s.clone();
    out.collapsed.clear();
    for (a, c) in &s.multivariate {
        let d = a.iter().map(|&x| x as u64).sum();
        *out.collapsed.entry(d).or_insert_with(C::zero) += c;
    }
    out.collapsed.retain(|_, c| !c.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSeriesJson {
    pub mode: Mode,
    pub multivariate: Vec<MultivariateEntry>,
    pub collapsed: Vec<CollapsedEntry>,
    pub exponent_convention: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivariateEntry {
    pub a: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsedEntry {
    pub degree: u64,
    pub coeff: String,
}

/// Per-vertex genus and psi power `k_i = valence(i) + 2 g_i - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiData {
    pub genus: Vec<u32>,
    pub psi: Vec<u64>,
}

impl PsiData {
    pub fn derive(g: &FeynmanGraph, gf: &GenusFunction) -> Result<Self> {
        gf.check_len(g)?;
        let mut psi = Vec::with_capacity(g.vertex_count());
        for (i, (&val, &gi)) in g.valence().iter().zip(&gf.0).enumerate() {
            let k = val as i64 + 2 * gi as i64 - 2;
            if k < 0 {
                return Err(Error::PsiData(format!(
                    "vertex {} has valence {val} and genus {gi}, giving psi power {k}",
                    i + 1
                )));
            }
            psi.push(k as u64);
        }
        let total_genus = g.total_genus(gf)? as u64;
        let sum: u64 = psi.iter().sum();
        if sum != 2 * total_genus - 2 {
            return Err(Error::PsiData(format!("psi powers sum to {sum}, expected {}", 2 * total_genus - 2)));
        }
        Ok(Self { genus: gf.0.clone(), psi })
    }
}

/// Static multiplication order for the non-loop edges.
///
/// Greedy: after the first non-loop edge, always take the edge with the
/// most endpoints already seen. `finalized[t]` lists vertices whose last
/// factor is step `t`; their exponent can be pinned to the target there.
#[derive(Debug, Clone)]
struct EvalPlan {
    order: Vec<usize>,
    finalized: Vec<Vec<usize>>,
}

impl EvalPlan {
    fn new(g: &FeynmanGraph) -> Self {
        let mut remaining: Vec<usize> = (0..g.edge_count()).filter(|&k| !g.is_loop(k)).collect();
        let mut seen = vec![false; g.vertex_count()];
        let mut order = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let (pos, _) = remaining
                .iter()
                .enumerate()
                .max_by_key(|(i, &k)| {
                    let (u, v) = g.edges()[k];
                    (seen[u] as u8 + seen[v] as u8, std::cmp::Reverse(*i))
                })
                .expect("nonempty");
            let k = remaining.remove(pos);
            let (u, v) = g.edges()[k];
            seen[u] = true;
            seen[v] = true;
            order.push(k);
        }
        let mut last = vec![None; g.vertex_count()];
        for (t, &k) in order.iter().enumerate() {
            let (u, v) = g.edges()[k];
            last[u] = Some(t);
            last[v] = Some(t);
        }
        let mut finalized = vec![Vec::new(); order.len()];
        for (vtx, l) in last.iter().enumerate() {
            if let Some(t) = l {
                finalized[*t].push(vtx);
            }
        }
        Self { order, finalized }
    }
}

/// Shared signature-grouped evaluation.
///
/// `prefactor` carries everything independent of edge orientation;
/// `factor(edge, entry)` builds the numerator of a non-loop edge for a
/// signature entry.
fn evaluate_signatures<C: Coeff>(
    g: &FeynmanGraph,
    a: &BranchType,
    ctx: VarContext,
    prefactor: &SparsePoly<C>,
    base_prune: &Prune,
    target: &Monomial,
    mut factor: impl FnMut(usize, i64) -> Result<SparsePoly<C>>,
) -> Result<C> {
    let plan = EvalPlan::new(g);
    let table = signature_and_multiplicities(g, a)?;
    let targets = target.exponents();
    let mut total = C::zero();
    for (sig, mult) in &table {
        let mut acc = prefactor.clone();
        for (step, &k) in plan.order.iter().enumerate() {
            let mut prune = base_prune.clone();
            for &v in &plan.finalized[step] {
                prune = prune.exact(ctx.x_slot(v), targets[ctx.x_slot(v)]);
            }
            acc = acc.mul_pruned(&factor(k, sig.entries()[k])?, &prune)?;
            if acc.is_zero() {
                break;
            }
        }
        let c = acc.coefficient_of_term(target)?;
        if !c.is_zero() {
            total += &(c * &C::from_integer(mult.clone()));
        }
    }
    Ok(total)
}

fn check_branch_type(g: &FeynmanGraph, a: &BranchType) -> Result<()> {
    if a.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            what: "branch type",
            expected: g.edge_count(),
            got: a.len(),
        });
    }
    Ok(())
}

/// True when some loop edge has degree 0: the loop propagator has no
/// constant term, so the whole coefficient vanishes.
fn has_zero_loop(g: &FeynmanGraph, a: &BranchType) -> bool {
    (0..g.edge_count()).any(|k| g.is_loop(k) && a.degrees()[k] == 0)
}

fn shift_of(a: &BranchType) -> Result<u32> {
    u32::try_from(a.total()).map_err(|_| Error::ExponentOverflow(a.total()))
}

fn target_exponents(g: &FeynmanGraph, a: &BranchType, ctx: &VarContext, shift: u32) -> Result<Vec<u64>> {
    let mut e = vec![0u64; ctx.len()];
    for (i, v) in g.nonloop_valence().into_iter().enumerate() {
        e[ctx.x_slot(i)] = shift as u64 * v as u64;
    }
    for k in 0..g.edge_count() {
        if !g.is_loop(k) {
            e[ctx.q_slot(k)] = a.degrees()[k] as u64;
        }
    }
    Ok(e)
}

fn hurwitz_factor<C: Coeff>(
    g: &FeynmanGraph,
    ctx: &VarContext,
    a: &BranchType,
    shift: u32,
    k: usize,
    entry: i64,
) -> Result<SparsePoly<C>> {
    let (u, v) = g.edges()[k];
    match entry {
        FORWARD_ENTRY => const_term(ctx, u, v, k, shift),
        BACKWARD_ENTRY => const_term(ctx, v, u, k, shift),
        LOOP_ENTRY => Err(Error::LoopRequested(u + 1)),
        _ => non_const_term(ctx, u, v, k, a.degrees()[k], shift),
    }
}

/// Coefficient of `q^a` in `I_Gamma`, summed over all vertex orders.
pub fn feynman_integral_branchtype(g: &FeynmanGraph, a: &BranchType) -> Result<Integer> {
    check_branch_type(g, a)?;
    if has_zero_loop(g, a) {
        return Ok(Integer::zero());
    }
    let shift = shift_of(a)?;
    let ctx = VarContext::new(g.vertex_count(), g.edge_count(), 0);
    let target_wide = target_exponents(g, a, &ctx, shift)?;
    let target = Monomial::from_wide(&ctx, &target_wide)?;

    let mut prune = Prune::new();
    for i in 0..g.vertex_count() {
        prune = prune.ceiling(ctx.x_slot(i), target.exponents()[ctx.x_slot(i)]);
    }

    // one cached polynomial per (edge, entry)
    let mut cache: BTreeMap<(usize, i64), SparsePoly<Integer>> = BTreeMap::new();
    let coef = evaluate_signatures(g, a, ctx, &SparsePoly::one(ctx), &prune, &target, |k, entry| {
        if let Some(p) = cache.get(&(k, entry)) {
            return Ok(p.clone());
        }
        let p = hurwitz_factor(g, &ctx, a, shift, k, entry)?;
        cache.insert((k, entry), p.clone());
        Ok(p)
    })?;

    let loops: Integer = (0..g.edge_count())
        .filter(|&k| g.is_loop(k))
        .map(|k| loop_coefficient(a.degrees()[k]))
        .fold(BigInt::one(), |acc, c| acc * c);
    Ok(coef * loops)
}

/// Worker-count setting for the degree sweeps. `None` runs on the
/// calling thread.
pub type Threads = Option<usize>;

fn sweep<C: Coeff>(
    g: &FeynmanGraph,
    d: u32,
    threads: Threads,
    eval: impl Fn(&BranchType) -> Result<C> + Sync,
) -> Result<Vec<(Vec<u32>, C)>> {
    let items: Vec<Vec<u32>> = (1..=d).flat_map(|j| weak_compositions(j, g.edge_count())).collect();
    let run = |a: &Vec<u32>| eval(&BranchType::new(a.clone())).map(|c| (a.clone(), c));
    match threads {
        None | Some(0) | Some(1) => items.iter().map(run).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::SizeLimit(format!("cannot start {n} worker threads: {e}")))?;
            pool.install(|| items.par_iter().map(run).collect())
        }
    }
}

/// Multivariate series: every branch type of total degree `1..=d`.
pub fn feynman_integral_degree(g: &FeynmanGraph, d: u32) -> Result<DegreeSeries<Integer>> {
    feynman_integral_degree_with(g, d, None)
}

pub fn feynman_integral_degree_with(g: &FeynmanGraph, d: u32, threads: Threads) -> Result<DegreeSeries<Integer>> {
    g.validate()?;
    let mut out = DegreeSeries::new(Mode::Hurwitz);
    for (a, c) in sweep(g, d, threads, |a| feynman_integral_branchtype(g, a))? {
        out.insert(a, c);
    }
    Ok(out)
}

/// `F(q) = sum_Gamma I_Gamma(q) / |Aut(Gamma)|`, collapsed to total degree.
pub fn assemble_generating_series(catalog: &[(FeynmanGraph, u64)], d: u32) -> Result<DegreeSeries<Rational>> {
    assemble_generating_series_with(catalog, d, None)
}

pub fn assemble_generating_series_with(
    catalog: &[(FeynmanGraph, u64)],
    d: u32,
    threads: Threads,
) -> Result<DegreeSeries<Rational>> {
    if let Some((first, _)) = catalog.first() {
        for (g, _) in catalog {
            if g.first_betti() != first.first_betti() {
                return Err(Error::GenusMismatch(first.first_betti(), g.first_betti()));
            }
        }
    }
    let mut out = DegreeSeries::new(Mode::Hurwitz);
    for (g, aut) in catalog {
        if *aut == 0 {
            return Err(Error::InvalidAutomorphismOrder);
        }
        let weight = Rational::new(BigInt::one(), BigInt::from(*aut));
        let series = collapse_to_univariate(&feynman_integral_degree_with(g, d, threads)?);
        for (deg, c) in series.collapsed {
            *out.collapsed.entry(deg).or_insert_with(Rational::zero) += &(Rational::from_integer(c) * &weight);
        }
    }
    out.collapsed.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Catalog entries paired with brute-forced automorphism orders.
pub fn with_automorphisms(graphs: Vec<FeynmanGraph>) -> Result<Vec<(FeynmanGraph, u64)>> {
    graphs
        .into_iter()
        .map(|g| {
            let aut = count_automorphisms(&g)?;
            let aut = u64::try_from(aut).map_err(|_| Error::SizeLimit("automorphism order exceeds u64".into()))?;
            Ok((g, aut))
        })
        .collect()
}

/// Coefficient of `q^a` in the integral with vertex contributions.
///
/// The per-vertex prefactor `1/S(z_i)` and the loop series are
/// multiplied in first; z-exponents above `2 g_i` are discarded during
/// every product, and `z_i^{2 g_i}` is extracted with the x-target.
pub fn descendant_integral_branchtype(g: &FeynmanGraph, gf: &GenusFunction, a: &BranchType) -> Result<Rational> {
    check_branch_type(g, a)?;
    gf.check_len(g)?;
    if has_zero_loop(g, a) {
        return Ok(Rational::zero());
    }
    let n = g.vertex_count();
    let shift = shift_of(a)?;
    let ctx = VarContext::new(n, g.edge_count(), n);
    let z_order: Vec<usize> = gf.0.iter().map(|&gi| 2 * gi as usize).collect();

    let mut target_wide = target_exponents(g, a, &ctx, shift)?;
    for (i, &o) in z_order.iter().enumerate() {
        target_wide[ctx.z_slot(i)] = o as u64;
    }
    let target = Monomial::from_wide(&ctx, &target_wide)?;

    let mut prune = Prune::new();
    for i in 0..n {
        prune = prune
            .ceiling(ctx.x_slot(i), target.exponents()[ctx.x_slot(i)])
            .ceiling(ctx.z_slot(i), z_order[i] as u32);
    }

    let mut prefactor = SparsePoly::one(ctx);
    for (i, &o) in z_order.iter().enumerate() {
        if o > 0 {
            let inv = s_series(1, o).invert()?;
            prefactor = prefactor.mul_pruned(&series_in_z(&ctx, i, &inv)?, &prune)?;
        }
    }
    for k in (0..g.edge_count()).filter(|&k| g.is_loop(k)) {
        let (u, _) = g.edges()[k];
        let s = descendant_loop_coefficient(a.degrees()[k], z_order[u]);
        prefactor = prefactor.mul_pruned(&series_in_z(&ctx, u, &s)?, &prune)?;
    }

    let mut cache: BTreeMap<(usize, i64), SparsePoly<Rational>> = BTreeMap::new();
    evaluate_signatures(g, a, ctx, &prefactor, &prune, &target, |k, entry| {
        if let Some(p) = cache.get(&(k, entry)) {
            return Ok(p.clone());
        }
        let (u, v) = g.edges()[k];
        let (hi, lo) = match entry {
            FORWARD_ENTRY => (u, v),
            BACKWARD_ENTRY => (v, u),
            LOOP_ENTRY => return Err(Error::LoopRequested(u + 1)),
            _ => (u, v),
        };
        let req = EdgeTermRequest {
            vertex_hi: hi,
            vertex_lo: lo,
            edge_index: k,
            degree: a.degrees()[k],
            shift,
        };
        let p = descendant_edge_term(&ctx, &req, z_order[hi], z_order[lo])?;
        cache.insert((k, entry), p.clone());
        Ok(p)
    })
}

pub fn descendant_integral_degree(g: &FeynmanGraph, gf: &GenusFunction, d: u32) -> Result<DegreeSeries<Rational>> {
    descendant_integral_degree_with(g, gf, d, None)
}

pub fn descendant_integral_degree_with(
    g: &FeynmanGraph,
    gf: &GenusFunction,
    d: u32,
    threads: Threads,
) -> Result<DegreeSeries<Rational>> {
    g.validate()?;
    gf.check_len(g)?;
    let mut out = DegreeSeries::new(Mode::Descendant);
    for (a, c) in sweep(g, d, threads, |a| descendant_integral_branchtype(g, gf, a))? {
        out.insert(a, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::polyarith::{int, rat};

    fn bt(v: &[u32]) -> BranchType {
        BranchType::new(v.to_vec())
    }

    #[test]
    fn hand_fixtures() {
        let theta = catalog::get("theta").unwrap();
        let dumbbell = catalog::get("dumbbell").unwrap();
        assert_eq!(feynman_integral_branchtype(&theta, &bt(&[0, 0, 2])).unwrap(), int(4));
        assert_eq!(feynman_integral_branchtype(&theta, &bt(&[1, 1, 1])).unwrap(), int(0));
        assert_eq!(feynman_integral_branchtype(&dumbbell, &bt(&[1, 0, 1])).unwrap(), int(0));
        assert!(matches!(
            feynman_integral_branchtype(&theta, &bt(&[1, 1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn zero_loop_rule() {
        let dumbbell = catalog::get("dumbbell").unwrap();
        for a in weak_compositions(4, 3) {
            if a[0] == 0 || a[2] == 0 {
                assert_eq!(feynman_integral_branchtype(&dumbbell, &BranchType::new(a)).unwrap(), int(0));
            }
        }
    }

    #[test]
    fn degree_series_examples() {
        let theta = catalog::get("theta").unwrap();
        let s = feynman_integral_degree(&theta, 2).unwrap();
        assert_eq!(s.coefficient(&[0, 0, 2]), int(4));
        assert_eq!(s.coefficient(&[0, 2, 0]), int(4));
        assert_eq!(s.coefficient(&[2, 0, 0]), int(4));
        assert!(!s.multivariate.contains_key(&vec![0, 0, 0]));

        let dumbbell = catalog::get("dumbbell").unwrap();
        assert!(feynman_integral_degree(&dumbbell, 1).unwrap().is_empty());
    }

    #[test]
    fn collapse_examples() {
        let theta = catalog::get("theta").unwrap();
        let s = collapse_to_univariate(&feynman_integral_degree(&theta, 2).unwrap());
        let total: Integer = s.multivariate.iter().filter(|(a, _)| a.iter().sum::<u32>() == 2).map(|(_, c)| c).sum();
        assert_eq!(s.collapsed_coefficient(2), total);

        let empty = DegreeSeries::<Integer>::new(Mode::Hurwitz);
        assert!(collapse_to_univariate(&empty).is_empty());

        let mut single = DegreeSeries::new(Mode::Hurwitz);
        single.insert(vec![1, 0], int(7));
        assert_eq!(collapse_to_univariate(&single).collapsed, BTreeMap::from([(1, int(7))]));
    }

    #[test]
    fn assembly_edge_cases() {
        assert!(assemble_generating_series(&[], 4).unwrap().is_empty());
        let theta = catalog::get("theta").unwrap();
        let single = assemble_generating_series(&[(theta.clone(), 1)], 3).unwrap();
        let direct = collapse_to_univariate(&feynman_integral_degree(&theta, 3).unwrap());
        assert_eq!(single.collapsed, direct.map(|c| Rational::from_integer(c.clone())).collapsed);

        let cat3 = catalog::get("caterpillar3").unwrap();
        assert_eq!(
            assemble_generating_series(&[(theta.clone(), 12), (cat3, 16)], 2),
            Err(Error::GenusMismatch(2, 3))
        );
        assert_eq!(assemble_generating_series(&[(theta, 0)], 2), Err(Error::InvalidAutomorphismOrder));
    }

    #[test]
    fn descendant_loop_vertex_fixtures() {
        let g = FeynmanGraph::new(1, &[(1, 1)]).unwrap();
        let gf = GenusFunction(vec![1]);
        assert_eq!(descendant_integral_branchtype(&g, &gf, &bt(&[1])).unwrap(), rat(1, 24));
        // sum_{w|2} w S(wz)^2 / S(z) at z^2, expanded by hand:
        // 1*(1/12 - 1/24) + 2*(1/3 - 1/24) = 1/24 + 7/12
        assert_eq!(descendant_integral_branchtype(&g, &gf, &bt(&[2])).unwrap(), rat(5, 8));

        let s = descendant_integral_degree(&g, &gf, 1).unwrap();
        assert_eq!(s.multivariate, BTreeMap::from([(vec![1], rat(1, 24))]));
        assert!(descendant_integral_degree(&g, &gf, 0).unwrap().is_empty());
    }

    #[test]
    fn descendant_degenerates_to_hurwitz() {
        for name in ["theta", "dumbbell", "caterpillar3"] {
            let g = catalog::get(name).unwrap();
            let gf = GenusFunction::zero(g.vertex_count());
            for a in (1..=3).flat_map(|j| weak_compositions(j, g.edge_count())) {
                let a = BranchType::new(a);
                assert_eq!(
                    descendant_integral_branchtype(&g, &gf, &a).unwrap(),
                    Rational::from_integer(feynman_integral_branchtype(&g, &a).unwrap()),
                    "{name} {a:?}"
                );
            }
        }
    }

    #[test]
    fn psi_data() {
        let theta = catalog::get("theta").unwrap();
        let p = PsiData::derive(&theta, &GenusFunction(vec![0, 0])).unwrap();
        assert_eq!(p.psi, vec![1, 1]);
        let loop1 = FeynmanGraph::new(1, &[(1, 1)]).unwrap();
        assert_eq!(PsiData::derive(&loop1, &GenusFunction(vec![1])).unwrap().psi, vec![2]);
        let star = catalog::get("star").unwrap();
        assert!(matches!(PsiData::derive(&star, &GenusFunction::zero(4)), Err(Error::PsiData(_))));
    }

    #[test]
    fn plan_visits_every_nonloop_edge_once() {
        for e in catalog::all() {
            let plan = EvalPlan::new(&e.graph);
            let mut seen = plan.order.clone();
            seen.sort_unstable();
            let expected: Vec<_> = (0..e.graph.edge_count()).filter(|&k| !e.graph.is_loop(k)).collect();
            assert_eq!(seen, expected);
            let finalized: usize = plan.finalized.iter().map(Vec::len).sum();
            assert_eq!(finalized, e.graph.nonloop_valence().iter().filter(|&&v| v > 0).count());
        }
    }

    #[test]
    fn json_shape() {
        let theta = catalog::get("theta").unwrap();
        let s = collapse_to_univariate(&feynman_integral_degree(&theta, 2).unwrap());
        let j = s.to_json();
        assert_eq!(j.exponent_convention, "q^(2d)");
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"mode":"hurwitz","multivariate":[{"a":[0,0,2],"coeff":"4"}"#), "{text}");
        let back = DegreeSeries::<Integer>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
