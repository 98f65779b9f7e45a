//! Exact fits of a q-series against the weight-graded monomial basis
//! `E2^a E4^b E6^c` of quasimodular forms.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integral::DegreeSeries;
use crate::polyarith::{Coeff, Integer, Rational};
use crate::propagator::sigma;

/// Series `c_0 + c_1 Q + ... + c_M Q^M` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    /// The collapsed part of `s` through `Q^order`, with `Q` standing for
    /// the series variable at internal degree 1.
    pub fn from_degree_series<C: Coeff>(s: &DegreeSeries<C>, order: usize, to_rational: impl Fn(&C) -> Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (&d, c) in &s.collapsed {
            if (d as usize) <= order {
                coeffs[d as usize] = to_rational(c);
            }
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        Self { coeffs }
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// `E_k` through `Q^order` for `k` in {2, 4, 6}.
pub fn eisenstein(k: u32, order: usize) -> Result<QSeries> {
    let (scale, power): (i64, u32) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::one());
    for n in 1..=order {
        coeffs.push(Rational::from_integer(sigma(power, n as u32) * BigInt::from(scale)));
    }
    Ok(QSeries { coeffs })
}

/// All `(a, b, c)` with `2a + 4b + 6c = weight`, lexicographic.
pub fn monomial_basis(weight: u32) -> Result<Vec<(u32, u32, u32)>> {
    if weight == 0 || weight % 2 == 1 {
        return Err(Error::InvalidWeight(weight));
    }
    let mut out = Vec::new();
    for a in 0..=weight / 2 {
        for b in 0..=weight / 4 {
            let rest = weight as i64 - 2 * a as i64 - 4 * b as i64;
            if rest >= 0 && rest % 6 == 0 {
                out.push((a, b, (rest / 6) as u32));
            }
        }
    }
    Ok(out)
}

/// Evaluates every basis monomial through `Q^order`.
pub fn basis_series(weight: u32, order: usize) -> Result<Vec<QSeries>> {
    let e2 = eisenstein(2, order)?;
    let e4 = eisenstein(4, order)?;
    let e6 = eisenstein(6, order)?;
    Ok(monomial_basis(weight)?
        .into_iter()
        .map(|(a, b, c)| e2.pow(a).mul(&e4.pow(b)).mul(&e6.pow(c)))
        .collect())
}

/// Result of matching a series against the weight-`W` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasimodularFit {
    pub weight: u32,
    pub basis: Vec<(u32, u32, u32)>,
    pub coefficients: Vec<Rational>,
    /// Highest degree through which every coefficient matches.
    pub verified_through: usize,
    pub residual_ok: bool,
}

impl QuasimodularFit {
    pub fn to_json(&self) -> FitReport {
        FitReport {
            weight: self.weight,
            basis: self.basis.iter().map(|&(a, b, c)| [a, b, c]).collect(),
            lambda: self.coefficients.iter().map(ToString::to_string).collect(),
            verified_through: self.verified_through,
            residual_ok: self.residual_ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub weight: u32,
    pub basis: Vec<[u32; 3]>,
    pub lambda: Vec<String>,
    pub verified_through: usize,
    pub residual_ok: bool,
}

/// Solves for `lambda` from the first `|basis|` coefficients, then checks
/// every remaining coefficient exactly.
pub fn fit_quasimodular(s: &QSeries, weight: u32) -> Result<QuasimodularFit> {
    let basis = monomial_basis(weight)?;
    let m = basis.len();
    if s.coeffs.len() < m + 1 {
        return Err(Error::InsufficientCoefficients {
            needed: m + 1,
            got: s.coeffs.len(),
        });
    }
    let order = s.order();
    let columns = basis_series(weight, order)?;
    let matrix: Vec<Vec<Rational>> = (0..m).map(|i| columns.iter().map(|col| col.coeffs[i].clone()).collect()).collect();
    let rhs: Vec<Rational> = s.coeffs[..m].to_vec();
    let lambda = solve(matrix, rhs).ok_or(Error::SingularSystem(weight))?;

    let mut verified_through = m - 1;
    let mut residual_ok = true;
    for i in m..=order {
        let predicted = columns
            .iter()
            .zip(&lambda)
            .fold(Rational::zero(), |acc, (col, l)| acc + &col.coeffs[i] * l);
        if predicted != s.coeffs[i] {
            residual_ok = false;
            break;
        }
        verified_through = i;
    }
    Ok(QuasimodularFit {
        weight,
        basis,
        coefficients: lambda,
        verified_through,
        residual_ok,
    })
}

/// Exact rank of the `rows x |basis|` coefficient matrix of the basis.
pub fn basis_rank(weight: u32, rows: usize) -> Result<usize> {
    let columns = basis_series(weight, rows.saturating_sub(1))?;
    let matrix: Vec<Vec<Rational>> = (0..rows).map(|i| columns.iter().map(|c| c.coeffs[i].clone()).collect()).collect();
    Ok(rank(matrix))
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(a: Vec<Vec<Rational>>) -> Vec<Vec<Integer>> {
    a.into_iter()
        .map(|row| {
            let l = row.iter().fold(Integer::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Bareiss elimination in place on the first `cols` columns. Returns the
/// pivot columns; every division is exact.
fn bareiss(m: &mut [Vec<Integer>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut prev = Integer::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for c in (col + 1..m[i].len()).rev() {
                let v = (&m[r][col] * &m[i][c] - &m[i][col] * &m[r][c]) / &prev;
                m[i][c] = v;
            }
            m[i][col] = Integer::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Fraction-free solve of a square system; `None` if singular.
fn solve(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    let augmented = a.into_iter().zip(b).map(|(mut row, x)| {
        row.push(x);
        row
    });
    let mut m = integer_rows(augmented.collect());
    if bareiss(&mut m, n).len() < n {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

fn rank(a: Vec<Vec<Rational>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    bareiss(&mut integer_rows(a), cols).len()
}
