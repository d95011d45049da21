//! Hermite functions, ladder operators and the generating kernel.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::GaussianGrid;
use crate::{Error, MultiIndex, Result};

/// Largest total degree `|m|` handled by Hermite evaluation and the ladder.
pub const HERMITE_CAP: usize = 30;

fn check_cap(m: &MultiIndex) -> Result<()> {
    if m.degree() > HERMITE_CAP {
        return Err(Error::CapExceeded { what: "Hermite degree", value: m.degree(), cap: HERMITE_CAP });
    }
    Ok(())
}

/// 1D normalized Hermite functions `ψ_0 … ψ_m` at `x`.
fn hermite_1d(m: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if m >= 1 {
        out.push(SQRT_2 * x * out[0]);
    }
    for k in 2..=m {
        let kf = k as f64;
        let v = (2.0 / kf).sqrt() * x * out[k - 1] - ((kf - 1.0) / kf).sqrt() * out[k - 2];
        out.push(v);
    }
    out
}

/// `φ_m(x) = Π_j ψ_{m_j}(x_j)`, unit norm in `L²(ℝⁿ)`.
pub fn hermite_eval(m: &MultiIndex, x: &[f64]) -> Result<f64> {
    check_cap(m)?;
    if m.len() != x.len() {
        return Err(Error::DimensionMismatch { left: m.len(), right: x.len() });
    }
    Ok(m.0
        .iter()
        .zip(x)
        .map(|(&k, &xi)| hermite_1d(k as usize, xi)[k as usize])
        .product())
}

/// `π^{-n/4} exp(-(x·x + y·y)/2 + √2 x·y)`.
pub fn generating_kernel(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let e: f64 = x.iter().zip(y).map(|(a, b)| -0.5 * (a * a + b * b) + SQRT_2 * a * b).sum();
    PI.powf(-(n as f64) / 4.0) * e.exp()
}

/// `Σ_{|m| ≤ max_degree} φ_m(x) y^m / √m!`.
pub fn generating_series(x: &[f64], y: &[f64], max_degree: usize) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
    }
    let mut acc = 0.0;
    for m in MultiIndex::all_up_to(x.len(), max_degree) {
        acc += hermite_eval(&m, x)? * m.monomial(y) / m.factorial().sqrt();
    }
    Ok(acc)
}

/// Finite expansion `Σ c_m φ_m` in the Hermite basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermiteCoeffs {
    pub n: usize,
    pub coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl HermiteCoeffs {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(m: MultiIndex) -> Self {
        let mut out = Self::zero(m.len());
        out.coeffs.insert(m, Complex64::new(1.0, 0.0));
        out
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Complex64) {
        let e = self.coeffs.entry(m).or_default();
        *e += c;
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.coeffs {
            acc += c * hermite_eval(m, x)?;
        }
        Ok(acc)
    }

    /// `Σ a_m conj(b_m)`.
    pub fn inner(&self, other: &HermiteCoeffs) -> Complex64 {
        self.coeffs
            .iter()
            .filter_map(|(m, a)| other.coeffs.get(m).map(|b| a * b.conj()))
            .sum()
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &HermiteCoeffs) -> f64 {
        let mut d: f64 = 0.0;
        for (m, a) in &self.coeffs {
            d = d.max((a - other.coeffs.get(m).copied().unwrap_or_default()).norm());
        }
        for (m, b) in &other.coeffs {
            if !self.coeffs.contains_key(m) {
                d = d.max(b.norm());
            }
        }
        d
    }

    /// Coefficients `∫ f φ_m dx` for `|m| ≤ max_degree`, by quadrature.
    ///
    /// Exact when `f·e^{x·x/2}` is a polynomial of degree below `2·order - max_degree`.
    pub fn project(
        n: usize,
        f: impl Fn(&[f64]) -> Complex64,
        max_degree: usize,
        order: usize,
    ) -> Result<Self> {
        let grid = GaussianGrid::new(n, order)?;
        let scale = PI.powf(n as f64 / 2.0);
        let samples: Vec<(Vec<f64>, f64, Complex64)> =
            grid.points().into_iter().map(|(x, w)| {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                let fx = f(&x) * r2.exp();
                (x, w, fx)
            }).collect();
        let mut out = Self::zero(n);
        for m in MultiIndex::all_up_to(n, max_degree) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w, fx) in &samples {
                acc += fx * (w * hermite_eval(&m, x)?);
            }
            out.coeffs.insert(m, acc * scale);
        }
        Ok(out)
    }
}

/// `a⁺_j = (x_j - ∂_j)/√2` or `a⁻_j = (x_j + ∂_j)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    Plus(usize),
    Minus(usize),
}

/// Apply a ladder operator in the Hermite basis.
pub fn ladder_apply(op: Ladder, f: &HermiteCoeffs) -> Result<HermiteCoeffs> {
    let j = match op {
        Ladder::Plus(j) | Ladder::Minus(j) => j,
    };
    if j >= f.n {
        return Err(Error::DimensionMismatch { left: j + 1, right: f.n });
    }
    let mut out = HermiteCoeffs::zero(f.n);
    for (m, c) in &f.coeffs {
        let k = f64::from(m.0[j]);
        match op {
            Ladder::Plus(_) => {
                let up = m.shifted(j, 1).expect("raising never underflows");
                check_cap(&up)?;
                out.add_term(up, c * (k + 1.0).sqrt());
            }
            Ladder::Minus(_) => {
                if let Some(down) = m.shifted(j, -1) {
                    out.add_term(down, c * k.sqrt());
                }
            }
        }
    }
    Ok(out)
}
