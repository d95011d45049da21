//! Segal–Bargmann space: transform, inverse, induced action, kernel.
//!
//! The wavelet transform is `Ŵf(z) = ⟨f, π_{(0,z)} φ_0⟩` with the unit
//! vacuum `φ_0`, and `f̆(z) = e^{|z|²/2} Ŵf(z)` is its holomorphic part. The
//! monomials `z^m / √m!` are orthonormal for the normalized Gaussian measure
//! on `ℂⁿ`, and `f̆(φ_m) = z^m / √m!`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{coherent_state, GaussPacket, HElement, HermiteCoeffs};
use crate::clifford::Multivector;
use crate::numerics::{as_complex, finite_diff_apply, GaussianGrid, OperatorStencil};
use crate::{Error, MultiIndex, Result};

/// Finite expansion `Σ c_m z^m / √m!`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BargmannElem {
    pub n: usize,
    pub coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl BargmannElem {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    /// The unitary image of a Hermite expansion (`φ_m ↦ z^m/√m!`).
    pub fn from_hermite(f: &HermiteCoeffs) -> Self {
        Self { n: f.n, coeffs: f.coeffs.clone() }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(m, c)| {
                let mono: Complex64 = m.0.iter().zip(z).map(|(&k, zi)| zi.powu(k)).product();
                c * mono / m.factorial().sqrt()
            })
            .sum()
    }

    /// `Σ a_m conj(b_m)`.
    pub fn inner(&self, other: &BargmannElem) -> Complex64 {
        self.coeffs
            .iter()
            .filter_map(|(m, a)| other.coeffs.get(m).map(|b| a * b.conj()))
            .sum()
    }

    pub fn distance(&self, other: &BargmannElem) -> f64 {
        let a = HermiteCoeffs { n: self.n, coeffs: self.coeffs.clone() };
        let b = HermiteCoeffs { n: other.n, coeffs: other.coeffs.clone() };
        a.distance(&b)
    }
}

/// `Ŵf(z)` for a Gaussian packet, in closed form.
pub fn sb_forward_packet(f: &GaussPacket, z: &[Complex64]) -> Complex64 {
    f.inner(&coherent_state(&HElement::new(0.0, z.to_vec())))
}

/// `f̆(z) = e^{|z|²/2} Ŵf(z)` for a Gaussian packet.
pub fn sb_renormalized(f: &GaussPacket, z: &[Complex64]) -> Complex64 {
    let r2: f64 = z.iter().map(Complex64::norm_sqr).sum();
    sb_forward_packet(f, z) * (0.5 * r2).exp()
}

/// `Ŵf(z)` for an arbitrary function on `ℝⁿ`, by quadrature.
pub fn sb_forward_fn(
    n: usize,
    f: impl Fn(&[f64]) -> Complex64,
    z: &[Complex64],
    order: usize,
) -> Result<Complex64> {
    if z.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: z.len() });
    }
    let w = coherent_state(&HElement::new(0.0, z.to_vec()));
    let grid = GaussianGrid::new(n, order)?;
    let scale = PI.powf(n as f64 / 2.0);
    Ok(grid.integrate(|x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        f(x) * w.eval(x).conj() * r2.exp()
    }) * scale)
}

/// `f̆` of a Hermite expansion, computed by quadrature and projected onto
/// the monomial basis.
pub fn sb_forward_hermite(f: &HermiteCoeffs, order: usize) -> Result<BargmannElem> {
    let n = f.n;
    let d = f.max_degree();
    if d > super::HERMITE_CAP {
        return Err(Error::CapExceeded { what: "Hermite degree", value: d, cap: super::HERMITE_CAP });
    }
    let eval = |x: &[f64]| f.eval(x).expect("degree checked above");
    let renorm = |z: &[Complex64]| -> Result<Complex64> {
        let r2: f64 = z.iter().map(Complex64::norm_sqr).sum();
        Ok(sb_forward_fn(n, eval, z, order)? * (0.5 * r2).exp())
    };
    // f̆ is a polynomial of degree d, so d + 1 outer nodes are exact
    let grid = GaussianGrid::new(2 * n, d + 1)?;
    let mut samples = Vec::with_capacity(grid.len());
    for (x, w) in grid.points() {
        let z = as_complex(&x);
        let v = renorm(&z)?;
        samples.push((z, w, v));
    }
    let mut out = BargmannElem::zero(n);
    for m in MultiIndex::all_up_to(n, d) {
        let basis = BargmannElem { n, coeffs: [(m.clone(), Complex64::new(1.0, 0.0))].into() };
        let c: Complex64 = samples.iter().map(|(z, w, v)| v * basis.eval(z).conj() * *w).sum();
        out.coeffs.insert(m, c);
    }
    Ok(out)
}

/// Inverse transform `F ↦ ∫ F(z) A(z̄, x) dμ(z)`, `A` the generating kernel,
/// returned in the Hermite basis.
pub fn sb_inverse(big_f: &BargmannElem, order: usize) -> Result<HermiteCoeffs> {
    let n = big_f.n;
    let d = big_f.max_degree();
    let zgrid = GaussianGrid::new(2 * n, order)?.points();
    let zs: Vec<(Vec<Complex64>, f64, Complex64)> = zgrid
        .into_iter()
        .map(|(x, w)| {
            let z = as_complex(&x);
            let v = big_f.eval(&z);
            (z, w, v)
        })
        .collect();
    let value = |x: &[f64]| -> Complex64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let pref = PI.powf(-(n as f64) / 4.0) * (-0.5 * r2).exp();
        zs.iter()
            .map(|(z, w, v)| {
                let e: Complex64 = z
                    .iter()
                    .zip(x)
                    .map(|(zi, &xi)| std::f64::consts::SQRT_2 * zi.conj() * xi - 0.5 * zi.conj() * zi.conj())
                    .sum();
                v * e.exp() * *w
            })
            .sum::<Complex64>()
            * pref
    };
    // the result is a Hermite expansion of degree ≤ d
    HermiteCoeffs::project(n, value, d, d + 1)
}

/// Induced action `[β_{(t,z)} F](u) = F(u + z) e^{it - ⟨z̄, u⟩ - |z|²/2}`.
///
/// It composes with the law `(t,z)(t',z') = (t + t' + Im⟨z̄, z'⟩, z + z')`;
/// use [`beta_parameter`] to intertwine with the Schrödinger action.
pub fn beta_act<'a>(
    g: &'a HElement,
    f: impl Fn(&[Complex64]) -> Complex64 + 'a,
) -> impl Fn(&[Complex64]) -> Complex64 + 'a {
    move |u: &[Complex64]| {
        let shifted: Vec<Complex64> = u.iter().zip(&g.z).map(|(a, b)| a + b).collect();
        let mut e = Complex64::new(0.0, g.t);
        for (zi, ui) in g.z.iter().zip(u) {
            e += -zi.conj() * ui - 0.5 * zi.norm_sqr();
        }
        f(&shifted) * e.exp()
    }
}

/// `κ(t, z) = (2t, -z)`: `f̆(π_g f) = β_{κ(g)} f̆(f)`.
pub fn beta_parameter(g: &HElement) -> HElement {
    HElement { t: 2.0 * g.t, z: g.z.iter().map(|z| -z).collect() }
}

/// Reproducing kernel `K(u, v) = exp(⟨u, v̄⟩)`.
pub fn sb_kernel(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum::<Complex64>().exp()
}

/// Orthogonal projection onto the holomorphic subspace, as coefficients on
/// `z^m/√m!` for `|m| ≤ max_degree`.
pub fn sb_project(
    n: usize,
    phi: impl Fn(&[Complex64]) -> Complex64,
    max_degree: usize,
    order: usize,
) -> Result<BargmannElem> {
    let grid = GaussianGrid::new(2 * n, order)?;
    let samples: Vec<(Vec<Complex64>, f64, Complex64)> = grid
        .points()
        .into_iter()
        .map(|(x, w)| {
            let z = as_complex(&x);
            let v = phi(&z);
            (z, w, v)
        })
        .collect();
    let mut out = BargmannElem::zero(n);
    for m in MultiIndex::all_up_to(n, max_degree) {
        let basis = BargmannElem { n, coeffs: [(m.clone(), Complex64::new(1.0, 0.0))].into() };
        let c: Complex64 = samples.iter().map(|(z, w, v)| v * basis.eval(z).conj() * *w).sum();
        out.coeffs.insert(m, c);
    }
    Ok(out)
}

/// `[Pφ](u) = ∫ K(u, v) φ(v) dμ(v)` by quadrature.
pub fn sb_project_eval(
    phi: impl Fn(&[Complex64]) -> Complex64,
    u: &[Complex64],
    order: usize,
) -> Result<Complex64> {
    let grid = GaussianGrid::new(2 * u.len(), order)?;
    Ok(grid.integrate(|x| {
        let v = as_complex(x);
        sb_kernel(u, &v) * phi(&v)
    }))
}

/// `max_j |(∂/∂z̄_j + z_j/2) Ŵf|` at `z`, by central differences of step `h`.
pub fn analyticity_residual(f: &GaussPacket, z: &[Complex64], h: f64) -> f64 {
    let n = z.len();
    let point: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    let wf = |x: &[f64]| Multivector::scalar(0, sb_forward_packet(f, &as_complex(x)));
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let op = OperatorStencil::new("dbar")
            .constant(2 * j, 1, Multivector::scalar(0, 0.5))
            .constant(2 * j + 1, 1, Multivector::scalar(0, Complex64::new(0.0, 0.5)))
            .varying(2 * j, 0, move |x| Multivector::scalar(0, 0.5 * Complex64::new(x[2 * j], x[2 * j + 1])));
        worst = worst.max(finite_diff_apply(&op, &wf, &point, h).norm());
    }
    worst
}
