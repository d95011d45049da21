//! The Heisenberg group `Hⁿ` and its Schrödinger and Segal–Bargmann models.
//!
//! Conventions used throughout this module:
//!
//! * group law `(t,z)*(t',z') = (t + t' + ½ Σ Im(z̄_j z'_j), z + z')`;
//! * Schrödinger action with `ħ = 1`, `z = p + i q`:
//!   `[π_{(t,z)} f](x) = e^{i(2t - √2⟨q,x⟩ + ⟨q,p⟩)} f(x - √2 p)`;
//! * inner products are linear in the first argument and conjugate-linear in
//!   the second, `⟨f, g⟩ = ∫ f ḡ`.

mod bargmann;
mod hermite;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use bargmann::{
    analyticity_residual, beta_act, beta_parameter, sb_forward_fn, sb_forward_hermite, sb_forward_packet,
    sb_inverse, sb_kernel, sb_project, sb_project_eval, sb_renormalized, BargmannElem,
};
pub use hermite::{
    generating_kernel, generating_series, hermite_eval, ladder_apply, HermiteCoeffs, Ladder, HERMITE_CAP,
};

use crate::numerics::GaussianGrid;
use crate::Result;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Point `(t, z)` of `Hⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HElement {
    pub t: f64,
    pub z: Vec<Complex64>,
}

impl HElement {
    pub fn new(t: f64, z: Vec<Complex64>) -> Self {
        Self { t, z }
    }

    pub fn identity(n: usize) -> Self {
        Self { t: 0.0, z: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn central(n: usize, t: f64) -> Self {
        Self { t, ..Self::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    /// Largest coordinate difference.
    pub fn distance(&self, other: &HElement) -> f64 {
        self.z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| (a - b).norm())
            .fold((self.t - other.t).abs(), f64::max)
    }
}

/// Group law of `Hⁿ`.
pub fn h_mul(g: &HElement, h: &HElement) -> HElement {
    assert_eq!(g.dim(), h.dim(), "Heisenberg elements of different dimension");
    let twist: f64 = g.z.iter().zip(&h.z).map(|(a, b)| (a.conj() * b).im).sum();
    HElement {
        t: g.t + h.t + 0.5 * twist,
        z: g.z.iter().zip(&h.z).map(|(a, b)| a + b).collect(),
    }
}

pub fn h_inv(g: &HElement) -> HElement {
    HElement { t: -g.t, z: g.z.iter().map(|z| -z).collect() }
}

/// `f(x) = amp · exp(⟨lin, x⟩ - ⟨x, x⟩/2)` on `ℝⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussPacket {
    pub amp: Complex64,
    pub lin: Vec<Complex64>,
}

impl GaussPacket {
    pub fn new(amp: Complex64, lin: Vec<Complex64>) -> Self {
        Self { amp, lin }
    }

    /// Unnormalized vacuum `e^{-x·x/2}`.
    pub fn gauss(n: usize) -> Self {
        Self { amp: Complex64::new(1.0, 0.0), lin: vec![Complex64::new(0.0, 0.0); n] }
    }

    /// Unit-norm vacuum `π^{-n/4} e^{-x·x/2}` (equal to `φ_0`).
    pub fn vacuum(n: usize) -> Self {
        Self { amp: Complex64::new(PI.powf(-(n as f64) / 4.0), 0.0), ..Self::gauss(n) }
    }

    pub fn dim(&self) -> usize {
        self.lin.len()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let mut e = Complex64::new(0.0, 0.0);
        for (l, &xi) in self.lin.iter().zip(x) {
            e += l * xi - 0.5 * xi * xi;
        }
        self.amp * e.exp()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { amp: self.amp * c, lin: self.lin.clone() }
    }

    /// `∫ f ḡ dx` in closed form.
    pub fn inner(&self, other: &GaussPacket) -> Complex64 {
        let n = self.dim();
        let s2: Complex64 = self.lin.iter().zip(&other.lin).map(|(a, b)| (a + b.conj()).powi(2)).sum();
        self.amp * other.amp.conj() * PI.powf(n as f64 / 2.0) * (s2 / 4.0).exp()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    /// `∫ f ḡ dx` by tensor Gauss–Hermite quadrature.
    pub fn inner_quadrature(&self, other: &GaussPacket, order: usize) -> Result<Complex64> {
        let n = self.dim();
        let grid = GaussianGrid::new(n, order)?;
        let scale = PI.powf(n as f64 / 2.0);
        Ok(grid.integrate(|x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            self.eval(x) * other.eval(x).conj() * r2.exp()
        }) * scale)
    }

    /// Shift `s_c: f(x) ↦ f(x + c)`.
    pub fn shift(&self, c: &[f64]) -> Self {
        let mut e = Complex64::new(0.0, 0.0);
        for (l, &ci) in self.lin.iter().zip(c) {
            e += l * ci - 0.5 * ci * ci;
        }
        Self {
            amp: self.amp * e.exp(),
            lin: self.lin.iter().zip(c).map(|(l, &ci)| l - ci).collect(),
        }
    }

    /// Modulation `m_b: f(x) ↦ e^{i⟨x, b⟩} f(x)`.
    pub fn modulate(&self, b: &[f64]) -> Self {
        Self {
            amp: self.amp,
            lin: self.lin.iter().zip(b).map(|(l, &bi)| l + I * bi).collect(),
        }
    }

    /// Largest parameter difference.
    pub fn param_distance(&self, other: &GaussPacket) -> f64 {
        self.lin
            .iter()
            .zip(&other.lin)
            .map(|(a, b)| (a - b).norm())
            .fold((self.amp - other.amp).norm(), f64::max)
    }
}

/// Finite sum of Gaussian packets.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GaussSum(pub Vec<GaussPacket>);

impl GaussSum {
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.0.iter().map(|p| p.eval(x)).sum()
    }

    pub fn inner(&self, other: &GaussSum) -> Complex64 {
        self.0.iter().flat_map(|a| other.0.iter().map(move |b| a.inner(b))).sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    /// `‖self - other‖`.
    pub fn distance(&self, other: &GaussSum) -> f64 {
        let d = self.inner(self) + other.inner(other) - self.inner(other) - other.inner(self);
        d.re.max(0.0).sqrt()
    }

    pub fn act(&self, g: &HElement) -> GaussSum {
        GaussSum(self.0.iter().map(|p| schrodinger_act(g, p)).collect())
    }
}

impl From<GaussPacket> for GaussSum {
    fn from(p: GaussPacket) -> Self {
        GaussSum(vec![p])
    }
}

/// Schrödinger action on a packet, as an exact parameter update.
pub fn schrodinger_act(g: &HElement, f: &GaussPacket) -> GaussPacket {
    assert_eq!(g.dim(), f.dim(), "dimension mismatch");
    let s2 = std::f64::consts::SQRT_2;
    let mut phase = Complex64::new(0.0, 2.0 * g.t);
    let mut lin = Vec::with_capacity(f.dim());
    for (z, l) in g.z.iter().zip(&f.lin) {
        let (p, q) = (z.re, z.im);
        phase += I * (q * p) - s2 * l * p - p * p;
        lin.push(l + s2 * p - I * (s2 * q));
    }
    GaussPacket { amp: f.amp * phase.exp(), lin }
}

/// Coherent state `w_g = π_g φ_0` built from the unit vacuum.
pub fn coherent_state(g: &HElement) -> GaussPacket {
    schrodinger_act(g, &GaussPacket::vacuum(g.dim()))
}
