//! The step-two nilpotent group `Gⁿ` with `n`-dimensional centre, its
//! representation `ρ` on `ℂⁿ`-valued functions and the Clifford-valued
//! wavelet transform.
//!
//! Component `j` of a function takes values in `span{1, e_j} ≅ ℂ`, stored
//! as `Complex64` with `i ↔ e_j` and converted to a [`Multivector`] on output.
//! The Clifford inner product conjugates its first argument:
//! `⟨f, f'⟩ = Σ_j ∫ conj(f_j) f'_j dx`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{BladeIndex, Multivector};
use crate::multi_index::binomial;
use crate::numerics::{finite_diff_apply, hermite_rule, OperatorStencil};
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `a + b i` read as `a + b e_j` in `Cl(0,n)`; `j` is 1-based.
pub fn embed(n: usize, j: usize, c: Complex64) -> Multivector {
    let mut mv = Multivector::scalar(n, c.re);
    mv.add_term(BladeIndex::generator(j), Complex64::new(c.im, 0.0));
    mv
}

/// Point `(t_1 … t_n; p; q_1 … q_n)` of `Gⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GElement {
    pub t: Vec<f64>,
    pub p: f64,
    pub q: Vec<f64>,
}

impl GElement {
    pub fn new(t: Vec<f64>, p: f64, q: Vec<f64>) -> Self {
        assert_eq!(t.len(), q.len(), "t and q must have the same length");
        Self { t, p, q }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![0.0; n], 0.0, vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// Flat coordinates `[t_1 … t_n, p, q_1 … q_n]`.
    pub fn coords(&self) -> Vec<f64> {
        let mut v = self.t.clone();
        v.push(self.p);
        v.extend_from_slice(&self.q);
        v
    }

    pub fn from_coords(x: &[f64]) -> Self {
        assert!(x.len() % 2 == 1, "Gⁿ has 2n + 1 coordinates");
        let n = x.len() / 2;
        Self::new(x[..n].to_vec(), x[n], x[n + 1..].to_vec())
    }

    /// `z_j = p + e_j q_j` as a complex number.
    pub fn z(&self, j: usize) -> Complex64 {
        Complex64::new(self.p, self.q[j])
    }

    pub fn distance(&self, other: &GElement) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `t_j'' = t_j + t_j' + ½(p' q_j - p q_j')`, `p'' = p + p'`, `q'' = q + q'`.
pub fn g_mul(g: &GElement, h: &GElement) -> GElement {
    assert_eq!(g.dim(), h.dim(), "group elements of different dimension");
    let t = (0..g.dim())
        .map(|j| g.t[j] + h.t[j] + 0.5 * (h.p * g.q[j] - g.p * h.q[j]))
        .collect();
    GElement { t, p: g.p + h.p, q: g.q.iter().zip(&h.q).map(|(a, b)| a + b).collect() }
}

pub fn g_inv(g: &GElement) -> GElement {
    GElement { t: g.t.iter().map(|v| -v).collect(), p: -g.p, q: g.q.iter().map(|v| -v).collect() }
}

/// Section `Ω = ℝ^{n+1} → Gⁿ`, `a ↦ (0; a_0; a_1 … a_n)`.
pub fn omega_section(a: &[f64]) -> GElement {
    let n = a.len() - 1;
    GElement::new(vec![0.0; n], a[0], a[1..].to_vec())
}

/// Projection `Gⁿ → Ω` forgetting the centre.
pub fn omega_project(g: &GElement) -> Vec<f64> {
    let mut v = vec![g.p];
    v.extend_from_slice(&g.q);
    v
}

/// `f_j(x) = amp_j exp(lin_j x - x²/2)` for each component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VPacket {
    pub amp: Vec<Complex64>,
    pub lin: Vec<Complex64>,
}

impl VPacket {
    pub fn new(amp: Vec<Complex64>, lin: Vec<Complex64>) -> Self {
        assert_eq!(amp.len(), lin.len());
        Self { amp, lin }
    }

    /// Vacuum with unit-norm components, `π^{-1/4} e^{-x²/2}` each.
    pub fn vacuum(n: usize) -> Self {
        Self::new(vec![Complex64::new(PI.powf(-0.25), 0.0); n], vec![Complex64::default(); n])
    }

    /// `(…, 0, π^{-1/4} e^{-x²/2}, 0, …)` in component `j` (1-based).
    pub fn vacuum_component(n: usize, j: usize) -> Self {
        let mut v = Self::vacuum(n);
        for (k, a) in v.amp.iter_mut().enumerate() {
            if k + 1 != j {
                *a = Complex64::default();
            }
        }
        v
    }

    /// Coherent state `f_g = ρ_g f_0`.
    pub fn coherent(g: &GElement) -> Self {
        rho_act(g, &Self::vacuum(g.dim()))
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn eval_component(&self, j: usize, x: f64) -> Complex64 {
        self.amp[j] * (self.lin[j] * x - 0.5 * x * x).exp()
    }

    pub fn eval(&self, x: f64) -> Multivector {
        let n = self.dim();
        let mut out = Multivector::zero(n);
        for j in 0..n {
            out = &out + &embed(n, j + 1, self.eval_component(j, x));
        }
        out
    }

    pub fn param_distance(&self, other: &VPacket) -> f64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .chain(self.lin.iter().zip(&other.lin))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `[ρ_g f]_j(x) = e^{e_j(2t_j + q_j(√2x - p))} f_j(x - √2 p)`, exactly.
pub fn rho_act(g: &GElement, f: &VPacket) -> VPacket {
    assert_eq!(g.dim(), f.dim(), "dimension mismatch");
    let mut out = f.clone();
    for j in 0..f.dim() {
        (out.amp[j], out.lin[j]) = rho_component(g, j, f.amp[j], f.lin[j]);
    }
    out
}

/// Parameter update of `ρ_g` on component `j` (0-based).
pub fn rho_component(g: &GElement, j: usize, amp: Complex64, lin: Complex64) -> (Complex64, Complex64) {
    let p = g.p;
    let phase = I * (2.0 * g.t[j] - g.q[j] * p) - SQRT_2 * lin * p - p * p;
    (amp * phase.exp(), lin + SQRT_2 * p + I * (SQRT_2 * g.q[j]))
}

/// `∫ conj(a₁ e^{l₁x - x²/2}) a₂ e^{l₂x - x²/2} dx`.
fn component_inner(a1: Complex64, l1: Complex64, a2: Complex64, l2: Complex64) -> Complex64 {
    let s = l1.conj() + l2;
    a1.conj() * a2 * PI.sqrt() * (s * s / 4.0).exp()
}

/// Clifford-valued inner product in closed form.
pub fn cliff_inner(f: &VPacket, g: &VPacket) -> Multivector {
    let n = f.dim();
    let mut out = Multivector::zero(n);
    for j in 0..n {
        out = &out + &embed(n, j + 1, component_inner(f.amp[j], f.lin[j], g.amp[j], g.lin[j]));
    }
    out
}

/// The same inner product by Gauss–Hermite quadrature per component.
pub fn cliff_inner_quadrature(f: &VPacket, g: &VPacket, order: usize) -> Result<Multivector> {
    let rule = hermite_rule(order)?;
    let n = f.dim();
    let mut out = Multivector::zero(n);
    for j in 0..n {
        let mut acc = Complex64::default();
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            acc += f.eval_component(j, x).conj() * g.eval_component(j, x) * (x * x).exp() * w;
        }
        out = &out + &embed(n, j + 1, acc);
    }
    Ok(out)
}

/// `Σ_k poly_k x^k · exp(lin x - x²/2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyGauss {
    pub lin: Complex64,
    pub poly: Vec<Complex64>,
}

/// Finite sums of polynomial-times-Gaussian terms per component; closed
/// under `dρ` and left multiplication by `e_j` on component `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacketSum {
    pub comps: Vec<Vec<PolyGauss>>,
}

/// `∫ y^i e^{-y²} dy / √π`.
fn half_gauss_moment(i: usize) -> f64 {
    if i % 2 == 1 {
        return 0.0;
    }
    (1..i).step_by(2).map(|v| v as f64).product::<f64>() / 2f64.powi(i as i32 / 2)
}

/// `∫ x^k exp(s x - x²) dx`.
fn shifted_moment(k: usize, s: Complex64) -> Complex64 {
    let half = s / 2.0;
    let mut acc = Complex64::default();
    for i in (0..=k).step_by(2) {
        acc += binomial(k as u32, i as u32) * half.powu((k - i) as u32) * half_gauss_moment(i);
    }
    acc * PI.sqrt() * (s * s / 4.0).exp()
}

impl PacketSum {
    pub fn zero(n: usize) -> Self {
        Self { comps: vec![Vec::new(); n] }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn map_terms(&self, f: impl Fn(usize, &PolyGauss) -> Option<PolyGauss>) -> Self {
        Self {
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(j, ts)| ts.iter().filter_map(|t| f(j, t)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &PacketSum) -> Self {
        let mut out = self.clone();
        for (a, b) in out.comps.iter_mut().zip(&other.comps) {
            a.extend(b.iter().cloned());
        }
        out.simplify()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_terms(|_, t| Some(PolyGauss { lin: t.lin, poly: t.poly.iter().map(|v| v * c).collect() }))
    }

    pub fn sub(&self, other: &PacketSum) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Merge terms with identical exponent and drop zero coefficients.
    pub fn simplify(&self) -> Self {
        let mut out = PacketSum::zero(self.dim());
        for (j, ts) in self.comps.iter().enumerate() {
            for t in ts {
                match out.comps[j].iter_mut().find(|u| u.lin == t.lin) {
                    Some(u) => {
                        if u.poly.len() < t.poly.len() {
                            u.poly.resize(t.poly.len(), Complex64::default());
                        }
                        for (a, b) in u.poly.iter_mut().zip(&t.poly) {
                            *a += b;
                        }
                    }
                    None => out.comps[j].push(t.clone()),
                }
            }
            for u in &mut out.comps[j] {
                while u.poly.last().is_some_and(|c| *c == Complex64::default()) {
                    u.poly.pop();
                }
            }
            out.comps[j].retain(|u| !u.poly.is_empty());
        }
        out
    }

    /// Multiply component `j` (0-based) by a constant and zero the others.
    fn on_component(&self, j: usize, c: Complex64, times_x: bool) -> Self {
        self.map_terms(|k, t| {
            if k != j {
                return None;
            }
            let mut poly: Vec<Complex64> = t.poly.iter().map(|v| v * c).collect();
            if times_x {
                poly.insert(0, Complex64::default());
            }
            Some(PolyGauss { lin: t.lin, poly })
        })
    }

    /// Left multiplication by `e_j` on component `j`, 1-based. Other
    /// components must vanish, since `e_j` would leave their subalgebra.
    pub fn left_e(&self, j: usize) -> Result<Self> {
        for (k, ts) in self.comps.iter().enumerate() {
            if k + 1 != j && !ts.is_empty() {
                return Err(Error::InvalidConfig(format!("e_{j} applied to component {}", k + 1)));
            }
        }
        Ok(self.on_component(j - 1, I, false))
    }

    pub fn eval_component(&self, j: usize, x: f64) -> Complex64 {
        self.comps[j]
            .iter()
            .map(|t| {
                let p: Complex64 = t.poly.iter().rev().fold(Complex64::default(), |acc, c| acc * x + c);
                p * (t.lin * x - 0.5 * x * x).exp()
            })
            .sum()
    }

    pub fn eval(&self, x: f64) -> Multivector {
        let n = self.dim();
        let mut out = Multivector::zero(n);
        for j in 0..n {
            out = &out + &embed(n, j + 1, self.eval_component(j, x));
        }
        out
    }

    /// Closed-form `⟨self, other⟩`, conjugating `self`.
    pub fn inner(&self, other: &PacketSum) -> Multivector {
        let n = self.dim();
        let mut out = Multivector::zero(n);
        for j in 0..n {
            let mut acc = Complex64::default();
            for a in &self.comps[j] {
                for b in &other.comps[j] {
                    let s = a.lin.conj() + b.lin;
                    for (ka, ca) in a.poly.iter().enumerate() {
                        for (kb, cb) in b.poly.iter().enumerate() {
                            acc += ca.conj() * cb * shifted_moment(ka + kb, s);
                        }
                    }
                }
            }
            out = &out + &embed(n, j + 1, acc);
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).scalar_part().re.max(0.0).sqrt()
    }
}

impl From<&VPacket> for PacketSum {
    fn from(f: &VPacket) -> Self {
        let comps = (0..f.dim())
            .map(|j| {
                if f.amp[j] == Complex64::default() {
                    Vec::new()
                } else {
                    vec![PolyGauss { lin: f.lin[j], poly: vec![f.amp[j]] }]
                }
            })
            .collect();
        PacketSum { comps }
    }
}

/// Basis of the Lie algebra of `Gⁿ`; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LieBasis {
    T(usize),
    P,
    Q(usize),
}

/// `dρ(T_j) f = 2e_j f_j`, `dρ(P) f = -√2 f'`, `dρ(Q_j) f = √2 e_j x f_j`.
pub fn drho_apply(b: LieBasis, f: &PacketSum) -> Result<PacketSum> {
    let n = f.dim();
    let check = |j: usize| {
        if j == 0 || j > n {
            Err(Error::DimensionMismatch { left: j, right: n })
        } else {
            Ok(j - 1)
        }
    };
    Ok(match b {
        LieBasis::T(j) => f.on_component(check(j)?, 2.0 * I, false),
        LieBasis::Q(j) => f.on_component(check(j)?, SQRT_2 * I, true),
        LieBasis::P => f.map_terms(|_, t| {
            // (poly e^{lx - x²/2})' = (poly' + (l - x) poly) e^{lx - x²/2}
            let mut d = vec![Complex64::default(); t.poly.len() + 1];
            for (k, c) in t.poly.iter().enumerate() {
                if k > 0 {
                    d[k - 1] += c * k as f64;
                }
                d[k] += c * t.lin;
                d[k + 1] -= c;
            }
            Some(PolyGauss { lin: t.lin, poly: d.iter().map(|v| v * -SQRT_2).collect() })
        })
        .simplify(),
    })
}

fn sum_e_q(f: &PacketSum) -> Result<PacketSum> {
    let mut acc = PacketSum::zero(f.dim());
    for j in 1..=f.dim() {
        acc = acc.add(&drho_apply(LieBasis::Q(j), f)?.left_e(j)?);
    }
    Ok(acc)
}

/// Annihilator `a⁻ = dρ(P) + Σ_j e_j dρ(Q_j)`; this sign kills the vacuum.
pub fn a_minus(f: &PacketSum) -> Result<PacketSum> {
    Ok(drho_apply(LieBasis::P, f)?.add(&sum_e_q(f)?))
}

/// `dρ(P) - Σ_j e_j dρ(Q_j)`, the opposite sign, kept for comparison.
pub fn a_minus_flipped(f: &PacketSum) -> Result<PacketSum> {
    Ok(drho_apply(LieBasis::P, f)?.sub(&sum_e_q(f)?))
}

/// Creator `a_k⁺ = a⁻ - 2e_k dρ(Q_k)`.
pub fn a_plus(k: usize, f: &PacketSum) -> Result<PacketSum> {
    let q = drho_apply(LieBasis::Q(k), f)?.left_e(k)?;
    Ok(a_minus(f)?.sub(&q.scale(Complex64::new(2.0, 0.0))))
}

/// `Wf(g) = ⟨f_g, f⟩` by Gauss–Hermite quadrature per component.
pub fn g_wavelet(f: &VPacket, g: &GElement, order: usize) -> Result<Multivector> {
    cliff_inner_quadrature(&VPacket::coherent(g), f, order)
}

/// Per-component terms `exp(-2e_j(t_j - t'_j) - (|z_j|² + |a_j|²)/2 + a_j z̄_j)`.
pub fn g_wavelet_closed_components(tp: &[f64], a: &[f64], g: &GElement) -> Vec<Complex64> {
    (0..g.dim())
        .map(|j| {
            let z = g.z(j);
            let aj = Complex64::new(a[0], a[j + 1]);
            (-2.0 * I * (g.t[j] - tp[j]) - 0.5 * (z.norm_sqr() + aj.norm_sqr()) + aj * z.conj()).exp()
        })
        .collect()
}

/// `W f_{(t',a)}(g)` in closed form, `a = (a_0, a_1 … a_n)`.
pub fn g_wavelet_closed(tp: &[f64], a: &[f64], g: &GElement) -> Multivector {
    let n = g.dim();
    g_wavelet_closed_components(tp, a, g)
        .into_iter()
        .enumerate()
        .fold(Multivector::zero(n), |acc, (j, c)| &acc + &embed(n, j + 1, c))
}

/// Dirac operator `∂_p - Σ e_j ∂_{q_j} + ½ Σ (e_j p + q_j) ∂_{t_j}` on flat
/// coordinates `[t, p, q]`.
pub fn dirac_g_stencil(n: usize) -> OperatorStencil {
    let mut op = OperatorStencil::new("dirac_g").constant(n, 1, Multivector::one(n));
    for j in 1..=n {
        op = op.constant(n + j, 1, Multivector::basis(n, j).scale(-1.0));
        op = op.varying(j - 1, 1, move |x: &[f64]| {
            let mut c = Multivector::basis(n, j).scale(0.5 * x[n]);
            c.add_term(BladeIndex::SCALAR, Complex64::new(0.5 * x[n + j], 0.0));
            c
        });
    }
    op
}

/// Dirac residual of `F` at a group point.
pub fn dirac_g_residual(f: &dyn Fn(&GElement) -> Multivector, point: &GElement, h: f64) -> Multivector {
    let n = point.dim();
    let flat = |x: &[f64]| f(&GElement::from_coords(x));
    finite_diff_apply(&dirac_g_stencil(n), &flat, &point.coords(), h)
}

/// Left- and right-invariant vector fields; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VectorField {
    T(usize),
    P,
    Q(usize),
    TStar(usize),
    PStar,
    QStar(usize),
}

/// Finite-difference stencil of a vector field on flat coordinates.
pub fn vector_field_stencil(n: usize, v: VectorField) -> OperatorStencil {
    let one = Multivector::one(n);
    let half_q = |sign: f64| {
        (1..=n).fold(OperatorStencil::new("P").constant(n, 1, Multivector::one(n)), move |op, j| {
            op.varying(j - 1, 1, move |x: &[f64]| Multivector::scalar(n, sign * 0.5 * x[n + j]))
        })
    };
    let q_field = |j: usize, sign: f64| {
        OperatorStencil::new("Q")
            .constant(n + j, 1, one.scale(-1.0))
            .varying(j - 1, 1, move |x: &[f64]| Multivector::scalar(n, sign * 0.5 * x[n]))
    };
    match v {
        VectorField::T(j) | VectorField::TStar(j) => OperatorStencil::new("T").constant(j - 1, 1, one),
        VectorField::P => half_q(1.0),
        VectorField::PStar => half_q(-1.0),
        VectorField::Q(j) => q_field(j, 1.0),
        VectorField::QStar(j) => q_field(j, -1.0),
    }
}

pub fn vector_field_apply(
    v: VectorField,
    f: &dyn Fn(&GElement) -> Multivector,
    point: &GElement,
    h: f64,
) -> Multivector {
    let n = point.dim();
    let flat = |x: &[f64]| f(&GElement::from_coords(x));
    finite_diff_apply(&vector_field_stencil(n, v), &flat, &point.coords(), h)
}

/// `[A, B] F` at a point by nested central differences.
pub fn commutator_apply(
    a: VectorField,
    b: VectorField,
    f: &dyn Fn(&GElement) -> Multivector,
    point: &GElement,
    h: f64,
) -> Multivector {
    let bf = |g: &GElement| vector_field_apply(b, f, g, h);
    let af = |g: &GElement| vector_field_apply(a, f, g, h);
    &vector_field_apply(a, &bf, point, h) - &vector_field_apply(b, &af, point, h)
}

/// `Σ_j exp(a_j z̄_j)` with `a_j = a_0 + e_j a_j`, `z_j = z_0 + e_j z_j`.
pub fn reduced_wavelet(a: &[f64], z: &[f64]) -> Multivector {
    let n = a.len() - 1;
    (1..=n).fold(Multivector::zero(n), |acc, j| {
        let aj = Complex64::new(a[0], a[j]);
        let zj = Complex64::new(z[0], z[j]);
        &acc + &embed(n, j, (aj * zj.conj()).exp())
    })
}

/// `D̂ = ∂_p - Σ e_j ∂_{q_j}` on `Ω = ℝ^{n+1}`.
pub fn reduced_dirac_stencil(n: usize) -> OperatorStencil {
    (1..=n).fold(OperatorStencil::new("reduced_dirac").constant(0, 1, Multivector::one(n)), |op, j| {
        op.constant(j, 1, Multivector::basis(n, j).scale(-1.0))
    })
}

/// Observed character of the centre on vacuum component `j` (1-based):
/// `ρ_{(t,0,0)} f_0` equals `e^{2 e_j t_j}` times component `j`.
pub fn vacuum_character(t: &[f64], j: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * t[j - 1])
}
