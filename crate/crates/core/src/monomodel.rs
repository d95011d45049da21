//! The monogenic model `M²`: the closed span of the `V_k`, its ladder
//! operators, the Heisenberg action by CK multiplication and shifts,
//! coherent states, and the kernels linking it to Segal–Bargmann space.
//!
//! Elements are stored by their coefficients on `V_k`; the Hilbert
//! structure is the coefficient one, `⟨f, g⟩ = Σ conj(f_k) g_k`. A
//! quadrature path computes the scalar part of `∫ conj(f)·g dμ` over the
//! normalized Gaussian on `ℝ^{n+1}` for comparison.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::cpoly::{mono_exp, v_monomial, CliffPoly, DEFAULT_DEGREE_CAP};
use crate::multi_index::factorial;
use crate::numerics::gaussian_inner_mv;
use crate::oscillator::{BargmannElem, HElement};
use crate::{Error, MultiIndex, Result};

/// Terms beyond this degree are summed when bounding a truncation tail.
const TAIL_TERMS: usize = 60;

/// Finite expansion `Σ c_k V_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct M2Element {
    pub n: usize,
    pub coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl M2Element {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(k: MultiIndex) -> Self {
        let mut out = Self::zero(k.len());
        out.coeffs.insert(k, Complex64::new(1.0, 0.0));
        out
    }

    pub fn add_term(&mut self, k: MultiIndex, c: Complex64) {
        *self.coeffs.entry(k).or_default() += c;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &M2Element) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), *c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn norm(&self) -> f64 {
        m2_inner_exact(self, self).re.max(0.0).sqrt()
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &M2Element) -> f64 {
        let diff = self.add(&other.scale(Complex64::new(-1.0, 0.0)));
        diff.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The polynomial `Σ c_k V_k` in `x_0 … x_n`.
    pub fn realize(&self) -> Result<CliffPoly> {
        let mut out = CliffPoly::zero(self.n);
        for (k, c) in &self.coeffs {
            out = out.add(&v_monomial(k, self.degree().max(DEFAULT_DEGREE_CAP))?.scale(*c));
        }
        Ok(out)
    }
}

/// Coefficient inner product, conjugate-linear in the first argument.
pub fn m2_inner_exact(f: &M2Element, g: &M2Element) -> Complex64 {
    f.coeffs
        .iter()
        .filter_map(|(k, a)| g.coeffs.get(k).map(|b| a.conj() * b))
        .sum()
}

/// Scalar part of `∫ conj(f)·g dμ` on `ℝ^{n+1}`.
pub fn m2_inner_quadrature(f: &M2Element, g: &M2Element, order: usize) -> Result<Complex64> {
    let (pf, pg) = (f.realize()?, g.realize()?);
    let n = f.n;
    Ok(gaussian_inner_mv(n, |x| pf.eval(x), |x| pg.eval(x), n + 1, order)?.scalar_part())
}

/// Both inner-product paths: `(exact, quadrature)`.
pub fn m2_inner(f: &M2Element, g: &M2Element, order: usize) -> Result<(Complex64, Complex64)> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch { left: f.n, right: g.n });
    }
    Ok((m2_inner_exact(f, g), m2_inner_quadrature(f, g, order)?))
}

fn check_var(j: usize, n: usize) -> Result<usize> {
    if j == 0 || j > n {
        return Err(Error::DimensionMismatch { left: j, right: n });
    }
    Ok(j - 1)
}

/// `x_j I_×`: `V_k ↦ √(k_j+1) V_{k+e_j}`, `1 ≤ j ≤ n`.
pub fn create_apply(j: usize, f: &M2Element, cap: usize) -> Result<M2Element> {
    let idx = check_var(j, f.n)?;
    let mut out = M2Element::zero(f.n);
    for (k, c) in &f.coeffs {
        let up = k.shifted(idx, 1).expect("raising never underflows");
        if up.degree() > cap {
            return Err(Error::CapExceeded { what: "M2 degree", value: up.degree(), cap });
        }
        out.add_term(up, c * (f64::from(k.0[idx]) + 1.0).sqrt());
    }
    Ok(out)
}

/// `∂/∂x_j`: `V_k ↦ √k_j V_{k-e_j}`.
pub fn annihilate_apply(j: usize, f: &M2Element) -> Result<M2Element> {
    let idx = check_var(j, f.n)?;
    let mut out = M2Element::zero(f.n);
    for (k, c) in &f.coeffs {
        if let Some(down) = k.shifted(idx, -1) {
            out.add_term(down, c * f64::from(k.0[idx]).sqrt());
        }
    }
    Ok(out)
}

fn sqrt_fact(k: &MultiIndex) -> f64 {
    k.factorial().sqrt()
}

fn real_power(c: &[f64], k: &MultiIndex) -> f64 {
    k.monomial(c)
}

/// `E(c, ·) = Σ_k c^k/√k! V_k` truncated at degree `max_degree`, with the
/// bound `Σ_{|k|>max_degree} |c^k|/√k!` on what was dropped.
pub fn mono_exp_expansion(c: &[f64], max_degree: usize) -> (M2Element, f64) {
    let n = c.len();
    let mut out = M2Element::zero(n);
    for k in MultiIndex::all_up_to(n, max_degree) {
        let v = real_power(c, &k) / sqrt_fact(&k);
        if v != 0.0 {
            out.add_term(k, Complex64::new(v, 0.0));
        }
    }
    // √k! ≤ √d! gives Σ_{|k|=d} |c^k|/√k! ≤ (Σ|c_j|)^d/√d!
    let abs_sum: f64 = c.iter().map(|v| v.abs()).sum();
    let mut tail = 0.0;
    for d in max_degree + 1..=max_degree + TAIL_TERMS {
        let df = d as f64;
        tail += abs_sum.powf(df) / factorial(d as u32).sqrt();
    }
    (out, tail)
}

/// CK product in the `V` basis: `V_a × V_b = √((a+b)!/(a! b!)) V_{a+b}`.
/// Terms above `max_degree` are dropped and their coefficient mass returned.
pub fn ck_product_v(f: &M2Element, g: &M2Element, max_degree: usize) -> (M2Element, f64) {
    let mut out = M2Element::zero(f.n);
    let mut dropped = 0.0;
    for (a, ca) in &f.coeffs {
        for (b, cb) in &g.coeffs {
            let s = a.add(b);
            let v = ca * cb * (s.factorial() / (a.factorial() * b.factorial())).sqrt();
            if s.degree() > max_degree {
                dropped += v.norm();
            } else {
                out.add_term(s, v);
            }
        }
    }
    (out, dropped)
}

/// Spatial shift `f(x) ↦ f(x + s)` in the `V` basis.
pub fn shift_v(f: &M2Element, s: &[f64]) -> M2Element {
    let mut out = M2Element::zero(f.n);
    for (k, c) in &f.coeffs {
        let below: Vec<MultiIndex> = MultiIndex::all_up_to(f.n, k.degree())
            .into_iter()
            .filter(|j| j.0.iter().zip(&k.0).all(|(a, b)| a <= b))
            .collect();
        for j in below {
            let mut w = (k.factorial() / j.factorial()).sqrt();
            for ((&kk, &jj), &si) in k.0.iter().zip(&j.0).zip(s) {
                w *= si.powi((kk - jj) as i32) / factorial(kk - jj);
            }
            if w != 0.0 {
                out.add_term(j, c * w);
            }
        }
    }
    out
}

/// Result of a truncated action together with a bound on the truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct M2Action {
    pub value: M2Element,
    pub tail: f64,
}

fn split(g: &HElement) -> (f64, Vec<f64>, Vec<f64>) {
    let u: Vec<f64> = g.z.iter().map(|z| z.re).collect();
    let v: Vec<f64> = g.z.iter().map(|z| z.im).collect();
    let uu: f64 = u.iter().map(|a| a * a).sum();
    let vv: f64 = v.iter().map(|a| a * a).sum();
    (-(g.t + (uu - vv) / 4.0), u, v)
}

/// `[π_{(t,u+iv)} f](x) = e^{-(t + (u·u - v·v)/4)} E((u+v)/√2, x) × f(x + (u-v)/√2)`,
/// with `E` truncated at `max_degree`.
pub fn pi_m2_act(g: &HElement, f: &M2Element, max_degree: usize) -> Result<M2Action> {
    if g.dim() != f.n {
        return Err(Error::DimensionMismatch { left: g.dim(), right: f.n });
    }
    let (log_scale, u, v) = split(g);
    let c: Vec<f64> = u.iter().zip(&v).map(|(a, b)| (a + b) / SQRT_2).collect();
    let s: Vec<f64> = u.iter().zip(&v).map(|(a, b)| (a - b) / SQRT_2).collect();
    let (e, e_tail) = mono_exp_expansion(&c, max_degree);
    let shifted = shift_v(f, &s);
    let (prod, dropped) = ck_product_v(&e, &shifted, max_degree);
    let scale = log_scale.exp();
    let fnorm: f64 = shifted.coeffs.values().map(|c| c.norm()).sum();
    Ok(M2Action { value: prod.scale(Complex64::new(scale, 0.0)), tail: scale * (dropped + e_tail * fnorm) })
}

/// Coherent state `f_{(t,z)} = e^{-(t + (u·u - v·v)/4)} E((u+v)/√2, ·)`.
#[derive(Debug, Clone)]
pub struct M2Coherent {
    scale: f64,
    c: Vec<f64>,
}

impl M2Coherent {
    pub fn eval(&self, x: &[f64]) -> Multivector {
        mono_exp(&self.c, x).scale(self.scale)
    }

    pub fn expansion(&self, max_degree: usize) -> M2Element {
        mono_exp_expansion(&self.c, max_degree).0.scale(Complex64::new(self.scale, 0.0))
    }
}

pub fn m2_coherent(g: &HElement) -> M2Coherent {
    let (log_scale, u, v) = split(g);
    M2Coherent { scale: log_scale.exp(), c: u.iter().zip(&v).map(|(a, b)| (a + b) / SQRT_2).collect() }
}

/// Coefficient-level residual `‖π_g π_h f - π_{gh} f‖_∞` under the
/// Heisenberg law. Reported, not asserted.
pub fn homomorphism_residual(g: &HElement, h: &HElement, f: &M2Element, max_degree: usize) -> Result<f64> {
    let inner = pi_m2_act(h, f, max_degree)?.value;
    let lhs = pi_m2_act(g, &inner, max_degree)?.value;
    let rhs = pi_m2_act(&crate::oscillator::h_mul(g, h), f, max_degree)?.value;
    Ok(lhs.distance(&rhs))
}

/// How the Bargmann variable enters the intertwining kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BConvention {
    /// `c_k(z) = z̄^k/√k!`; restriction to `x_0 = 0` is `exp(Σ x_k z̄_k)`.
    #[default]
    Conjugate,
    /// `c_k(z) = z^k/√k!`, kept for comparison.
    Holomorphic,
}

fn complex_power(z: &[Complex64], k: &MultiIndex) -> Complex64 {
    k.0.iter().zip(z).map(|(&e, zi)| zi.powu(e)).product()
}

/// `B(z, x) = Σ_{|k| ≤ max_degree} V_k(x) c_k(z)`.
pub fn b_kernel(z: &[Complex64], x: &[f64], max_degree: usize, conv: BConvention) -> Result<Multivector> {
    let n = z.len();
    if x.len() != n + 1 {
        return Err(Error::DimensionMismatch { left: n + 1, right: x.len() });
    }
    let mut out = Multivector::zero(n);
    for k in MultiIndex::all_up_to(n, max_degree) {
        let zk = match conv {
            BConvention::Conjugate => complex_power(z, &k).conj(),
            BConvention::Holomorphic => complex_power(z, &k),
        };
        let c = zk / sqrt_fact(&k);
        out.add_scaled(&v_monomial(&k, max_degree)?.eval(x), c);
    }
    Ok(out)
}

/// `z^m/√m! ↦ V_m`.
pub fn b_transform(f: &BargmannElem) -> M2Element {
    M2Element { n: f.n, coeffs: f.coeffs.clone() }
}

pub fn b_inverse(f: &M2Element) -> BargmannElem {
    BargmannElem { n: f.n, coeffs: f.coeffs.clone() }
}

/// Integral realization `∫ B(z, x) F(z) dμ(z)` at a point `x`.
pub fn b_transform_quadrature(
    f: &BargmannElem,
    x: &[f64],
    max_degree: usize,
    conv: BConvention,
    order: usize,
) -> Result<Multivector> {
    let n = f.n;
    let grid = crate::numerics::GaussianGrid::new(2 * n, order)?;
    let mut acc = Multivector::zero(n);
    let mut err = None;
    grid.for_each(|p, w| {
        let z = crate::numerics::as_complex(p);
        match b_kernel(&z, x, max_degree, conv) {
            Ok(b) => acc.add_scaled(&b, f.eval(&z) * w),
            Err(e) => {
                err.get_or_insert(e);
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// `K(x, y) = Σ_{|k| ≤ max_degree} V_k(x) conj(V_k(y))`.
pub fn m2_repro_kernel(x: &[f64], y: &[f64], max_degree: usize) -> Result<Multivector> {
    let n = x.len().checked_sub(1).ok_or(Error::DimensionMismatch { left: 1, right: 0 })?;
    if y.len() != n + 1 {
        return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
    }
    let mut out = Multivector::zero(n);
    for k in MultiIndex::all_up_to(n, max_degree) {
        let v = v_monomial(&k, max_degree)?;
        out = &out + &(&v.eval(x) * &v.eval(y).conj());
    }
    Ok(out)
}
