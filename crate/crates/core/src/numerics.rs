//! Gauss–Hermite quadrature, normalized Gaussian inner products and
//! finite-difference operator stencils.
//!
//! Every Gaussian measure here is a probability measure:
//! `π^{-m/2} e^{-|x|²} dx` on `ℝ^m`, and on `ℂⁿ ≅ ℝ^{2n}` the same measure
//! with `m = 2n`. Tensor grids are summed in a fixed lexicographic order, so
//! results are bit-reproducible.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::{Error, Result};

pub const MAX_ORDER: usize = 200;
/// Cap on the real dimension of a tensor grid.
pub const MAX_GRID_DIMS: usize = 4;
pub const DEFAULT_ORDER: usize = 40;
pub const DEFAULT_STEP: f64 = 1e-4;
pub const RESIDUAL_TOL: f64 = 1e-6;

/// Gauss–Hermite rule for the weight `e^{-x²}` on `ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫ f(x) e^{-x²} dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Nodes and weights of the `order`-point Gauss–Hermite rule.
///
/// Golub–Welsch style: the nodes are the eigenvalues of the symmetric Jacobi
/// matrix (zero diagonal, off-diagonal `√(k/2)`), isolated by Sturm-sequence
/// bisection and polished by Newton steps on the orthonormal recurrence. The
/// weights are `2 / p_n'(x)²` in that normalization.
pub fn hermite_rule(order: usize) -> Result<QuadRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidOrder(order));
    }
    let n = order;
    // Gershgorin bound on the spectrum
    let bound = 2.0 * (n as f64 / 2.0).sqrt() + 1.0;
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        // i-th smallest eigenvalue: count(x) > i at the upper end
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(n, mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        nodes.push(0.5 * (lo + hi));
    }
    for z in nodes.iter_mut() {
        for _ in 0..2 {
            let (p, pp) = orthonormal_hermite(n, *z);
            if pp.is_finite() && pp != 0.0 {
                *z -= p / pp;
            }
        }
    }
    // enforce exact symmetry
    for i in 0..n / 2 {
        let a = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -a;
        nodes[n - 1 - i] = a;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&z| {
            let (_, pp) = orthonormal_hermite(n, z);
            2.0 / (pp * pp)
        })
        .collect();
    Ok(QuadRule { nodes, weights })
}

/// Number of Jacobi-matrix eigenvalues below `x`.
fn sturm_count(n: usize, x: f64) -> usize {
    let mut count = 0;
    let mut d = -x;
    if d < 0.0 {
        count += 1;
    }
    for k in 1..n {
        let b2 = k as f64 / 2.0;
        let prev = if d == 0.0 { f64::EPSILON } else { d };
        d = -x - b2 / prev;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Orthonormal Hermite polynomial `p_n(x)` (w.r.t. `e^{-x²}`) and its derivative.
fn orthonormal_hermite(n: usize, x: f64) -> (f64, f64) {
    let mut p1 = PI.powf(-0.25);
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = x * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, (2.0 * n as f64).sqrt() * p2)
}

/// Tensor grid for the normalized Gaussian measure on `ℝ^dims`.
#[derive(Debug, Clone)]
pub struct GaussianGrid {
    dims: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussianGrid {
    pub fn new(dims: usize, order: usize) -> Result<Self> {
        if dims > MAX_GRID_DIMS {
            return Err(Error::CapExceeded { what: "quadrature dimension", value: dims, cap: MAX_GRID_DIMS });
        }
        let rule = hermite_rule(order)?;
        let norm = PI.sqrt();
        Ok(Self {
            dims,
            nodes: rule.nodes.clone(),
            weights: rule.weights.iter().map(|w| w / norm).collect(),
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.nodes.len().pow(self.dims as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Visit every grid point with its (normalized) weight, in lexicographic order.
    pub fn for_each(&self, mut f: impl FnMut(&[f64], f64)) {
        let q = self.nodes.len();
        let mut idx = vec![0usize; self.dims];
        let mut x = vec![0.0; self.dims];
        loop {
            let mut w = 1.0;
            for (d, &i) in idx.iter().enumerate() {
                x[d] = self.nodes[i];
                w *= self.weights[i];
            }
            f(&x, w);
            // odometer increment
            let mut d = self.dims;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < q {
                    break;
                }
                idx[d] = 0;
            }
        }
    }

    /// Point list with weights (for callers that need random access).
    pub fn points(&self) -> Vec<(Vec<f64>, f64)> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each(|x, w| out.push((x.to_vec(), w)));
        out
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        self.for_each(|x, w| acc += f(x) * w);
        acc
    }

    pub fn integrate_mv(&self, n: usize, f: impl Fn(&[f64]) -> Multivector) -> Multivector {
        let mut acc = Multivector::zero(n);
        self.for_each(|x, w| acc.add_scaled(&f(x), Complex64::new(w, 0.0)));
        acc
    }
}

/// `∫ conj(f) g dμ` over the normalized Gaussian measure on `ℝ^m`.
pub fn gaussian_inner(
    f: impl Fn(&[f64]) -> Complex64,
    g: impl Fn(&[f64]) -> Complex64,
    m: usize,
    order: usize,
) -> Result<Complex64> {
    let grid = GaussianGrid::new(m, order)?;
    Ok(grid.integrate(|x| f(x).conj() * g(x)))
}

/// Clifford-valued `∫ conj(f)·g dμ` over the normalized Gaussian measure on `ℝ^m`.
pub fn gaussian_inner_mv(
    n: usize,
    f: impl Fn(&[f64]) -> Multivector,
    g: impl Fn(&[f64]) -> Multivector,
    m: usize,
    order: usize,
) -> Result<Multivector> {
    let grid = GaussianGrid::new(m, order)?;
    Ok(grid.integrate_mv(n, |x| &f(x).conj() * &g(x)))
}

/// Read `(x_0, y_0, x_1, y_1, …)` as complex coordinates `z_j = x_j + i y_j`.
pub fn as_complex(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Left coefficient of a stencil term.
#[derive(Clone)]
pub enum Coefficient {
    Constant(Multivector),
    /// Evaluated at the point where the operator is applied.
    Varying(Arc<dyn Fn(&[f64]) -> Multivector + Send + Sync>),
}

impl Coefficient {
    pub fn at(&self, x: &[f64]) -> Multivector {
        match self {
            Coefficient::Constant(c) => c.clone(),
            Coefficient::Varying(f) => f(x),
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Constant(c) => write!(f, "Constant({c})"),
            Coefficient::Varying(_) => write!(f, "Varying(..)"),
        }
    }
}

/// One term `c(x) · ∂^order/∂x_var^order`; `order = 0` is multiplication.
#[derive(Debug, Clone)]
pub struct StencilTerm {
    pub var: usize,
    pub order: u8,
    pub coeff: Coefficient,
}

/// First/second-order differential operator with Clifford coefficients.
#[derive(Debug, Clone, Default)]
pub struct OperatorStencil {
    pub name: String,
    pub terms: Vec<StencilTerm>,
}

impl OperatorStencil {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), terms: Vec::new() }
    }

    pub fn term(mut self, var: usize, order: u8, coeff: Coefficient) -> Self {
        self.terms.push(StencilTerm { var, order, coeff });
        self
    }

    pub fn constant(self, var: usize, order: u8, c: Multivector) -> Self {
        self.term(var, order, Coefficient::Constant(c))
    }

    pub fn varying(self, var: usize, order: u8, c: impl Fn(&[f64]) -> Multivector + Send + Sync + 'static) -> Self {
        self.term(var, order, Coefficient::Varying(Arc::new(c)))
    }
}

/// Apply a stencil at `point` with central differences of step `h`.
pub fn finite_diff_apply(
    op: &OperatorStencil,
    f: &dyn Fn(&[f64]) -> Multivector,
    point: &[f64],
    h: f64,
) -> Multivector {
    assert!(h > 0.0, "finite-difference step must be positive");
    let centre = f(point);
    let mut acc = Multivector::zero(centre.dim());
    let mut x = point.to_vec();
    for term in &op.terms {
        let deriv = match term.order {
            0 => centre.clone(),
            1 | 2 => {
                x[term.var] = point[term.var] + h;
                let fp = f(&x);
                x[term.var] = point[term.var] - h;
                let fm = f(&x);
                x[term.var] = point[term.var];
                if term.order == 1 {
                    (&fp - &fm).scale(0.5 / h)
                } else {
                    (&(&fp + &fm) - &centre.scale(2.0)).scale(1.0 / (h * h))
                }
            }
            o => panic!("unsupported derivative order {o}"),
        };
        let c = term.coeff.at(point);
        acc = &acc + &(&c * &deriv);
    }
    acc
}
