//! Coherent states and wavelet transforms for a group acting unitarily on
//! a carrier space with a vacuum that is an eigenvector of a subgroup `H`.
//!
//! Notation: `w_g = π_g w_0`; `s: Ω → G` is a section of `G → G/H = Ω` and
//! `r(g) = s(g)⁻¹ g ∈ H`; the vacuum satisfies `π_h w_0 = χ(h) w_0`. The
//! transform `Wf(g)` pairs `f` with `w_g`, conjugating `w_g` whichever side
//! the instance's inner product conjugates.

mod instances;

use std::fmt::Debug;

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::numerics::{finite_diff_apply, GaussianGrid, OperatorStencil};
use crate::Result;

pub use instances::{nil_wavelet, NilComponentSystem, OscillatorSystem};

/// A unitary representation with a distinguished vacuum.
pub trait CoherentSystem {
    type Group: Clone + Debug;
    type Carrier: Clone + Debug;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Group;
    fn mul(&self, g: &Self::Group, h: &Self::Group) -> Self::Group;
    fn inv(&self, g: &Self::Group) -> Self::Group;
    /// Largest coordinate difference between two group elements.
    fn group_distance(&self, g: &Self::Group, h: &Self::Group) -> f64;

    fn act(&self, g: &Self::Group, f: &Self::Carrier) -> Self::Carrier;
    fn inner(&self, f: &Self::Carrier, g: &Self::Carrier) -> Complex64;
    /// True when `inner` is conjugate-linear in its first argument.
    fn conjugates_first(&self) -> bool;
    fn vacuum(&self) -> Self::Carrier;
    fn lincomb(&self, terms: Vec<(Complex64, Self::Carrier)>) -> Self::Carrier;

    /// Real dimension of `Ω`.
    fn omega_dim(&self) -> usize;
    fn section(&self, a: &[f64]) -> Self::Group;
    fn omega_of(&self, g: &Self::Group) -> Vec<f64>;
    fn in_subgroup(&self, h: &Self::Group) -> bool;
    fn character(&self, h: &Self::Group) -> Complex64;
    /// Invariant measure on `Ω` as a multiple of Lebesgue measure.
    fn omega_density(&self) -> f64;
    /// Node scaling `σ` of the Gauss–Hermite rule used on `Ω`.
    fn omega_scale(&self) -> f64;
}

/// The pairing linear in `f` and conjugate-linear in `w`.
pub fn pair<S: CoherentSystem>(sys: &S, f: &S::Carrier, w: &S::Carrier) -> Complex64 {
    if sys.conjugates_first() {
        sys.inner(w, f)
    } else {
        sys.inner(f, w)
    }
}

pub fn norm<S: CoherentSystem>(sys: &S, f: &S::Carrier) -> f64 {
    sys.inner(f, f).re.max(0.0).sqrt()
}

pub fn carrier_distance<S: CoherentSystem>(sys: &S, f: &S::Carrier, g: &S::Carrier) -> f64 {
    let d = sys.lincomb(vec![(Complex64::new(1.0, 0.0), f.clone()), (Complex64::new(-1.0, 0.0), g.clone())]);
    norm(sys, &d)
}

pub fn coherent<S: CoherentSystem>(sys: &S, g: &S::Group) -> S::Carrier {
    sys.act(g, &sys.vacuum())
}

/// `Wf(g)`.
pub fn wtransform<S: CoherentSystem>(sys: &S, f: &S::Carrier, g: &S::Group) -> Complex64 {
    pair(sys, f, &coherent(sys, g))
}

/// `|W(π_g f)(g') - Wf(g⁻¹ g')|`.
pub fn check_intertwine<S: CoherentSystem>(sys: &S, f: &S::Carrier, g: &S::Group, gp: &S::Group) -> f64 {
    let lhs = wtransform(sys, &sys.act(g, f), gp);
    let rhs = wtransform(sys, f, &sys.mul(&sys.inv(g), gp));
    (lhs - rhs).norm()
}

/// `|⟨π_g f, π_g h⟩ - ⟨f, h⟩|`.
pub fn unitarity_residual<S: CoherentSystem>(sys: &S, f: &S::Carrier, h: &S::Carrier, g: &S::Group) -> f64 {
    (sys.inner(&sys.act(g, f), &sys.act(g, h)) - sys.inner(f, h)).norm()
}

/// `r(g) = s(g)⁻¹ g`.
pub fn remainder<S: CoherentSystem>(sys: &S, g: &S::Group) -> S::Group {
    let s = sys.section(&sys.omega_of(g));
    sys.mul(&sys.inv(&s), g)
}

/// `Ŵf(a) = Wf(s(a))`.
pub fn reduced_transform<S: CoherentSystem>(sys: &S, f: &S::Carrier, a: &[f64]) -> Complex64 {
    wtransform(sys, f, &sys.section(a))
}

/// `χ(r(g))`.
pub fn character_factor<S: CoherentSystem>(sys: &S, g: &S::Group) -> Complex64 {
    sys.character(&remainder(sys, g))
}

/// `|Wf(g) - conj(χ(r(g))) Ŵf(s(g))|`.
pub fn factorization_residual<S: CoherentSystem>(sys: &S, f: &S::Carrier, g: &S::Group) -> f64 {
    let full = wtransform(sys, f, g);
    let reduced = reduced_transform(sys, f, &sys.omega_of(g));
    (full - character_factor(sys, g).conj() * reduced).norm()
}

/// `‖π_h w_0 - χ(h) w_0‖` for `h ∈ H`, together with `||χ(h)| - 1|`.
pub fn homogeneity_residual<S: CoherentSystem>(sys: &S, h: &S::Group) -> (f64, f64) {
    let v = sys.vacuum();
    let chi = sys.character(h);
    let moved = sys.act(h, &v);
    let scaled = sys.lincomb(vec![(chi, v)]);
    (carrier_distance(sys, &moved, &scaled), (chi.norm() - 1.0).abs())
}

/// Round-trip error of `Ω → G → Ω` and whether `r(g) ∈ H`.
pub fn section_residual<S: CoherentSystem>(sys: &S, g: &S::Group) -> (f64, bool) {
    let a = sys.omega_of(g);
    let back = sys.omega_of(&sys.section(&a));
    let d = a.iter().zip(&back).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    (d, sys.in_subgroup(&remainder(sys, g)))
}

/// Quadrature on `Ω`: points with weights for the invariant measure.
pub fn omega_rule<S: CoherentSystem>(sys: &S, order: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    let d = sys.omega_dim();
    let sigma = sys.omega_scale();
    let grid = GaussianGrid::new(d, order)?;
    // ∫ F da = c σ^d π^{d/2} ∫ F(σy) e^{|y|²} dμ(y)
    let pref = sys.omega_density() * sigma.powi(d as i32) * std::f64::consts::PI.powf(d as f64 / 2.0);
    Ok(grid
        .points()
        .into_iter()
        .map(|(y, w)| {
            let r2: f64 = y.iter().map(|v| v * v).sum();
            (y.iter().map(|v| v * sigma).collect(), w * pref * r2.exp())
        })
        .collect())
}

/// `∫_Ω φ(a) w_{s(a)} da` by quadrature.
pub fn reconstruct_from<S: CoherentSystem>(
    sys: &S,
    phi: impl Fn(&[f64]) -> Complex64,
    order: usize,
) -> Result<S::Carrier> {
    let terms = omega_rule(sys, order)?
        .into_iter()
        .map(|(a, w)| (phi(&a) * w, coherent(sys, &sys.section(&a))))
        .collect();
    Ok(sys.lincomb(terms))
}

/// Reconstruction of `f` from `Ŵf` and its error `‖f - f_rec‖`.
pub fn reconstruct<S: CoherentSystem>(sys: &S, f: &S::Carrier, order: usize) -> Result<(S::Carrier, f64)> {
    let rec = reconstruct_from(sys, |a| reduced_transform(sys, f, a), order)?;
    let err = carrier_distance(sys, f, &rec);
    Ok((rec, err))
}

/// Kernel of the projection onto Ŵ-images: `[Pφ](y) = ∫ K(y, x) φ(x) dx`,
/// `K(y, x) = pair(w_{s(x)}, w_{s(y)}) = Wf₀(s(x)⁻¹ s(y))`.
pub fn repro_kernel<S: CoherentSystem>(sys: &S, y: &[f64], x: &[f64]) -> Complex64 {
    pair(sys, &coherent(sys, &sys.section(x)), &coherent(sys, &sys.section(y)))
}

/// `[Pφ](y)` by quadrature over `Ω`.
pub fn project<S: CoherentSystem>(
    sys: &S,
    phi: impl Fn(&[f64]) -> Complex64,
    y: &[f64],
    order: usize,
) -> Result<Complex64> {
    Ok(omega_rule(sys, order)?
        .into_iter()
        .map(|(x, w)| repro_kernel(sys, y, &x) * phi(&x) * w)
        .sum())
}

/// Discrete idempotence: with `M_{ik} = w_k K(x_i, x_k)` on the `Ω` nodes,
/// `max_i |(M²φ)_i - (Mφ)_i|` over nodes inside `radius`.
pub fn idempotence_residual<S: CoherentSystem>(
    sys: &S,
    phi: impl Fn(&[f64]) -> Complex64,
    order: usize,
    radius: f64,
) -> Result<f64> {
    let rule = omega_rule(sys, order)?;
    let apply = |v: &[Complex64]| -> Vec<Complex64> {
        rule.iter()
            .map(|(y, _)| rule.iter().zip(v).map(|((x, w), vx)| repro_kernel(sys, y, x) * vx * *w).sum())
            .collect()
    };
    let v: Vec<Complex64> = rule.iter().map(|(x, _)| phi(x)).collect();
    let p1 = apply(&v);
    let p2 = apply(&p1);
    Ok(rule
        .iter()
        .zip(p1.iter().zip(&p2))
        .filter(|((x, _), _)| x.iter().map(|c| c * c).sum::<f64>().sqrt() <= radius)
        .map(|(_, (a, b))| (a - b).norm())
        .fold(0.0, f64::max))
}

/// Residual of one Cauchy–Riemann–Dirac operator.
#[derive(Debug, Clone, PartialEq)]
pub struct CrResidual {
    pub operator: String,
    pub residual: f64,
}

/// Largest residual of each operator over images and sample points.
pub fn cr_dirac_check(
    ops: &[OperatorStencil],
    images: &[&dyn Fn(&[f64]) -> Multivector],
    points: &[Vec<f64>],
    h: f64,
) -> Vec<CrResidual> {
    ops.iter()
        .map(|op| {
            let residual = images
                .iter()
                .flat_map(|f| points.iter().map(move |x| finite_diff_apply(op, *f, x, h).max_abs()))
                .fold(0.0, f64::max);
            CrResidual { operator: op.name.clone(), residual }
        })
        .collect()
}
