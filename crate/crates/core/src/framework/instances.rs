//! The Heisenberg group on Gaussian packets and the components of `Gⁿ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{wtransform, CoherentSystem};
use crate::clifford::Multivector;
use crate::nilgroup::{embed, g_inv, g_mul, rho_component, GElement, VPacket};
use crate::numerics::{as_complex, OperatorStencil};
use crate::oscillator::{h_inv, h_mul, schrodinger_act, GaussPacket, GaussSum, HElement};

const SUBGROUP_TOL: f64 = 1e-12;

fn gauss_lincomb(terms: Vec<(Complex64, GaussSum)>) -> GaussSum {
    GaussSum(terms.into_iter().flat_map(|(c, f)| f.0.into_iter().map(move |p| p.scale(c))).collect())
}

/// `Hⁿ` acting on sums of Gaussian packets; `H` is the centre,
/// `Ω = ℂⁿ ≅ ℝ^{2n}` with `s(z) = (0, z)` and measure `dz/πⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSystem {
    pub n: usize,
}

impl OscillatorSystem {
    /// The Cauchy–Riemann operators `∂/∂z̄_j + z_j/2` on `Ω`, one per `j`.
    pub fn cr_stencils(&self) -> Vec<OperatorStencil> {
        (0..self.n)
            .map(|j| {
                OperatorStencil::new(format!("dbar_{}", j + 1))
                    .constant(2 * j, 1, Multivector::scalar(0, 0.5))
                    .constant(2 * j + 1, 1, Multivector::scalar(0, Complex64::new(0.0, 0.5)))
                    .varying(2 * j, 0, move |x| Multivector::scalar(0, 0.5 * Complex64::new(x[2 * j], x[2 * j + 1])))
            })
            .collect()
    }
}

impl CoherentSystem for OscillatorSystem {
    type Group = HElement;
    type Carrier = GaussSum;

    fn name(&self) -> String {
        format!("heisenberg(n={})", self.n)
    }

    fn identity(&self) -> HElement {
        HElement::identity(self.n)
    }

    fn mul(&self, g: &HElement, h: &HElement) -> HElement {
        h_mul(g, h)
    }

    fn inv(&self, g: &HElement) -> HElement {
        h_inv(g)
    }

    fn group_distance(&self, g: &HElement, h: &HElement) -> f64 {
        g.distance(h)
    }

    fn act(&self, g: &HElement, f: &GaussSum) -> GaussSum {
        GaussSum(f.0.iter().map(|p| schrodinger_act(g, p)).collect())
    }

    fn inner(&self, f: &GaussSum, g: &GaussSum) -> Complex64 {
        f.inner(g)
    }

    fn conjugates_first(&self) -> bool {
        false
    }

    fn vacuum(&self) -> GaussSum {
        GaussPacket::vacuum(self.n).into()
    }

    fn lincomb(&self, terms: Vec<(Complex64, GaussSum)>) -> GaussSum {
        gauss_lincomb(terms)
    }

    fn omega_dim(&self) -> usize {
        2 * self.n
    }

    fn section(&self, a: &[f64]) -> HElement {
        HElement::new(0.0, as_complex(a))
    }

    fn omega_of(&self, g: &HElement) -> Vec<f64> {
        g.z.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    fn in_subgroup(&self, h: &HElement) -> bool {
        h.z.iter().all(|z| z.norm() <= SUBGROUP_TOL)
    }

    fn character(&self, h: &HElement) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * h.t)
    }

    fn omega_density(&self) -> f64 {
        PI.powi(-(self.n as i32))
    }

    fn omega_scale(&self) -> f64 {
        1.0
    }
}

/// Component `j` (1-based) of `Gⁿ` acting on `span{1, e_j}`-valued
/// functions, stored as complex Gaussian sums with `i ↔ e_j`. `H` is
/// `{(t; 0; q) : q_j = 0}`, `Ω = ℝ²` with coordinates `(p, q_j)` and measure
/// `dp dq_j / π`. The inner product conjugates its first argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NilComponentSystem {
    pub n: usize,
    pub j: usize,
}

impl NilComponentSystem {
    /// Component `j` of a vector packet as a one-dimensional Gaussian sum.
    pub fn component(&self, f: &VPacket) -> GaussSum {
        GaussPacket::new(f.amp[self.j - 1], vec![f.lin[self.j - 1]]).into()
    }

    /// The Dirac operator of `Gⁿ` on flat group coordinates.
    pub fn dirac_stencil(&self) -> OperatorStencil {
        crate::nilgroup::dirac_g_stencil(self.n)
    }
}

impl CoherentSystem for NilComponentSystem {
    type Group = GElement;
    type Carrier = GaussSum;

    fn name(&self) -> String {
        format!("nilpotent(n={}, component={})", self.n, self.j)
    }

    fn identity(&self) -> GElement {
        GElement::identity(self.n)
    }

    fn mul(&self, g: &GElement, h: &GElement) -> GElement {
        g_mul(g, h)
    }

    fn inv(&self, g: &GElement) -> GElement {
        g_inv(g)
    }

    fn group_distance(&self, g: &GElement, h: &GElement) -> f64 {
        g.distance(h)
    }

    fn act(&self, g: &GElement, f: &GaussSum) -> GaussSum {
        GaussSum(
            f.0.iter()
                .map(|p| {
                    let (amp, lin) = rho_component(g, self.j - 1, p.amp, p.lin[0]);
                    GaussPacket::new(amp, vec![lin])
                })
                .collect(),
        )
    }

    fn inner(&self, f: &GaussSum, g: &GaussSum) -> Complex64 {
        g.inner(f)
    }

    fn conjugates_first(&self) -> bool {
        true
    }

    fn vacuum(&self) -> GaussSum {
        GaussPacket::vacuum(1).into()
    }

    fn lincomb(&self, terms: Vec<(Complex64, GaussSum)>) -> GaussSum {
        gauss_lincomb(terms)
    }

    fn omega_dim(&self) -> usize {
        2
    }

    fn section(&self, a: &[f64]) -> GElement {
        let mut q = vec![0.0; self.n];
        q[self.j - 1] = a[1];
        GElement::new(vec![0.0; self.n], a[0], q)
    }

    fn omega_of(&self, g: &GElement) -> Vec<f64> {
        vec![g.p, g.q[self.j - 1]]
    }

    fn in_subgroup(&self, h: &GElement) -> bool {
        h.p.abs() <= SUBGROUP_TOL && h.q[self.j - 1].abs() <= SUBGROUP_TOL
    }

    fn character(&self, h: &GElement) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * h.t[self.j - 1])
    }

    fn omega_density(&self) -> f64 {
        1.0 / PI
    }

    fn omega_scale(&self) -> f64 {
        1.0
    }
}

/// `Wf(g)` assembled from the component systems, `Σ_j W_j f_j(g)` with
/// `i ↦ e_j` in component `j`.
pub fn nil_wavelet(f: &VPacket, g: &GElement) -> Multivector {
    let n = f.dim();
    (1..=n).fold(Multivector::zero(n), |acc, j| {
        let sys = NilComponentSystem { n, j };
        &acc + &embed(n, j, wtransform(&sys, &sys.component(f), g))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::*;
    use crate::nilgroup::g_wavelet;
    use crate::numerics::DEFAULT_STEP;
    use crate::oscillator::sb_forward_packet;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oscillator_transform_is_bargmann() {
        let sys = OscillatorSystem { n: 1 };
        let f: GaussSum = GaussPacket::new(c(0.5, 0.2), vec![c(0.3, -0.4)]).into();
        let z = vec![c(0.7, -0.2)];
        let w = wtransform(&sys, &f, &HElement::new(0.0, z.clone()));
        assert!((w - sb_forward_packet(&f.0[0], &z)).norm() < 1e-14);
        let v = sys.vacuum();
        assert!((wtransform(&sys, &v, &sys.identity()) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn nil_components_reproduce_wavelet() {
        let f = VPacket::coherent(&GElement::new(vec![0.1, -0.2], 0.3, vec![0.5, -0.4]));
        let g = GElement::new(vec![0.4, 0.2], -0.3, vec![0.1, 0.6]);
        let direct = g_wavelet(&f, &g, 40).unwrap();
        assert!((&direct - &nil_wavelet(&f, &g)).max_abs() < 1e-12);
    }

    #[test]
    fn structural_identities() {
        let osc = OscillatorSystem { n: 1 };
        let f: GaussSum = GaussPacket::new(c(0.5, 0.2), vec![c(0.3, -0.4)]).into();
        let g = HElement::new(0.3, vec![c(0.2, 0.9)]);
        let gp = HElement::new(-0.1, vec![c(-0.5, 0.4)]);
        assert!(check_intertwine(&osc, &f, &g, &gp) < 1e-12);
        assert!(factorization_residual(&osc, &f, &g) < 1e-12);
        let (d, chi) = homogeneity_residual(&osc, &HElement::central(1, 0.7));
        assert!(d < 1e-14 && chi < 1e-15);

        let nil = NilComponentSystem { n: 2, j: 2 };
        let fv = nil.component(&VPacket::new(vec![c(0.3, 0.1), c(0.6, -0.2)], vec![c(0.1, 0.0), c(-0.2, 0.3)]));
        let a = GElement::new(vec![0.2, -0.4], 0.3, vec![0.7, -0.1]);
        let b = GElement::new(vec![-0.3, 0.5], -0.2, vec![0.4, 0.6]);
        assert!(check_intertwine(&nil, &fv, &a, &b) < 1e-12);
        assert!(factorization_residual(&nil, &fv, &a) < 1e-12);
        assert!(unitarity_residual(&nil, &fv, &nil.vacuum(), &a) < 1e-12);
        let h = GElement::new(vec![0.2, -0.4], 0.0, vec![0.9, 0.0]);
        let (d, _) = homogeneity_residual(&nil, &h);
        assert!(d < 1e-14);
        let (r, inside) = section_residual(&nil, &a);
        assert!(r == 0.0 && inside);
    }

    #[test]
    fn kernel_closed_form() {
        let sys = OscillatorSystem { n: 1 };
        let (w, z) = (c(0.3, -0.7), c(-0.4, 0.2));
        let k = repro_kernel(&sys, &[w.re, w.im], &[z.re, z.im]);
        let expect = (0.5 * (-z.norm_sqr() - w.norm_sqr()) + w * z.conj()).exp();
        assert!((k - expect).norm() < 1e-12, "{k} vs {expect}");
    }

    #[test]
    fn reconstruction_improves_with_order() {
        let sys = OscillatorSystem { n: 1 };
        let v = sys.vacuum();
        let errs: Vec<f64> = [10, 15, 20].iter().map(|&q| reconstruct(&sys, &v, q).unwrap().1).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        assert!(errs[2] < 1e-3, "{errs:?}");
    }

    #[test]
    fn cr_operators_kill_images() {
        let sys = OscillatorSystem { n: 1 };
        let f: GaussSum = GaussPacket::new(c(0.5, 0.2), vec![c(0.3, -0.4)]).into();
        let img = |a: &[f64]| Multivector::scalar(0, reduced_transform(&sys, &f, a));
        let one = |_: &[f64]| Multivector::scalar(0, 1.0);
        let pts = vec![vec![0.2, -0.1], vec![-0.6, 0.4]];
        let r = cr_dirac_check(&sys.cr_stencils(), &[&img], &pts, DEFAULT_STEP);
        assert!(r[0].residual < 1e-6);
        let d = OperatorStencil::new("d").constant(0, 1, Multivector::one(0));
        assert_eq!(cr_dirac_check(&[d], &[&one], &pts, DEFAULT_STEP)[0].residual, 0.0);
    }
}
