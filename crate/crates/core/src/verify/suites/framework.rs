use num_complex::Complex64;
use serde_json::json;

use super::Ctx;
use crate::clifford::Multivector;
use crate::framework::*;
use crate::nilgroup::{g_wavelet, GElement, VPacket};
use crate::numerics::finite_diff_apply;
use crate::oscillator::{GaussPacket, GaussSum, HElement};
use crate::Result;

const RECON_ORDERS: [usize; 3] = [10, 15, 20];

fn random_h(ctx: &mut Ctx, n: usize) -> HElement {
    let t = ctx.uniform(1.0);
    let z = ctx.cvec(n, 1.0);
    HElement::new(t, z)
}

fn random_g(ctx: &mut Ctx, n: usize) -> GElement {
    let t = ctx.vec(n, 1.0);
    let p = ctx.uniform(1.0);
    let q = ctx.vec(n, 1.0);
    GElement::new(t, p, q)
}

fn random_sum(ctx: &mut Ctx, n: usize) -> GaussSum {
    let a = GaussPacket::new(ctx.complex(1.0), ctx.cvec(n, 0.6));
    let b = GaussPacket::new(ctx.complex(1.0), ctx.cvec(n, 0.6));
    GaussSum(vec![a, b])
}

/// Residuals shared by every instance: intertwining, unitarity,
/// factorization through `Ω`, homogeneity of the vacuum and the section.
fn structure<S: CoherentSystem>(
    ctx: &mut Ctx,
    sys: &S,
    label: &'static str,
    samples: Vec<(S::Carrier, S::Carrier, S::Group, S::Group, S::Group)>,
) {
    let mut inter: f64 = 0.0;
    let mut unit: f64 = 0.0;
    let mut fact: f64 = 0.0;
    let mut homog: f64 = 0.0;
    let mut section: f64 = 0.0;
    let mut outside = 0usize;
    for (f, h, g, gp, sub) in &samples {
        inter = inter.max(check_intertwine(sys, f, g, gp));
        unit = unit.max(unitarity_residual(sys, f, h, g));
        fact = fact.max(factorization_residual(sys, f, g));
        let (d, chi) = homogeneity_residual(sys, sub);
        homog = homog.max(d).max(chi);
        let (r, inside) = section_residual(sys, g);
        section = section.max(r);
        outside += usize::from(!inside);
    }
    let p = vec![("system", json!(sys.name())), ("samples", json!(samples.len()))];
    ctx.check(&format!("{label}.intertwining"), p.clone(), inter, 1e-10);
    ctx.check(&format!("{label}.unitarity"), p.clone(), unit, 1e-10);
    ctx.check(&format!("{label}.factorization"), p.clone(), fact, 1e-10);
    ctx.check(&format!("{label}.homogeneity"), p.clone(), homog, 1e-12);
    ctx.check(&format!("{label}.section"), p.clone(), section, 0.0);
    ctx.check(&format!("{label}.remainder_in_subgroup"), p, outside as f64, 0.0);
}

pub fn framework(ctx: &mut Ctx) -> Result<()> {
    oscillator(ctx)?;
    nilpotent(ctx)
}

fn oscillator(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n.min(2);
    let sys = OscillatorSystem { n };
    let samples = (0..20)
        .map(|_| {
            let (f, h) = (random_sum(ctx, n), random_sum(ctx, n));
            let (g, gp) = (random_h(ctx, n), random_h(ctx, n));
            let t = ctx.uniform(2.0);
            (f, h, g, gp, HElement::central(n, t))
        })
        .collect();
    structure(ctx, &sys, "oscillator", samples);

    let one = OscillatorSystem { n: 1 };
    let v = one.vacuum();
    let mut errs = Vec::with_capacity(RECON_ORDERS.len());
    for order in RECON_ORDERS {
        errs.push(reconstruct(&one, &v, order)?.1);
    }
    let monotone = errs.windows(2).filter(|w| w[1] >= w[0]).count();
    ctx.check("oscillator.reconstruction", vec![("n", json!(1)), ("order", json!(20)), ("errors", json!(errs))],
        errs[2], 1e-3);
    ctx.check("oscillator.reconstruction_monotone", vec![("orders", json!(RECON_ORDERS))], monotone as f64, 0.0);

    let mut kernel: f64 = 0.0;
    for _ in 0..20 {
        let (w, z) = (ctx.complex(1.5), ctx.complex(1.5));
        let k = repro_kernel(&one, &[w.re, w.im], &[z.re, z.im]);
        kernel = kernel.max((k - (0.5 * (-z.norm_sqr() - w.norm_sqr()) + w * z.conj()).exp()).norm());
    }
    ctx.check("oscillator.projection_kernel", vec![("n", json!(1)), ("points", json!(20))], kernel, 1e-8);

    let phi = |a: &[f64]| Complex64::new(a[0], -0.5 * a[1]) * (-0.25 * (a[0] * a[0] + a[1] * a[1])).exp();
    let idem = idempotence_residual(&one, phi, 20, 3.0)?;
    ctx.check("oscillator.projection_idempotent", vec![("n", json!(1)), ("order", json!(20)), ("radius", json!(3.0))],
        idem, 1e-6);

    let f = random_sum(ctx, n);
    let img = |a: &[f64]| Multivector::scalar(0, reduced_transform(&sys, &f, a));
    let points: Vec<Vec<f64>> = (0..10).map(|_| ctx.vec(2 * n, 1.0)).collect();
    let worst = cr_dirac_check(&sys.cr_stencils(), &[&img], &points, ctx.cfg.h)
        .into_iter()
        .map(|r| r.residual)
        .fold(0.0, f64::max);
    ctx.check("oscillator.cauchy_riemann", vec![("n", json!(n)), ("points", json!(10)), ("h", json!(ctx.cfg.h))],
        worst, 1e-6);
    Ok(())
}

fn nilpotent(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n;
    for j in 1..=n {
        let sys = NilComponentSystem { n, j };
        let samples = (0..10)
            .map(|_| {
                let (f, h) = (random_sum(ctx, 1), random_sum(ctx, 1));
                let (g, gp) = (random_g(ctx, n), random_g(ctx, n));
                let mut sub = random_g(ctx, n);
                sub.p = 0.0;
                sub.q[j - 1] = 0.0;
                (f, h, g, gp, sub)
            })
            .collect();
        structure(ctx, &sys, "nilpotent", samples);
    }

    let sys = NilComponentSystem { n, j: 1 };
    let err = reconstruct(&sys, &sys.vacuum(), 20)?.1;
    ctx.check("nilpotent.reconstruction", vec![("n", json!(n)), ("component", json!(1)), ("order", json!(20))], err, 1e-3);

    let mut assembled: f64 = 0.0;
    let mut dirac: f64 = 0.0;
    for _ in 0..5 {
        let f = VPacket::new(ctx.cvec(n, 1.0), ctx.cvec(n, 0.6));
        let g = random_g(ctx, n);
        assembled = assembled.max((&nil_wavelet(&f, &g) - &g_wavelet(&f, &g, ctx.cfg.quad)?).max_abs());
        let img = |x: &[f64]| nil_wavelet(&f, &GElement::from_coords(x));
        for _ in 0..4 {
            let pt = random_g(ctx, n).coords();
            dirac = dirac.max(finite_diff_apply(&sys.dirac_stencil(), &img, &pt, ctx.cfg.h).max_abs());
        }
    }
    ctx.check("nilpotent.assembled_wavelet", vec![("n", json!(n)), ("order", json!(ctx.cfg.quad))], assembled, 1e-10);
    ctx.check("nilpotent.images_monogenic", vec![("n", json!(n)), ("points", json!(20)), ("h", json!(ctx.cfg.h))], dirac, 1e-6);
    Ok(())
}
