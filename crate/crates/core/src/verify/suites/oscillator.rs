use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde_json::json;

use super::{max_of, Ctx};
use crate::multi_index::factorial;
use crate::numerics::{hermite_rule, GaussianGrid};
use crate::oscillator::*;
use crate::{MultiIndex, Result};

/// Physicists' Hermite polynomial coefficients, lowest degree first.
fn hermite_poly_coeffs(m: u32) -> Vec<f64> {
    let mut c = vec![0.0; m as usize + 1];
    for k in 0..=m / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        c[(m - 2 * k) as usize] =
            sign * factorial(m) / (factorial(k) * factorial(m - 2 * k)) * 2f64.powi((m - 2 * k) as i32);
    }
    c
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

/// `φ_m` and `φ_m'` from explicit polynomial sums.
fn phi_and_derivative(m: u32, x: f64) -> (f64, f64) {
    let c = hermite_poly_coeffs(m);
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
    let norm = PI.powf(-0.25) / (2f64.powi(m as i32) * factorial(m)).sqrt();
    let g = (-0.5 * x * x).exp();
    let hm = poly_eval(&c, x);
    (norm * hm * g, norm * (poly_eval(&dc, x) - x * hm) * g)
}

fn random_packet(ctx: &mut Ctx, n: usize) -> GaussPacket {
    let amp = ctx.complex(1.0);
    let lin = ctx.cvec(n, 0.8);
    GaussPacket::new(amp, lin)
}

fn random_h(ctx: &mut Ctx, n: usize) -> HElement {
    let t = ctx.uniform(1.0);
    let z = ctx.cvec(n, 1.0);
    HElement::new(t, z)
}

fn random_coeffs(ctx: &mut Ctx, n: usize, d: usize) -> HermiteCoeffs {
    let mut f = HermiteCoeffs::zero(n);
    for m in MultiIndex::all_up_to(n, d) {
        let c = ctx.complex(1.0);
        f.add_term(m, c);
    }
    f
}

pub fn hermite(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n.min(2);
    let d = ctx.cfg.degree;
    let q = ctx.cfg.quad;

    let idx = MultiIndex::all_up_to(n, d);
    let grid = GaussianGrid::new(n, q)?.points();
    let mut vals = Vec::with_capacity(idx.len());
    for m in &idx {
        let mut row = Vec::with_capacity(grid.len());
        for (x, _) in &grid {
            row.push(hermite_eval(m, x)?);
        }
        vals.push(row);
    }
    // ∫ φ_a φ_b dx = π^{n/2} ∫ φ_a φ_b e^{|x|²} dμ
    let scale: Vec<f64> = grid
        .iter()
        .map(|(x, w)| w * PI.powf(n as f64 / 2.0) * x.iter().map(|v| v * v).sum::<f64>().exp())
        .collect();
    let mut gram: f64 = 0.0;
    for (a, ra) in vals.iter().enumerate() {
        for (b, rb) in vals.iter().enumerate() {
            let s: f64 = ra.iter().zip(rb).zip(&scale).map(|((u, v), w)| u * v * w).sum();
            gram = gram.max((s - if a == b { 1.0 } else { 0.0 }).abs());
        }
    }
    ctx.check("orthonormality", vec![("n", json!(n)), ("max_degree", json!(d)), ("order", json!(q))], gram, 1e-10);

    let terms = 29;
    let mut gen: f64 = 0.0;
    for i in 0..7 {
        for j in 0..7 {
            let (x, y) = (-1.5 + 0.5 * f64::from(i), -1.5 + 0.5 * f64::from(j));
            gen = gen.max((generating_series(&[x], &[y], terms)? - generating_kernel(&[x], &[y])).abs());
        }
    }
    ctx.check_noted(
        "generating_function",
        vec![("n", json!(1)), ("max_degree", json!(terms)), ("box", json!(1.5))],
        gen,
        1e-8,
        "closed form carries pi^(-1/4) relative to the unnormalized display",
    );

    // a± √-factors: quadrature of φ_{m±1} against (x ∓ ∂)φ_m/√2 built from explicit sums
    let rule = hermite_rule(q)?;
    let mut ladder: f64 = 0.0;
    for m in 0..d as u32 {
        let up = rule.integrate(|x| {
            let (p, dp) = phi_and_derivative(m, x);
            phi_and_derivative(m + 1, x).0 * (x * p - dp) / SQRT_2 * (x * x).exp()
        });
        ladder = ladder.max((up - f64::from(m + 1).sqrt()).abs());
        if m > 0 {
            let down = rule.integrate(|x| {
                let (p, dp) = phi_and_derivative(m, x);
                phi_and_derivative(m - 1, x).0 * (x * p + dp) / SQRT_2 * (x * x).exp()
            });
            ladder = ladder.max((down - f64::from(m).sqrt()).abs());
        }
    }
    ctx.check("ladder_sqrt_factors", vec![("max_degree", json!(d)), ("order", json!(q))], ladder, 1e-9);

    let mut comm: f64 = 0.0;
    let mut adj: f64 = 0.0;
    for j in 0..n {
        let f = random_coeffs(ctx, n, d - 1);
        let g = random_coeffs(ctx, n, d);
        let ud = ladder_apply(Ladder::Plus(j), &ladder_apply(Ladder::Minus(j), &f)?)?;
        let du = ladder_apply(Ladder::Minus(j), &ladder_apply(Ladder::Plus(j), &f)?)?;
        let mut diff = du.clone();
        for (m, c) in &ud.coeffs {
            diff.add_term(m.clone(), -c);
        }
        comm = comm.max(diff.distance(&f));
        let lhs = ladder_apply(Ladder::Plus(j), &f)?.inner(&g);
        let rhs = f.inner(&ladder_apply(Ladder::Minus(j), &g)?);
        adj = adj.max((lhs - rhs).norm());
    }
    ctx.check("ladder_commutator", vec![("n", json!(n))], comm, 1e-12);
    ctx.check("ladder_adjointness", vec![("n", json!(n))], adj, 1e-10);

    let mut weyl: f64 = 0.0;
    for _ in 0..20 {
        let f = random_packet(ctx, n);
        let c = ctx.vec(n, 1.0);
        let b = ctx.vec(n, 1.0);
        let cb: f64 = c.iter().zip(&b).map(|(u, v)| u * v).sum();
        let lhs = f.modulate(&b).shift(&c);
        let rhs = f.shift(&c).modulate(&b).scale(Complex64::from_polar(1.0, cb));
        weyl = weyl.max(lhs.param_distance(&rhs) / lhs.amp.norm().max(1.0));
    }
    ctx.check("weyl_relation", vec![("n", json!(n)), ("samples", json!(20))], weyl, 1e-12);
    Ok(())
}

pub fn bargmann(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n.min(2);
    let q = ctx.cfg.quad;
    let pairs = 100;

    let mut axioms: f64 = 0.0;
    let mut hom: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for _ in 0..pairs {
        let (a, b, c) = (random_h(ctx, n), random_h(ctx, n), random_h(ctx, n));
        axioms = axioms.max(h_mul(&h_mul(&a, &b), &c).distance(&h_mul(&a, &h_mul(&b, &c))));
        axioms = axioms.max(h_mul(&a, &h_inv(&a)).distance(&HElement::identity(n)));
        let f = random_packet(ctx, n);
        let g = random_packet(ctx, n);
        let lhs = schrodinger_act(&a, &schrodinger_act(&b, &f));
        let rhs = schrodinger_act(&h_mul(&a, &b), &f);
        hom = hom.max(lhs.param_distance(&rhs) / rhs.amp.norm().max(1.0));
        let before = f.inner(&g);
        let after = schrodinger_act(&a, &f).inner(&schrodinger_act(&a, &g));
        unit = unit.max((after - before).norm() / before.norm().max(1.0));
    }
    let p = vec![("n", json!(n)), ("pairs", json!(pairs))];
    ctx.check("group_axioms", p.clone(), axioms, 1e-14);
    ctx.check("schrodinger_homomorphism", p.clone(), hom, 1e-12);
    ctx.check("schrodinger_unitarity_closed", p, unit, 1e-10);

    let mut unit_q: f64 = 0.0;
    for _ in 0..5 {
        let g = random_h(ctx, n);
        let f = random_packet(ctx, n);
        let h = random_packet(ctx, n);
        let before = f.inner_quadrature(&h, q)?;
        let after = schrodinger_act(&g, &f).inner_quadrature(&schrodinger_act(&g, &h), q)?;
        unit_q = unit_q.max((after - before).norm() / before.norm().max(1.0));
    }
    ctx.check("schrodinger_unitarity_quadrature", vec![("n", json!(n)), ("order", json!(q))], unit_q, 1e-8);

    let mut vac: f64 = 0.0;
    let mut centre: f64 = 0.0;
    for _ in 0..10 {
        let z = ctx.cvec(n, 1.5);
        let r2: f64 = z.iter().map(Complex64::norm_sqr).sum();
        let expect = PI.powf(n as f64 / 4.0) * (-0.5 * r2).exp();
        vac = vac.max((sb_forward_packet(&GaussPacket::gauss(n), &z) - expect).norm());
        let t = ctx.uniform(2.0);
        let w = schrodinger_act(&HElement::central(n, t), &GaussPacket::gauss(n));
        centre = centre.max((w.amp - Complex64::from_polar(1.0, 2.0 * t)).norm());
    }
    ctx.check_noted("vacuum_image", vec![("n", json!(n))], vac, 1e-13,
        "pi^(n/4) exp(-|z|^2/2) for the unnormalized vacuum");
    ctx.check_noted("centre_phase", vec![("n", json!(n))], centre, 1e-14, "w_(t,0) = exp(+2it) f_0");

    let dmax = ctx.cfg.degree.min(4);
    let mut mono: f64 = 0.0;
    for k in 0..=dmax as u32 {
        let f = HermiteCoeffs::basis(MultiIndex(vec![k]));
        mono = mono.max(sb_forward_hermite(&f, q)?.distance(&BargmannElem::from_hermite(&f)));
    }
    ctx.check("hermite_to_monomials", vec![("n", json!(1)), ("max_degree", json!(dmax)), ("order", json!(q))], mono, 1e-8);

    let phi1 = HermiteCoeffs::basis(MultiIndex(vec![1]));
    let back = sb_inverse(&BargmannElem::from_hermite(&phi1), q)?;
    ctx.check("inverse_round_trip", vec![("n", json!(1)), ("order", json!(q))], back.distance(&phi1), 1e-6);
    let zero = sb_inverse(&BargmannElem::zero(1), q)?;
    ctx.check("inverse_of_zero", vec![], zero.distance(&HermiteCoeffs::zero(1)), 0.0);

    let mut inter: f64 = 0.0;
    for _ in 0..5 {
        let g = random_h(ctx, 1);
        let f = random_packet(ctx, 1);
        let u = ctx.cvec(1, 1.0);
        let pf = schrodinger_act(&g, &f);
        let renorm = |h: &GaussPacket, z: &[Complex64]| -> Result<Complex64> {
            let r2: f64 = z.iter().map(Complex64::norm_sqr).sum();
            Ok(sb_forward_fn(1, |x| h.eval(x), z, q)? * (0.5 * r2).exp())
        };
        let lhs = renorm(&pf, &u)?;
        let kg = beta_parameter(&g);
        let rhs = beta_act(&kg, |z| sb_renormalized(&f, z))(&u);
        inter = inter.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    ctx.check_noted("beta_intertwining", vec![("n", json!(1)), ("order", json!(q))], inter, 1e-8,
        "intertwines with beta at kappa(t,z) = (2t,-z)");

    let mut coh: f64 = 0.0;
    for _ in 0..5 {
        let v = ctx.cvec(n, 1.0);
        let u = ctx.cvec(n, 1.0);
        let g = HElement::new(0.0, v.clone());
        let got = beta_act(&g, |_| Complex64::new(1.0, 0.0))(&u);
        let dot: Complex64 = v.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
        let r2: f64 = v.iter().map(Complex64::norm_sqr).sum();
        coh = coh.max((got - (-dot - 0.5 * r2).exp()).norm());
    }
    ctx.check("beta_coherent_states", vec![("n", json!(n))], coh, 1e-14);

    let mut ana: f64 = 0.0;
    for _ in 0..10 {
        let f = random_packet(ctx, n);
        let z = ctx.cvec(n, 1.0);
        ana = ana.max(analyticity_residual(&f, &z, ctx.cfg.h));
    }
    ctx.check("analyticity", vec![("n", json!(n)), ("h", json!(ctx.cfg.h))], ana, 1e-6);

    let pd = 4;
    let conj_part = sb_project(1, |z| z[0].conj(), pd, 12)?;
    let kill = max_of(conj_part.coeffs.values().map(|c| c.norm()));
    ctx.check("project_kills_conjugate", vec![("max_degree", json!(pd))], kill, 1e-12);
    let mut repro: f64 = 0.0;
    for m in 0..=pd as u32 {
        let basis = BargmannElem::from_hermite(&HermiteCoeffs::basis(MultiIndex(vec![m])));
        let p = sb_project(1, |z| basis.eval(z), pd, 12)?;
        repro = repro.max(p.distance(&basis));
    }
    ctx.check("project_reproduces_monomials", vec![("max_degree", json!(pd))], repro, 1e-6);
    let mut idem: f64 = 0.0;
    let phi = |z: &[Complex64]| z[0] * z[0].conj() + z[0].powu(2) - 0.5 * z[0].conj().powu(2);
    let once = sb_project(1, phi, pd + 2, 12)?;
    let twice = sb_project(1, |z| once.eval(z), pd + 2, 12)?;
    idem = idem.max(once.distance(&twice));
    ctx.check("project_idempotent", vec![("max_degree", json!(pd + 2))], idem, 1e-6);
    let k0 = max_of((0..5).map(|_| {
        let u = ctx.cvec(n, 2.0);
        (sb_kernel(&u, &vec![Complex64::default(); n]) - 1.0).norm()
    }));
    ctx.check("kernel_at_origin", vec![("n", json!(n))], k0, 0.0);
    Ok(())
}
