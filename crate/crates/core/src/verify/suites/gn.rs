use num_complex::Complex64;
use serde_json::json;

use super::{max_of, Ctx};
use crate::clifford::{BladeIndex, Multivector};
use crate::nilgroup::*;
use crate::numerics::finite_diff_apply;
use crate::oscillator::{h_mul, HElement};
use crate::Result;

fn random_g(ctx: &mut Ctx, n: usize, r: f64) -> GElement {
    let t = ctx.vec(n, r);
    let p = ctx.uniform(r);
    let q = ctx.vec(n, r);
    GElement::new(t, p, q)
}

fn random_packet(ctx: &mut Ctx, n: usize) -> VPacket {
    let amp = ctx.cvec(n, 1.0);
    let lin = ctx.cvec(n, 0.7);
    VPacket::new(amp, lin)
}

/// `(t; p; q) ↦ (t, p - iq)` matches the `G¹` law to the Heisenberg one.
fn as_heisenberg(g: &GElement) -> HElement {
    HElement::new(g.t[0], vec![Complex64::new(g.p, -g.q[0])])
}

pub fn gn(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n;
    let q = ctx.cfg.quad;
    let h = ctx.cfg.h;
    let pairs = 100;

    let mut axioms: f64 = 0.0;
    let mut centre: f64 = 0.0;
    let mut hom: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for _ in 0..pairs {
        let (a, b, c) = (random_g(ctx, n, 1.0), random_g(ctx, n, 1.0), random_g(ctx, n, 1.0));
        axioms = axioms.max(g_mul(&g_mul(&a, &b), &c).distance(&g_mul(&a, &g_mul(&b, &c))));
        axioms = axioms.max(g_mul(&a, &g_inv(&a)).distance(&GElement::identity(n)));
        axioms = axioms.max(g_mul(&a, &GElement::identity(n)).distance(&a));
        let z = GElement::new(c.t.clone(), 0.0, vec![0.0; n]);
        centre = centre.max(g_mul(&z, &a).distance(&g_mul(&a, &z)));
        let f = random_packet(ctx, n);
        let f2 = random_packet(ctx, n);
        let lhs = rho_act(&a, &rho_act(&b, &f));
        let rhs = rho_act(&g_mul(&a, &b), &f);
        hom = hom.max(lhs.param_distance(&rhs) / rhs.amp.iter().map(|v| v.norm()).fold(1.0, f64::max));
        let before = cliff_inner(&f, &f2);
        let after = cliff_inner(&rho_act(&a, &f), &rho_act(&a, &f2));
        unit = unit.max((&after - &before).max_abs() / before.max_abs().max(1.0));
    }
    let p = vec![("n", json!(n)), ("pairs", json!(pairs))];
    ctx.check("group_axioms", p.clone(), axioms, 1e-14);
    ctx.check("centre_commutes", p.clone(), centre, 0.0);
    ctx.check("rho_homomorphism", p.clone(), hom, 1e-12);
    ctx.check("rho_unitarity_closed", p, unit, 1e-10);

    let mut heis: f64 = 0.0;
    for _ in 0..20 {
        let (a, b) = (random_g(ctx, 1, 1.0), random_g(ctx, 1, 1.0));
        let g = as_heisenberg(&g_mul(&a, &b));
        heis = heis.max(g.distance(&h_mul(&as_heisenberg(&a), &as_heisenberg(&b))));
    }
    ctx.check_noted("g1_is_heisenberg", vec![("n", json!(1))], heis, 1e-15, "(t;p;q) -> (t, p - iq)");

    let mut unit_q: f64 = 0.0;
    let mut quad_vs_closed: f64 = 0.0;
    for _ in 0..5 {
        let g = random_g(ctx, n, 1.0);
        let f = random_packet(ctx, n);
        let f2 = random_packet(ctx, n);
        let before = cliff_inner_quadrature(&f, &f2, q)?;
        let after = cliff_inner_quadrature(&rho_act(&g, &f), &rho_act(&g, &f2), q)?;
        unit_q = unit_q.max((&after - &before).max_abs() / before.max_abs().max(1.0));
        quad_vs_closed = quad_vs_closed.max((&before - &cliff_inner(&f, &f2)).max_abs());
    }
    ctx.check("rho_unitarity_quadrature", vec![("n", json!(n)), ("order", json!(q))], unit_q, 1e-8);
    ctx.check("inner_closed_vs_quadrature", vec![("n", json!(n)), ("order", json!(q))], quad_vs_closed, 1e-10);
    let vac = cliff_inner(&VPacket::vacuum(n), &VPacket::vacuum(n));
    ctx.check("vacuum_norm_is_n", vec![("n", json!(n))], (&vac - &Multivector::scalar(n, n as f64)).max_abs(), 1e-14);

    let mut character: f64 = 0.0;
    for j in 1..=n {
        let t = ctx.vec(n, 1.5);
        let v = VPacket::vacuum_component(n, j);
        let moved = rho_act(&GElement::new(t.clone(), 0.0, vec![0.0; n]), &v);
        character = character.max((moved.amp[j - 1] - vacuum_character(&t, j) * v.amp[j - 1]).norm());
    }
    ctx.check_noted("vacuum_character", vec![("n", json!(n))], character, 1e-14, "chi(t) = exp(2 e_j t_j) on component j");

    ladder_checks(ctx, n)?;
    wavelet_checks(ctx, n, q, h)?;
    field_checks(ctx, n, h)?;
    reduced_checks(ctx, n, h)
}

fn ladder_checks(ctx: &mut Ctx, n: usize) -> Result<()> {
    let mut killed: f64 = 0.0;
    for j in 1..=n {
        let v = PacketSum::from(&VPacket::vacuum_component(n, j));
        let out = a_minus(&v)?;
        killed = killed.max(out.comps.iter().map(Vec::len).sum::<usize>() as f64);
    }
    ctx.check_noted("a_minus_kills_vacuum", vec![("n", json!(n))], killed, 0.0,
        "a- = drho(P) + sum e_j drho(Q_j); residual counts surviving terms");
    // ‖a⁻f‖ = √2 |lin| ‖f‖ per component, so draw unit packets with |lin| ≥ 0.3
    let mut live: f64 = f64::INFINITY;
    for _ in 0..10 {
        let mut f = random_packet(ctx, n);
        for j in 0..n {
            let r = 0.3 + 0.2 * (ctx.uniform(1.0) + 1.0);
            f.lin[j] = Complex64::from_polar(r, ctx.uniform(std::f64::consts::PI));
        }
        let unit = PacketSum::from(&f).norm();
        live = live.min(a_minus(&PacketSum::from(&f))?.norm() / unit);
    }
    ctx.check("a_minus_on_random_packet", vec![("n", json!(n)), ("floor", json!(0.1)), ("min_lin", json!(0.3))], (0.1 - live).max(0.0), 0.0);
    let flipped = a_minus_flipped(&PacketSum::from(&VPacket::vacuum(n)))?.norm();
    ctx.diagnostic("a_minus_flipped_on_vacuum", vec![("n", json!(n))], flipped, 1e-10,
        "opposite sign on sum e_j drho(Q_j) does not annihilate the vacuum");

    let f = PacketSum::from(&random_packet(ctx, n));
    let mut skew: f64 = 0.0;
    let mut qq: f64 = 0.0;
    let mut basis = vec![LieBasis::P];
    for j in 1..=n {
        basis.push(LieBasis::T(j));
        basis.push(LieBasis::Q(j));
        for k in 1..=n {
            if k != j {
                let r = drho_apply(LieBasis::Q(j), &drho_apply(LieBasis::Q(k), &f)?)?;
                qq = qq.max(r.norm());
            }
        }
    }
    for b in basis {
        let df = drho_apply(b, &f)?;
        skew = skew.max((&df.inner(&f) + &f.inner(&df)).max_abs());
    }
    ctx.check("drho_skew_symmetric", vec![("n", json!(n))], skew, 1e-10);
    ctx.check("drho_q_products_vanish", vec![("n", json!(n))], qq, 0.0);

    let two_e_t = |j: usize, f: &PacketSum| -> Result<PacketSum> {
        Ok(drho_apply(LieBasis::T(j), f)?.left_e(j)?.scale(Complex64::new(2.0, 0.0)))
    };
    let mut pm: f64 = 0.0;
    let mut pp: f64 = 0.0;
    for j in 1..=n {
        let g = PacketSum::from(&random_packet(ctx, n));
        let lhs = a_plus(j, &a_minus(&g)?)?.sub(&a_minus(&a_plus(j, &g)?)?);
        pm = pm.max(lhs.sub(&two_e_t(j, &g)?.scale(Complex64::new(-1.0, 0.0))).norm());
        for k in 1..=n {
            let lhs = a_plus(j, &a_plus(k, &g)?)?.sub(&a_plus(k, &a_plus(j, &g)?)?);
            let rhs = if j == k { PacketSum::zero(n) } else { two_e_t(k, &g)?.sub(&two_e_t(j, &g)?) };
            pp = pp.max(lhs.sub(&rhs).norm());
        }
    }
    let p = vec![("n", json!(n))];
    ctx.check("commutator_plus_minus", p.clone(), pm, 1e-10);
    ctx.check("commutator_plus_plus", p, pp, 1e-10);
    Ok(())
}

fn wavelet_checks(ctx: &mut Ctx, n: usize, q: usize, h: f64) -> Result<()> {
    let pts = 50;
    let mut quad: f64 = 0.0;
    let mut inter: f64 = 0.0;
    let mut rho_inter: f64 = 0.0;
    for _ in 0..pts {
        let src = random_g(ctx, n, 1.0);
        let g = random_g(ctx, n, 1.0);
        let (tp, a) = (src.t.clone(), omega_project(&src));
        let closed = g_wavelet_closed(&tp, &a, &g);
        quad = quad.max((&g_wavelet(&VPacket::coherent(&src), &g, q)? - &closed).max_abs());
        let moved = g_wavelet_closed(&vec![0.0; n], &vec![0.0; n + 1], &g_mul(&g_inv(&src), &g));
        inter = inter.max((&closed - &moved).max_abs());
        let f = random_packet(ctx, n);
        let h2 = random_g(ctx, n, 1.0);
        let lhs = cliff_inner(&VPacket::coherent(&g), &rho_act(&h2, &f));
        let rhs = cliff_inner(&VPacket::coherent(&g_mul(&g_inv(&h2), &g)), &f);
        rho_inter = rho_inter.max((&lhs - &rhs).max_abs());
    }
    let p = vec![("n", json!(n)), ("points", json!(pts)), ("order", json!(q))];
    ctx.check_noted("wavelet_closed_form", p, quad, 1e-8,
        "cross term a_j conj(z_j) under first-argument conjugation");
    ctx.check("wavelet_left_translation", vec![("n", json!(n)), ("points", json!(pts))], inter, 1e-12);
    ctx.check("wavelet_intertwines_rho", vec![("n", json!(n)), ("points", json!(pts))], rho_inter, 1e-10);
    let origin = g_wavelet_closed(&vec![0.0; n], &vec![0.0; n + 1], &GElement::identity(n));
    ctx.check("wavelet_origin", vec![("n", json!(n))], (&origin - &Multivector::scalar(n, n as f64)).max_abs(), 0.0);

    let mut dirac: f64 = 0.0;
    let mut shifted: f64 = 0.0;
    for _ in 0..10 {
        let src = random_g(ctx, n, 1.0);
        let (tp, a) = (src.t.clone(), omega_project(&src));
        let w = |g: &GElement| g_wavelet_closed(&tp, &a, g);
        let shift = random_g(ctx, n, 1.0);
        let inv = g_inv(&shift);
        let lw = |g: &GElement| g_wavelet_closed(&vec![0.0; n], &vec![0.0; n + 1], &g_mul(&inv, g));
        for _ in 0..20 {
            let pt = random_g(ctx, n, 1.0);
            dirac = dirac.max(dirac_g_residual(&w, &pt, h).max_abs());
        }
        let pt = random_g(ctx, n, 1.0);
        shifted = shifted.max(dirac_g_residual(&lw, &pt, h).max_abs());
    }
    ctx.check("wavelet_monogenic", vec![("n", json!(n)), ("points", json!(20)), ("sources", json!(10)), ("h", json!(h))], dirac, 1e-6);
    ctx.check("left_shift_monogenic", vec![("n", json!(n)), ("shifts", json!(10)), ("h", json!(h))], shifted, 1e-6);
    let control = |g: &GElement| Multivector::scalar(n, g.p);
    let pt = random_g(ctx, n, 1.0);
    let r = dirac_g_residual(&control, &pt, h).max_abs();
    ctx.check_noted("dirac_control_p", vec![("n", json!(n))], (r - 1.0).abs(), 1e-8, "F = p must give residual 1");
    Ok(())
}

fn field_checks(ctx: &mut Ctx, n: usize, h: f64) -> Result<()> {
    let coef = ctx.vec(3 * n + 2, 1.0);
    let f = move |g: &GElement| {
        let x = g.coords();
        let s: f64 = x.iter().zip(&coef).map(|(a, b)| a * b).sum();
        let mut m = Multivector::scalar(n, (s * 0.7).sin() + x[0] * x[n] * x[n + 1]);
        m.add_term(BladeIndex::generator(1), Complex64::new((x[n] * coef[2 * n + 1]).cos() * x[n + 1] * x[0], 0.0));
        m
    };
    let pt = random_g(ctx, n, 1.0);
    let mut pq: f64 = 0.0;
    let mut mixed: f64 = 0.0;
    let mut left = vec![VectorField::P];
    let mut right = vec![VectorField::PStar];
    for j in 1..=n {
        let c = commutator_apply(VectorField::P, VectorField::Q(j), &f, &pt, h);
        pq = pq.max((&c - &vector_field_apply(VectorField::T(j), &f, &pt, h)).max_abs());
        left.extend([VectorField::T(j), VectorField::Q(j)]);
        right.extend([VectorField::TStar(j), VectorField::QStar(j)]);
    }
    for a in &left {
        for b in &right {
            mixed = mixed.max(commutator_apply(*a, *b, &f, &pt, h).max_abs());
        }
    }
    let p = vec![("n", json!(n)), ("h", json!(h))];
    ctx.check("field_commutator_pq", p.clone(), pq, 1e-6);
    ctx.check("left_right_fields_commute", p, mixed, 1e-6);
    Ok(())
}

fn reduced_checks(ctx: &mut Ctx, n: usize, h: f64) -> Result<()> {
    let mut renorm: f64 = 0.0;
    let mut dirac: f64 = 0.0;
    let mut addition: f64 = 0.0;
    for _ in 0..20 {
        let a = ctx.vec(n + 1, 1.0);
        let z = ctx.vec(n + 1, 1.0);
        let comps = g_wavelet_closed_components(&vec![0.0; n], &a, &omega_section(&z));
        let mut r = Multivector::zero(n);
        for (j, cj) in comps.into_iter().enumerate() {
            let zj = Complex64::new(z[0], z[j + 1]);
            let aj = Complex64::new(a[0], a[j + 1]);
            r = &r + &embed(n, j + 1, cj * (0.5 * (zj.norm_sqr() + aj.norm_sqr())).exp());
        }
        renorm = renorm.max((&r - &reduced_wavelet(&a, &z)).max_abs());
        let w = |x: &[f64]| reduced_wavelet(&a, x);
        dirac = dirac.max(finite_diff_apply(&reduced_dirac_stencil(n), &w, &z, h).max_abs());
        let sum = omega_project(&g_mul(&omega_section(&a), &omega_section(&z)));
        addition = addition.max(max_of(sum.iter().zip(a.iter().zip(&z)).map(|(s, (x, y))| (s - (x + y)).abs())));
    }
    let p = vec![("n", json!(n)), ("points", json!(20))];
    ctx.check("reduced_is_renormalized_restriction", p.clone(), renorm, 1e-12);
    ctx.check_noted("reduced_dirac", p.clone(), dirac, 1e-6, "D = d/dp - sum e_j d/dq_j");
    ctx.check("omega_addition", p, addition, 0.0);
    let zero = reduced_wavelet(&vec![0.0; n + 1], &ctx.vec(n + 1, 1.0));
    ctx.check("reduced_at_zero", vec![("n", json!(n))], (&zero - &Multivector::scalar(n, n as f64)).max_abs(), 0.0);
    Ok(())
}
