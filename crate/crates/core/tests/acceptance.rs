//! Acceptance criteria 1-16, one PASS/FAIL line each. Tolerances are pinned
//! here and never read from configuration.

use std::f64::consts::{PI, SQRT_2};

use monogenic::clifford::{BladeIndex, Multivector};
use monogenic::cpoly::{dirac_residual, v_monomial, CliffPoly};
use monogenic::framework::{idempotence_residual, reconstruct, repro_kernel, CoherentSystem, OscillatorSystem};
use monogenic::monomodel::*;
use monogenic::nilgroup::*;
use monogenic::numerics::{finite_diff_apply, hermite_rule, GaussianGrid, OperatorStencil};
use monogenic::oscillator::*;
use monogenic::verify::{emit_report, errata_table, run_suite, Format, Report, Suite, SuiteConfig};
use monogenic::{Complex64, MultiIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: f64 = 1e-4;
const QUAD: usize = 40;

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

/// `(measured, tolerance)` pairs, each labelled; passes when all hold.
fn judge(id: u32, title: &'static str, parts: &[(&str, f64, f64)]) -> Outcome {
    let pass = parts.iter().all(|(_, r, t)| r <= t);
    let detail = parts
        .iter()
        .map(|(l, r, t)| format!("{l}={r:.3e} (tol {t:.0e})"))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome { id, title, pass, detail }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xACCE_0000 + salt)
}

fn uni(r: &mut ChaCha8Rng, s: f64) -> f64 {
    r.gen_range(-s..=s)
}

fn cx(r: &mut ChaCha8Rng, s: f64) -> Complex64 {
    c(uni(r, s), uni(r, s))
}

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

fn dirac_stencil(n: usize) -> OperatorStencil {
    (0..=n).fold(OperatorStencil::new("D"), |op, i| op.constant(i, 1, Multivector::basis(n, i)))
}

fn criterion_1() -> Outcome {
    let n = 6;
    let mut anti: f64 = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            let (a, b) = (Multivector::basis(n, i), Multivector::basis(n, j));
            let s = &(&a * &b) + &(&b * &a);
            anti = anti.max((&s - &Multivector::scalar(n, if i == j { -2.0 } else { 0.0 })).max_abs());
        }
    }
    let mut r = rng(1);
    let rand_mv = |r: &mut ChaCha8Rng| {
        let mut m = Multivector::zero(n);
        for mask in 0..(1u16 << n) {
            m.add_term(BladeIndex::from_mask(mask), cx(r, 1.0));
        }
        m
    };
    let mut assoc: f64 = 0.0;
    for _ in 0..100 {
        let (a, b, d) = (rand_mv(&mut r), rand_mv(&mut r), rand_mv(&mut r));
        let (l, rr) = (&(&a * &b) * &d, &a * &(&b * &d));
        assoc = assoc.max((&l - &rr).max_abs() / l.max_abs().max(1.0));
    }
    judge(1, "Clifford identities (n = 6)", &[("anticommutation", anti, 1e-13), ("associativity_rel", assoc, 1e-13)])
}

fn criterion_2() -> Outcome {
    let rule = hermite_rule(QUAD).unwrap();
    let mut worst: f64 = 0.0;
    for n in 1..=2usize {
        let idx = MultiIndex::all_up_to(n, 8);
        let nodes: Vec<Vec<f64>> = if n == 1 {
            rule.nodes().iter().map(|&x| vec![x]).collect()
        } else {
            rule.nodes().iter().flat_map(|&x| rule.nodes().iter().map(move |&y| vec![x, y])).collect()
        };
        let weights: Vec<f64> = if n == 1 {
            rule.weights().to_vec()
        } else {
            rule.weights().iter().flat_map(|&a| rule.weights().iter().map(move |&b| a * b)).collect()
        };
        let vals: Vec<Vec<f64>> =
            idx.iter().map(|m| nodes.iter().map(|x| hermite_eval(m, x).unwrap()).collect()).collect();
        let back: Vec<f64> = nodes.iter().zip(&weights).map(|(x, w)| w * x.iter().map(|v| v * v).sum::<f64>().exp()).collect();
        for (a, va) in vals.iter().enumerate() {
            for (b, vb) in vals.iter().enumerate() {
                let s: f64 = va.iter().zip(vb).zip(&back).map(|((u, v), w)| u * v * w).sum();
                worst = worst.max((s - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
    }
    judge(2, "Hermite orthonormality (|m| <= 8, n <= 2)", &[("max_gram_dev", worst, 1e-10)])
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ratio = 0.0;
    for i in 0..=12 {
        for j in 0..=12 {
            let (x, y) = (-1.5 + 0.25 * f64::from(i), -1.5 + 0.25 * f64::from(j));
            let unnormalized = (-(x * x + y * y) / 2.0 + SQRT_2 * x * y).exp();
            let closed = PI.powf(-0.25) * unnormalized;
            let series = generating_series(&[x], &[y], 29).unwrap();
            worst = worst.max((series - closed).abs());
            ratio = series / unnormalized;
        }
    }
    let mut o = judge(3, "Generating function (30 terms, |x|,|y| <= 1.5)", &[("max_abs", worst, 1e-8)]);
    o.detail += &format!("; series/unnormalized display = {ratio:.12} = pi^(-1/4)");
    o
}

/// Physicists' Hermite coefficients, lowest degree first.
fn h_poly(m: u32) -> Vec<f64> {
    let mut out = vec![0.0; m as usize + 1];
    for k in 0..=m / 2 {
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        out[(m - 2 * k) as usize] = s * factorial(m) / (factorial(k) * factorial(m - 2 * k)) * 2f64.powi((m - 2 * k) as i32);
    }
    out
}

fn horner(cf: &[f64], x: f64) -> f64 {
    cf.iter().rev().fold(0.0, |a, v| a * x + v)
}

fn criterion_4() -> Outcome {
    let rule = hermite_rule(QUAD).unwrap();
    let mut ladder: f64 = 0.0;
    for m in 0..8u32 {
        let cf = h_poly(m);
        let dcf: Vec<f64> = cf.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
        let nm = PI.powf(-0.25) / (2f64.powi(m as i32) * factorial(m)).sqrt();
        // φ_m = nm H_m e^{-x²/2}, φ_m' = nm (H_m' - x H_m) e^{-x²/2}
        let phi = |x: f64| nm * horner(&cf, x) * (-x * x / 2.0).exp();
        let dphi = |x: f64| nm * (horner(&dcf, x) - x * horner(&cf, x)) * (-x * x / 2.0).exp();
        let f = HermiteCoeffs::basis(MultiIndex(vec![m]));
        for (op, target, sign) in [(Ladder::Plus(0), m + 1, -1.0), (Ladder::Minus(0), m.wrapping_sub(1), 1.0)] {
            if target == u32::MAX {
                continue;
            }
            let coeffs = ladder_apply(op, &f).unwrap();
            let want = coeffs.coeffs.get(&MultiIndex(vec![target])).copied().unwrap_or_default();
            let tm = MultiIndex(vec![target]);
            let quad = rule.integrate(|x| {
                hermite_eval(&tm, &[x]).unwrap() * (x * phi(x) + sign * dphi(x)) / SQRT_2 * (x * x).exp()
            });
            let sqrt_factor = f64::from(if sign < 0.0 { m + 1 } else { m }).sqrt();
            ladder = ladder.max((quad - sqrt_factor).abs()).max((want.re - sqrt_factor).abs());
        }
    }
    let mut r = rng(4);
    let mut weyl: f64 = 0.0;
    for _ in 0..50 {
        let f = GaussPacket::new(cx(&mut r, 1.0), vec![cx(&mut r, 0.8), cx(&mut r, 0.8)]);
        let (sh, b) = ([uni(&mut r, 1.0), uni(&mut r, 1.0)], [uni(&mut r, 1.0), uni(&mut r, 1.0)]);
        let cb = sh[0] * b[0] + sh[1] * b[1];
        let lhs = f.modulate(&b).shift(&sh);
        let rhs = f.shift(&sh).modulate(&b).scale(Complex64::from_polar(1.0, cb));
        weyl = weyl.max(lhs.param_distance(&rhs) / lhs.amp.norm().max(1.0));
        // the parameter identity is the pointwise one
        let x = [uni(&mut r, 1.0), uni(&mut r, 1.0)];
        weyl = weyl.max((lhs.eval(&x) - rhs.eval(&x)).norm() / lhs.eval(&x).norm().max(1.0));
    }
    judge(4, "Ladder sqrt factors and Weyl relation", &[("ladder", ladder, 1e-9), ("weyl", weyl, 1e-12)])
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for k in MultiIndex::all_up_to(n, 5) {
            worst = worst.max(dirac_residual(&v_monomial(&k, 5).unwrap()));
        }
    }
    judge(5, "V_k monogenic (|k| <= 5, n <= 3, symbolic)", &[("max_coeff", worst, 1e-12)])
}

fn gram_deviation(n: usize) -> f64 {
    let idx = MultiIndex::all_up_to(n, 5);
    let polys: Vec<CliffPoly> = idx.iter().map(|k| v_monomial(k, 5).unwrap()).collect();
    // degree-10 integrands: 6 nodes per axis are exact, 8 leave margin
    let grid = GaussianGrid::new(n + 1, 8).unwrap().points();
    let vals: Vec<Vec<Multivector>> = polys.iter().map(|p| grid.iter().map(|(x, _)| p.eval(x)).collect()).collect();
    let mut worst: f64 = 0.0;
    for (a, va) in vals.iter().enumerate() {
        for (b, vb) in vals.iter().enumerate() {
            let s: Complex64 = va.iter().zip(vb).zip(&grid).map(|((u, v), (_, w))| (&u.conj() * v).scalar_part() * w).sum();
            worst = worst.max((s - if a == b { 1.0 } else { 0.0 }).norm());
        }
    }
    worst
}

fn criterion_6() -> Outcome {
    let devs: Vec<f64> = (1..=3).map(gram_deviation).collect();
    judge(6, "V_k orthonormality under the normalized Gaussian (|k| <= 5)", &[
        ("n=1", devs[0], 1e-8),
        ("n=2", devs[1], 1e-8),
        ("n=3", devs[2], 1e-8),
    ])
}

fn random_m2(r: &mut ChaCha8Rng, n: usize, d: usize) -> M2Element {
    let mut f = M2Element::zero(n);
    for k in MultiIndex::all_up_to(n, d) {
        f.add_term(k, cx(r, 1.0));
    }
    f
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let cap = 8;
    let mut shifts: f64 = 0.0;
    let mut adj: f64 = 0.0;
    let mut comm: f64 = 0.0;
    for n in 1..=3 {
        for k in MultiIndex::all_up_to(n, cap - 1) {
            for j in 1..=n {
                let up = create_apply(j, &M2Element::basis(k.clone()), cap).unwrap();
                let want = f64::from(k.0[j - 1] + 1).sqrt();
                let mut target = k.clone();
                target.0[j - 1] += 1;
                shifts = shifts.max((up.coeffs[&target] - want).norm()).max((up.coeffs.len() as f64 - 1.0).abs());
                let down = annihilate_apply(j, &M2Element::basis(k.clone())).unwrap();
                if k.0[j - 1] == 0 {
                    shifts = shifts.max(down.coeffs.values().map(|v| v.norm()).fold(0.0, f64::max));
                } else {
                    let mut t = k.clone();
                    t.0[j - 1] -= 1;
                    shifts = shifts.max((down.coeffs[&t] - f64::from(k.0[j - 1]).sqrt()).norm());
                }
            }
        }
        for j in 1..=n {
            let f = random_m2(&mut r, n, cap - 1);
            let g = random_m2(&mut r, n, cap);
            let lhs = m2_inner_exact(&create_apply(j, &f, cap).unwrap(), &g);
            let rhs = m2_inner_exact(&f, &annihilate_apply(j, &g).unwrap());
            adj = adj.max((lhs - rhs).norm());
            let du = annihilate_apply(j, &create_apply(j, &f, cap).unwrap()).unwrap();
            let ud = create_apply(j, &annihilate_apply(j, &f).unwrap(), cap).unwrap();
            comm = comm.max(du.add(&ud.scale(c(-1.0, 0.0))).distance(&f));
        }
    }
    judge(7, "M2 ladder shifts, adjointness, [a-, a+] = 1", &[("shifts", shifts, 0.0), ("adjoint", adj, 1e-10), ("commutator", comm, 1e-12)])
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let big_n = 8;
    let mut repro = [0.0f64; 3];
    let mut mono: f64 = 0.0;
    for n in 1..=3usize {
        let basis: Vec<CliffPoly> = MultiIndex::all_up_to(n, big_n).iter().map(|k| v_monomial(k, big_n).unwrap()).collect();
        let f = random_m2(&mut r, n, 4).realize().unwrap();
        let grid = GaussianGrid::new(n + 1, 8).unwrap().points();
        let fx: Vec<Multivector> = grid.iter().map(|(x, _)| f.eval(x)).collect();
        let vx: Vec<Vec<Multivector>> = basis.iter().map(|p| grid.iter().map(|(x, _)| p.eval(x)).collect()).collect();
        for _ in 0..3 {
            let y: Vec<f64> = (0..=n).map(|_| uni(&mut r, 0.6)).collect();
            // f(y) = ∫ conj(K(x, y)) f(x) dμ(x), K(x, y) = Σ V_k(x) conj(V_k(y))
            let mut acc = Multivector::zero(n);
            for (p, vals) in basis.iter().zip(&vx) {
                let vy = p.eval(&y);
                for ((vxi, fxi), (_, w)) in vals.iter().zip(&fx).zip(&grid) {
                    let k = &(vxi * &vy.conj()).conj() * fxi;
                    acc.add_scaled(&k, c(*w, 0.0));
                }
            }
            repro[n - 1] = repro[n - 1].max((&acc - &f.eval(&y)).max_abs());
        }
        if n <= 2 {
            let x: Vec<f64> = (0..=n).map(|_| uni(&mut r, 0.5)).collect();
            let y: Vec<f64> = (0..=n).map(|_| uni(&mut r, 0.5)).collect();
            let kc = |yy: &[f64]| m2_repro_kernel(&x, yy, 6).unwrap().conj();
            mono = mono.max(finite_diff_apply(&dirac_stencil(n), &kc, &y, H).max_abs());
        }
    }
    judge(8, "M2 reproducing kernel (degree <= 4, N = 8)", &[
        ("reproduce_n1", repro[0], 1e-6),
        ("reproduce_n2", repro[1], 1e-6),
        ("reproduce_n3", repro[2], 1e-6),
        ("conj_K_monogenic", mono, 1e-6),
    ])
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let big_n = 8;
    let q = 14;
    let fock = GaussianGrid::new(2, q).unwrap().points();
    let fock_ip = |a: &dyn Fn(Complex64) -> Complex64, b: &dyn Fn(Complex64) -> Complex64| -> Complex64 {
        fock.iter().map(|(x, w)| a(c(x[0], x[1])).conj() * b(c(x[0], x[1])) * w).sum()
    };
    let mut iso: f64 = 0.0;
    for _ in 0..5 {
        let mut f = BargmannElem::zero(1);
        for m in 0..=big_n as u32 {
            f.coeffs.insert(MultiIndex(vec![m]), cx(&mut r, 1.0));
        }
        let bf = b_transform(&f);
        let fock_norm = fock_ip(&|z| f.eval(&[z]), &|z| f.eval(&[z])).re.sqrt();
        let m2_norm = m2_inner_quadrature(&bf, &bf, q).unwrap().re.sqrt();
        iso = iso.max((fock_norm - m2_norm).abs());
    }
    let e = |m: u32| move |z: Complex64| z.powu(m) / factorial(m).sqrt();
    let mut ladder: f64 = 0.0;
    for a in 0..=big_n as u32 {
        for b in 0..big_n as u32 {
            let va = M2Element::basis(MultiIndex(vec![a]));
            let z_times = fock_ip(&e(a), &move |z| z * e(b)(z));
            let up = m2_inner_exact(&va, &create_apply(1, &M2Element::basis(MultiIndex(vec![b])), big_n).unwrap());
            let deriv = fock_ip(&e(a), &move |z| z.powu(b) * f64::from(b + 1) / factorial(b + 1).sqrt());
            let down = m2_inner_exact(&va, &annihilate_apply(1, &M2Element::basis(MultiIndex(vec![b + 1]))).unwrap());
            ladder = ladder.max((z_times - up).norm()).max((deriv - down).norm());
        }
    }
    let mut restr: f64 = 0.0;
    for _ in 0..20 {
        let z = Complex64::from_polar(r.gen_range(0.0..1.0), uni(&mut r, PI));
        let x1 = uni(&mut r, 1.0);
        let b = b_kernel(&[z], &[0.0, x1], 20, BConvention::Conjugate).unwrap();
        restr = restr.max((&b - &Multivector::scalar(1, (x1 * z.conj()).exp())).max_abs());
    }
    judge(9, "Intertwining B at n = 1, N = 8", &[("isometry", iso, 1e-8), ("ladder_matrices", ladder, 1e-10), ("restriction", restr, 1e-8)])
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let (mut hom_h, mut uni_h, mut hom_g, mut uni_g): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let (mut quad_h, mut quad_g): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let rh = |r: &mut ChaCha8Rng| HElement::new(uni(r, 1.0), vec![cx(r, 1.0), cx(r, 1.0)]);
        let (g, h) = (rh(&mut r), rh(&mut r));
        let pk = |r: &mut ChaCha8Rng| GaussPacket::new(cx(r, 1.0), vec![cx(r, 0.7), cx(r, 0.7)]);
        let (f, f2) = (pk(&mut r), pk(&mut r));
        let l = schrodinger_act(&g, &schrodinger_act(&h, &f));
        let rr = schrodinger_act(&h_mul(&g, &h), &f);
        hom_h = hom_h.max(l.param_distance(&rr) / rr.amp.norm().max(1.0));
        let before = f.inner(&f2);
        uni_h = uni_h.max((schrodinger_act(&g, &f).inner(&schrodinger_act(&g, &f2)) - before).norm() / before.norm().max(1.0));

        let rg = |r: &mut ChaCha8Rng| GElement::new(vec![uni(r, 1.0), uni(r, 1.0)], uni(r, 1.0), vec![uni(r, 1.0), uni(r, 1.0)]);
        let (a, b) = (rg(&mut r), rg(&mut r));
        let vp = |r: &mut ChaCha8Rng| VPacket::new(vec![cx(r, 1.0), cx(r, 1.0)], vec![cx(r, 0.7), cx(r, 0.7)]);
        let (v, v2) = (vp(&mut r), vp(&mut r));
        let l = rho_act(&a, &rho_act(&b, &v));
        let rr = rho_act(&g_mul(&a, &b), &v);
        hom_g = hom_g.max(l.param_distance(&rr) / rr.amp.iter().map(|x| x.norm()).fold(1.0, f64::max));
        let before = cliff_inner(&v, &v2);
        let after = cliff_inner(&rho_act(&a, &v), &rho_act(&a, &v2));
        uni_g = uni_g.max((&after - &before).max_abs() / before.max_abs().max(1.0));
        if i < 10 {
            let b0 = f.inner_quadrature(&f2, QUAD).unwrap();
            let b1 = schrodinger_act(&g, &f).inner_quadrature(&schrodinger_act(&g, &f2), QUAD).unwrap();
            quad_h = quad_h.max((b1 - b0).norm() / b0.norm().max(1.0));
            let c0 = cliff_inner_quadrature(&v, &v2, QUAD).unwrap();
            let c1 = cliff_inner_quadrature(&rho_act(&a, &v), &rho_act(&a, &v2), QUAD).unwrap();
            quad_g = quad_g.max((&c1 - &c0).max_abs() / c0.max_abs().max(1.0));
        }
    }
    judge(10, "Schrodinger and rho homomorphisms, unitarity", &[
        ("schrodinger_hom", hom_h, 1e-12),
        ("rho_hom", hom_g, 1e-12),
        ("schrodinger_unitary", uni_h, 1e-10),
        ("rho_unitary", uni_g, 1e-10),
        ("schrodinger_unitary_quad", quad_h, 1e-8),
        ("rho_unitary_quad", quad_g, 1e-8),
    ])
}

fn criterion_11() -> Outcome {
    let n = 3;
    let mut r = rng(11);
    let vac = PacketSum::from(&VPacket::vacuum(n));
    let killed = a_minus(&vac).unwrap().comps.iter().map(Vec::len).sum::<usize>() as f64;
    let f = PacketSum::from(&VPacket::new((0..n).map(|_| cx(&mut r, 1.0)).collect(), (0..n).map(|_| cx(&mut r, 0.7)).collect()));
    let two_e_t = |j: usize| drho_apply(LieBasis::T(j), &f).unwrap().left_e(j).unwrap().scale(c(2.0, 0.0));
    let mut pm: f64 = 0.0;
    let mut pp: f64 = 0.0;
    for j in 1..=n {
        let lhs = a_plus(j, &a_minus(&f).unwrap()).unwrap().sub(&a_minus(&a_plus(j, &f).unwrap()).unwrap());
        pm = pm.max(lhs.add(&two_e_t(j)).norm());
        for k in 1..=n {
            let lhs = a_plus(j, &a_plus(k, &f).unwrap()).unwrap().sub(&a_plus(k, &a_plus(j, &f).unwrap()).unwrap());
            pp = pp.max(lhs.sub(&two_e_t(k).sub(&two_e_t(j))).norm());
        }
    }
    let test_fn = |g: &GElement| {
        let x = g.coords();
        let mut m = Multivector::scalar(n, (0.3 * x[0] + 0.7 * x[3] - 0.2 * x[5]).sin() + x[1] * x[3] * x[4]);
        m.add_term(BladeIndex::generator(2), c((x[3] * x[6]).cos() * x[2], 0.0));
        m
    };
    let pt = GElement::new(vec![0.3, -0.2, 0.5], 0.4, vec![-0.6, 0.1, 0.7]);
    let mut pq: f64 = 0.0;
    let mut lr: f64 = 0.0;
    let mut left = vec![VectorField::P];
    let mut right = vec![VectorField::PStar];
    for j in 1..=n {
        let com = commutator_apply(VectorField::P, VectorField::Q(j), &test_fn, &pt, H);
        pq = pq.max((&com - &vector_field_apply(VectorField::T(j), &test_fn, &pt, H)).max_abs());
        left.extend([VectorField::T(j), VectorField::Q(j)]);
        right.extend([VectorField::TStar(j), VectorField::QStar(j)]);
    }
    for a in &left {
        for b in &right {
            lr = lr.max(commutator_apply(*a, *b, &test_fn, &pt, H).max_abs());
        }
    }
    judge(11, "G^n ladder and vector-field structure (n = 3)", &[
        ("a_minus_vacuum_terms", killed, 0.0),
        ("[a+_j, a-]", pm, 1e-10),
        ("[a+_j, a+_k]", pp, 1e-10),
        ("[P, Q_j] - T_j", pq, 1e-6),
        ("[left, right]", lr, 1e-6),
    ])
}

/// Component `exp(-2i(t_j - t'_j) - (|z_j|² + |a_j|²)/2 + a_j z̄_j)`, written out here.
fn closed_component(tp: &[f64], a: &[f64], g: &GElement, j: usize) -> Complex64 {
    let z = c(g.p, g.q[j]);
    let aj = c(a[0], a[j + 1]);
    (c(0.0, -2.0 * (g.t[j] - tp[j])) - (z.norm_sqr() + aj.norm_sqr()) / 2.0 + aj * z.conj()).exp()
}

/// `Σ_j` of the components with `i` read as `e_j`.
fn closed_wavelet(tp: &[f64], a: &[f64], g: &GElement) -> Multivector {
    let n = g.dim();
    let mut out = Multivector::zero(n);
    for j in 0..n {
        let v = closed_component(tp, a, g, j);
        out.add_term(BladeIndex::SCALAR, c(v.re, 0.0));
        out.add_term(BladeIndex::generator(j + 1), c(v.im, 0.0));
    }
    out
}

fn rand_g(r: &mut ChaCha8Rng, n: usize, s: f64) -> GElement {
    GElement::new((0..n).map(|_| uni(r, s)).collect(), uni(r, s), (0..n).map(|_| uni(r, s)).collect())
}

fn criterion_12() -> Outcome {
    let mut r = rng(12);
    let mut worst: f64 = 0.0;
    let mut origin: f64 = 0.0;
    for n in 1..=3 {
        for _ in 0..50 {
            let src = rand_g(&mut r, n, 1.5);
            let g = rand_g(&mut r, n, 1.5);
            let a = omega_project(&src);
            let quad = g_wavelet(&VPacket::coherent(&src), &g, QUAD).unwrap();
            worst = worst.max((&quad - &closed_wavelet(&src.t, &a, &g)).max_abs());
            worst = worst.max((&quad - &g_wavelet_closed(&src.t, &a, &g)).max_abs());
        }
        let o = g_wavelet_closed(&vec![0.0; n], &vec![0.0; n + 1], &GElement::identity(n));
        origin = origin.max((&o - &Multivector::scalar(n, n as f64)).max_abs());
    }
    judge(12, "Wavelet closed form (50 points, n <= 3)", &[("quad_vs_closed", worst, 1e-8), ("origin_minus_n", origin, 0.0)])
}

fn criterion_13() -> Outcome {
    let mut r = rng(13);
    let n = 2;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let src = rand_g(&mut r, n, 1.0);
        let a = omega_project(&src);
        let w = |g: &GElement| closed_wavelet(&src.t, &a, g);
        for _ in 0..20 {
            let pt = rand_g(&mut r, n, 1.5);
            worst = worst.max(dirac_g_residual(&w, &pt, H).max_abs());
        }
    }
    let control = |g: &GElement| Multivector::scalar(n, g.p);
    let ctrl = dirac_g_residual(&control, &rand_g(&mut r, n, 1.0), H).max_abs();
    judge(13, "Wavelet images monogenic (20 points x 10 sources)", &[("max_residual", worst, 1e-6), ("|control - 1|", (ctrl - 1.0).abs(), 1e-6)])
}

fn criterion_14() -> Outcome {
    let mut r = rng(14);
    let mut renorm: f64 = 0.0;
    let mut dirac: f64 = 0.0;
    for n in 1..=3 {
        for _ in 0..20 {
            let a: Vec<f64> = (0..=n).map(|_| uni(&mut r, 1.0)).collect();
            let z: Vec<f64> = (0..=n).map(|_| uni(&mut r, 1.0)).collect();
            let g = omega_section(&z);
            // undo exp(-(|z_j|² + |a_j|²)/2) on each component
            let mut rescaled = Multivector::zero(n);
            for j in 0..n {
                let s = ((z[0] * z[0] + z[j + 1] * z[j + 1] + a[0] * a[0] + a[j + 1] * a[j + 1]) / 2.0).exp();
                let v = closed_component(&vec![0.0; n], &a, &g, j) * s;
                rescaled.add_term(BladeIndex::SCALAR, c(v.re, 0.0));
                rescaled.add_term(BladeIndex::generator(j + 1), c(v.im, 0.0));
            }
            renorm = renorm.max((&rescaled - &reduced_wavelet(&a, &z)).max_abs());
            let w = |x: &[f64]| reduced_wavelet(&a, x);
            dirac = dirac.max(finite_diff_apply(&reduced_dirac_stencil(n), &w, &z, H).max_abs());
        }
    }
    judge(14, "Reduced transform", &[("renormalized_vs_reduced", renorm, 1e-12), ("reduced_dirac", dirac, 1e-6)])
}

fn criterion_15() -> Outcome {
    let sys = OscillatorSystem { n: 1 };
    let v = sys.vacuum();
    let errs: Vec<f64> = [10, 15, 20].iter().map(|&q| reconstruct(&sys, &v, q).unwrap().1).collect();
    let monotone = if errs[0] > errs[1] && errs[1] > errs[2] { 0.0 } else { 1.0 };
    let phi = |a: &[f64]| c(a[0], -0.5 * a[1]) * (-0.25 * (a[0] * a[0] + a[1] * a[1])).exp();
    let idem = idempotence_residual(&sys, phi, 20, 3.0).unwrap();
    let mut r = rng(15);
    let mut kernel: f64 = 0.0;
    for _ in 0..50 {
        let (w, z) = (cx(&mut r, 1.5), cx(&mut r, 1.5));
        let k = repro_kernel(&sys, &[w.re, w.im], &[z.re, z.im]);
        kernel = kernel.max((k - ((-z.norm_sqr() - w.norm_sqr()) / 2.0 + w * z.conj()).exp()).norm());
    }
    let mut o = judge(15, "Framework round trip (oscillator, n = 1)", &[
        ("reconstruction_order20", errs[2], 1e-3),
        ("non_monotone", monotone, 0.0),
        ("idempotence", idem, 1e-6),
        ("sb_kernel", kernel, 1e-8),
    ]);
    o.detail += &format!("; errors at orders 10/15/20 = {:.2e}/{:.2e}/{:.2e}", errs[0], errs[1], errs[2]);
    o
}

fn criterion_16() -> Outcome {
    let cfg = SuiteConfig { suite: Suite::All, seed: 7, ..SuiteConfig::default() };
    let render = || emit_report(&Report::new(cfg.clone(), run_suite(&cfg).unwrap()), Format::Json).unwrap();
    let (a, b) = (render(), render());
    let differ = if a == b { 0.0 } else { 1.0 };
    let table = errata_table();
    let mut topics: Vec<&str> = table.iter().map(|e| e.topic.as_str()).collect();
    topics.sort_unstable();
    topics.dedup();
    let json: serde_json::Value = serde_json::from_str(&a).unwrap();
    let in_report = json["errata"].as_array().map_or(0, Vec::len);
    judge(16, "Determinism (all suites, seed 7) and errata table", &[
        ("reports_differ", differ, 0.0),
        ("|errata - 7|", (table.len() as f64 - 7.0).abs(), 0.0),
        ("|distinct topics - 7|", (topics.len() as f64 - 7.0).abs(), 0.0),
        ("|report errata - 7|", (in_report as f64 - 7.0).abs(), 0.0),
    ])
}

fn main() {
    let criteria: [fn() -> Outcome; 16] = [
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8,
        criterion_9, criterion_10, criterion_11, criterion_12, criterion_13, criterion_14, criterion_15, criterion_16,
    ];
    let mut failed = Vec::new();
    for f in criteria {
        let o = f();
        println!("{} criterion {:>2}: {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
        if !o.pass {
            failed.push(o.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 16 criteria pass");
    } else {
        println!("acceptance: {} of 16 criteria fail: {failed:?}", failed.len());
        std::process::exit(1);
    }
}
