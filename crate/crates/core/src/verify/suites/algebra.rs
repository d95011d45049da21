use num_complex::Complex64;
use serde_json::json;

use super::{Ctx, VBasis};
use crate::clifford::{sym_product, BladeIndex, Multivector};
use crate::cpoly::{ck_extend, ck_product, dirac_residual, mono_exp, v_monomial, CliffPoly};
use crate::monomodel::mono_exp_expansion;
use crate::numerics::{finite_diff_apply, OperatorStencil};
use crate::{MultiIndex, Result};

fn random_mv(ctx: &mut Ctx, n: usize) -> Multivector {
    let mut mv = Multivector::zero(n);
    for mask in 0..(1u16 << n) {
        let c = ctx.complex(1.0);
        mv.add_term(BladeIndex::from_mask(mask), c);
    }
    mv
}

/// Residual relative to the size of the values compared.
fn rel(a: &Multivector, b: &Multivector) -> f64 {
    (a - b).max_abs() / a.max_abs().max(b.max_abs()).max(1.0)
}

pub fn clifford(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n;
    let mut worst: f64 = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            let (ei, ej) = (Multivector::basis(n, i), Multivector::basis(n, j));
            let s = &(&ei * &ej) + &(&ej * &ei);
            let expect = Multivector::scalar(n, if i == j { -2.0 } else { 0.0 });
            worst = worst.max((&s - &expect).max_abs());
        }
    }
    ctx.check("anticommutation", vec![("n", json!(n))], worst, 1e-13);

    let triples = 100;
    let mut assoc: f64 = 0.0;
    let mut conj_inv: f64 = 0.0;
    let mut conj_anti: f64 = 0.0;
    for _ in 0..triples {
        let (a, b, c) = (random_mv(ctx, n), random_mv(ctx, n), random_mv(ctx, n));
        assoc = assoc.max(rel(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        conj_inv = conj_inv.max(rel(&a.conj().conj(), &a));
        conj_anti = conj_anti.max(rel(&(&a * &b).conj(), &(&b.conj() * &a.conj())));
    }
    ctx.check("associativity", vec![("n", json!(n)), ("triples", json!(triples))], assoc, 1e-13);
    ctx.check("conjugation_involution", vec![("n", json!(n))], conj_inv, 1e-15);
    ctx.check("conjugation_reverses_products", vec![("n", json!(n))], conj_anti, 1e-13);

    let k = 4.min(n + 1);
    let factors: Vec<Multivector> = (0..k).map(|_| {
        let v = ctx.vec(n, 1.0);
        Multivector::vector(n, &v)
    }).collect();
    let base = sym_product(&factors)?;
    let mut perm = factors.clone();
    perm.reverse();
    perm.rotate_left(1);
    ctx.check("sym_product_permutation_invariance", vec![("factors", json!(k))], rel(&base, &sym_product(&perm)?), 1e-13);
    Ok(())
}

pub fn cpoly(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.n.min(3);
    let d = ctx.cfg.degree.min(5);
    let mut mono: f64 = 0.0;
    let mut restr: f64 = 0.0;
    for k in MultiIndex::all_up_to(n, d) {
        let v = v_monomial(&k, d)?;
        mono = mono.max(dirac_residual(&v));
        restr = restr.max(v.restrict().sub(&CliffPoly::spatial_monomial(&k, 1.0 / k.factorial().sqrt())).max_abs());
    }
    let p = vec![("n", json!(n)), ("max_degree", json!(d))];
    ctx.check("v_monogenic", p.clone(), mono, 1e-12);
    ctx.check("v_restriction", p, restr, 1e-14);

    // CK product of V's: V_a × V_b = sqrt((a+b)!/(a! b!)) V_{a+b}
    let mut prod: f64 = 0.0;
    let small = MultiIndex::all_up_to(n, 2);
    for a in &small {
        for b in &small {
            let lhs = ck_product(&v_monomial(a, 4)?, &v_monomial(b, 4)?, 4)?;
            let s = a.add(b);
            let rhs = v_monomial(&s, 4)?.scale((s.factorial() / (a.factorial() * b.factorial())).sqrt());
            prod = prod.max(lhs.sub(&rhs).max_abs());
        }
    }
    ctx.check("ck_product_v_basis", vec![("n", json!(n)), ("max_degree", json!(2))], prod, 1e-12);

    // symmetric product of monogenic variables agrees with the CK extension pointwise
    let mut sym: f64 = 0.0;
    for _ in 0..10 {
        let x = ctx.vec(n + 1, 1.0);
        let vars: Vec<Multivector> = (1..=n.min(3))
            .map(|j| {
                let mut m = Multivector::scalar(n, x[j]);
                m.add_term(BladeIndex::generator(j), Complex64::new(-x[0], 0.0));
                m
            })
            .collect();
        let lhs = sym_product(&vars)?;
        let mut k = MultiIndex::zeros(n);
        for j in 0..vars.len() {
            k.0[j] = 1;
        }
        let rhs = ck_extend(&CliffPoly::spatial_monomial(&k, 1.0))?.eval(&x);
        sym = sym.max((&lhs - &rhs).max_abs());
    }
    ctx.check("sym_product_matches_ck", vec![("n", json!(n))], sym, 1e-13);

    let mut series: f64 = 0.0;
    let mut fd: f64 = 0.0;
    let h = ctx.cfg.h;
    let dirac = (0..=n).fold(OperatorStencil::new("D"), |op, i| op.constant(i, 1, Multivector::basis(n, i)));
    let basis = VBasis::new(n, 24)?;
    for _ in 0..10 {
        let u = ctx.vec(n, 0.5);
        let x = ctx.vec(n + 1, 1.0);
        let (e, _) = mono_exp_expansion(&u, 24);
        series = series.max((&basis.eval(&e, &x) - &mono_exp(&u, &x)).max_abs());
        let f = |p: &[f64]| mono_exp(&u, p);
        fd = fd.max(finite_diff_apply(&dirac, &f, &x, h).max_abs());
    }
    ctx.check("exp_series_matches_closed_form", vec![("n", json!(n)), ("terms", json!(24))], series, 1e-10);
    ctx.check("exp_monogenic_fd", vec![("n", json!(n)), ("h", json!(h))], fd, 1e-6);
    Ok(())
}
