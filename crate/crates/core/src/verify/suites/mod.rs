//! Suite bodies. Each suite draws from its own seeded stream, so a suite
//! produces the same records alone or inside `all`.

mod algebra;
mod framework;
mod gn;
mod m2;
mod oscillator;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{CheckRecord, Suite, SuiteConfig};
use crate::Result;

pub(super) fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut ctx = Ctx::new(suite, cfg);
    match suite {
        Suite::Clifford => algebra::clifford(&mut ctx)?,
        Suite::Cpoly => algebra::cpoly(&mut ctx)?,
        Suite::Hermite => oscillator::hermite(&mut ctx)?,
        Suite::Bargmann => oscillator::bargmann(&mut ctx)?,
        Suite::M2 => m2::m2(&mut ctx)?,
        Suite::Gn => gn::gn(&mut ctx)?,
        Suite::Framework => framework::framework(&mut ctx)?,
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(ctx.out)
}

pub(crate) type Params = Vec<(&'static str, Value)>;

pub(crate) struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub rng: ChaCha8Rng,
    prefix: &'static str,
    out: Vec<CheckRecord>,
}

impl<'a> Ctx<'a> {
    fn new(suite: Suite, cfg: &'a SuiteConfig) -> Self {
        let salt = Suite::ALL_SUITES.iter().position(|s| *s == suite).unwrap_or(0) as u64;
        Self {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt)),
            prefix: suite.name(),
            out: Vec::new(),
        }
    }

    fn record(&mut self, id: &str, params: Params, residual: f64, tol: f64, diagnostic: bool, notes: &str) {
        let tol = tol * self.cfg.tol_scale;
        self.out.push(CheckRecord {
            id: format!("{}.{id}", self.prefix),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>(),
            residual,
            tol,
            pass: residual <= tol,
            diagnostic,
            notes: notes.to_string(),
        });
    }

    pub fn check(&mut self, id: &str, params: Params, residual: f64, tol: f64) {
        self.record(id, params, residual, tol, false, "");
    }

    pub fn check_noted(&mut self, id: &str, params: Params, residual: f64, tol: f64, notes: &str) {
        self.record(id, params, residual, tol, false, notes);
    }

    pub fn diagnostic(&mut self, id: &str, params: Params, residual: f64, tol: f64, notes: &str) {
        self.record(id, params, residual, tol, true, notes);
    }

    pub fn uniform(&mut self, r: f64) -> f64 {
        self.rng.gen_range(-r..=r)
    }

    pub fn vec(&mut self, len: usize, r: f64) -> Vec<f64> {
        (0..len).map(|_| self.uniform(r)).collect()
    }

    pub fn complex(&mut self, r: f64) -> Complex64 {
        Complex64::new(self.uniform(r), self.uniform(r))
    }

    pub fn cvec(&mut self, len: usize, r: f64) -> Vec<Complex64> {
        (0..len).map(|_| self.complex(r)).collect()
    }
}

pub(crate) fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken computation cannot pass
    it.into_iter().fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

/// `V_k` for `|k| ≤ d`, built once so series can be evaluated at many points.
pub(crate) struct VBasis(Vec<(crate::MultiIndex, crate::cpoly::CliffPoly)>);

impl VBasis {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        crate::MultiIndex::all_up_to(n, d)
            .into_iter()
            .map(|k| crate::cpoly::v_monomial(&k, d).map(|p| (k, p)))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn eval(&self, f: &crate::monomodel::M2Element, x: &[f64]) -> crate::clifford::Multivector {
        let mut out = crate::clifford::Multivector::zero(f.n);
        for (k, p) in &self.0 {
            if let Some(c) = f.coeffs.get(k) {
                out.add_scaled(&p.eval(x), *c);
            }
        }
        out
    }
}
