//! Polynomials on `ℝ^{n+1}` with multivector coefficients.
//!
//! Variables are `x_0, x_1, …, x_n`; the Dirac operator is
//! `D = Σ_{i=0}^n e_i ∂_i` (with `e_0 = 1`) acting by left multiplication.
//! Monogenic extension from the hyperplane `x_0 = 0` uses the
//! Cauchy–Kovalevskaya series `Σ_k (-x_0)^k/k! (Σ_{j≥1} e_j ∂_j)^k p`,
//! so the monogenic variable is `x_j - e_j x_0` and the basis polynomial
//! `V_k` restricts to `x^k / √k!`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::clifford::{BladeIndex, Multivector};
use crate::multi_index::binomial;
use crate::{Error, MultiIndex, Result};

/// Default total-degree cap for polynomial products.
pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Tolerance on the Dirac residual for inputs that must be monogenic.
pub const MONOGENIC_TOL: f64 = 1e-10;

/// Sparse polynomial in `x_0 … x_n` with coefficients in `Cl(0,n) ⊗ ℂ`.
#[derive(Clone, PartialEq)]
pub struct CliffPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Multivector>,
}

impl CliffPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(c: Multivector) -> Self {
        let n = c.dim();
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::zeros(n + 1), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Multivector::one(n))
    }

    /// Coordinate `x_i`, `0 ≤ i ≤ n`.
    pub fn variable(n: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(n + 1, i), Multivector::one(n))
    }

    pub fn monomial(index: MultiIndex, coeff: Multivector) -> Self {
        assert_eq!(index.len(), coeff.dim() + 1, "index length must be n + 1");
        let mut p = Self::zero(coeff.dim());
        p.add_term(index, coeff);
        p
    }

    /// Real monomial `c·x₁^{k₁}⋯x_n^{k_n}` from an index over `x_1 … x_n`.
    pub fn spatial_monomial(k: &MultiIndex, c: f64) -> Self {
        let n = k.len();
        let mut full = vec![0];
        full.extend_from_slice(&k.0);
        Self::monomial(MultiIndex(full), Multivector::scalar(n, c))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Multivector)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Multivector {
        self.terms.get(index).cloned().unwrap_or_else(|| Multivector::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Largest coefficient modulus over all terms.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Multivector::max_abs).fold(0.0, f64::max)
    }

    pub fn add_term(&mut self, index: MultiIndex, coeff: Multivector) {
        assert_eq!(coeff.dim(), self.n, "coefficient from a different algebra");
        if coeff.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&index) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(index, merged);
        }
    }

    pub fn add(&self, other: &CliffPoly) -> CliffPoly {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CliffPoly) -> CliffPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> CliffPoly {
        let c = c.into();
        let mut out = Self::zero(self.n);
        for (k, v) in self.terms() {
            out.add_term(k.clone(), v.scale(c));
        }
        out
    }

    /// `a · p` with `a` multiplying every coefficient from the left.
    pub fn left_mul(&self, a: &Multivector) -> CliffPoly {
        let mut out = Self::zero(self.n);
        for (k, v) in self.terms() {
            out.add_term(k.clone(), a * v);
        }
        out
    }

    /// Product with `self`'s coefficients on the left; fails if the result
    /// exceeds total degree `cap`.
    pub fn mul(&self, other: &CliffPoly, cap: usize) -> Result<CliffPoly> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let deg = self.degree() + other.degree();
        if deg > cap {
            return Err(Error::CapExceeded { what: "polynomial degree", value: deg, cap });
        }
        Ok(self.mul_truncated(other, usize::MAX))
    }

    /// Product keeping only terms of total degree `≤ max_degree`.
    pub fn mul_truncated(&self, other: &CliffPoly, max_degree: usize) -> CliffPoly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Self::zero(self.n);
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                if ka.degree() + kb.degree() > max_degree {
                    continue;
                }
                out.add_term(ka.add(kb), ca * cb);
            }
        }
        out
    }

    /// Formal partial derivative `∂/∂x_var`.
    pub fn diff(&self, var: usize) -> CliffPoly {
        assert!(var <= self.n, "variable x_{var} out of range");
        let mut out = Self::zero(self.n);
        for (k, c) in self.terms() {
            let e = k.0[var];
            if e == 0 {
                continue;
            }
            let dk = k.shifted(var, -1).expect("positive exponent");
            out.add_term(dk, c.scale(f64::from(e)));
        }
        out
    }

    /// Full Dirac operator `Σ_{i=0}^n e_i ∂_i`.
    pub fn dirac(&self) -> CliffPoly {
        self.diff(0).add(&self.dirac_spatial())
    }

    /// Spatial part `Σ_{j=1}^n e_j ∂_j`.
    pub fn dirac_spatial(&self) -> CliffPoly {
        let mut out = Self::zero(self.n);
        for j in 1..=self.n {
            out = out.add(&self.diff(j).left_mul(&Multivector::basis(self.n, j)));
        }
        out
    }

    /// Restriction to `x_0 = 0` (terms containing `x_0` dropped).
    pub fn restrict(&self) -> CliffPoly {
        let mut out = Self::zero(self.n);
        for (k, c) in self.terms() {
            if k.0[0] == 0 {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    pub fn depends_on_x0(&self) -> bool {
        self.terms.keys().any(|k| k.0[0] > 0)
    }

    /// Substitute `x_j → x_j + c_j` for `j ≥ 1`.
    pub fn shift(&self, c: &[f64]) -> CliffPoly {
        assert_eq!(c.len(), self.n, "shift vector must have n entries");
        let mut out = Self::zero(self.n);
        for (k, coeff) in self.terms() {
            // expand Π_j (x_j + c_j)^{k_j} one variable at a time
            let mut partial: Vec<(MultiIndex, f64)> = vec![(k.clone(), 1.0)];
            for j in 1..=self.n {
                let mut next = Vec::new();
                for (idx, w) in &partial {
                    let e = idx.0[j];
                    for i in 0..=e {
                        let mut m = idx.clone();
                        m.0[j] = i;
                        let f = binomial(e, i) * c[j - 1].powi((e - i) as i32);
                        if f != 0.0 {
                            next.push((m, w * f));
                        }
                    }
                }
                partial = next;
            }
            for (idx, w) in partial {
                out.add_term(idx, coeff.scale(w));
            }
        }
        out
    }

    /// Value at `x = (x_0, …, x_n)`.
    pub fn eval(&self, x: &[f64]) -> Multivector {
        assert_eq!(x.len(), self.n + 1, "point must have n + 1 coordinates");
        let mut out = Multivector::zero(self.n);
        for (k, c) in self.terms() {
            out.add_scaled(c, Complex64::new(k.monomial(x), 0.0));
        }
        out
    }
}

/// Cauchy–Kovalevskaya extension of an `x_0`-free polynomial.
pub fn ck_extend(p: &CliffPoly) -> Result<CliffPoly> {
    if p.depends_on_x0() {
        return Err(Error::InvalidConfig("CK extension needs an x0-free polynomial".into()));
    }
    let n = p.dim();
    let mut out = p.clone();
    let mut q = p.clone();
    let mut x0_pow = CliffPoly::one(n);
    let minus_x0 = CliffPoly::variable(n, 0).scale(-1.0);
    let mut k = 0u32;
    loop {
        q = q.dirac_spatial();
        if q.is_zero() {
            break;
        }
        k += 1;
        x0_pow = x0_pow.mul_truncated(&minus_x0, usize::MAX).scale(1.0 / f64::from(k));
        // x0 powers are scalar so the order of the factors is immaterial
        out = out.add(&x0_pow.mul_truncated(&q, usize::MAX));
    }
    Ok(out)
}

/// Largest Dirac-residual coefficient of `p`.
pub fn dirac_residual(p: &CliffPoly) -> f64 {
    p.dirac().max_abs()
}

/// Cauchy–Kovalevskaya product: monogenic extension of `f|·g|` on `x_0 = 0`.
pub fn ck_product(f: &CliffPoly, g: &CliffPoly, cap: usize) -> Result<CliffPoly> {
    for p in [f, g] {
        let r = dirac_residual(p);
        if r > MONOGENIC_TOL {
            return Err(Error::NotMonogenic { residual: r });
        }
    }
    ck_extend(&f.restrict().mul(&g.restrict(), cap)?)
}

/// Monogenic basis polynomial `V_k = CK(x^k / √k!)`, `k` indexed over `x_1 … x_n`.
pub fn v_monomial(k: &MultiIndex, cap: usize) -> Result<CliffPoly> {
    if k.degree() > cap {
        return Err(Error::CapExceeded { what: "monomial degree", value: k.degree(), cap });
    }
    ck_extend(&CliffPoly::spatial_monomial(k, 1.0 / k.factorial().sqrt()))
}

/// Monogenic exponential
/// `E(u, x) = exp(u·x)(cos(|u| x_0) - (u/|u|) sin(|u| x_0))` with `u = Σ u_j e_j`.
///
/// `x = (x_0, x_1, …, x_n)`; at `u = 0` this is the constant 1.
pub fn mono_exp(u: &[f64], x: &[f64]) -> Multivector {
    let n = u.len();
    assert_eq!(x.len(), n + 1, "point must have n + 1 coordinates");
    let dot: f64 = u.iter().zip(&x[1..]).map(|(a, b)| a * b).sum();
    let norm = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let scale = dot.exp();
    let mut out = Multivector::scalar(n, scale * (norm * x[0]).cos());
    if norm > 0.0 {
        let s = -scale * (norm * x[0]).sin() / norm;
        for (j, &uj) in u.iter().enumerate() {
            out.add_term(BladeIndex::generator(j + 1), Complex64::new(s * uj, 0.0));
        }
    }
    out
}

impl fmt::Debug for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human-readable monomial list, e.g. `[1]·x1^2 + [-2·e1]·x0·x1`.
impl fmt::Display for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (v, &e) in k.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{v}")?,
                    _ => write!(f, "·x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::sym_product;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn e(n: usize, j: usize) -> Multivector {
        Multivector::basis(n, j)
    }

    /// `x1 - e1 x0` for n = 1.
    fn mono_var() -> CliffPoly {
        CliffPoly::variable(1, 1).sub(&CliffPoly::variable(1, 0).left_mul(&e(1, 1)))
    }

    #[test]
    fn products() {
        let x1 = CliffPoly::variable(1, 1);
        assert_eq!(x1.mul(&x1, 12).unwrap(), CliffPoly::monomial(mi(&[0, 2]), Multivector::one(1)));
        let ex0 = CliffPoly::variable(1, 0).left_mul(&e(1, 1));
        assert_eq!(ex0.mul(&ex0, 12).unwrap(), CliffPoly::monomial(mi(&[2, 0]), Multivector::scalar(1, -1.0)));
        let p = mono_var();
        assert_eq!(p.mul(&CliffPoly::one(1), 12).unwrap(), p);
        assert!(matches!(x1.mul(&x1, 1), Err(Error::CapExceeded { .. })));
        assert!(matches!(x1.mul(&CliffPoly::one(2), 4), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn derivatives() {
        let x1sq = CliffPoly::monomial(mi(&[0, 2]), Multivector::one(1));
        assert_eq!(x1sq.diff(1), CliffPoly::variable(1, 1).scale(2.0));
        let ex0 = CliffPoly::variable(1, 0).left_mul(&e(1, 1));
        assert_eq!(ex0.diff(0), CliffPoly::constant(e(1, 1)));
        assert!(CliffPoly::variable(1, 0).diff(1).is_zero());
    }

    #[test]
    fn dirac_examples() {
        assert_eq!(CliffPoly::variable(1, 0).dirac(), CliffPoly::one(1));
        assert!(mono_var().dirac().is_zero());
        let v2 = v_monomial(&mi(&[2]), 12).unwrap();
        assert!(dirac_residual(&v2) < 1e-15);
    }

    #[test]
    fn ck_examples() {
        assert_eq!(ck_extend(&CliffPoly::one(1)).unwrap(), CliffPoly::one(1));
        assert_eq!(ck_extend(&CliffPoly::variable(1, 1)).unwrap(), mono_var());
        let sq = ck_extend(&CliffPoly::monomial(mi(&[0, 2]), Multivector::one(1))).unwrap();
        let mut expect = CliffPoly::monomial(mi(&[0, 2]), Multivector::one(1));
        expect.add_term(mi(&[1, 1]), e(1, 1).scale(-2.0));
        expect.add_term(mi(&[2, 0]), Multivector::scalar(1, -1.0));
        assert_eq!(sq, expect);
        assert!(ck_extend(&CliffPoly::variable(1, 0)).is_err());
    }

    #[test]
    fn v_monomial_examples() {
        assert_eq!(v_monomial(&mi(&[0]), 12).unwrap(), CliffPoly::one(1));
        assert_eq!(v_monomial(&mi(&[1]), 12).unwrap(), mono_var());
        let v2 = v_monomial(&mi(&[2]), 12).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((v2.coeff(&mi(&[0, 2])).scalar_part().re - r).abs() < 1e-15);
        assert!((v2.coeff(&mi(&[1, 1])).coeff(BladeIndex::generator(1)).re + 2.0 * r).abs() < 1e-15);
        assert!((v2.coeff(&mi(&[2, 0])).scalar_part().re + r).abs() < 1e-15);
        assert!(v_monomial(&mi(&[7, 7]), 12).is_err());
    }

    #[test]
    fn ck_product_examples() {
        let v1 = v_monomial(&mi(&[1]), 12).unwrap();
        let v2 = v_monomial(&mi(&[2]), 12).unwrap();
        let prod = ck_product(&v1, &v1, 12).unwrap();
        assert!(prod.sub(&v2.scale(2f64.sqrt())).max_abs() < 1e-15);
        assert_eq!(ck_product(&v1, &CliffPoly::one(1), 12).unwrap(), v1);

        let a = ck_extend(&CliffPoly::variable(2, 1)).unwrap();
        let b = ck_extend(&CliffPoly::variable(2, 2)).unwrap();
        let r = ck_product(&a, &b, 12).unwrap().restrict();
        assert_eq!(r, CliffPoly::monomial(mi(&[0, 1, 1]), Multivector::one(2)));

        let not_mono = CliffPoly::variable(1, 0);
        assert!(matches!(ck_product(&not_mono, &v1, 12), Err(Error::NotMonogenic { .. })));
    }

    #[test]
    fn symmetric_product_of_variables_matches_ck() {
        // V_k(x) = (-1)^{|k|}/√k! · (e_1x_0 - x_1)^{k_1} × ⋯ pointwise
        let n = 2;
        let k = mi(&[2, 1]);
        let v = v_monomial(&k, 12).unwrap();
        let x = [0.3, -0.7, 1.1];
        let var = |j: usize| &e(n, j).scale(x[0]) - &Multivector::scalar(n, x[j]);
        let factors = vec![var(1), var(1), var(2)];
        let sym = sym_product(&factors).unwrap().scale(-1.0 / k.factorial().sqrt());
        assert!((&sym - &v.eval(&x)).max_abs() < 1e-14);
    }

    #[test]
    fn exponential() {
        let x = [0.0, 0.4, -0.2];
        let u = [0.5, 1.5];
        let val = mono_exp(&u, &x);
        assert!((val.scalar_part().re - (0.2f64 - 0.3).exp()).abs() < 1e-15);
        assert_eq!(val.len(), 1);
        assert_eq!(mono_exp(&[0.0], &[0.9, 0.4]), Multivector::one(1));
    }

    #[test]
    fn exponential_is_monogenic_by_finite_differences() {
        let u = [1.0];
        let x = [0.3, 0.7];
        let h = 1e-4;
        let d = |i: usize| {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            (&mono_exp(&u, &xp) - &mono_exp(&u, &xm)).scale(0.5 / h)
        };
        let res = &d(0) + &(&e(1, 1) * &d(1));
        assert!(res.max_abs() < 1e-6, "{res}");
    }

    #[test]
    fn shifting() {
        let x1 = CliffPoly::variable(1, 1);
        assert_eq!(x1.shift(&[1.0]), x1.add(&CliffPoly::one(1)));
        let v1 = mono_var();
        assert_eq!(v1.shift(&[0.25]), v1.add(&CliffPoly::one(1).scale(0.25)));
        let v = v_monomial(&mi(&[2, 1]), 12).unwrap();
        assert!(dirac_residual(&v.shift(&[0.3, -1.2])) < 1e-13);
    }

    #[test]
    fn display_lists_monomials() {
        let s = mono_var().to_string();
        assert!(s.contains("x1") && s.contains("e1"), "{s}");
    }
}
