//! The complexified Clifford algebra `Cl(0,n)`.
//!
//! Generators satisfy `e_i e_j + e_j e_i = -2 δ_ij`. A basis blade is encoded
//! as a bitmask over the generators (bit `j-1` stands for `e_j`), the empty
//! mask being the unit `e_0 = 1`. Blade signs are computed with integer
//! transposition counting, so only the complex coefficients carry rounding.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_complex::Complex64;

use crate::{Error, Result};

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 12;

/// Largest argument list accepted by [`sym_product`].
pub const SYM_PRODUCT_CAP: usize = 10;

/// Canonical blade encoding: ascending set of generator indices as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BladeIndex(u16);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn from_mask(mask: u16) -> Self {
        Self(mask)
    }

    /// Blade `e_{i1} e_{i2} …` from generator indices (1-based). Indices are
    /// sorted; a repeated generator is rejected.
    pub fn from_generators(gens: &[usize]) -> Option<Self> {
        let mut mask = 0u16;
        for &g in gens {
            if g == 0 || g > MAX_GENERATORS || mask & (1 << (g - 1)) != 0 {
                return None;
            }
            mask |= 1 << (g - 1);
        }
        Some(Self(mask))
    }

    /// The single generator `e_j`, `j ≥ 1`.
    pub fn generator(j: usize) -> Self {
        assert!((1..=MAX_GENERATORS).contains(&j), "generator index {j} out of range");
        Self(1 << (j - 1))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Highest generator index used (0 for the scalar blade).
    pub fn top(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn generators(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    /// Product of two blades: resulting blade and sign.
    pub fn product(self, other: Self) -> (Self, f64) {
        // transpositions needed to sort the concatenated generator string
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let low = b.trailing_zeros();
            swaps += (self.0 >> (low + 1)).count_ones();
            b &= b - 1;
        }
        // each shared generator contributes e_j² = -1
        let squares = (self.0 & other.0).count_ones();
        let sign = if (swaps + squares) % 2 == 0 { 1.0 } else { -1.0 };
        (Self(self.0 ^ other.0), sign)
    }

    /// Clifford conjugation sign `(-1)^{r(r+1)/2}` for a grade-`r` blade.
    pub fn conj_sign(self) -> f64 {
        let r = self.grade();
        if (r * (r + 1) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Debug for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e{}", self.generators().join("_"))
    }
}

/// Element of `Cl(0,n) ⊗ ℂ`, stored sparsely.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    n: usize,
    terms: BTreeMap<BladeIndex, Complex64>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "Cl(0,{n}) exceeds the generator cap");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: impl Into<Complex64>) -> Self {
        Self::from_blade(n, BladeIndex::SCALAR, c)
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// Basis element `e_j`; `j = 0` is the unit.
    pub fn basis(n: usize, j: usize) -> Self {
        if j == 0 {
            return Self::one(n);
        }
        assert!(j <= n, "e_{j} is not a generator of Cl(0,{n})");
        Self::from_blade(n, BladeIndex::generator(j), 1.0)
    }

    pub fn from_blade(n: usize, blade: BladeIndex, c: impl Into<Complex64>) -> Self {
        assert!(blade.top() <= n, "blade {blade} outside Cl(0,{n})");
        let mut mv = Self::zero(n);
        mv.add_term(blade, c.into());
        mv
    }

    /// Real vector `Σ v_j e_j`.
    pub fn vector(n: usize, v: &[f64]) -> Self {
        let mut mv = Self::zero(n);
        for (j, &c) in v.iter().enumerate() {
            mv.add_term(BladeIndex::generator(j + 1), c.into());
        }
        mv
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, blade: BladeIndex) -> Complex64 {
        self.terms.get(&blade).copied().unwrap_or_default()
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeff(BladeIndex::SCALAR)
    }

    pub fn iter(&self) -> impl Iterator<Item = (BladeIndex, Complex64)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn add_term(&mut self, blade: BladeIndex, c: Complex64) {
        debug_assert!(c.re.is_finite() && c.im.is_finite(), "non-finite coefficient");
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(blade).or_default();
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&blade);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Multivector, c: Complex64) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (b, v) in other.iter() {
            self.add_term(b, v * c);
        }
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = Self::zero(self.n);
        for (b, v) in self.iter() {
            out.add_term(b, v * c);
        }
        out
    }

    /// Geometric product; fails when the algebras differ.
    pub fn try_mul(&self, other: &Multivector) -> Result<Multivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut out = Self::zero(self.n);
        for (ba, ca) in self.iter() {
            for (bb, cb) in other.iter() {
                let (blade, sign) = ba.product(bb);
                out.add_term(blade, ca * cb * sign);
            }
        }
        Ok(out)
    }

    /// Clifford conjugation composed with complex conjugation.
    pub fn conj(&self) -> Multivector {
        let mut out = Self::zero(self.n);
        for (b, c) in self.iter() {
            out.add_term(b, c.conj() * b.conj_sign());
        }
        out
    }

    /// Drop coefficients whose modulus is at most `tol`.
    pub fn pruned(&self, tol: f64) -> Multivector {
        Self {
            n: self.n,
            terms: self.terms.iter().filter(|(_, c)| c.norm() > tol).map(|(b, c)| (*b, *c)).collect(),
        }
    }

    /// Re-embed into a larger algebra.
    pub fn widen(&self, n: usize) -> Multivector {
        assert!(n >= self.n);
        Self { n, terms: self.terms.clone() }
    }
}

/// Geometric product `a·b`.
pub fn mv_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.try_mul(b)
}

/// Clifford conjugation (with complex conjugation of coefficients).
pub fn mv_conjugate(a: &Multivector) -> Multivector {
    a.conj()
}

/// Symmetrized product `(1/k!) Σ_σ a_{σ(1)} ⋯ a_{σ(k)}`, by direct enumeration.
pub fn sym_product(factors: &[Multivector]) -> Result<Multivector> {
    let k = factors.len();
    if k == 0 {
        return Err(Error::InvalidConfig("symmetrized product of an empty list".into()));
    }
    if k > SYM_PRODUCT_CAP {
        return Err(Error::CapExceeded { what: "symmetrized product length", value: k, cap: SYM_PRODUCT_CAP });
    }
    let n = factors[0].dim();
    if let Some(bad) = factors.iter().find(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch { left: n, right: bad.dim() });
    }
    let mut acc = Multivector::zero(n);
    let mut count = 0usize;
    for perm in (0..k).permutations(k) {
        let mut prod = Multivector::one(n);
        for &i in &perm {
            prod = prod.try_mul(&factors[i])?;
        }
        acc.add_scaled(&prod, Complex64::new(1.0, 0.0));
        count += 1;
    }
    Ok(acc.scale(1.0 / count as f64))
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(rhs, Complex64::new(1.0, 0.0));
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(rhs, Complex64::new(-1.0, 0.0));
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// Panics on a dimension mismatch; use [`Multivector::try_mul`] to recover.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.try_mul(rhs).expect("multivectors from different algebras")
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            if b != BladeIndex::SCALAR {
                write!(f, "·{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, j: usize) -> Multivector {
        Multivector::basis(n, j)
    }

    /// Independent sign oracle: bubble-sort a generator string, flipping the
    /// sign per transposition and cancelling equal neighbours with e_j² = -1.
    fn string_sign(gens: &[usize]) -> (Vec<usize>, f64) {
        let mut s = gens.to_vec();
        let mut sign = 1.0;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < s.len() {
                if s[i] > s[i + 1] {
                    s.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else if s[i] == s[i + 1] {
                    s.drain(i..i + 2);
                    sign = -sign;
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                return (s, sign);
            }
        }
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let p = &e(3, 1) * &e(3, 1);
        assert_eq!(p, Multivector::scalar(3, -1.0));
    }

    #[test]
    fn distinct_generators_anticommute() {
        let s = &(&e(3, 1) * &e(3, 2)) + &(&e(3, 2) * &e(3, 1));
        assert!(s.is_zero());
    }

    #[test]
    fn bivector_squares_to_minus_one() {
        let b = &e(2, 1) * &e(2, 2);
        assert_eq!(&b * &b, Multivector::scalar(2, -1.0));
        let (_, sign) = string_sign(&[1, 2, 1, 2]);
        assert_eq!(sign, -1.0);
    }

    #[test]
    fn blade_sign_matches_string_oracle() {
        for a in 0u16..64 {
            for b in 0u16..64 {
                let ba = BladeIndex::from_mask(a);
                let bb = BladeIndex::from_mask(b);
                let mut gens: Vec<usize> = ba.generators().collect();
                gens.extend(bb.generators());
                let (sorted, sign) = string_sign(&gens);
                let (blade, s) = ba.product(bb);
                assert_eq!(blade, BladeIndex::from_generators(&sorted).unwrap());
                assert_eq!(s, sign, "{ba} * {bb}");
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(mv_conjugate(&Multivector::one(2)), Multivector::one(2));
        assert_eq!(mv_conjugate(&e(2, 1)), -&e(2, 1));
        let b = &e(2, 1) * &e(2, 2);
        assert_eq!(mv_conjugate(&b), -&b);
        // conj(x)·x = x0² + x1² for x = e1 x0 - x1
        let x = &e(1, 1).scale(0.7) - &Multivector::scalar(1, 0.4);
        let s = &mv_conjugate(&x) * &x;
        assert!((s.scalar_part().re - (0.49 + 0.16)).abs() < 1e-15);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn conjugation_is_anti_automorphism() {
        let a = &e(3, 1) + &(&e(3, 2) * &e(3, 3)).scale(Complex64::new(0.0, 2.0));
        let b = &Multivector::scalar(3, 0.5) + &e(3, 3);
        let lhs = mv_conjugate(&(&a * &b));
        let rhs = &mv_conjugate(&b) * &mv_conjugate(&a);
        assert!((&lhs - &rhs).max_abs() < 1e-15);
    }

    #[test]
    fn symmetrized_product_examples() {
        let a = &e(2, 1) + &Multivector::scalar(2, 2.0);
        let b = &e(2, 1) * &e(2, 2);
        let expect = (&(&a * &b) + &(&b * &a)).scale(0.5);
        assert_eq!(sym_product(&[a, b]).unwrap(), expect);
        assert!(sym_product(&[e(2, 1), e(2, 2)]).unwrap().is_zero());
        assert_eq!(sym_product(&[e(2, 1), e(2, 1)]).unwrap(), Multivector::scalar(2, -1.0));
    }

    #[test]
    fn errors() {
        assert!(matches!(mv_product(&e(2, 1), &e(3, 1)), Err(Error::DimensionMismatch { .. })));
        let many = vec![e(1, 1); 11];
        assert!(matches!(sym_product(&many), Err(Error::CapExceeded { .. })));
        assert!(sym_product(&[]).is_err());
        assert!(BladeIndex::from_generators(&[1, 1]).is_none());
    }
}
