use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn unit(len: usize, j: usize) -> Self {
        let mut m = Self::zeros(len);
        m.0[j] = 1;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    /// `k! = Π k_j!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Index with entry `j` moved by `delta`; `None` when it would go negative.
    pub fn shifted(&self, j: usize, delta: i32) -> Option<Self> {
        let v = self.0[j] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[j] = v as u32;
        Some(out)
    }

    /// Monomial `Π x_j^{k_j}` evaluated at `x`.
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&k, &xi)| xi.powi(k as i32))
            .product()
    }

    /// Every index of the given length with total degree at most `max_degree`,
    /// in graded order.
    pub fn all_up_to(len: usize, max_degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut cur = vec![0u32; len];
            compositions(len, d, 0, &mut cur, &mut out);
        }
        out
    }
}

fn compositions(len: usize, remaining: usize, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if len == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == len - 1 {
        cur[pos] = remaining as u32;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for k in (0..=remaining).rev() {
        cur[pos] = k as u32;
        compositions(len, remaining - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

pub(crate) fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}
