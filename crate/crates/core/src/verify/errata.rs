//! Formula discrepancies between the reference derivations and what is
//! implemented here. Each entry appears exactly once in every report.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub topic: String,
    pub stated: String,
    pub implemented: String,
}

fn entry(topic: &str, stated: &str, implemented: &str) -> Erratum {
    Erratum { topic: topic.into(), stated: stated.into(), implemented: implemented.into() }
}

pub fn errata_table() -> Vec<Erratum> {
    vec![
        entry(
            "Dirac e_i factors",
            "Df = sum_{i=0..n} d_i f",
            "Df = sum_{i=0..n} e_i d_i f with e_0 = 1, acting by left multiplication",
        ),
        entry(
            "monogenic-variable sign",
            "x_i = e_i x_0 - e_0 x_i, while V_k is claimed to restrict to x^k/sqrt(k!)",
            "x_i - e_i x_0, so V_k restricts to x^k/sqrt(k!) (the stated product equals (-1)^|k| V_k)",
        ),
        entry(
            "pi-power normalizations",
            "W f_0(z) = exp(-|z|^2); generating function without pi^(-n/4); Gaussian weights unnormalized",
            "W f_0(z) = pi^(n/4) exp(-|z|^2/2) for f_0 = exp(-x.x/2); kernel keeps pi^(-n/4); all Gaussian measures are probability measures",
        ),
        entry(
            "conjugation side",
            "wavelet cross term conj(a_j) z_j; annihilator dP - sum e_j dQ_j; coherent state built on conj(z_j)",
            "cross term a_j conj(z_j) with the first-argument-conjugating product; annihilator dP + sum e_j dQ_j, creators a_k+ = a- - 2 e_k dQ_k; coherent state built on z_j = p + e_j q_j",
        ),
        entry(
            "reduced-Dirac sign",
            "D = d_p + sum e_j d_{q_j}",
            "D = d_p - sum e_j d_{q_j}, which annihilates sum_j exp(a_j conj(z_j))",
        ),
        entry("d-rho(T_j) index", "d-rho(T_j) f = (..., 2 e_1 f_j, ...)", "d-rho(T_j) f = (..., 2 e_j f_j, ...)"),
        entry(
            "Heisenberg vacuum phase",
            "w_(t,0) = exp(-2it) f_0",
            "w_(t,0) = exp(+2it) f_0, as given by the Schroedinger action",
        ),
    ]
}
