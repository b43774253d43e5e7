//! Gauss–Legendre quadrature.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{domain, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(domain("quadrature needs at least one node"));
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Newton on P_n from the Tricomi initial guess
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let step = p / d;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes.push(0.5 * (1.0 - z));
        weights.push(0.5 * w);
    }
    Ok((nodes, weights))
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre_unit(16).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        // ∫₀¹ u^k du = 1/(k+1) for k < 32
        for k in [1, 5, 17, 31] {
            let s: f64 = x.iter().zip(&w).map(|(u, w)| w * libm::pow(*u, k as f64)).sum();
            assert!((s - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn small_rules() {
        let (x, w) = gauss_legendre_unit(1).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-15 && (w[0] - 1.0).abs() < 1e-15);
        let (x, _) = gauss_legendre_unit(2).unwrap();
        let off = 0.5 / libm::sqrt(3.0);
        assert!(x.iter().any(|u| (u - (0.5 - off)).abs() < 1e-15));
        assert!(gauss_legendre_unit(0).is_err());
    }

    #[test]
    fn integrates_exponential() {
        let (x, w) = gauss_legendre_unit(16).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(u, w)| w * libm::exp(*u)).sum();
        assert!((s - (libm::exp(1.0) - 1.0)).abs() < 1e-14);
    }
}
