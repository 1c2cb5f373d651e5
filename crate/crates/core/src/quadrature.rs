//! Adaptive Gauss–Legendre quadrature.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes per panel.
pub const NODES: usize = 64;
const MAX_DEPTH: u32 = 48;

/// Nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let p_prev = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(NODES))
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * xs.iter().zip(ws).map(|(&x, &w)| w * f(mid + half * x)).sum::<f64>()
}

/// `∫ₐᵇ f`, splitting panels until halves agree with the whole to `rel_tol`
/// of the running total.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let total = panel(&f, a, b);
    let width = b - a;
    let mut stack = vec![(a, b, total, 0u32)];
    let mut sum = 0.0;
    let mut scale = total.abs();
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid);
        let right = panel(&f, mid, hi);
        let refined = left + right;
        scale = scale.max(refined.abs());
        let allowed = rel_tol * scale * (hi - lo) / width;
        if (refined - whole).abs() <= allowed || depth >= MAX_DEPTH {
            sum += refined;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        let (x, w) = gauss_legendre(NODES);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        // ∫ x^126 over [-1,1] = 2/127
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(126)).sum();
        assert!((v - 2.0 / 127.0).abs() < 1e-13);
        let (x5, _) = gauss_legendre(5);
        assert!((x5[2]).abs() < 1e-15);
    }

    #[test]
    fn beta_integrals() {
        // B(3,3) = 1/30, B(5,3) = 1/105
        let v = integrate(|s| (1.0 - s).powi(2) * s * s, 0.0, 1.0, 1e-12);
        assert!((v - 1.0 / 30.0).abs() < 1e-14);
        let v = integrate(|s| (1.0 - s).powi(2) * s.powi(4), 0.0, 1.0, 1e-12);
        assert!((v - 1.0 / 105.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫₀¹ s^{-1/2} ds = 2
        let v = integrate(|s| s.powf(-0.5), 0.0, 1.0, 1e-10);
        assert!((v - 2.0).abs() < 1e-8, "{v}");
        // ∫₀¹ s^{0.3}(1−s) = 1/1.3 − 1/2.3
        let v = integrate(|s| s.powf(0.3) * (1.0 - s), 0.0, 1.0, 1e-12);
        assert!((v - (1.0 / 1.3 - 1.0 / 2.3)).abs() < 1e-12);
    }
}
