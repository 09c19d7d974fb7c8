//! Chebyshev-Lobatto collocation in time: nodes on `[0, 1]` and the running
//! integration matrix that maps samples of an integrand to samples of its
//! antiderivative from the left endpoint.
//!
//! The solvers represent time-dependent states by their values at these
//! nodes; the running integral is then exact on the interpolating
//! polynomial, which is what makes the nested Duhamel integrals of the
//! Picard recursion computable without re-quadrature at every level.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// `m` Lobatto nodes on `[0, 1]`, increasing, endpoints included:
/// `τ_i = (1 − cos(πi/(m−1)))/2`.
pub fn lobatto_nodes_unit(m: usize) -> Vec<f64> {
    assert!(m >= 2);
    let n = (m - 1) as f64;
    (0..m)
        .map(|i| 0.5 * (1.0 - libm::cos(PI * i as f64 / n)))
        .collect()
}

/// Row-major `m×m` matrix `A` with `(A h)_i = ∫_0^{τ_i} p(τ) dτ`, where `p`
/// interpolates the samples `h_j` at the Lobatto nodes. Exact for
/// polynomials of degree `m−1`; spectrally accurate for analytic
/// integrands.
pub fn cumulative_integration_matrix(m: usize) -> Vec<f64> {
    assert!(m >= 2);
    let n = m - 1;
    let mut matrix = vec![0.0; m * m];
    let mut basis = vec![0.0; m];
    for j in 0..m {
        basis.iter_mut().for_each(|b| *b = 0.0);
        basis[j] = 1.0;
        let col = cumulative_integral_samples(&basis);
        for i in 0..m {
            matrix[i * m + j] = col[i];
        }
    }
    // row 0 is ∫ over the empty interval
    for j in 0..m {
        matrix[j] = 0.0;
    }
    let _ = n;
    matrix
}

/// Apply the running integral to one sample vector (used to build the
/// matrix; also usable directly).
///
/// Works on `x = cos(πi/n)`, which corresponds to `τ_i` above; `τ ∈ [0,1]`
/// maps to `x ∈ [1,−1]`, so `∫_0^τ = −(1/2)∫ dx` from `x=1`.
fn cumulative_integral_samples(h: &[f64]) -> Vec<f64> {
    let m = h.len();
    let n = m - 1;
    let nf = n as f64;
    // Chebyshev coefficients a_k of the interpolant (DCT-I, trapezoid form)
    let mut a = vec![0.0; m];
    for (k, ak) in a.iter_mut().enumerate() {
        let mut sum = 0.5 * (h[0] + if k % 2 == 0 { h[n] } else { -h[n] });
        for (j, &hj) in h.iter().enumerate().take(n).skip(1) {
            sum += hj * libm::cos(PI * (j * k % (2 * n)) as f64 / nf);
        }
        let ck = if k == 0 || k == n { 2.0 } else { 1.0 };
        *ak = 2.0 * sum / (nf * ck);
    }
    // antiderivative coefficients b_k, k = 1..=n+1; the k=1 term uses 2a_0
    // because the recurrence is stated for the halved-a_0 normalization
    let get = |k: usize| {
        if k == 0 {
            2.0 * a[0]
        } else if k <= n {
            a[k]
        } else {
            0.0
        }
    };
    let mut b = vec![0.0; m + 1];
    for k in 1..=n + 1 {
        b[k] = (get(k - 1) - get(k + 1)) / (2.0 * k as f64);
    }
    // F(x) = Σ b_k T_k(x) + b_0 with F(1) = 0, so the running integral from
    // τ=0 (x=1) is −F(x)/2
    let b0: f64 = -b[1..].iter().sum::<f64>();
    (0..m)
        .map(|i| {
            let mut f = b0;
            for (k, &bk) in b.iter().enumerate().skip(1) {
                f += bk * libm::cos(PI * (i * k % (2 * n)) as f64 / nf);
            }
            -0.5 * f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_span_unit_interval() {
        for m in [2usize, 5, 9, 17] {
            let nodes = lobatto_nodes_unit(m);
            assert_eq!(nodes[0], 0.0);
            assert!((nodes[m - 1] - 1.0).abs() < 1e-15);
            for i in 1..m {
                assert!(nodes[i] > nodes[i - 1]);
            }
        }
    }

    #[test]
    fn running_integral_exact_on_polynomials() {
        let m = 9;
        let nodes = lobatto_nodes_unit(m);
        let a = cumulative_integration_matrix(m);
        for d in 0..m {
            let h: Vec<f64> = nodes.iter().map(|&t| libm::pow(t, d as f64)).collect();
            for i in 0..m {
                let got: f64 = (0..m).map(|j| a[i * m + j] * h[j]).sum();
                let want = libm::pow(nodes[i], d as f64 + 1.0) / (d as f64 + 1.0);
                assert!((got - want).abs() < 1e-14, "degree {d}, node {i}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn running_integral_spectral_on_exponential() {
        let m = 17;
        let nodes = lobatto_nodes_unit(m);
        let a = cumulative_integration_matrix(m);
        let h: Vec<f64> = nodes.iter().map(|&t| libm::exp(t)).collect();
        for i in 0..m {
            let got: f64 = (0..m).map(|j| a[i * m + j] * h[j]).sum();
            let want = libm::exp(nodes[i]) - 1.0;
            assert!((got - want).abs() < 1e-14, "node {i}");
        }
    }

    #[test]
    fn running_integral_resolves_oscillation() {
        // cos(6t) needs a fair number of modes; 25 nodes is plenty
        let m = 25;
        let nodes = lobatto_nodes_unit(m);
        let a = cumulative_integration_matrix(m);
        let h: Vec<f64> = nodes.iter().map(|&t| libm::cos(6.0 * t)).collect();
        for i in 0..m {
            let got: f64 = (0..m).map(|j| a[i * m + j] * h[j]).sum();
            let want = libm::sin(6.0 * nodes[i]) / 6.0;
            assert!((got - want).abs() < 1e-12, "node {i}");
        }
    }
}
