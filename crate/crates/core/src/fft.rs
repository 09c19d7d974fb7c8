//! Complex discrete Fourier transform kernel.
//!
//! Power-of-two lengths run through an iterative radix-2 Cooley-Tukey with a
//! precomputed half-length twiddle table. Other lengths fall back to
//! Bluestein's chirp-z algorithm on a padded power-of-two convolution, so any
//! grid size the rest of the crate accepts is covered.
//!
//! Transforms are unnormalized: `forward` computes `X_k = sum_j x_j e^{-2πi jk/n}`
//! and `backward` the conjugate kernel. Callers own the normalization.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

pub struct FftPlan {
    len: usize,
    kind: PlanKind,
}

enum PlanKind {
    Radix2 {
        bitrev: Vec<u32>,
        /// `twiddles[j] = e^{-2πi j/n}` for `j < n/2`.
        twiddles: Vec<Complex64>,
    },
    Bluestein {
        inner: Box<FftPlan>,
        /// `chirp[j] = e^{iπ j²/n}` for `j < n`.
        chirp: Vec<Complex64>,
        /// Forward transform of the wrapped chirp kernel, length `m`.
        kernel: Vec<Complex64>,
    },
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        assert!(len >= 2, "transform length must be at least 2");
        let kind = if len.is_power_of_two() {
            let mut bitrev = vec![0u32; len];
            let bits = len.trailing_zeros();
            for (i, r) in bitrev.iter_mut().enumerate() {
                *r = (i as u32).reverse_bits() >> (32 - bits);
            }
            let twiddles = (0..len / 2)
                .map(|j| {
                    let phi = -2.0 * PI * j as f64 / len as f64;
                    Complex64::new(libm::cos(phi), libm::sin(phi))
                })
                .collect();
            PlanKind::Radix2 { bitrev, twiddles }
        } else {
            let m = (2 * len - 1).next_power_of_two();
            let inner = Box::new(FftPlan::new(m));
            // e^{iπ j²/n}; reduce j² mod 2n to keep the argument small.
            let chirp: Vec<Complex64> = (0..len)
                .map(|j| {
                    let q = ((j as u64 * j as u64) % (2 * len as u64)) as f64;
                    let phi = PI * q / len as f64;
                    Complex64::new(libm::cos(phi), libm::sin(phi))
                })
                .collect();
            let mut kernel = vec![Complex64::new(0.0, 0.0); m];
            kernel[0] = chirp[0];
            for j in 1..len {
                kernel[j] = chirp[j];
                kernel[m - j] = chirp[j];
            }
            inner.forward(&mut kernel);
            PlanKind::Bluestein {
                inner,
                chirp,
                kernel,
            }
        };
        FftPlan { len, kind }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// In-place unnormalized forward transform, kernel `e^{-2πi jk/n}`.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len);
        match &self.kind {
            PlanKind::Radix2 { bitrev, twiddles } => {
                let n = self.len;
                for i in 0..n {
                    let r = bitrev[i] as usize;
                    if r > i {
                        data.swap(i, r);
                    }
                }
                let mut len = 2;
                while len <= n {
                    let half = len / 2;
                    let step = n / len;
                    let mut start = 0;
                    while start < n {
                        for j in 0..half {
                            let w = twiddles[j * step];
                            let u = data[start + j];
                            let v = data[start + j + half] * w;
                            data[start + j] = u + v;
                            data[start + j + half] = u - v;
                        }
                        start += len;
                    }
                    len <<= 1;
                }
            }
            PlanKind::Bluestein {
                inner,
                chirp,
                kernel,
            } => {
                let n = self.len;
                let m = inner.len();
                let mut work = vec![Complex64::new(0.0, 0.0); m];
                for j in 0..n {
                    work[j] = data[j] * chirp[j].conj();
                }
                inner.forward(&mut work);
                for (w, k) in work.iter_mut().zip(kernel.iter()) {
                    *w *= k;
                }
                inner.backward(&mut work);
                let scale = 1.0 / m as f64;
                for k in 0..n {
                    data[k] = work[k] * chirp[k].conj() * scale;
                }
            }
        }
    }

    /// In-place unnormalized backward transform, kernel `e^{+2πi jk/n}`.
    pub fn backward(&self, data: &mut [Complex64]) {
        for z in data.iter_mut() {
            *z = z.conj();
        }
        self.forward(data);
        for z in data.iter_mut() {
            *z = z.conj();
        }
    }
}
