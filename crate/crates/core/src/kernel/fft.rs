//! Circular convolution through `rustfft`, 1D and 2D (row-major, square).

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

#[derive(Clone)]
pub(crate) struct CircularConvolver {
    n: usize,
    dims: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for CircularConvolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircularConvolver")
            .field("n", &self.n)
            .field("dims", &self.dims)
            .finish()
    }
}

impl CircularConvolver {
    /// `n` points per axis, `dims` in {1, 2}.
    pub fn new(n: usize, dims: usize) -> Self {
        assert!(dims == 1 || dims == 2);
        let mut planner = FftPlanner::new();
        Self {
            n,
            dims,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    fn len(&self) -> usize {
        self.n.pow(self.dims as u32)
    }

    fn transform(&self, buf: &mut [Complex<f64>], fft: &Arc<dyn Fft<f64>>) {
        // rustfft processes every consecutive chunk of length n
        fft.process(buf);
        if self.dims == 2 {
            transpose_in_place(buf, self.n);
            fft.process(buf);
            transpose_in_place(buf, self.n);
        }
    }

    pub fn spectrum(&self, samples: &[f64]) -> Vec<Complex<f64>> {
        assert_eq!(samples.len(), self.len());
        let mut buf: Vec<Complex<f64>> = samples.iter().map(|&s| Complex::new(s, 0.0)).collect();
        self.transform(&mut buf, &self.forward);
        buf
    }

    /// Forward transform of a real signal.
    pub fn forward_real(&self, signal: &[f64]) -> Vec<Complex<f64>> {
        self.spectrum(signal)
    }

    /// `scale * IDFT(signal_hat * kernel_hat)`, real part. Fails when the
    /// imaginary residue exceeds `1e-10 * reference_norm`.
    pub fn apply_spectrum(
        &self,
        signal_hat: &[Complex<f64>],
        kernel_hat: &[Complex<f64>],
        scale: f64,
        reference_norm: f64,
    ) -> Result<Vec<f64>> {
        let mut buf: Vec<Complex<f64>> = signal_hat
            .iter()
            .zip(kernel_hat)
            .map(|(a, b)| a * b)
            .collect();
        self.transform(&mut buf, &self.inverse);
        let norm = 1.0 / self.len() as f64;
        let residue = buf.iter().fold(0.0f64, |m, c| m.max(c.im.abs())) * norm;
        let threshold = 1e-10 * reference_norm;
        if residue > threshold && reference_norm > 0.0 {
            return Err(Error::ImaginaryResidue { residue, threshold });
        }
        Ok(buf.iter().map(|c| c.re * norm * scale).collect())
    }
}

fn transpose_in_place<T: Copy>(buf: &mut [T], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            buf.swap(i * n + j, j * n + i);
        }
    }
}
