//! Compensated (Kahan-Babuska-Neumaier) summation.
//!
//! Every long sum in this crate runs through these accumulators in a fixed
//! (ascending) term order, so results are bit-identical across runs and
//! across thread counts: parallel stages only ever produce per-index values
//! that are then reduced sequentially.

use num_complex::Complex64;

/// Neumaier variant of Kahan summation: the compensation also captures the
/// case where the incoming term is larger than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Complex compensated accumulator (independent real and imaginary lanes).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexKahan {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}
