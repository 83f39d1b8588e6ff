//! Small numeric helpers shared by the estimators and integrators.

/// Neumaier-compensated accumulator.
///
/// The estimator sums run over up to 10^7 terms of mixed magnitude; plain
/// f64 accumulation loses low-order bits that the dual-route self-checks
/// then flag. The compensation term recovers them at one extra add per
/// element.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// `u * ln(u)` with the continuous extension `0 * ln 0 = 0`.
///
/// Every integrand in this crate multiplies a log by the probability that
/// vanishes at the same point, so the extension keeps them finite at the
/// endpoints of [0, 1].
#[inline]
pub fn xlnx(u: f64) -> f64 {
    if u > 0.0 {
        u * u.ln()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_low_bits() {
        // 1 + 1e-16 * 10^6 loses everything in naive f64 accumulation.
        let mut naive = 1.0f64;
        let mut comp = CompensatedSum::new();
        comp.add(1.0);
        for _ in 0..1_000_000 {
            naive += 1e-16;
            comp.add(1e-16);
        }
        assert_eq!(naive, 1.0);
        let expected = 1.0 + 1e-10;
        assert!((comp.total() - expected).abs() < 1e-15);
    }

    #[test]
    fn xlnx_endpoints() {
        assert_eq!(xlnx(0.0), 0.0);
        assert_eq!(xlnx(1.0), 0.0);
        assert!(xlnx(-1e-12) == 0.0);
        assert!((xlnx(0.5) - 0.5 * 0.5f64.ln()).abs() < 1e-16);
    }
}
