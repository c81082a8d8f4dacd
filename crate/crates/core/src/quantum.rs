//! Exact statevector math for one to three qubits.
//!
//! Measurements are planar: an axis is a single angle, outcome `+1` is the
//! spin-up eigenstate along that axis, and all correlation formulas depend
//! only on angle differences. Qubit 0 is the leftmost tensor factor, i.e. the
//! most significant bit of an amplitude index. Everything here is pure;
//! random streams are explicit arguments.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::error::{Error, Result};

/// Tolerance for exactness assertions on norms and probability sums.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A two-valued measurement result, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    /// Computational-basis bit: `+1` is `0`, `-1` is `1`.
    pub fn bit(self) -> u8 {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Outcome {
        if bit & 1 == 0 {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    pub fn is_opposite(self, other: Outcome) -> bool {
        self != other
    }
}

/// A planar measurement direction, stored normalized into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAxis {
    angle: f64,
}

impl MeasurementAxis {
    pub fn new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::arg(format!(
                "measurement angle must be finite, got {angle}"
            )));
        }
        Ok(MeasurementAxis {
            angle: angle.rem_euclid(TAU),
        })
    }

    pub fn angle(self) -> f64 {
        self.angle
    }

    /// Component `⟨b|e⟩` of the eigenvector for `outcome` on basis state `b`.
    ///
    /// Spin-up along angle `a` is `cos(a/2)|0⟩ + sin(a/2)|1⟩`; spin-down is
    /// the orthogonal `sin(a/2)|0⟩ - cos(a/2)|1⟩`. Both are real.
    fn eigenvector_component(self, outcome: Outcome, bit: u8) -> f64 {
        let half = self.angle / 2.0;
        match (outcome, bit) {
            (Outcome::Plus, 0) => half.cos(),
            (Outcome::Plus, _) => half.sin(),
            (Outcome::Minus, 0) => half.sin(),
            (Outcome::Minus, _) => -half.cos(),
        }
    }
}

/// A pure state of one to three qubits as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from explicit amplitudes, validating dimension and norm.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if !(1..=3).contains(&num_qubits) {
            return Err(Error::arg(format!(
                "num_qubits must be 1..=3, got {num_qubits}"
            )));
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::arg(format!(
                "expected {} amplitudes for {} qubits, got {}",
                1 << num_qubits,
                num_qubits,
                amps.len()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::arg(format!(
                "state is not normalized: |amps|^2 = {norm}"
            )));
        }
        Ok(StateVector { num_qubits, amps })
    }

    /// The computational basis state `|index⟩`.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        if !(1..=3).contains(&num_qubits) {
            return Err(Error::arg(format!(
                "num_qubits must be 1..=3, got {num_qubits}"
            )));
        }
        let dim = 1 << num_qubits;
        if index >= dim {
            return Err(Error::arg(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// The singlet `(|01⟩ - |10⟩)/√2`, encoding spin `+` as bit 0.
    pub fn singlet() -> Self {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        StateVector {
            num_qubits: 2,
            amps: vec![Complex64::new(0.0, 0.0), s, -s, Complex64::new(0.0, 0.0)],
        }
    }

    /// The three-qubit `(|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = s;
        amps[7] = s;
        StateVector {
            num_qubits: 3,
            amps,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::arg(format!(
                "qubit index {qubit} out of range for {}-qubit state",
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// Bit of `qubit` within amplitude index `idx` (qubit 0 is the MSB).
    fn qubit_bit(&self, idx: usize, qubit: usize) -> u8 {
        ((idx >> (self.num_qubits - 1 - qubit)) & 1) as u8
    }

    /// Multiplies every amplitude where `qubit` is `|1⟩` by `e^{i alpha}`.
    pub fn phase(&self, qubit: usize, alpha: f64) -> Result<StateVector> {
        self.check_qubit(qubit)?;
        let factor = Complex64::from_polar(1.0, alpha);
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                if self.qubit_bit(idx, qubit) == 1 {
                    a * factor
                } else {
                    *a
                }
            })
            .collect();
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Applies a Hadamard to `qubit`.
    pub fn hadamard(&self, qubit: usize) -> Result<StateVector> {
        self.check_qubit(qubit)?;
        let stride = 1 << (self.num_qubits - 1 - qubit);
        let mut amps = self.amps.clone();
        for idx in 0..self.amps.len() {
            if idx & stride == 0 {
                let lo = self.amps[idx];
                let hi = self.amps[idx | stride];
                amps[idx] = (lo + hi) * FRAC_1_SQRT_2;
                amps[idx | stride] = (lo - hi) * FRAC_1_SQRT_2;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    fn check_axes(&self, axes: &[MeasurementAxis]) -> Result<()> {
        if axes.len() != self.num_qubits {
            return Err(Error::arg(format!(
                "expected {} measurement axes, got {}",
                self.num_qubits,
                axes.len()
            )));
        }
        Ok(())
    }

    /// Born-rule probability of obtaining `outcomes` when each qubit is
    /// measured along its axis simultaneously.
    pub fn joint_probability(&self, axes: &[MeasurementAxis], outcomes: &[Outcome]) -> Result<f64> {
        self.check_axes(axes)?;
        if outcomes.len() != self.num_qubits {
            return Err(Error::arg(format!(
                "expected {} outcomes, got {}",
                self.num_qubits,
                outcomes.len()
            )));
        }
        // Projection amplitude onto the product eigenvector selected by the
        // outcome tuple; the eigenvectors are real, so the per-index weight is
        // a plain f64 product.
        let mut amp = Complex64::new(0.0, 0.0);
        for (idx, a) in self.amps.iter().enumerate() {
            let mut weight = 1.0;
            for (qubit, (axis, outcome)) in axes.iter().zip(outcomes).enumerate() {
                weight *= axis.eigenvector_component(*outcome, self.qubit_bit(idx, qubit));
            }
            amp += a * weight;
        }
        Ok(amp.norm_sqr())
    }

    /// Probabilities of all `2^n` outcome tuples, indexed by the tuple's bit
    /// pattern (`Plus` is 0, qubit 0 is the MSB). Shares the projection path
    /// with [`joint_probability`](Self::joint_probability) so the two always
    /// agree bit for bit.
    pub fn outcome_distribution(&self, axes: &[MeasurementAxis]) -> Result<Vec<f64>> {
        self.check_axes(axes)?;
        let n = self.num_qubits;
        let mut dist = Vec::with_capacity(1 << n);
        let mut outcomes = vec![Outcome::Plus; n];
        for tuple in 0..1usize << n {
            for (qubit, slot) in outcomes.iter_mut().enumerate() {
                *slot = Outcome::from_bit(((tuple >> (n - 1 - qubit)) & 1) as u8);
            }
            dist.push(self.joint_probability(axes, &outcomes)?);
        }
        Ok(dist)
    }

    /// Draws one outcome tuple with probabilities exactly matching
    /// [`outcome_distribution`](Self::outcome_distribution); consumes a single
    /// uniform draw. Zero-probability tuples are never returned.
    pub fn sample_outcomes<R: Rng + ?Sized>(
        &self,
        axes: &[MeasurementAxis],
        rng: &mut R,
    ) -> Result<Vec<Outcome>> {
        let dist = self.outcome_distribution(axes)?;
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut chosen = None;
        let mut last_nonzero = 0;
        for (tuple, p) in dist.iter().enumerate() {
            if *p > 0.0 {
                last_nonzero = tuple;
            }
            acc += p;
            if u < acc {
                chosen = Some(tuple);
                break;
            }
        }
        let tuple = chosen.unwrap_or(last_nonzero);
        let n = self.num_qubits;
        Ok((0..n)
            .map(|qubit| Outcome::from_bit(((tuple >> (n - 1 - qubit)) & 1) as u8))
            .collect())
    }
}

/// Closed-form singlet correlations for measurements at angles `theta` and
/// `phi`: returns `(p_same, p_opposite)` with `p_same = (1 - cos(theta-phi))/2`.
/// The pair always sums to exactly 1.
pub fn singlet_correlation(theta: f64, phi: f64) -> (f64, f64) {
    let p_same = 0.5 * (1.0 - (theta - phi).cos());
    (p_same, 1.0 - p_same)
}
