//! Stochastic noise: depolarizing Pauli errors after each gate and
//! classical readout bit-flips at measurement, simulated as per-shot
//! trajectories on the pure state. Includes the bisection fit that finds
//! the symmetric readout level reproducing a target success probability.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Instruction};
use crate::error::{domain, Error};
use crate::gates::Gate;
use crate::report::CountsReport;
use crate::statevec::{next_unit, seed_bytes, StateVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    /// Probability, per gate application and per involved qubit, of a
    /// uniformly random X/Y/Z after the gate.
    pub depolarizing_p: f64,
    /// Probability that a true 0 is recorded as 1.
    pub readout_p01: f64,
    /// Probability that a true 1 is recorded as 0.
    pub readout_p10: f64,
}

impl NoiseModel {
    pub fn none() -> Self {
        NoiseModel {
            depolarizing_p: 0.0,
            readout_p01: 0.0,
            readout_p10: 0.0,
        }
    }

    pub fn symmetric_readout(p: f64) -> Self {
        NoiseModel {
            depolarizing_p: 0.0,
            readout_p01: p,
            readout_p10: p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.depolarizing_p == 0.0 && self.readout_p01 == 0.0 && self.readout_p10 == 0.0
    }

    pub fn validate(&self) -> Result<(), Error> {
        for (name, p) in [
            ("depolarizing_p", self.depolarizing_p),
            ("readout_p01", self.readout_p01),
            ("readout_p10", self.readout_p10),
        ] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(domain(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"depolarizing_p\":{},\"readout_p01\":{},\"readout_p10\":{}}}",
            crate::report::format_significant(self.depolarizing_p),
            crate::report::format_significant(self.readout_p01),
            crate::report::format_significant(self.readout_p10),
        )
    }
}

/// Runs `shots` independent noisy trajectories. Each shot draws from its
/// own ChaCha stream derived from (seed, shot index), so runs are
/// deterministic and shots could be evaluated in any order.
///
/// An all-zero model short-circuits to the exact noiseless path and is
/// therefore byte-identical to `Circuit::execute` without noise.
pub fn apply_noisy_execution(
    circuit: &Circuit,
    model: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<CountsReport, Error> {
    model.validate()?;
    if shots == 0 {
        return Err(domain("shots must be at least 1"));
    }
    if model.is_zero() {
        return circuit.execute(shots, seed, None);
    }
    circuit.validate()?;
    if circuit.num_clbits() == 0 {
        return Err(domain("circuit has no classical bits to report"));
    }
    let mut counts = std::collections::BTreeMap::<String, u64>::new();
    for shot in 0..shots {
        let mut rng = ChaCha8Rng::from_seed(seed_bytes(seed, shot + 1));
        let bits = run_trajectory(circuit, model, &mut rng)?;
        *counts.entry(bits).or_insert(0) += 1;
    }
    Ok(CountsReport {
        shots,
        seed,
        counts,
        exact_probabilities: None,
        circuit_digest: circuit.digest(),
    })
}

fn run_trajectory(
    circuit: &Circuit,
    model: &NoiseModel,
    rng: &mut ChaCha8Rng,
) -> Result<String, Error> {
    let mut state = StateVector::zero(circuit.num_qubits())?;
    let mut recorded = vec![false; circuit.num_clbits()];
    for instruction in circuit.instructions() {
        match instruction {
            Instruction::Gate { gate, qubits } => {
                state.apply_gate(*gate, qubits)?;
                depolarize(&mut state, model, qubits, rng)?;
            }
            Instruction::Unitary { matrix, qubits, .. } => {
                state.apply_unitary(matrix, qubits)?;
                depolarize(&mut state, model, qubits, rng)?;
            }
            Instruction::Barrier { .. } => {}
            Instruction::Measure { qubit, clbit } => {
                let p_one = state.probability_one(*qubit);
                let outcome = next_unit(rng) < p_one;
                state.collapse(*qubit, outcome);
                let flip_p = if outcome {
                    model.readout_p10
                } else {
                    model.readout_p01
                };
                let flipped = next_unit(rng) < flip_p;
                recorded[*clbit] = outcome != flipped;
            }
        }
    }
    Ok(recorded
        .iter()
        .rev()
        .map(|&b| if b { '1' } else { '0' })
        .collect())
}

fn depolarize(
    state: &mut StateVector,
    model: &NoiseModel,
    qubits: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<(), Error> {
    for &q in qubits {
        if next_unit(rng) < model.depolarizing_p {
            let pauli = match rng.next_u64() % 3 {
                0 => Gate::X,
                1 => Gate::Y,
                _ => Gate::Z,
            };
            state.apply_gate(pauli, &[q])?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct FitResult {
    /// Fitted symmetric readout flip probability.
    pub p: f64,
    /// Simulated P(key) at the fitted level.
    pub achieved: f64,
    /// Bisection evaluations used.
    pub iterations: usize,
}

/// Fit tolerance on |P(key) − target|.
pub const FIT_TOLERANCE: f64 = 0.01;

/// Bisects the symmetric readout probability p ∈ [0, 0.5] until the
/// simulated P(key) matches `target` within [`FIT_TOLERANCE`]. The
/// noiseless circuit must reach the target from above.
pub fn fit_readout(
    circuit: &Circuit,
    key: &str,
    target: f64,
    shots: u64,
    seed: u64,
) -> Result<FitResult, Error> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(domain(format!("target {target} is not in (0, 1]")));
    }
    if key.len() != circuit.num_clbits() || !key.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(domain(format!(
            "key '{key}' does not name a {}-bit outcome",
            circuit.num_clbits()
        )));
    }
    let mut evaluations = 0usize;
    // Each evaluation averages four independent seed streams; one stream's
    // sampling noise at desk-scale shot counts is wider than the fit
    // tolerance.
    let mut eval = |p: f64| -> Result<f64, Error> {
        evaluations += 1;
        let mut sum = 0.0f64;
        for k in 0..4u64 {
            let run_seed = seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let report = apply_noisy_execution(
                circuit,
                &NoiseModel::symmetric_readout(p),
                shots,
                run_seed,
            )?;
            sum += report.frequency(key);
        }
        Ok(sum / 4.0)
    };

    let at_zero = eval(0.0)?;
    if (at_zero - target).abs() <= FIT_TOLERANCE {
        return Ok(FitResult {
            p: 0.0,
            achieved: at_zero,
            iterations: evaluations,
        });
    }
    if at_zero < target {
        return Err(Error::FitFailure(format!(
            "noiseless P(key) = {at_zero:.4} is below the target {target}; no bracket"
        )));
    }
    let at_half = eval(0.5)?;
    if at_half > target + FIT_TOLERANCE {
        return Err(Error::FitFailure(format!(
            "P(key) = {at_half:.4} at maximum readout noise still exceeds the target {target}; no bracket"
        )));
    }

    let mut lo = 0.0f64;
    let mut hi = 0.5f64;
    let mut best = (0.5, at_half);
    for _ in 0..14 {
        let mid = 0.5 * (lo + hi);
        let value = eval(mid)?;
        if (value - target).abs() < (best.1 - target).abs() {
            best = (mid, value);
        }
        if value > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (best.1 - target).abs() <= FIT_TOLERANCE {
        Ok(FitResult {
            p: best.0,
            achieved: best.1,
            iterations: evaluations,
        })
    } else {
        Err(Error::FitFailure(format!(
            "bisection stalled at P(key) = {:.4} for target {target}",
            best.1
        )))
    }
}
