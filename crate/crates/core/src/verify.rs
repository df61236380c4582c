//! Self-check suites behind the CLI `verify` command: gate identities,
//! engine-vs-oracle equivalence on random circuits, the Hadamard
//! transform reference, the Grover angle law, QASM round-trips, and
//! report determinism. Each suite reports its worst observed error so a
//! tightened tolerance shows how much headroom exists.

use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{build_grover, hadamard_transform_reference, GroverSpec};
use crate::circuit::{Circuit, Instruction};
use crate::error::Error;
use crate::gates::Gate;
use crate::qasm;
use crate::statevec::{dense_unitary_of, next_unit, StateVector};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub passed: bool,
    pub duration: Duration,
    pub detail: String,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_qubits: usize,
    pub tolerance: f64,
    pub oracle_circuits: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_qubits: 5,
            tolerance: 1e-10,
            oracle_circuits: 200,
            seed: 0,
        }
    }
}

pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteResult>, Error> {
    Ok(vec![
        gate_identities(config)?,
        oracle_equivalence(config)?,
        hadamard_reference(config)?,
        grover_angle_law(config)?,
        qasm_round_trip(config)?,
        determinism(config)?,
    ])
}

fn finish(
    name: &'static str,
    cases: usize,
    max_error: f64,
    tolerance: f64,
    start: Instant,
    detail: impl Into<String>,
) -> SuiteResult {
    SuiteResult {
        name,
        cases,
        max_error,
        passed: max_error <= tolerance,
        duration: start.elapsed(),
        detail: detail.into(),
    }
}

/// Unitarity of every gate matrix plus the phase-family and conjugation
/// identities, compared up to global phase.
pub fn gate_identities(config: &VerifyConfig) -> Result<SuiteResult, Error> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    let gates = [
        Gate::I,
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::H,
        Gate::S,
        Gate::T,
        Gate::P(std::f64::consts::PI),
        Gate::P(0.123),
        Gate::Cx,
    ];
    for gate in gates {
        worst = worst.max(gate.matrix().max_unitarity_deviation());
        cases += 1;
    }
    let identities: [(&[Gate], &[Gate]); 6] = [
        (&[Gate::H, Gate::Z, Gate::H], &[Gate::X]),
        (&[Gate::H, Gate::X, Gate::H], &[Gate::Z]),
        (&[Gate::S, Gate::S], &[Gate::Z]),
        (&[Gate::T, Gate::T], &[Gate::S]),
        (&[Gate::T, Gate::T, Gate::T, Gate::T], &[Gate::Z]),
        (&[Gate::P(std::f64::consts::PI)], &[Gate::Z]),
    ];
    for (lhs, rhs) in identities {
        let left = crate::gates::sequence_product(lhs)?;
        let right = crate::gates::sequence_product(rhs)?;
        worst = worst.max(left.phase_aligned_diff(&right));
        cases += 1;
    }
    Ok(finish(
        "gate-identities",
        cases,
        worst,
        config.tolerance,
        start,
        "unitarity and algebra of the gate set",
    ))
}

/// Random circuit over the gate set (no measures unless asked).
pub fn random_circuit(
    rng: &mut ChaCha8Rng,
    num_qubits: usize,
    depth: usize,
    with_measures: bool,
) -> Circuit {
    let clbits = if with_measures { num_qubits } else { 0 };
    let mut circuit = Circuit::new(num_qubits, clbits);
    for _ in 0..depth {
        match rng.next_u64() % 8 {
            0 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::X, &[q]);
            }
            1 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::Y, &[q]);
            }
            2 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::Z, &[q]);
            }
            3 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::H, &[q]);
            }
            4 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::S, &[q]);
            }
            5 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::T, &[q]);
            }
            6 => {
                let q = (rng.next_u64() as usize) % num_qubits;
                circuit.gate(Gate::P(next_unit(rng) * 2.0 * std::f64::consts::PI), &[q]);
            }
            _ => {
                if num_qubits < 2 {
                    let q = (rng.next_u64() as usize) % num_qubits;
                    circuit.gate(Gate::H, &[q]);
                } else {
                    let control = (rng.next_u64() as usize) % num_qubits;
                    let mut target = (rng.next_u64() as usize) % num_qubits;
                    if target == control {
                        target = (target + 1) % num_qubits;
                    }
                    circuit.gate(Gate::Cx, &[control, target]);
                }
            }
        }
    }
    if with_measures {
        for q in 0..num_qubits {
            circuit.measure(q, q);
        }
    }
    circuit
}

/// Engine evolution vs the dense tensor-product oracle on random
/// circuits and random initial basis states.
pub fn oracle_equivalence(config: &VerifyConfig) -> Result<SuiteResult, Error> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x6f72_6163);
    let mut worst = 0.0f64;
    let max_qubits = config.max_qubits.clamp(1, 5);
    for _ in 0..config.oracle_circuits {
        let n = 1 + (rng.next_u64() as usize) % max_qubits;
        let depth = 1 + (rng.next_u64() as usize) % 20;
        let circuit = random_circuit(&mut rng, n, depth, false);
        let basis = (rng.next_u64() as usize) % (1usize << n);

        let mut engine_state = StateVector::init_basis(n, basis)?;
        for instruction in circuit.instructions() {
            crate::circuit::apply_instruction(&mut engine_state, instruction)?;
        }

        let oracle = dense_unitary_of(&circuit)?;
        let mut initial = vec![num_complex::Complex64::new(0.0, 0.0); 1 << n];
        initial[basis] = num_complex::Complex64::new(1.0, 0.0);
        let oracle_state = oracle.mul_state(&initial);

        for (a, b) in engine_state.amplitudes().iter().zip(oracle_state.iter()) {
            worst = worst.max((a - b).norm());
        }
    }
    Ok(finish(
        "oracle-equivalence",
        config.oracle_circuits,
        worst,
        config.tolerance,
        start,
        "engine kernels vs dense tensor-product oracle",
    ))
}

/// Per-qubit H application vs the closed-form (−1)^{x·y} reference, all
/// basis inputs up to `max_qubits` (capped at 4).
pub fn hadamard_reference(config: &VerifyConfig) -> Result<SuiteResult, Error> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for n in 1..=config.max_qubits.clamp(1, 4) {
        for x in 0..(1usize << n) {
            let bits: String = (0..n)
                .rev()
                .map(|j| if (x >> j) & 1 == 1 { '1' } else { '0' })
                .collect();
            let reference = hadamard_transform_reference(&bits, n)?;
            let mut engine = StateVector::init_basis(n, x)?;
            for q in 0..n {
                engine.apply_gate(Gate::H, &[q])?;
            }
            for (a, b) in engine.amplitudes().iter().zip(reference.amplitudes()) {
                worst = worst.max((a - b).norm());
            }
            cases += 1;
        }
    }
    Ok(finish(
        "hadamard-reference",
        cases,
        worst,
        config.tolerance,
        start,
        "per-qubit H vs closed-form transform",
    ))
}

/// Simulated Grover success probability vs sin²((2k+1)·asin(2^{-n/2})).
pub fn grover_angle_law(config: &VerifyConfig) -> Result<SuiteResult, Error> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x616e_676c);
    for n in 1..=config.max_qubits.clamp(1, 5) {
        for iterations in 0..=10usize {
            let key_value = (rng.next_u64() as usize) % (1usize << n);
            let key: String = (0..n)
                .rev()
                .map(|j| if (key_value >> j) & 1 == 1 { '1' } else { '0' })
                .collect();
            let circuit = build_grover(&GroverSpec {
                n,
                key: key.clone(),
                iterations: Some(iterations),
            })?;
            let mut state = StateVector::zero(n)?;
            for instruction in circuit.instructions() {
                if matches!(instruction, Instruction::Measure { .. }) {
                    continue;
                }
                crate::circuit::apply_instruction(&mut state, instruction)?;
            }
            let simulated = state.amplitudes()[key_value].norm_sqr();
            let theta = (1.0 / ((1u64 << n) as f64).sqrt()).asin();
            let predicted = ((2 * iterations + 1) as f64 * theta).sin().powi(2);
            worst = worst.max((simulated - predicted).abs());
            cases += 1;
        }
    }
    Ok(finish(
        "grover-angle-law",
        cases,
        worst,
        config.tolerance.max(1e-9),
        start,
        "dense-injected iterations vs the rotation angle law",
    ))
}

/// parse ∘ print identity on random circuits with measures and barriers.
pub fn qasm_round_trip(config: &VerifyConfig) -> Result<SuiteResult, Error> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x7161_736d);
    let count = 100usize;
    let mut failures = 0usize;
    for i in 0..count {
        let n = 1 + (rng.next_u64() as usize) % config.max_qubits.clamp(1, 5);
        let depth = (rng.next_u64() as usize) % 15;
        let with_measures = i % 2 == 0;
        let circuit = random_circuit(&mut rng, n, depth, with_measures);
        let printed = qasm::print(&circuit)?;
        match qasm::parse(&printed) {
            Ok(reparsed) if reparsed == circuit => {}
            _ => failures += 1,
        }
    }
    let error = failures as f64;
    Ok(SuiteResult {
        name: "qasm-round-trip",
        cases: count,
        max_error: error,
        passed: failures == 0,
        duration: start.elapsed(),
        detail: "parse(print(c)) == c on random circuits".into(),
    })
}

/// Byte-identical reports for identical (circuit, shots, seed).
pub fn determinism(config: &VerifyConfig) -> Result<SuiteResult, Error> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x6465_7465);
    let mut failures = 0usize;
    let count = 10usize;
    for _ in 0..count {
        let n = 1 + (rng.next_u64() as usize) % config.max_qubits.clamp(1, 4);
        let circuit = random_circuit(&mut rng, n, 8, true);
        let seed = rng.next_u64();
        let a = circuit.execute(512, seed, None)?;
        let b = circuit.execute(512, seed, None)?;
        if a.to_json() != b.to_json() {
            failures += 1;
        }
    }
    Ok(SuiteResult {
        name: "determinism",
        cases: count,
        max_error: failures as f64,
        passed: failures == 0,
        duration: start.elapsed(),
        detail: "fixed seed gives byte-identical reports".into(),
    })
}
