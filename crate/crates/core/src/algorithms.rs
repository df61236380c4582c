//! Circuit builders: the Hadamard-transform reference state, the Grover
//! baseline with dense-injected oracle and diffusion operators, phase and
//! entangling oracle constructors, and the constant-time register-
//! comparison search in two variants.
//!
//! Keys are bitstrings read most-significant-first, so key "01" sets
//! qubit 0 — the same convention the counts reports print.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuit::{Circuit, RegisterDecl};
use crate::error::{capacity, domain, Error};
use crate::gates::Gate;
use crate::statevec::{StateVector, MAX_ORACLE_QUBITS};
use crate::unitary::DenseUnitary;

/// Which reading of the constant-time search circuit to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchVariant {
    /// The six-step procedure: X per key bit, then H, Z, H on both
    /// registers, one CNOT layer, measure the data register. Yields the
    /// key with certainty.
    AlgorithmFaithful,
    /// The literal listing layout generalized to n: X per key bit, H on
    /// both registers, CNOTs, measure, trailing Z on the data register;
    /// the CNOT targets sit in |+⟩, so the outcome is uniform.
    QasmLiteral,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub n: usize,
    pub key: String,
    pub variant: SearchVariant,
}

impl SearchSpec {
    pub fn new(n: usize, key: impl Into<String>, variant: SearchVariant) -> Self {
        SearchSpec {
            n,
            key: key.into(),
            variant,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroverSpec {
    pub n: usize,
    pub key: String,
    /// Explicit iteration count; `None` selects ⌊(π/4)·√(2^n)⌋.
    pub iterations: Option<usize>,
}

/// ⌊(π/4)·√N⌋ Grover iterations for an n-qubit register.
pub fn auto_grover_iterations(n: usize) -> usize {
    (PI / 4.0 * ((1u64 << n) as f64).sqrt()).floor() as usize
}

/// Parses a key bitstring of expected length into its basis index.
pub fn key_index(key: &str, n: usize) -> Result<usize, Error> {
    if key.len() != n {
        return Err(domain(format!(
            "key '{key}' has length {}, expected {n}",
            key.len()
        )));
    }
    if key.is_empty() || !key.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(domain(format!("key '{key}' is not a bitstring")));
    }
    Ok(usize::from_str_radix(key, 2).expect("validated bitstring"))
}

fn check_oracle_width(n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(domain("register must have at least one qubit"));
    }
    if n > MAX_ORACLE_QUBITS {
        return Err(capacity(format!(
            "{n} qubits exceeds the dense operator cap of {MAX_ORACLE_QUBITS}"
        )));
    }
    Ok(())
}

/// The state H^⊗n|x⟩: amplitude (−1)^{x·y}/√(2^n) at index y, where x·y
/// is the parity of the bitwise AND.
pub fn hadamard_transform_reference(x: &str, n: usize) -> Result<StateVector, Error> {
    check_oracle_width(n)?;
    let x_index = key_index(x, n)?;
    let dim = 1usize << n;
    let magnitude = 1.0 / (dim as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for (y, amp) in amps.iter_mut().enumerate() {
        let sign = if (x_index & y).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        *amp = Complex64::new(sign * magnitude, 0.0);
    }
    Ok(StateVector::from_amplitudes(n, amps))
}

/// Diagonal oracle with −1 at the key's index: |x⟩ → (−1)^{f(x)}|x⟩.
pub fn grover_phase_oracle(n: usize, key: &str) -> Result<DenseUnitary, Error> {
    phase_oracle(n, key, PI)
}

/// Diagonal oracle with e^{iα} at the key's index; α = π recovers the
/// sign-flip oracle, α = 0 the identity.
pub fn phase_oracle(n: usize, key: &str, alpha: f64) -> Result<DenseUnitary, Error> {
    check_oracle_width(n)?;
    let marked = key_index(key, n)?;
    let dim = 1usize << n;
    let mut out = DenseUnitary::identity(dim);
    if alpha == PI {
        // Keep the marked entry exactly −1 rather than e^{iπ}.
        out.set(marked, marked, Complex64::new(-1.0, 0.0));
    } else {
        out.set(marked, marked, Complex64::from_polar(1.0, alpha));
    }
    Ok(out)
}

/// The diffusion operator 2|ψ⟩⟨ψ| − I over the uniform superposition:
/// 2/N − δ on the diagonal, 2/N off it.
pub fn grover_diffusion(n: usize) -> Result<DenseUnitary, Error> {
    check_oracle_width(n)?;
    let dim = 1usize << n;
    let off = 2.0 / dim as f64;
    let mut out = DenseUnitary::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            let v = if r == c { off - 1.0 } else { off };
            out.set(r, c, Complex64::new(v, 0.0));
        }
    }
    Ok(out)
}

/// Permutation |x, y⟩ → |x, y ⊕ f(x)⟩ over n+1 qubits; the ancilla is
/// the most significant qubit.
pub fn entangling_oracle(n: usize, key: &str) -> Result<DenseUnitary, Error> {
    if n + 1 > MAX_ORACLE_QUBITS {
        return Err(capacity(format!(
            "{} qubits exceeds the dense operator cap of {MAX_ORACLE_QUBITS}",
            n + 1
        )));
    }
    check_oracle_width(n)?;
    let marked = key_index(key, n)?;
    let dim = 1usize << (n + 1);
    let ancilla = 1usize << n;
    let mut out = DenseUnitary::zeros(dim);
    for col in 0..dim {
        let x = col & (ancilla - 1);
        let row = if x == marked { col ^ ancilla } else { col };
        out.set(row, col, Complex64::new(1.0, 0.0));
    }
    Ok(out)
}

/// Grover baseline: H on every qubit, `iterations` repetitions of
/// (oracle, diffusion) injected as dense operators, measure all.
pub fn build_grover(spec: &GroverSpec) -> Result<Circuit, Error> {
    check_oracle_width(spec.n)?;
    key_index(&spec.key, spec.n)?;
    let iterations = spec.iterations.unwrap_or_else(|| auto_grover_iterations(spec.n));
    let oracle = grover_phase_oracle(spec.n, &spec.key)?;
    let diffusion = grover_diffusion(spec.n)?;
    // Dense operators index their first listed qubit as the most
    // significant bit, so list the register in descending order to match
    // the oracle's basis indexing.
    let descending: Vec<usize> = (0..spec.n).rev().collect();
    let mut circuit = Circuit::new(spec.n, spec.n);
    circuit.name = Some(format!("grover-{}-{}", spec.n, spec.key));
    for q in 0..spec.n {
        circuit.gate(Gate::H, &[q]);
    }
    for _ in 0..iterations {
        circuit.unitary("oracle", oracle.clone(), &descending);
        circuit.unitary("diffusion", diffusion.clone(), &descending);
    }
    for q in 0..spec.n {
        circuit.measure(q, q);
    }
    Ok(circuit)
}

/// Constant-time search circuit over 2n qubits: key register = qubits
/// 0..n-1, data register = qubits n..2n-1, n clbits reading the data
/// register. See [`SearchVariant`] for the two layouts.
pub fn build_constant_search(spec: &SearchSpec) -> Result<Circuit, Error> {
    check_oracle_width(spec.n)?;
    let key = key_index(&spec.key, spec.n)?;
    let n = spec.n;
    let mut circuit = Circuit::with_registers(
        vec![RegisterDecl::new("q", 2 * n)],
        vec![RegisterDecl::new("res", n)],
    );
    circuit.name = Some(match spec.variant {
        SearchVariant::AlgorithmFaithful => format!("search-algorithm-{n}-{}", spec.key),
        SearchVariant::QasmLiteral => format!("search-literal-{n}-{}", spec.key),
    });
    for i in 0..n {
        if (key >> i) & 1 == 1 {
            circuit.gate(Gate::X, &[i]);
        }
    }
    for q in 0..2 * n {
        circuit.gate(Gate::H, &[q]);
    }
    if spec.variant == SearchVariant::AlgorithmFaithful {
        for q in 0..2 * n {
            circuit.gate(Gate::Z, &[q]);
        }
        for q in 0..2 * n {
            circuit.gate(Gate::H, &[q]);
        }
    }
    for i in 0..n {
        circuit.gate(Gate::Cx, &[i, n + i]);
    }
    for i in 0..n {
        circuit.measure(n + i, i);
    }
    if spec.variant == SearchVariant::QasmLiteral {
        for i in 0..n {
            circuit.gate(Gate::Z, &[n + i]);
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::dense_unitary_of;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hadamard_reference_matches_the_worked_expansions() {
        // H⊗2|11⟩ = ½(|00⟩ − |01⟩ − |10⟩ + |11⟩)
        let sv = hadamard_transform_reference("11", 2).unwrap();
        let expected = [0.5, -0.5, -0.5, 0.5];
        for (amp, want) in sv.amplitudes().iter().zip(expected) {
            assert!((amp - c(want, 0.0)).norm() < 1e-12);
        }
        // H⊗2|00⟩ = ½(|00⟩ + |01⟩ + |10⟩ + |11⟩)
        let sv = hadamard_transform_reference("00", 2).unwrap();
        for amp in sv.amplitudes() {
            assert!((amp - c(0.5, 0.0)).norm() < 1e-12);
        }
        // H|0⟩
        let sv = hadamard_transform_reference("0", 1).unwrap();
        for amp in sv.amplitudes() {
            assert!((amp - c(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn hadamard_reference_rejects_length_mismatch() {
        assert!(hadamard_transform_reference("01", 3).is_err());
    }

    #[test]
    fn phase_oracle_on_one_qubit_key_one_is_z() {
        let oracle = grover_phase_oracle(1, "1").unwrap();
        assert!(oracle.max_abs_diff(&Gate::Z.matrix()) < 1e-15);
    }

    #[test]
    fn phase_oracle_marks_the_little_endian_index() {
        // Key "01" → index 1 → diag(1, −1, 1, 1).
        let oracle = grover_phase_oracle(2, "01").unwrap();
        for i in 0..4 {
            let want = if i == 1 { -1.0 } else { 1.0 };
            assert_eq!(oracle.get(i, i), c(want, 0.0));
        }
    }

    #[test]
    fn phase_oracle_flips_exactly_one_uniform_amplitude() {
        let oracle = grover_phase_oracle(3, "101").unwrap();
        let uniform = vec![c(1.0 / 8.0f64.sqrt(), 0.0); 8];
        let flipped = oracle.mul_state(&uniform);
        let negatives = flipped.iter().filter(|a| a.re < 0.0).count();
        assert_eq!(negatives, 1);
        assert!(flipped[0b101].re < 0.0);
    }

    #[test]
    fn general_phase_oracle_specializations() {
        let at_pi = phase_oracle(2, "01", PI).unwrap();
        assert!(at_pi.max_abs_diff(&grover_phase_oracle(2, "01").unwrap()) < 1e-15);
        let at_zero = phase_oracle(2, "01", 0.0).unwrap();
        assert!(at_zero.max_abs_diff(&DenseUnitary::identity(4)) < 1e-15);
        let quarter = phase_oracle(1, "1", PI / 2.0).unwrap();
        assert!(quarter.max_abs_diff(&Gate::S.matrix()) < 1e-15);
    }

    #[test]
    fn diffusion_fixes_uniform_and_negates_orthogonal() {
        let diffusion = grover_diffusion(3).unwrap();
        let uniform = vec![c(1.0 / 8.0f64.sqrt(), 0.0); 8];
        let kept = diffusion.mul_state(&uniform);
        for (a, b) in kept.iter().zip(uniform.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
        // |0⟩ − |1⟩ component (orthogonal to uniform) is negated.
        let mut orthogonal = vec![c(0.0, 0.0); 8];
        orthogonal[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        orthogonal[1] = c(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let negated = diffusion.mul_state(&orthogonal);
        for (a, b) in negated.iter().zip(orthogonal.iter()) {
            assert!((a + b).norm() < 1e-12);
        }
    }

    #[test]
    fn diffusion_entries_at_two_qubits() {
        let diffusion = grover_diffusion(2).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let want = if r == col { -0.5 } else { 0.5 };
                assert!((diffusion.get(r, col) - c(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn diffusion_equals_conjugated_zero_reflection() {
        for n in 1..=5 {
            let direct = grover_diffusion(n).unwrap();
            // H^⊗n (2|0⟩⟨0| − I) H^⊗n, built from explicit pieces.
            let dim = 1usize << n;
            let mut reflection = DenseUnitary::zeros(dim);
            for i in 0..dim {
                let v = if i == 0 { 1.0 } else { -1.0 };
                reflection.set(i, i, c(v, 0.0));
            }
            let mut hn = DenseUnitary::identity(1);
            for _ in 0..n {
                hn = hn.kron(&Gate::H.matrix());
            }
            let conjugated = hn.matmul(&reflection).matmul(&hn);
            assert!(direct.max_abs_diff(&conjugated) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn entangling_oracle_flips_the_ancilla_only_on_the_key() {
        let oracle = entangling_oracle(2, "01").unwrap();
        let key = 0b01usize;
        // |key, 0⟩ → |key, 1⟩
        let mut input = vec![c(0.0, 0.0); 8];
        input[key] = c(1.0, 0.0);
        let output = oracle.mul_state(&input);
        assert_eq!(output[key | 0b100], c(1.0, 0.0));
        // |x, 0⟩ → |x, 0⟩ for x ≠ key
        let mut other = vec![c(0.0, 0.0); 8];
        other[0b10] = c(1.0, 0.0);
        let unchanged = oracle.mul_state(&other);
        assert_eq!(unchanged[0b10], c(1.0, 0.0));
        assert!(oracle.is_unitary(1e-12));
    }

    #[test]
    fn entangling_oracle_reduces_to_phase_oracle_by_kickback() {
        // With the ancilla prepared in |−⟩, the entangling oracle acts on
        // the first n qubits as the sign-flip oracle.
        let n = 2;
        let oracle = entangling_oracle(n, "10").unwrap();
        let phase = grover_phase_oracle(n, "10").unwrap();
        let h = Gate::H.matrix();
        let x = Gate::X.matrix();
        let mut lower = DenseUnitary::identity(1 << n);
        // Build |−⟩ on the ancilla: X then H from |0⟩.
        let prep = h.matmul(&x);
        let full_prep = prep.kron(&DenseUnitary::identity(1 << n));
        let conjugated = full_prep
            .dagger()
            .matmul(&oracle.matmul(&full_prep));
        // Restricted to ancilla |0⟩, conjugated acts as the phase oracle.
        for r in 0..(1 << n) {
            for col in 0..(1 << n) {
                lower.set(r, col, conjugated.get(r, col));
            }
        }
        assert!(lower.max_abs_diff(&phase) < 1e-12);
    }

    #[test]
    fn grover_two_qubits_single_iteration_is_exact() {
        let circuit = build_grover(&GroverSpec {
            n: 2,
            key: "11".into(),
            iterations: Some(1),
        })
        .unwrap();
        let report = circuit.execute(256, 0, None).unwrap();
        let exact = report.exact_probabilities.as_ref().unwrap();
        assert!((exact["11"] - 1.0).abs() < 1e-10);
        assert_eq!(report.counts.get("11"), Some(&256));
    }

    #[test]
    fn grover_three_qubits_two_iterations() {
        let circuit = build_grover(&GroverSpec {
            n: 3,
            key: "101".into(),
            iterations: Some(2),
        })
        .unwrap();
        let report = circuit.execute(16, 0, None).unwrap();
        let exact = report.exact_probabilities.as_ref().unwrap();
        assert!((exact["101"] - 0.9453125).abs() < 1e-6);
    }

    #[test]
    fn grover_zero_iterations_is_uniform() {
        let circuit = build_grover(&GroverSpec {
            n: 2,
            key: "00".into(),
            iterations: Some(0),
        })
        .unwrap();
        let report = circuit.execute(16, 0, None).unwrap();
        let exact = report.exact_probabilities.as_ref().unwrap();
        for p in exact.values() {
            assert!((p - 0.25).abs() < 1e-10);
        }
    }

    #[test]
    fn auto_iteration_counts() {
        assert_eq!(auto_grover_iterations(2), 1);
        assert_eq!(auto_grover_iterations(3), 2);
        assert_eq!(auto_grover_iterations(4), 3);
    }

    #[test]
    fn algorithm_variant_finds_the_key_with_certainty() {
        let circuit = build_constant_search(&SearchSpec::new(
            2,
            "01",
            SearchVariant::AlgorithmFaithful,
        ))
        .unwrap();
        let report = circuit.execute(1024, 0, None).unwrap();
        let exact = report.exact_probabilities.as_ref().unwrap();
        assert!((exact["01"] - 1.0).abs() < 1e-10);
        assert_eq!(report.counts.get("01"), Some(&1024));
    }

    #[test]
    fn algorithm_variant_single_qubit() {
        let circuit =
            build_constant_search(&SearchSpec::new(1, "1", SearchVariant::AlgorithmFaithful))
                .unwrap();
        // Cross-check on the dense oracle route rather than the engine.
        let mut gates_only = Circuit::new(2, 0);
        for instruction in circuit.instructions() {
            if let crate::circuit::Instruction::Gate { gate, qubits } = instruction {
                gates_only.gate(*gate, qubits);
            }
        }
        let unitary = dense_unitary_of(&gates_only).unwrap();
        let initial = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let evolved = unitary.mul_state(&initial);
        // Data register is qubit 1; P(data = 1) must be 1.
        let p: f64 = evolved
            .iter()
            .enumerate()
            .filter(|(i, _)| i & 0b10 != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        assert!((p - 1.0).abs() < 1e-10);
    }

    #[test]
    fn literal_variant_is_uniform() {
        let circuit =
            build_constant_search(&SearchSpec::new(2, "01", SearchVariant::QasmLiteral)).unwrap();
        let report = circuit.execute(64, 0, None).unwrap();
        let exact = report.exact_probabilities.as_ref().unwrap();
        for key in ["00", "01", "10", "11"] {
            assert!((exact[key] - 0.25).abs() < 1e-10);
        }
    }

    #[test]
    fn literal_variant_reproduces_the_reference_listing() {
        let circuit =
            build_constant_search(&SearchSpec::new(2, "01", SearchVariant::QasmLiteral)).unwrap();
        let printed = crate::qasm::print(&circuit).unwrap();
        let fixture = include_str!("../tests/fixtures/reference_listing.qasm").replace("\r\n", "\n");
        assert_eq!(printed, fixture);
    }

    #[test]
    fn algorithm_variant_prints_the_full_cascade() {
        let circuit = build_constant_search(&SearchSpec::new(
            2,
            "01",
            SearchVariant::AlgorithmFaithful,
        ))
        .unwrap();
        let printed = crate::qasm::print(&circuit).unwrap();
        assert_eq!(printed.matches("cx ").count(), 2);
        // H and Z layers span both registers.
        for q in 0..4 {
            assert!(printed.contains(&format!("z q[{q}];")));
        }
        assert_eq!(printed.matches("h q[").count(), 8);
    }

    #[test]
    fn instruction_counts_have_closed_forms() {
        for n in 1..=8usize {
            let ones = (0..n).filter(|i| i % 2 == 0).count(); // key 0101..
            let key: String = (0..n)
                .map(|i| if (n - 1 - i) % 2 == 0 { '1' } else { '0' })
                .collect();
            let key_ones = key.chars().filter(|&c| c == '1').count();
            assert_eq!(key_ones, ones);
            let faithful = build_constant_search(&SearchSpec::new(
                n,
                key.clone(),
                SearchVariant::AlgorithmFaithful,
            ))
            .unwrap();
            assert_eq!(faithful.instructions().len(), 8 * n + key_ones);
            let literal =
                build_constant_search(&SearchSpec::new(n, key, SearchVariant::QasmLiteral))
                    .unwrap();
            assert_eq!(literal.instructions().len(), 5 * n + key_ones);
        }
    }

    #[test]
    fn key_validation_rejects_mismatches() {
        assert!(build_constant_search(&SearchSpec::new(
            2,
            "011",
            SearchVariant::AlgorithmFaithful
        ))
        .is_err());
        assert!(key_index("0a", 2).is_err());
        assert!(grover_phase_oracle(2, "1").is_err());
    }

    #[test]
    fn oracle_caps_are_enforced() {
        assert!(matches!(
            grover_diffusion(MAX_ORACLE_QUBITS + 1),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            entangling_oracle(MAX_ORACLE_QUBITS, "1111111111"),
            Err(Error::Capacity(_))
        ));
    }
}
