//! Dense state-vector engine and the independent tensor-product oracle.
//!
//! Basis indexing is little-endian: qubit `j` is bit `j` of the amplitude
//! index, so `init_basis(2, 1)` prepares |01⟩ with qubit 0 set.
//!
//! The engine evolves states with bit-masked pairwise updates. The oracle
//! (`dense_unitary_of`) instead expands every instruction into a full
//! 2^n x 2^n matrix by explicit Kronecker products and multiplies them
//! out; it shares no kernel code with the engine so the two can be
//! checked against each other.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Instruction};
use crate::error::{capacity, domain, Error};
use crate::gates::Gate;
use crate::report::CountsReport;
use crate::unitary::DenseUnitary;

/// Hard cap for the dense vector engine (256 MiB of amplitudes at 24).
pub const MAX_ENGINE_QUBITS: usize = 24;
/// Hard cap for the dense matrix oracle.
pub const MAX_ORACLE_QUBITS: usize = 10;

pub type Amplitude = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Basis state |basis_index⟩ on `num_qubits` qubits.
    pub fn init_basis(num_qubits: usize, basis_index: usize) -> Result<Self, Error> {
        if num_qubits == 0 {
            return Err(domain("state needs at least one qubit"));
        }
        if num_qubits > MAX_ENGINE_QUBITS {
            return Err(capacity(format!(
                "{num_qubits} qubits exceeds the engine cap of {MAX_ENGINE_QUBITS}"
            )));
        }
        let len = 1usize << num_qubits;
        if basis_index >= len {
            return Err(domain(format!(
                "basis index {basis_index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[basis_index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// |0...0⟩ on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self, Error> {
        Self::init_basis(num_qubits, 0)
    }

    pub(crate) fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << num_qubits);
        StateVector { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubits(&self, qubits: &[usize]) -> Result<(), Error> {
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(domain(format!(
                    "qubit index {q} out of range for {} qubits",
                    self.num_qubits
                )));
            }
            if qubits[..i].contains(&q) {
                return Err(domain(format!("duplicate qubit {q}")));
            }
        }
        Ok(())
    }

    /// Applies `gate` to the listed qubits. For `cx` the first listed
    /// qubit is the control. Each amplitude pair is touched exactly once,
    /// so the update is order-independent.
    pub fn apply_gate(&mut self, gate: Gate, qubits: &[usize]) -> Result<(), Error> {
        if qubits.len() != gate.arity() {
            return Err(domain(format!(
                "gate '{}' expects {} qubit(s), got {}",
                gate.mnemonic(),
                gate.arity(),
                qubits.len()
            )));
        }
        self.check_qubits(qubits)?;
        match gate {
            Gate::I => {}
            Gate::Cx => self.apply_cx(qubits[0], qubits[1]),
            single => {
                let m = single.matrix();
                let entries = [
                    [m.get(0, 0), m.get(0, 1)],
                    [m.get(1, 0), m.get(1, 1)],
                ];
                self.apply_single(&entries, qubits[0]);
            }
        }
        Ok(())
    }

    fn apply_single(&mut self, m: &[[Complex64; 2]; 2], qubit: usize) {
        let mask = 1usize << qubit;
        let low = mask - 1;
        for pair in 0..(self.amps.len() >> 1) {
            let base = ((pair & !low) << 1) | (pair & low);
            let hi = base | mask;
            let a0 = self.amps[base];
            let a1 = self.amps[hi];
            self.amps[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[hi] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let c_mask = 1usize << control;
        let t_mask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & c_mask != 0 && i & t_mask == 0 {
                self.amps.swap(i, i | t_mask);
            }
        }
    }

    /// Applies an arbitrary dense operator to the listed qubits. The
    /// first listed qubit is the most significant bit of the operator's
    /// row/column index, matching the gate-matrix convention.
    pub fn apply_unitary(&mut self, op: &DenseUnitary, qubits: &[usize]) -> Result<(), Error> {
        let k = qubits.len();
        if op.dim() != (1usize << k) {
            return Err(domain(format!(
                "operator dimension {} does not match {k} qubit(s)",
                op.dim()
            )));
        }
        self.check_qubits(qubits)?;
        let sub = 1usize << k;
        let mut offsets = vec![0usize; sub];
        for (s, offset) in offsets.iter_mut().enumerate() {
            for (m, &q) in qubits.iter().enumerate() {
                if (s >> (k - 1 - m)) & 1 == 1 {
                    *offset |= 1 << q;
                }
            }
        }
        let block_mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let mut gathered = vec![Complex64::new(0.0, 0.0); sub];
        for base in 0..self.amps.len() {
            if base & block_mask != 0 {
                continue;
            }
            for (s, &off) in offsets.iter().enumerate() {
                gathered[s] = self.amps[base | off];
            }
            for (r, &off) in offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, &v) in gathered.iter().enumerate() {
                    acc += op.get(r, c) * v;
                }
                self.amps[base | off] = acc;
            }
        }
        Ok(())
    }

    /// Marginal probability table over the listed qubits. Table index
    /// bit `m` holds the value of `qubits[m]`.
    pub fn probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>, Error> {
        if qubits.is_empty() {
            return Err(domain("probability subset must be non-empty"));
        }
        self.check_qubits(qubits)?;
        Ok(self.accumulate_marginal(qubits))
    }

    fn accumulate_marginal(&self, qubits: &[usize]) -> Vec<f64> {
        let mut table = vec![0.0f64; 1 << qubits.len()];
        for (i, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut key = 0usize;
            for (m, &q) in qubits.iter().enumerate() {
                key |= ((i >> q) & 1) << m;
            }
            table[key] += p;
        }
        table
    }

    pub(crate) fn probability_one(&self, qubit: usize) -> f64 {
        let mask = 1usize << qubit;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects onto `qubit = outcome` and renormalizes.
    pub(crate) fn collapse(&mut self, qubit: usize, outcome: bool) {
        let mask = 1usize << qubit;
        let mut kept = 0.0f64;
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if ((i & mask) != 0) == outcome {
                kept += amp.norm_sqr();
            } else {
                *amp = Complex64::new(0.0, 0.0);
            }
        }
        if kept > 0.0 {
            let scale = 1.0 / kept.sqrt();
            for amp in &mut self.amps {
                *amp *= scale;
            }
        }
    }

    /// Exact joint distribution of the given (qubit, clbit) pairs as
    /// bitstrings of `num_clbits` characters, most significant clbit
    /// first. Unmeasured clbits read 0.
    pub(crate) fn joint_distribution(
        &self,
        measured: &[(usize, usize)],
        num_clbits: usize,
    ) -> Result<Vec<(String, f64)>, Error> {
        for &(q, c) in measured {
            if q >= self.num_qubits {
                return Err(domain(format!("measured qubit {q} out of range")));
            }
            if c >= num_clbits {
                return Err(domain(format!("clbit {c} out of range")));
            }
        }
        let qubits: Vec<usize> = measured.iter().map(|&(q, _)| q).collect();
        let mut seen = std::collections::BTreeMap::<String, f64>::new();
        // Repeated qubits are allowed here (two clbits recording the same
        // qubit), so marginalize index-wise rather than via probabilities().
        let mut table = vec![0.0f64; 1 << qubits.len()];
        for (i, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut key = 0usize;
            for (m, &q) in qubits.iter().enumerate() {
                key |= ((i >> q) & 1) << m;
            }
            table[key] += p;
        }
        for (key, &p) in table.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut bits = vec![b'0'; num_clbits];
            for (m, &(_, c)) in measured.iter().enumerate() {
                if (key >> m) & 1 == 1 {
                    bits[num_clbits - 1 - c] = b'1';
                }
            }
            let label = String::from_utf8(bits).expect("ascii bits");
            *seen.entry(label).or_insert(0.0) += p;
        }
        Ok(seen.into_iter().collect())
    }

    /// Samples `shots` measurement outcomes of the listed (qubit, clbit)
    /// pairs from the exact joint distribution. Deterministic for a fixed
    /// seed. The report's digest is empty because no circuit produced it.
    pub fn sample_measurements(
        &self,
        measured: &[(usize, usize)],
        shots: u64,
        seed: u64,
    ) -> Result<CountsReport, Error> {
        if shots == 0 {
            return Err(domain("shots must be at least 1"));
        }
        if measured.is_empty() {
            return Err(domain("nothing to measure"));
        }
        let mut clbits: Vec<usize> = measured.iter().map(|&(_, c)| c).collect();
        clbits.sort_unstable();
        clbits.dedup();
        if clbits.len() != measured.len() {
            return Err(domain("clbits must be distinct"));
        }
        let num_clbits = measured.iter().map(|&(_, c)| c).max().unwrap_or(0) + 1;
        let dist = self.joint_distribution(measured, num_clbits)?;
        let counts = sample_distribution(&dist, shots, seed);
        Ok(CountsReport {
            shots,
            seed,
            counts,
            exact_probabilities: Some(dist.into_iter().collect()),
            circuit_digest: String::new(),
        })
    }
}

/// 32-byte ChaCha seed from a run seed and a stream index. Stream 0 is
/// the distribution sampler; trajectory shot `k` uses stream `k + 1`.
pub(crate) fn seed_bytes(seed: u64, stream: u64) -> [u8; 32] {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&stream.to_le_bytes());
    bytes
}

/// Uniform double in [0, 1) from the top 53 bits of the next word, so
/// sampled goldens do not depend on any library's float distribution.
pub(crate) fn next_unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws `shots` outcomes from an exact distribution by inverse CDF over
/// the (already sorted) outcome labels.
pub(crate) fn sample_distribution(
    dist: &[(String, f64)],
    shots: u64,
    seed: u64,
) -> std::collections::BTreeMap<String, u64> {
    let mut rng = ChaCha8Rng::from_seed(seed_bytes(seed, 0));
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..shots {
        let u = next_unit(&mut rng);
        let mut acc = 0.0f64;
        let mut chosen = dist.len() - 1;
        for (idx, (_, p)) in dist.iter().enumerate() {
            acc += p;
            if u < acc {
                chosen = idx;
                break;
            }
        }
        *counts.entry(dist[chosen].0.clone()).or_insert(0) += 1;
    }
    counts
}

/// Expands a single-qubit matrix to the full register by Kronecker
/// products, qubit `n-1` leftmost.
fn expand_single(matrix: &DenseUnitary, qubit: usize, num_qubits: usize) -> DenseUnitary {
    let mut acc = DenseUnitary::identity(1);
    for j in (0..num_qubits).rev() {
        let factor = if j == qubit {
            matrix.clone()
        } else {
            DenseUnitary::identity(2)
        };
        acc = acc.kron(&factor);
    }
    acc
}

/// Expands CNOT as P0⊗I + P1⊗X placed at the control/target positions.
fn expand_cx(control: usize, target: usize, num_qubits: usize) -> DenseUnitary {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let p0 = DenseUnitary::from_rows(&[vec![one, zero], vec![zero, zero]]).unwrap();
    let p1 = DenseUnitary::from_rows(&[vec![zero, zero], vec![zero, one]]).unwrap();
    let x = Gate::X.matrix();
    let mut keep = DenseUnitary::identity(1);
    let mut flip = DenseUnitary::identity(1);
    for j in (0..num_qubits).rev() {
        let keep_factor = if j == control {
            p0.clone()
        } else {
            DenseUnitary::identity(2)
        };
        let flip_factor = if j == control {
            p1.clone()
        } else if j == target {
            x.clone()
        } else {
            DenseUnitary::identity(2)
        };
        keep = keep.kron(&keep_factor);
        flip = flip.kron(&flip_factor);
    }
    keep.add(&flip)
}

/// Embeds a k-qubit dense operator on arbitrary qubit positions (first
/// listed qubit = most significant operator bit).
fn embed_unitary(matrix: &DenseUnitary, qubits: &[usize], num_qubits: usize) -> DenseUnitary {
    let dim = 1usize << num_qubits;
    let k = qubits.len();
    let sub = 1usize << k;
    let mut out = DenseUnitary::zeros(dim);
    for col in 0..dim {
        let mut s_col = 0usize;
        for (m, &q) in qubits.iter().enumerate() {
            s_col |= ((col >> q) & 1) << (k - 1 - m);
        }
        for s_row in 0..sub {
            let v = matrix.get(s_row, s_col);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut row = col;
            for (m, &q) in qubits.iter().enumerate() {
                let bit = (s_row >> (k - 1 - m)) & 1;
                row = (row & !(1 << q)) | (bit << q);
            }
            out.set(row, col, v);
        }
    }
    out
}

/// Brute-force dense unitary of a measurement-free circuit: every
/// instruction expanded to the full dimension and multiplied in
/// instruction order. Barriers are skipped.
pub fn dense_unitary_of(circuit: &Circuit) -> Result<DenseUnitary, Error> {
    let n = circuit.num_qubits();
    if n > MAX_ORACLE_QUBITS {
        return Err(capacity(format!(
            "{n} qubits exceeds the dense oracle cap of {MAX_ORACLE_QUBITS}"
        )));
    }
    circuit.validate()?;
    let mut product = DenseUnitary::identity(1 << n);
    for instruction in circuit.instructions() {
        let expanded = match instruction {
            Instruction::Gate { gate, qubits } => match gate {
                Gate::Cx => expand_cx(qubits[0], qubits[1], n),
                single => expand_single(&single.matrix(), qubits[0], n),
            },
            Instruction::Unitary { matrix, qubits, .. } => embed_unitary(matrix, qubits, n),
            Instruction::Barrier { .. } => continue,
            Instruction::Measure { .. } => {
                return Err(Error::Unsupported(
                    "measurement has no dense unitary".into(),
                ))
            }
        };
        product = expanded.matmul(&product);
    }
    Ok(product)
}
