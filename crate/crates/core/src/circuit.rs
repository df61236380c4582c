//! Circuit intermediate representation and the executor.
//!
//! Measurement collapses the state, so gates placed after a measure act
//! on the post-measurement state. Noiseless execution is exact: when no
//! gate follows a measure the final state's joint distribution is
//! computed directly; otherwise every measurement branch is enumerated
//! with its exact weight. Only noisy runs sample per-shot trajectories.

use sha2::{Digest, Sha256};

use crate::error::{capacity, domain, Error, Violation};
use crate::gates::Gate;
use crate::noise::NoiseModel;
use crate::qasm;
use crate::report::CountsReport;
use crate::statevec::{sample_distribution, StateVector};
use crate::unitary::DenseUnitary;

/// Most measurement branches the exact executor will enumerate.
const MAX_BRANCHES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub enum Instruction {
    Gate {
        gate: Gate,
        qubits: Vec<usize>,
    },
    /// Injected dense operator (Grover oracles and the like). Not
    /// expressible in QASM output. First listed qubit is the operator's
    /// most significant bit.
    Unitary {
        name: String,
        matrix: DenseUnitary,
        qubits: Vec<usize>,
    },
    Measure {
        qubit: usize,
        clbit: usize,
    },
    Barrier {
        qubits: Vec<usize>,
    },
}

/// A named register slice of the flat qubit/clbit index space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterDecl {
    pub name: String,
    pub size: usize,
}

impl RegisterDecl {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        RegisterDecl {
            name: name.into(),
            size,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Circuit {
    /// Free-form label; not part of IR identity.
    pub name: Option<String>,
    num_qubits: usize,
    num_clbits: usize,
    qregs: Vec<RegisterDecl>,
    cregs: Vec<RegisterDecl>,
    instructions: Vec<Instruction>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.num_qubits == other.num_qubits
            && self.num_clbits == other.num_clbits
            && self.qregs == other.qregs
            && self.cregs == other.cregs
            && self.instructions == other.instructions
    }
}

impl Circuit {
    /// Circuit over default registers `q[num_qubits]` / `c[num_clbits]`.
    pub fn new(num_qubits: usize, num_clbits: usize) -> Self {
        let cregs = if num_clbits > 0 {
            vec![RegisterDecl::new("c", num_clbits)]
        } else {
            Vec::new()
        };
        Circuit {
            name: None,
            num_qubits,
            num_clbits,
            qregs: vec![RegisterDecl::new("q", num_qubits)],
            cregs,
            instructions: Vec::new(),
        }
    }

    /// Circuit over explicit register declarations, flattened into one
    /// index space in declaration order.
    pub fn with_registers(qregs: Vec<RegisterDecl>, cregs: Vec<RegisterDecl>) -> Self {
        let num_qubits = qregs.iter().map(|r| r.size).sum();
        let num_clbits = cregs.iter().map(|r| r.size).sum();
        Circuit {
            name: None,
            num_qubits,
            num_clbits,
            qregs,
            cregs,
            instructions: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn qregs(&self) -> &[RegisterDecl] {
        &self.qregs
    }

    pub fn cregs(&self) -> &[RegisterDecl] {
        &self.cregs
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn push(&mut self, instruction: Instruction) {
        self.instructions.push(instruction);
    }

    pub fn gate(&mut self, gate: Gate, qubits: &[usize]) {
        self.push(Instruction::Gate {
            gate,
            qubits: qubits.to_vec(),
        });
    }

    pub fn unitary(&mut self, name: impl Into<String>, matrix: DenseUnitary, qubits: &[usize]) {
        self.push(Instruction::Unitary {
            name: name.into(),
            matrix,
            qubits: qubits.to_vec(),
        });
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize) {
        self.push(Instruction::Measure { qubit, clbit });
    }

    pub fn barrier(&mut self, qubits: &[usize]) {
        self.push(Instruction::Barrier {
            qubits: qubits.to_vec(),
        });
    }

    fn qubit_list_violations(&self, position: usize, qubits: &[usize], out: &mut Vec<Violation>) {
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.num_qubits {
                out.push(Violation::new(
                    position,
                    format!("qubit index {q} out of bounds"),
                ));
            }
            if qubits[..i].contains(&q) {
                out.push(Violation::new(position, format!("duplicate qubit {q}")));
            }
        }
    }

    /// All bound and duplication violations, with instruction positions.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut written_clbits = vec![false; self.num_clbits];
        for (position, instruction) in self.instructions.iter().enumerate() {
            match instruction {
                Instruction::Gate { gate, qubits } => {
                    if qubits.len() != gate.arity() {
                        out.push(Violation::new(
                            position,
                            format!(
                                "gate '{}' expects {} qubit(s), got {}",
                                gate.mnemonic(),
                                gate.arity(),
                                qubits.len()
                            ),
                        ));
                    }
                    self.qubit_list_violations(position, qubits, &mut out);
                }
                Instruction::Unitary { matrix, qubits, name } => {
                    if matrix.dim() != (1usize << qubits.len()) {
                        out.push(Violation::new(
                            position,
                            format!(
                                "operator '{name}' dimension {} does not match {} qubit(s)",
                                matrix.dim(),
                                qubits.len()
                            ),
                        ));
                    }
                    self.qubit_list_violations(position, qubits, &mut out);
                }
                Instruction::Measure { qubit, clbit } => {
                    if *qubit >= self.num_qubits {
                        out.push(Violation::new(
                            position,
                            format!("qubit index {qubit} out of bounds"),
                        ));
                    }
                    if *clbit >= self.num_clbits {
                        out.push(Violation::new(
                            position,
                            format!("clbit index {clbit} out of bounds"),
                        ));
                    } else if written_clbits[*clbit] {
                        out.push(Violation::new(
                            position,
                            format!("clbit {clbit} measured twice"),
                        ));
                    } else {
                        written_clbits[*clbit] = true;
                    }
                }
                Instruction::Barrier { qubits } => {
                    self.qubit_list_violations(position, qubits, &mut out);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Error> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCircuit(violations))
        }
    }

    /// SHA-256 of the canonical QASM text. Circuits containing injected
    /// operators are not QASM-expressible; those hash a canonical binary
    /// description instead.
    pub fn digest(&self) -> String {
        let text = match qasm::print(self) {
            Ok(text) => text,
            Err(_) => self.fallback_description(),
        };
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn fallback_description(&self) -> String {
        let mut out = format!("circuit {} {}\n", self.num_qubits, self.num_clbits);
        for instruction in &self.instructions {
            match instruction {
                Instruction::Gate { gate, qubits } => {
                    out.push_str(&format!("gate {} ", gate.mnemonic()));
                    if let Some(theta) = gate.theta() {
                        out.push_str(&format!("{} ", theta.to_bits()));
                    }
                    out.push_str(&format!("{qubits:?}\n"));
                }
                Instruction::Unitary { name, matrix, qubits } => {
                    out.push_str(&format!("unitary {name} {qubits:?} "));
                    for entry in matrix.entries() {
                        out.push_str(&format!("{:x}{:x}", entry.re.to_bits(), entry.im.to_bits()));
                    }
                    out.push('\n');
                }
                Instruction::Measure { qubit, clbit } => {
                    out.push_str(&format!("measure {qubit} {clbit}\n"));
                }
                Instruction::Barrier { qubits } => {
                    out.push_str(&format!("barrier {qubits:?}\n"));
                }
            }
        }
        out
    }

    /// True when some gate or injected operator appears after a measure.
    fn has_gate_after_measure(&self) -> bool {
        let mut measured = false;
        for instruction in &self.instructions {
            match instruction {
                Instruction::Measure { .. } => measured = true,
                Instruction::Gate { .. } | Instruction::Unitary { .. } if measured => return true,
                _ => {}
            }
        }
        false
    }

    fn measured_pairs(&self) -> Vec<(usize, usize)> {
        self.instructions
            .iter()
            .filter_map(|instruction| match instruction {
                Instruction::Measure { qubit, clbit } => Some((*qubit, *clbit)),
                _ => None,
            })
            .collect()
    }

    /// Exact clbit distribution of the noiseless circuit, as sorted
    /// (bitstring, probability) pairs. Bitstrings are `num_clbits` long,
    /// clbit `k` at position `k` from the right.
    pub fn exact_distribution(&self) -> Result<Vec<(String, f64)>, Error> {
        self.validate()?;
        if self.num_clbits == 0 {
            return Err(domain("circuit has no classical bits to report"));
        }
        if !self.has_gate_after_measure() {
            // Fast path: measures commute to the end untouched.
            let mut state = StateVector::zero(self.num_qubits)?;
            for instruction in &self.instructions {
                if matches!(instruction, Instruction::Measure { .. }) {
                    continue;
                }
                apply_instruction(&mut state, instruction)?;
            }
            return state.joint_distribution(&self.measured_pairs(), self.num_clbits);
        }
        // Gates act on post-measurement states: enumerate measurement
        // branches with exact weights.
        let mut branches: Vec<(StateVector, f64, Vec<bool>)> = vec![(
            StateVector::zero(self.num_qubits)?,
            1.0,
            vec![false; self.num_clbits],
        )];
        for instruction in &self.instructions {
            match instruction {
                Instruction::Measure { qubit, clbit } => {
                    let mut next = Vec::with_capacity(branches.len() * 2);
                    for (state, weight, bits) in branches {
                        let p_one = state.probability_one(*qubit);
                        for outcome in [false, true] {
                            let p = if outcome { p_one } else { 1.0 - p_one };
                            if p <= 1e-15 {
                                continue;
                            }
                            let mut collapsed = state.clone();
                            collapsed.collapse(*qubit, outcome);
                            let mut recorded = bits.clone();
                            recorded[*clbit] = outcome;
                            next.push((collapsed, weight * p, recorded));
                        }
                    }
                    branches = next;
                    if branches.len() > MAX_BRANCHES {
                        return Err(capacity(
                            "too many measurement branches for exact execution",
                        ));
                    }
                }
                other => {
                    for (state, _, _) in &mut branches {
                        apply_instruction(state, other)?;
                    }
                }
            }
        }
        let mut dist = std::collections::BTreeMap::<String, f64>::new();
        for (_, weight, bits) in branches {
            let label: String = bits
                .iter()
                .rev()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            *dist.entry(label).or_insert(0.0) += weight;
        }
        Ok(dist.into_iter().collect())
    }

    /// Runs the circuit: exact distribution plus seeded sampling when
    /// noiseless, per-shot trajectories when a non-zero noise model is
    /// given. Pure function of (circuit, shots, seed, noise).
    pub fn execute(
        &self,
        shots: u64,
        seed: u64,
        noise: Option<&NoiseModel>,
    ) -> Result<CountsReport, Error> {
        if shots == 0 {
            return Err(domain("shots must be at least 1"));
        }
        if let Some(model) = noise {
            model.validate()?;
            if !model.is_zero() {
                return crate::noise::apply_noisy_execution(self, model, shots, seed);
            }
        }
        let dist = self.exact_distribution()?;
        let counts = sample_distribution(&dist, shots, seed);
        Ok(CountsReport {
            shots,
            seed,
            counts,
            exact_probabilities: Some(dist.into_iter().collect()),
            circuit_digest: self.digest(),
        })
    }
}

pub(crate) fn apply_instruction(
    state: &mut StateVector,
    instruction: &Instruction,
) -> Result<(), Error> {
    match instruction {
        Instruction::Gate { gate, qubits } => state.apply_gate(*gate, qubits),
        Instruction::Unitary { matrix, qubits, .. } => state.apply_unitary(matrix, qubits),
        Instruction::Barrier { .. } => Ok(()),
        Instruction::Measure { .. } => Err(Error::Unsupported(
            "measurement cannot be applied as a unitary".into(),
        )),
    }
}
