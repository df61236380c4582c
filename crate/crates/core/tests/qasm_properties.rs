//! Property tests for the QASM front end: the parse ∘ print identity over
//! generated circuits, and norm preservation of the engine over generated
//! gate sequences.

use proptest::prelude::*;

use qsim_core::circuit::{Circuit, RegisterDecl};
use qsim_core::gates::Gate;
use qsim_core::qasm;
use qsim_core::statevec::StateVector;

#[derive(Clone, Debug)]
enum Step {
    Single(u8, usize),
    Phase(f64, usize),
    Cx(usize, usize),
    Barrier,
}

fn steps(num_qubits: usize) -> impl Strategy<Value = Step> {
    prop_oneof![
        (0u8..6, 0..num_qubits).prop_map(|(g, q)| Step::Single(g, q)),
        ((-10.0f64..10.0), 0..num_qubits).prop_map(|(t, q)| Step::Phase(t, q)),
        (0..num_qubits, 0..num_qubits).prop_map(|(c, t)| Step::Cx(c, t)),
        Just(Step::Barrier),
    ]
}

fn build(num_qubits: usize, raw: Vec<Step>, measures: bool) -> Circuit {
    let clbits = if measures { num_qubits } else { 0 };
    let mut circuit = Circuit::with_registers(
        vec![RegisterDecl::new("q", num_qubits)],
        if clbits > 0 {
            vec![RegisterDecl::new("c", clbits)]
        } else {
            Vec::new()
        },
    );
    for step in raw {
        match step {
            Step::Single(g, q) => {
                let gate = [Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::S, Gate::T][g as usize];
                circuit.gate(gate, &[q]);
            }
            Step::Phase(theta, q) => circuit.gate(Gate::P(theta), &[q]),
            Step::Cx(c, t) => {
                if c != t {
                    circuit.gate(Gate::Cx, &[c, t]);
                }
            }
            Step::Barrier => {
                let all: Vec<usize> = (0..num_qubits).collect();
                circuit.barrier(&all);
            }
        }
    }
    if measures {
        for q in 0..num_qubits {
            circuit.measure(q, q);
        }
    }
    circuit
}

proptest! {
    #[test]
    fn parse_print_identity(
        num_qubits in 1usize..=5,
        raw in prop::collection::vec(steps(5), 0..30),
        measures: bool,
    ) {
        let raw: Vec<Step> = raw
            .into_iter()
            .map(|s| match s {
                Step::Single(g, q) => Step::Single(g, q % num_qubits),
                Step::Phase(t, q) => Step::Phase(t, q % num_qubits),
                Step::Cx(c, t) => Step::Cx(c % num_qubits, t % num_qubits),
                Step::Barrier => Step::Barrier,
            })
            .collect();
        let circuit = build(num_qubits, raw, measures);
        let printed = qasm::print(&circuit).unwrap();
        let reparsed = qasm::parse(&printed).unwrap();
        prop_assert_eq!(reparsed, circuit);
    }

    #[test]
    fn engine_preserves_the_norm(
        num_qubits in 1usize..=5,
        raw in prop::collection::vec(steps(5), 0..25),
    ) {
        let raw: Vec<Step> = raw
            .into_iter()
            .map(|s| match s {
                Step::Single(g, q) => Step::Single(g, q % num_qubits),
                Step::Phase(t, q) => Step::Phase(t, q % num_qubits),
                Step::Cx(c, t) => Step::Cx(c % num_qubits, t % num_qubits),
                Step::Barrier => Step::Barrier,
            })
            .collect();
        let circuit = build(num_qubits, raw, false);
        let mut state = StateVector::zero(num_qubits).unwrap();
        for instruction in circuit.instructions() {
            match instruction {
                qsim_core::Instruction::Gate { gate, qubits } => {
                    state.apply_gate(*gate, qubits).unwrap();
                }
                _ => continue,
            }
            prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }
}
