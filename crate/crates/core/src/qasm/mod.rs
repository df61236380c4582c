//! OpenQASM 2.0 subset front end: a hand-rolled lexer, a single-pass
//! recursive-descent parser, and a canonical printer.
//!
//! The accepted subset is the header, an optional `include "qelib1.inc";`
//! (recognized, never read from disk — the gate set is built in), `qreg`
//! and `creg` declarations, gate statements over x/y/z/h/s/sdg/t/tdg/id/
//! u1(θ)/cx, indexed `measure q[i] -> c[j];`, and `barrier`. Multiple
//! registers are flattened into one index space in declaration order.

mod lex;
mod parse;
mod print;

use std::fmt;

pub use parse::parse;
pub use print::print;

/// 1-based line/column of a source token.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// A rejected program, pointing inside the offending token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: SourcePosition,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(
        position: SourcePosition,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        ParseError {
            position,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Instruction, RegisterDecl};
    use crate::gates::Gate;

    const REFERENCE_LISTING: &str = include_str!("../../tests/fixtures/reference_listing.qasm");

    #[test]
    fn parses_the_reference_listing() {
        let circuit = parse(REFERENCE_LISTING).unwrap();
        assert_eq!(circuit.num_qubits(), 4);
        assert_eq!(circuit.num_clbits(), 2);
        assert_eq!(circuit.instructions().len(), 11);
        let kinds: Vec<&str> = circuit
            .instructions()
            .iter()
            .map(|i| match i {
                Instruction::Gate { gate, .. } => gate.mnemonic(),
                Instruction::Measure { .. } => "measure",
                Instruction::Barrier { .. } => "barrier",
                Instruction::Unitary { .. } => "unitary",
            })
            .collect();
        assert_eq!(
            kinds,
            ["x", "h", "h", "h", "h", "cx", "cx", "measure", "measure", "z", "z"]
        );
    }

    #[test]
    fn reference_listing_round_trips_textually() {
        let circuit = parse(REFERENCE_LISTING).unwrap();
        let printed = print(&circuit).unwrap();
        let normalized: String = REFERENCE_LISTING.replace("\r\n", "\n");
        assert_eq!(printed, normalized);
    }

    #[test]
    fn header_and_declarations_make_an_empty_circuit() {
        let circuit = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[2];\n")
            .unwrap();
        assert_eq!(circuit.num_qubits(), 3);
        assert_eq!(circuit.num_clbits(), 2);
        assert!(circuit.instructions().is_empty());
    }

    #[test]
    fn unknown_gate_is_positioned() {
        let err = parse("OPENQASM 2.0;\nqreg q[1];\nhx q[0];\n").unwrap_err();
        assert_eq!(err.position.line, 3);
        assert_eq!(err.position.column, 1);
        assert!(err.found.contains("hx"));
    }

    #[test]
    fn missing_semicolon_is_positioned() {
        let err = parse("OPENQASM 2.0;\nqreg q[1];\nx q[0]\nh q[0];\n").unwrap_err();
        assert_eq!(err.position.line, 4);
        assert!(err.expected.contains(";"));
    }

    #[test]
    fn multiple_registers_flatten_in_declaration_order() {
        let source = "OPENQASM 2.0;\nqreg a[2];\nqreg b[2];\ncreg m[2];\nx b[1];\nmeasure b[1] -> m[0];\n";
        let circuit = parse(source).unwrap();
        assert_eq!(circuit.num_qubits(), 4);
        match &circuit.instructions()[0] {
            Instruction::Gate { gate: Gate::X, qubits } => assert_eq!(qubits, &vec![3]),
            other => panic!("unexpected {other:?}"),
        }
        match &circuit.instructions()[1] {
            Instruction::Measure { qubit, clbit } => {
                assert_eq!(*qubit, 3);
                assert_eq!(*clbit, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pi_expressions_evaluate() {
        let source = "OPENQASM 2.0;\nqreg q[1];\nu1(pi) q[0];\nu1(pi/2) q[0];\nu1(3*pi/4) q[0];\nu1(-pi/4) q[0];\nu1(0.25) q[0];\nu1(2) q[0];\n";
        let circuit = parse(source).unwrap();
        let thetas: Vec<f64> = circuit
            .instructions()
            .iter()
            .map(|i| match i {
                Instruction::Gate { gate: Gate::P(t), .. } => *t,
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        use std::f64::consts::PI;
        assert_eq!(thetas[0], PI);
        assert_eq!(thetas[1], PI / 2.0);
        assert_eq!(thetas[2], 3.0 * PI / 4.0);
        assert_eq!(thetas[3], -PI / 4.0);
        assert_eq!(thetas[4], 0.25);
        assert_eq!(thetas[5], 2.0);
    }

    #[test]
    fn sdg_and_tdg_become_phase_gates() {
        let circuit = parse("OPENQASM 2.0;\nqreg q[1];\nsdg q[0];\ntdg q[0];\n").unwrap();
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
        match circuit.instructions() {
            [Instruction::Gate { gate: Gate::P(a), .. }, Instruction::Gate { gate: Gate::P(b), .. }] => {
                assert_eq!(*a, -FRAC_PI_2);
                assert_eq!(*b, -FRAC_PI_4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_crlf_are_accepted() {
        let source = "// leading comment\r\nOPENQASM 2.0; // trailing\r\nqreg q[2];\r\nh q[0]; // gate\r\ncx q[0],q[1];\r\n";
        let circuit = parse(source).unwrap();
        assert_eq!(circuit.instructions().len(), 2);
    }

    #[test]
    fn barrier_accepts_whole_register_and_indices() {
        let circuit =
            parse("OPENQASM 2.0;\nqreg q[3];\nbarrier q;\nbarrier q[0],q[2];\n").unwrap();
        match &circuit.instructions()[0] {
            Instruction::Barrier { qubits } => assert_eq!(qubits, &vec![0, 1, 2]),
            other => panic!("unexpected {other:?}"),
        }
        match &circuit.instructions()[1] {
            Instruction::Barrier { qubits } => assert_eq!(qubits, &vec![0, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn register_index_out_of_range_is_a_parse_error() {
        let err = parse("OPENQASM 2.0;\nqreg q[2];\nx q[5];\n").unwrap_err();
        assert_eq!(err.position.line, 3);
        assert!(err.found.contains("5"));
    }

    #[test]
    fn redeclaration_is_rejected() {
        let err = parse("OPENQASM 2.0;\nqreg q[2];\nqreg q[3];\n").unwrap_err();
        assert_eq!(err.position.line, 3);
    }

    #[test]
    fn wrong_version_is_rejected() {
        let err = parse("OPENQASM 3.0;\nqreg q[1];\n").unwrap_err();
        assert_eq!(err.position.line, 1);
        assert!(err.expected.contains("2.0"));
    }

    #[test]
    fn unsupported_include_is_rejected() {
        let err = parse("OPENQASM 2.0;\ninclude \"other.inc\";\n").unwrap_err();
        assert!(err.found.contains("other.inc"));
    }

    #[test]
    fn empty_one_qubit_circuit_prints_three_lines() {
        let circuit = Circuit::new(1, 0);
        let printed = print(&circuit).unwrap();
        assert_eq!(printed, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n");
    }

    #[test]
    fn printing_injected_operators_is_an_unsupported_export() {
        use crate::unitary::DenseUnitary;
        let mut circuit = Circuit::new(1, 0);
        circuit.unitary("oracle", DenseUnitary::identity(2), &[0]);
        assert!(matches!(
            print(&circuit),
            Err(crate::error::Error::Unsupported(_))
        ));
    }

    #[test]
    fn canonical_print_round_trips_ir() {
        let mut circuit = Circuit::with_registers(
            vec![RegisterDecl::new("q", 3)],
            vec![RegisterDecl::new("c", 2)],
        );
        circuit.gate(Gate::H, &[0]);
        circuit.gate(Gate::P(0.7234), &[1]);
        circuit.gate(Gate::P(std::f64::consts::PI / 2.0), &[2]);
        circuit.gate(Gate::Cx, &[2, 0]);
        circuit.barrier(&[0, 1, 2]);
        circuit.measure(0, 0);
        circuit.measure(2, 1);
        let printed = print(&circuit).unwrap();
        let reparsed = parse(&printed).unwrap();
        assert_eq!(reparsed, circuit);
    }
}
