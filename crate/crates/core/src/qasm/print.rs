//! Canonical printer. One instruction per line, single spaces, lowercase
//! mnemonics, LF endings; `parse(print(c))` reproduces the IR exactly.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Instruction, RegisterDecl};
use crate::error::Error;
use crate::gates::Gate;

pub fn print(circuit: &Circuit) -> Result<String, Error> {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    for reg in circuit.qregs() {
        out.push_str(&format!("qreg {}[{}];\n", reg.name, reg.size));
    }
    for reg in circuit.cregs() {
        out.push_str(&format!("creg {}[{}];\n", reg.name, reg.size));
    }
    for instruction in circuit.instructions() {
        match instruction {
            Instruction::Gate { gate, qubits } => {
                let refs = qubits
                    .iter()
                    .map(|&q| qubit_ref(circuit.qregs(), q))
                    .collect::<Result<Vec<_>, _>>()?
                    .join(",");
                match gate {
                    Gate::P(theta) => {
                        out.push_str(&format!("u1({}) {refs};\n", format_angle(*theta)))
                    }
                    other => out.push_str(&format!("{} {refs};\n", other.mnemonic())),
                }
            }
            Instruction::Measure { qubit, clbit } => {
                out.push_str(&format!(
                    "measure {} -> {};\n",
                    qubit_ref(circuit.qregs(), *qubit)?,
                    qubit_ref(circuit.cregs(), *clbit)?
                ));
            }
            Instruction::Barrier { qubits } => {
                let refs = qubits
                    .iter()
                    .map(|&q| qubit_ref(circuit.qregs(), q))
                    .collect::<Result<Vec<_>, _>>()?
                    .join(",");
                out.push_str(&format!("barrier {refs};\n"));
            }
            Instruction::Unitary { name, .. } => {
                return Err(Error::Unsupported(format!(
                    "injected operator '{name}' has no QASM form"
                )));
            }
        }
    }
    Ok(out)
}

fn qubit_ref(regs: &[RegisterDecl], flat: usize) -> Result<String, Error> {
    let mut offset = 0usize;
    for reg in regs {
        if flat < offset + reg.size {
            return Ok(format!("{}[{}]", reg.name, flat - offset));
        }
        offset += reg.size;
    }
    Err(Error::Domain(format!(
        "index {flat} not covered by any register declaration"
    )))
}

/// Canonical angle text. Common pi fractions keep their symbolic form;
/// anything else uses the shortest float text, which reparses exactly.
fn format_angle(theta: f64) -> String {
    const SYMBOLIC: [(f64, &str); 6] = [
        (PI, "pi"),
        (PI / 2.0, "pi/2"),
        (PI / 4.0, "pi/4"),
        (-PI, "-pi"),
        (-PI / 2.0, "-pi/2"),
        (-PI / 4.0, "-pi/4"),
    ];
    for (value, text) in SYMBOLIC {
        if theta == value {
            return text.to_string();
        }
    }
    format!("{theta}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_angles_round_trip_through_the_grammar() {
        assert_eq!(format_angle(PI), "pi");
        assert_eq!(format_angle(-PI / 2.0), "-pi/2");
        assert_eq!(format_angle(0.25), "0.25");
        // Shortest-float text reparses to the identical bits.
        let theta = 0.1 + 0.2;
        let text = format_angle(theta);
        assert_eq!(text.parse::<f64>().unwrap(), theta);
    }

    #[test]
    fn flat_indices_map_back_to_declared_registers() {
        let regs = vec![RegisterDecl::new("a", 2), RegisterDecl::new("b", 3)];
        assert_eq!(qubit_ref(&regs, 0).unwrap(), "a[0]");
        assert_eq!(qubit_ref(&regs, 1).unwrap(), "a[1]");
        assert_eq!(qubit_ref(&regs, 2).unwrap(), "b[0]");
        assert_eq!(qubit_ref(&regs, 4).unwrap(), "b[2]");
        assert!(qubit_ref(&regs, 5).is_err());
    }
}
