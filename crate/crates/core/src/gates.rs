//! The simulator's gate set: names, arities, and exact unitary matrices.
//!
//! Two-qubit matrices are indexed with the first listed qubit as the most
//! significant bit of the matrix row/column, i.e. `CNOT` rows and columns
//! run |control target⟩ = |00⟩, |01⟩, |10⟩, |11⟩.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::error::{domain, Error};
use crate::unitary::DenseUnitary;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    /// Phase shift diag(1, e^{iθ}); θ = π, π/2, π/4 give Z, S, T.
    P(f64),
    /// Controlled NOT; first qubit is the control.
    Cx,
}

impl Gate {
    pub fn arity(&self) -> usize {
        match self {
            Gate::Cx => 2,
            _ => 1,
        }
    }

    /// QASM mnemonic for this gate (the phase gate is spelled `u1`).
    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::I => "id",
            Gate::X => "x",
            Gate::Y => "y",
            Gate::Z => "z",
            Gate::H => "h",
            Gate::S => "s",
            Gate::T => "t",
            Gate::P(_) => "u1",
            Gate::Cx => "cx",
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match self {
            Gate::P(theta) => Some(*theta),
            _ => None,
        }
    }

    /// Looks up a gate by mnemonic. `theta` must be given exactly for
    /// `u1` and for nothing else; `sdg`/`tdg` resolve to phase gates.
    pub fn from_mnemonic(name: &str, theta: Option<f64>) -> Result<Gate, Error> {
        let gate = match name {
            "id" => Gate::I,
            "x" => Gate::X,
            "y" => Gate::Y,
            "z" => Gate::Z,
            "h" => Gate::H,
            "s" => Gate::S,
            "t" => Gate::T,
            "sdg" => Gate::P(-FRAC_PI_2),
            "tdg" => Gate::P(-FRAC_PI_4),
            "cx" | "cnot" => Gate::Cx,
            "u1" | "p" => {
                return match theta {
                    Some(t) => Ok(Gate::P(t)),
                    None => Err(domain(format!("gate '{name}' requires an angle"))),
                }
            }
            other => return Err(domain(format!("unknown gate '{other}'"))),
        };
        if theta.is_some() {
            return Err(domain(format!("gate '{name}' takes no angle")));
        }
        Ok(gate)
    }

    /// The canonical matrix. 2x2 for single-qubit gates, 4x4 for `cx`.
    pub fn matrix(&self) -> DenseUnitary {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let rows: Vec<Vec<Complex64>> = match self {
            Gate::I => vec![vec![one, zero], vec![zero, one]],
            Gate::X => vec![vec![zero, one], vec![one, zero]],
            Gate::Y => vec![vec![zero, -i], vec![i, zero]],
            Gate::Z => vec![vec![one, zero], vec![zero, -one]],
            Gate::H => vec![vec![h, h], vec![h, -h]],
            Gate::S => vec![vec![one, zero], vec![zero, i]],
            Gate::T => vec![vec![one, zero], vec![zero, Complex64::from_polar(1.0, FRAC_PI_4)]],
            Gate::P(theta) => vec![vec![one, zero], vec![zero, Complex64::from_polar(1.0, *theta)]],
            Gate::Cx => vec![
                vec![one, zero, zero, zero],
                vec![zero, one, zero, zero],
                vec![zero, zero, zero, one],
                vec![zero, zero, one, zero],
            ],
        };
        DenseUnitary::from_rows(&rows).expect("gate matrices are square")
    }
}

/// The matrix of the named gate; `theta` is required exactly when the
/// name is the phase gate.
pub fn matrix_of(name: &str, theta: Option<f64>) -> Result<DenseUnitary, Error> {
    Ok(Gate::from_mnemonic(name, theta)?.matrix())
}

/// Product of a gate sequence in application order (the first element is
/// applied first, so it sits rightmost in the matrix product).
pub fn sequence_product(seq: &[Gate]) -> Result<DenseUnitary, Error> {
    let arity = match seq.first() {
        Some(g) => g.arity(),
        None => return Err(domain("empty gate sequence")),
    };
    if seq.iter().any(|g| g.arity() != arity) {
        return Err(domain("mixed arities in gate sequence"));
    }
    let mut product = DenseUnitary::identity(1 << arity);
    for gate in seq {
        product = gate.matrix().matmul(&product);
    }
    Ok(product)
}

/// True when two gate sequences multiply out to the same unitary up to a
/// global phase, within `tol` element-wise.
pub fn decompose_identity_check(lhs: &[Gate], rhs: &[Gate], tol: f64) -> Result<bool, Error> {
    let left = sequence_product(lhs)?;
    let right = sequence_product(rhs)?;
    if left.dim() != right.dim() {
        return Err(domain("gate sequences act on different arities"));
    }
    Ok(left.phase_aligned_diff(&right) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    #[test]
    fn x_matrix_is_the_bit_flip() {
        let x = matrix_of("x", None).unwrap();
        assert_eq!(x.get(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(x.get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(x.get(0, 0), Complex64::new(0.0, 0.0));
        // X|0⟩ = |1⟩
        let applied = x.mul_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert_eq!(applied[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn y_action_follows_the_canonical_matrix() {
        // Y|0⟩ = i|1⟩ and Y|1⟩ = −i|0⟩.
        let y = Gate::Y.matrix();
        let from_zero = y.mul_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!((from_zero[1] - Complex64::new(0.0, 1.0)).norm() <= TOL);
        let from_one = y.mul_state(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!((from_one[0] - Complex64::new(0.0, -1.0)).norm() <= TOL);
    }

    #[test]
    fn phase_gate_at_pi_is_z_exactly() {
        let p = matrix_of("u1", Some(PI)).unwrap();
        let z = matrix_of("z", None).unwrap();
        assert!(p.max_abs_diff(&z) <= TOL);
    }

    #[test]
    fn phase_family_specializations() {
        assert!(Gate::P(FRAC_PI_2).matrix().max_abs_diff(&Gate::S.matrix()) <= TOL);
        assert!(Gate::P(FRAC_PI_4).matrix().max_abs_diff(&Gate::T.matrix()) <= TOL);
    }

    #[test]
    fn all_matrices_are_unitary() {
        let gates = [
            Gate::I,
            Gate::X,
            Gate::Y,
            Gate::Z,
            Gate::H,
            Gate::S,
            Gate::T,
            Gate::P(0.37),
            Gate::Cx,
        ];
        for gate in gates {
            assert!(
                gate.matrix().max_unitarity_deviation() <= TOL,
                "{gate:?} failed unitarity"
            );
        }
    }

    #[test]
    fn h_is_self_inverse() {
        let h = Gate::H.matrix();
        let product = h.matmul(&h);
        assert!(product.max_abs_diff(&DenseUnitary::identity(2)) <= TOL);
    }

    #[test]
    fn gate_algebra_identities() {
        assert!(decompose_identity_check(&[Gate::H, Gate::Z, Gate::H], &[Gate::X], 1e-10).unwrap());
        assert!(decompose_identity_check(&[Gate::H, Gate::X, Gate::H], &[Gate::Z], 1e-10).unwrap());
        assert!(decompose_identity_check(&[Gate::S, Gate::S], &[Gate::Z], 1e-10).unwrap());
        assert!(decompose_identity_check(&[Gate::T, Gate::T], &[Gate::S], 1e-10).unwrap());
        assert!(decompose_identity_check(
            &[Gate::T, Gate::T, Gate::T, Gate::T],
            &[Gate::Z],
            1e-10
        )
        .unwrap());
        // HXH = Z, not X.
        assert!(!decompose_identity_check(&[Gate::H, Gate::X, Gate::H], &[Gate::X], 1e-10).unwrap());
    }

    #[test]
    fn identity_check_rejects_arity_mismatch() {
        let err = decompose_identity_check(&[Gate::Cx], &[Gate::X], 1e-10);
        assert!(err.is_err());
    }

    #[test]
    fn mnemonic_lookup_errors() {
        assert!(matches!(Gate::from_mnemonic("hx", None), Err(Error::Domain(_))));
        assert!(matches!(Gate::from_mnemonic("u1", None), Err(Error::Domain(_))));
        assert!(matches!(
            Gate::from_mnemonic("x", Some(1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn dagger_mnemonics_resolve_to_phase_gates() {
        let sdg = Gate::from_mnemonic("sdg", None).unwrap();
        let s = Gate::S.matrix();
        assert!(sdg.matrix().max_abs_diff(&s.dagger()) <= TOL);
        let tdg = Gate::from_mnemonic("tdg", None).unwrap();
        assert!(tdg.matrix().max_abs_diff(&Gate::T.matrix().dagger()) <= TOL);
    }
}
