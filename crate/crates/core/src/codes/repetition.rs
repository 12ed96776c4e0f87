use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;

use super::{ErrorClass, LogicalPair, StabilizerCode, SyndromeCircuit};
use crate::circuit::{Circuit, Element};
use crate::pauli::{Pauli, PauliString};

/// Three-bit repetition code with its two-ancilla parity circuit.
///
/// Data qubits are 0..3, ancillas 3 and 4 measure `Z0Z1` and `Z1Z2`
/// through two CNOTs each.
pub fn repetition3() -> (StabilizerCode, SyndromeCircuit) {
    let n = 3;
    let code = StabilizerCode {
        name: String::from("repetition3"),
        n,
        generators: vec![
            PauliString::from_support(n, [0, 1], Pauli::Z),
            PauliString::from_support(n, [1, 2], Pauli::Z),
        ],
        logicals: vec![LogicalPair {
            x: PauliString::from_support(n, [0, 1, 2], Pauli::X),
            z: PauliString::single(n, 0, Pauli::Z),
        }],
        distance: 3,
        protects: ErrorClass::XOnly,
    };

    let mut c = Circuit::new(5);
    c.set_data_qubits(vec![0, 1, 2]);
    c.push_layer(vec![Element::PrepZ(3), Element::PrepZ(4)]);
    c.push_layer(vec![Element::Cnot { control: 0, target: 3 }, Element::Cnot { control: 1, target: 4 }]);
    c.push_layer(vec![Element::Cnot { control: 1, target: 3 }, Element::Cnot { control: 2, target: 4 }]);
    c.push_layer(vec![Element::MeasureZ { qubit: 3, tag: 0 }, Element::MeasureZ { qubit: 4, tag: 1 }]);

    let generator_of = BTreeMap::from([(0, 0), (1, 1)]);
    (code, SyndromeCircuit { circuit: c, data: vec![0, 1, 2], generator_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{frame_run, FaultSet};
    use crate::codes::LookupDecoder;

    #[test]
    fn shape() {
        let (code, sc) = repetition3();
        assert!(code.check_structure());
        assert_eq!(sc.circuit.cnot_count(), 4);
        assert_eq!(sc.circuit.measurement_tags().len(), 2);
        assert!(sc.circuit.validate_layers() && sc.circuit.is_complete());
    }

    #[test]
    fn lookup_table() {
        let (code, _) = repetition3();
        let dec = LookupDecoder::single_errors(&code);
        assert_eq!(dec.len(), 3);
        for (q, syn) in [(0, [true, false]), (1, [true, true]), (2, [false, true])] {
            let e = PauliString::single(3, q, Pauli::X);
            assert_eq!(code.syndrome(&e), syn);
            assert_eq!(dec.correction(&syn).unwrap(), e);
        }
        assert!(dec.correction(&[false, false]).unwrap().is_identity());
    }

    #[test]
    fn circuit_syndrome_matches_code() {
        let (code, sc) = repetition3();
        // Fault on the idle of data qubit `q` in the prep layer.
        for q in 0..3 {
            let loc = sc.circuit.enumerate_locations().into_iter().find(|l| {
                l.layer == 0 && matches!(sc.circuit.element(l), Element::Idle(x) if *x == q)
            });
            let loc = loc.unwrap();
            let out = frame_run(&sc.circuit, &FaultSet::single(loc.index, PauliString::single(5, q, Pauli::X)))
                .unwrap();
            let outcomes = out.flipped.iter().map(|t| (*t, true)).collect();
            assert_eq!(sc.syndrome_from(&outcomes), code.syndrome(&PauliString::single(3, q, Pauli::X)));
        }
    }
}
