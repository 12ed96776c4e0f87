use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{ErrorClass, LogicalPair, LookupDecoder, StabilizerCode, SyndromeCircuit};
use crate::circuit::{frame_run, Circuit, Element, FaultLocation, FaultSet, MeasTag};
use crate::decoder::{judge, Outcome};
use crate::error::Result;
use crate::pauli::{Pauli, PauliString};
use crate::tableau::{tableau_run, StabilizerTableau};

/// Rows of the [7,4] Hamming parity-check matrix, as 0-based qubit sets.
pub const HAMMING_ROWS: [[usize; 4]; 3] = [[3, 4, 5, 6], [1, 2, 5, 6], [0, 2, 4, 6]];

/// Steane's seven-qubit code together with its syndrome circuit.
#[derive(Debug, Clone)]
pub struct SteaneBundle {
    pub code: StabilizerCode,
    /// Seven data qubits (0..7), six ancillas: 7..10 read the X checks,
    /// 10..13 the Z checks.
    pub syndrome: SyndromeCircuit,
}

/// Builds the code and its non-fault-tolerant extraction circuit: each
/// check uses one bare ancilla coupled to four data qubits.
pub fn steane7() -> SteaneBundle {
    let n = 7;
    let mut generators = Vec::new();
    for letter in [Pauli::X, Pauli::Z] {
        for row in HAMMING_ROWS {
            generators.push(PauliString::from_support(n, row, letter));
        }
    }
    let code = StabilizerCode {
        name: String::from("steane7"),
        n,
        generators,
        logicals: vec![LogicalPair {
            x: PauliString::from_support(n, 0..n, Pauli::X),
            z: PauliString::from_support(n, 0..n, Pauli::Z),
        }],
        distance: 3,
        protects: ErrorClass::All,
    };

    let x_anc = [7, 8, 9];
    let z_anc = [10, 11, 12];
    let mut cnots = Vec::new();
    for (row, &a) in HAMMING_ROWS.iter().zip(&x_anc) {
        cnots.extend(row.iter().map(|&d| (a, d)));
    }
    for (row, &a) in HAMMING_ROWS.iter().zip(&z_anc) {
        cnots.extend(row.iter().map(|&d| (d, a)));
    }

    let mut c = Circuit::new(13);
    c.set_data_qubits((0..7).collect());
    c.push_layer(x_anc.iter().chain(&z_anc).map(|&a| Element::PrepZ(a)).collect());
    c.push_layer(x_anc.iter().map(|&a| Element::H(a)).collect());
    for layer in greedy_layers(&cnots, 13) {
        c.push_layer(layer);
    }
    c.push_layer(x_anc.iter().map(|&a| Element::H(a)).collect());
    let mut generator_of = BTreeMap::new();
    let mut meas = Vec::new();
    for (g, &a) in x_anc.iter().chain(&z_anc).enumerate() {
        let tag = g as MeasTag;
        meas.push(Element::MeasureZ { qubit: a, tag });
        generator_of.insert(tag, g);
    }
    c.push_layer(meas);

    SteaneBundle { code, syndrome: SyndromeCircuit { circuit: c, data: (0..7).collect(), generator_of } }
}

/// Packs CNOTs into layers in the given order: each gate goes into the
/// earliest layer after every earlier gate on its qubits.
fn greedy_layers(cnots: &[(usize, usize)], n: usize) -> Vec<Vec<Element>> {
    let mut next_free = vec![0usize; n];
    let mut layers: Vec<Vec<Element>> = Vec::new();
    for &(control, target) in cnots {
        let at = next_free[control].max(next_free[target]);
        if layers.len() <= at {
            layers.resize_with(at + 1, Vec::new);
        }
        layers[at].push(Element::Cnot { control, target });
        next_free[control] = at + 1;
        next_free[target] = at + 1;
    }
    layers
}

/// Unitary encoder taking `|0000000>` to logical `|0>`.
pub fn steane_encoder() -> Circuit {
    let mut c = Circuit::new(7);
    c.set_data_qubits((0..7).collect());
    // Pivot qubits 3, 1, 0 each appear in exactly one Hamming row.
    let pivots = [3, 1, 0];
    c.push_layer(pivots.iter().map(|&q| Element::H(q)).collect());
    let mut cnots = Vec::new();
    for (row, &p) in HAMMING_ROWS.iter().zip(&pivots) {
        cnots.extend(row.iter().filter(|&&q| q != p).map(|&q| (p, q)));
    }
    for layer in greedy_layers(&cnots, 7) {
        c.push_layer(layer);
    }
    c
}

/// Logical CNOT between two seven-qubit blocks (control 0..7, target
/// 7..14) as seven independent physical CNOTs.
pub fn transversal_cnot() -> Circuit {
    let mut c = Circuit::new(14);
    c.set_data_qubits((0..14).collect());
    c.push_layer((0..7).map(|q| Element::Cnot { control: q, target: q + 7 }).collect());
    c
}

/// Logical `|0>` on qubits 0..7 of the 13-qubit syndrome register, with
/// the six ancillas in `|0>`.
pub fn encoded_register() -> Result<StabilizerTableau> {
    let mut t = StabilizerTableau::new(13)?;
    for layer in steane_encoder().layers() {
        for e in &layer.elements {
            match *e {
                Element::H(q) => t.h(q)?,
                Element::Cnot { control, target } => t.cnot(control, target)?,
                _ => {}
            }
        }
    }
    Ok(t)
}

/// Syndrome read by the extraction circuit, on the exact simulator, after
/// applying `error` (seven qubits) to the encoded register.
pub fn measured_syndrome(bundle: &SteaneBundle, error: &PauliString) -> Result<Vec<bool>> {
    let mut t = encoded_register()?;
    t.apply_pauli(&error.embed(13, &bundle.syndrome.data))?;
    let run = tableau_run(&t, &bundle.syndrome.circuit, 0)?;
    Ok(bundle.syndrome.syndrome_from(&run.outcomes))
}

/// A single circuit fault that leaves a data error of weight two or more
/// which one ideal correction round turns into a logical error.
#[derive(Debug, Clone)]
pub struct MalignantFault {
    pub location: FaultLocation,
    pub pauli: PauliString,
    pub data_error: PauliString,
    pub outcome: Outcome,
}

/// Injects every non-identity Pauli at every location of the extraction
/// circuit and keeps the malignant ones.
pub fn malignant_single_faults(bundle: &SteaneBundle) -> Result<Vec<MalignantFault>> {
    let c = &bundle.syndrome.circuit;
    let dec = LookupDecoder::single_errors(&bundle.code);
    let mut out = Vec::new();
    for loc in c.enumerate_locations() {
        let support = c.element(&loc).qubit_list();
        let choices = 4usize.pow(support.len() as u32);
        for code in 1..choices {
            let mut pauli = PauliString::identity(c.num_qubits());
            for (i, &q) in support.iter().enumerate() {
                pauli.set(q, Pauli::ALL[(code >> (2 * i)) & 3]);
            }
            let run = frame_run(c, &FaultSet::single(loc.index, pauli.clone()))?;
            let data_error = run.residual.restrict(&bundle.syndrome.data);
            if data_error.weight() < 2 {
                continue;
            }
            let Some(fix) = dec.correction(&bundle.code.syndrome(&data_error)) else { continue };
            let outcome = judge(&fix, &data_error, &bundle.code)?;
            if outcome != Outcome::Success {
                out.push(MalignantFault { location: loc.clone(), pauli, data_error, outcome });
            }
        }
    }
    Ok(out)
}
