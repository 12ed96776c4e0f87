use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use surfacelab_core::pauli::{conjugate_through_gate, CliffordGate, Pauli, PauliString};
use surfacelab_core::tableau::StabilizerTableau;

fn letters(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Pauli>> {
    prop::collection::vec(prop::sample::select(Pauli::ALL.to_vec()), n)
}

fn pair() -> impl Strategy<Value = (PauliString, PauliString)> {
    (1usize..150).prop_flat_map(|n| (letters(n..n + 1), letters(n..n + 1)))
        .prop_map(|(a, b)| (PauliString::from_letters(&a), PauliString::from_letters(&b)))
}

/// Letter product ignoring phase, from the multiplication table.
fn product_letter(a: Pauli, b: Pauli) -> Pauli {
    use Pauli::*;
    match (a, b) {
        (I, p) | (p, I) => p,
        (p, q) if p == q => I,
        (X, Y) | (Y, X) => Z,
        (Y, Z) | (Z, Y) => X,
        _ => Y,
    }
}

#[derive(Debug, Clone)]
enum Gate {
    H(usize),
    Cnot(usize, usize),
}

fn circuit(n: usize) -> impl Strategy<Value = Vec<Gate>> {
    let gate = prop_oneof![
        (0..n).prop_map(Gate::H),
        (0..n, 1..n).prop_map(move |(c, off)| Gate::Cnot(c, (c + off) % n)),
    ];
    prop::collection::vec(gate, 0..40)
}

proptest! {
    #[test]
    fn commutation_counts_differing_positions((a, b) in pair()) {
        let clashes = (0..a.num_qubits())
            .filter(|&q| a.get(q) != Pauli::I && b.get(q) != Pauli::I && a.get(q) != b.get(q))
            .count();
        prop_assert_eq!(a.commutes(&b).unwrap(), clashes % 2 == 0);
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }

    #[test]
    fn products_follow_the_letter_table((a, b) in pair()) {
        let ab = a.multiply(&b).unwrap();
        for q in 0..a.num_qubits() {
            prop_assert_eq!(ab.get(q), product_letter(a.get(q), b.get(q)));
        }
        prop_assert!(ab.multiply(&b).unwrap().same_letters(&a));
    }

    #[test]
    fn conjugation_is_an_involution((a, _) in pair(), c in 0usize..150, t in 0usize..150) {
        let n = a.num_qubits();
        prop_assume!(n >= 2);
        let (c, t) = (c % n, t % n);
        prop_assume!(c != t);
        let once = conjugate_through_gate(&a, CliffordGate::Cnot, &[c, t]).unwrap();
        let mut manual = a.clone();
        manual.apply_cnot(c, t);
        prop_assert_eq!(&once, &manual);
        prop_assert_eq!(conjugate_through_gate(&once, CliffordGate::Cnot, &[c, t]).unwrap(), a.clone());
        let mut h = a.clone();
        h.apply_h(c);
        h.apply_h(c);
        prop_assert_eq!(h, a);
    }

    /// Heisenberg-evolved `Z_i` must stabilize the tableau's state.
    #[test]
    fn conjugation_agrees_with_the_tableau(gates in circuit(6)) {
        let n = 6;
        let mut t = StabilizerTableau::new(n).unwrap();
        let mut stabs: Vec<PauliString> = (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect();
        for g in &gates {
            match *g {
                Gate::H(q) => {
                    t.h(q).unwrap();
                    stabs.iter_mut().for_each(|s| s.apply_h(q));
                }
                Gate::Cnot(c, tg) => {
                    t.cnot(c, tg).unwrap();
                    stabs.iter_mut().for_each(|s| s.apply_cnot(c, tg));
                }
            }
        }
        for s in &stabs {
            prop_assert!(t.is_stabilized_by(s).unwrap(), "{}", s);
        }
        // Measuring a stabilizer letter-for-letter is then deterministic.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut probe = t.clone();
        for q in 0..n {
            if stabs.iter().any(|s| s.weight() == 1 && s.get(q) == Pauli::Z) {
                prop_assert!(probe.measure_z(q, &mut rng).unwrap().1);
            }
        }
    }
}
