use std::collections::BTreeMap;

use cpa_core::algebra::{associativity_residuals, change_of_basis, compatibility_residuals};
use cpa_core::catalog::load_builtin_catalog;
use cpa_core::invariants::{build_system, solve, InvariantKind};
use cpa_core::kernel::{rat, Field};
use cpa_core::{AlgebraPair, Matrix, Product, Rational};
use proptest::prelude::*;

fn rational_pairs(max_dim: usize) -> Vec<AlgebraPair<Rational>> {
    load_builtin_catalog()
        .unwrap()
        .into_iter()
        .filter(|e| e.pair.dim() <= max_dim)
        .map(|e| {
            let p = &e.pair;
            if p.is_parametric() {
                let a: BTreeMap<String, Rational> = p.vars().names().iter().map(|n| (n.clone(), rat(2))).collect();
                p.specialize(&a).unwrap()
            } else {
                p.to_rational().unwrap()
            }
        })
        .collect()
}

#[test]
fn computed_spaces_satisfy_their_systems() {
    for p in rational_pairs(3) {
        for k in InvariantKind::ALL {
            let sys = build_system(k, &p);
            for b in &solve(k, &p).span.basis {
                assert!(sys.residuals(b).iter().all(Field::is_zero), "{} {k}", p.name);
            }
        }
    }
}

#[test]
fn derivations_closed_under_commutator() {
    for p in rational_pairs(3) {
        let sp = solve(InvariantKind::Derivation, &p);
        let basis: Vec<Matrix<Rational>> = sp.basis().into_iter().map(|mut b| b.remove(0)).collect();
        for a in &basis {
            for b in &basis {
                let c = a.mul(b).sub(&b.mul(a));
                assert!(sp.membership(&[c]), "{}", p.name);
            }
        }
    }
}

#[test]
fn centroids_closed_under_composition() {
    for p in rational_pairs(3) {
        let sp = solve(InvariantKind::Centroid, &p);
        let basis: Vec<Matrix<Rational>> = sp.basis().into_iter().map(|mut b| b.remove(0)).collect();
        for a in &basis {
            for b in &basis {
                assert!(sp.membership(&[a.mul(b)]), "{}", p.name);
            }
        }
    }
}

#[test]
fn self_pairs_of_associative_algebras_are_compatible() {
    for p in rational_pairs(4) {
        for w in Product::BOTH {
            if associativity_residuals(p.tensor(w)).iter().all(Field::is_zero) {
                assert!(compatibility_residuals(&p.self_pair(w)).iter().all(Field::is_zero), "{}", p.name);
            }
        }
    }
}

fn invertible() -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-2i64..=2, 9)
        .prop_map(|v| Matrix::from_rows(v.chunks(3).map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap())
        .prop_filter("singular", |m| !m.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn change_of_basis_preserves_everything(m in invertible(), which in 0usize..3) {
        let p = rational_pairs(3).into_iter().filter(|p| p.dim() == 3).nth(which).unwrap();
        let q = change_of_basis(&p, &m).unwrap();
        let zero = |v: Vec<Rational>| v.iter().all(Field::is_zero);
        prop_assert_eq!(zero(compatibility_residuals(&p)), zero(compatibility_residuals(&q)));
        for k in InvariantKind::ALL {
            prop_assert_eq!(solve(k, &p).freedim(), solve(k, &q).freedim(), "{}", k);
        }
        // Derivations transport by conjugation.
        let inv = m.inverse().unwrap();
        let dq = solve(InvariantKind::Derivation, &q);
        for mut b in solve(InvariantKind::Derivation, &p).basis() {
            let d = b.remove(0);
            prop_assert!(dq.membership(&[inv.mul(&d).mul(&m)]));
        }
    }
}
