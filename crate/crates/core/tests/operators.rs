use cpa_core::catalog::load_builtin_catalog;
use cpa_core::invariants::{solve, InvariantKind};
use cpa_core::kernel::Vars;
use cpa_core::operators::{
    ansatz_constraints, exhaustive_solutions_mod_p, verify_family, FamilyKind, OperatorKind, ParamMatrix, Verdict, DEFAULT_LIMIT,
};
use cpa_core::{AlgebraPair, RatFunc};

fn d2() -> AlgebraPair<RatFunc> {
    load_builtin_catalog().unwrap().into_iter().find(|e| e.pair.dim() == 2).unwrap().pair
}

fn family(rows: &[[&str; 2]], params: &[&str]) -> ParamMatrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    ParamMatrix::parse(&rows, &params, &Vars::empty(), &[]).unwrap()
}

#[test]
fn oracle_counts_match_nullity_over_f3() {
    let p = d2().to_rational().unwrap();
    for k in [InvariantKind::Derivation, InvariantKind::Centroid, InvariantKind::QuasiCentroid] {
        let r = exhaustive_solutions_mod_p(FamilyKind::Linear(k), &p, 3, DEFAULT_LIMIT).unwrap();
        let dim = solve(k, &p.reduce_mod(3).unwrap()).freedim();
        assert_eq!(r.count, 3u64.pow(dim as u32), "{k}");
    }
}

#[test]
fn oracle_solutions_verify_symbolically() {
    let pair = d2();
    let p = pair.to_rational().unwrap();
    let kind = FamilyKind::Operator(OperatorKind::RotaBaxter);
    let r = exhaustive_solutions_mod_p(kind, &p, 5, DEFAULT_LIMIT).unwrap();
    assert!(r.solutions.windows(2).all(|w| w[0] < w[1]));
    let generic = ansatz_constraints(kind, &pair, &ParamMatrix::generic(2, "R", &Vars::empty()));
    assert!(!generic.constraints.is_empty());
    assert!(r.solutions.contains(&vec![0, 0, 0, 0]));
}

#[test]
fn verdicts_on_printed_two_dimensional_families() {
    let p = d2();
    let rb = verify_family(FamilyKind::Operator(OperatorKind::RotaBaxter), &p, &family(&[["0", "0"], ["r", "0"]], &["r"]));
    assert_eq!(rb.set.verdict, Verdict::Zero);
    let nij = verify_family(FamilyKind::Operator(OperatorKind::Nijenhuis), &p, &family(&[["0", "0"], ["0", "N"]], &["N"]));
    assert!(matches!(nij.set.verdict, Verdict::Conditional { .. }));
    let transposed = verify_family(FamilyKind::Operator(OperatorKind::RotaBaxter), &p, &family(&[["0", "r"], ["0", "0"]], &["r"]));
    assert_ne!(transposed.set.verdict, Verdict::Zero);
}

#[test]
fn guard_rejects_large_enumerations() {
    let p = load_builtin_catalog().unwrap().into_iter().find(|e| e.pair.dim() == 4).unwrap().pair;
    let p = p.to_rational().unwrap();
    assert!(exhaustive_solutions_mod_p(FamilyKind::Linear(InvariantKind::Derivation), &p, 5, DEFAULT_LIMIT).is_err());
}
