//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits nonzero on a FAIL only when `CPA_ACCEPTANCE_STRICT` is set.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cpa_core::algebra::{compatibility_residuals, is_automorphism};
use cpa_core::catalog::{
    builtin_texts, load_builtin_catalog, parse_algebra, serialize, verify_entry, CatalogEntry, EntryReport, ReportVerdict,
    TableKind, SPECIALIZATION_POINTS,
};
use cpa_core::invariants::{build_system, solve, InvariantKind};
use cpa_core::kernel::{rat, Field, RatFunc, Rational, Vars};
use cpa_core::operators::{exhaustive_solutions_mod_p, verify_family, FamilyKind, OperatorKind, ParamMatrix, Verdict};
use cpa_core::report::{emit_report, Format};
use cpa_core::{AlgebraPair, Matrix, Product};
use rayon::prelude::*;

type Outcome = Result<String, String>;

/// Raised enumeration guard: dim 3 over F_7 has 7^9 candidates.
const ORACLE_LIMIT: u64 = 50_000_000;

fn catalog() -> Vec<CatalogEntry> {
    load_builtin_catalog().expect("built-in catalog loads")
}

fn assignment(p: &AlgebraPair<RatFunc>, v: i64) -> BTreeMap<String, Rational> {
    p.vars().names().iter().map(|n| (n.clone(), rat(v))).collect()
}

/// Rational instances: the pair itself, or its admissible specializations.
fn rational_instances(p: &AlgebraPair<RatFunc>, points: &[i64]) -> Vec<(String, AlgebraPair<Rational>)> {
    if !p.is_parametric() {
        return vec![(p.name.clone(), p.to_rational().unwrap())];
    }
    points
        .iter()
        .filter_map(|&v| {
            let a = assignment(p, v);
            match p.excluded_at(&a) {
                Ok(false) => p.specialize(&a).ok().map(|s| (format!("{}@{v}", p.name), s)),
                _ => None,
            }
        })
        .collect()
}

fn zero_all(v: &[RatFunc]) -> bool {
    v.iter().all(Field::is_zero)
}

fn criterion_1(cat: &[CatalogEntry]) -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut checked = 0;
    for e in cat {
        for w in Product::BOTH {
            checked += 1;
            if !zero_all(&compatibility_residuals(&e.pair.self_pair(w))) {
                failed.push(format!("{}/{}", e.name(), w.name()));
            }
        }
    }
    let t = start.elapsed();
    if !failed.is_empty() {
        return Err(format!("{} of {checked} self-pairs have nonzero residuals: {}", failed.len(), failed.join(", ")));
    }
    if t > Duration::from_secs(5) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{checked} self-pairs in {t:?}"))
}

fn verify_all(cat: &[CatalogEntry]) -> Result<Vec<EntryReport>, String> {
    cat.par_iter()
        .map(|e| catch_unwind(AssertUnwindSafe(|| verify_entry(e))).map_err(|_| format!("{} crashed", e.name())))
        .collect()
}

fn criterion_2(cat: &[CatalogEntry], reports: &[EntryReport]) -> Outcome {
    let count = |d| cat.iter().filter(|e| e.pair.dim() == d).count();
    let counts = (count(2), count(3), count(4));
    if counts != (1, 3, 39) || reports.len() != 43 {
        return Err(format!("entry counts {counts:?}, {} reports", reports.len()));
    }
    let again = verify_all(cat)?;
    let (a, b) = (emit_report(reports, Format::Json), emit_report(&again, Format::Json));
    if a != b {
        return Err("JSON differs between runs".into());
    }
    Ok(format!("43 reports, {} bytes of identical JSON", a.len()))
}

fn criterion_3(cat: &[CatalogEntry]) -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for e in cat {
        for (name, p) in rational_instances(&e.pair, &SPECIALIZATION_POINTS) {
            pairs += 1;
            let n = p.dim();
            let rp = p.to_ratfunc(&Vars::empty());
            let mut fail = |what: &str| failures.push(format!("{name}: {what}"));
            for k in InvariantKind::ALL {
                let sp = solve(k, &p);
                let zeros = vec![Matrix::zero(n, &()); k.slots().len()];
                if !sp.membership(&zeros) {
                    fail(&format!("0 not in {k}"));
                }
            }
            if !solve(InvariantKind::Centroid, &p).membership(&[Matrix::identity(n, &())]) {
                fail("I not in centroid");
            }
            if !is_automorphism(&Matrix::identity(n, &()), &p).unwrap() {
                fail("I not an automorphism");
            }
            let fixed = |m: Matrix<Rational>| ParamMatrix::from_matrix(m.try_map(|x| Ok(RatFunc::constant(&Vars::empty(), x.clone()))).unwrap(), vec![]);
            let zero_verdict = |kind, m: &ParamMatrix| verify_family(kind, &rp, m).set.verdict == Verdict::Zero;
            if !zero_verdict(FamilyKind::Operator(OperatorKind::RotaBaxter), &fixed(Matrix::zero(n, &()))) {
                fail("0 not Rota-Baxter");
            }
            let lambda = ParamMatrix::parse(
                &(0..n).map(|r| (0..n).map(|c| if r == c { "lambda" } else { "0" }).collect()).collect::<Vec<Vec<&str>>>(),
                &["lambda".to_string()],
                &Vars::empty(),
                &[],
            )
            .unwrap();
            if !zero_verdict(FamilyKind::Operator(OperatorKind::Nijenhuis), &lambda) {
                fail("lambda*I not Nijenhuis");
            }
            for op in [OperatorKind::Averaging, OperatorKind::Reynolds] {
                if !zero_verdict(FamilyKind::Operator(op), &fixed(Matrix::identity(n, &()))) {
                    fail(&format!("I not {op}"));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{pairs} rational instances"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_4(cat: &[CatalogEntry]) -> Outcome {
    let start = Instant::now();
    let kinds = [InvariantKind::Derivation, InvariantKind::Centroid, InvariantKind::QuasiCentroid];
    let mut runs = 0;
    let mut failures = Vec::new();
    for e in cat.iter().filter(|e| e.pair.dim() <= 3) {
        for (name, p) in rational_instances(&e.pair, &SPECIALIZATION_POINTS) {
            for q in [5u64, 7] {
                let Ok(pq) = p.reduce_mod(q) else {
                    continue;
                };
                for k in kinds {
                    let dim = solve(k, &pq).freedim();
                    let r = exhaustive_solutions_mod_p(FamilyKind::Linear(k), &p, q, ORACLE_LIMIT).map_err(|e| e.to_string())?;
                    runs += 1;
                    if r.count != q.pow(dim as u32) {
                        failures.push(format!("{name} {k} mod {q}: {} solutions, nullity {dim}", r.count));
                    }
                }
            }
        }
    }
    let t = start.elapsed();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    if t > Duration::from_secs(60) {
        return Err(format!("{runs} enumerations took {t:?}"));
    }
    Ok(format!("{runs} enumerations in {t:?}"))
}

fn criterion_5(cat: &[CatalogEntry]) -> Outcome {
    let e = cat.iter().find(|e| e.pair.dim() == 2).ok_or("no 2-dimensional entry")?;
    let family = |sym: &str| ParamMatrix::parse(&[vec!["0", "0"], vec![sym, "0"]], &[sym.to_string()], &Vars::empty(), &[]).unwrap();
    let p = e.pair.to_rational().unwrap();
    for (op, sym) in [(OperatorKind::RotaBaxter, "r"), (OperatorKind::Averaging, "chi")] {
        let kind = FamilyKind::Operator(op);
        let v = verify_family(kind, &e.pair, &family(sym));
        if v.set.verdict != Verdict::Zero {
            return Err(format!("{op}: {}", v.set.verdict.tag()));
        }
        let r = exhaustive_solutions_mod_p(kind, &p, 5, ORACLE_LIMIT).map_err(|e| e.to_string())?;
        for x in 0..5 {
            if !r.solutions.contains(&vec![0, 0, x, 0]) {
                return Err(format!("{op}: specialization {x} missing over F_5"));
            }
        }
    }
    Ok("both families ZERO, all F_5 specializations enumerated".into())
}

fn criterion_6(cat: &[CatalogEntry]) -> Outcome {
    let e = cat.iter().find(|e| e.pair.dim() == 3 && e.pair.is_parametric()).ok_or("no parametric 3-dimensional entry")?;
    let generic = solve(InvariantKind::Derivation, &e.pair);
    for v in [0, 2, 5] {
        let a = assignment(&e.pair, v);
        if e.pair.excluded_at(&a).map_err(|e| e.to_string())? {
            return Err(format!("alpha={v} is excluded"));
        }
        let sp = e.pair.specialize(&a).map_err(|e| e.to_string())?;
        let local = solve(InvariantKind::Derivation, &sp);
        if local.freedim() != generic.freedim() {
            return Err(format!("alpha={v}: freedim {} vs generic {}", local.freedim(), generic.freedim()));
        }
        let sys = build_system(InvariantKind::Derivation, &sp);
        for b in &generic.span.basis {
            let x: Vec<Rational> = b.iter().map(|f| f.eval_named(&a)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            if !sys.residuals(&x).iter().all(Field::is_zero) {
                return Err(format!("alpha={v}: generic basis vector fails"));
            }
        }
    }
    Ok(format!("{}: freedim {} at alpha in {{0,2,5}}", e.name(), generic.freedim()))
}

fn criterion_7(cat: &[CatalogEntry]) -> Outcome {
    let mut checked = 0;
    for e in cat.iter().filter(|e| e.pair.dim() <= 3) {
        let p = &e.pair;
        let ders = solve(InvariantKind::Derivation, p);
        let db: Vec<Matrix<RatFunc>> = ders.basis().into_iter().map(|mut b| b.remove(0)).collect();
        for a in &db {
            for b in &db {
                checked += 1;
                if !ders.membership(&[a.mul(b).sub(&b.mul(a))]) {
                    return Err(format!("{}: derivations not closed under commutator", e.name()));
                }
            }
        }
        let cents = solve(InvariantKind::Centroid, p);
        let cb: Vec<Matrix<RatFunc>> = cents.basis().into_iter().map(|mut b| b.remove(0)).collect();
        for a in &cb {
            for b in &cb {
                checked += 1;
                if !cents.membership(&[a.mul(b)]) {
                    return Err(format!("{}: centroids not closed under composition", e.name()));
                }
            }
        }
    }
    Ok(format!("{checked} basis pairs"))
}

fn criterion_8(cat: &[CatalogEntry], reports: &[EntryReport]) -> Outcome {
    let mut tables = 0;
    let mut radical = 0;
    let mut missing = Vec::new();
    for (e, r) in cat.iter().zip(reports) {
        if e.name() != r.entry {
            return Err("report order differs from catalog order".into());
        }
        let mut expect = |name: String, allow: &[ReportVerdict]| {
            match r.check(&name) {
                None => missing.push(format!("{name}: no record")),
                Some(c) if !allow.contains(&c.verdict) => missing.push(format!("{name}: {}", c.verdict)),
                Some(c) if matches!(c.verdict, ReportVerdict::Mismatch | ReportVerdict::Conditional) => {
                    let has = |k: &str| c.details[k].as_array().is_some_and(|a| !a.is_empty());
                    if !(has("constraints") || has("computed_constraints") || has("nonvanishing")) {
                        missing.push(format!("{}/{name}: {} without constraints", e.name(), c.verdict));
                    }
                }
                Some(_) => {}
            }
        };
        let graded = [ReportVerdict::Match, ReportVerdict::MatchTransposed, ReportVerdict::Mismatch, ReportVerdict::Conditional];
        for a in &e.automorphisms {
            if a.family.is_some() {
                tables += 1;
                expect(format!("automorphism/{}", a.label), &graded);
            } else {
                radical += 1;
                expect(format!("automorphism/{}", a.label), &[ReportVerdict::SkippedRadical]);
            }
        }
        for t in &e.invariants {
            for k in &t.kinds {
                tables += 1;
                expect(format!("table/{}/{}", t.label, TableKind::name(*k)), &graded);
            }
        }
    }
    if missing.is_empty() {
        Ok(format!("{tables} printed tables graded, {radical} radical families skipped"))
    } else {
        Err(missing.join("; "))
    }
}

fn criterion_9() -> Outcome {
    for (stem, text, _) in builtin_texts() {
        let p = parse_algebra(text).map_err(|e| format!("{stem}: {e}"))?;
        if parse_algebra(&serialize(&p)).map_err(|e| e.to_string())? != p {
            return Err(format!("{stem} does not round-trip"));
        }
    }
    for text in common::random_docs(100) {
        let p = parse_algebra(&text).map_err(|e| format!("{e}: {text}"))?;
        if parse_algebra(&serialize(&p)).map_err(|e| e.to_string())? != p {
            return Err(format!("random file does not round-trip: {text}"));
        }
    }
    Ok(format!("{} built-in and 100 random files (seed {})", builtin_texts().len(), common::seed()))
}

fn main() {
    let cat = catalog();
    let reports = verify_all(&cat);
    let with_reports = |f: &dyn Fn(&[EntryReport]) -> Outcome| match &reports {
        Ok(r) => f(r),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("compatibility controls", criterion_1(&cat)),
        ("catalog completeness", with_reports(&|r| criterion_2(&cat, r))),
        ("trivial membership", criterion_3(&cat)),
        ("oracle agreement", criterion_4(&cat)),
        ("verified printed families", criterion_5(&cat)),
        ("parametric elimination", criterion_6(&cat)),
        ("closure properties", criterion_7(&cat)),
        ("diff report", with_reports(&|r| criterion_8(&cat, r))),
        ("round-trip", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    // FAIL lines are findings about the printed tables; CPA_ACCEPTANCE_STRICT
    // turns them into a failing exit status.
    if failed > 0 && std::env::var_os("CPA_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
