use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::entry::{CatalogEntry, ExpectedTable, TableKind};
use crate::algebra::{
    associativity_residuals, compatibility_residuals, residual_label, AlgebraPair, Matrix, Product,
};
use crate::invariants::{build_system, format_solution, rref, solve, stack, InvariantKind, SolutionSpace, Span};
use crate::kernel::{Field, Poly, RatFunc, Rational, Vars};
use crate::operators::{
    exclusion_factors, strip_factors, verify_family, FamilyKind, FamilyVerdict, ParamMatrix, Verdict, Witness,
};

/// Values substituted for the pair's parameters in the specialized checks.
pub const SPECIALIZATION_POINTS: [i64; 3] = [0, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ReportVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MATCH-TRANSPOSED")]
    MatchTransposed,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "CONDITIONAL")]
    Conditional,
    #[serde(rename = "SKIPPED-RADICAL")]
    SkippedRadical,
}

impl ReportVerdict {
    pub const ALL: [ReportVerdict; 6] = [
        ReportVerdict::Pass,
        ReportVerdict::Match,
        ReportVerdict::MatchTransposed,
        ReportVerdict::Mismatch,
        ReportVerdict::Conditional,
        ReportVerdict::SkippedRadical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReportVerdict::Pass => "PASS",
            ReportVerdict::Match => "MATCH",
            ReportVerdict::MatchTransposed => "MATCH-TRANSPOSED",
            ReportVerdict::Mismatch => "MISMATCH",
            ReportVerdict::Conditional => "CONDITIONAL",
            ReportVerdict::SkippedRadical => "SKIPPED-RADICAL",
        }
    }
}

impl std::fmt::Display for ReportVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: ReportVerdict,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub entry: String,
    pub checks: Vec<CheckRecord>,
}

impl EntryReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn matrix_strings(m: &Matrix<RatFunc>) -> Vec<Vec<String>> {
    m.rows().map(strings).collect()
}

fn push_unique(out: &mut Vec<Poly>, p: Poly) {
    if !p.is_zero() && !out.contains(&p) {
        out.push(p);
    }
}

fn sort_polys(ps: &mut [Poly]) {
    ps.sort_by_cached_key(|p| (p.total_degree(), p.num_terms(), p.to_string()));
}

/// Removes constraints that are polynomial multiples of another one.
fn drop_multiples(mut ps: Vec<Poly>) -> Vec<Poly> {
    sort_polys(&mut ps);
    let mut out: Vec<Poly> = Vec::new();
    for p in ps {
        if p.is_constant() || !out.iter().any(|q| !q.is_constant() && p.exact_div(q).is_some()) {
            out.push(p);
        }
    }
    out
}

/// Distinct primitive nonzero numerators, with the index of the first one.
fn residual_summary(res: &[RatFunc], exclusions: &[Poly]) -> (Option<usize>, Vec<Poly>, bool) {
    let factors = exclusion_factors(exclusions);
    let mut first = None;
    let mut out = Vec::new();
    let mut constant = false;
    for (i, r) in res.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        first.get_or_insert(i);
        let p = strip_factors(r.num(), &factors);
        if p.is_constant() {
            constant = true;
        }
        push_unique(&mut out, p);
    }
    let out = drop_multiples(out);
    (first, out, constant)
}

fn identity_check(name: &str, res: &[RatFunc], n: usize, arity: usize, exclusions: &[Poly]) -> CheckRecord {
    let (first, constraints, constant) = residual_summary(res, exclusions);
    let Some(first) = first else {
        return CheckRecord { name: name.into(), verdict: ReportVerdict::Pass, details: json!({ "residuals": res.len() }) };
    };
    let nonzero = res.iter().filter(|r| !r.is_zero()).count();
    let verdict = if constant { ReportVerdict::Mismatch } else { ReportVerdict::Conditional };
    CheckRecord {
        name: name.into(),
        verdict,
        details: json!({
            "residuals": res.len(),
            "nonzero": nonzero,
            "witness": residual_label(first, n, arity),
            "constraints": strings(&constraints),
        }),
    }
}

fn tag_label(s: &crate::invariants::LinearSystem<RatFunc>, row: usize) -> String {
    let t = &s.tags[row];
    let family = if s.kind.slots().len() > 1 || t.family > 0 { format!("{}:", t.family + 1) } else { String::new() };
    format!("{}:{family}({},{};{})", t.product.name(), t.i + 1, t.j + 1, t.r + 1)
}

/// Span of the values of a family polynomial in its free parameters: one
/// stacked vector per parameter monomial.
fn monomial_span(slots: &[ParamMatrix], base: &Vars) -> Option<Vec<Vec<RatFunc>>> {
    let vars = slots[0].vars();
    let params = &slots[0].params;
    let idx: Vec<usize> = params.iter().map(|p| vars.index_of(p).expect("declared")).collect();
    let stacked = stack(&slots.iter().map(|s| s.matrix.clone()).collect::<Vec<_>>());
    let len = stacked.len();
    let mut parts: BTreeMap<Vec<u32>, Vec<RatFunc>> = BTreeMap::new();
    for (pos, x) in stacked.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if x.den().used_vars().iter().enumerate().any(|(v, &u)| u && idx.contains(&v)) {
            return None;
        }
        for (m, c) in x.num().terms() {
            let key: Vec<u32> = idx.iter().map(|&v| m.0[v]).collect();
            let mut rest = m.clone();
            for &v in &idx {
                rest.0[v] = 0;
            }
            let term = RatFunc::new(Poly::monomial(&vars, rest, c.clone()), x.den().clone()).ok()?;
            let term = term.remap(base, &BTreeMap::new()).ok()?;
            let slot = parts.entry(key).or_insert_with(|| vec![RatFunc::zero(base); len]);
            slot[pos] = slot[pos].add(&term);
        }
    }
    Some(parts.into_values().collect())
}

fn spans_equal(a: &Span<RatFunc>, b: &Span<RatFunc>) -> bool {
    a.dim() == b.dim() && a.contains_span(b) && b.contains_span(a)
}

/// Linear conditions on the coordinates `t` of the computed general element
/// that cut the computed space down to the printed span.
fn computed_constraints(sp: &Span<RatFunc>, printed: &Span<RatFunc>, names: &[String], base: &Vars) -> Vec<String> {
    let m = sp.dim();
    if m == 0 {
        return Vec::new();
    }
    let reduced: Vec<Vec<RatFunc>> = sp.basis.iter().map(|c| printed.reduce(c)).collect();
    let rows: Vec<Vec<RatFunc>> = (0..sp.ncols).map(|k| reduced.iter().map(|r| r[k].clone()).collect()).collect();
    let r = rref(rows, m);
    let vars = base.merge(&Vars::new(names));
    let ts: Vec<RatFunc> = names.iter().map(|t| RatFunc::var(&vars, t).unwrap()).collect();
    let mut out = Vec::new();
    for row in &r.rows {
        let mut acc = RatFunc::zero(&vars);
        for (c, t) in row.iter().zip(&ts) {
            if !c.is_zero() {
                acc = acc.add(&c.embed(&vars).mul(t));
            }
        }
        push_unique(&mut out, acc.num().primitive());
    }
    sort_polys(&mut out);
    strings(&out)
}

struct Spaces {
    base: Vars,
    spaces: Vec<(InvariantKind, SolutionSpace<RatFunc>)>,
}

impl Spaces {
    fn compute(pair: &AlgebraPair<RatFunc>) -> Self {
        let spaces = InvariantKind::ALL.iter().map(|&k| (k, solve(k, pair))).collect();
        Spaces { base: pair.vars().clone(), spaces }
    }

    fn get(&self, k: InvariantKind) -> &SolutionSpace<RatFunc> {
        &self.spaces.iter().find(|(x, _)| *x == k).unwrap().1
    }

    fn records(&self, suffix: &str) -> Vec<CheckRecord> {
        self.spaces
            .iter()
            .map(|(k, sp)| {
                let general = format_solution(sp, &self.base);
                CheckRecord {
                    name: format!("space/{k}{suffix}"),
                    verdict: ReportVerdict::Pass,
                    details: json!({
                        "freedim": sp.freedim(),
                        "params": general.first().map(|g| g.params.clone()).unwrap_or_default(),
                        "general": general.iter().map(|g| g.to_strings()).collect::<Vec<_>>(),
                        "exclusions": strings(&sp.exclusions),
                    }),
                }
            })
            .collect()
    }
}

fn compare_linear(pair: &AlgebraPair<RatFunc>, spaces: &Spaces, k: InvariantKind, slots: &[ParamMatrix]) -> (ReportVerdict, Value) {
    let base = &spaces.base;
    let sp = spaces.get(k);
    let ncols = sp.span.ncols;
    let span_of = |slots: &[ParamMatrix]| monomial_span(slots, base).map(|v| Span::new(v, ncols).0);
    let printed = span_of(slots);
    let transposed: Vec<ParamMatrix> = slots.iter().map(|s| s.transpose()).collect();
    let mut details = json!({
        "freedim": sp.freedim(),
        "printed_dim": printed.as_ref().map(|p| p.dim()),
    });
    if let Some(p) = &printed {
        if spans_equal(&sp.span, p) {
            return (ReportVerdict::Match, details);
        }
    }
    if let Some(p) = span_of(&transposed) {
        if spans_equal(&sp.span, &p) {
            return (ReportVerdict::MatchTransposed, details);
        }
    }
    let vars = slots[0].vars();
    let embedded = pair.embed(&vars);
    let system = build_system(k, &embedded);
    let res = system.residuals_of(&slots.iter().map(|s| s.matrix.clone()).collect::<Vec<_>>());
    let mut exclusions: Vec<Poly> = pair.effective_exclusions().iter().map(|e| e.embed(&vars)).collect();
    exclusions.extend(sp.exclusions.iter().map(|e| e.embed(&vars)));
    let (first, constraints, _) = residual_summary(&res, &exclusions);
    let d = details.as_object_mut().unwrap();
    d.insert("constraints".into(), json!(strings(&constraints)));
    match first {
        Some(i) => {
            d.insert("witness".into(), json!(format!("residual {}", tag_label(&system, i))));
        }
        None => {
            if let Some(p) = &printed {
                if let Some(missing) = sp.span.basis.iter().find(|b| !p.contains(b)) {
                    let ms: Vec<_> = sp.unstack(missing).iter().map(matrix_strings).collect();
                    d.insert("witness".into(), json!({ "computed_not_printed": ms }));
                }
            } else {
                d.insert("witness".into(), json!("printed family is not polynomial in its parameters"));
            }
        }
    }
    if let Some(p) = &printed {
        let general = format_solution(sp, base);
        let names = general.first().map(|g| g.params.clone()).unwrap_or_default();
        d.insert("computed_general".into(), json!(general.iter().map(|g| g.to_strings()).collect::<Vec<_>>()));
        d.insert("computed_constraints".into(), json!(computed_constraints(&sp.span, p, &names, base)));
    }
    if slots.len() > 1 {
        let per_slot: Vec<Value> = slots
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let proj = sp.project(s);
                let printed = monomial_span(std::slice::from_ref(m), base).map(|v| Span::new(v, proj.span.ncols).0);
                json!({
                    "slot": sp.slots[s],
                    "freedim": proj.freedim(),
                    "printed_dim": printed.as_ref().map(|p| p.dim()),
                    "equal": printed.as_ref().is_some_and(|p| spans_equal(&proj.span, p)),
                })
            })
            .collect();
        d.insert("slots".into(), json!(per_slot));
    }
    (ReportVerdict::Mismatch, details)
}

fn witness_label(w: &Witness, n: usize) -> String {
    match w {
        Witness::Determinant => "determinant vanishes".into(),
        Witness::Residual(i) => format!("residual {}", residual_label(*i, n, 3)),
    }
}

fn nonzero_numerators(v: &FamilyVerdict) -> Vec<String> {
    let mut out = Vec::new();
    for r in &v.set.residuals {
        push_unique(&mut out, r.primitive());
    }
    sort_polys(&mut out);
    strings(&out)
}

fn verdict_json(v: &FamilyVerdict, n: usize) -> Value {
    let mut d = json!({ "verdict": v.set.verdict.tag() });
    let o = d.as_object_mut().unwrap();
    match &v.set.verdict {
        Verdict::Zero => {}
        Verdict::Conditional { constraints } => {
            o.insert("constraints".into(), json!(strings(constraints)));
        }
        Verdict::NonZero { witness } => {
            o.insert("witness".into(), json!(witness_label(witness, n)));
            o.insert("constraints".into(), json!(nonzero_numerators(v)));
        }
    }
    if let Some(det) = &v.det {
        o.insert("det".into(), json!(det.det.to_string()));
        if !det.unit && !det.det.is_zero() {
            o.insert("nonvanishing".into(), json!([det.remaining.to_string()]));
        }
    }
    d
}

/// MATCH / MATCH-TRANSPOSED / CONDITIONAL / MISMATCH for a family checked
/// by direct substitution.
fn compare_family(kind: FamilyKind, pair: &AlgebraPair<RatFunc>, m: &ParamMatrix) -> (ReportVerdict, Value) {
    let n = pair.dim();
    let asis = verify_family(kind, pair, m);
    if asis.holds() {
        return (ReportVerdict::Match, verdict_json(&asis, n));
    }
    let tr = verify_family(kind, pair, &m.transpose());
    if tr.holds() {
        return (ReportVerdict::MatchTransposed, verdict_json(&tr, n));
    }
    let mut d = verdict_json(&asis, n);
    d.as_object_mut().unwrap().insert("transposed".into(), verdict_json(&tr, n));
    let verdict = match asis.set.verdict {
        Verdict::NonZero { .. } => ReportVerdict::Mismatch,
        _ => ReportVerdict::Conditional,
    };
    (verdict, d)
}

fn table_records(pair: &AlgebraPair<RatFunc>, spaces: &Spaces, t: &ExpectedTable, slots: &[ParamMatrix], suffix: &str) -> Vec<CheckRecord> {
    t.kinds
        .iter()
        .map(|&k| {
            let (verdict, details) = match k {
                TableKind::Linear(k) => compare_linear(pair, spaces, k, slots),
                TableKind::Operator(k) => compare_family(FamilyKind::Operator(k), pair, &slots[0]),
            };
            CheckRecord { name: format!("table/{}/{}{suffix}", t.label, k.name()), verdict, details }
        })
        .collect()
}

fn specialize_family(m: &ParamMatrix, assignment: &BTreeMap<String, Rational>) -> Result<ParamMatrix, Poly> {
    let target = Vars::new(&m.params);
    let matrix = m.remap(&target, assignment).map_err(|_| {
        m.matrix
            .entries()
            .iter()
            .find(|x| x.remap(&target, assignment).is_err())
            .map(|x| x.den().clone())
            .unwrap_or_else(|| Poly::zero(&target))
    })?;
    let exclusions = m.exclusions.iter().filter_map(|e| e.remap(&target, assignment).ok()).collect();
    Ok(ParamMatrix { params: m.params.clone(), matrix, exclusions })
}

fn family_checks(
    e: &CatalogEntry,
    pair: &AlgebraPair<RatFunc>,
    assignment: Option<&BTreeMap<String, Rational>>,
    suffix: &str,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let adapt = |m: &ParamMatrix| match assignment {
        None => Ok(m.clone()),
        Some(a) => specialize_family(m, a),
    };
    let undefined = |name: String, p: Poly| CheckRecord {
        name,
        verdict: ReportVerdict::Mismatch,
        details: json!({ "witness": "printed family undefined at this point", "constraints": [p.to_string()] }),
    };
    for a in &e.automorphisms {
        let name = format!("automorphism/{}{suffix}", a.label);
        let Some(fam) = &a.family else {
            out.push(CheckRecord {
                name,
                verdict: ReportVerdict::SkippedRadical,
                details: json!({ "matrix": a.doc.matrix, "params": a.doc.params }),
            });
            continue;
        };
        match adapt(fam) {
            Ok(fam) => {
                let (verdict, details) = compare_family(FamilyKind::Automorphism, pair, &fam);
                out.push(CheckRecord { name, verdict, details });
            }
            Err(p) => out.push(undefined(name, p)),
        }
    }
    let spaces = Spaces::compute(pair);
    out.extend(spaces.records(suffix));
    for t in &e.invariants {
        match t.slots.iter().map(adapt).collect::<Result<Vec<_>, _>>() {
            Ok(slots) => out.extend(table_records(pair, &spaces, t, &slots, suffix)),
            Err(p) => out.extend(t.kinds.iter().map(|k| undefined(format!("table/{}/{}{suffix}", t.label, k.name()), p.clone()))),
        }
    }
    out
}

/// Runs every scheduled check for one entry. Failures are verdicts.
pub fn verify_entry(e: &CatalogEntry) -> EntryReport {
    let pair = &e.pair;
    let n = pair.dim();
    let excl = pair.effective_exclusions();
    let mut checks = Vec::new();
    for p in Product::BOTH {
        let res = associativity_residuals(pair.tensor(p));
        checks.push(identity_check(&format!("associativity/{}", p.name()), &res, n, 4, &excl));
    }
    checks.push(identity_check("compatibility", &compatibility_residuals(pair), n, 4, &excl));
    for p in Product::BOTH {
        let res = compatibility_residuals(&pair.self_pair(p));
        checks.push(identity_check(&format!("self-compatibility/{}", p.name()), &res, n, 4, &excl));
    }
    checks.extend(family_checks(e, pair, None, ""));
    if pair.is_parametric() {
        let names = pair.vars().names().to_vec();
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for v in SPECIALIZATION_POINTS {
            let assignment: BTreeMap<String, Rational> = names.iter().map(|n| (n.clone(), Rational::from_integer(v.into()))).collect();
            let label = names.iter().map(|n| format!("{n}={v}")).collect::<Vec<_>>().join(",");
            match pair.excluded_at(&assignment) {
                Ok(false) => {}
                _ => {
                    dropped.push(label);
                    continue;
                }
            }
            let Ok(spec) = pair.specialize(&assignment) else {
                dropped.push(label);
                continue;
            };
            let spec = spec.to_ratfunc(&Vars::empty());
            let suffix = format!("@{label}");
            for p in Product::BOTH {
                let res = associativity_residuals(spec.tensor(p));
                checks.push(identity_check(&format!("associativity/{}{suffix}", p.name()), &res, n, 4, &[]));
            }
            checks.push(identity_check(&format!("compatibility{suffix}"), &compatibility_residuals(&spec), n, 4, &[]));
            checks.extend(family_checks(e, &spec, Some(&assignment), &suffix));
            kept.push(label);
        }
        checks.push(CheckRecord {
            name: "specializations".into(),
            verdict: ReportVerdict::Pass,
            details: json!({ "points": kept, "dropped": dropped }),
        });
    }
    EntryReport { entry: e.name().to_string(), checks }
}
