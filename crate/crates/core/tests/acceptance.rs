//! Acceptance suite: one line per criterion, tolerances and time bounds pinned
//! below. Exits non-zero if any criterion fails without a recorded reason.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use quadric_bredon::coeff_rings::{b_mul, verify_coeff_ring, BElem, BMono};
use quadric_bredon::group_cohom::verify_e2_tensor;
use quadric_bredon::ideals::BidegreeWindow;
use quadric_bredon::maps::verify_prop_algebraic;
use quadric_bredon::poly::verify_lemma_id;
use quadric_bredon::quadric::checks::{
    free_quotient_consistency, free_rank_vs_e2, isotropic_presentation, isotropic_window, mod2_consistency,
    odd_inclusion_iso, pfister_check,
};
use quadric_bredon::quadric::{cohomology_group, IdealReading};

const ISOTROPIC_CASES: [(i32, i32); 7] = [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2), (6, 2), (6, 3)];

/// Criteria expected to fail, with the reason printed alongside the result.
/// A listed criterion only counts as explained if its run says so.
const KNOWN_FAILURES: [(u32, &str); 1] = [(
    6,
    "the isotropic ideal read with module multiples of every generator contains h^{n-s+1}, \
     so together with h^{n-s+1} = 2*eta it forces 2*eta = 0 while the model has eta of infinite order; \
     the corrected reading is checked in the same run",
)];

struct Verdict {
    passed: bool,
    detail: String,
    /// A failure matching the recorded diagnosis.
    explained: bool,
}

impl Verdict {
    fn of(passed: bool, detail: impl Into<String>) -> Self {
        Verdict { passed, detail: detail.into(), explained: false }
    }
}

type Check = fn() -> Result<Verdict, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    bound: Duration,
    check: Check,
}

fn coefficient_ring() -> Result<Verdict, String> {
    let rep = verify_coeff_ring((-6, 6), (-10, 10));
    let alpha = BElem::monomial(1, BMono::Alpha { j: 0 });
    let tau = BElem::monomial(1, BMono::Pos { a: 0, b: 1 });
    let two = BElem::monomial(2, BMono::Pos { a: 0, b: 0 });
    let alpha_tau = b_mul(&alpha, &tau) == two;
    Ok(Verdict::of(
        rep.passed() && alpha_tau,
        format!("{} monomials, alpha*tau = 2: {alpha_tau}", rep.monomials),
    ))
}

fn polynomial_identities() -> Result<Verdict, String> {
    let rep = verify_lemma_id(64, 40);
    Ok(Verdict::of(rep.passed(), format!("{} checks, {} failures", rep.checks, rep.failures.len())))
}

fn algebraic_suite() -> Result<Verdict, String> {
    let mut bad = Vec::new();
    for n in 1..=8 {
        let rep = verify_prop_algebraic(n, &BidegreeWindow::standard(n)).map_err(|e| e.to_string())?;
        if !rep.passed() {
            bad.push(n);
        }
    }
    Ok(Verdict::of(bad.is_empty(), format!("n in 1..=8, failing n: {bad:?}")))
}

fn conic() -> Result<Verdict, String> {
    let mut bad = Vec::new();
    for q in -6..=6 {
        for p in -1..=3 {
            let got = cohomology_group(1, 0, p, q).map_err(|e| e.to_string())?;
            if got != common::conic_oracle(p, q) {
                bad.push((p, q));
            }
        }
    }
    Ok(Verdict::of(bad.is_empty(), format!("p in -1..=3, q in -6..=6, mismatches: {bad:?}")))
}

fn mod2() -> Result<Verdict, String> {
    let mut cells = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        let rep = mod2_consistency(n, &BidegreeWindow::standard(n)).map_err(|e| e.to_string())?;
        cells += rep.bidegrees_checked;
        bad.extend(rep.failures.iter().map(|f| (n, f.p, f.q)));
    }
    Ok(Verdict::of(bad.is_empty(), format!("{cells} bidegrees, mismatches: {bad:?}")))
}

fn isotropic() -> Result<Verdict, String> {
    let mut literal_bad = Vec::new();
    let mut corrected_bad = Vec::new();
    for (n, s) in ISOTROPIC_CASES {
        let w = isotropic_window(n);
        let lit = isotropic_presentation(n, s, IdealReading::Literal, &w).map_err(|e| e.to_string())?;
        if !lit.passed() {
            literal_bad.push(format!("({n},{s}): {} bidegrees differ", lit.group_mismatches.len()));
        }
        let cor = isotropic_presentation(n, s, IdealReading::Corrected, &w).map_err(|e| e.to_string())?;
        if !cor.passed() {
            corrected_bad.push((n, s));
        }
    }
    let passed = literal_bad.is_empty();
    Ok(Verdict {
        passed,
        explained: !passed && corrected_bad.is_empty(),
        detail: format!("literal ideal: [{}]; corrected ideal failing: {corrected_bad:?}", literal_bad.join(", ")),
    })
}

fn free_quotient() -> Result<Verdict, String> {
    let mut bad = Vec::new();
    for n in 1..=5 {
        let rep = free_quotient_consistency(n, &BidegreeWindow::standard(n)).map_err(|e| e.to_string())?;
        bad.extend(rep.failures.iter().map(|f| (n, f.p, f.q)));
    }
    Ok(Verdict::of(bad.is_empty(), format!("n in 1..=5, mismatches: {bad:?}")))
}

fn odd_inclusion() -> Result<Verdict, String> {
    let mut bad = Vec::new();
    for m in 1..=3 {
        let rep = odd_inclusion_iso(m, &BidegreeWindow::standard(2 * m - 1)).map_err(|e| e.to_string())?;
        bad.extend(rep.failures.iter().map(|d| (m, d.p, d.q)));
    }
    Ok(Verdict::of(bad.is_empty(), format!("m in 1..=3, non-bijective: {bad:?}")))
}

fn e2_consistency() -> Result<Verdict, String> {
    let mut tensor_bad = Vec::new();
    for n in [1, 2, 3, 5, 6] {
        let rep = verify_e2_tensor(n, 2 * n + 4, (-n - 4, n + 4)).map_err(|e| e.to_string())?;
        if !rep.mismatches.is_empty() {
            tensor_bad.push(n);
        }
    }
    let mut rank_bad = Vec::new();
    for n in 1..=6 {
        let rep = free_rank_vs_e2(n, &BidegreeWindow::standard(n)).map_err(|e| e.to_string())?;
        rank_bad.extend(rep.failures.iter().map(|f| (n, f.p, f.q)));
    }
    Ok(Verdict::of(
        tensor_bad.is_empty() && rank_bad.is_empty(),
        format!("tensor model failing n: {tensor_bad:?}; free rank mismatches: {rank_bad:?}"),
    ))
}

fn pfister() -> Result<Verdict, String> {
    let mut lines = Vec::new();
    let mut ok = true;
    for (r, exponent) in [(2, 7), (3, 15)] {
        let first = pfister_check(r).map_err(|e| e.to_string())?;
        let again = pfister_check(r).map_err(|e| e.to_string())?;
        let json = |rep| serde_json::to_string(rep).map_err(|e: serde_json::Error| e.to_string());
        let deterministic = json(&first)? == json(&again)?;
        ok &= deterministic && first.derived_eps_exponent == Some(exponent);
        let cmp = &first.comparison;
        let verdict = match cmp.first_discrepancy {
            None => format!("equal over {} bidegrees", cmp.bidegrees_checked),
            Some(d) => format!("first discrepancy at {d}, witness {}", cmp.witness.as_deref().unwrap_or("-")),
        };
        lines.push(format!("r={r}: derived {}, listed {}, {verdict}", first.derived_first_generator, first.listed_first_generator));
    }
    Ok(Verdict::of(ok, lines.join("; ")))
}

fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, check| Criterion { id, name, bound: Duration::from_secs(secs), check };
    vec![
        c(1, "coefficient ring axioms", 10, coefficient_ring as Check),
        c(2, "polynomial identities", 10, polynomial_identities),
        c(3, "ideal comparisons n <= 8", 120, algebraic_suite),
        c(4, "conic against cochain oracle", 1, conic),
        c(5, "mod-2 consistency n <= 6", 60, mod2),
        c(6, "isotropic presentations", 180, isotropic),
        c(7, "torsion-free quotients n <= 5", 30, free_quotient),
        c(8, "odd inclusion isomorphism m <= 3", 30, odd_inclusion),
        c(9, "descent E2 consistency", 60, e2_consistency),
        c(10, "Pfister report", 120, pfister),
    ]
}

fn main() -> ExitCode {
    let mut unexplained = Vec::new();
    let mut passed = 0;
    let all = criteria();
    for crit in &all {
        let start = Instant::now();
        let result = (crit.check)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= crit.bound;
        let (ok, detail, explained) = match result {
            Ok(v) => (v.passed && in_time, v.detail, v.explained && in_time),
            Err(e) => (false, format!("error: {e}"), false),
        };
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), crit.bound.as_secs());
        println!(
            "criterion {:>2} {:<34} {} ({timing}{}) {detail}",
            crit.id,
            crit.name,
            if ok { "PASS" } else { "FAIL" },
            if in_time { "" } else { ", over time bound" },
        );
        if ok {
            passed += 1;
            continue;
        }
        match KNOWN_FAILURES.iter().find(|(id, _)| *id == crit.id) {
            Some((_, reason)) if explained => println!("             known failure: {reason}"),
            _ => unexplained.push(crit.id),
        }
    }
    println!("{passed}/{} criteria pass", all.len());
    if unexplained.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexplained failures: {unexplained:?}");
        ExitCode::FAILURE
    }
}
