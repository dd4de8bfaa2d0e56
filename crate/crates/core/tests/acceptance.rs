//! Acceptance run: one line per criterion, nonzero exit when any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use syzlab::betti::{betti_table, check_np, satisfies_np, KoszulComplex, Method, NpVerdict, PBound};
use syzlab::groebner::{groebner, hilbert_function, hilbert::binomial};
use syzlab::harness::{
    corpus_emit, standard_corpus, verify_ci_corollary, verify_imply_scan, verify_theorem_main1, Status, VerifyOptions,
};
use syzlab::veronese::{degenerate_embed, full_veronese_ideal, tensor_transfer};
use syzlab::{Budget, Ideal, Result};

const P: u32 = 32003;
const SMALL_P: u32 = 101;

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn emit(name: &str, prime: u32) -> Result<Ideal> {
    corpus_emit(name, prime, &Budget::unlimited())
}

/// Outcome of one criterion: pass flag and a short account.
type Verdict = Result<(bool, String)>;

fn within(started: Instant, limit: Duration, ok: bool, detail: String) -> (bool, String) {
    let spent = started.elapsed();
    let ok = ok && spent <= limit;
    (ok, format!("{detail}; {:.1}s of {}s", spent.as_secs_f64(), limit.as_secs()))
}

fn np_ge_ell_for_full_veronese() -> Verdict {
    let started = Instant::now();
    let budget = Budget::with_timeout(minutes(10));
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, ell) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)] {
        let ideal = full_veronese_ideal(r, ell, P, &budget)?;
        let verdict = check_np(&ideal, None, &budget)?;
        ok &= verdict.holds_at(ell as usize) == Some(true);
        parts.push(format!("({r},{ell}):{}", verdict.label()));
    }
    Ok(within(started, minutes(10), ok, parts.join(" ")))
}

fn exact_np(r: usize, ell: u32, expected: usize, witness: Option<(usize, u32)>) -> Verdict {
    let started = Instant::now();
    let budget = Budget::with_timeout(minutes(30));
    let ideal = full_veronese_ideal(r, ell, P, &budget)?;
    let verdict = check_np(&ideal, None, &budget)?;
    let mut ok = verdict == NpVerdict::Holds(PBound::Exact(expected));
    let mut detail = format!("N_p = {}", verdict.label());
    if let Some((i, q)) = witness {
        let beta = KoszulComplex::for_quotient(&ideal, &budget)?.cell(i, q, &budget)?;
        ok &= beta != 0;
        detail.push_str(&format!(", beta_{i},{q} = {beta}"));
    }
    Ok(within(started, minutes(30), ok, detail))
}

fn plane_cubics() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["nodal_cubic", "smooth_cubic"] {
        let started = Instant::now();
        let budget = Budget::with_timeout(minutes(30));
        let ideal = emit(name, P)?;
        let complex = KoszulComplex::for_veronese(&ideal, 3, &budget)?;
        let n4 = satisfies_np(&complex, 4, &budget)?;
        let n6 = satisfies_np(&complex, 6, &budget)?;
        let n7 = satisfies_np(&complex, 7, &budget)?;
        let opts = VerifyOptions { claim_secs: 1800 };
        let implied = [4, 6]
            .iter()
            .all(|&p| verify_imply_scan(&ideal, 3, p, &opts).claims.iter().all(|c| c.status == Status::Pass));
        let (good, detail) = within(
            started,
            minutes(30),
            n4 && n6 && !n7 && implied,
            format!("{name}: N_4 {n4} N_6 {n6} N_7 {n7}"),
        );
        ok &= good;
        parts.push(detail);
    }
    Ok((ok, parts.join(" | ")))
}

fn regularity_scan() -> Verdict {
    let started = Instant::now();
    let opts = VerifyOptions { claim_secs: 1800 };
    let names = [
        "hypersurface(2,3)",
        "hypersurface(3,3)",
        "hypersurface(4,3)",
        "hypersurface(2,4)",
        "hypersurface(3,4)",
        "hypersurface(4,4)",
        "twisted_cubic",
        "rational_quartic",
        "complete_intersection([2,2],4)",
        "complete_intersection([2,3],4)",
    ];
    let mut ok = true;
    let (mut pass, mut inapplicable) = (0, 0);
    let mut parts = [0usize; 3];
    let mut problems = Vec::new();
    for name in names {
        let ideal = emit(name, P)?;
        let m = syzlab::betti::regularity_of_sheaf(&ideal, &Budget::unlimited())?;
        let report = verify_theorem_main1(&ideal, (m + 1).min(4), &opts);
        for c in &report.claims {
            match c.status {
                Status::Pass => pass += 1,
                Status::NotApplicable => inapplicable += 1,
                Status::Fail | Status::NotEvaluated => {
                    ok = false;
                    problems.push(format!("{name} {} l={:?}: {}", c.claim, c.ell, c.computed));
                }
            }
            if c.status == Status::Pass {
                if c.claim.starts_with("projectively normal") {
                    parts[0] += 1;
                } else if c.claim.starts_with("N_{m-2}") {
                    parts[1] += 1;
                } else if c.claim.starts_with("N_l") {
                    parts[2] += 1;
                }
            }
        }
    }
    // each of the three statements must actually have been exercised
    ok &= parts.iter().all(|&k| k > 0);
    let mut detail = format!(
        "{pass} claims pass, {inapplicable} not applicable (not linearly normal); per part {parts:?}"
    );
    if !problems.is_empty() {
        detail.push_str(&format!("; {}", problems.join("; ")));
    }
    Ok(within(started, minutes(120), ok, detail))
}

fn ci_corollary() -> Verdict {
    let opts = VerifyOptions::default();
    let cases: [(&[u32], &[u32], &[bool]); 3] =
        [(&[2, 3], &[1, 2], &[false, true]), (&[2, 2], &[1], &[true]), (&[3, 3], &[1, 2], &[false, true])];
    let mut ok = true;
    let mut parts = Vec::new();
    for (degrees, ells, expected) in cases {
        let report = verify_ci_corollary(degrees, 4, ells, P, &opts)?;
        for (c, &holds) in report.claims.iter().zip(expected) {
            let seen = c.computed.contains("holds");
            ok &= c.status == Status::Pass && seen == holds;
            parts.push(format!("CI{degrees:?} l={}: {}", c.ell.unwrap_or(0), if seen { "N_1" } else { "not N_1" }));
        }
        ok &= report.claims.len() == expected.len();
    }
    Ok((ok, parts.join(", ")))
}

fn corpus_ideals(prime: u32) -> Result<Vec<(String, Ideal)>> {
    standard_corpus().into_iter().map(|e| Ok((e.name.clone(), e.ideal(prime, &Budget::unlimited())?))).collect()
}

fn method_agreement() -> Verdict {
    let b = Budget::unlimited();
    let mut bad = Vec::new();
    let corpus = corpus_ideals(P)?;
    for (name, ideal) in &corpus {
        let k = betti_table(ideal, None, Method::Koszul, &b)?;
        let s = betti_table(ideal, None, Method::Schreyer, &b)?;
        if !(k.is_complete() && s.is_complete() && k.entries() == s.entries()) {
            bad.push(name.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} ideals, disagreements: {bad:?}", corpus.len())))
}

fn tensor_identity() -> Verdict {
    let b = Budget::unlimited();
    let mut bad = Vec::new();
    for name in ["twisted_cubic", "veronese(2,2)", "complete_intersection([2,3],4)"] {
        let ideal = emit(name, P)?;
        let table = betti_table(&ideal, None, Method::Koszul, &b)?;
        for e in [1, 2] {
            let cone = betti_table(&degenerate_embed(&ideal, e)?, None, Method::Koszul, &b)?;
            if cone.entries() != tensor_transfer(&table, e) {
                bad.push(format!("{name} e={e}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("6 cases, mismatches: {bad:?}")))
}

fn characteristic_stability() -> Verdict {
    let b = Budget::unlimited();
    let mut bad = Vec::new();
    let large = corpus_ideals(P)?;
    let small = corpus_ideals(SMALL_P)?;
    for ((name, i), (_, j)) in large.iter().zip(&small) {
        let a = betti_table(i, None, Method::Koszul, &b)?;
        let c = betti_table(j, None, Method::Koszul, &b)?;
        if a.entries() != c.entries() {
            bad.push(name.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} ideals at p = {P} and {SMALL_P}, differing: {bad:?}", large.len())))
}

/// `HS(t) (1-t)^n` truncated at `t^top`, from Hilbert function values.
fn hilbert_times_power(ideal: &Ideal, top: usize) -> Result<Vec<i64>> {
    let gb = groebner(ideal, &Budget::unlimited())?;
    let n = ideal.n_vars() as u64;
    let hf: Vec<i64> = (0..=top as u32).map(|d| hilbert_function(&gb, d).map(|v| v as i64)).collect::<Result<_>>()?;
    let mut out = vec![0i64; top + 1];
    for (d, slot) in out.iter_mut().enumerate() {
        for k in 0..=d.min(n as usize) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            *slot += sign * binomial(n, k as u64) as i64 * hf[d - k];
        }
    }
    Ok(out)
}

fn euler_consistency() -> Verdict {
    const TOP: usize = 20;
    let b = Budget::unlimited();
    let mut bad = Vec::new();
    let corpus = corpus_ideals(P)?;
    for (name, ideal) in &corpus {
        let mut euler = betti_table(ideal, None, Method::Koszul, &b)?.euler_polynomial();
        euler.resize(TOP + 1, 0);
        if euler.len() > TOP + 1 || euler != hilbert_times_power(ideal, TOP)? {
            bad.push(name.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} ideals through t^{TOP}, mismatches: {bad:?}", corpus.len())))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Verdict)> = vec![
        ("N_l for nu_l(P^r), five cases", np_ge_ell_for_full_veronese),
        ("nu_2(P^3) satisfies exactly N_5", || exact_np(3, 2, 5, Some((6, 8)))),
        ("nu_3(P^2) satisfies exactly N_6", || exact_np(2, 3, 6, None)),
        ("plane cubics at l = 3: N_4, N_6, not N_7", plane_cubics),
        ("regularity scan over the small corpus", regularity_scan),
        ("complete intersections: N_1 iff 2l >= d_e", ci_corollary),
        ("Koszul and Schreyer tables agree", method_agreement),
        ("cone Betti numbers by tensoring", tensor_identity),
        ("same tables in characteristic 101", characteristic_stability),
        ("Euler characteristic matches the Hilbert series", euler_consistency),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {}: {name} ({detail})", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
