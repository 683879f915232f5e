//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Set `PSYQ_SEED` to vary the random move cases and
//! `PSYQ_FULL_SEARCH=1` to run the ex1/Z_5 recovery without resuming.

mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::process::ExitCode;
use std::time::Instant;

use common::{check_move, move_fixtures, Move};
use psyq::coloring::brute_force_colorings;
use psyq::search::{flatten, search_brackets_with};
use psyq::statesum::{bracket_value_precolored, state_breakdown_precolored};
use psyq::{
    bracket_multiset, check_axioms, counting_invariant, enumerate_colorings, fixtures, format, jablan, BraidWord,
    CrossingKind, Error, FiniteRing, Mode, Op, PsyBracket, Psyquandle, Ring, SearchSpec,
};

/// Move cases per move and fixture.
const CASES: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn multiset(word: &str, strands: usize, mode: Mode, br: &PsyBracket) -> String {
    let w = BraidWord::parse(word, strands, mode).unwrap();
    bracket_multiset(&w.close(), br).unwrap().to_string()
}

fn psyquandle_validation() -> Outcome {
    let mut bad = Vec::new();
    for (name, q) in [
        ("ex1", fixtures::ex1()),
        ("z6", fixtures::z6_psyquandle()),
        ("z5", fixtures::z5_psyquandle()),
        ("z9", fixtures::z9_psyquandle()),
    ] {
        let [ut, ot, ub, ob] = Op::ALL.map(|op| q.table(op).clone());
        if !check_axioms(&ut, &ot, &ub, &ob).pass() {
            bad.push(name);
        }
    }
    let z9_pi = fixtures::z9_psyquandle().is_pi_adequate();
    if !z9_pi {
        bad.push("z9 pI");
    }
    outcome(bad.is_empty(), format!("ex1, z6, z5, z9 pass all axioms; z9 pI-adequate: {z9_pi}; failures {bad:?}"))
}

fn jablan_property() -> Outcome {
    let (mut total, mut passed) = (0, 0);
    let mut failing = Vec::new();
    let mut explained = true;
    for m in [3u32, 5, 7, 9] {
        let r = FiniteRing::new(m).unwrap();
        let units = r.units();
        for &s in &units {
            for &t in &units {
                total += 1;
                let sum_unit = r.is_unit(r.add(s, t));
                match jablan(m, s as i64, t as i64) {
                    Ok(q) if q.is_pi_adequate() => {
                        passed += 1;
                        explained &= sum_unit;
                    }
                    Ok(_) => {
                        failing.push(format!("({m},{s},{t}) not pI"));
                        explained = false;
                    }
                    Err(Error::PsyquandleAxioms(rep)) => {
                        let only_invertibility = rep.failures.iter().all(|f| f.axiom == "0");
                        explained &= !sum_unit && only_invertibility;
                        failing.push(format!("({m},{s},{t})"));
                    }
                    Err(e) => {
                        failing.push(format!("({m},{s},{t}) {e}"));
                        explained = false;
                    }
                }
            }
        }
    }
    let mut detail = format!("{passed}/{total} unit pairs pass");
    if !failing.is_empty() {
        detail += &format!(
            "; rejected {} e.g. {}; {}",
            failing.len(),
            failing[..failing.len().min(4)].join(" "),
            if explained {
                "every rejected pair has s+t a non-unit, so the dot operations are not right-invertible \
                 (axiom 0); every pair with s+t a unit passes"
            } else {
                "some failures are not explained by s+t being a non-unit"
            }
        );
    }
    outcome(failing.is_empty(), detail)
}

fn bracket_validation() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, br) in [("ex2", fixtures::ex2_bracket()), ("z9", fixtures::z9_bracket()), ("z6", fixtures::z6_bracket())]
    {
        let text = format::write_bracket(&br);
        let valid = format::parse_bracket(&text, br.base()).is_ok() && br.recheck().pass();
        ok &= valid;
        parts.push(format!("{name} {} (delta {}, w {})", if valid { "valid" } else { "INVALID" }, br.delta(), br.w()));
    }
    let z9 = fixtures::z9_bracket();
    ok &= z9.delta() == 2 && z9.w() == 1;
    outcome(ok, parts.join(", "))
}

fn worked_expansion() -> Outcome {
    let br = fixtures::z9_bracket();
    let d = BraidWord::parse("s1 s1 t1", 2, Mode::Pseudo).unwrap().close();
    let kinds = [CrossingKind::Positive, CrossingKind::Positive, CrossingKind::Singular];
    let pairs = [(0, 1), (1, 0), (0, 0)];
    let terms: Vec<u32> =
        state_breakdown_precolored(&d, &kinds, &pairs, &br).unwrap().iter().map(|t| t.contribution).collect();
    let total = bracket_value_precolored(&d, &kinds, &pairs, &br).unwrap();
    let m = bracket_multiset(&d, &br).unwrap().to_string();
    outcome(
        terms == [2, 5, 8, 8, 8, 8, 2, 2] && total == 7 && m == "2u^7",
        format!("contributions {terms:?}, total {total}, multiset {m}"),
    )
}

fn braid_reproductions() -> Vec<(String, Outcome)> {
    let z9 = fixtures::z9_bracket();
    let z6 = fixtures::z6_bracket();
    let a = multiset("s1 t1 t1", 2, Mode::Pseudo, &z9);
    let b = multiset("s1 s1 t1", 2, Mode::Pseudo, &z9);
    let c = multiset("s1 s1 t1", 2, Mode::Singular, &z6);
    let alt = multiset("t1 t1 t1", 2, Mode::Pseudo, &z9);
    let literal = outcome(
        a == "2u^4" && b == "2u^2" && c == "u^2 + 2u^4",
        format!(
            "Z9 pseudo s1 t1 t1 = {a} (want 2u^4), s1 s1 t1 = {b} (want 2u^2), Z6 singular s1 s1 t1 = {c} \
             (want u^2 + 2u^4). s1 s1 t1 closes to the shadow of criterion 4, whose multiset is 2u^7, so the \
             two criteria cannot both hold"
        ),
    );
    let values = outcome(
        a == "2u^4" && alt == "2u^2" && b == "2u^7" && c == "u^2 + 2u^4",
        format!("table values reproduced: t1 t1 t1 = {alt}, s1 t1 t1 = {a}, s1 s1 t1 = {b}, Z6 trefoil = {c}"),
    );
    vec![("5".into(), literal), ("5b".into(), values)]
}

fn properness() -> Outcome {
    let q = fixtures::z9_psyquandle();
    let z9 = fixtures::z9_bracket();
    let d1 = BraidWord::parse("s1 t1 t1", 2, Mode::Pseudo).unwrap().close();
    let d2 = BraidWord::parse("s1 s1 t1", 2, Mode::Pseudo).unwrap().close();
    let (c1, c2) = (counting_invariant(&d1, &q).unwrap(), counting_invariant(&d2, &q).unwrap());
    let (m1, m2) = (bracket_multiset(&d1, &z9).unwrap(), bracket_multiset(&d2, &z9).unwrap());
    outcome(c1 == c2 && m1 != m2, format!("counts {c1} = {c2}, multisets {m1} vs {m2}"))
}

fn invariance() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (fi, (name, br, mode)) in move_fixtures().iter().enumerate() {
        let mut moves = Move::CLASSICAL.to_vec();
        if *mode == Mode::Pseudo && br.is_pi_adequate() {
            moves.push(Move::Tau);
        }
        for (mi, mv) in moves.into_iter().enumerate() {
            runs += 1;
            if let Some(cx) = check_move(mv, br, *mode, CASES, (fi * 16 + mi) as u64) {
                failures.push(format!(
                    "{name} {}: `{}` {} vs `{}` {}",
                    mv.name(),
                    cx.left,
                    cx.values.0,
                    cx.right,
                    cx.values.1
                ));
            }
        }
    }
    let detail = format!(
        "seed {}, {runs} move/fixture pairs x {CASES} cases, {} disagreements{}",
        common::seed(),
        failures.len(),
        failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
    );
    outcome(failures.is_empty(), detail)
}

fn bracket_keys(v: &[PsyBracket]) -> BTreeSet<Vec<u32>> {
    v.iter().map(flatten).collect()
}

fn oracles() -> Outcome {
    let quandles = [
        fixtures::ex1(),
        fixtures::z9_psyquandle(),
        fixtures::z6_psyquandle(),
        fixtures::z5_psyquandle(),
        fixtures::non_pi_psyquandle(),
    ];
    let mut words: Vec<BraidWord> = ["", "t1", "s1 s1 t1", "s1 t1 t1", "t1 t1 t1", "s1 s2- t1 t2"]
        .iter()
        .map(|w| BraidWord::parse(w, if w.contains('2') { 3 } else { 2 }, Mode::Singular).unwrap())
        .collect();
    let mut rng = common::rng(0xc0105);
    for _ in 0..40 {
        let k = 1 + (words.len() % 3);
        words.push(common::random_word(&mut rng, k, 5, Mode::Singular));
    }
    let (mut compared, mut guarded, mut bad) = (0, 0, Vec::new());
    for q in &quandles {
        for w in &words {
            let d = w.close();
            match brute_force_colorings(&d, q) {
                Ok(h) => {
                    compared += 1;
                    let fast: BTreeSet<_> = enumerate_colorings(&d, q).unwrap().colorings.into_iter().collect();
                    let slow: BTreeSet<_> = h.colorings.into_iter().collect();
                    if fast != slow {
                        bad.push(w.to_string());
                    }
                }
                Err(Error::Guard(_)) => guarded += 1,
                Err(e) => bad.push(format!("{w}: {e}")),
            }
        }
    }
    let mut searches = Vec::new();
    let mut cases: Vec<(Psyquandle, u32)> =
        [2, 3, 5].iter().map(|&m| (psyq::constant_action(1, &[0]).unwrap(), m)).collect();
    cases.push((fixtures::z9_psyquandle(), 3));
    for (q, m) in cases {
        let found = psyq::search_brackets(&SearchSpec::new(q.clone(), m)).unwrap().brackets;
        let brute = psyq::brute_force_brackets(&q, m).unwrap();
        let same = bracket_keys(&found) == bracket_keys(&brute) && found.len() == brute.len();
        if !same {
            bad.push(format!("search n={} m={m}", q.size()));
        }
        searches.push(format!("n={} m={m}: {}", q.size(), found.len()));
    }
    outcome(
        bad.is_empty(),
        format!(
            "colorings equal on {compared} diagram/psyquandle pairs ({guarded} over guard); search = brute force \
             ({}); mismatches {bad:?}",
            searches.join(", ")
        ),
    )
}

/// Streams the search until `target` appears; returns its position.
fn find_in_stream(spec: &SearchSpec, target: &[u32], stop_prefix: Option<usize>) -> Option<u64> {
    let mut pos = 0u64;
    let mut hit = None;
    search_brackets_with(spec, |v| {
        pos += 1;
        if v == target {
            hit = Some(pos);
            return ControlFlow::Break(());
        }
        match stop_prefix {
            Some(k) if v[..k] != target[..k] => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    })
    .unwrap();
    hit
}

fn search_recovery() -> Outcome {
    let ex2 = flatten(&fixtures::ex2_bracket());
    let n = fixtures::ex1().size();
    let mut spec = SearchSpec::new(fixtures::ex1(), 5);
    let full = std::env::var("PSYQ_FULL_SEARCH").is_ok_and(|v| v == "1");
    let start = Instant::now();
    let ex2_pos = if full {
        find_in_stream(&spec, &ex2, None)
    } else {
        spec.resume = Some(ex2[..n * n].to_vec());
        find_in_stream(&spec, &ex2, Some(n * n))
    };
    let ex2_time = start.elapsed();
    let z9 = flatten(&fixtures::z9_bracket());
    let mut spec = SearchSpec::new(fixtures::z9_psyquandle(), 9);
    spec.require_pi = true;
    let start = Instant::now();
    let z9_pos = find_in_stream(&spec, &z9, None);
    let z9_time = start.elapsed();
    outcome(
        ex2_pos.is_some() && z9_pos.is_some(),
        format!(
            "ex1/Z5 {} emits ex2 at position {:?} ({:.2}s); z9/Z9 --pi emits the Z9 tables at position {:?} ({:.2}s)",
            if full { "from scratch" } else { "resumed after ex2's A table" },
            ex2_pos,
            ex2_time.as_secs_f64(),
            z9_pos,
            z9_time.as_secs_f64()
        ),
    )
}

fn kink_identities() -> Outcome {
    let mut all: Vec<PsyBracket> = fixtures::all_brackets().into_iter().map(|(_, b)| b).collect();
    for m in [2, 3, 5] {
        let q = psyq::constant_action(1, &[0]).unwrap();
        all.extend(psyq::search_brackets(&SearchSpec::new(q, m)).unwrap().brackets);
    }
    all.extend(psyq::search_brackets(&SearchSpec::new(fixtures::z9_psyquandle(), 3)).unwrap().brackets);
    let mut spec = SearchSpec::new(fixtures::z9_psyquandle(), 9);
    spec.require_pi = true;
    spec.limit = 2000;
    all.extend(psyq::search_brackets(&spec).unwrap().brackets);
    let pi = all.iter().filter(|b| b.is_pi_adequate()).count();
    let bad: Vec<String> = all.iter().filter(|b| !b.kink_report().pass()).map(psyq::search::resume_token).collect();
    outcome(bad.is_empty(), format!("{} brackets checked ({pi} pI-adequate), violations {}", all.len(), bad.len()))
}

fn table_note() -> Outcome {
    let z5 = fixtures::z5_bracket();
    let unknot = multiset("t1", 2, Mode::Singular, &z5);
    let trefoil = multiset("s1 s1 t1", 2, Mode::Singular, &z5);
    outcome(
        true,
        format!(
            "excluded from hard acceptance; `psyq table` groups batch files. Z5 2-bouquets: t1 = {unknot}, \
             s1 s1 t1 = {trefoil}"
        ),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1", "psyquandle validation", psyquandle_validation),
        ("2", "jablan property", jablan_property),
        ("3", "bracket validation", bracket_validation),
        ("4", "worked expansion", worked_expansion),
        ("6", "properness", properness),
        ("7", "invariance under moves", invariance),
        ("8", "oracle equivalence", oracles),
        ("9", "search recovery", search_recovery),
        ("10", "kink identities", kink_identities),
    ];
    let mut lines = Vec::new();
    for (id, name, f) in criteria {
        let o = f();
        lines.push((id.to_string(), name.to_string(), o));
        if id == "4" {
            for (id, o) in braid_reproductions() {
                lines.push((id, "braid reproductions".into(), o));
            }
        }
    }
    let mut failed = 0;
    println!();
    for (id, name, o) in &lines {
        failed += usize::from(!o.pass);
        println!("{} {id:>3} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("INFO  11 table reproduction: {}", table_note().detail);
    println!("\n{} passed, {failed} failed", lines.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
