//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordtopo_core::fixtures;
use ordtopo_core::lab::{self, io::to_json, AnalysisReport, Check, Exec, RunConfig, SuiteReport, Which};
use ordtopo_core::reflections::{sobrification, universal_property_smoke, ReflectionKind};
use ordtopo_core::scott::{scott_space, xizhao_model};
use ordtopo_core::symbolic::{sobrify_cofnat, wf_reflect_cofnat};
use ordtopo_core::systems::{classify, CofNatSystems, Tri};
use ordtopo_core::{FinPoset, FinSpace};

/// Pinned thresholds.
const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_TRIALS: usize = 500;
const CORPUS_MAX_SIZE: usize = 7;
const EQUATION_TIME_LIMIT: Duration = Duration::from_secs(300);
const UNIVERSAL_TARGET_POINTS: usize = 4;
const DICHOTOMY_LIMIT: usize = 10;

struct Outcome {
    id: u8,
    pass: bool,
    note: String,
}

fn corpus_config(which: Which) -> RunConfig {
    RunConfig { seed: CORPUS_SEED, max_size: CORPUS_MAX_SIZE, trials: CORPUS_TRIALS, which, ..RunConfig::default() }
}

/// Fixtures followed by the generated corpus.
fn corpus_reports(which: Which) -> Result<Vec<AnalysisReport>, lab::LabError> {
    let cfg = corpus_config(which);
    let mut reports = lab::run_fixtures(&cfg)?.reports;
    reports.extend(lab::run_suite(&cfg)?.reports);
    Ok(reports)
}

fn all_pass(reports: &[AnalysisReport], prefix: &str) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in reports {
        for c in r.checks.iter().filter(|c| c.name.starts_with(prefix)) {
            checked += 1;
            if !c.pass {
                bad.push(format!("{:?}: {}", r.input, c.name));
            }
        }
    }
    (checked, bad)
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let reports = match corpus_reports(Which::only(Check::EQUATIONS)) {
        Ok(r) => r,
        Err(e) => return Outcome { id: 1, pass: false, note: e.to_string() },
    };
    let elapsed = start.elapsed();
    let verdicts: usize = reports.iter().map(|r| r.equations.len()).sum();
    let failed: Vec<&AnalysisReport> = reports.iter().filter(|r| !r.pass).collect();
    let complete = reports.iter().all(|r| r.equations.len() == 5);
    Outcome {
        id: 1,
        pass: failed.is_empty() && complete && reports.len() >= CORPUS_TRIALS + 3 && elapsed <= EQUATION_TIME_LIMIT,
        note: format!(
            "{} instances, {} equation verdicts, {} failing, {:.1}s (limit {}s)",
            reports.len(),
            verdicts,
            failed.len(),
            elapsed.as_secs_f64(),
            EQUATION_TIME_LIMIT.as_secs()
        ),
    }
}

fn k22() -> FinPoset {
    let labels = ["l1", "l2", "u1", "u2"].iter().map(|s| s.to_string()).collect();
    FinPoset::from_index_pairs(labels, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

fn criterion2(reports: &[AnalysisReport]) -> Outcome {
    let (checked, bad) = all_pass(reports, "structure");
    let scanned = reports
        .iter()
        .filter_map(|r| r.check("structure"))
        .filter(|c| c.detail["dichotomy_scanned"] == serde_json::json!(true))
        .count();
    let small = reports
        .iter()
        .filter_map(|r| r.check("structure"))
        .filter(|c| c.detail["pairs"].as_array().is_some_and(|a| a.len() <= DICHOTOMY_LIMIT))
        .count();
    let h = xizhao_model(&fixtures::vee()).unwrap();
    let vee_k22 = h.poset().find_isomorphism(&k22()).is_some();
    let cross = h.poset().leq(h.index_of(0, 1).unwrap(), h.index_of(2, 2).unwrap())
        && h.poset().leq(h.index_of(0, 2).unwrap(), h.index_of(1, 1).unwrap());
    Outcome {
        id: 2,
        pass: bad.is_empty() && checked == reports.len() && scanned == small && vee_k22 && cross,
        note: format!(
            "{checked} Max homeomorphisms, {scanned}/{small} dichotomy scans with |P^| <= {DICHOTOMY_LIMIT}, VEE^ = K2,2: {vee_k22}, cross-slice: {cross}, failures {bad:?}"
        ),
    }
}

fn criterion3(reports: &[AnalysisReport]) -> Outcome {
    let (checked, bad) = all_pass(reports, "pairs[");
    let (mut cases, mut failures) = (0u64, 0u64);
    for r in reports {
        for c in r.checks.iter().filter(|c| c.name.starts_with("pairs[")) {
            cases += c.detail["compact_cases"].as_u64().unwrap_or(0);
            failures += c.detail["compact_failures"].as_u64().unwrap_or(u64::MAX / 4);
        }
    }
    Outcome {
        id: 3,
        pass: bad.is_empty() && checked == 2 * reports.len() && cases > 0 && failures == 0,
        note: format!(
            "{checked} pair checks, E_K display vs brute force {}/{cases} agree, failures {bad:?}",
            cases - failures.min(cases)
        ),
    }
}

fn universality_corpus() -> Vec<(String, FinSpace)> {
    let mut spaces: Vec<(String, FinSpace)> =
        fixtures::named_spaces().into_iter().map(|(n, x)| (n.to_string(), x)).collect();
    for (name, p) in fixtures::named_posets() {
        spaces.push((format!("Sigma {name}"), scott_space(&p).unwrap()));
    }
    for (name, p) in [("CHAIN2", fixtures::chain2()), ("VEE", fixtures::vee())] {
        let h = xizhao_model(&p).unwrap();
        spaces.push((format!("Sigma {name}^"), scott_space(h.poset()).unwrap()));
    }
    spaces
}

fn criterion4(reports: &[AnalysisReport]) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let (mut targets, mut maps) = (0, 0);
    for (name, x) in universality_corpus() {
        let sober = sobrification(&x).and_then(|xs| Ok(xs.space().is_sober()?));
        match (sober, universal_property_smoke(&x, ReflectionKind::Sober, UNIVERSAL_TARGET_POINTS, 10_000_000)) {
            (Ok(true), Ok(u)) if u.holds() && u.targets > 0 => {
                targets += u.targets;
                maps += u.maps_checked;
            }
            (s, u) => {
                pass = false;
                notes.push(format!("{name}: sober {s:?}, universality {u:?}"));
            }
        }
    }
    let (shen_n, shen_bad) = all_pass(reports, "shen[");
    let (embed_n, embed_bad) = all_pass(reports, "embed2");
    pass &= shen_bad.is_empty() && embed_bad.is_empty() && shen_n == 2 * reports.len() && embed_n == reports.len();
    notes.extend(shen_bad);
    notes.extend(embed_bad);
    Outcome {
        id: 4,
        pass,
        note: format!(
            "{} spaces x sober targets <= {UNIVERSAL_TARGET_POINTS} points ({targets} target checks, {maps} maps, unique factorizations), {shen_n} Shen chains at stage <= 1, {embed_n} embed2 checks {notes:?}",
            universality_corpus().len()
        ),
    }
}

fn criterion5(reports: &[AnalysisReport]) -> Outcome {
    let (checked, bad) = all_pass(reports, "classify");
    let all_true =
        reports.iter().all(|r| r.panel.as_ref().is_some_and(|p| p.preserved().iter().all(|(_, v)| *v == Tri::True)));
    Outcome {
        id: 5,
        pass: bad.is_empty() && checked == reports.len() && all_true,
        note: format!(
            "{checked} instances, Max(P^) and SigmaP^ panels agree, all five flags true: {all_true}, failures {bad:?}"
        ),
    }
}

fn criterion6() -> Outcome {
    let panel =
        match CofNatSystems::new().map_err(|e| e.to_string()).and_then(|ev| classify(&ev).map_err(|e| e.to_string())) {
            Ok(p) => p,
            Err(e) => return Outcome { id: 6, pass: false, note: e },
        };
    let want = [
        ("rudin", Tri::True),
        ("wk_space", Tri::True),
        ("well_filtered", Tri::False),
        ("sober", Tri::False),
        ("wd_space", Tri::True),
        ("weak_sober", Tri::True),
        ("weak_well_filtered", Tri::True),
    ];
    let wrong: Vec<&str> =
        want.iter().filter(|(n, v)| panel.flag(n).map(|f| f.value) != Some(*v)).map(|(n, _)| *n).collect();
    let xs = sobrify_cofnat().unwrap();
    let xw = wf_reflect_cofnat().unwrap();
    Outcome {
        id: 6,
        pass: wrong.is_empty() && xs.added_points() == 1 && xw == xs,
        note: format!(
            "flag mismatches {wrong:?}, sobrification adds {} point(s), X^w = X^s: {}",
            xs.added_points(),
            xw == xs
        ),
    }
}

fn criterion7() -> Outcome {
    match lab::oracle_search(&corpus_config(Which::all())) {
        Ok(r) => Outcome {
            id: 7,
            pass: r.disagreements.is_empty() && r.comparisons > 0,
            note: format!(
                "{} instances, {} comparisons, {} disagreements",
                r.instances,
                r.comparisons,
                r.disagreements.len()
            ),
        },
        Err(e) => Outcome { id: 7, pass: false, note: e.to_string() },
    }
}

fn criterion8() -> Outcome {
    let cfg = RunConfig { seed: 99, max_size: 6, trials: 40, ..RunConfig::default() };
    let run = |exec: Exec| -> Result<String, lab::LabError> {
        let s: SuiteReport = lab::run_suite_exec(&cfg, exec)?;
        Ok(to_json(&s))
    };
    let (a, b, c) = (run(Exec::default()), run(Exec::default()), run(Exec::Sequential));
    match (a, b, c) {
        (Ok(a), Ok(b), Ok(c)) => Outcome {
            id: 8,
            pass: a == b && a == c,
            note: format!("{} bytes, rerun identical: {}, sequential identical: {}", a.len(), a == b, a == c),
        },
        (a, b, c) => Outcome { id: 8, pass: false, note: format!("{:?} {:?} {:?}", a.err(), b.err(), c.err()) },
    }
}

fn main() -> ExitCode {
    let mut outcomes = vec![criterion1()];
    let which = Which::only([Check::Structure, Check::Pairs, Check::Shen, Check::Embed2, Check::Classify]);
    match corpus_reports(which) {
        Ok(reports) => {
            outcomes.push(criterion2(&reports));
            outcomes.push(criterion3(&reports));
            outcomes.push(criterion4(&reports));
            outcomes.push(criterion5(&reports));
        }
        Err(e) => {
            for id in 2..=5 {
                outcomes.push(Outcome { id, pass: false, note: e.to_string() });
            }
        }
    }
    outcomes.push(criterion6());
    outcomes.push(criterion7());
    outcomes.push(criterion8());
    for o in &outcomes {
        println!("criterion {}: {} - {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.note);
    }
    if outcomes.iter().all(|o| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
