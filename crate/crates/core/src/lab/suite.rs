use std::time::Instant;

use serde_json::json;

use super::io::{PosetFile, SpaceFile};
use super::report::{AnalysisReport, CheckResult, FamiliesReport, InputEcho, SuiteReport, Timing};
use super::{generate_poset, Check, LabError, RunConfig};
use crate::fixtures;
use crate::order::FinPoset;
use crate::reflections::{
    claim_embed2_check, decomposition_check, finite_collapse, j_embedding_check, pair_conditions_check,
    shen_in_sobrification, sobrification, universal_property_smoke, wf_reflection, ModelContext, ReflectionKind,
};
use crate::scott::{max_homeo_check, DICHOTOMY_EXHAUSTIVE};
use crate::symbolic::{kf_witness_window, shen_cofnat, sobrify_cofnat, wf_reflect_cofnat};
use crate::systems::{
    classify, dcpo_model_determined_check, hmodel_table, proposition_key_check, CofNatSystems, FiniteSystems,
    SystemKind,
};
use crate::topo::FinSpace;

/// Budget errors abort the run; any other engine error becomes a failed check.
fn soft<T, E: Into<LabError>>(r: Result<T, E>) -> Result<Result<T, String>, LabError> {
    match r.map_err(Into::into) {
        Ok(v) => Ok(Ok(v)),
        Err(e) if e.is_budget() => Err(e),
        Err(e) => Ok(Err(e.to_string())),
    }
}

fn errored(name: impl Into<String>, msg: String) -> CheckResult {
    CheckResult::new(name, false, json!({ "error": msg }))
}

/// `Z_0 = η(X)` stabilizes by stage 1 at the whole of `X^s`.
fn shen_check(name: &str, x: &FinSpace) -> Result<CheckResult, LabError> {
    Ok(match soft(shen_in_sobrification(x))? {
        Ok((xs, chain)) => {
            let full = chain.last() == xs.space().carrier();
            let stages: Vec<String> = chain.stages.iter().map(|&s| xs.space().show(s)).collect();
            CheckResult::new(
                name,
                chain.stabilized_at <= 1 && full,
                json!({ "stabilized_at": chain.stabilized_at, "final_is_sobrification": full, "stages": stages }),
            )
        }
        Err(e) => errored(name, e),
    })
}

fn universal_checks(prefix: &str, x: &FinSpace, cfg: &RunConfig, out: &mut Vec<CheckResult>) -> Result<(), LabError> {
    for kind in [ReflectionKind::Sober, ReflectionKind::WellFiltered] {
        let name = format!("{prefix}universal[{kind:?}]");
        out.push(
            match soft(universal_property_smoke(x, kind, cfg.budget.universal_points, cfg.budget.maps as u128))? {
                Ok(r) => CheckResult::new(name, r.holds(), &r),
                Err(e) => errored(name, e),
            },
        );
    }
    Ok(())
}

fn timed(cfg: &RunConfig, start: Instant, report: &mut AnalysisReport) {
    if cfg.timing {
        report.timing = Some(Timing { millis: start.elapsed().as_millis() as u64 });
    }
}

/// Run the selected checks on `P̂`, `ΣP̂` and `Max(P̂)`.
pub fn analyze_poset(command: &str, source: &str, p: &FinPoset, cfg: &RunConfig) -> Result<AnalysisReport, LabError> {
    let start = Instant::now();
    let mut report =
        AnalysisReport::new(command, InputEcho::Poset { source: source.to_string(), poset: PosetFile::from_poset(p) });
    let ctx = ModelContext::new(p)?;
    report.families = Some(FamiliesReport::finite(&ctx.sigma, &ctx.sigma_fams));
    report.max_families = Some(FamiliesReport::finite(&ctx.max, &ctx.max_fams));
    let which = &cfg.which;
    let mut checks = Vec::new();

    if which.contains(Check::Structure) {
        checks.push(match soft(max_homeo_check(&ctx.h))? {
            Ok(map) => {
                let dichotomy = if ctx.h.len() <= DICHOTOMY_EXHAUSTIVE {
                    soft(ctx.h.dichotomy_violation())?.map(|v| v.map(|d| ctx.h.show(d)))
                } else {
                    Ok(None)
                };
                let homeo: Vec<String> = ctx
                    .h
                    .base()
                    .maximal_elements()
                    .iter()
                    .zip(&map)
                    .map(|(e, &t)| format!("{} -> {}", ctx.h.base().label(e), ctx.max.label(t)))
                    .collect();
                CheckResult::new(
                    "structure",
                    matches!(dichotomy, Ok(None)),
                    json!({
                        "pairs": ctx.h.poset().labels(),
                        "max_homeomorphism": homeo,
                        "dichotomy_scanned": ctx.h.len() <= DICHOTOMY_EXHAUSTIVE,
                        "dichotomy_violation": dichotomy,
                    }),
                )
            }
            Err(e) => errored("structure", e),
        });
    }

    for eq in Check::EQUATIONS.into_iter().filter(|&c| which.contains(c)).filter_map(Check::equation) {
        match soft(decomposition_check(&ctx, eq))? {
            Ok(v) => report.equations.push(v),
            Err(e) => checks.push(errored(eq.name(), e)),
        }
    }

    if which.contains(Check::Pairs) {
        for (tag, fam) in [("Sc", &ctx.sigma_fams.sc), ("Irr", &ctx.sigma_fams.irr)] {
            let name = format!("pairs[{tag}]");
            checks.push(match soft(pair_conditions_check(&ctx, fam))? {
                Ok(w) => CheckResult::new(name, w.holds(), &w),
                Err(e) => errored(name, e),
            });
        }
    }

    if which.contains(Check::J) {
        for kind in [ReflectionKind::Sober, ReflectionKind::WellFiltered] {
            let name = format!("j[{kind:?}]");
            checks.push(match soft(j_embedding_check(&ctx, kind))? {
                Ok(r) => CheckResult::new(name, r.holds(), &r),
                Err(e) => errored(name, e),
            });
        }
    }

    if which.contains(Check::Shen) {
        checks.push(shen_check("shen[SigmaP^]", &ctx.sigma)?);
        checks.push(shen_check("shen[Max]", &ctx.max)?);
    }

    if which.contains(Check::Embed2) {
        checks.push(match soft(claim_embed2_check(&ctx))? {
            Ok(r) => CheckResult::new("embed2", r.holds(), &r),
            Err(e) => errored("embed2", e),
        });
    }

    if which.contains(Check::Key) {
        for (i, &h) in SystemKind::ALL.iter().enumerate() {
            for &g in &SystemKind::ALL[i + 1..] {
                let name = format!("key[{h},{g}]");
                checks.push(match soft(proposition_key_check(&ctx, h, g))? {
                    Ok(k) => CheckResult::new(name, k.holds(), &k),
                    Err(e) => errored(name, e),
                });
            }
        }
    }

    if which.contains(Check::Determined) {
        for kind in SystemKind::ALL {
            let name = format!("determined[{kind}]");
            checks.push(match soft(dcpo_model_determined_check(&ctx, kind))? {
                Ok(r) => CheckResult::new(name, r.holds(), &r),
                Err(e) => errored(name, e),
            });
        }
    }

    if which.contains(Check::Classify) {
        let sigma = classify(&FiniteSystems::with_families(&ctx.sigma, ctx.sigma_fams.clone()));
        let max = classify(&FiniteSystems::with_families(&ctx.max, ctx.max_fams.clone()));
        checks.push(match (soft(sigma)?, soft(max)?) {
            (Ok(s), Ok(m)) => {
                let disagree: Vec<&str> =
                    s.preserved().iter().zip(m.preserved()).filter(|(a, b)| a.1 != b.1).map(|(a, _)| a.0).collect();
                let violations = [s.implication_violations(), m.implication_violations()].concat();
                let pass = disagree.is_empty() && violations.is_empty();
                let detail = json!({ "disagreements": disagree, "implication_violations": violations, "max_panel": m });
                report.panel = Some(s);
                CheckResult::new("classify", pass, detail)
            }
            (Err(e), _) | (_, Err(e)) => errored("classify", e),
        });
    }

    if which.contains(Check::Universal) {
        universal_checks("", &ctx.max, cfg, &mut checks)?;
    }

    report.checks = checks;
    report.finish();
    timed(cfg, start, &mut report);
    Ok(report)
}

/// Families, panel, reflections and the H-model table of a finite T0 space.
pub fn analyze_space(command: &str, source: &str, x: &FinSpace, cfg: &RunConfig) -> Result<AnalysisReport, LabError> {
    let start = Instant::now();
    let mut report =
        AnalysisReport::new(command, InputEcho::Space { source: source.to_string(), space: SpaceFile::from_space(x) });
    let ev = FiniteSystems::new(x)?;
    report.families = Some(FamiliesReport::finite(x, ev.families()));
    let panel = classify(&ev)?;
    let mut checks = vec![CheckResult::new(
        "implications",
        panel.implication_violations().is_empty(),
        panel.implication_violations(),
    )];
    let table = hmodel_table(&ev)?;
    checks.push(CheckResult::new("hmodel", true, &table));
    report.panel = Some(panel);

    for (name, r) in [("sobrification", sobrification(x)), ("wf_reflection", wf_reflection(x))] {
        checks.push(match soft(r)? {
            Ok(hs) => {
                let members: Vec<String> = hs.members().iter().map(|&a| x.show(a)).collect();
                let collapse = soft(finite_collapse(&hs))?;
                let sober = soft(hs.space().is_sober())?;
                let pass = collapse.is_ok() && sober == Ok(true);
                CheckResult::new(
                    name,
                    pass,
                    json!({ "points": members, "eta_homeomorphism": collapse.is_ok(), "sober": sober }),
                )
            }
            Err(e) => errored(name, e),
        });
    }
    checks.push(shen_check("shen", x)?);
    if cfg.which.contains(Check::Universal) {
        universal_checks("", x, cfg, &mut checks)?;
    }
    report.checks = checks;
    report.finish();
    timed(cfg, start, &mut report);
    Ok(report)
}

/// The cofinite topology on ℕ, symbolically.
pub fn analyze_cofnat(command: &str) -> Result<AnalysisReport, LabError> {
    let mut report = AnalysisReport::new(command, InputEcho::Builtin { name: "cofinite-nat".into() });
    let ev = CofNatSystems::new()?;
    report.families = Some(FamiliesReport::symbolic(ev.families()));
    let panel = classify(&ev)?;
    let mut checks = vec![CheckResult::new(
        "implications",
        panel.implication_violations().is_empty(),
        panel.implication_violations(),
    )];
    checks.push(CheckResult::new("hmodel", true, hmodel_table(&ev)?));
    report.panel = Some(panel);

    let xs = sobrify_cofnat()?;
    let xw = wf_reflect_cofnat()?;
    checks.push(CheckResult::new(
        "sobrification",
        xs.added_points() == 1 && xs.check_sober().is_ok(),
        json!({ "added_points": xs.added_points(), "points": "ℕ ∪ {⊤}", "top_closure": "ℕ" }),
    ));
    checks.push(CheckResult::new(
        "wf_reflection",
        xw == xs,
        json!({ "equals_sobrification": xw == xs, "added_points": xw.added_points() }),
    ));
    let stages = shen_cofnat()?;
    checks.push(CheckResult::new(
        "shen",
        stages.len() == 2 && stages[1].has_top,
        stages.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    ));
    let window = kf_witness_window(16);
    checks.push(CheckResult::new(
        "kf_window",
        window.is_none(),
        json!({ "window": 16, "counterexample": window.map(|s| format!("{s:?}")) }),
    ));
    report.checks = checks;
    report.finish();
    Ok(report)
}

/// How trials are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Exec::Parallel;
        #[cfg(not(feature = "parallel"))]
        Exec::Sequential
    }
}

/// Generate trial `trial` and analyse it.
pub fn run_trial(cfg: &RunConfig, trial: u64) -> Result<AnalysisReport, LabError> {
    let p = generate_poset(cfg, trial)?;
    analyze_poset("search", &format!("seed={},trial={trial}", cfg.seed), &p, cfg)
}

pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport, LabError> {
    run_suite_exec(cfg, Exec::default())
}

/// Reports come back in trial order whatever the schedule.
pub fn run_suite_exec(cfg: &RunConfig, exec: Exec) -> Result<SuiteReport, LabError> {
    cfg.validate()?;
    let trials = 0..cfg.trials as u64;
    let reports: Result<Vec<AnalysisReport>, LabError> = match exec {
        Exec::Sequential => trials.map(|t| run_trial(cfg, t)).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            trials.into_par_iter().map(|t| run_trial(cfg, t)).collect()
        }
    };
    Ok(SuiteReport::new(cfg.clone(), reports?))
}

/// The named poset fixtures.
pub fn run_fixtures(cfg: &RunConfig) -> Result<SuiteReport, LabError> {
    let reports = fixtures::named_posets()
        .iter()
        .map(|(name, p)| analyze_poset("search", &format!("fixture:{name}"), p, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new(cfg.clone(), reports))
}
