//! `ordtopo`: command-line front end for the order-topology workbench.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ordtopo_core::lab::dot::{hyperspace_dot, poset_dot, space_dot};
use ordtopo_core::lab::io::{read_poset, read_space, to_json, PosetFile, SpaceFile};
use ordtopo_core::lab::{
    analyze_cofnat, analyze_poset, analyze_space, oracle_search, run_suite, Budget, Check, LabError, RunConfig, Which,
    SCHEMA_VERSION,
};
use ordtopo_core::reflections::{finite_collapse, sobrification, wf_reflection};
use ordtopo_core::scott::xizhao_model;
use ordtopo_core::symbolic::{sobrify_cofnat, wf_reflect_cofnat, SobPoint};
use ordtopo_core::systems::{classify, hmodel_table, CofNatSystems, FiniteSystems};
use ordtopo_core::{FinSpace, HyperSpace};

#[derive(Parser)]
#[command(name = "ordtopo", version, about = "Exact finite order-topology workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a poset (via its Xi-Zhao model), a space, or a builtin.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "all")]
        which: String,
        #[command(flatten)]
        output: Output,
    },
    /// Build P̂ and check its structure.
    Xizhao {
        #[arg(long)]
        poset: PathBuf,
        /// `all` runs every check on the model.
        #[arg(long)]
        check: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// The sobrification and its embedding.
    Sobrify {
        #[command(flatten)]
        input: SpaceInput,
        #[command(flatten)]
        output: Output,
    },
    /// The well-filtered reflection.
    Wfreflect {
        #[command(flatten)]
        input: SpaceInput,
        #[command(flatten)]
        output: Output,
    },
    /// Classifier panel and H-model table.
    Classify {
        #[command(flatten)]
        input: SpaceInput,
        #[command(flatten)]
        output: Output,
    },
    /// Decomposition equations on P̂.
    CheckEquations {
        #[arg(long)]
        poset: PathBuf,
        /// Comma-separated equation names or `all`.
        #[arg(long, default_value = "all")]
        which: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run checks over randomly generated posets.
    Search {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "all")]
        which: String,
        #[command(flatten)]
        output: Output,
    },
    /// Compare redundant computation paths over the corpus.
    Oracle {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    CofiniteNat,
}

#[derive(Args)]
struct Input {
    #[arg(long, conflicts_with_all = ["space", "builtin"])]
    poset: Option<PathBuf>,
    #[arg(long, conflicts_with = "builtin")]
    space: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

#[derive(Args)]
struct SpaceInput {
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    space: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 7)]
    max_size: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Rendered output and whether every verdict passed.
struct Done {
    text: String,
    pass: bool,
}

fn done(text: String, pass: bool) -> Done {
    Done { text, pass }
}

fn source(path: &Path) -> String {
    path.display().to_string()
}

fn space_dot_or_err(name: &str, x: &FinSpace) -> Result<Done, LabError> {
    Ok(Done { text: space_dot(name, x)?, pass: true })
}

fn no_dot(what: &str) -> LabError {
    LabError::Input(format!("--emit dot is not available for {what}"))
}

fn analyze(input: &Input, which: &str, emit: Emit) -> Result<Done, LabError> {
    let cfg = RunConfig { which: Which::parse(which)?, ..RunConfig::default() };
    match (&input.poset, &input.space, input.builtin) {
        (Some(path), None, None) => {
            let p = read_poset(path)?;
            if emit == Emit::Dot {
                return Ok(Done { text: poset_dot("P", &p), pass: true });
            }
            let r = analyze_poset("analyze", &source(path), &p, &cfg)?;
            Ok(done(to_json(&r), r.pass))
        }
        (None, Some(path), None) => {
            let x = read_space(path)?;
            if emit == Emit::Dot {
                return space_dot_or_err("X", &x);
            }
            let r = analyze_space("analyze", &source(path), &x, &cfg)?;
            Ok(done(to_json(&r), r.pass))
        }
        (None, None, Some(Builtin::CofiniteNat)) => {
            if emit == Emit::Dot {
                return Err(no_dot("cofinite-nat"));
            }
            let r = analyze_cofnat("analyze")?;
            Ok(done(to_json(&r), r.pass))
        }
        _ => Err(LabError::Input("give exactly one of --poset, --space, --builtin".into())),
    }
}

fn xizhao(path: &Path, check: Option<&str>, emit: Emit) -> Result<Done, LabError> {
    let p = read_poset(path)?;
    let h = xizhao_model(&p)?;
    if emit == Emit::Dot {
        return Ok(Done { text: poset_dot("P^", h.poset()), pass: true });
    }
    let which = match check {
        None => Which::only([Check::Structure]),
        Some(s) => Which::parse(s)?,
    };
    let cfg = RunConfig { which, ..RunConfig::default() };
    let report = analyze_poset("xizhao", &source(path), &p, &cfg)?;
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "model": {
            "pairs": h.poset().labels(),
            "order": PosetFile::from_poset(h.poset()).leq,
            "maxima": h.maxima().iter().map(|i| h.poset().label(i)).collect::<Vec<_>>(),
        },
        "report": report,
    });
    Ok(done(to_json(&out), report.pass))
}

fn hyperspace_json(x: &FinSpace, hs: &HyperSpace) -> Result<serde_json::Value, LabError> {
    let eta = hs.eta().unwrap();
    Ok(json!({
        "points": hs.members().iter().map(|&a| x.show(a)).collect::<Vec<_>>(),
        "space": SpaceFile::from_space(hs.space()),
        "eta": (0..x.len()).map(|i| json!([x.label(i), x.show(hs.member(eta[i]))])).collect::<Vec<_>>(),
        "sober": hs.space().is_sober()?,
        "eta_homeomorphism": finite_collapse(hs).is_ok(),
    }))
}

#[derive(Clone, Copy)]
enum Reflection {
    Sober,
    WellFiltered,
}

fn reflect(input: &SpaceInput, kind: Reflection, emit: Emit) -> Result<Done, LabError> {
    let command = match kind {
        Reflection::Sober => "sobrify",
        Reflection::WellFiltered => "wfreflect",
    };
    if let Some(Builtin::CofiniteNat) = input.builtin {
        if emit == Emit::Dot {
            return Err(no_dot("cofinite-nat"));
        }
        let hs = match kind {
            Reflection::Sober => sobrify_cofnat()?,
            Reflection::WellFiltered => wf_reflect_cofnat()?,
        };
        let sober = hs.check_sober().is_ok();
        let out = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "input": {"kind": "builtin", "name": "cofinite-nat"},
            "members": hs.members().describe(),
            "added_points": hs.added_points(),
            "top_closure": hs.has_top().then(|| hs.closure_of(SobPoint::Top).to_string()),
            "sober": sober,
        });
        return Ok(done(to_json(&out), sober));
    }
    let path = input.space.as_ref().expect("clap requires --space or --builtin");
    let x = read_space(path)?;
    let hs = match kind {
        Reflection::Sober => sobrification(&x)?,
        Reflection::WellFiltered => wf_reflection(&x)?,
    };
    if emit == Emit::Dot {
        return Ok(Done { text: hyperspace_dot(command, &hs)?, pass: true });
    }
    let body = hyperspace_json(&x, &hs)?;
    let pass = body["sober"] == json!(true) && body["eta_homeomorphism"] == json!(true);
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": {"kind": "space", "source": source(path), "space": SpaceFile::from_space(&x)},
        "reflection": body,
    });
    Ok(done(to_json(&out), pass))
}

fn classify_cmd(input: &SpaceInput, emit: Emit) -> Result<Done, LabError> {
    if emit == Emit::Dot {
        return Err(no_dot("classify"));
    }
    let out = if let Some(Builtin::CofiniteNat) = input.builtin {
        let ev = CofNatSystems::new()?;
        let panel = classify(&ev)?;
        let pass = panel.implication_violations().is_empty();
        (
            json!({
                "schema_version": SCHEMA_VERSION,
                "input": {"kind": "builtin", "name": "cofinite-nat"},
                "panel": panel,
                "hmodel": hmodel_table(&ev)?,
            }),
            pass,
        )
    } else {
        let path = input.space.as_ref().expect("clap requires --space or --builtin");
        let x = read_space(path)?;
        let ev = FiniteSystems::new(&x)?;
        let panel = classify(&ev)?;
        let pass = panel.implication_violations().is_empty();
        (
            json!({
                "schema_version": SCHEMA_VERSION,
                "input": {"kind": "space", "source": source(path), "space": SpaceFile::from_space(&x)},
                "panel": panel,
                "hmodel": hmodel_table(&ev)?,
            }),
            pass,
        )
    };
    Ok(done(to_json(&out.0), out.1))
}

fn check_equations(path: &Path, which: &str, emit: Emit) -> Result<Done, LabError> {
    if emit == Emit::Dot {
        return Err(no_dot("check-equations"));
    }
    let which = if which.trim().eq_ignore_ascii_case("all") {
        Which::only(Check::EQUATIONS)
    } else {
        let w = Which::parse(which)?;
        if let Some(c) = w.checks().iter().find(|c| c.equation().is_none()) {
            return Err(LabError::Input(format!("`{c}` is not an equation")));
        }
        w
    };
    let p = read_poset(path)?;
    let r = analyze_poset("check-equations", &source(path), &p, &RunConfig { which, ..RunConfig::default() })?;
    Ok(done(to_json(&r), r.pass))
}

fn run_config(run: &RunArgs, which: Which) -> RunConfig {
    RunConfig {
        seed: run.seed,
        max_size: run.max_size,
        trials: run.trials,
        budget: Budget::default(),
        which,
        timing: false,
    }
}

fn dispatch(cmd: &Command) -> Result<(Done, &Output), LabError> {
    Ok(match cmd {
        Command::Analyze { input, which, output } => (analyze(input, which, output.emit)?, output),
        Command::Xizhao { poset, check, output } => (xizhao(poset, check.as_deref(), output.emit)?, output),
        Command::Sobrify { input, output } => (reflect(input, Reflection::Sober, output.emit)?, output),
        Command::Wfreflect { input, output } => (reflect(input, Reflection::WellFiltered, output.emit)?, output),
        Command::Classify { input, output } => (classify_cmd(input, output.emit)?, output),
        Command::CheckEquations { poset, which, output } => (check_equations(poset, which, output.emit)?, output),
        Command::Search { run, which, output } => {
            if output.emit == Emit::Dot {
                return Err(no_dot("search"));
            }
            let s = run_suite(&run_config(run, Which::parse(which)?))?;
            (done(to_json(&s), s.pass()), output)
        }
        Command::Oracle { run, output } => {
            if output.emit == Emit::Dot {
                return Err(no_dot("oracle"));
            }
            let r = oracle_search(&run_config(run, Which::all()))?;
            (done(to_json(&r), r.disagreements.is_empty()), output)
        }
    })
}

fn emit(done: &Done, output: &Output) -> Result<(), LabError> {
    match &output.out {
        Some(path) => fs::write(path, &done.text).map_err(|e| LabError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", done.text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli.command).and_then(|(done, output)| emit(&done, output).map(|_| done.pass));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ordtopo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
