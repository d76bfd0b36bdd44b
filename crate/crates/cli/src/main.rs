use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qdiff_core::central::{check_theta_hom, covariant_reduce, vq_covariant_iso};
use qdiff_core::exec::Exec;
use qdiff_core::fdist::{check_equivariance, check_gf_identity, check_quasi_locality};
use qdiff_core::fuzz::{run_fuzz, sample_state, trial_rng, FuzzReport, TARGETS};
use qdiff_core::liealg::{self, key_elem, TILDE_A, VQ};
use qdiff_core::parse::{parse_element, parse_scalar};
use qdiff_core::pbwmod::{
    self, check_support_lemma, load_bottom_json, phi_intertwiner_check, Bv, InductionSpec,
    MatrixBottom, PbwState,
};
use qdiff_core::{AlgebraSpec, BasisKey, LinComb, QLaurent};

#[derive(Parser)]
#[command(name = "qdiff", version, about = "Exact checks for q-difference Lie algebras and their modules")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for every sampled sweep.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bracket of two elements.
    Bracket { algebra: String, x: String, y: String },
    /// Invariant form of two elements.
    Form { algebra: String, x: String, y: String },
    /// Seeded property sweep.
    Fuzz {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(TARGETS))]
        target: String,
        #[arg(long, default_value = "vq")]
        algebra: String,
        /// `N` or `-N..N`.
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Preset name or bottom-module JSON file (module-axiom only).
        #[arg(long)]
        spec: Option<String>,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// Structured checks over a finite range.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Comma-separated `name=int` pairs.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// Canonical covariant form of an element of hat-A-star, or θ of a vq element.
    Reduce {
        expr: String,
        #[arg(long, default_value = "hat-A-star")]
        algebra: String,
    },
    /// Act with an element on a state of an induced module.
    Act {
        #[arg(long)]
        spec: String,
        state: String,
        x: String,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// Restrictedness bound of a state.
    Bound {
        #[arg(long)]
        spec: String,
        state: String,
        /// Range of `k` in `E[k,l]`.
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        window: String,
        /// How many `l` beyond the bound to test.
        #[arg(long, default_value_t = 3)]
        margin: i64,
        #[command(flatten)]
        levels: LevelArgs,
    },
    /// Check a generating-function identity mode by mode.
    GfCheck {
        identity: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Mode range for both variables.
        #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
        window: String,
    },
    /// Summary sweep of all fuzz targets.
    Report {
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Theta,
    Bottom,
    Support,
    Phi,
    QuasiLocality,
    Equivariance,
}

#[derive(clap::Args)]
struct LevelArgs {
    /// Level of K1/c1 (preset specs only).
    #[arg(long)]
    l1: Option<String>,
    /// Level of K2/c2 (preset specs only).
    #[arg(long)]
    l2: Option<String>,
}

struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self { passed: true, text, json }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            match cli.output {
                Output::Text => println!("{}", o.text),
                Output::Json => println!("{}", serde_json::to_string_pretty(&o.json).expect("json")),
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn window_range(s: &str) -> Result<(i64, i64)> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
        if a > b {
            bail!("empty window `{s}`");
        }
        return Ok((a, b));
    }
    let n: i64 = s.parse().with_context(|| format!("bad window `{s}`"))?;
    if n < 0 {
        bail!("window radius must be nonnegative");
    }
    Ok((-n, n))
}

fn window_radius(s: &str) -> Result<i64> {
    match window_range(s)? {
        (a, b) if a == -b => Ok(b),
        _ => bail!("this command needs a symmetric window `N` or `-N..N`"),
    }
}

fn params(s: &str) -> Result<BTreeMap<String, i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("bad parameter `{p}`"))?;
            Ok((k.trim().to_string(), v.trim().parse().with_context(|| format!("bad value in `{p}`"))?))
        })
        .collect()
}

fn param(ps: &BTreeMap<String, i64>, name: &str) -> Result<i64> {
    ps.get(name).copied().ok_or_else(|| anyhow!("missing parameter `{name}`"))
}

fn scalar_opt(s: &Option<String>) -> Result<Option<QLaurent>> {
    s.as_deref().map(parse_scalar).transpose().map_err(Into::into)
}

fn load_spec(spec: &str, levels: &LevelArgs) -> Result<InductionSpec<MatrixBottom>> {
    if Path::new(spec).is_file() {
        if levels.l1.is_some() || levels.l2.is_some() {
            bail!("levels come from the spec file; --l1/--l2 apply to presets");
        }
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        return Ok(load_bottom_json(&text)?);
    }
    Ok(pbwmod::preset(spec, scalar_opt(&levels.l1)?, scalar_opt(&levels.l2)?)?)
}

fn element(alg: &AlgebraSpec, text: &str) -> Result<qdiff_core::LieElem> {
    let x = parse_element(text)?;
    alg.check_elem(&x)?;
    Ok(x)
}

fn lincomb_json<K: Ord + Clone + std::fmt::Display>(x: &LinComb<K>) -> Value {
    json!({
        "text": x.to_string(),
        "terms": x.iter().map(|(k, c)| json!({"key": k.to_string(), "coeff": c})).collect::<Vec<_>>(),
    })
}

fn fuzz_outcome(r: FuzzReport) -> Outcome {
    let text = format!(
        "{} on {} (window {}, {} trials, seed {}): {} failures{}",
        r.target,
        r.algebra,
        r.window,
        r.trials,
        r.seed,
        r.failures,
        r.first_counterexample.as_deref().map(|c| format!("\nfirst counterexample: {c}")).unwrap_or_default()
    );
    Outcome { passed: r.passed(), text, json: serde_json::to_value(&r).expect("json") }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.cmd {
        Cmd::Bracket { algebra, x, y } => {
            let alg = AlgebraSpec::lookup(algebra)?;
            let z = liealg::bracket(&alg, &element(&alg, x)?, &element(&alg, y)?)?;
            Ok(Outcome::ok(z.to_string(), lincomb_json(&z)))
        }
        Cmd::Form { algebra, x, y } => {
            let alg = AlgebraSpec::lookup(algebra)?;
            let c = liealg::form(&alg, &element(&alg, x)?, &element(&alg, y)?)?;
            Ok(Outcome::ok(c.to_string(), json!({"text": c.to_string(), "value": c})))
        }
        Cmd::Fuzz { target, algebra, window, trials, spec, levels } => {
            let w = window_radius(window)?;
            let spec = spec.as_deref().map(|s| load_spec(s, levels)).transpose()?;
            Ok(fuzz_outcome(run_fuzz(target, algebra, w, *trials, cli.seed, exec, spec.as_ref())?))
        }
        Cmd::Verify { check, window, params: ps, spec, trials, levels } => {
            verify(*check, window.as_deref(), &params(ps)?, spec.as_deref(), *trials, levels, cli.seed, exec)
        }
        Cmd::Reduce { expr, algebra } => {
            let alg = AlgebraSpec::lookup(algebra)?;
            let x = element(&alg, expr)?;
            let r = if alg == VQ {
                vq_covariant_iso(&x)?
            } else if alg == liealg::HAT_A_STAR {
                covariant_reduce(&x)?
            } else {
                bail!("reduce takes an element of hat-A-star or vq");
            };
            Ok(Outcome::ok(r.to_string(), lincomb_json(&r)))
        }
        Cmd::Act { spec, state, x, levels } => {
            let spec = load_spec(spec, levels)?;
            let w = spec.parse_state(state)?;
            let y = element(&spec.algebra, x)?;
            let r = spec.act(&y, &w)?;
            Ok(Outcome::ok(r.to_string(), lincomb_json(&r)))
        }
        Cmd::Bound { spec, state, window, margin, levels } => {
            let spec = load_spec(spec, levels)?;
            let w = spec.parse_state(state)?;
            let (a, b) = window_range(window)?;
            let ks: Vec<i64> = (a..=b).collect();
            let t = spec.restrictedness_bound(&w, &ks, *margin)?;
            Ok(Outcome::ok(
                format!("t = {t}"),
                json!({"state": w.to_string(), "bound": t, "k": [a, b], "margin": margin}),
            ))
        }
        Cmd::GfCheck { identity, params: ps, window } => {
            let rep = check_gf_identity(identity, &params(ps)?, window_range(window)?)?;
            let mut text = format!(
                "{identity} {:?}: {} coefficients checked, {} mismatches",
                rep.params,
                rep.checked,
                rep.mismatches.len()
            );
            if let Some(m) = rep.mismatches.first() {
                text.push_str(&format!("\nfirst mismatch at ({}, {}): {} vs {}", m.i, m.j, m.lhs, m.rhs));
            }
            Ok(Outcome { passed: rep.passed(), text, json: serde_json::to_value(&rep)? })
        }
        Cmd::Report { window, trials } => report(window_radius(window)?, *trials, cli.seed, exec),
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    check: Check,
    window: Option<&str>,
    ps: &BTreeMap<String, i64>,
    spec: Option<&str>,
    trials: usize,
    levels: &LevelArgs,
    seed: u64,
    exec: Exec,
) -> Result<Outcome> {
    match check {
        Check::Theta => {
            let w = window_radius(window.unwrap_or("4"))?;
            let keys: Vec<BasisKey> = (VQ.enumerate)(w);
            let pairs: Vec<(BasisKey, BasisKey)> =
                keys.iter().flat_map(|a| keys.iter().map(move |b| (a.clone(), b.clone()))).collect();
            let res = exec.map(&pairs, |(a, b)| check_theta_hom(&key_elem(a.clone()), &key_elem(b.clone())));
            let mut failures = Vec::new();
            for ((a, b), r) in pairs.iter().zip(res) {
                if !r? {
                    failures.push(format!("{a}, {b}"));
                }
            }
            Ok(Outcome {
                passed: failures.is_empty(),
                text: format!("theta on {} basis pairs: {} failures", pairs.len(), failures.len()),
                json: json!({"check": "theta", "window": w, "pairs": pairs.len(), "failures": failures}),
            })
        }
        Check::Bottom => {
            let spec = load_spec(spec.unwrap_or("verma"), levels)?;
            let rep = spec.check_bottom_consistency(window_radius(window.unwrap_or("3"))?);
            let mut text = format!(
                "bottom {}: {} pairs, {} violations",
                if rep.consistent { "consistent" } else { "inconsistent" },
                rep.pairs_checked,
                rep.violations.len()
            );
            for n in &rep.notes {
                text.push_str(&format!("\nnote: {n}"));
            }
            Ok(Outcome { passed: rep.consistent, text, json: serde_json::to_value(&rep)? })
        }
        Check::Support => {
            let g = |n| param(ps, n);
            let (rep, _) = check_support_lemma(g("t")?, g("kp")?, g("k1")?, g("j1")?, g("i1")?, g("j")?)?;
            Ok(Outcome {
                passed: rep.holds,
                text: format!("predicted {}, got {}: {}", rep.predicted, rep.result, if rep.holds { "holds" } else { "fails" }),
                json: serde_json::to_value(&rep)?,
            })
        }
        Check::Phi => {
            let l1 = scalar_opt(&levels.l1)?.unwrap_or_else(QLaurent::one);
            let l2 = scalar_opt(&levels.l2)?.unwrap_or_else(QLaurent::one);
            let gens = [BasisKey::G(0, 2), BasisKey::G(0, -1), BasisKey::G(1, 0), BasisKey::G(-1, 1)];
            let w = window_radius(window.unwrap_or("2"))?;
            let mut xs = vec![BasisKey::K1, BasisKey::K2];
            let mut i = 0;
            while xs.len() < trials.max(2) && i < 50 * trials {
                let k = TILDE_A.sample_key(&mut trial_rng(seed, i), w);
                i += 1;
                if !xs.contains(&k) {
                    xs.push(k);
                }
            }
            let rep = phi_intertwiner_check(l1, l2, &gens, 3, &xs, exec)?;
            Ok(Outcome {
                passed: rep.passed(),
                text: format!(
                    "phi on {} states x {} generators: {} failures",
                    rep.states,
                    rep.generators,
                    rep.failures.len()
                ),
                json: serde_json::to_value(&rep)?,
            })
        }
        Check::QuasiLocality => {
            let spec = load_spec(spec.unwrap_or("verma"), levels)?;
            if spec.algebra != VQ {
                bail!("quasi-locality acts through a vq module");
            }
            let p = (param(ps, "k")?, param(ps, "m")?, param(ps, "r")?, param(ps, "n")?);
            let states: Vec<PbwState<Bv>> = (0..trials)
                .map(|i| sample_state(&spec, &mut trial_rng(seed, i), 3, 3, 4))
                .collect::<qdiff_core::Result<_>>()?;
            let modes = window_range(window.unwrap_or("-4..2"))?;
            let rep = check_quasi_locality(p, &states, |x, w| spec.act(x, w), modes)?;
            Ok(Outcome {
                passed: rep.passed(),
                text: format!(
                    "quasi-locality {:?} on {} states: {} entries, {} failures",
                    p,
                    rep.states,
                    rep.checked,
                    rep.failures.len()
                ),
                json: serde_json::to_value(&rep)?,
            })
        }
        Check::Equivariance => {
            let modes = window_range(window.unwrap_or("-5..5"))?;
            let ok = check_equivariance(param(ps, "k")?, param(ps, "m")?, param(ps, "r")?, modes);
            Ok(Outcome {
                passed: ok,
                text: format!("equivariance: {}", if ok { "holds" } else { "fails" }),
                json: json!({"check": "equivariance", "params": ps, "passed": ok}),
            })
        }
    }
}

fn report(w: i64, trials: usize, seed: u64, exec: Exec) -> Result<Outcome> {
    let plan: &[(&str, &[&str])] = &[
        ("jacobi", &["vq", "gl-inf", "A", "A-star", "hat-A", "hat-A-star", "tilde-A"]),
        ("cocycle", &["A", "gl-inf", "hat-A"]),
        ("trivial", &["A", "hat-A"]),
        ("invariance", &["vq", "gl-inf", "A"]),
        ("iso", &["vq", "A", "hat-A"]),
    ];
    let mut reports = Vec::new();
    for (target, algs) in plan {
        for alg in *algs {
            match run_fuzz(target, alg, w, trials, seed, exec, None) {
                Ok(r) => reports.push(r),
                Err(qdiff_core::Error::NoForm(_)) => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }
    for name in pbwmod::PRESETS {
        let spec = pbwmod::preset(name, None, None)?;
        let mut r = run_fuzz("module-axiom", spec.algebra.name, w, trials, seed, exec, Some(&spec))?;
        r.algebra = format!("{name}:{}", r.algebra);
        reports.push(r);
    }
    let passed = reports.iter().all(FuzzReport::passed);
    let text = reports
        .iter()
        .map(|r| format!("{:<12} {:<14} {:>4}/{} {}", r.target, r.algebra, r.failures, r.trials, if r.passed() { "PASS" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome { passed, text, json: json!({"seed": seed, "window": w, "reports": reports}) })
}
