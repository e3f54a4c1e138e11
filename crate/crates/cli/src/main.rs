//! Command-line front end: constructs the configured sequence, runs
//! verification and bounded-remainder experiments, and emits deterministic
//! CSV/JSON reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 certification error (a result undecidable at the configured digit
//! precision). Every error path prints a single machine-parsable
//! `error: <class>: <reason>` line on stderr.

mod config;
mod output;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::json;

use config::{CliError, CliResult, ExperimentConfig, OutputFormat, Sequence};
use lowdisc::brs::{delta_profile, star_discrepancy_exact};
use lowdisc::verify::{
    d_admissible_net, d_admissible_sequence, exact_t_value, is_net, weak_admissibility,
};
use output::{emit, to_json_string, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "lowdisc",
    about = "Digital (t,m,s)-nets, Halton-type sequences, and bounded-remainder experiments",
    version
)]
struct Cli {
    /// Key-value configuration file (see `lowdisc describe`).
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    /// Override a configuration key, e.g. --set m=10 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output path (overrides the `out` key).
    #[arg(long, global = true)]
    out: Option<String>,

    /// Output format: json or csv (overrides the `format` key).
    #[arg(long, global = true)]
    format: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the first points of the configured sequence.
    Generate,
    /// Check the (t,m,s)-net property and admissibility of the first b^m points.
    Verify,
    /// Compute the exact minimal t of the first b^m points.
    TValue,
    /// Compute kappa_m and d-admissibility of the first b^m points.
    Admissibility,
    /// Run bounded-remainder profiles for the configured box corners.
    Brs,
    /// Compute the exact star discrepancy of the first points.
    Discrepancy,
    /// Compute the dual space of the overall generating matrix at scale m.
    Dual,
    /// Print all configuration keys, defaults, and grammar notes.
    Describe,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    });
}

fn run(cli: Cli) -> CliResult<i32> {
    if matches!(cli.command, Command::Describe) {
        return describe();
    }
    let mut overrides = cli.set.clone();
    if let Some(out) = &cli.out {
        overrides.push(format!("out={out}"));
    }
    if let Some(format) = &cli.format {
        overrides.push(format!("format={format}"));
    }
    let cfg = ExperimentConfig::load(cli.config.as_deref(), &overrides)?;
    match cli.command {
        Command::Generate => generate(&cfg),
        Command::Verify => verify(&cfg),
        Command::TValue => t_value(&cfg),
        Command::Admissibility => admissibility(&cfg),
        Command::Brs => brs(&cfg),
        Command::Discrepancy => discrepancy(&cfg),
        Command::Dual => dual(&cfg),
        Command::Describe => unreachable!(),
    }
}

/// Default point count: b^m for fixed-base sequences; mixed-radix
/// sequences need an explicit `count`.
fn resolve_count(cfg: &ExperimentConfig, seq: &Sequence) -> CliResult<u64> {
    if let Some(count) = cfg.count()? {
        return Ok(count);
    }
    let m = cfg.m()?;
    match seq.fixed_base() {
        Some(b) => (b as u128)
            .checked_pow(m)
            .filter(|&c| c <= u64::MAX as u128)
            .map(|c| c as u64)
            .ok_or_else(|| CliError::Config(format!("b^m overflows at m={m}"))),
        None => Err(CliError::Config(
            "mixed-radix sequences need an explicit count = N".into(),
        )),
    }
}

fn pow_checked(b: u64, m: u32) -> CliResult<u64> {
    (b as u128)
        .checked_pow(m)
        .filter(|&c| c <= u64::MAX as u128)
        .map(|c| c as u64)
        .ok_or_else(|| CliError::Config(format!("b^m overflows at b={b}, m={m}")))
}

fn fixed_base_points(
    cfg: &ExperimentConfig,
    seq: &Sequence,
    m: u32,
) -> CliResult<(u64, Vec<Vec<lowdisc::digits::DigitString>>)> {
    let b = seq.fixed_base().ok_or_else(|| {
        CliError::Config("this command needs a fixed-base sequence".into())
    })?;
    if (m as usize) > cfg.precision()? {
        return Err(CliError::Config(format!(
            "m={m} exceeds precision {}; raise precision",
            cfg.precision()?
        )));
    }
    let count = pow_checked(b, m)?;
    Ok((b, seq.points(0, count)?))
}

fn meta(cfg: &ExperimentConfig, seq: &Sequence) -> CliResult<serde_json::Value> {
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "sequence": seq.id,
        "dimension": seq.dimension(),
        "precision": cfg.precision()?,
        "seed": cfg.seed()?,
    }))
}

fn generate(cfg: &ExperimentConfig) -> CliResult<i32> {
    let seq = cfg.sequence()?;
    let count = resolve_count(cfg, &seq)?;
    let points = seq.points(0, count)?;
    let rendered = match cfg.format()? {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = points
                .iter()
                .enumerate()
                .map(|(n, p)| {
                    json!({
                        "n": n as u64,
                        "coords": p.iter().map(|c| json!({
                            "digits": c.to_string(),
                            "decimal": c.to_f64(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut doc = meta(cfg, &seq)?;
            doc["command"] = json!("generate");
            doc["count"] = json!(count);
            doc["points"] = json!(rows);
            to_json_string(&doc)
        }
        OutputFormat::Csv => {
            let s = seq.dimension();
            let mut out = format!("# schema_version={SCHEMA_VERSION}\n# sequence={}\n", seq.id);
            out.push('n');
            for i in 1..=s {
                out.push_str(&format!(",x{i}_digits,x{i}_decimal"));
            }
            out.push('\n');
            for (n, p) in points.iter().enumerate() {
                out.push_str(&n.to_string());
                for c in p {
                    out.push_str(&format!(",{},{}", c, c.to_f64()));
                }
                out.push('\n');
            }
            out
        }
    };
    emit(cfg.out_path().as_deref(), &rendered)?;
    Ok(0)
}

fn require_json(cfg: &ExperimentConfig, command: &str) -> CliResult<()> {
    if cfg.format()? == OutputFormat::Csv {
        return Err(CliError::Config(format!("{command} emits json; set format=json")));
    }
    Ok(())
}

/// Pairwise scans are quadratic; keep them at desk scale.
fn check_pairwise_scale(count: u64) -> CliResult<()> {
    if count > 1 << 13 {
        return Err(CliError::Config(format!(
            "{count} points is beyond the pairwise-scan limit of 2^13; lower m"
        )));
    }
    Ok(())
}

fn verify(cfg: &ExperimentConfig) -> CliResult<i32> {
    require_json(cfg, "verify")?;
    let seq = cfg.sequence()?;
    let m = cfg.m()?;
    let (b, points) = fixed_base_points(cfg, &seq, m)?;
    let exact = exact_t_value(&points, b, m)?;
    let claimed = cfg.claimed_t()?.unwrap_or(exact);
    let mut report = is_net(&points, b, claimed, m)?;
    report.exact_t = Some(exact);
    let mut failed = !report.verified;

    check_pairwise_scale(points.len() as u64)?;
    let weak = weak_admissibility(&points)?;
    let mut admissibility = json!({
        "kappa": weak.kappa.to_string(),
        "kappa_exponent": weak.kappa_exponent,
        "weakly_admissible": weak.weakly_admissible,
        "truncated_pairs": weak.truncated_pairs,
    });
    if let Some(d) = cfg.d()? {
        let seq_check = d_admissible_sequence(&points, d)?;
        failed |= !seq_check.admissible;
        admissibility["d"] = json!(d);
        admissibility["d_admissible"] = json!(seq_check.admissible);
        admissibility["violating_pair"] = json!(seq_check.violating_pair);
    }
    let mut doc = meta(cfg, &seq)?;
    doc["command"] = json!("verify");
    doc["net"] = serde_json::to_value(&report).expect("serializable");
    doc["admissibility"] = admissibility;
    emit(cfg.out_path().as_deref(), &to_json_string(&doc))?;
    Ok(if failed { 1 } else { 0 })
}

fn t_value(cfg: &ExperimentConfig) -> CliResult<i32> {
    require_json(cfg, "t-value")?;
    let seq = cfg.sequence()?;
    let m = cfg.m()?;
    let (b, points) = fixed_base_points(cfg, &seq, m)?;
    let exact = exact_t_value(&points, b, m)?;
    let mut doc = meta(cfg, &seq)?;
    doc["command"] = json!("t-value");
    doc["b"] = json!(b);
    doc["m"] = json!(m);
    doc["exact_t"] = json!(exact);
    emit(cfg.out_path().as_deref(), &to_json_string(&doc))?;
    Ok(0)
}

fn admissibility(cfg: &ExperimentConfig) -> CliResult<i32> {
    require_json(cfg, "admissibility")?;
    let seq = cfg.sequence()?;
    let m = cfg.m()?;
    let (_, points) = fixed_base_points(cfg, &seq, m)?;
    check_pairwise_scale(points.len() as u64)?;
    let weak = weak_admissibility(&points)?;
    let mut failed = !weak.weakly_admissible;
    let mut doc = meta(cfg, &seq)?;
    doc["command"] = json!("admissibility");
    doc["m"] = json!(m);
    doc["kappa"] = json!(weak.kappa.to_string());
    doc["kappa_exponent"] = json!(weak.kappa_exponent);
    doc["weakly_admissible"] = json!(weak.weakly_admissible);
    doc["truncated_pairs"] = json!(weak.truncated_pairs);
    doc["min_pair"] = json!(weak.min_pair);
    if let Some(d) = cfg.d()? {
        let seq_check = d_admissible_sequence(&points, d)?;
        let net_check = d_admissible_net(&points, d, m)?;
        failed |= !seq_check.admissible;
        doc["d"] = json!(d);
        doc["d_admissible_sequence"] =
            serde_json::to_value(&seq_check).expect("serializable");
        doc["d_admissible_net"] = serde_json::to_value(&net_check).expect("serializable");
    }
    emit(cfg.out_path().as_deref(), &to_json_string(&doc))?;
    Ok(if failed { 1 } else { 0 })
}

fn brs(cfg: &ExperimentConfig) -> CliResult<i32> {
    let seq = cfg.sequence()?;
    // Mixed-radix sequences still run against base-2 corner expansions;
    // membership falls back to exact value comparison.
    let gamma_base = seq.fixed_base().unwrap_or(2);
    let gammas = cfg.gammas(gamma_base)?;
    let m_max = cfg.m_max()?;
    let total = pow_checked(gamma_base, m_max)?;
    let mut anomalies = 0u32;
    let mut experiments = Vec::new();
    for gamma in &gammas {
        if gamma.dimension() != seq.dimension() {
            return Err(CliError::Config(format!(
                "gamma '{gamma}' has {} coordinates, sequence has {}",
                gamma.dimension(),
                seq.dimension()
            )));
        }
        let profile = delta_profile(&seq.id, gamma, m_max, seq.stream(total)?)?;
        let bounded = profile.bounded_proxy();
        let cond = gamma.cond_check();
        let anomaly = bounded != cond;
        anomalies += anomaly as u32;
        experiments.push((gamma, cond, bounded, anomaly, profile));
    }
    let rendered = match cfg.format()? {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = experiments
                .iter()
                .map(|(gamma, cond, bounded, anomaly, profile)| {
                    json!({
                        "gamma": gamma.to_string(),
                        "volume": gamma.volume().to_string(),
                        "cond": cond,
                        "bounded": bounded,
                        "anomaly": anomaly,
                        "profile": profile.entries.iter().map(|e| json!({
                            "m": e.m,
                            "n_at_sup": e.n_at_sup,
                            "sup_abs_delta_num": e.sup_abs_delta.numer().to_string(),
                            "sup_abs_delta_den": e.sup_abs_delta.denom().to_string(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut doc = meta(cfg, &seq)?;
            doc["command"] = json!("brs");
            doc["m_max"] = json!(m_max);
            doc["anomalies"] = json!(anomalies);
            doc["experiments"] = json!(rows);
            to_json_string(&doc)
        }
        OutputFormat::Csv => {
            let mut out = format!("# schema_version={SCHEMA_VERSION}\n# sequence={}\n", seq.id);
            for (gamma, cond, bounded, anomaly, profile) in &experiments {
                out.push_str(&format!(
                    "# gamma={gamma} cond={cond} bounded={bounded} anomaly={anomaly}\n"
                ));
                out.push_str("m,N_at_sup,sup_abs_delta_num,sup_abs_delta_den\n");
                for e in &profile.entries {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        e.m,
                        e.n_at_sup,
                        e.sup_abs_delta.numer(),
                        e.sup_abs_delta.denom()
                    ));
                }
            }
            out
        }
    };
    emit(cfg.out_path().as_deref(), &rendered)?;
    Ok(if anomalies > 0 { 1 } else { 0 })
}

fn discrepancy(cfg: &ExperimentConfig) -> CliResult<i32> {
    require_json(cfg, "discrepancy")?;
    let seq = cfg.sequence()?;
    let count = resolve_count(cfg, &seq)?;
    let points = seq.points(0, count)?;
    let dstar = star_discrepancy_exact(&points)?;
    let mut doc = meta(cfg, &seq)?;
    doc["command"] = json!("discrepancy");
    doc["n"] = json!(count);
    doc["star_discrepancy"] = json!(dstar.to_string());
    doc["decimal"] = json!(dstar.to_f64());
    emit(cfg.out_path().as_deref(), &to_json_string(&doc))?;
    Ok(0)
}

fn dual(cfg: &ExperimentConfig) -> CliResult<i32> {
    require_json(cfg, "dual")?;
    let seq = cfg.sequence()?;
    let digital = seq.digital().ok_or_else(|| {
        CliError::Config("dual spaces need generating matrices (niederreiter or explicit-matrices)".into())
    })?;
    let m = cfg.m()? as usize;
    let basis = digital.dual_space(m);
    let matrices: Vec<Vec<Vec<u64>>> = (0..digital.dimension())
        .map(|i| digital.matrix(i).snapshot(m, m))
        .collect();
    let mut doc = meta(cfg, &seq)?;
    doc["command"] = json!("dual");
    doc["m"] = json!(m);
    doc["b"] = json!(basis.b);
    doc["row_space_dim"] = json!(basis.row_space_dim);
    doc["dual_dim"] = json!(basis.vectors.len());
    doc["dual_basis"] = json!(basis.vectors);
    doc["overall_matrix"] = json!(digital.overall_matrix(m));
    doc["matrices"] = json!(matrices);
    emit(cfg.out_path().as_deref(), &to_json_string(&doc))?;
    Ok(0)
}

fn describe() -> CliResult<i32> {
    let mut out = String::from("configuration keys (key = default  # meaning):\n");
    for (key, default, meaning) in config::DEFAULTS {
        let shown = if default.is_empty() { "(unset)" } else { default };
        out.push_str(&format!("  {key:<12} = {shown:<14} # {meaning}\n"));
    }
    out.push_str(
        "\ngrammars:\n  field        GF(q) with q a prime power (built-in moduli up to 64),\n               or explicit: GF(q)=GF(p)[x]/(modulus over GF(p))\n  polynomials  terms joined by '+': 2x^3+x+1 with coefficients in [0, b);\n               extension-field coefficients as digit vectors: [1,0]x^2+[1,1]\n  gamma        per coordinate: 1 | 0 | a/c | 0.digits | 0.digits(period)\n\nexit codes: 0 success, 1 verification failure, 2 config error, 3 certification error\n",
    );
    emit(None, &out)?;
    Ok(0)
}
