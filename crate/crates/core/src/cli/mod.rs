//! Command implementations behind the `cyclic-quiver` binary.

pub mod config;
pub mod report;

use std::path::Path;

use crate::classifier::{classify, find_witness, loop_case_table, predict_dimensions, ClassifyError, WitnessBounds};
use crate::oracle::{verify, OracleError, VerifyOptions};
use crate::setup::RegimeKind;
use config::{Config, ConfigError};
use report::{ReportFile, TableFile, TableRowEntry, FORMAT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: msg.into() }
    }
}

fn describe_classify_error(e: &ClassifyError) -> String {
    match e {
        ClassifyError::Setup(errs) => {
            let lines: Vec<String> = errs.iter().map(|e| format!("  - {}", e)).collect();
            format!("invalid setup:\n{}", lines.join("\n"))
        }
        other => format!("error: {}", other),
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<String, Outcome> {
    match out {
        None => Ok(text),
        Some(p) => std::fs::write(p, &text)
            .map(|_| format!("wrote {}\n", p.display()))
            .map_err(|e| Outcome::invalid(format!("cannot write {}: {}", p.display(), e))),
    }
}

fn render(r: &ReportFile, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Text => r.to_text(),
    }
}

fn load(path: &Path) -> Result<Config, Outcome> {
    Config::load(path).map_err(|e: ConfigError| Outcome::invalid(format!("error: {}", e)))
}

pub fn classify_config(cfg: &Config) -> Result<ReportFile, Outcome> {
    let params = cfg.to_params().map_err(|e| Outcome::invalid(format!("error: {}", e)))?;
    let r = classify(&params).map_err(|e| Outcome::invalid(describe_classify_error(&e)))?;
    let mult = cfg
        .multiplicity_vector(&r.quiver.spectrum)
        .map_err(|e| Outcome::invalid(format!("error: {}", e)))?;
    let pred = predict_dimensions(&r, &mult).map_err(|e| Outcome::invalid(describe_classify_error(&e)))?;
    Ok(ReportFile::new(cfg, &r, &mult, Some(&pred)))
}

pub fn cmd_classify(path: &Path, out: Option<&Path>, format: Format) -> Outcome {
    let run = || -> Result<String, Outcome> {
        let cfg = load(path)?;
        let report = classify_config(&cfg)?;
        emit(render(&report, format), out)
    };
    run().map(Outcome::ok).unwrap_or_else(|o| o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyFlags {
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub exact: bool,
}

pub fn verify_config(cfg: &Config, flags: VerifyFlags) -> Result<ReportFile, Outcome> {
    if cfg.regime == RegimeKind::Loop {
        return Err(Outcome::invalid("error: oracle requires numberfield regime"));
    }
    let mut report = classify_config(cfg)?;
    let params = cfg.to_params().map_err(|e| Outcome::invalid(format!("error: {}", e)))?;
    let r = classify(&params).map_err(|e| Outcome::invalid(describe_classify_error(&e)))?;
    let opts = VerifyOptions {
        trials: flags.trials.or(cfg.trials).unwrap_or(5),
        seed: flags.seed.or(cfg.seed).unwrap_or(0),
        exact: flags.exact,
        prediction_offset: cfg.prediction_offset.unwrap_or(0),
    };
    let v = verify(&r, &report.multiplicities, opts).map_err(|e| match e {
        OracleError::NotNumberfield => Outcome::invalid("error: oracle requires numberfield regime"),
        other => Outcome::invalid(format!("error: {}", other)),
    })?;
    report.verification = Some(v);
    Ok(report)
}

pub fn cmd_verify(path: &Path, flags: VerifyFlags, out: Option<&Path>, format: Format) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let cfg = load(path)?;
        let report = verify_config(&cfg, flags)?;
        let passed = report.verification.as_ref().is_some_and(|v| v.all_passed);
        let stdout = emit(render(&report, format), out)?;
        Ok(Outcome { code: if passed { EXIT_OK } else { EXIT_MISMATCH }, stdout, stderr: String::new() })
    };
    run().unwrap_or_else(|o| o)
}

/// Rows of the loop-case table with a classified witness each; rows whose
/// pattern has no witness within `bounds` are left out.
pub fn table(bounds: WitnessBounds) -> Result<TableFile, ClassifyError> {
    let mut rows = Vec::new();
    for row in loop_case_table() {
        let Some(w) = find_witness(&row, bounds) else { continue };
        let r = classify(&w)?;
        rows.push(TableRowEntry::new(&row, Config::from_params(&w), &r));
    }
    Ok(TableFile { format_version: FORMAT_VERSION.into(), rows })
}

pub fn cmd_table(bounds: Option<WitnessBounds>, out: Option<&Path>, format: Format) -> Outcome {
    let run = || -> Result<String, Outcome> {
        let t = table(bounds.unwrap_or_default()).map_err(|e| Outcome::invalid(describe_classify_error(&e)))?;
        let text = match format {
            Format::Json => serde_json::to_string_pretty(&t).expect("table serializes") + "\n",
            Format::Text => t.to_text(),
        };
        emit(text, out)
    };
    run().map(Outcome::ok).unwrap_or_else(|o| o)
}

/// The `VE-1` configuration over `Q(zeta_3)` used by the self-test.
pub const SELFTEST_CONFIG: &str = r#"
regime = "numberfield"
M = 3
n = 1
m = 3
mode = "polarized"
epsilon = 1
sigma = "identity"
beta = { zeta_exp = "0" }
c = { zeta_exp = "0" }
xi = { zeta_exp = "1/3" }
multiplicities = [
  { vertex = "e(0)", d = 1 },
  { vertex = "e(1/3)", d = 1 },
  { vertex = "e(2/3)", d = 1 },
]
"#;

/// Runs the oracle on a known-good configuration and on a deliberately
/// corrupted prediction; succeeds when the first passes and the second is
/// caught.
pub fn cmd_selftest(format: Format) -> Outcome {
    let cfg = Config::from_toml(SELFTEST_CONFIG).expect("builtin config parses");
    let flags = VerifyFlags { trials: Some(3), seed: Some(1), exact: false };
    let good = match verify_config(&cfg, flags) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let mut bad_cfg = cfg.clone();
    bad_cfg.prediction_offset = Some(1);
    let bad = match verify_config(&bad_cfg, flags) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let good_ok = good.verification.as_ref().is_some_and(|v| v.all_passed);
    let caught = bad.verification.as_ref().is_some_and(|v| {
        let f = v.failures();
        !f.is_empty() && f.iter().all(|c| c.name == "fixed_lie_dim")
    });
    let table_ok = table(WitnessBounds::default()).map(|t| t.rows.len() == 12).unwrap_or(false);
    let summary = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "known_good_passes": good_ok,
        "corrupted_prediction_caught": caught,
        "table_rows_witnessed": table_ok,
    });
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&summary).expect("json") + "\n",
        Format::Text => format!(
            "known-good configuration passes: {}\ncorrupted prediction caught: {}\nall 12 table rows witnessed: {}\n",
            good_ok, caught, table_ok
        ),
    };
    let code = if good_ok && caught && table_ok { EXIT_OK } else { EXIT_MISMATCH };
    Outcome { code, stdout, stderr: String::new() }
}
