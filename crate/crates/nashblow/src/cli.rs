//! Command-line front end: a JSON problem document in, a
//! deterministic report out.
//!
//! Reports are byte-identical across repeated runs on the same input:
//! stdout carries only the report, wall-clock timing goes to stderr.
//! Exit code 0 means the computation succeeded and every requested
//! check holds; 1 means a check failed or was inconclusive within its
//! bound (the report says which); 2 means the input was invalid.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::checks::{
    check_divisibility, check_main_equality, check_thm12, check_thm14, nash_chain,
    section1_identity_check, toy_check, CheckVerdict, ChainReport, DEFAULT_ALPHA_MAX,
    DEFAULT_MAX_STEPS, DEFAULT_N_MAX,
};
use crate::error::{Error, Result};
use crate::jideal::{j_ideal, m_ideal, DEFAULT_DET_CAP};
use crate::problem::Problem;
use crate::variety::{derivation_validate, foliation_validate};

#[derive(Parser)]
#[command(name = "nashblow", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse operator applications that would enumerate more than
    /// this many candidate generators.
    #[arg(long, global = true, value_name = "K")]
    cap_determinants: Option<usize>,
}

#[derive(Args)]
struct SpecArg {
    /// Path to the JSON problem document.
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check tangency of every derivation and validity of the foliation.
    Validate(SpecArg),
    /// Apply the derivative-ideal operator to a named ideal and print
    /// the resulting basis.
    Jop {
        #[command(flatten)]
        spec: SpecArg,
        /// Name of an ideal from the document.
        #[arg(long)]
        ideal: String,
    },
    /// Apply the pure determinant operator to a named generator
    /// sequence and print the resulting basis.
    Mop {
        #[command(flatten)]
        spec: SpecArg,
        /// Name of an ideal from the document, read as an ordered sequence.
        #[arg(long)]
        ideal: String,
    },
    /// Run the rank-one cross-product criterion for a named derivation.
    Toy {
        #[command(flatten)]
        spec: SpecArg,
        /// Name of a derivation from the document.
        #[arg(long)]
        derivation: String,
    },
    /// Run one identity or criterion check.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Iterate the ideal chain, scanning for the termination equality
    /// at every step.
    Chain {
        #[command(flatten)]
        spec: SpecArg,
        /// Largest chain index to compute.
        #[arg(long, value_name = "S")]
        max_steps: Option<usize>,
        /// Largest equality exponent scanned at each step.
        #[arg(long, value_name = "N")]
        max_n: Option<u32>,
        /// Keep stepping after the equality first holds.
        #[arg(long)]
        continue_past_success: bool,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Product law: I^(r+1) * op(J) sits inside op(I*J).
    Thm12 {
        #[command(flatten)]
        spec: SpecArg,
        /// Left ideal name.
        #[arg(long)]
        i: String,
        /// Right ideal name.
        #[arg(long)]
        j: String,
    },
    /// Power law: op(I^N) equals I^((N-1)(r+1)) * op(I).
    Thm14 {
        #[command(flatten)]
        spec: SpecArg,
        /// Ideal name.
        #[arg(long)]
        ideal: String,
        /// Power to test, at least 1.
        #[arg(long)]
        n: u32,
    },
    /// Scaled-equality scan: J^N * op(J)^(r+2) = J^N * op(J*op(J)).
    Main {
        #[command(flatten)]
        spec: SpecArg,
        /// Ideal name.
        #[arg(long)]
        ideal: String,
        /// Largest exponent scanned.
        #[arg(long, value_name = "N")]
        max_n: Option<u32>,
    },
    /// Bounded search for a fractional S with S * op(I) = I^alpha.
    Divides {
        #[command(flatten)]
        spec: SpecArg,
        /// Ideal name.
        #[arg(long)]
        ideal: String,
        /// Largest exponent searched.
        #[arg(long, value_name = "A")]
        max_alpha: Option<u32>,
    },
    /// Telescoped identity across chain steps i, i+1, i+2.
    Identity {
        #[command(flatten)]
        spec: SpecArg,
        /// Chain index.
        #[arg(long)]
        i: usize,
        /// Exponent, at least the foliation rank plus 2.
        #[arg(long)]
        n: u32,
    },
}

/// Everything a run produces. The exit code is the process status;
/// stdout is the report and is deterministic; stderr carries timing
/// and error messages.
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<ValidationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ideal: Option<IdealJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    verdicts: Vec<CheckVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain: Option<ChainJson>,
    caps_hit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl Report {
    fn new(command: Vec<String>) -> Report {
        Report {
            command,
            validation: None,
            ideal: None,
            verdicts: Vec::new(),
            chain: None,
            caps_hit: false,
            note: None,
        }
    }
}

#[derive(Serialize)]
struct ValidationJson {
    tangent: BTreeMap<String, bool>,
    generic_rank: bool,
    lie_closure: bool,
    valid: bool,
}

#[derive(Serialize)]
struct IdealJson {
    name: String,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct ChainJson {
    steps: Vec<ChainStepJson>,
    terminated_at: Option<usize>,
    truncated: bool,
}

#[derive(Serialize)]
struct ChainStepJson {
    index: usize,
    ideal: Vec<String>,
    derived: Vec<String>,
    equality: BTreeMap<u32, bool>,
    smallest_passing_n: Option<u32>,
}

fn chain_json(s: &Problem, rep: &ChainReport) -> ChainJson {
    ChainJson {
        steps: rep
            .steps
            .iter()
            .map(|st| ChainStepJson {
                index: st.index,
                ideal: s.basis_texts(&st.ideal),
                derived: s.basis_texts(&st.derived),
                equality: st.equality_verdicts.clone(),
                smallest_passing_n: st.smallest_passing_n,
            })
            .collect(),
        terminated_at: rep.terminated_at,
        truncated: rep.truncated,
    }
}

/// Entry point shared by the binary and the tests. The first argv
/// element is the program name and is echoed nowhere.
pub fn run<I>(argv: I) -> Outcome
where
    I: IntoIterator<Item = String>,
{
    let argv: Vec<String> = argv.into_iter().collect();
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { exit_code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome { exit_code: 2, stdout: String::new(), stderr: rendered },
            };
        }
    };
    let started = Instant::now();
    match execute(&cli, echo) {
        Ok((report, exit_code)) => {
            let stdout = if cli.json {
                let mut text = serde_json::to_string_pretty(&report)
                    .expect("report serialization cannot fail");
                text.push('\n');
                text
            } else {
                render_human(&report)
            };
            let stderr = format!("elapsed: {} ms\n", started.elapsed().as_millis());
            Outcome { exit_code, stdout, stderr }
        }
        Err(e) => Outcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Folds a check result into the report: a verdict decides the exit
/// code, a cap refusal is reported as inconclusive rather than false.
fn capture(
    res: Result<CheckVerdict>,
    report: &mut Report,
    cap: usize,
) -> Result<i32> {
    match res {
        Ok(v) => {
            let exit = if v.holds { 0 } else { 1 };
            report.verdicts.push(v);
            Ok(exit)
        }
        Err(Error::CapExceeded { .. }) => {
            report.caps_hit = true;
            report.note =
                Some(format!("candidate cap {cap} exceeded; verdict unavailable"));
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn execute(cli: &Cli, echo: Vec<String>) -> Result<(Report, i32)> {
    let cap = cli.cap_determinants.unwrap_or(DEFAULT_DET_CAP);
    let mut report = Report::new(echo);
    let exit = match &cli.command {
        Command::Validate(spec) => {
            let s = Problem::from_path(&spec.spec)?;
            let mut tangent = BTreeMap::new();
            for name in s.derivation_names() {
                let ok = derivation_validate(s.ctx(), s.derivation(name)?)?;
                tangent.insert(name.to_string(), ok);
            }
            let fol = s.foliation()?;
            let members_tangent = s.foliation_names().iter().all(|n| tangent[n.as_str()]);
            let (generic_rank, lie_closure) = if members_tangent {
                let rep = foliation_validate(s.ctx(), &fol)?;
                (rep.generic_rank, rep.lie_closure)
            } else {
                (false, false)
            };
            let all_tangent = tangent.values().all(|&b| b);
            let valid = members_tangent && generic_rank && lie_closure;
            report.validation =
                Some(ValidationJson { tangent, generic_rank, lie_closure, valid });
            if valid && all_tangent {
                0
            } else {
                1
            }
        }
        Command::Jop { spec, ideal } => {
            let s = Problem::from_path(&spec.spec)?;
            let fol = s.validated_foliation()?;
            let h = s.ideal(ideal)?;
            match j_ideal(s.ctx(), &h, &fol, cap) {
                Ok(out) => {
                    report.ideal = Some(IdealJson {
                        name: format!("jop({ideal})"),
                        basis: s.basis_texts(&out),
                    });
                    0
                }
                Err(Error::CapExceeded { .. }) => {
                    report.caps_hit = true;
                    report.note = Some(format!(
                        "candidate cap {cap} exceeded; basis unavailable"
                    ));
                    1
                }
                Err(e) => return Err(e),
            }
        }
        Command::Mop { spec, ideal } => {
            let s = Problem::from_path(&spec.spec)?;
            let fol = s.validated_foliation()?;
            let seq = s.sequence(ideal)?;
            let out = m_ideal(s.ctx(), &seq, &fol)?;
            report.ideal = Some(IdealJson {
                name: format!("mop({ideal})"),
                basis: s.basis_texts(&out),
            });
            0
        }
        Command::Toy { spec, derivation } => {
            let s = Problem::from_path(&spec.spec)?;
            let d = s.derivation(derivation)?;
            if !derivation_validate(s.ctx(), d)? {
                return Err(Error::Invalid(format!(
                    "derivation `{derivation}` is not tangent to the variety"
                )));
            }
            let v = toy_check(s.ctx(), d)?;
            let exit = if v.holds { 0 } else { 1 };
            report.verdicts.push(v);
            exit
        }
        Command::Check { check } => match check {
            CheckCommand::Thm12 { spec, i, j } => {
                let s = Problem::from_path(&spec.spec)?;
                let fol = s.validated_foliation()?;
                let a = s.ideal(i)?;
                let b = s.ideal(j)?;
                capture(check_thm12(s.ctx(), &a, &b, &fol, cap), &mut report, cap)?
            }
            CheckCommand::Thm14 { spec, ideal, n } => {
                let s = Problem::from_path(&spec.spec)?;
                let fol = s.validated_foliation()?;
                let h = s.ideal(ideal)?;
                capture(check_thm14(s.ctx(), &h, *n, &fol, cap), &mut report, cap)?
            }
            CheckCommand::Main { spec, ideal, max_n } => {
                let s = Problem::from_path(&spec.spec)?;
                let fol = s.validated_foliation()?;
                let h = s.ideal(ideal)?;
                let n_max = max_n.unwrap_or(DEFAULT_N_MAX);
                capture(
                    check_main_equality(s.ctx(), &h, &fol, n_max, cap),
                    &mut report,
                    cap,
                )?
            }
            CheckCommand::Divides { spec, ideal, max_alpha } => {
                let s = Problem::from_path(&spec.spec)?;
                let fol = s.validated_foliation()?;
                let h = s.ideal(ideal)?;
                let alpha_max = max_alpha.unwrap_or(DEFAULT_ALPHA_MAX);
                capture(
                    check_divisibility(s.ctx(), &h, &fol, alpha_max, cap),
                    &mut report,
                    cap,
                )?
            }
            CheckCommand::Identity { spec, i, n } => {
                let s = Problem::from_path(&spec.spec)?;
                let fol = s.validated_foliation()?;
                let chain = nash_chain(s.ctx(), &fol, i + 2, 0, true, cap)?;
                if chain.truncated && !chain.steps.iter().any(|st| st.index == *i) {
                    report.caps_hit = true;
                    report.note = Some(format!(
                        "candidate cap {cap} exceeded before chain step {i}; verdict unavailable"
                    ));
                    1
                } else {
                    if chain.truncated {
                        report.caps_hit = true;
                    }
                    capture(
                        section1_identity_check(s.ctx(), &chain, *i, *n, &fol, cap),
                        &mut report,
                        cap,
                    )?
                }
            }
        },
        Command::Chain { spec, max_steps, max_n, continue_past_success } => {
            let s = Problem::from_path(&spec.spec)?;
            let fol = s.validated_foliation()?;
            let rep = nash_chain(
                s.ctx(),
                &fol,
                max_steps.unwrap_or(DEFAULT_MAX_STEPS),
                max_n.unwrap_or(DEFAULT_N_MAX),
                *continue_past_success,
                cap,
            )?;
            let exit = if rep.terminated_at.is_some() { 0 } else { 1 };
            if rep.truncated {
                report.caps_hit = true;
                report.note = Some(format!(
                    "candidate cap {cap} exceeded; chain truncated early"
                ));
            }
            report.chain = Some(chain_json(&s, &rep));
            exit
        }
    };
    Ok((report, exit))
}

fn render_human(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", r.command.join(" "));
    if let Some(v) = &r.validation {
        for (name, ok) in &v.tangent {
            let _ = writeln!(
                out,
                "derivation {name}: {}",
                if *ok { "tangent" } else { "not tangent" }
            );
        }
        let _ = writeln!(
            out,
            "generic rank: {}",
            if v.generic_rank { "full" } else { "deficient" }
        );
        let _ = writeln!(
            out,
            "bracket closure: {}",
            if v.lie_closure { "closed" } else { "not closed" }
        );
        let _ = writeln!(out, "foliation: {}", if v.valid { "valid" } else { "invalid" });
    }
    if let Some(i) = &r.ideal {
        let _ = writeln!(out, "basis of {}:", i.name);
        if i.basis.is_empty() {
            let _ = writeln!(out, "  0");
        }
        for g in &i.basis {
            let _ = writeln!(out, "  {g}");
        }
    }
    for v in &r.verdicts {
        let _ = writeln!(out, "{}: {}", v.name, if v.holds { "holds" } else { "fails" });
        match &v.witness {
            Some(crate::checks::Witness::NonMember { side, generator, normal_form }) => {
                let _ = writeln!(
                    out,
                    "  witness: {side} generator {generator} has normal form {normal_form}"
                );
            }
            Some(crate::checks::Witness::SmallestN { n }) => {
                let _ = writeln!(out, "  smallest exponent: {n}");
            }
            Some(crate::checks::Witness::Divisor { alpha, denominator, numerator_basis }) => {
                let _ = writeln!(out, "  exponent: {alpha}");
                let _ = writeln!(
                    out,
                    "  scaling ideal: ({}) / ({denominator})",
                    numerator_basis.join(", ")
                );
            }
            Some(crate::checks::Witness::InconclusiveAtBound { bound }) => {
                let _ = writeln!(out, "  inconclusive at bound {bound}");
            }
            None => {}
        }
        if let Some(note) = &v.note {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    if let Some(c) = &r.chain {
        for s in &c.steps {
            let _ = writeln!(out, "step {}:", s.index);
            let _ = writeln!(out, "  ideal: [{}]", s.ideal.join(", "));
            let _ = writeln!(out, "  derived: [{}]", s.derived.join(", "));
            for (n, ok) in &s.equality {
                let _ = writeln!(
                    out,
                    "  equality at {n}: {}",
                    if *ok { "holds" } else { "fails" }
                );
            }
            match s.smallest_passing_n {
                Some(n) => {
                    let _ = writeln!(out, "  smallest passing exponent: {n}");
                }
                None => {
                    let _ = writeln!(out, "  smallest passing exponent: none");
                }
            }
        }
        match c.terminated_at {
            Some(i) => {
                let _ = writeln!(out, "terminated at step {i}");
            }
            None => {
                let _ = writeln!(out, "terminated at: none");
            }
        }
        if c.truncated {
            let _ = writeln!(out, "chain truncated by the candidate cap");
        }
    }
    if r.caps_hit {
        let _ = writeln!(out, "cap hit: results are partial");
    }
    if let Some(note) = &r.note {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    const CUSP: &str = r#"{
        "ring": {"variables": ["x", "y"], "characteristic": 0},
        "defining_ideal": ["y^2 - x^3"],
        "derivations": {"d": ["2*y", "3*x^2"]},
        "foliation": ["d"],
        "ideals": {"J1": ["y", "x^2"], "unit": ["1"]}
    }"#;

    const CUSP3: &str = r#"{
        "ring": {"variables": ["x", "y", "z"], "characteristic": 0},
        "defining_ideal": ["y^2 - x^3", "z"],
        "derivations": {"d": ["2*y", "3*x^2", "0"]},
        "foliation": ["d"],
        "ideals": {}
    }"#;

    fn spec_file(dir: &tempfile::TempDir, text: &str) -> PathBuf {
        let path = dir.path().join("spec.json");
        std::fs::write(&path, text).unwrap();
        path
    }

    fn invoke(args: &[&str]) -> Outcome {
        let mut argv = vec!["nashblow".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        run(argv)
    }

    #[test]
    fn help_exits_zero_and_unknown_command_exits_two() {
        assert_eq!(invoke(&["--help"]).exit_code, 0);
        assert_eq!(invoke(&["frobnicate"]).exit_code, 2);
        assert_eq!(invoke(&[]).exit_code, 2);
    }

    #[test]
    fn missing_file_and_schema_violations_exit_two() {
        let o = invoke(&["validate", "/nonexistent/spec.json"]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("cannot read"));

        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, r#"{"ring": {"variables": ["x"], "characteristic": 0}, "surprise": 1}"#);
        let o = invoke(&["validate", path.to_str().unwrap()]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("schema violation"));

        let path = spec_file(&dir, r#"{"ring": {"variables": ["x"], "characteristic": 5}}"#);
        let o = invoke(&["validate", path.to_str().unwrap()]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("characteristic"));

        let path = spec_file(
            &dir,
            r#"{"ring": {"variables": ["x"], "characteristic": 0}, "ideals": {"a": ["q"]}}"#,
        );
        let o = invoke(&["validate", path.to_str().unwrap()]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("ideal `a`"));
    }

    #[test]
    fn validate_reports_the_cusp_foliation() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let o = invoke(&["validate", path.to_str().unwrap()]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("derivation d: tangent"));
        assert!(o.stdout.contains("foliation: valid"));
        assert!(o.stderr.starts_with("elapsed:"));
    }

    #[test]
    fn validate_flags_a_non_tangent_derivation() {
        let dir = tempfile::tempdir().unwrap();
        let text = r#"{
            "ring": {"variables": ["x", "y"], "characteristic": 0},
            "defining_ideal": ["y^2 - x^3"],
            "derivations": {"d": ["1", "0"]},
            "foliation": ["d"],
            "ideals": {}
        }"#;
        let path = spec_file(&dir, text);
        let o = invoke(&["validate", path.to_str().unwrap()]);
        assert_eq!(o.exit_code, 1);
        assert!(o.stdout.contains("derivation d: not tangent"));
        assert!(o.stdout.contains("foliation: invalid"));
    }

    #[test]
    fn operator_commands_print_bases() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let o = invoke(&["jop", path.to_str().unwrap(), "--ideal", "J1"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("basis of jop(J1):"));
        // (x^4, x^3*y) + (y^2 - x^3) has reduced basis residues
        // x*y^2 and y^3.
        assert!(o.stdout.contains("x*y^2"));
        assert!(o.stdout.contains("y^3"));
        assert!(!o.stdout.contains("x^3 - y^2"));

        let o = invoke(&["mop", path.to_str().unwrap(), "--ideal", "J1"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("basis of mop(J1):"));

        let o = invoke(&["jop", path.to_str().unwrap(), "--ideal", "nope"]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("unknown ideal"));
    }

    #[test]
    fn json_reports_parse_and_echo_the_command() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let o = invoke(&["jop", path.to_str().unwrap(), "--ideal", "J1", "--json"]);
        assert_eq!(o.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["command"][0], "jop");
        assert_eq!(v["ideal"]["name"], "jop(J1)");
        assert_eq!(v["caps_hit"], false);
        let basis: Vec<String> = v["ideal"]["basis"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        assert!(basis.contains(&"x*y^2".to_string()));
    }

    #[test]
    fn repeated_runs_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        for args in [
            vec!["chain", path.to_str().unwrap(), "--max-steps", "2", "--max-n", "3"],
            vec!["chain", path.to_str().unwrap(), "--max-steps", "2", "--max-n", "3", "--json"],
            vec!["validate", path.to_str().unwrap(), "--json"],
            vec!["check", "main", path.to_str().unwrap(), "--ideal", "J1", "--json"],
        ] {
            let a = invoke(&args);
            let b = invoke(&args);
            assert_eq!(a.stdout, b.stdout, "stdout differs for {args:?}");
            assert_eq!(a.exit_code, b.exit_code);
        }
    }

    #[test]
    fn toy_requires_three_variables() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let o = invoke(&["toy", path.to_str().unwrap(), "--derivation", "d"]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("3 variables"));
    }

    #[test]
    fn toy_verdict_on_the_embedded_cusp() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP3);
        let o = invoke(&["toy", path.to_str().unwrap(), "--derivation", "d"]);
        assert_eq!(o.exit_code, 1);
        assert!(o.stdout.contains("toy: fails"));
        assert!(o.stdout.contains("witness"));
    }

    #[test]
    fn chain_matches_the_frozen_cusp_behavior() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let o = invoke(&[
            "chain",
            path.to_str().unwrap(),
            "--max-steps",
            "3",
            "--max-n",
            "6",
            "--json",
        ]);
        assert_eq!(o.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["chain"]["terminated_at"], 1);
        assert_eq!(v["chain"]["truncated"], false);
        assert_eq!(v["chain"]["steps"][1]["smallest_passing_n"], 0);
    }

    #[test]
    fn check_commands_drive_the_fixed_verdicts() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let p = path.to_str().unwrap();

        let o = invoke(&["check", "thm12", p, "--i", "J1", "--j", "J1"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("thm12: holds"));

        let o = invoke(&["check", "thm14", p, "--ideal", "J1", "--n", "2"]);
        assert_eq!(o.exit_code, 0);

        let o = invoke(&["check", "main", p, "--ideal", "unit", "--max-n", "3"]);
        assert_eq!(o.exit_code, 1);
        assert!(o.stdout.contains("main_equality: fails"));
        assert!(o.stdout.contains("inconclusive at bound 3"));

        let o = invoke(&["check", "main", p, "--ideal", "J1"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("smallest exponent: 0"));

        let o = invoke(&["check", "divides", p, "--ideal", "J1"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("divides: holds"));

        let o = invoke(&["check", "identity", p, "--i", "1", "--n", "4"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("identity: holds"));

        let o = invoke(&["check", "identity", p, "--i", "1", "--n", "2"]);
        assert_eq!(o.exit_code, 2);
    }

    #[test]
    fn determinant_cap_reports_inconclusive_not_false() {
        let dir = tempfile::tempdir().unwrap();
        let path = spec_file(&dir, CUSP);
        let o = invoke(&[
            "jop",
            path.to_str().unwrap(),
            "--ideal",
            "J1",
            "--cap-determinants",
            "3",
        ]);
        assert_eq!(o.exit_code, 1);
        assert!(o.stdout.contains("cap hit"));
        assert!(o.stdout.contains("basis unavailable"));

        // A cap tight enough to refuse the very first scan leaves the
        // chain truncated with no termination step.
        let o = invoke(&[
            "chain",
            path.to_str().unwrap(),
            "--max-steps",
            "4",
            "--cap-determinants",
            "8",
            "--json",
        ]);
        assert_eq!(o.exit_code, 1);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["chain"]["truncated"], true);
        assert_eq!(v["caps_hit"], true);
        assert_eq!(v["chain"]["terminated_at"], serde_json::Value::Null);

        // The reduced-basis representation keeps every step at two
        // generators, so a modest cap still lets the full continued
        // chain run; termination at step 1 means success.
        let o = invoke(&[
            "chain",
            path.to_str().unwrap(),
            "--max-steps",
            "4",
            "--continue-past-success",
            "--cap-determinants",
            "40",
            "--json",
        ]);
        assert_eq!(o.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["chain"]["terminated_at"], 1);
        assert_eq!(v["chain"]["truncated"], false);
        assert_eq!(v["chain"]["steps"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn non_tangent_foliation_is_invalid_input_for_computations() {
        let dir = tempfile::tempdir().unwrap();
        let text = r#"{
            "ring": {"variables": ["x", "y"], "characteristic": 0},
            "defining_ideal": ["y^2 - x^3"],
            "derivations": {"d": ["1", "0"]},
            "foliation": ["d"],
            "ideals": {"J1": ["y", "x^2"]}
        }"#;
        let path = spec_file(&dir, text);
        let o = invoke(&["jop", path.to_str().unwrap(), "--ideal", "J1"]);
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.contains("not tangent"));
    }
}
