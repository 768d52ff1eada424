//! Command-line front end: run the verification suite, the convention and
//! mutation audits, and dump bases, functional tables, matrices, one-forms
//! and finite-section spectra.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qslab::claims::{self, Config, Context, Mode, Status};
use qslab::dirac;
use qslab::error::QslabError;
use qslab::haar;
use qslab::lab::Lab;
use qslab::ncpoly::NCPoly;
use qslab::preset::RawLab;
use qslab::scalar::ScalarQ;
use qslab::spheres;
use qslab::spinors::{self, Chirality};

#[derive(Parser)]
#[command(
    name = "qslab",
    about = "symbolic and numeric laboratory for the q-deformed symplectic spheres",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Cap on truncation degrees (claims use their own defaults when unset)
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Numeric sample point(s) 0 < q < 1
    #[arg(long, global = true, default_values_t = vec![0.5, 0.9])]
    q: Vec<f64>,
    /// Which claims to run
    #[arg(long, global = true, value_enum, default_value_t = CliMode::All)]
    mode: CliMode,
    /// Directory with s7q/suq2/s4q/uq_so5 preset files (defaults to built-in)
    #[arg(long, global = true)]
    preset_dir: Option<PathBuf>,
    /// Write the machine-readable report or data here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the claim pool (0 = rayon default)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Exact,
    Numeric,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run every registered claim and report pass/fail/recorded
    Verify,
    /// Run the convention auditor (recorded searches over q-power variants)
    Audit {
        /// Also sweep single-coefficient preset mutations
        #[arg(long)]
        mutation: bool,
    },
    /// Solve and print a chiral module basis
    Basis {
        #[arg(long, value_enum, default_value_t = CliChirality::Plus)]
        chirality: CliChirality,
        #[arg(long, default_value_t = String::from("json"))]
        emit: String,
    },
    /// Print the invariant functional on the monomial basis
    Haar {
        #[arg(long, default_value_t = String::from("csv"))]
        emit: String,
    },
    /// Print the frame matrix or the projection
    Matrices {
        #[arg(long, default_value_t = String::from("psi"))]
        emit: String,
    },
    /// Evaluate one-forms of an invariant generator on the truncated basis
    Oneforms {
        /// x0, x1, x1*, x2 or x2*
        #[arg(long, default_value_t = String::from("x0"))]
        a: String,
    },
    /// Finite-section spectrum of the Dirac candidate
    Spectrum {
        #[arg(long, default_value_t = String::from("1"))]
        lambda: String,
        #[arg(long, default_value_t = String::from("1"))]
        mu: String,
        #[arg(long, default_value_t = String::from("0"))]
        delta: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CliChirality {
    Plus,
    Minus,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    // accepts forms like "1", "-0.5", "2i", "1+2i", "0.3-1.5i"
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(im_part) = t.strip_suffix('i') {
        // split into real and imaginary at the last +/- that is not leading
        // and not part of an exponent
        let bytes: Vec<char> = im_part.chars().collect();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == '+' || bytes[k] == '-') && bytes[k - 1] != 'e' && bytes[k - 1] != 'E' {
                split = Some(k);
                break;
            }
        }
        return match split {
            None => {
                let ims = if im_part.is_empty() || im_part == "+" {
                    "1"
                } else if im_part == "-" {
                    "-1"
                } else {
                    im_part
                };
                ims.parse::<f64>()
                    .map(|im| Complex64::new(0.0, im))
                    .map_err(|e| e.to_string())
            }
            Some(k) => {
                let re: f64 = im_part[..k]
                    .parse()
                    .map_err(|e: std::num::ParseFloatError| e.to_string())?;
                let ims = &im_part[k..];
                let im: f64 = if ims == "+" {
                    1.0
                } else if ims == "-" {
                    -1.0
                } else {
                    ims.parse()
                        .map_err(|e: std::num::ParseFloatError| e.to_string())?
                };
                Ok(Complex64::new(re, im))
            }
        };
    }
    Err(format!("cannot parse complex number `{}`", s))
}

fn load_lab(global: &GlobalArgs) -> Result<(Lab, RawLab), QslabError> {
    let raw = match &global.preset_dir {
        Some(dir) => RawLab::from_dir(dir)?,
        None => RawLab::builtin()?,
    };
    Ok((Lab::from_raw(&raw)?, raw))
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), QslabError> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            println!("{}", content);
            Ok(())
        }
    }
}

fn run() -> Result<ExitCode, QslabError> {
    let cli = Cli::parse();
    for &q in &cli.global.q {
        if !(0.0 < q && q < 1.0) {
            return Err(QslabError::BadQ(q));
        }
    }
    if cli.global.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
            .ok();
    }
    let config = Config {
        degree: cli.global.degree,
        qs: cli.global.q.clone(),
        mode: match cli.global.mode {
            CliMode::Exact => Mode::Exact,
            CliMode::Numeric => Mode::Numeric,
            CliMode::All => Mode::All,
        },
        jobs: cli.global.jobs,
    };
    let (lab, raw) = load_lab(&cli.global)?;

    match cli.command {
        Command::Verify => {
            let ctx = Context::new(lab, config)?;
            let report = claims::run_suite(&ctx);
            for c in &report.claims {
                let mark = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Recorded => "NOTE",
                };
                println!(
                    "{} {} (degree {}, {} ms)",
                    mark, c.claim_id, c.degree, c.millis
                );
                if let Some(cx) = &c.counterexample {
                    println!("      {}", cx);
                }
                if let Some(n) = &c.recorded {
                    println!("      {}", n);
                }
            }
            println!(
                "{} passed, {} failed, {} recorded",
                report.pass, report.fail, report.recorded
            );
            if let Some(path) = &cli.global.out {
                std::fs::write(path, report.to_json())?;
            }
            Ok(if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Audit { mutation } => {
            let ctx = Context::new(lab, config)?;
            let report = claims::run_convention_audit(&ctx);
            for c in &report.claims {
                println!("NOTE {}", c.claim_id);
                if let Some(n) = &c.recorded {
                    println!("      {}", n);
                }
            }
            let mut json = report.to_json();
            if mutation {
                let outcomes = claims::mutation_audit(&raw)?;
                let detected = outcomes.iter().filter(|o| o.detected).count();
                println!(
                    "mutation audit: {}/{} single-coefficient perturbations detected",
                    detected,
                    outcomes.len()
                );
                for o in outcomes.iter().filter(|o| !o.detected) {
                    println!(
                        "      UNDETECTED relation {} term {} direction {}",
                        o.relation, o.term, o.direction
                    );
                }
                json = format!(
                    "{{\"conventions\": {}, \"mutations\": {}}}",
                    json,
                    serde_json::to_string_pretty(&outcomes).unwrap()
                );
                if detected != outcomes.len() {
                    if let Some(path) = &cli.global.out {
                        std::fs::write(path, json)?;
                    }
                    return Ok(ExitCode::FAILURE);
                }
            }
            if let Some(path) = &cli.global.out {
                std::fs::write(path, json)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis { chirality, emit } => {
            let n = cli.global.degree.unwrap_or(1);
            let ch = match chirality {
                CliChirality::Plus => Chirality::Plus,
                CliChirality::Minus => Chirality::Minus,
            };
            let basis = spinors::solve_basis(&lab, ch, n)?;
            let alg = &lab.s7q.algebra;
            let mut rows = Vec::new();
            for v in &basis.vectors {
                let comp = |p: &NCPoly| -> Vec<serde_json::Value> {
                    p.terms
                        .iter()
                        .map(|(w, c)| {
                            serde_json::json!({
                                "coeff": c.to_string(),
                                "word": w.display(alg),
                            })
                        })
                        .collect()
                };
                rows.push(serde_json::json!({
                    "component1": comp(&v.c1),
                    "component2": comp(&v.c2),
                }));
            }
            let doc = serde_json::json!({
                "chirality": ch.name(),
                "degree": n,
                "dimension": basis.dim(),
                "vectors": rows,
            });
            let _ = emit;
            write_or_print(
                &cli.global.out,
                &serde_json::to_string_pretty(&doc).unwrap(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Haar { emit } => {
            let n = cli.global.degree.unwrap_or(4);
            let phi = haar::compute_phi(&lab, n)?;
            let alg = &lab.s7q.algebra;
            let mut csv = String::from("word,phi\n");
            for w in lab.s7q.normal_words(n) {
                let val = phi.apply(&NCPoly::monomial(w.clone(), ScalarQ::one()))?;
                if !val.is_zero() {
                    csv.push_str(&format!("\"{}\",\"{}\"\n", w.display(alg), val));
                }
            }
            let _ = emit;
            write_or_print(&cli.global.out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrices { emit } => {
            let (psi, p) = spheres::build_psi_p(&lab)?;
            let alg = &lab.s7q.algebra;
            let render = |m: &spheres::MatrixNC| -> String {
                let mut s = String::new();
                for r in 0..m.rows {
                    let row: Vec<String> = (0..m.cols).map(|c| m.at(r, c).display(alg)).collect();
                    s.push_str(&format!("[ {} ]\n", row.join(" , ")));
                }
                s
            };
            let text = match emit.as_str() {
                "psi" => render(&psi),
                "p" => render(&p),
                other => {
                    eprintln!("unknown matrix `{}` (use psi or p)", other);
                    return Ok(ExitCode::from(2));
                }
            };
            write_or_print(&cli.global.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oneforms { a } => {
            let n = cli.global.degree.unwrap_or(1);
            let x = lab.embedded(&a)?;
            let params = dirac::DiracParams::new(ScalarQ::one(), ScalarQ::one(), ScalarQ::one());
            let basis = spinors::solve_basis(&lab, Chirality::Plus, n)?;
            let mut out = String::new();
            out.push_str(&format!(
                "one-form of {} on the degree-{} basis ({} vectors)\n",
                a,
                n,
                basis.dim()
            ));
            for (i, v) in basis.vectors.iter().enumerate() {
                let by_def = dirac::one_form_def(&lab, &params, &x, v)?;
                let by_closed = dirac::one_form_closed(&lab, &params, &x, v)?;
                let agree = by_def.c1 == by_closed.c1 && by_def.c2 == by_closed.c2;
                out.push_str(&format!(
                    "vector {} -> {}\n   (definition and closed form agree: {})\n",
                    i,
                    by_def.display(&lab),
                    agree
                ));
            }
            write_or_print(&cli.global.out, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { lambda, mu, delta } => {
            let n = cli.global.degree.unwrap_or(1);
            let params = dirac::NumericParams {
                lambda: parse_complex(&lambda).map_err(QslabError::Other)?,
                mu: parse_complex(&mu).map_err(QslabError::Other)?,
                delta: parse_complex(&delta).map_err(QslabError::Other)?,
            };
            let phi = haar::compute_phi(&lab, 2 * n.min(2))?;
            let mut csv = String::from("degree,index,eigenvalue\n");
            for &q in &cli.global.q {
                let eig = dirac::finite_section_spectrum(&lab, &phi, n, params, q)?;
                eprintln!(
                    "finite-section estimates at degree {}, q = {} ({} eigenvalues)",
                    n,
                    q,
                    eig.len()
                );
                for (i, e) in eig.iter().enumerate() {
                    csv.push_str(&format!("{},{},{:.12e}\n", n, i, e));
                }
            }
            write_or_print(&cli.global.out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
