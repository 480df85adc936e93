//! The `toric-prevar` command line. Each verb is one library call; the
//! process exit code carries the verdict (0 yes, 1 no, 2 bad input).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::fan::{GluedSystem, SystemOfFans};
use crate::golden;
use crate::io::{self, IoError};
use crate::report::ValidationReport;
use crate::sheaf::{rank_split_structural, tangent_bundle, SheafError};
use crate::tits::{bundle_from_plmap, plmap_from_bundle, TitsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "toric-prevar", version, about = "Systems of fans and toric bundle data")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the system-of-fans axioms.
    Validate { system: PathBuf },
    /// List the classes of the glued cone poset.
    Omega { system: PathBuf },
    /// List the ray classes.
    Lambda { system: PathBuf },
    /// For each orbit, the orbits in its closure.
    Orbits { system: PathBuf },
    /// Print the tangent bundle document of a smooth system.
    Tangent { system: PathBuf },
    /// Decide local freeness of a bundle document.
    CheckBundle { system: PathBuf, bundle: PathBuf },
    /// Decide equivariant splitting into line bundles.
    Split { system: PathBuf, bundle: PathBuf },
    /// Decide whether every rank-m bundle splits.
    RankSplit {
        system: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        strict_labels: bool,
    },
    /// Convert a locally free bundle document to a piecewise-linear map.
    Plmap { system: PathBuf, bundle: PathBuf },
    /// Convert a piecewise-linear map back to a bundle document.
    FromPlmap { system: PathBuf, plmap: PathBuf },
    /// Write the worked example documents.
    Examples {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Input { path: String, source: Box<IoError> },
    #[error("{0}")]
    Sheaf(#[from] SheafError),
    #[error("{0}")]
    Tits(#[from] TitsError),
    #[error("invalid system of fans: {0}")]
    System(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn input(path: &Path) -> impl Fn(IoError) -> CliError + '_ {
    move |source| CliError::Input {
        path: path.display().to_string(),
        source: Box::new(source),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input(path)(e.into()))
}

fn load_system(path: &Path) -> Result<SystemOfFans, CliError> {
    io::parse_system(&read(path)?).map_err(input(path))
}

fn load_glued(path: &Path) -> Result<Arc<GluedSystem>, CliError> {
    let s = load_system(path)?;
    GluedSystem::new(s)
        .map(Arc::new)
        .map_err(|e| CliError::System(e.to_string()))
}

/// Verdict text/JSON plus whether it is affirmative.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn doc(text: String) -> Self {
        let json = serde_json::from_str(&text).expect("documents are JSON");
        Report { ok: true, text, json }
    }
}

fn violations_text(r: &ValidationReport) -> String {
    r.violations
        .iter()
        .map(|v| {
            let w = if v.witness.is_empty() {
                String::new()
            } else {
                format!(" [{}]", v.witness.join(", "))
            };
            format!("  {}: {}{}\n", v.kind, v.detail, w)
        })
        .collect()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => {
                    let mut t = r.text;
                    if !t.ends_with('\n') {
                        t.push('\n');
                    }
                    t
                }
                Format::Json => io::to_pretty(&r.json),
            };
            Outcome {
                code: if r.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Validate { system } => validate(&load_system(system)?),
        Command::Omega { system } => {
            let g = load_glued(system)?;
            let classes: Vec<Value> = (0..g.len())
                .map(|c| {
                    let cls = g.class(c);
                    json!({
                        "id": g.class_name(c),
                        "dim": cls.dim(),
                        "labels": cls.labels.iter().map(|&i| g.system().label(i)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut text = format!("|Ω| = {}\n", g.len());
            for c in 0..g.len() {
                let cls = g.class(c);
                let labels = cls.labels.iter().map(|&i| g.system().label(i)).join(",");
                let _ = writeln!(text, "{}  dim {}  labels {{{}}}", g.class_name(c), cls.dim(), labels);
            }
            Ok(Report { ok: true, text, json: json!({ "classes": classes }) })
        }
        Command::Lambda { system } => {
            let g = load_glued(system)?;
            let names: Vec<String> = g.lambda().iter().map(|&c| g.class_name(c)).collect();
            let text = format!("|Λ| = {}\n{}\n", names.len(), names.join("\n"));
            Ok(Report { ok: true, text, json: json!({ "lambda": names }) })
        }
        Command::Orbits { system } => {
            let g = load_glued(system)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for a in 0..g.len() {
                let closure: Vec<String> = (0..g.len())
                    .filter(|&b| g.leq(a, b))
                    .map(|b| g.class_name(b))
                    .collect();
                let _ = writeln!(text, "O({}) closure: {}", g.class_name(a), closure.join(" "));
                rows.push(json!({ "orbit": g.class_name(a), "closure": closure }));
            }
            Ok(Report { ok: true, text, json: json!({ "orbits": rows }) })
        }
        Command::Tangent { system } => {
            let g = load_glued(system)?;
            Ok(Report::doc(io::write_bundle(&tangent_bundle(g)?)))
        }
        Command::CheckBundle { system, bundle } => {
            let g = load_glued(system)?;
            let b = io::parse_bundle(g.clone(), &read(bundle)?).map_err(input(bundle))?;
            let report = b.is_locally_free()?;
            let mut text = String::from(if report.locally_free {
                "locally free\n"
            } else {
                "not locally free\n"
            });
            let mut cones = Vec::new();
            for v in &report.cones {
                let name = g.class_name(v.class);
                let weights: Vec<Value> = v
                    .decomposition
                    .iter()
                    .flat_map(|d| &d.components)
                    .map(|c| json!({ "weight": c.weight, "dim": c.basis.len() }))
                    .collect();
                let verdict = if v.compatible { "compatible" } else { "incompatible" };
                let _ = writeln!(text, "  {name}: {verdict}");
                cones.push(json!({ "cone": name, "compatible": v.compatible, "components": weights }));
            }
            Ok(Report {
                ok: report.locally_free,
                text,
                json: json!({ "locally_free": report.locally_free, "cones": cones }),
            })
        }
        Command::Split { system, bundle } => {
            let g = load_glued(system)?;
            let b = io::parse_bundle(g, &read(bundle)?).map_err(input(bundle))?;
            Ok(match b.splits_equivariantly()? {
                Some(basis) => {
                    let mut text = String::from("splits equivariantly\n");
                    for (v, l) in basis.vectors.iter().zip(&basis.labels) {
                        let _ = writeln!(text, "  ({})  levels {:?}", v.iter().join(","), l);
                    }
                    Report {
                        ok: true,
                        text,
                        json: json!({ "splits": true, "basis": basis.vectors, "levels": basis.labels }),
                    }
                }
                None => Report {
                    ok: false,
                    text: "does not split equivariantly\n".into(),
                    json: json!({ "splits": false }),
                },
            })
        }
        Command::RankSplit { system, m, strict_labels } => {
            let g = load_glued(system)?;
            let v = rank_split_structural(&g, *m, *strict_labels)?;
            let witness: Option<Vec<String>> =
                v.witness.as_ref().map(|w| w.iter().map(|&c| g.class_name(c)).collect());
            let text = match &witness {
                None => format!("every rank-{m} bundle splits\n"),
                Some(w) => format!(
                    "not every rank-{m} bundle need split; no chart cone is generated by {{{}}}\n",
                    w.join(", ")
                ),
            };
            Ok(Report {
                ok: v.holds,
                text,
                json: json!({ "holds": v.holds, "m": m, "strict_labels": strict_labels, "witness": witness }),
            })
        }
        Command::Plmap { system, bundle } => {
            let g = load_glued(system)?;
            let b = io::parse_bundle(g, &read(bundle)?).map_err(input(bundle))?;
            match plmap_from_bundle(&b) {
                Ok(pl) => Ok(Report::doc(io::write_plmap(&pl))),
                Err(TitsError::NotLocallyFree(c)) => Ok(Report {
                    ok: false,
                    text: format!("not locally free on {c}\n"),
                    json: json!({ "locally_free": false, "cone": c }),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::FromPlmap { system, plmap } => {
            let g = load_glued(system)?;
            let pl = io::parse_plmap(g, &read(plmap)?).map_err(input(plmap))?;
            match bundle_from_plmap(&pl) {
                Ok(b) => Ok(Report::doc(io::write_bundle(&b))),
                Err(TitsError::InvalidPLMap(r)) => Ok(Report {
                    ok: false,
                    text: format!("invalid piecewise-linear map\n{}", violations_text(&r)),
                    json: serde_json::to_value(&r).expect("reports serialize"),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Examples { out } => {
            std::fs::create_dir_all(out)?;
            let mut names = Vec::new();
            for (name, text) in example_documents() {
                std::fs::write(out.join(&name), text)?;
                names.push(name);
            }
            let text = format!("wrote {}\n", names.join(" "));
            Ok(Report { ok: true, text, json: json!({ "written": names }) })
        }
    }
}

fn validate(s: &SystemOfFans) -> Result<Report, CliError> {
    let r = s.validate();
    if !r.valid {
        return Ok(Report {
            ok: false,
            text: format!("invalid system\n{}", violations_text(&r)),
            json: serde_json::to_value(&r).expect("reports serialize"),
        });
    }
    let g = GluedSystem::new(s.clone()).map_err(|e| CliError::System(e.to_string()))?;
    let kind = if s.is_affine() { "affine system" } else { "system" };
    Ok(Report {
        ok: true,
        text: format!("valid {kind}; |Ω| = {}; |Λ| = {}", g.len(), g.lambda().len()),
        json: json!({
            "valid": true,
            "affine": s.is_affine(),
            "smooth": s.is_smooth(),
            "omega": g.len(),
            "lambda": g.lambda().len(),
        }),
    })
}

/// `(file name, contents)` for every worked example and its tangent bundle.
pub fn example_documents() -> Vec<(String, String)> {
    let systems = [
        ("double_origin", golden::double_origin()),
        ("fig1_system", golden::two_charts()),
        ("fig2_system", golden::homogeneous_spectra()),
        ("a3_doubled", golden::a3_doubled_axes()),
    ];
    let mut out = Vec::new();
    for (stem, s) in systems {
        out.push((format!("{stem}.json"), io::write_system(&s)));
        let g = Arc::new(GluedSystem::new(s).expect("worked examples are valid"));
        let t = tangent_bundle(g).expect("worked examples are smooth");
        let tstem = stem.strip_suffix("_system").unwrap_or(stem);
        out.push((format!("{tstem}_tangent.json"), io::write_bundle(&t)));
    }
    out
}
