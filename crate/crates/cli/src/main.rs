//! `latfree`: lattice-freeness, maximality and lattice search from JSON documents.
//!
//! Results go to standard output as JSON (or SVG for `plot`). A one-line
//! PASS/FAIL summary and diagnostics go to standard error. Exit status is 0
//! for any definite answer, 2 when a search cap leaves the answer undecided
//! and 1 for malformed input or internal errors.

mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use latfree::io::{self, approx_json, certification_json, ints_json, lowdim_json, polyhedron_json, scalar_json};
use latfree::maximality::{
    auto_closure_certificate, certify_maximal_fulldim, certify_maximal_lowdim, check_lemma1, check_lemma2,
    is_lattice_free, Certification, LatticeFreeness,
};
use latfree::maximalize::{enlarge_to_maximal, normalize_split};
use latfree::search::{approximate_line, enumerate_in_window, enumerate_lattice_points, minkowski_find, parity_pair};
use latfree::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "latfree", version, about = "Exact lattice-free convex sets in Z^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input JSON document
    input: PathBuf,
    /// Radicand k for documents using sqrt(k) components
    #[arg(long)]
    k: Option<u64>,
    /// Write the result here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the interior of a polyhedron avoids Z^d
    CheckFree {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Certify or refute maximality of a full-dimensional polyhedron
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Decide maximality of an affine subspace
    CertifyHyperplane {
        #[command(flatten)]
        common: Common,
    },
    /// Enlarge a bounded lattice-free polytope to a maximal one
    Maximalize {
        #[command(flatten)]
        common: Common,
        /// Half-width of the bounding box (default: 2·max|vertex coordinate| + 2)
        #[arg(long = "box")]
        box_n: Option<u64>,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Split off the lineality space by a unimodular map
    Normalize {
        #[command(flatten)]
        common: Common,
    },
    /// Find a nonzero point of tZ^d in a symmetric convex polytope
    Minkowski {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    /// Find two vectors in the same class mod 2Z^d
    Parity {
        #[command(flatten)]
        common: Common,
    },
    /// Approximate an irrational line by lattice points at tolerance 1/t
    ApproxLine {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: u64,
        /// Largest cylinder half-length searched
        #[arg(long, default_value_t = 1 << 16)]
        cap: u64,
    },
    /// Exact volume of a bounded polytope
    Volume {
        #[command(flatten)]
        common: Common,
    },
    /// List the lattice points of a polytope, or of a polyhedron within a window
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// "w" for [-w,w]^d, or "x0,x1,y0,y1,..."
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Check that K + lin(rec K) has no interior lattice point in a window
    Lemma1 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "10", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 64)]
        cap: u64,
        /// Number of sampled points for the set identity
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Check K + M for a space M certified inside cl(Z^d + L)
    Lemma2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "10", allow_hyphen_values = true)]
        window: String,
        /// Largest cylinder half-length used for approximation certificates
        #[arg(long, default_value_t = 1 << 12)]
        cap: u64,
    },
    /// Render a two-dimensional polyhedron as SVG
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "-2,3,-2,3", allow_hyphen_values = true)]
        window: String,
    },
}

/// What a command produced: the document and an optional PASS/FAIL verdict.
struct Outcome {
    body: String,
    verdict: Option<(bool, String)>,
}

impl Outcome {
    fn json(value: Value, verdict: Option<(bool, String)>) -> Self {
        let body = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
        Outcome { body, verdict }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, out) = describe(&cli.command);
    match run(cli.command) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.body, out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if let Some((pass, msg)) = outcome.verdict {
                eprintln!("{} {verb}: {msg}", if pass { "PASS" } else { "FAIL" });
            }
            ExitCode::SUCCESS
        }
        Err(e @ Error::Undecided { .. }) => {
            eprintln!("UNDECIDED {verb}: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn describe(cmd: &Command) -> (&'static str, Option<PathBuf>) {
    let (verb, common) = match cmd {
        Command::CheckFree { common, .. } => ("check-free", common),
        Command::Certify { common, .. } => ("certify", common),
        Command::CertifyHyperplane { common } => ("certify-hyperplane", common),
        Command::Maximalize { common, .. } => ("maximalize", common),
        Command::Normalize { common } => ("normalize", common),
        Command::Minkowski { common, .. } => ("minkowski", common),
        Command::Parity { common } => ("parity", common),
        Command::ApproxLine { common, .. } => ("approx-line", common),
        Command::Volume { common } => ("volume", common),
        Command::Enumerate { common, .. } => ("enumerate", common),
        Command::Lemma1 { common, .. } => ("lemma1", common),
        Command::Lemma2 { common, .. } => ("lemma2", common),
        Command::Plot { common, .. } => ("plot", common),
    };
    (verb, common.out.clone())
}

fn emit(body: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> latfree::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Schema { path: path.display().to_string(), message: e.to_string() })
}

fn run(cmd: Command) -> latfree::Result<Outcome> {
    match cmd {
        Command::CheckFree { common, cap } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            Ok(match is_lattice_free(&p, cap)? {
                LatticeFreeness::Free => {
                    Outcome::json(json!({"lattice_free": true}), Some((true, "no interior lattice point".into())))
                }
                LatticeFreeness::NotFree(w) => Outcome::json(
                    json!({"lattice_free": false, "witness": io::witness_json(&w)}),
                    Some((false, format!("interior lattice point {}", ints_json(&w.point)))),
                ),
            })
        }
        Command::Certify { common, cap } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            let c = certify_maximal_fulldim(&p, cap)?;
            let verdict = match &c {
                Certification::Certified(cert) => {
                    cert.validate()?;
                    (true, format!("maximal with {} facets, lineality {}", cert.facet_count, cert.lineality_dim))
                }
                Certification::Refuted(_) => (false, "not maximal".into()),
            };
            Ok(Outcome::json(certification_json(&c), Some(verdict)))
        }
        Command::CertifyHyperplane { common } => {
            let h = io::parse_affine(&read(&common.input)?, common.k)?;
            let v = certify_maximal_lowdim(&h)?;
            let verdict = if v.is_maximal() { (true, "maximal".into()) } else { (false, "not maximal".into()) };
            Ok(Outcome::json(lowdim_json(&v), Some(verdict)))
        }
        Command::Maximalize { common, box_n, cap } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            let out = enlarge_to_maximal(&p, box_n, cap)?;
            out.certificate.validate()?;
            let msg = format!("certified maximal superset after {} pushes", out.stages.len() - 1);
            Ok(Outcome::json(
                json!({
                    "box": out.box_n,
                    "polyhedron": polyhedron_json(&out.polyhedron),
                    "certificate": io::certificate_json(&out.certificate),
                }),
                Some((true, msg)),
            ))
        }
        Command::Normalize { common } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            Ok(Outcome::json(io::split_json(&normalize_split(&p)?), None))
        }
        Command::Minkowski { common, t } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            let z = minkowski_find(&p, t)?;
            let ok = p.contains_int(&z);
            Ok(Outcome::json(json!({"z": ints_json(&z)}), Some((ok, format!("found {}", ints_json(&z))))))
        }
        Command::Parity { common } => {
            let w = io::parse_vectors(&read(&common.input)?)?;
            let pair = parity_pair(&w)?;
            let msg = format!("vectors {} and {} share a parity class", pair.i + 1, pair.j + 1);
            Ok(Outcome::json(
                json!({"i": pair.i + 1, "j": pair.j + 1, "mid": ints_json(&pair.midpoint)}),
                Some((true, msg)),
            ))
        }
        Command::ApproxLine { common, t, cap } => {
            let u = io::parse_line(&read(&common.input)?, common.k)?;
            let a = approximate_line(&u, t, cap)?;
            let ok = a.verify();
            Ok(Outcome::json(approx_json(&a), Some((ok, format!("residual {} < 1/{t}", a.residual())))))
        }
        Command::Volume { common } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            Ok(Outcome::json(json!({"volume": scalar_json(&p.volume()?)}), None))
        }
        Command::Enumerate { common, window } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            let points = match window {
                Some(w) => enumerate_in_window(&p, &io::parse_window(&w, p.dim())?)?,
                None => enumerate_lattice_points(&p)?,
            };
            let count = points.len();
            Ok(Outcome::json(
                json!({"count": count, "points": points.iter().map(|z| ints_json(z)).collect::<Vec<_>>()}),
                None,
            ))
        }
        Command::Lemma1 { common, window, cap, samples } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            let window = io::parse_window(&window, p.dim())?;
            let report = check_lemma1(&p, &window, cap, samples)?;
            let verdict = (
                report.holds(),
                format!(
                    "{} interior lattice points, {} identity mismatches in {} samples",
                    report.interior_points.len(),
                    report.identity_mismatches.len(),
                    report.samples
                ),
            );
            Ok(Outcome::json(
                json!({
                    "widened": polyhedron_json(&report.widened),
                    "interior_points": report.interior_points.iter().map(|z| ints_json(z)).collect::<Vec<_>>(),
                    "samples": report.samples,
                    "identity_mismatches":
                        report.identity_mismatches.iter().map(|x| io::scalars_json(x)).collect::<Vec<_>>(),
                }),
                Some(verdict),
            ))
        }
        Command::Lemma2 { common, window, cap } => {
            let (p, space) = io::parse_lemma2(&read(&common.input)?, common.k)?;
            let window = io::parse_window(&window, p.dim())?;
            let lineality = p.recession_cone()?.is_linear_space().ok_or(Error::RecessionNotLinear)?;
            let certificates = space
                .iter()
                .enumerate()
                .map(|(index, m)| {
                    auto_closure_certificate(m, &lineality, cap).ok_or_else(|| Error::UncertifiedSpace {
                        index,
                        reason: "no decomposition or approximation certificate found".into(),
                    })
                })
                .collect::<latfree::Result<Vec<_>>>()?;
            let report = check_lemma2(&p, &space, &certificates, &window)?;
            let points = |v: &[Vec<BigInt>]| v.iter().map(|z| ints_json(z)).collect::<Vec<_>>();
            let verdict = (
                report.sum_is_lattice_free_in_window(),
                format!(
                    "{} interior lattice points in K, {} in K + M",
                    report.interior_points_of_p.len(),
                    report.interior_points_of_sum.len()
                ),
            );
            Ok(Outcome::json(
                json!({
                    "sum": polyhedron_json(&report.sum),
                    "interior_points_of_p": points(&report.interior_points_of_p),
                    "interior_points_of_sum": points(&report.interior_points_of_sum),
                }),
                Some(verdict),
            ))
        }
        Command::Plot { common, window } => {
            let p = io::parse_polyhedron(&read(&common.input)?, common.k)?;
            let window = io::parse_window(&window, p.dim())?;
            Ok(Outcome { body: plot::plot2d(&p, &window)?, verdict: None })
        }
    }
}
