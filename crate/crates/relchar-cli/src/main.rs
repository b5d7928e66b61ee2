//! Command-line driver: parse an input document, run computations or theorem
//! checks, print deterministic reports.
//!
//! Exit codes: 0 success (all checks exact), 1 check failure, 2 parse error,
//! 3 invalid input data.

mod doc;
mod report;

use clap::{Args, Parser, Subcommand};
use doc::{parse_degrees, InputDocument, Parser as DocParser};
use relchar::demo;
use relchar::diffchar::{CharComplex, Flavor};
use relchar::mixed::decompose;
use relchar::sequences::{
    character_sequences_with, hs_long_exact_sequence_with, suite_max_degree,
    vanishing_sequences_with, Verdict,
};
use relchar::simplicial::{Coefficients, ConeComplex, SimplicialComplex, SimplicialMap};
use report::{CheckLine, ComputeLine, DemoLine, Report};
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "relchar", about = "Exact relative differential character computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input document path; '-' or absent reads standard input
    path: Option<String>,
    /// Output format
    #[arg(long, default_value = "text")]
    format: String,
    /// Degree or degree range, e.g. 2 or 1..4 or 1,2,3
    #[arg(long)]
    degrees: Option<String>,
    /// Name of the map to use when the document has several
    #[arg(long)]
    map: Option<String>,
    /// Name of the complex for absolute computations without a map
    #[arg(long)]
    space: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute character or cohomology groups per degree
    Compute {
        #[command(flatten)]
        io: IoArgs,
        /// Theory: cs, rel_cs, hs, cs0, cone_cohomology, homology
        #[arg(long)]
        theory: Option<String>,
    },
    /// Verify exact sequences and named properties
    Check {
        #[command(flatten)]
        io: IoArgs,
        /// Check: thm3, hs_les, prop41, sec4, lemma1, phi_kernel
        #[arg(long)]
        check: Option<String>,
    },
    /// Run a bundled demonstration: holonomy or disk_table
    Demo {
        name: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    eprintln!("elapsed: {:?}", started.elapsed());
    code
}

struct Failure {
    code: ExitCode,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: ExitCode::from(2), message: message.into() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: ExitCode::from(3), message: message.into() }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Compute { io, theory } => {
            let (doc, _) = read_document(&io)?;
            let theory = theory
                .or_else(|| task_option(&doc, "theory"))
                .ok_or_else(|| Failure::invalid("no theory given (flag --theory or task block)"))?;
            let degrees = resolve_degrees(&io, &doc)?;
            let report = run_compute(&doc, &theory, degrees, &io)?;
            print!("{}", report.render(&io.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { io, check } => {
            let (doc, _) = read_document(&io)?;
            let check = check
                .or_else(|| task_option(&doc, "check"))
                .ok_or_else(|| Failure::invalid("no check given (flag --check or task block)"))?;
            let degrees = resolve_degrees(&io, &doc)?;
            let (report, all_exact) = run_check(&doc, &check, degrees, &io)?;
            print!("{}", report.render(&io.format));
            Ok(if all_exact { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Demo { name, format } => {
            let report = run_demo(&name)?;
            print!("{}", report.render(&format));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_document(io: &IoArgs) -> Result<(InputDocument, String), Failure> {
    let body = match io.path.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::parse(format!("reading stdin: {}", e)))?;
            s
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("reading {}: {}", path, e)))?,
    };
    let doc = DocParser::parse(&body).map_err(|e| Failure::parse(e.to_string()))?;
    Ok((doc, body))
}

fn task_option(doc: &InputDocument, key: &str) -> Option<String> {
    doc.task.as_ref().and_then(|t| t.options.get(key).cloned())
}

fn resolve_degrees(io: &IoArgs, doc: &InputDocument) -> Result<Option<Vec<isize>>, Failure> {
    let spec = io.degrees.clone().or_else(|| task_option(doc, "degrees"));
    match spec {
        None => Ok(None),
        Some(s) => parse_degrees(&s).map(Some).map_err(Failure::invalid),
    }
}

fn build_complex(decl: &doc::ComplexDecl) -> Result<SimplicialComplex, Failure> {
    SimplicialComplex::new(decl.vertices, &decl.simplices)
        .map_err(|e| Failure::invalid(format!("complex {}: {}", decl.name, e)))
}

/// The simplicial map selected by --map, the task block, or uniqueness.
fn resolve_map(doc: &InputDocument, io: &IoArgs) -> Result<(String, SimplicialMap), Failure> {
    let name = io
        .map
        .clone()
        .or_else(|| task_option(doc, "map"))
        .or_else(|| (doc.maps.len() == 1).then(|| doc.maps[0].name.clone()))
        .ok_or_else(|| Failure::invalid("no map in the document (or use --map)"))?;
    let decl = doc
        .map(&name)
        .ok_or_else(|| Failure::invalid(format!("no map named {}", name)))?;
    let source = build_complex(
        doc.complex(&decl.source)
            .ok_or_else(|| Failure::invalid(format!("no complex named {}", decl.source)))?,
    )?;
    let target = build_complex(
        doc.complex(&decl.target)
            .ok_or_else(|| Failure::invalid(format!("no complex named {}", decl.target)))?,
    )?;
    let rho = SimplicialMap::new(source, target, decl.vertex_map.clone())
        .map_err(|e| Failure::invalid(format!("map {}: {}", name, e)))?;
    let label = format!("{}: {} -> {}", name, decl.source, decl.target);
    Ok((label, rho))
}

/// The complex selected by --space, the task block, or uniqueness.
fn resolve_space(doc: &InputDocument, io: &IoArgs) -> Result<(String, SimplicialComplex), Failure> {
    let name = io
        .space
        .clone()
        .or_else(|| task_option(doc, "space"))
        .or_else(|| (doc.complexes.len() == 1).then(|| doc.complexes[0].name.clone()))
        .ok_or_else(|| Failure::invalid("no unique complex (use --space)"))?;
    let decl = doc
        .complex(&name)
        .ok_or_else(|| Failure::invalid(format!("no complex named {}", name)))?;
    Ok((name.clone(), build_complex(decl)?))
}

fn default_degrees(rho: &SimplicialMap) -> Vec<isize> {
    (1..=suite_max_degree(rho)).collect()
}

fn run_compute(
    doc: &InputDocument,
    theory: &str,
    degrees: Option<Vec<isize>>,
    io: &IoArgs,
) -> Result<Report, Failure> {
    let invalid = |e: relchar::diffchar::CharError| Failure::invalid(e.to_string());
    let (on, results) = match theory {
        "cs" | "homology" => {
            let (name, k) = resolve_space(doc, io)?;
            let degrees = degrees.unwrap_or_else(|| (0..=k.dim() + 2).collect());
            let mut results = Vec::new();
            if theory == "cs" {
                let cx = CharComplex::build_absolute(&k).map_err(invalid)?;
                for d in degrees {
                    let (_, dec) = cx.homology(d).map_err(invalid)?;
                    results.push(ComputeLine { degree: d, decomposition: dec.display_string() });
                }
            } else {
                for d in degrees {
                    let dec = k
                        .integral_homology(d)
                        .map_err(|e| Failure::invalid(e.to_string()))?;
                    results.push(ComputeLine { degree: d, decomposition: dec.display_string() });
                }
            }
            (name, results)
        }
        "rel_cs" | "hs" | "cs0" | "cone_cohomology" => {
            let (label, rho) = resolve_map(doc, io)?;
            let degrees = degrees.unwrap_or_else(|| default_degrees(&rho));
            let mut results = Vec::new();
            match theory {
                "cone_cohomology" => {
                    let cone = ConeComplex::new(&rho);
                    for d in degrees {
                        let sq = cone
                            .cohomology(d, Coefficients::Integer)
                            .map_err(|e| Failure::invalid(e.to_string()))?;
                        let dec =
                            decompose(&sq).map_err(|e| Failure::invalid(e.to_string()))?;
                        results
                            .push(ComputeLine { degree: d, decomposition: dec.display_string() });
                    }
                }
                _ => {
                    let flavor = match theory {
                        "rel_cs" => Flavor::RelativeCs,
                        "hs" => Flavor::HsProduct,
                        _ => Flavor::Cs0,
                    };
                    let cx = CharComplex::build(flavor, &rho).map_err(invalid)?;
                    for d in degrees {
                        let (_, dec) = cx.homology(d).map_err(invalid)?;
                        results
                            .push(ComputeLine { degree: d, decomposition: dec.display_string() });
                    }
                }
            }
            (label, results)
        }
        other => return Err(Failure::invalid(format!("unknown theory '{}'", other))),
    };
    Ok(Report::Compute { theory: theory.to_string(), on, results })
}

fn verdict_string(v: &Verdict) -> String {
    match v {
        Verdict::Exact => "exact".to_string(),
        Verdict::CompositeNonzero { .. } => "composite-nonzero".to_string(),
        Verdict::HomologyNonzero { .. } => "homology-nonzero".to_string(),
    }
}

fn run_check(
    doc: &InputDocument,
    check: &str,
    degrees: Option<Vec<isize>>,
    io: &IoArgs,
) -> Result<(Report, bool), Failure> {
    let (label, rho) = resolve_map(doc, io)?;
    let degrees = degrees.unwrap_or_else(|| default_degrees(&rho));
    let invalid = |e: relchar::sequences::SequenceError| Failure::invalid(e.to_string());
    let mut results: Vec<CheckLine> = Vec::new();
    let mut all_exact = true;

    match check {
        "thm3" => {
            let cx = CharComplex::build(Flavor::RelativeCs, &rho)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            for &k in &degrees {
                if k < 1 {
                    continue;
                }
                for (d, report) in character_sequences_with(&cx, k).map_err(invalid)? {
                    for (pos, verdict) in &report.positions {
                        all_exact &= verdict.is_exact();
                        results.push(CheckLine {
                            degree: k,
                            sequence: d.name.clone(),
                            position: pos.clone(),
                            verdict: verdict_string(verdict),
                        });
                    }
                }
            }
        }
        "hs_les" => {
            let lo = degrees.iter().copied().min().unwrap_or(1).max(1);
            let hi = degrees.iter().copied().max().unwrap_or(1).max(lo);
            let hs = CharComplex::build(Flavor::HsProduct, &rho)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let abs_m = CharComplex::build_absolute(rho.target())
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let abs_a = CharComplex::build_absolute(rho.source())
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let (_, report) =
                hs_long_exact_sequence_with(&hs, &abs_m, &abs_a, lo, hi).map_err(invalid)?;
            for (pos, verdict) in &report.positions {
                all_exact &= verdict.is_exact();
                results.push(CheckLine {
                    degree: lo,
                    sequence: report.name.clone(),
                    position: pos.clone(),
                    verdict: verdict_string(verdict),
                });
            }
        }
        "prop41" | "sec4" => {
            let rel = CharComplex::build(Flavor::RelativeCs, &rho)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let cs0 = CharComplex::build(Flavor::Cs0, &rho)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let hsm = CharComplex::build(Flavor::HsMixed, &rho)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            for &k in &degrees {
                if k < 1 {
                    continue;
                }
                let v = vanishing_sequences_with(&rel, &cs0, &hsm, k).map_err(invalid)?;
                let picks: Vec<&(
                    relchar::sequences::SequenceDiagram,
                    relchar::sequences::ExactnessReport,
                )> = match check {
                    "prop41" => vec![&v.inclusion],
                    _ => vec![&v.inclusion, &v.forms_quotient],
                };
                for (d, report) in picks {
                    for (pos, verdict) in &report.positions {
                        all_exact &= verdict.is_exact();
                        results.push(CheckLine {
                            degree: k,
                            sequence: d.name.clone(),
                            position: pos.clone(),
                            verdict: verdict_string(verdict),
                        });
                    }
                }
                if check == "sec4" {
                    all_exact &= v.hs_forms_projection_vanishes;
                    results.push(CheckLine {
                        degree: k,
                        sequence: "forms quotient and Hopkins-Singer".to_string(),
                        position: "image of the forms projection".to_string(),
                        verdict: if v.hs_forms_projection_vanishes {
                            "zero".to_string()
                        } else {
                            "nonzero".to_string()
                        },
                    });
                }
            }
        }
        "lemma1" => {
            // every relative period pair is closed and its curvature part
            // has integer periods on target cycles
            use relchar::linalg::{dot, int_vec_to_rat, rat, vec_is_zero};
            for &k in &degrees {
                if k < 0 {
                    continue;
                }
                let omega = relchar::forms::relative_lambda_period_forms(&rho, k)
                    .map_err(|e| Failure::invalid(e.to_string()))?;
                let delta = relchar::forms::form_pair_differential(&rho, k);
                let nm = rho.target().num_simplices(k);
                let cycles = rho.target().cycle_lattice(k);
                let mut closed_ok = true;
                let mut periods_ok = true;
                for g in omega.lattice_gens().iter().chain(omega.subspace_gens()) {
                    if !vec_is_zero(&delta.mul_vec(g)) {
                        closed_ok = false;
                    }
                }
                for g in omega.lattice_gens() {
                    for z in &cycles {
                        if !dot(&g[..nm], &int_vec_to_rat(z)).is_integer() {
                            periods_ok = false;
                        }
                    }
                }
                for w in omega.subspace_gens() {
                    for z in &cycles {
                        if dot(&w[..nm], &int_vec_to_rat(z)) != rat(0) {
                            periods_ok = false;
                        }
                    }
                }
                all_exact &= closed_ok && periods_ok;
                results.push(CheckLine {
                    degree: k,
                    sequence: "relative periods".to_string(),
                    position: "pairs are closed".to_string(),
                    verdict: if closed_ok { "PASS" } else { "FAIL" }.to_string(),
                });
                results.push(CheckLine {
                    degree: k,
                    sequence: "relative periods".to_string(),
                    position: "omega has integer periods".to_string(),
                    verdict: if periods_ok { "PASS" } else { "FAIL" }.to_string(),
                });
            }
        }
        "phi_kernel" => {
            // kernel of the character map = coboundaries, both directions
            use relchar::diffchar::Block;
            use relchar::linalg::{int_vec_to_rat, rat, RatMat};
            use relchar::mixed::MixedSubgroup;
            let cx = CharComplex::build(Flavor::RelativeCs, &rho)
                .map_err(|e| Failure::invalid(e.to_string()))?;
            let cone = ConeComplex::new(&rho);
            for &k in &degrees {
                if k < 1 || k > cx.max_degree() {
                    continue;
                }
                let to_failure = |e: relchar::mixed::MixedError| Failure::invalid(e.to_string());
                let z_group =
                    cx.cocycle_group(k).map_err(|e| Failure::invalid(e.to_string()))?;
                let layout = cx.layout(k).unwrap().clone();
                let n = cx.ambient_dim(k);
                let nf = layout.dim(Block::MForm) + layout.dim(Block::AForm);
                let mut form_rows = RatMat::zeros(nf, n);
                for (r, i) in
                    layout.range(Block::MForm).chain(layout.range(Block::AForm)).enumerate()
                {
                    form_rows[(r, i)] = rat(1);
                }
                let form_zero =
                    MixedSubgroup::zero(nf).preimage_of(&form_rows).map_err(to_failure)?;
                let cycles = cone.cycle_lattice(k - 1);
                let mut pairing = RatMat::zeros(cycles.len(), n);
                for (r, cycle) in cycles.iter().enumerate() {
                    let cr = int_vec_to_rat(cycle);
                    for (j, i) in
                        layout.range(Block::MRat).chain(layout.range(Block::ARat)).enumerate()
                    {
                        pairing[(r, i)] = cr[j].clone();
                    }
                }
                let integral = MixedSubgroup::full_lattice(cycles.len())
                    .preimage_of(&pairing)
                    .map_err(to_failure)?;
                let kernel = z_group
                    .intersect(&form_zero)
                    .map_err(to_failure)?
                    .intersect(&integral)
                    .map_err(to_failure)?;
                let cobounds =
                    cx.coboundary_group(k).map_err(|e| Failure::invalid(e.to_string()))?;
                let forward = cobounds.contains_subgroup(&kernel).map_err(to_failure)?;
                let backward = kernel.contains_subgroup(&cobounds).map_err(to_failure)?;
                all_exact &= forward && backward;
                results.push(CheckLine {
                    degree: k,
                    sequence: "character kernel".to_string(),
                    position: "kernel inside coboundaries".to_string(),
                    verdict: if forward { "PASS" } else { "FAIL" }.to_string(),
                });
                results.push(CheckLine {
                    degree: k,
                    sequence: "character kernel".to_string(),
                    position: "coboundaries inside kernel".to_string(),
                    verdict: if backward { "PASS" } else { "FAIL" }.to_string(),
                });
            }
        }
        other => return Err(Failure::invalid(format!("unknown check '{}'", other))),
    }

    Ok((Report::Check { check: check.to_string(), on: label, results, all_exact }, all_exact))
}

fn run_demo(name: &str) -> Result<Report, Failure> {
    let results = match name {
        "holonomy" => {
            let d = demo::holonomy_demo().map_err(|e| Failure::invalid(e.to_string()))?;
            let mut lines = Vec::new();
            for (i, stage) in d.stages.iter().enumerate() {
                lines.push(DemoLine {
                    label: format!("stage {}", i + 1),
                    value: stage.label.clone(),
                });
                lines.push(DemoLine {
                    label: format!("stage {} theta has integer periods", i + 1),
                    value: stage.theta_has_integer_periods.to_string(),
                });
                lines.push(DemoLine {
                    label: format!("stage {} radial cycle", i + 1),
                    value: stage.radial_value.to_string(),
                });
                lines.push(DemoLine {
                    label: format!("stage {} inner boundary", i + 1),
                    value: stage.inner_value.to_string(),
                });
                lines.push(DemoLine {
                    label: format!("stage {} outer boundary", i + 1),
                    value: stage.outer_value.to_string(),
                });
            }
            lines
        }
        "disk_table" => {
            let rows = demo::disk_table().map_err(|e| Failure::invalid(e.to_string()))?;
            rows.into_iter()
                .map(|r| DemoLine {
                    label: format!("n={} k={}", r.n, r.k),
                    value: format!(
                        "computed {} | reference {} | {}",
                        r.computed, r.reference, r.verdict
                    ),
                })
                .collect()
        }
        other => return Err(Failure::invalid(format!("unknown demo '{}'", other))),
    };
    Ok(Report::Demo { demo: name.to_string(), results })
}
