//! `cdga`: load CDGA presentations, build complement and configuration
//! space models, and print JSON reports.

mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use cdga::analysis::{cohomology_ring, massey_search, poincare_series, triple_massey, verify_presentation, CohomologyRing};
use cdga::conf::{complement_model, conf2_disk_bundle, conf2_pretty, conf2_punctured, ComplementInput, Conf2Model};
use cdga::duality::PdAlgebra;
use cdga::presentation::{Generator, Presentation, PresentedAlgebra};
use cdga::pretty::pretty_model;
use cdga::{Cdga, CdgaMorphism, DgModule, DgMorphism, Error, ErrorKind, Scalar, Vector};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use report::{trimmed, violations, Report};

#[derive(Parser, Debug)]
#[command(name = "cdga", version, about = "Exact rational models of complements and two-point configuration spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Highest degree to expand presentations to and to report.
    #[arg(long, global = true)]
    max_degree: Option<i32>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the CDGA axioms, and Poincaré duality if an orientation is declared.
    Verify { file: PathBuf },
    /// Betti numbers and the cohomology ring.
    Cohomology { file: PathBuf },
    /// Betti numbers only.
    Series { file: PathBuf },
    /// A triple Massey product, or a search over basis classes.
    Massey {
        file: PathBuf,
        /// Three comma-separated class or cochain basis names; searches when absent.
        #[arg(long)]
        triple: Option<String>,
    },
    /// Configuration space of two points in a disk bundle over an oriented base.
    Conf2DiskBundle {
        #[arg(long)]
        base: PathBuf,
        /// Euler class as a polynomial in the base's generators.
        #[arg(long)]
        euler: String,
        #[arg(long)]
        rank: i32,
        /// `auto` to search, or three comma-separated names.
        #[arg(long)]
        massey: Option<String>,
        /// A presentation whose generators carry `image` tables.
        #[arg(long)]
        check_presentation: Option<PathBuf>,
    },
    /// Configuration space of two points in a manifold minus an open disk.
    Conf2Punctured {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long)]
        massey: Option<String>,
    },
    /// Configuration space of two points from a map `P → Q` of oriented
    /// algebra to boundary algebra.
    Conf2Pretty {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long)]
        boundary: PathBuf,
        /// `generator=polynomial`, one per generator of the manifold algebra.
        #[arg(long = "map", required = true)]
        map: Vec<String>,
        /// Use the truncated cone `τ^{≤2n-3}`.
        #[arg(long)]
        truncate: bool,
        #[arg(long)]
        massey: Option<String>,
    },
    /// Complement of a point in the n-disk.
    Complement {
        #[arg(long)]
        dim: i32,
        #[arg(long, value_enum)]
        point: PointKind,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PointKind {
    Interior,
    Boundary,
}

/// A generator with the H-class it should map to, keyed by cochain basis
/// names of the model.
#[derive(Debug, Deserialize)]
struct CheckGenerator {
    name: String,
    degree: i32,
    #[serde(default)]
    image: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
struct CheckFile {
    generators: Vec<CheckGenerator>,
    #[serde(default)]
    relations: Vec<String>,
    max_degree: Option<i32>,
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Usage => 1,
        ErrorKind::Axiom => 2,
        ErrorKind::Hypothesis => 3,
    }
}

fn load(path: &Path, max_degree: Option<i32>) -> cdga::Result<PresentedAlgebra> {
    let mut p = Presentation::load(path)?;
    if p.orientation.is_none() {
        if let Some(m) = max_degree {
            p.max_degree = Some(m);
        }
    }
    p.build()
}

fn oriented(path: &Path) -> cdga::Result<(PresentedAlgebra, PdAlgebra)> {
    let p = load(path, None)?;
    let pd = p
        .poincare()?
        .ok_or_else(|| Error::Invalid(format!("{} declares no orientation", path.display())))?;
    Ok((p, pd))
}

fn ring_summary(ring: &CohomologyRing) -> report::Ring {
    let sp = ring.space();
    let degree_of = |name: &str| sp.index_of(name).map_or(0, |i| sp.degree(i));
    report::Ring {
        basis: (0..sp.dim()).map(|i| (sp.name(i).to_string(), sp.degree(i))).collect(),
        products: ring
            .products()
            .into_iter()
            .filter(|(x, y, _)| degree_of(x) > 0 && degree_of(y) > 0)
            .collect(),
    }
}

fn class(ring: &CohomologyRing, name: &str) -> cdga::Result<Vector> {
    let name = name.trim();
    match ring.space().index_of(name) {
        Some(i) => Ok(Vector::basis(i)),
        None => ring.class_named(name),
    }
}

fn add_massey(report: &mut Report, ring: &CohomologyRing, choice: &str) -> cdga::Result<()> {
    if choice == "auto" {
        let s = massey_search(ring)?;
        report.massey.extend(s.first_nontrivial.as_ref().map(Into::into));
        report.massey_search = Some(report::SearchCounts {
            defined: s.defined,
            nontrivial: s.nontrivial,
        });
        return Ok(());
    }
    let names: Vec<&str> = choice.split(',').collect();
    let [a, b, c] = names.as_slice() else {
        return Err(Error::Invalid(format!("expected three comma-separated names, got `{choice}`")));
    };
    let m = triple_massey(ring, &class(ring, a)?, &class(ring, b)?, &class(ring, c)?)?;
    report.massey.push((&m).into());
    Ok(())
}

fn check_presentation(report: &mut Report, ring: &CohomologyRing, path: &Path, cap: i32) -> cdga::Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let file: CheckFile = toml::from_str(&text).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: e.message().to_string(),
    })?;
    let alg = ring.algebra();
    let mut generators = Vec::new();
    let mut images = Vec::new();
    for g in &file.generators {
        let mut z = Vector::zero();
        for (name, coef) in &g.image {
            let i = alg
                .space()
                .index_of(name)
                .ok_or_else(|| Error::Invalid(format!("image of `{}` names unknown basis element `{name}`", g.name)))?;
            let c: Scalar = coef
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient `{coef}`")))?;
            z.add_term(i, c);
        }
        generators.push(Generator {
            name: g.name.clone(),
            degree: g.degree,
        });
        images.push(ring.class_of(&z)?);
    }
    let bound = file.max_degree.unwrap_or(cap);
    let check = verify_presentation(ring, &generators, &images, &file.relations, bound)?;
    report.presentation = Some((&check).into());
    Ok(())
}

fn algebra_report(report: &mut Report, a: &Arc<Cdga>, cap: Option<i32>, with_ring: bool) -> cdga::Result<Option<CohomologyRing>> {
    let top = cap.unwrap_or_else(|| a.space().top_degree().unwrap_or(0));
    report.betti = trimmed(poincare_series(a, top));
    if !with_ring {
        return Ok(None);
    }
    let ring = cohomology_ring(a)?;
    report.ring = Some(ring_summary(&ring));
    Ok(Some(ring))
}

fn conf2_report(
    report: &mut Report,
    model: &Conf2Model,
    n: i32,
    cap: Option<i32>,
    massey: Option<&str>,
) -> cdga::Result<CohomologyRing> {
    let cap = cap.unwrap_or(2 * n + 1);
    let ring = algebra_report(report, model.algebra(), Some(cap), true)?.expect("ring requested");
    report.violations = violations(&model.verify());
    report.hypotheses_assumed = model.hypotheses.clone();
    report.square = model.square.as_ref().map(Into::into);
    if let Some(choice) = massey {
        add_massey(report, &ring, choice)?;
    }
    Ok(ring)
}

fn phi_from_map(p: &PresentedAlgebra, q: &PresentedAlgebra, map: &[String]) -> cdga::Result<CdgaMorphism> {
    let mut images = vec![None; p.free.rank()];
    for entry in map {
        let (gen, poly) = entry
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("`{entry}` is not of the form generator=polynomial")))?;
        let i = p
            .presentation
            .generators
            .iter()
            .position(|g| g.name == gen.trim())
            .ok_or_else(|| Error::Invalid(format!("unknown generator `{}`", gen.trim())))?;
        images[i] = Some(q.element(poly)?);
    }
    let images: Vec<Vector> = images
        .into_iter()
        .zip(&p.presentation.generators)
        .map(|(v, g)| v.ok_or_else(|| Error::Invalid(format!("no image for generator `{}`", g.name))))
        .collect::<cdga::Result<_>>()?;
    let (pa, qa) = (&p.algebra, &q.algebra);
    let mul = |x: &Vector, y: &Vector| qa.mul(x, y);
    let basis_images = (0..pa.dim())
        .map(|i| {
            let mono = p.free.parse(pa.space().name(i))?;
            Ok(p.free.evaluate(&mono, &images, qa.unit(), &mul))
        })
        .collect::<cdga::Result<Vec<_>>>()?;
    CdgaMorphism::new(Arc::clone(pa), Arc::clone(qa), basis_images)
}

fn run(cli: &Cli, report: &mut Report) -> cdga::Result<u8> {
    let cap = cli.max_degree;
    match &cli.command {
        Command::Verify { file } => {
            let p = load(file, cap)?;
            report.violations = violations(&p.algebra.verify());
            if let Some(pd) = p.poincare()? {
                report.violations.extend(violations(&pd.algebra().verify()));
            }
            algebra_report(report, &p.algebra, cap, false)?;
            return Ok(if report.violations.is_empty() { 0 } else { 2 });
        }
        Command::Cohomology { file } => {
            let p = load(file, cap)?;
            algebra_report(report, &p.algebra, cap, true)?;
        }
        Command::Series { file } => {
            let p = load(file, cap)?;
            algebra_report(report, &p.algebra, cap, false)?;
        }
        Command::Massey { file, triple } => {
            let p = load(file, cap)?;
            let ring = algebra_report(report, &p.algebra, cap, true)?.expect("ring requested");
            add_massey(report, &ring, triple.as_deref().unwrap_or("auto"))?;
        }
        Command::Conf2DiskBundle {
            base,
            euler,
            rank,
            massey,
            check_presentation: check,
        } => {
            let (q, pd) = oriented(base)?;
            let e = q.element(euler)?;
            let m = conf2_disk_bundle(&pd, &e, *rank)?;
            let n = m.total.formal_dimension();
            let ring = conf2_report(report, &m.model, n, cap, massey.as_deref())?;
            report.routes_agree = Some(true);
            if let Some(path) = check {
                check_presentation(report, &ring, path, cap.unwrap_or(2 * n + 1))?;
            }
        }
        Command::Conf2Punctured { manifold, massey } => {
            let (_, pd) = oriented(manifold)?;
            let (_, model) = conf2_punctured(&pd)?;
            conf2_report(report, &model, pd.formal_dimension(), cap, massey.as_deref())?;
        }
        Command::Conf2Pretty {
            manifold,
            boundary,
            map,
            truncate,
            massey,
        } => {
            let (p, pd) = oriented(manifold)?;
            let q = load(boundary, cap)?;
            let phi = phi_from_map(&p, &q, map)?;
            let pm = pretty_model(&pd, &phi)?;
            let model = conf2_pretty(&pm, *truncate)?;
            conf2_report(report, &model, pd.formal_dimension(), cap, massey.as_deref())?;
        }
        Command::Complement { dim, point } => {
            let ground = Arc::new(Cdga::ground());
            let (fiber, r) = match point {
                PointKind::Interior => (DgModule::trivial(Arc::clone(&ground), "u", *dim)?, -1),
                PointKind::Boundary => (DgModule::zero(Arc::clone(&ground)), dim - 2),
            };
            let attaching = DgMorphism::zero(&fiber, &ground.as_module());
            let m = complement_model(&ComplementInput {
                fiber,
                attaching,
                n: *dim,
                k: 0,
                r,
            })?;
            algebra_report(report, m.algebra(), cap, true)?;
            report.violations = violations(&m.algebra().verify());
            report.hypotheses_assumed = m.hypotheses.clone();
        }
    }
    Ok(0)
}

fn emit(report: &Report, output: Option<&Path>) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    match output {
        Some(path) => std::fs::write(path, json + "\n"),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{json}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report {
        command: std::env::args().skip(1).collect(),
        ..Report::default()
    };
    let code = match run(&cli, &mut report) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.kind() == ErrorKind::Axiom {
                report.violations.push(e.to_string());
            }
            report.error = Some(e.to_string());
            exit_code(&e)
        }
    };
    if let Err(e) = emit(&report, cli.output.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_round_trip_through_json() {
        let base = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/s4.toml");
        let cli = Cli::parse_from(["cdga", "conf2-disk-bundle", "--base", base, "--euler", "x", "--rank", "4", "--massey", "auto"]);
        let mut report = Report::default();
        assert_eq!(run(&cli, &mut report).unwrap(), 0);
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(back.square.unwrap().commutes);
    }
}
