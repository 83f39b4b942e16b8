//! `csymlie`: verify, mirror, extend and export complex symplectic structures.
//!
//! Exit status is 0 when every check passes, 1 when a check fails or a
//! constructor rejects its input, and 2 on unreadable input.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use csymlie::catalog::{build_nilpotent_family, entry_report};
use csymlie::dga::{self, DGAPresentation, DgaFile};
use csymlie::geometry::{check_lagrangian_splitting, complex_symplectic_report};
use csymlie::report::Report;
use csymlie::semidirect::{build_special_lagrangian, mirror_complex, mirror_symplectic, varpi, verify_self_mirror};
use csymlie::tower::{extend_tower, hypersymplectic_report, Polarization};
use csymlie::{Error, Scalar};

use input::StructureFile;

#[derive(Parser)]
#[command(name = "csymlie", version, about = "Exact checks for complex symplectic Lie algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Treat convention notes as failures.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for randomized scans.
    #[arg(long, default_value_t = dga::DEFAULT_SEED, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi, (J, Ω1) certification and the Lagrangian splitting of a structure file.
    Verify { file: PathBuf },
    /// Self-mirror verification of a connection file or catalog id.
    Mirror {
        source: String,
        /// Write the mirror algebra and structures here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the hypersymplectic tower.
    Tower {
        source: String,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// omega1, omega2, omega3, or a combination "a,b,c".
        #[arg(long, default_value = "omega1")]
        form: String,
        /// Directory for one structure file per level.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a 2-step nilpotent family member.
    Family {
        /// JSON spec `{ "n": n, "a": [matrix, …] }`.
        spec: Option<PathBuf>,
        /// One block per `--a`, e.g. `--a "1 0; 0 0"`.
        #[arg(long = "a")]
        blocks: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List, show, export or verify built-in examples.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Build the two differential Gerstenhaber algebras and check the map between them.
    #[command(subcommand)]
    Dga(DgaCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { id: String },
    /// Entry as JSON, or with `--structure` the structure file of 𝔥.
    Export {
        id: String,
        #[arg(long)]
        structure: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify entries (all of them when no id is given).
    Verify { ids: Vec<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DgaKind {
    Complex,
    Symplectic,
}

#[derive(Subcommand)]
enum DgaCommand {
    Build {
        source: String,
        #[arg(long, value_enum, default_value_t = DgaKind::Complex)]
        kind: DgaKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Axioms of a DGA file, or of both DGAs of a source plus the explicit isomorphism.
    Check {
        source: String,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
}

/// What a command produced.
#[derive(Default)]
struct Outcome {
    info: Vec<String>,
    reports: Vec<Report>,
    /// Printed as is instead of the reports, for export commands.
    document: Option<serde_json::Value>,
}

impl Outcome {
    fn passed(&self, strict: bool) -> bool {
        self.reports
            .iter()
            .all(|r| if strict { r.passed_strict() } else { r.passed() })
    }
}

fn rejected(subject: &str, err: Error) -> Result<Report, Error> {
    match err {
        Error::Rejected(r) => Ok(Report {
            subject: format!("{subject} (rejected)"),
            checks: r.0,
        }),
        e => Err(e),
    }
}

fn run_verify(file: &Path) -> Result<Outcome, Error> {
    let s = input::read_json::<StructureFile>(file)?.load()?;
    let mut jacobi = Report::new("Lie algebra");
    jacobi.push(s.algebra.check_jacobi());
    let mut out = Outcome::default();
    out.info.push(format!("algebra: {}", s.algebra.describe()));
    let ok = jacobi.passed();
    out.reports.push(jacobi);
    if ok {
        out.reports.push(complex_symplectic_report(&s.algebra, &s.j, &s.omega1)?);
        out.reports
            .push(check_lagrangian_splitting(&s.algebra, &s.j, &s.omega1.to_matrix()?, &s.g, &s.v)?);
    }
    Ok(out)
}

fn run_mirror(source: &str, dir: Option<&Path>) -> Result<Outcome, Error> {
    let (name, c) = input::connection(source)?;
    let mut report = verify_self_mirror(&c)?;
    report.subject = format!("{name}: self-mirror");
    let mut out = Outcome::default();
    if report.passed() {
        let sl = build_special_lagrangian(&c)?;
        let (hat, omega_hat) = mirror_symplectic(&sl)?;
        let (_, j_hat) = mirror_complex(&sl)?;
        out.info.push(format!("𝔥: {}", sl.h.describe()));
        out.info.push(format!("𝔥̂: {}", hat.describe()));
        if let Some(dir) = dir {
            let doc = json!({
                "algebra": hat.to_file(),
                "omega_hat": omega_hat.to_file(),
                "j_hat": j_hat,
                "varpi": varpi(&c),
            });
            input::write_json(&dir.join(format!("{name}-mirror.json")), &doc)?;
            input::write_json(&dir.join(format!("{name}.json")), &StructureFile::from_special_lagrangian(&sl))?;
        }
    }
    out.reports.push(report);
    Ok(out)
}

fn parse_polarization(s: &str) -> Result<Polarization, Error> {
    Ok(match s {
        "omega1" => Polarization::Omega1,
        "omega2" => Polarization::Omega2,
        "omega3" => Polarization::Omega3,
        _ => {
            let parts = s
                .split(',')
                .map(|t| t.trim().parse::<Scalar>())
                .collect::<Result<Vec<_>, _>>()?;
            match <[Scalar; 3]>::try_from(parts) {
                Ok([a, b, c]) => Polarization::Combination(a, b, c),
                Err(_) => return Err(Error::parse("--form", "expected omega1, omega2, omega3 or a,b,c")),
            }
        }
    })
}

fn run_tower(source: &str, levels: usize, form: &str, dir: Option<&Path>) -> Result<Outcome, Error> {
    if levels == 0 {
        return Err(Error::parse("--levels", "must be at least 1"));
    }
    let polarization = parse_polarization(form)?;
    let (name, c) = input::connection(source)?;
    let mut out = Outcome::default();
    let mut sl = match build_special_lagrangian(&c) {
        Ok(sl) => sl,
        Err(e) => {
            out.reports.push(rejected(&name, e)?);
            return Ok(out);
        }
    };
    for level in 1..=levels {
        let mut r = hypersymplectic_report(&sl)?;
        r.subject = format!("level {} ({}-dim): hypersymplectic", level - 1, sl.h.dim());
        out.reports.push(r);
        let step = match extend_tower(&sl, &polarization) {
            Ok(s) => s,
            Err(e) => {
                out.reports.push(rejected(&format!("level {level}"), e)?);
                return Ok(out);
            }
        };
        sl = step.next;
        let h = &sl.h;
        out.info.push(format!(
            "level {level}: dim {}, center {}, lower central series {:?}, {}",
            h.dim(),
            h.center().dim(),
            h.lower_central_dims(),
            h.describe()
        ));
        let mut r = sl.verify()?;
        r.subject = format!("level {level} ({}-dim) with {polarization}", h.dim());
        out.reports.push(r);
        if let Some(dir) = dir {
            input::write_json(&dir.join(format!("{name}-level{level}.json")), &StructureFile::from_special_lagrangian(&sl))?;
        }
    }
    Ok(out)
}

fn run_family(spec: Option<&Path>, blocks: &[String], dir: Option<&Path>) -> Result<Outcome, Error> {
    let spec = input::family_spec(spec, blocks)?;
    let mut out = Outcome::default();
    let fam = match build_nilpotent_family(&spec) {
        Ok(f) => f,
        Err(e) => {
            let mut r = spec.check();
            r.absorb(rejected("family", e)?);
            r.checks.dedup_by(|a, b| a.law == b.law && a.witness == b.witness);
            out.reports.push(r);
            return Ok(out);
        }
    };
    out.info.push(format!("algebra: {}", fam.algebra.describe()));
    let mut r = spec.check();
    r.absorb(fam.connection.check()?);
    r.absorb(fam.structure_report());
    out.reports.push(r);
    out.reports.push(verify_self_mirror(&fam.connection)?);
    let sl = build_special_lagrangian(&fam.connection)?;
    out.reports.push(hypersymplectic_report(&sl)?);
    if let Some(dir) = dir {
        input::write_json(&dir.join("family-algebra.json"), &fam.algebra.to_file())?;
        input::write_json(&dir.join("family-connection.json"), &fam.connection.to_file())?;
    }
    Ok(out)
}

fn certify_entry(e: &csymlie::catalog::CatalogEntry) -> Result<Vec<Report>, Error> {
    let mut mirror = verify_self_mirror(&e.connection)?;
    mirror.subject = format!("{}: self-mirror", e.id);
    Ok(vec![entry_report(e)?, mirror])
}

fn run_catalog(cmd: &CatalogCommand) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    match cmd {
        CatalogCommand::List => {
            let entries = input::catalog()?;
            for e in &entries {
                out.info.push(format!("{:<10} {:>3}  {}", e.id, 2 * e.connection.dim(), e.description));
            }
            out.document = Some(json!(entries
                .iter()
                .map(|e| json!({"id": e.id, "dim": 2 * e.connection.dim(), "description": e.description}))
                .collect::<Vec<_>>()));
        }
        CatalogCommand::Show { id } => {
            let e = input::catalog_entry(id)?;
            let sl = build_special_lagrangian(&e.connection)?;
            out.info.push(format!("{}: {}", e.id, e.description));
            out.info.push(format!("brackets: {}", sl.h.describe()));
            let labels = sl.h.dual_labels();
            out.info.push(format!("Ω1 = {}", sl.omega1.display_with(&labels)));
            out.info.push(format!("Ω2 = {}", sl.omega2.display_with(&labels)));
            out.reports.extend(certify_entry(&e)?);
        }
        CatalogCommand::Export { id, structure, out: path } => {
            let e = input::catalog_entry(id)?;
            let doc = if *structure {
                serde_json::to_value(StructureFile::from_special_lagrangian(&build_special_lagrangian(&e.connection)?))
            } else {
                serde_json::to_value(e.to_file())
            }
            .expect("serializable");
            match path {
                Some(p) => input::write_json(p, &doc)?,
                None => out.document = Some(doc),
            }
        }
        CatalogCommand::Verify { ids } => {
            let entries = input::catalog()?;
            for id in ids {
                if !entries.iter().any(|e| &e.id == id) {
                    return Err(Error::UnknownEntry(id.clone()));
                }
            }
            for e in entries.iter().filter(|e| ids.is_empty() || ids.contains(&e.id)) {
                out.reports.extend(certify_entry(e)?);
            }
        }
    }
    Ok(out)
}

fn build_dga(source: &str, kind: DgaKind) -> Result<(String, DGAPresentation), Error> {
    let (name, c) = input::connection(source)?;
    let sl = build_special_lagrangian(&c)?;
    let d = match kind {
        DgaKind::Complex => dga::dga_from_complex(&sl.h, &sl.j)?,
        DgaKind::Symplectic => dga::dga_from_symplectic(&sl.h, &sl.omega1)?,
    };
    Ok((name, d))
}

fn run_dga(cmd: &DgaCommand, seed: u64) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    match cmd {
        DgaCommand::Build { source, kind, out: path } => {
            let (_, d) = build_dga(source, *kind)?;
            out.info.extend(d.describe().lines().map(String::from));
            let doc = serde_json::to_value(d.to_file()).expect("serializable");
            match path {
                Some(p) => input::write_json(p, &doc)?,
                None => out.document = Some(doc),
            }
        }
        DgaCommand::Check { source, samples } => {
            let path = Path::new(source);
            let as_file = path.exists()
                && input::read_json::<serde_json::Value>(path)?
                    .get("generators")
                    .is_some();
            if as_file {
                let d = DGAPresentation::from_file(&input::read_json::<DgaFile>(path)?)?;
                out.reports.push(d.check_axioms(seed, *samples)?);
            } else {
                let (name, c) = input::connection(source)?;
                let sl = build_special_lagrangian(&c)?;
                let complex = dga::dga_from_complex(&sl.h, &sl.j)?;
                let symplectic = dga::dga_from_symplectic(&sl.h, &sl.omega1)?;
                let mut r = complex.check_axioms(seed, *samples)?;
                r.subject = format!("{name}: DGA(𝔥, J)");
                out.reports.push(r);
                let mut r = symplectic.check_axioms(seed, *samples)?;
                r.subject = format!("{name}: DGA(𝔥, Ω)");
                r.push(dga::check_anchor(&sl.h, &sl.omega1, &symplectic)?);
                out.reports.push(r);
                let phi = dga::explicit_isomorphism(&sl)?;
                let mut r = dga::check_dga_isomorphism(&complex, &symplectic, &phi)?;
                r.subject = format!("{name}: DGA(𝔥, J) ≅ DGA(𝔥, Ω)");
                out.reports.push(r);
            }
        }
    }
    Ok(out)
}

fn print(out: &Outcome, g: &Global) {
    let passed = out.passed(g.strict);
    match g.format {
        Format::Json => {
            let doc = match &out.document {
                Some(d) => d.clone(),
                None => json!({
                    "passed": passed,
                    "strict": g.strict,
                    "info": out.info,
                    "reports": out.reports.iter().map(Report::to_json).collect::<Vec<_>>(),
                }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Text => {
            if let (Some(d), true) = (&out.document, out.info.is_empty()) {
                println!("{}", serde_json::to_string_pretty(d).expect("serializable"));
                return;
            }
            for line in &out.info {
                println!("{line}");
            }
            for r in &out.reports {
                print!("{r}");
            }
            if !out.reports.is_empty() {
                println!("{}", if passed { "ALL PASS" } else { "FAILED" });
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { file } => run_verify(file),
        Command::Mirror { source, out } => run_mirror(source, out.as_deref()),
        Command::Tower {
            source,
            levels,
            form,
            out,
        } => run_tower(source, *levels, form, out.as_deref()),
        Command::Family { spec, blocks, out } => run_family(spec.as_deref(), blocks, out.as_deref()),
        Command::Catalog(cmd) => run_catalog(cmd),
        Command::Dga(cmd) => run_dga(cmd, cli.global.seed),
    };
    let out = match result {
        Ok(out) => out,
        Err(Error::Rejected(r)) => Outcome {
            reports: vec![Report {
                subject: "rejected".into(),
                checks: r.0,
            }],
            ..Outcome::default()
        },
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print(&out, &cli.global);
    if out.passed(cli.global.strict) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
