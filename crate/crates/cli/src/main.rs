//! Command-line front end for the `frobpi` engine.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use frobpi::center::{center_deformation_compare, center_dims, expected_center_dim};
use frobpi::exactfield::FieldDescriptor;
use frobpi::frobalg::{catalog, deformation, is_frobenius, AlgebraFile, AnyPair, CatalogEntry, FAMILY_COUNT, CATALOG_NAMES, REJECT_NAMES};
use frobpi::preproj::{Cache, GradedAlgebra};
use frobpi::splitcase::{invariant_relation_check, invariant_slice, quiver_hilbert};
use frobpi::verify::{dims_table, parse_suites, records_csv, records_markdown, run_suites, Source, Target, VerifyOptions};
use frobpi::with_pair;
use table::{verdict, Format, Table};

#[derive(Parser)]
#[command(name = "frobpi", version, about = "Exact computations with generalized preprojective algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded and split dimensions of Π for one pair.
    Dims {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Dimensions of the homogeneous components of the center.
    Center {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Run verification suites and report one record per check.
    Verify {
        /// Comma-separated suites, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict to one catalog pair.
        #[arg(long, conflicts_with = "algebra")]
        pair: Option<String>,
        /// Restrict to one pair read from a JSON file.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Comma-separated fields (`q`, `fp:<p>`, `qu`); suite defaults otherwise.
        #[arg(long, value_delimiter = ',')]
        field: Option<Vec<FieldDescriptor>>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// List the built-in algebras, or print one as a JSON algebra file.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        /// Field of the printed file (with --name).
        #[arg(long, default_value = "q")]
        field: FieldDescriptor,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare Π and its center on the two fibers of a deformation family.
    Deform {
        #[arg(long)]
        family: u32,
        /// Use the characteristic-2 presentation (family 6 only).
        #[arg(long)]
        char2: bool,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hilbert series of the preprojective algebra of a star quiver.
    Quiver {
        #[arg(long, default_value_t = 4)]
        arrows: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Binary dihedral invariants of k[x, y] by degree.
    Invariants {
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct PairArgs {
    /// A catalog name (see `frobpi catalog`).
    #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
    pair: Option<String>,
    /// A JSON algebra file.
    #[arg(long)]
    algebra: Option<PathBuf>,
    #[arg(long)]
    field: Option<FieldDescriptor>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
}

#[derive(Args)]
struct CacheArgs {
    /// Directory for cached relation spaces (FROBPI_CACHE takes precedence).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn cache(&self) -> Result<Option<Cache>, String> {
        if self.no_cache {
            return Ok(None);
        }
        let dir = std::env::var_os("FROBPI_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from).or_else(|| self.cache_dir.clone());
        match dir {
            Some(d) => {
                std::fs::create_dir_all(&d).map_err(|e| format!("cache directory {}: {e}", d.display()))?;
                Ok(Some(Cache::new(d)))
            }
            None => Ok(None),
        }
    }
}

/// Failure of a check (exit 1) or of the input (exit 2).
enum Outcome {
    Checked(bool),
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Outcome {
    fn from(e: E) -> Self {
        Outcome::Input(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<AlgebraFile, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::Input(format!("{}: {e}", path.display())))?;
    Ok(AlgebraFile::parse(&text)?)
}

fn target(pair: &Option<String>, algebra: &Option<PathBuf>) -> Result<Option<Target>, Outcome> {
    Ok(match (pair, algebra) {
        (Some(name), _) => {
            if !CATALOG_NAMES.contains(&name.as_str()) {
                return Err(Outcome::Input(format!("`{name}` is not a Frobenius pair in the catalog")));
            }
            Some(Target::catalog(name))
        }
        (None, Some(path)) => {
            let name = path.file_stem().map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
            Some(Target { name, source: Source::File(read_file(path)?) })
        }
        (None, None) => None,
    })
}

fn resolve(args: &PairArgs) -> Result<(String, AnyPair), Outcome> {
    let t = target(&args.pair, &args.algebra)?.ok_or_else(|| Outcome::Input("one of --pair or --algebra is required".into()))?;
    let pair = t.materialize(args.field)?;
    Ok((t.name, pair))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) | Err(Outcome::Checked(true)) => ExitCode::SUCCESS,
        Err(Outcome::Checked(false)) => ExitCode::from(1),
        Err(Outcome::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn finish(pass: bool) -> Result<(), Outcome> {
    if pass {
        Ok(())
    } else {
        Err(Outcome::Checked(false))
    }
}

fn run(cmd: Command) -> Result<(), Outcome> {
    match cmd {
        Command::Dims { pair, max_degree, out, cache } => {
            let (_, p) = resolve(&pair)?;
            let opts = VerifyOptions { cache: cache.cache()?, ..Default::default() };
            let rows = dims_table(&p, max_degree, &opts)?;
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.degree.to_string(),
                        r.dim.to_string(),
                        r.expected.to_string(),
                        r.dim_r.to_string(),
                        r.dim_s.to_string(),
                        verdict(r.pass),
                    ]
                })
                .collect();
            let t = Table::new(vec!["degree", "dim", "expected", "dim_1R", "dim_1S", "result"], &rows, cells);
            print!("{}", t.render(out.format));
            finish(rows.iter().all(|r| r.pass))
        }
        Command::Center { pair, max_degree, out, cache } => {
            let (name, p) = resolve(&pair)?;
            let cache = cache.cache()?;
            let dims = with_pair!(&p, q => {
                let g = GradedAlgebra::build_cached(q, max_degree + 1, cache.as_ref())?.0;
                center_dims(&g, max_degree)?
            });
            let rank4 = with_pair!(&p, q => q.rank() == 4);
            #[derive(Serialize)]
            struct Row {
                pair: String,
                field: String,
                degree: usize,
                dim_center: usize,
                expected: Option<usize>,
                pass: bool,
            }
            let rows: Vec<Row> = dims
                .iter()
                .enumerate()
                .map(|(d, z)| {
                    let expected = rank4.then(|| expected_center_dim(d));
                    Row {
                        pair: name.clone(),
                        field: p.descriptor().to_string(),
                        degree: d,
                        dim_center: *z,
                        expected,
                        pass: expected.is_none_or(|e| e == *z),
                    }
                })
                .collect();
            let cells = rows
                .iter()
                .map(|r| {
                    vec![r.degree.to_string(), r.dim_center.to_string(), r.expected.map(|e| e.to_string()).unwrap_or_default(), verdict(r.pass)]
                })
                .collect();
            let t = Table::new(vec!["degree", "dim_center", "expected", "result"], &rows, cells);
            print!("{}", t.render(out.format));
            finish(rows.iter().all(|r| r.pass))
        }
        Command::Verify { suite, pair, algebra, field, max_degree, format, cache } => {
            let suites = parse_suites(&suite)?;
            let opts = VerifyOptions {
                targets: target(&pair, &algebra)?.map(|t| vec![t]),
                fields: field,
                max_degree,
                cache: cache.cache()?,
            };
            let report = run_suites(&suites, &opts)?;
            let text = match format {
                Format::Json => report.to_json_string(),
                Format::Csv => records_csv(&report.records),
                Format::Md => records_markdown(&report.records),
            };
            print!("{text}");
            let failed = report.failures().count();
            eprintln!("{} checks, {} failed", report.records.len(), failed);
            finish(failed == 0)
        }
        Command::Catalog { name: Some(name), field, .. } => {
            let file = match AnyPair::catalog(&name, field) {
                Ok(p) => p.to_file(),
                Err(_) if REJECT_NAMES.contains(&name.as_str()) => with_reject(&name, field)?,
                Err(e) => return Err(e.into()),
            };
            print!("{}", file.to_json_string());
            Ok(())
        }
        Command::Catalog { name: None, out, .. } => {
            #[derive(Serialize)]
            struct Row {
                name: &'static str,
                basis: Vec<String>,
                listed_as_frobenius: bool,
                is_frobenius: bool,
            }
            let mut rows = Vec::new();
            for (name, listed) in CATALOG_NAMES.iter().map(|n| (*n, true)).chain(REJECT_NAMES.iter().map(|n| (*n, false))) {
                let entry = catalog(&frobpi::exactfield::Rationals, name)?;
                let basis = entry.algebra().names().to_vec();
                rows.push(Row { name, basis, listed_as_frobenius: listed, is_frobenius: is_frobenius(entry.algebra()).is_frobenius });
            }
            let cells = rows
                .iter()
                .map(|r| vec![r.name.to_string(), r.basis.join(" "), r.listed_as_frobenius.to_string(), r.is_frobenius.to_string()])
                .collect();
            let t = Table::new(vec!["name", "basis", "listed_as_frobenius", "is_frobenius"], &rows, cells);
            print!("{}", t.render(out.format));
            Ok(())
        }
        Command::Deform { family, char2, max_degree, out } => {
            if !(1..=FAMILY_COUNT).contains(&family) {
                return Err(Outcome::Input(format!("family must be between 1 and {FAMILY_COUNT}")));
            }
            let fam = deformation(family, char2)?;
            let matches = fam.special_fiber_matches()?;
            let rows = center_deformation_compare(family, char2, max_degree)?;
            let pass = matches && rows.iter().all(|r| r.equal() && r.semicontinuous());
            #[derive(Serialize)]
            struct Report<'a> {
                family: u32,
                char2: bool,
                special: &'a str,
                generic: &'a str,
                special_fiber_matches: bool,
                rows: &'a [frobpi::center::DeformationRow],
            }
            let report = Report { family, char2, special: fam.special, generic: fam.generic, special_fiber_matches: matches, rows: &rows };
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.degree.to_string(),
                        r.pi_special.to_string(),
                        r.pi_generic.to_string(),
                        r.center_special.to_string(),
                        r.center_generic.to_string(),
                        verdict(r.equal()),
                    ]
                })
                .collect();
            let t = Table::new(vec!["degree", "pi_special", "pi_generic", "center_special", "center_generic", "result"], &report, cells);
            if out.format == Format::Md {
                println!("family {family}: {} (u = 0) deforms to {}; special fiber matches: {matches}\n", fam.special, fam.generic);
            }
            print!("{}", t.render(out.format));
            finish(pass)
        }
        Command::Quiver { arrows, max_degree, out } => {
            if arrows == 0 {
                return Err(Outcome::Input("a star quiver needs at least one arrow".into()));
            }
            let w = quiver_hilbert(arrows, max_degree);
            #[derive(Serialize)]
            struct Row {
                degree: usize,
                total: String,
                center_vertex: String,
            }
            let rows: Vec<Row> = (0..=max_degree)
                .map(|d| Row { degree: d, total: w.total(d).to_string(), center_vertex: w.column_sum(d, 0).to_string() })
                .collect();
            let cells = rows.iter().map(|r| vec![r.degree.to_string(), r.total.clone(), r.center_vertex.clone()]).collect();
            let t = Table::new(vec!["degree", "total", "center_vertex"], &rows, cells);
            print!("{}", t.render(out.format));
            Ok(())
        }
        Command::Invariants { max_degree, out } => {
            #[derive(Serialize)]
            struct Row {
                degree: u32,
                dim: usize,
                basis: Vec<String>,
            }
            let rows: Vec<Row> = (0..=max_degree)
                .map(|d| {
                    let s = invariant_slice(d);
                    let basis = s.orbits.iter().map(|o| orbit_name(o.m, o.n)).collect();
                    Row { degree: d, dim: s.orbits.len(), basis }
                })
                .collect();
            let cells = rows.iter().map(|r| vec![r.degree.to_string(), r.dim.to_string(), r.basis.join("; ")]).collect();
            let t = Table::new(vec!["degree", "dim", "basis"], &rows, cells);
            print!("{}", t.render(out.format));
            let ok = invariant_relation_check();
            eprintln!("C^2 - B(A^2 - 4B^2) = 0: {ok}");
            finish(ok)
        }
    }
}

fn with_reject(name: &str, field: FieldDescriptor) -> Result<AlgebraFile, Outcome> {
    use frobpi::exactfield::{PrimeField, RationalFunctions, Rationals};
    fn file<F: frobpi::exactfield::Field>(f: &F, name: &str) -> Result<AlgebraFile, Outcome> {
        match catalog(f, name)? {
            CatalogEntry::Reject(a) => Ok(AlgebraFile::from_algebra(&a, None)),
            CatalogEntry::Pair(p) => Ok(AlgebraFile::from_pair(&p)),
        }
    }
    match field {
        FieldDescriptor::Q => file(&Rationals, name),
        FieldDescriptor::Fp(p) => file(&PrimeField::new(p as u64)?, name),
        FieldDescriptor::QU => file(&RationalFunctions, name),
    }
}

fn orbit_name(m: u32, n: u32) -> String {
    let mono = |a: u32, b: u32| {
        let p = |v: &str, k: u32| match k {
            0 => String::new(),
            1 => v.to_string(),
            k => format!("{v}^{k}"),
        };
        let s = format!("{}{}", p("x", a), p("y", b));
        if s.is_empty() {
            "1".to_string()
        } else {
            s
        }
    };
    if m == n {
        mono(m, n)
    } else {
        let sign = if m.is_multiple_of(2) { '+' } else { '-' };
        format!("{} {sign} {}", mono(m, n), mono(n, m))
    }
}
