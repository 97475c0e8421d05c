mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use bihilb_core::combinatorics::{chi_equal, degree_ci, Bidegree, DegreeList, Shape};
use bihilb_core::experiments::{projection_profiles, verify_formula_vs_oracle};
use bihilb_core::hilbert::{default_window, degree_of, guaranteed_regularity_staircase, hf_table, Window};
use bihilb_core::linalg::{PrimeField, DEFAULT_PRIME};
use bihilb_core::oracle::{
    hf_v_oracle, paper_example, parse_instance, random_instance, random_instance_with_degrees,
    stabilization_staircase, validated_hf_v, Instance,
};
use bihilb_core::regions::{classify, guaranteed_corners, RegionSpec};
use bihilb_core::{combinatorics::dim_s, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bihilb", version, about = "Bigraded Hilbert functions of points in P^n x P^m")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler characteristic of the Koszul complex at one bidegree.
    Chi {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        mu: Vec<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Degree of the complete intersection.
    Degree {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        e: Option<i64>,
        /// One generator bidegree; repeat for each generator.
        #[arg(long, num_args = 2, value_names = ["A", "B"], action = clap::ArgAction::Append)]
        degrees: Vec<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Region memberships and the applicable rule at one bidegree.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        mu: Vec<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form Hilbert function on a window.
    Table {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Color cells by region.
        #[arg(long)]
        color: bool,
    },
    /// Guaranteed regularity corners, and the observed ones for an instance.
    Regularity {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hilbert function of an explicit instance, by linear algebra over F_p.
    Oracle {
        #[command(flatten)]
        source: SourceArgs,
        /// Shape and generator degrees for a random instance.
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        e: Option<i64>,
        #[arg(long, num_args = 2, value_names = ["A", "B"], action = clap::ArgAction::Append)]
        degrees: Vec<i64>,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare the closed form with the oracle on a window.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Axis profiles HF(a,0), HF(0,b) of a random (or given) instance.
    Generic {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        source: SourceArgs,
        /// Largest axis index; defaults to the first index where both axis
        /// pieces are at least the degree, plus one.
        #[arg(long)]
        bound: Option<i64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct SpecArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    e: i64,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Lower and upper corners `A0 B0 A1 B1`.
    #[arg(long, num_args = 4, value_names = ["A0", "B0", "A1", "B1"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Instance JSON file.
    #[arg(long, conflicts_with_all = ["paper", "seed"])]
    instance: Option<PathBuf>,
    /// The four-generator example on P^2 x P^2.
    #[arg(long, conflicts_with = "seed")]
    paper: bool,
    /// Seed of a random instance.
    #[arg(long)]
    seed: Option<u64>,
    /// Field characteristic for `--paper` and `--seed`.
    #[arg(long, conflicts_with = "instance")]
    prime: Option<u64>,
}

#[derive(Args, Clone, Copy)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotCompleteIntersection(_) | Error::ShapeMismatch(_) => 2,
            Error::PaddingExhausted { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn bd(v: &[i64]) -> Bidegree {
    Bidegree::new(v[0], v[1])
}

fn region_spec(s: &SpecArgs) -> CliResult<RegionSpec> {
    Ok(RegionSpec::new(Shape::new(s.n, s.m)?, Bidegree::new(s.d, s.e))?)
}

fn window_or(w: &WindowArgs, default: Window) -> CliResult<Window> {
    match &w.window {
        None => Ok(default),
        Some(v) => Ok(Window::new(bd(&v[..2]), bd(&v[2..]))?),
    }
}

fn field(source: &SourceArgs) -> CliResult<PrimeField> {
    Ok(PrimeField::new(source.prime.unwrap_or(DEFAULT_PRIME))?)
}

fn degree_list(pairs: &[i64]) -> CliResult<DegreeList> {
    Ok(DegreeList::new(pairs.chunks(2).map(bd).collect())?)
}

/// Instance named by the source flags; random instances use `spec`.
fn load_instance(source: &SourceArgs, spec: Option<&RegionSpec>) -> CliResult<Option<Instance>> {
    if let Some(path) = &source.instance {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Some(parse_instance(&text)?));
    }
    if source.paper {
        return Ok(Some(paper_example(field(source)?)));
    }
    if let Some(seed) = source.seed {
        let spec = spec.ok_or_else(|| Failure::usage("--seed needs the shape and degree flags"))?;
        return Ok(Some(random_instance(spec.shape(), spec.d(), field(source)?, seed)?));
    }
    if source.prime.is_some() {
        return Err(Failure::usage("--prime applies to --paper or --seed"));
    }
    Ok(None)
}

fn require_instance(source: &SourceArgs, spec: Option<&RegionSpec>) -> CliResult<Instance> {
    load_instance(source, spec)?.ok_or_else(|| Failure::usage("one of --instance, --paper or --seed is required"))
}

fn degree_u64(spec: &RegionSpec) -> CliResult<u64> {
    u64::try_from(degree_of(spec)).map_err(|_| Failure::usage("degree exceeds 64 bits"))
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Chi { spec, mu, out } => {
            let s = region_spec(&spec)?;
            let mu = bd(&mu);
            let v = chi_equal(s.shape(), s.d(), mu);
            Ok(match out.format {
                Format::Text => format!("{v}\n"),
                Format::Csv => format!("a,b,chi\n{},{},{v}\n", mu.a, mu.b),
                Format::Json => format!("{}\n", json!({"mu": [mu.a, mu.b], "chi": render::big(&v)})),
            })
        }
        Command::Degree { n, m, d, e, degrees, out } => {
            let shape = Shape::new(n, m)?;
            let list = match (d, e, degrees.is_empty()) {
                (Some(d), Some(e), true) => DegreeList::constant(Bidegree::new(d, e), shape.r())?,
                (None, None, false) => degree_list(&degrees)?,
                _ => return Err(Failure::usage("give either --d and --e, or --degrees")),
            };
            let v = degree_ci(shape, &list)?;
            Ok(match out.format {
                Format::Text => format!("{v}\n"),
                Format::Csv => format!("degree\n{v}\n"),
                Format::Json => format!("{}\n", json!({"degree": render::big(&v)})),
            })
        }
        Command::Classify { spec, mu, out } => {
            let s = region_spec(&spec)?;
            let c = classify(&s, bd(&mu));
            Ok(render::classification(&c, out.format))
        }
        Command::Table { spec, window, out, color } => {
            let s = region_spec(&spec)?;
            let w = window_or(&window, default_window(&s))?;
            let table = hf_table(&s, w)?;
            Ok(render::table(&table, out.format, color))
        }
        Command::Regularity {
            spec,
            source,
            window,
            out,
        } => {
            let s = region_spec(&spec)?;
            let guaranteed = guaranteed_regularity_staircase(&s);
            let observed = match load_instance(&source, Some(&s))? {
                None => None,
                Some(inst) => {
                    let corners = guaranteed_corners(&s);
                    let cover = Window::new(Bidegree::ZERO, corners[0].max(corners[1]))?;
                    let w = window_or(&window, default_window(&s).hull(&cover))?;
                    let grid = validated_hf_v(&inst, &s, w, degree_u64(&s)?)?;
                    Some(stabilization_staircase(&grid, degree_u64(&s)?, &corners)?)
                }
            };
            Ok(render::regularity(&guaranteed, observed.as_ref(), out.format))
        }
        Command::Oracle {
            source,
            n,
            m,
            d,
            e,
            degrees,
            window,
            out,
        } => {
            let inst = match (source.seed, n, m) {
                (Some(seed), Some(n), Some(m)) => {
                    if source.instance.is_some() || source.paper {
                        return Err(Failure::usage("--seed conflicts with --instance and --paper"));
                    }
                    let shape = Shape::new(n, m)?;
                    let list = match (d, e, degrees.is_empty()) {
                        (Some(d), Some(e), true) => DegreeList::constant(Bidegree::new(d, e), shape.r())?,
                        (None, None, false) => degree_list(&degrees)?,
                        _ => return Err(Failure::usage("give either --d and --e, or --degrees")),
                    };
                    random_instance_with_degrees(shape, &list, field(&source)?, seed)?
                }
                (Some(_), _, _) => return Err(Failure::usage("--seed needs --n and --m")),
                (None, _, _) => {
                    if n.is_some() || m.is_some() || d.is_some() || e.is_some() || !degrees.is_empty() {
                        return Err(Failure::usage("shape and degree flags apply to --seed only"));
                    }
                    require_instance(&source, None)?
                }
            };
            let w = match &window.window {
                Some(_) => window_or(&window, Window::new(Bidegree::ZERO, Bidegree::ZERO)?)?,
                None => {
                    let total = inst.forms().iter().fold(Bidegree::ZERO, |acc, f| acc + f.bidegree());
                    let sh = inst.shape();
                    let sigma = total - Bidegree::new(sh.n() as i64 + 1, sh.m() as i64 + 1);
                    Window::new(Bidegree::ZERO, (sigma + Bidegree::new(2, 2)).max(Bidegree::ZERO))?
                }
            };
            let grid = hf_v_oracle(&inst, w)?;
            Ok(render::grid(&grid, out.format))
        }
        Command::Verify {
            spec,
            source,
            window,
            out,
        } => {
            let s = region_spec(&spec)?;
            let inst = require_instance(&source, Some(&s))?;
            let w = window_or(&window, default_window(&s))?;
            let report = verify_formula_vs_oracle(&s, w, &inst, &describe(&source, &inst))?;
            let text = match out.format {
                Format::Text => report.to_text(),
                Format::Json => format!("{}\n", report.to_json()),
                Format::Csv => render::verify_csv(&report),
            };
            if report.ok() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure {
                    code: 4,
                    message: format!("{} mismatches", report.mismatches.len()),
                })
            }
        }
        Command::Generic {
            spec,
            source,
            bound,
            out,
        } => {
            let s = region_spec(&spec)?;
            let source = if source.instance.is_none() && !source.paper && source.seed.is_none() {
                SourceArgs {
                    seed: Some(0),
                    ..source
                }
            } else {
                source
            };
            let inst = require_instance(&source, Some(&s))?;
            let bound = bound.unwrap_or_else(|| default_bound(&s));
            let report = projection_profiles(&s, &inst, source.seed, bound)?;
            Ok(match out.format {
                Format::Text => report.to_text(),
                Format::Json => format!("{}\n", report.to_json()),
                Format::Csv => render::profiles_csv(&report),
            })
        }
    }
}

fn describe(source: &SourceArgs, inst: &Instance) -> String {
    match (&source.instance, source.paper, source.seed) {
        (Some(p), _, _) => p.display().to_string(),
        (None, true, _) => "paper".to_string(),
        (None, false, Some(seed)) => format!("seed={seed},prime={}", inst.field().modulus()),
        _ => "instance".to_string(),
    }
}

/// One past the first index where both axis pieces reach the degree, and at
/// least the largest guaranteed corner coordinate.
fn default_bound(spec: &RegionSpec) -> i64 {
    let deg = degree_of(spec);
    let shape = spec.shape();
    let first = |axis: fn(i64) -> Bidegree| (0..).find(|&k| dim_s(shape, axis(k)) >= deg).unwrap_or(0);
    let a = first(|k| Bidegree::new(k, 0));
    let b = first(|k| Bidegree::new(0, k));
    let corner = guaranteed_corners(spec).iter().map(|c| c.a.max(c.b)).max().unwrap_or(0);
    (a.max(b) + 1).max(corner)
}

fn configure_threads() {
    if let Some(n) = std::env::var("BIHILB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
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
    configure_threads();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
