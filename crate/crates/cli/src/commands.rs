//! The `solve`, `generate` and `check` subcommands.

use crate::error::CliError;
use crate::format::{
    InstanceFile, LabelOrder, Number, ObjectEntry, ObjectOrder, Report, SolutionFile,
};
use clap::{Parser, Subcommand, ValueEnum};
use monocms_core::approx2::{default_epsilon, solve_instance};
use monocms_core::exact::brute_force_maxcms;
use monocms_core::generate::{random_dataset, DatasetSpec};
use monocms_core::rational::{self, Rational};
use monocms_core::{
    build_gadget, gadget_to_instance, solve_total_order, Cnf3, Error, Instance, Object,
};
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::{Path, PathBuf};

/// Approximation reports include the exact optimum up to this many objects.
pub const REPORT_EXACT_LIMIT: usize = 16;
/// Side of the coordinate grid for random datasets.
pub const COORD_RANGE: i64 = 10;

#[derive(Debug, Parser)]
#[command(
    name = "monocms",
    version,
    about = "Maximum monotone subsets of labeled data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a heavy subset on which the labeling is monotone.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum)]
        algorithm: Algorithm,
        /// Target accuracy of the relaxation, e.g. `1/16`.
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a random instance or a 3-CNF hardness instance.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Objects (random) or variables (sat).
        #[arg(long)]
        n: Option<usize>,
        /// Labels per chain (random) or clauses (sat).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 0.1)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// DIMACS formula to encode instead of a random one.
        #[arg(long)]
        cnf: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exit 0 iff the given objects carry a monotone labeling.
    Check {
        #[arg(short, long)]
        input: PathBuf,
        /// Comma-separated object ids.
        #[arg(long, default_value = "")]
        subset: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Exact,
    Flow,
    Approx2,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Flow => "flow",
            Algorithm::Approx2 => "approx2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Sat,
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Solve {
            input,
            algorithm,
            epsilon,
            output,
        } => cmd_solve(&input, algorithm, epsilon.as_deref(), output.as_deref()),
        Command::Generate {
            kind,
            n,
            m,
            dim,
            noise,
            seed,
            cnf,
            output,
        } => {
            let params = GenerateParams {
                kind,
                n,
                m,
                dim,
                noise,
                seed,
                cnf,
            };
            cmd_generate(&params, output.as_deref())
        }
        Command::Check { input, subset } => cmd_check(&input, &subset),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    InstanceFile::from_json(&read(path)?)?.to_instance()
}

pub fn parse_epsilon(text: Option<&str>) -> Result<Rational, CliError> {
    let eps = match text {
        Some(t) => rational::parse(t).map_err(CliError::from_parse)?,
        None => default_epsilon(),
    };
    if !eps.is_positive() {
        return Err(CliError::Parse("epsilon must be positive".into()));
    }
    Ok(eps)
}

fn solver_error(e: Error) -> CliError {
    match e {
        Error::TooLarge { .. } => CliError::TooLarge(e),
        Error::MissingRealizer | Error::WrongPartCount { .. } | Error::LabelOrderNotTotal => {
            CliError::Mismatch(e.to_string())
        }
        other => CliError::Core(other),
    }
}

pub fn solve(
    inst: &Instance,
    algorithm: Algorithm,
    epsilon: &Rational,
) -> Result<SolutionFile, CliError> {
    let (kept, kept_weight, report) = match algorithm {
        Algorithm::Exact => {
            let r = brute_force_maxcms(inst).map_err(solver_error)?;
            (r.best_set, r.best_weight, None)
        }
        Algorithm::Flow => {
            if !inst.label_order().is_total() {
                return Err(CliError::Mismatch("flow needs a total label order".into()));
            }
            let r = solve_total_order(inst).map_err(solver_error)?;
            (r.kept, r.kept_weight, None)
        }
        Algorithm::Approx2 => {
            if inst.realizer().map(|r| r.dimension()) != Some(2) {
                return Err(CliError::Mismatch(
                    "approx2 needs a label order given by two chains".into(),
                ));
            }
            let s = solve_instance(inst, epsilon, REPORT_EXACT_LIMIT).map_err(solver_error)?;
            let r = &s.report;
            let report = Report {
                total_weight: rational::format(&r.total_weight),
                alpha: rational::format(&r.alpha),
                epsilon: rational::format(&r.epsilon),
                bound: rational::format(&r.bound),
                gap: rational::format(&r.gap),
                iterations: s.relaxation.iterations,
                alpha_prime: r.alpha_prime.as_ref().map(rational::format),
                delta: r.delta.as_ref().map(rational::format),
            };
            (s.rounding.kept, s.rounding.kept_weight, Some(report))
        }
    };
    let id = |v: usize| inst.objects()[v].id.clone();
    Ok(SolutionFile {
        algorithm: algorithm.name().to_string(),
        kept: kept.iter().map(|&v| id(v)).collect(),
        removed: (0..inst.len())
            .filter(|v| !kept.contains(v))
            .map(id)
            .collect(),
        kept_weight: rational::format(&kept_weight),
        report,
    })
}

pub fn cmd_solve(
    input: &Path,
    algorithm: Algorithm,
    epsilon: Option<&str>,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let inst = load_instance(input)?;
    let eps = parse_epsilon(epsilon)?;
    let solution = solve(&inst, algorithm, &eps)?;
    emit(&solution.to_json(&inst)?, output)?;
    Ok(0)
}

#[derive(Clone, Debug)]
pub struct GenerateParams {
    pub kind: Kind,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub dim: usize,
    pub noise: f64,
    pub seed: u64,
    pub cnf: Option<PathBuf>,
}

pub fn generate(params: &GenerateParams) -> Result<InstanceFile, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let bad = |msg: &str| CliError::Parse(msg.to_string());
    match params.kind {
        Kind::Random => {
            let spec = DatasetSpec {
                objects: params.n.ok_or_else(|| bad("--n is required"))?,
                labels: params.m.unwrap_or(3),
                dimension: params.dim,
                noise: params.noise,
                coord_range: COORD_RANGE,
            };
            let d = random_dataset(&spec, &mut rng).map_err(CliError::from_parse)?;
            let names = |chain: &[usize]| {
                chain
                    .iter()
                    .map(|&l| d.label_names[l].clone())
                    .collect::<Vec<_>>()
            };
            let label_order = match d.chains.as_slice() {
                [chain] => LabelOrder::Total {
                    chain: names(chain),
                },
                [a, b] => LabelOrder::Realizer2 {
                    chains: [names(a), names(b)],
                },
                _ => unreachable!("datasets have one or two chains"),
            };
            Ok(InstanceFile {
                labels: Some(d.label_names.clone()),
                objects: (0..d.ids.len())
                    .map(|k| ObjectEntry {
                        id: d.ids[k].clone(),
                        weight: Number::from(&d.weights[k]),
                        label: d.label_names[d.labels[k]].clone(),
                    })
                    .collect(),
                object_order: ObjectOrder::Vectors {
                    vectors: d
                        .vectors
                        .iter()
                        .map(|v| v.iter().map(|&c| Number::Int(c)).collect())
                        .collect(),
                },
                label_order,
            })
        }
        Kind::Sat => {
            let f = match &params.cnf {
                Some(path) => Cnf3::parse_dimacs(&read(path)?).map_err(CliError::from_parse)?,
                None => Cnf3::random(
                    params.n.ok_or_else(|| bad("--n or --cnf is required"))?,
                    params.m.unwrap_or(0),
                    &mut rng,
                )
                .map_err(CliError::from_parse)?,
            };
            if f.variables() == 0 {
                return Err(bad("a formula needs at least one variable"));
            }
            let gadget = build_gadget(&f).map_err(CliError::from_parse)?;
            let inst = gadget_to_instance(&gadget)?;
            let objects: Vec<Object> = inst
                .objects()
                .iter()
                .zip(gadget.names())
                .map(|(o, name)| Object {
                    id: name.clone(),
                    ..o.clone()
                })
                .collect();
            let renamed = Instance::new(
                objects,
                inst.label_names().to_vec(),
                inst.object_order().clone(),
                inst.label_order().clone(),
                None,
            )?;
            Ok(InstanceFile::from_instance(&renamed))
        }
    }
}

pub fn cmd_generate(params: &GenerateParams, output: Option<&Path>) -> Result<i32, CliError> {
    emit(&generate(params)?.to_json(), output)?;
    Ok(0)
}

/// First pair `(greater, lesser)` of the subset whose labels are out of order.
pub fn check(inst: &Instance, subset: &str) -> Result<Option<(String, String)>, CliError> {
    let ids: Vec<usize> = subset
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            inst.index_of(s)
                .ok_or_else(|| CliError::Parse(format!("unknown object id {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    let name = |v: usize| inst.objects()[v].id.clone();
    Ok(inst.first_violation(&ids)?.map(|(i, j)| (name(i), name(j))))
}

pub fn cmd_check(input: &Path, subset: &str) -> Result<i32, CliError> {
    let inst = load_instance(input)?;
    match check(&inst, subset)? {
        None => {
            println!("acceptable");
            Ok(0)
        }
        Some((i, j)) => {
            println!("violation: {i} {j}");
            Ok(1)
        }
    }
}
