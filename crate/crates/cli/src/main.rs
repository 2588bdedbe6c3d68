//! `pdslab` — construct partial difference sets and association schemes over
//! finite fields, and certify them.
//!
//! Exit codes: 0 success, 1 verification failed (the certificate carries a
//! witness), 2 invalid parameters or malformed input, 3 I/O error.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pdslab::bent::{walsh_spectrum, FunctionFile, PAryFunction};
use pdslab::gf::FiniteField;
use pdslab::group::{GroupSubset, VectorGroup};
use pdslab::pds::{
    cayley_adjacency_csv, cayley_edge_list, construct_affine_polar, construct_bent_pds, construct_cyclotomic_pds,
    construct_rt2, perturb, swap_one, verify_pds_bruteforce, verify_pds_characters, Certificate, PdsConstruction,
    Prediction, SetFile,
};
use pdslab::qform::{FormKind, QuadraticForm};
use pdslab::scheme::{
    build_bent_scheme, build_cyclotomic_scheme, certify_amorphic, check_scheme, random_symmetric_partition,
    PartitionFile, SchemeCheck, TranslationPartition,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "pdslab", version, about = "Partial difference sets over finite fields, constructed and certified")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a set or partition and write it with its predicted parameters.
    #[command(subcommand)]
    Construct(Construct),
    /// Certify a set file by brute force and by characters.
    Verify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a partition file is a translation scheme.
    Scheme {
        input: PathBuf,
        /// Also enumerate every fusion and certify amorphicity.
        #[arg(long)]
        amorphic: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact Walsh spectrum and bent classification of a p-ary function.
    Walsh {
        /// Function file (values in the order 0, g^0, g^1, ...).
        input: Option<PathBuf>,
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a set file to the Cayley graph as CSV or an edge list.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded corruption of a set file, for negative tests.
    Perturb {
        input: PathBuf,
        #[arg(long)]
        seed: u64,
        /// `pair` swaps a ±x pair (keeps symmetry), `swap` a single element.
        #[arg(long, value_enum, default_value_t = PerturbMode::Pair)]
        mode: PerturbMode,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random symmetric partition of F_q^n, for negative tests.
    RandomPartition {
        /// Field order, as `9` or `3^2`.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        classes: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Union of cyclotomic level sets of a quadratic form.
    Cyclotomic {
        #[command(flatten)]
        params: CyclotomicArgs,
        #[arg(long = "class", default_value_t = 0)]
        class: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Nonzero isotropic vectors of a quadratic form over F_q (odd q).
    AffinePolar {
        #[command(flatten)]
        params: FormArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Nonzero vectors with Q(x) a nonzero square.
    Rt2 {
        #[command(flatten)]
        params: FormArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The three sets D0 \ {0}, DR, DN of a weakly regular bent function,
    /// written into a directory.
    Bent {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The partition {D_C0, ..., D_C(e-1), D_0 \ {0}}.
    CyclotomicScheme {
        #[command(flatten)]
        params: CyclotomicArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The partition {D0 \ {0}, DR, DN}.
    BentScheme {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CyclotomicArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    e: u32,
    #[arg(long, default_value_t = 1)]
    gamma: u32,
    #[arg(long)]
    m: u32,
    /// hyperbolic (+) or elliptic (-)
    #[arg(long)]
    form: FormKind,
}

#[derive(Args)]
struct FormArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    form: FormKind,
}

#[derive(Args)]
struct FunctionArgs {
    /// Field order, as `9` or `3^2`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum)]
    function: Option<FunctionKind>,
    /// For `quadratic`: use Tr(g^scale x^2).
    #[arg(long, default_value_t = 0)]
    scale: u32,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionKind {
    /// Tr(a x^2)
    Quadratic,
    /// The zero function.
    Zero,
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbMode {
    Pair,
    Swap,
}

/// Error carrying the process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

type CliResult<T> = Result<T, Failure>;

fn invalid(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: EXIT_INVALID, error: error.into() }
}

fn io_failure(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: EXIT_IO, error: error.into() }
}

trait OrInvalid<T> {
    fn or_invalid(self) -> CliResult<T>;
}

impl<T, E: Into<anyhow::Error>> OrInvalid<T> for Result<T, E> {
    fn or_invalid(self) -> CliResult<T> {
        self.map_err(invalid)
    }
}

fn parse_field(s: &str) -> CliResult<Arc<FiniteField>> {
    let field = match s.split_once('^') {
        Some((p, k)) => {
            let p: u32 = p.trim().parse().with_context(|| format!("bad characteristic in {s:?}")).or_invalid()?;
            let k: u32 = k.trim().parse().with_context(|| format!("bad degree in {s:?}")).or_invalid()?;
            FiniteField::new(p, k)
        }
        None => {
            let q: u64 = s.trim().parse().with_context(|| format!("bad field order {s:?}")).or_invalid()?;
            FiniteField::from_order(q)
        }
    };
    Ok(Arc::new(field.or_invalid()?))
}

fn build_function(args: &FunctionArgs) -> CliResult<PAryFunction> {
    let field = args.field.as_deref().ok_or_else(|| invalid(anyhow!("--field is required")))?;
    let field = parse_field(field)?;
    match args.function.unwrap_or(FunctionKind::Quadratic) {
        FunctionKind::Quadratic => {
            let a = field.exp(args.scale as i64);
            PAryFunction::trace_quadratic(field, a).or_invalid()
        }
        FunctionKind::Zero => PAryFunction::zero(field).or_invalid(),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(io_failure)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())).or_invalid()
}

/// Writes via a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let write = || -> anyhow::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(contents.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path)?;
        Ok(())
    };
    write().with_context(|| format!("writing {}", path.display())).map_err(io_failure)
}

fn emit(output: Option<&Path>, contents: &str) -> CliResult<()> {
    match output {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(io_failure)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn render_set(group: &VectorGroup, set: &GroupSubset, prediction: Option<Prediction>, format: Format) -> String {
    match format {
        Format::Json => to_json(&SetFile::new(group, set, prediction)),
        Format::Csv => cayley_adjacency_csv(group, set),
        Format::Edgelist => cayley_edge_list(group, set),
    }
}

fn emit_construction(c: PdsConstruction, name: &str, out: &OutputArgs) -> CliResult<u8> {
    let prediction = Prediction::new(name, c.params, c.latin);
    emit(out.output.as_deref(), &render_set(&c.group, &c.set, Some(prediction), out.format))?;
    Ok(0)
}

fn construct(cmd: Construct) -> CliResult<u8> {
    match cmd {
        Construct::Cyclotomic { params: a, class, out } => {
            let c = construct_cyclotomic_pds(a.p, a.e, a.gamma, a.m, a.form, class).or_invalid()?;
            emit_construction(c, "cyclotomic", &out)
        }
        Construct::AffinePolar { params: a, out } => {
            let field = Arc::new(FiniteField::from_order(a.q).or_invalid()?);
            emit_construction(construct_affine_polar(field, a.m, a.form).or_invalid()?, "affine_polar", &out)
        }
        Construct::Rt2 { params: a, out } => {
            let field = Arc::new(FiniteField::from_order(a.q).or_invalid()?);
            let form = QuadraticForm::standard(field, a.m, a.form).or_invalid()?;
            emit_construction(construct_rt2(&form).or_invalid()?, "rt2", &out)
        }
        Construct::Bent { function, output } => {
            let f = build_function(&function)?;
            let bent = construct_bent_pds(&f).or_invalid()?;
            fs::create_dir_all(&output).with_context(|| format!("creating {}", output.display())).map_err(io_failure)?;
            for (label, set, params) in bent.sets() {
                let prediction = Prediction::new(format!("bent_{label}"), params, None);
                let file = SetFile::new(&bent.group, set, Some(prediction));
                write_atomic(&output.join(format!("{label}.json")), &to_json(&file))?;
            }
            #[derive(Serialize)]
            struct Summary<'a> {
                u: i8,
                k: u32,
                sets: Vec<(&'a str, usize, pdslab::pds::PdsParams)>,
                identities: &'a [pdslab::pds::RingIdentity],
            }
            let summary = Summary {
                u: bent.u,
                k: bent.k,
                sets: bent.sets().iter().map(|(l, s, p)| (*l, s.len(), *p)).collect(),
                identities: &bent.certificates,
            };
            emit(None, &to_json(&summary))?;
            Ok(if bent.certified() { 0 } else { EXIT_FAILED })
        }
        Construct::CyclotomicScheme { params: a, output } => {
            let part = build_cyclotomic_scheme(a.p, a.e, a.gamma, a.m, a.form).or_invalid()?;
            emit(output.as_deref(), &to_json(&part.to_file()))?;
            Ok(0)
        }
        Construct::BentScheme { function, output } => {
            let part = build_bent_scheme(&build_function(&function)?).or_invalid()?;
            emit(output.as_deref(), &to_json(&part.to_file()))?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    pass: bool,
    agree: bool,
    order: usize,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<Prediction>,
    bruteforce: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    characters: Option<Certificate>,
}

fn verify(input: &Path, output: Option<&Path>) -> CliResult<u8> {
    let file: SetFile = read_json(input)?;
    let (group, set) = file.load().or_invalid()?;
    let bf = verify_pds_bruteforce(&group, &set).or_invalid()?;
    let bruteforce = Certificate::from_bruteforce(&bf);
    // the character test needs target parameters: the prediction if present,
    // else whatever brute force found
    let target = file.prediction.as_ref().map(|p| p.params).or(bf.params());
    let characters = match target {
        Some(params) => match verify_pds_characters(&group, &set, &params) {
            Ok(report) => Some(Certificate::from_characters(&params, &report)),
            // parameters without integral eigenvalues cannot be certified this way
            Err(pdslab::Error::Unsupported(_)) => None,
            Err(e) => return Err(invalid(e)),
        },
        None => None,
    };
    let char_pass = characters.as_ref().map(|c| c.pass);
    let bf_matches = bf.params().is_some() && target == bf.params();
    let agree = char_pass.is_none_or(|c| c == bf_matches);
    let pass = bf_matches && char_pass == Some(true);
    let report = VerifyReport {
        pass,
        agree,
        order: group.order(),
        size: set.len(),
        prediction: file.prediction,
        bruteforce,
        characters,
    };
    emit(output, &to_json(&report))?;
    Ok(if pass { 0 } else { EXIT_FAILED })
}

fn scheme(input: &Path, amorphic: bool, output: Option<&Path>) -> CliResult<u8> {
    let file: PartitionFile = read_json(input)?;
    let part = TranslationPartition::from_file(&file).or_invalid()?;
    let check = if amorphic { certify_amorphic(&part).or_invalid()? } else { check_scheme(&part) };
    emit(output, &to_json(&check))?;
    let ok = match &check {
        SchemeCheck::Scheme(cert) => !amorphic || cert.amorphic == Some(true),
        SchemeCheck::NotScheme { .. } => false,
    };
    Ok(if ok { 0 } else { EXIT_FAILED })
}

fn walsh(input: Option<&Path>, function: &FunctionArgs, output: Option<&Path>) -> CliResult<u8> {
    let f = match input {
        Some(path) => {
            if function.field.is_some() || function.function.is_some() {
                return Err(invalid(anyhow!("give either a function file or --field/--function, not both")));
            }
            PAryFunction::from_file(&read_json::<FunctionFile>(path)?).or_invalid()?
        }
        None => build_function(function)?,
    };
    let spectrum = walsh_spectrum(&f).or_invalid()?;
    emit(output, &to_json(&spectrum.to_file()))?;
    Ok(0)
}

fn run(cli: Cli) -> CliResult<u8> {
    if let Ok(cap) = std::env::var("PDSLAB_MAX_GROUP") {
        let cap: usize = cap.trim().parse().with_context(|| format!("PDSLAB_MAX_GROUP={cap:?}")).or_invalid()?;
        pdslab::set_max_order(cap);
    }
    match cli.command {
        Command::Construct(c) => construct(c),
        Command::Verify { input, output } => verify(&input, output.as_deref()),
        Command::Scheme { input, amorphic, output } => scheme(&input, amorphic, output.as_deref()),
        Command::Walsh { input, function, output } => walsh(input.as_deref(), &function, output.as_deref()),
        Command::Export { input, format, output } => {
            let file: SetFile = read_json(&input)?;
            let (group, set) = file.load().or_invalid()?;
            emit(output.as_deref(), &render_set(&group, &set, file.prediction, format))?;
            Ok(0)
        }
        Command::Perturb { input, seed, mode, output } => {
            let file: SetFile = read_json(&input)?;
            let (group, set) = file.load().or_invalid()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bad = match mode {
                PerturbMode::Pair => perturb(&group, &set, &mut rng),
                PerturbMode::Swap => swap_one(&set, &mut rng),
            }
            .or_invalid()?;
            emit(output.as_deref(), &to_json(&SetFile::new(&group, &bad, file.prediction)))?;
            Ok(0)
        }
        Command::RandomPartition { field, dim, classes, seed, output } => {
            let group = VectorGroup::new(parse_field(&field)?, dim).or_invalid()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let part = random_symmetric_partition(&group, classes, &mut rng).or_invalid()?;
            emit(output.as_deref(), &to_json(&part.to_file()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("pdslab: {error:#}");
            ExitCode::from(code)
        }
    }
}
