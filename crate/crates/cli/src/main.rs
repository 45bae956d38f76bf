use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagcode::channel::{simulate, ChannelConfig};
use flagcode::codes::{
    divisor_type_code, full_flag_code, maximality_oracle, puncture, verify_projected_structure,
};
use flagcode::flags::{is_optimum_distance, FlagCode, FlagType, Provenance};
use flagcode::format::{parse, serialize};
use flagcode::spreads::{build_spread, verify_spread, Spread};
use flagcode::{Error, PrimePowerField};

#[derive(Parser)]
#[command(name = "flagcode", version, about = "Build, inspect and exercise optimum distance flag codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Modulus coefficients c0,...,cm (lowest degree first); defaults to
    /// the smallest primitive polynomial.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn field(&self) -> Result<PrimePowerField, Error> {
        PrimePowerField::new(self.p, self.m, self.modulus.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Full flag code on F_q^{2k} from the companion-matrix planar spread.
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summary of a code file.
    Info { file: PathBuf },
    /// Checks optimum distance directly and through the characterization.
    Verify { file: PathBuf },
    /// Restricts a code to a subtype.
    Puncture {
        file: PathBuf,
        /// Comma-separated dimensions, e.g. 1,3.
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimum distance code of a type whose largest dimension divides n.
    DivisorConstruct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded erasure channel simulation with decoding.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        erasure_prob: f64,
        #[arg(long, default_value_t = 0.0)]
        blackout_prob: f64,
        /// Packets per shot: one value for all shots or one per shot.
        #[arg(long, value_delimiter = ',')]
        packets: Option<Vec<usize>>,
        /// Always send this flag (0-based) instead of a random one.
        #[arg(long)]
        flag: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Largest optimum distance full flag code on F_q^n by exact clique search.
    Maxclique {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        /// Number of maximum cliques to inspect.
        #[arg(long, default_value_t = 16)]
        witnesses: usize,
    },
    /// Verifies the companion-matrix k-spread of F_q^n, or a type-(k) code file.
    SpreadVerify {
        /// Code file of type (k); if omitted the spread is built from the field flags.
        file: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
}

enum Failure {
    /// Exit status 1.
    Verification(String),
    /// Exit status 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_code(path: &Path) -> Result<FlagCode, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(code: &FlagCode, out: Option<&Path>) -> Result<(), Failure> {
    let text = serialize(code);
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { field, k, out } => emit(&full_flag_code(&field.field()?, k)?, out.as_deref()),
        Command::Info { file } => {
            let code = read_code(&file)?;
            let f = code.field();
            println!("field q={} p={} m={} modulus={:?}", f.q(), f.p(), f.m(), f.modulus());
            println!("n={} type={} size={}", code.ambient(), code.flag_type(), code.len());
            println!("provenance {}", code.provenance());
            println!("mindist={} bound={}", code.min_distance(), code.flag_type().max_distance_bound());
            Ok(())
        }
        Command::Verify { file } => {
            let code = read_code(&file)?;
            let r = is_optimum_distance(&code)?;
            println!(
                "size={} mindist={} bound={} disjoint={} characterization={} optimum={}",
                r.size,
                r.min_distance,
                r.bound,
                bool_word(r.disjoint),
                bool_word(r.characterization),
                bool_word(r.optimum)
            );
            for s in &r.projected {
                println!(
                    "projected dim={} size={} mindist={} max={}",
                    s.dim,
                    s.size,
                    s.min_distance.map_or_else(|| "-".to_string(), |d| d.to_string()),
                    s.max_possible
                );
            }
            let mut ok = r.optimum && r.verdicts_agree();
            if matches!(code.provenance(), Provenance::FullFromSpread { .. }) {
                let c = verify_projected_structure(&code)?;
                println!("construction levels={} spread={}", c.levels.len(), bool_word(c.middle_spread.passed()));
                ok &= c.passed();
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification("code is not optimum distance".into()))
            }
        }
        Command::Puncture { file, ty, out } => {
            let code = read_code(&file)?;
            let ty = FlagType::parse(&ty, code.ambient())?;
            emit(&puncture(&code, &ty)?, out.as_deref())
        }
        Command::DivisorConstruct { field, n, ty, out } => {
            let ty = FlagType::parse(&ty, n)?;
            emit(&divisor_type_code(&field.field()?, n, &ty)?, out.as_deref())
        }
        Command::Simulate { file, trials, seed, erasure_prob, blackout_prob, packets, flag, format } => {
            let code = read_code(&file)?;
            let mut cfg = ChannelConfig::new(erasure_prob, blackout_prob, seed)?;
            if let Some(p) = packets {
                cfg = cfg.with_packets(p);
            }
            let report = simulate(&code, &cfg, trials, flag)?;
            match format {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Machine => print!("{}", report.to_json_lines()),
            }
            Ok(())
        }
        Command::Maxclique { field, n, witnesses } => {
            let r = maximality_oracle(&field.field()?, n, witnesses)?;
            println!(
                "flags={} edges={} symmetric={} clique_number={} witnesses={}",
                r.vertices,
                r.edges,
                bool_word(r.symmetric),
                r.clique_number,
                r.witnesses.len()
            );
            for (w, ok) in r.witnesses.iter().zip(&r.witness_spreads) {
                let ids: Vec<String> = w.iter().map(usize::to_string).collect();
                println!("witness {} spread={}", ids.join(","), bool_word(*ok));
            }
            if r.all_witnesses_project_to_spreads() {
                Ok(())
            } else {
                Err(Failure::Verification("a maximum clique does not project to a spread".into()))
            }
        }
        Command::SpreadVerify { file, p, m, modulus, k, n } => {
            let spread = match (file, p, k, n) {
                (Some(file), None, None, None) => Spread::from_code(&read_code(&file)?)?,
                (None, Some(p), Some(k), Some(n)) => build_spread(&FieldArgs { p, m, modulus }.field()?, k, n)?,
                _ => return Err(Failure::Usage("give either a code file or --p, --k and --n".into())),
            };
            let r = verify_spread(&spread);
            println!(
                "n={} k={} size={} expected={} overlapping_pairs={} passed={}",
                r.n,
                r.k,
                r.size,
                r.expected_size,
                r.overlapping_pairs.len(),
                bool_word(r.passed())
            );
            if let Some(c) = &r.coverage {
                println!(
                    "coverage nonzero_vectors={} uncovered={} multiply_covered={}",
                    c.nonzero_vectors, c.uncovered, c.multiply_covered
                );
            }
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Verification("not a spread".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
