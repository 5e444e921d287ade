use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rm_stuck::harness::{
    reproduce_table1_with, simulate, verify_theorems_with_guard, ErrorModel, DEFAULT_GUARD,
};
use rm_stuck::pbm::write_pbm;
use rm_stuck::{
    build_mask_set, greedy_label, label_s2_for, validate_label, BitWord, CodecConfig, Error, Label,
    LabelFile, MaskSet, StuckPattern,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARAMETER: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_LABEL: u8 = 4;
const EXIT_DECODE: u8 = 5;
const EXIT_IO: u8 = 6;

#[derive(Parser)]
#[command(
    name = "rm-stuck",
    version,
    about = "Stuck-at and random error correction with Reed-Muller codes"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, env = "RM_STUCK_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build M(s,m), print its size and optionally write it to a file.
    Masks {
        #[arg(short)]
        s: usize,
        #[arg(short)]
        m: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Construct, search for or validate a label.
    Label(LabelArgs),
    /// Encode user bits against a set of stuck cells; prints the stored word in hex.
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
        /// User bits as a 0/1 string, first bit first.
        #[arg(long)]
        data: String,
        /// Stuck cells as `pos:val` pairs, e.g. "2:1 5:1".
        #[arg(long, default_value = "")]
        stuck: String,
        /// Also print the intermediate words.
        #[arg(long)]
        trace: bool,
    },
    /// Decode a hex word read from memory; prints the user bits.
    Decode {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Run the construction checks for all s <= s_max, m <= m_max.
    Verify {
        #[arg(short)]
        s: usize,
        #[arg(short)]
        m: u32,
        /// Exhaustive coverage limit; larger cases are sampled.
        #[arg(long, default_value_t = DEFAULT_GUARD as u64, conflicts_with = "no_guard")]
        guard: u64,
        /// Always check coverage exhaustively.
        #[arg(long)]
        no_guard: bool,
        /// Write one JSON record per check.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reproduce the mask-count and label-size table and diff it against the published values.
    Table {
        /// Skip label construction and search.
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write M(s,m) as a plain PBM image, one row per mask.
    Render {
        #[arg(short)]
        s: usize,
        #[arg(short)]
        m: u32,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Monte Carlo run of the defect-and-error channel; prints JSON stats.
    Simulate {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Stuck cells per trial (default: s).
        #[arg(long)]
        stuck_count: Option<usize>,
        /// Flip exactly this many positions per trial.
        #[arg(long, conflicts_with = "bsc")]
        weight: Option<usize>,
        /// Flip each position independently with this probability.
        #[arg(long)]
        bsc: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelMode {
    ExactS2,
    Greedy,
    ValidateOnly,
}

#[derive(Args)]
struct LabelArgs {
    /// Mask-set file; alternative to -s/-m.
    #[arg(long, conflicts_with_all = ["s", "m"])]
    masks: Option<PathBuf>,
    #[arg(short, requires = "m")]
    s: Option<usize>,
    #[arg(short, requires = "s")]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "greedy")]
    mode: LabelMode,
    /// Positions to validate, e.g. "0 3 5".
    #[arg(long, required_if_eq("mode", "validate-only"))]
    positions: Option<String>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CodecArgs {
    #[arg(short)]
    r: u32,
    #[arg(short)]
    m: u32,
    #[arg(short)]
    s: usize,
    /// Label file (default: constructed for s=2, greedy otherwise).
    #[arg(long, conflicts_with = "positions")]
    label: Option<PathBuf>,
    /// Label positions given inline, e.g. "0 3 5".
    #[arg(long)]
    positions: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_PARAMETER);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::TooLarge { .. } | Error::Parse(_) => EXIT_PARAMETER,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Label(_) | Error::InfeasibleLabel(_) => EXIT_LABEL,
        Error::Uncorrectable | Error::LabelMiss(_) => EXIT_DECODE,
        Error::Io(_) => EXIT_IO,
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Capacity { .. } => format!("capacity: {e}"),
        Error::Label(_) | Error::InfeasibleLabel(_) => format!("label: {e}"),
        Error::Uncorrectable | Error::LabelMiss(_) => format!("decode failure: {e}"),
        _ => e.to_string(),
    }
}

fn run(command: Command) -> rm_stuck::Result<u8> {
    match command {
        Command::Masks { s, m, out } => {
            let set = build_mask_set(s, m)?;
            if let Some(path) = out {
                let mut w = create(&path)?;
                set.write_to(&mut w)?;
                w.flush()?;
            }
            println!("N={}", set.len());
            Ok(0)
        }
        Command::Label(args) => cmd_label(args),
        Command::Encode {
            codec,
            data,
            stuck,
            trace,
        } => {
            let cfg = codec.build()?;
            let message = parse_bits(&data)?;
            let stuck = StuckPattern::parse(&stuck)?;
            let t = cfg.encode_trace(&message, &stuck)?;
            if trace {
                println!(
                    "intermediate_message={}",
                    bit_string(&t.intermediate_message)
                );
                println!("intermediate_codeword={}", t.intermediate_codeword);
                println!("mask={}", t.mask);
                println!("codeword={}", t.codeword);
            }
            println!("{}", t.codeword.to_hex());
            Ok(0)
        }
        Command::Decode { codec, word, trace } => {
            let cfg = codec.build()?;
            let read = BitWord::from_hex(&word, cfg.n())?;
            let t = cfg.decode_trace(&read)?;
            if trace {
                println!("codeword={}", t.codeword);
                println!("label_bits={}", t.label_bits);
                println!("mask_index={}", t.mask_index);
                println!("mask={}", t.mask);
                println!("intermediate_codeword={}", t.intermediate_codeword);
            }
            println!("{}", bit_string(&t.message));
            Ok(0)
        }
        Command::Verify {
            s,
            m,
            guard,
            no_guard,
            report,
        } => {
            if s == 0 || m == 0 {
                return Err(Error::Parameter("verify needs s >= 1 and m >= 1".into()));
            }
            let guard = (!no_guard).then_some(guard as u128);
            let rep = verify_theorems_with_guard(s, m, guard);
            rep.write_text(io::stdout().lock())?;
            if let Some(path) = report {
                let mut w = create(&path)?;
                rep.write_jsonl(&mut w)?;
                w.flush()?;
            }
            let failed = rep.failures().count();
            println!("{} checks, {failed} failed", rep.records.len());
            Ok(if failed == 0 { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Table { no_labels, report } => {
            let rows = reproduce_table1_with(!no_labels)?;
            println!(
                "{:>3} {:>2} {:>5} {:>6} {:>6} {:>5} {:>5} {:>5}  status",
                "m", "s", "n", "N_M", "N_pub", "r_lb", "r_pub", "r"
            );
            for row in &rows {
                println!(
                    "{:>3} {:>2} {:>5} {:>6} {:>6} {:>5} {:>5} {:>5}  {}",
                    row.m,
                    row.s,
                    row.n,
                    row.n_masks,
                    row.expected.n_masks,
                    row.r_lb,
                    row.expected.r,
                    row.r_found.map_or("-".into(), |r| r.to_string()),
                    if row.matches() { "ok" } else { "MISMATCH" }
                );
            }
            if let Some(path) = report {
                let mut w = create(&path)?;
                for row in &rows {
                    serde_json::to_writer(&mut w, row).map_err(io::Error::from)?;
                    writeln!(w)?;
                }
                w.flush()?;
            }
            let bad = rows.iter().filter(|r| !r.matches()).count();
            println!("{} rows, {bad} mismatched", rows.len());
            Ok(if bad == 0 { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Render { s, m, out } => {
            let set = build_mask_set(s, m)?;
            let mut w = create(&out)?;
            write_pbm(&set, &mut w)?;
            w.flush()?;
            println!("{}x{}", set.len(), set.n());
            Ok(0)
        }
        Command::Simulate {
            codec,
            trials,
            stuck_count,
            weight,
            bsc,
            seed,
        } => {
            let cfg = codec.build()?;
            let model = match bsc {
                Some(p) => ErrorModel::Bsc { p },
                None => ErrorModel::ExactWeight {
                    weight: weight.unwrap_or(0),
                },
            };
            let stats = simulate(&cfg, trials, stuck_count.unwrap_or(cfg.s()), model, seed)?;
            println!(
                "{}",
                serde_json::to_string(&stats).map_err(io::Error::from)?
            );
            Ok(0)
        }
    }
}

fn cmd_label(args: LabelArgs) -> rm_stuck::Result<u8> {
    let set = match (&args.masks, args.s, args.m) {
        (Some(path), _, _) => MaskSet::read_from(BufReader::new(open(path)?))?,
        (None, Some(s), Some(m)) => build_mask_set(s, m)?,
        _ => return Err(Error::Parameter("give either --masks or -s and -m".into())),
    };
    let label = match args.mode {
        LabelMode::ExactS2 => label_s2_for(&set)?,
        LabelMode::Greedy => greedy_label(&set)?,
        LabelMode::ValidateOnly => {
            let positions = parse_positions(args.positions.as_deref().unwrap_or(""))?;
            let valid = validate_label(&set, &positions);
            println!("L={}", positions.len());
            println!("{}", if valid { "valid" } else { "invalid" });
            if !valid {
                return Ok(EXIT_LABEL);
            }
            Label::new(&set, &positions)?
        }
    };
    if !matches!(args.mode, LabelMode::ValidateOnly) {
        println!("L={}", label.len());
        println!(
            "positions {}",
            label
                .positions()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        println!("valid");
    }
    if let Some(path) = args.out {
        let mut w = create(&path)?;
        label.write_to(&mut w)?;
        w.flush()?;
    }
    Ok(0)
}

impl CodecArgs {
    fn build(&self) -> rm_stuck::Result<CodecConfig> {
        let positions = match (&self.label, &self.positions) {
            (Some(path), _) => Some(LabelFile::read_from(BufReader::new(open(path)?))?.positions),
            (None, Some(text)) => Some(parse_positions(text)?),
            (None, None) => None,
        };
        CodecConfig::new(self.r, self.m, self.s, positions.as_deref())
    }
}

fn parse_positions(text: &str) -> rm_stuck::Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|e| Error::Parse(format!("bad position {t:?}: {e}")))
        })
        .collect()
}

fn parse_bits(text: &str) -> rm_stuck::Result<Vec<bool>> {
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("bad bit {c:?} in data"))),
        })
        .collect()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn open(path: &Path) -> rm_stuck::Result<File> {
    Ok(File::open(path)?)
}

fn create(path: &Path) -> rm_stuck::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}
