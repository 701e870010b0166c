use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dccode::convcode::{check_basic_reduced, distance_checks, weight_param_search, DEFAULT_ENUMERATION_CAP};
use dccode::harness::{
    decode_stream, inject, max_window_weight, simulate, ErrorKind, ErrorModel, HarnessError, Role, SimConfig,
    StreamFile,
};
use dccode::{CodeParams, DoublyCyclicCode, Elem, LevelUsed, PartialDecodeOutcome, WindecConfig};

#[derive(Parser)]
#[command(name = "dccode", version, about = "Doubly cyclic convolutional codes: encode, corrupt, decode, analyze")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its parameter record.
    BuildCode(BuildCode),
    /// Encode a message stream.
    Encode(Io),
    /// Add channel errors to a codeword stream.
    Corrupt(Corrupt),
    /// Decode a received stream with the sliding-window decoder.
    Decode(Decode),
    /// Print distances and structural properties of a code.
    Analyze(Analyze),
    /// Monte-Carlo comparison of the sliding decoder and blockwise decoding.
    Simulate(Simulate),
}

#[derive(Args)]
struct BuildCode {
    #[arg(long)]
    q: u32,
    /// Irreducible modulus, low-to-high coefficients, e.g. "1 0 1".
    #[arg(long)]
    modulus: Option<String>,
    /// Primitive element (smallest generator if omitted).
    #[arg(long)]
    alpha: Option<Elem>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Io {
    #[arg(long)]
    code: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Iid,
    Burst,
    Capped,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    /// Symbol error probability (iid and capped).
    #[arg(long, default_value_t = 0.1)]
    rate: f64,
    /// Errors allowed per window of m+1 blocks (capped; default floor(d/2)).
    #[arg(long)]
    cap: Option<usize>,
    /// Burst start probability per symbol.
    #[arg(long, default_value_t = 0.05)]
    start_prob: f64,
    /// Longest burst in symbols.
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModelArgs {
    fn model(&self, code: &DoublyCyclicCode) -> ErrorModel {
        let kind = match self.model {
            ModelName::Iid => ErrorKind::Iid { rate: self.rate },
            ModelName::Burst => ErrorKind::Burst { start_prob: self.start_prob, max_len: self.max_len },
            ModelName::Capped => ErrorKind::WindowCapped {
                cap: self.cap.unwrap_or(code.d_formula() / 2),
                depth: code.m() + 1,
                rate: self.rate,
            },
        };
        ErrorModel { kind, seed: self.seed }
    }
}

#[derive(Args)]
struct Corrupt {
    #[command(flatten)]
    io: Io,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct DecoderArgs {
    /// Fail instead of falling back when no level passes.
    #[arg(long)]
    strict: bool,
    /// Use list decoding instead of Reed-Solomon decoding in each level.
    #[arg(long)]
    step2_list: bool,
}

impl DecoderArgs {
    fn config(&self) -> WindecConfig {
        WindecConfig { strict: self.strict, step2_list: self.step2_list, ..WindecConfig::default() }
    }
}

#[derive(Args)]
struct Decode {
    #[command(flatten)]
    io: Io,
    /// JSON report file.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Include every intermediate of each cycle in the report.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct Analyze {
    #[arg(long)]
    code: PathBuf,
    /// Find the largest weight parameter by enumeration.
    #[arg(long)]
    enumerate_d: bool,
    /// Enumerate messages up to this degree for the free-distance bound.
    #[arg(long)]
    dfree_cap: Option<usize>,
}

#[derive(Args)]
struct Simulate {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Longest message in blocks.
    #[arg(long, default_value_t = 20)]
    msg_len: usize,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::Data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|e| HarnessError::Data(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<(CodeParams, Arc<DoublyCyclicCode>), HarnessError> {
    let params = CodeParams::from_text(&read(path)?)?;
    let code = params.build()?;
    Ok((params, Arc::new(code)))
}

fn load_stream(path: &Path, params: &CodeParams, roles: &[Role]) -> Result<StreamFile, HarnessError> {
    let file = StreamFile::parse(&read(path)?)?;
    if &file.params != params {
        return Err(HarnessError::Data(format!("{}: header does not match the code", path.display())));
    }
    if !roles.contains(&file.role) {
        return Err(HarnessError::Data(format!("{}: unexpected role '{}'", path.display(), file.role.as_str())));
    }
    Ok(file)
}

fn join(v: &[Elem]) -> String {
    v.iter().map(Elem::to_string).collect::<Vec<_>>().join(" ")
}

fn build_code(a: &BuildCode) -> Result<(), HarnessError> {
    let modulus = a
        .modulus
        .as_deref()
        .map(|s| {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| HarnessError::Parameter(format!("bad modulus coefficient '{t}'"))))
                .collect::<Result<Vec<u32>, _>>()
        })
        .transpose()?;
    let params = CodeParams::resolve(a.q, modulus, a.alpha, a.k, a.m)?;
    let code = params.build()?;
    match &a.out {
        Some(path) => write(path, &params.to_text())?,
        None => print!("{}", params.to_text()),
    }
    println!("n = {}", code.n());
    print_distances(&code);
    Ok(())
}

fn print_distances(code: &DoublyCyclicCode) {
    let dl: Vec<String> = code.stack_distances().iter().map(usize::to_string).collect();
    println!("d_l = {}, d = {}, dfree = {}", dl.join(" "), code.d_formula(), code.dfree());
}

fn encode(a: &Io) -> Result<(), HarnessError> {
    let (params, code) = load_code(&a.code)?;
    let msg = load_stream(&a.input, &params, &[Role::Message])?;
    let v = code.encoder().encode(&msg.stream)?;
    write(&a.out, &StreamFile::new(params, Role::Codeword, v)?.serialize())?;
    Ok(())
}

fn corrupt(a: &Corrupt) -> Result<(), HarnessError> {
    let (params, code) = load_code(&a.io.code)?;
    let v = load_stream(&a.io.input, &params, &[Role::Codeword, Role::Received])?;
    let (rx, pattern) = inject(code.field(), &v.stream, &a.model.model(&code))?;
    write(&a.io.out, &StreamFile::new(params, Role::Received, rx)?.serialize())?;
    println!(
        "errors = {}, max per window of {} blocks = {}",
        pattern.weight(),
        code.m() + 1,
        max_window_weight(&pattern, code.m() + 1)
    );
    Ok(())
}

#[derive(Serialize)]
struct CycleSummary<'a> {
    cycle: usize,
    level: String,
    x0_hat: &'a [Elem],
    v_hat: &'a [Elem],
    best_effort: bool,
    rs_decodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    received: Option<&'a [Elem]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<&'a [Elem]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<&'a [Elem]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a PartialDecodeOutcome>,
}

#[derive(Serialize)]
struct Report<'a> {
    code: &'a CodeParams,
    d: usize,
    radius: usize,
    blocks: usize,
    messages: String,
    message_blocks: &'a [Vec<Elem>],
    decoded: &'a [Vec<Elem>],
    window_distances: &'a [usize],
    detection_flags: &'a [bool],
    flagged_windows: Vec<usize>,
    overall_distance: usize,
    best_effort_cycles: usize,
    cycles: Vec<CycleSummary<'a>>,
}

fn level_name(l: LevelUsed) -> String {
    match l {
        LevelUsed::Level(l) => format!("level {l}"),
        LevelUsed::FallbackA => "fallback a".into(),
        LevelUsed::FallbackB => "fallback b".into(),
    }
}

fn decode(a: &Decode) -> Result<(), HarnessError> {
    let (params, code) = load_code(&a.io.code)?;
    let rx = load_stream(&a.io.input, &params, &[Role::Received, Role::Codeword])?;
    let rep = decode_stream(&code, &rx.stream, &a.decoder.config())?;
    write(&a.io.out, &StreamFile::new(params.clone(), Role::Codeword, rep.decoded.clone())?.serialize())?;
    let flagged = rep.flagged_windows();
    println!("u = {}", join(&rep.messages.flat()));
    println!("distance = {}, flagged windows = {:?}, fallback cycles = {}", rep.overall_distance, flagged, rep.best_effort_cycles());
    if let Some(path) = &a.report {
        let cycles = rep
            .cycles
            .iter()
            .map(|c| CycleSummary {
                cycle: c.cycle,
                level: level_name(c.detail.level_used),
                x0_hat: &c.messages,
                v_hat: &c.decoded,
                best_effort: c.best_effort,
                rs_decodes: c.detail.rs_decodes,
                received: a.verbose.then_some(&c.received[..]),
                state: a.verbose.then_some(&c.state[..]),
                word: a.verbose.then_some(&c.word[..]),
                detail: a.verbose.then_some(&c.detail),
            })
            .collect();
        let report = Report {
            code: &params,
            d: code.d_formula(),
            radius: code.d_formula() / 2,
            blocks: rep.decoded.len(),
            messages: join(&rep.messages.flat()),
            message_blocks: rep.messages.blocks(),
            decoded: rep.decoded.blocks(),
            window_distances: &rep.window_distances,
            detection_flags: &rep.detection_flags,
            flagged_windows: flagged,
            overall_distance: rep.overall_distance,
            best_effort_cycles: rep.best_effort_cycles(),
            cycles,
        };
        write(path, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    }
    Ok(())
}

fn analyze(a: &Analyze) -> Result<(), HarnessError> {
    let (_, code) = load_code(&a.code)?;
    let enc = code.encoder();
    println!("q = {}, n = {}, k = {}, m = {}, alpha = {}", code.field().q(), code.n(), code.k(), code.m(), code.field().alpha());
    print_distances(&code);
    let br = check_basic_reduced(enc);
    let indices = br.forney_indices.as_ref().map_or("-".to_string(), |v| join(&v.iter().map(|&x| x as Elem).collect::<Vec<_>>()));
    println!("basic = {}, reduced = {}, forney indices = {}, degree = {}", br.basic, br.reduced, indices, br.degree);
    if a.enumerate_d {
        let d = weight_param_search(enc, code.m() + 1, 1, DEFAULT_ENUMERATION_CAP)?;
        println!("largest d by enumeration = {d} (closed form {})", code.d_formula());
    }
    if let Some(cap) = a.dfree_cap {
        let profile = distance_checks(enc, cap, DEFAULT_ENUMERATION_CAP, Some(code.d_formula()))?;
        let cols: Vec<String> = profile.column_distances.iter().map(usize::to_string).collect();
        println!("dfree upper bound (degree <= {cap}) = {}", profile.dfree_upper);
        println!("column distances = {}", cols.join(" "));
    }
    Ok(())
}

fn run_simulation(a: &Simulate) -> Result<(), HarnessError> {
    let (_, code) = load_code(&a.code)?;
    let config = SimConfig {
        trials: a.trials,
        max_message_len: a.msg_len,
        model: a.model.model(&code),
        windec: a.decoder.config(),
    };
    let rep = simulate(&code, &config)?;
    println!("trials = {}, blocks = {}", rep.trials, rep.blocks);
    println!(
        "sliding: block error rate = {:.6}, failed trials = {}",
        rep.sliding_block_error_rate, rep.sliding_failed_trials
    );
    println!(
        "blockwise: block error rate = {:.6}, failed trials = {}",
        rep.baseline_block_error_rate, rep.baseline_failed_trials
    );
    println!(
        "window condition held in {} trials, violations = {}, detected = {}",
        rep.window_condition_trials, rep.guarantee_violations, rep.detected_trials
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::BuildCode(a) => build_code(a),
        Command::Encode(a) => encode(a),
        Command::Corrupt(a) => corrupt(a),
        Command::Decode(a) => decode(a),
        Command::Analyze(a) => analyze(a),
        Command::Simulate(a) => run_simulation(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dccode: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
