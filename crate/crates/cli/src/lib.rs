//! Command-line front end: ingest, transform, render and persist, plus the
//! benchmark, AUC and batch-scan subcommands.

use std::ffi::OsString;
use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cwth::bench::{bench_with, to_json_lines, BenchOptions};
use cwth::metrics::{auc_roc, LabeledScores};
use cwth::par::with_threads;
use cwth::scalogram::{
    magnitude, read_matrix_bin, render, write_csv, write_matrix_bin, write_pgm, MagnitudeMode,
};
use cwth::signal::{read_wav, synthesize, write_wav, SynthKind, SynthSpec, WavSampleFormat};
use cwth::wavelet::{cwt_fft, cwth_decimate, cwth_strided, make_scale_grid, MorletParams};
use cwth::{CoefficientMatrix, SignalBuffer, DEFAULT_HOP};
use rayon::prelude::*;

type CliResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

#[derive(Debug, Parser)]
#[command(
    name = "cwth",
    version,
    about = "Hop-size continuous wavelet transform toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform a WAV file or synthetic signal into a coefficient matrix
    Transform(TransformCmd),
    /// Render a stored coefficient matrix as a PGM image
    Scalogram(ScalogramCmd),
    /// Time the full transform against the hop-size variants (JSON lines)
    Bench(BenchCmd),
    /// Area under the ROC curve of a `score,label` CSV file
    Auc(AucCmd),
    /// Write a synthetic test signal as WAV
    Synth(SynthCmd),
    /// Transform every WAV file in a directory
    Scan(ScanCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Strided,
    Decimate,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Binary complex matrix with scale table
    Scg,
    /// Magnitude matrix as CSV, one row per scale
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Magnitude {
    Abs,
    Power,
    LogDb,
}

impl From<Magnitude> for MagnitudeMode {
    fn from(m: Magnitude) -> Self {
        match m {
            Magnitude::Abs => MagnitudeMode::Abs,
            Magnitude::Power => MagnitudeMode::Power,
            Magnitude::LogDb => MagnitudeMode::LogDb,
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
struct ThreadOpts {
    /// Worker threads [default: all cores]
    #[arg(long, env = "THREADS")]
    threads: Option<NonZeroUsize>,
}

impl ThreadOpts {
    fn count(self) -> usize {
        self.threads
            .map_or_else(rayon::current_num_threads, NonZeroUsize::get)
    }
}

/// Transform settings shared by `transform` and `scan`.
#[derive(Debug, Clone, Args)]
struct TransformOpts {
    #[arg(long, default_value_t = NonZeroUsize::new(DEFAULT_HOP).unwrap())]
    hop: NonZeroUsize,
    #[arg(long, value_enum, default_value_t = Mode::Strided)]
    mode: Mode,
    /// Number of scales in the geometric grid
    #[arg(long, default_value_t = NonZeroUsize::new(64).unwrap())]
    scales: NonZeroUsize,
    /// Lowest analysed frequency in Hz
    #[arg(long, default_value_t = 20.0)]
    fmin: f64,
    /// Highest analysed frequency in Hz [default: 0.45 x sample rate]
    #[arg(long)]
    fmax: Option<f64>,
    /// Morlet bandwidth parameter
    #[arg(long, default_value_t = MorletParams::default().bandwidth)]
    wavelet_b: f64,
    /// Morlet center frequency parameter
    #[arg(long, default_value_t = MorletParams::default().center_frequency)]
    wavelet_c: f64,
    /// Low-pass before decimating (decimate mode only)
    #[arg(long)]
    anti_alias: bool,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = OutputFormat::Scg)]
    format: OutputFormat,
    /// Magnitude used for CSV and PGM output
    #[arg(long, value_enum, default_value_t = Magnitude::Abs)]
    magnitude: Magnitude,
}

impl TransformOpts {
    fn params(&self) -> MorletParams {
        MorletParams {
            center_frequency: self.wavelet_c,
            bandwidth: self.wavelet_b,
            ..MorletParams::default()
        }
    }

    fn run(&self, signal: &SignalBuffer) -> CliResult<CoefficientMatrix> {
        let params = self.params();
        params.validate()?;
        let rate = signal.sample_rate();
        let fmax = self.fmax.unwrap_or(0.45 * rate);
        let grid = make_scale_grid(self.fmin, fmax, self.scales.get(), rate, &params)?;
        let hop = self.hop.get();
        Ok(match self.mode {
            Mode::Strided => cwth_strided(signal, &grid, &params, hop)?,
            Mode::Decimate => cwth_decimate(signal, &grid, &params, hop, self.anti_alias)?,
            Mode::Full => cwt_fft(signal, &grid, &params)?,
        })
    }

    fn write(&self, matrix: &CoefficientMatrix, out: &Path, pgm: Option<&Path>) -> CliResult<()> {
        let mode = MagnitudeMode::from(self.magnitude);
        match self.format {
            OutputFormat::Scg => write_matrix_bin(matrix, out)?,
            OutputFormat::Csv => write_csv(&magnitude(matrix, mode), out)?,
        }
        if let Some(pgm) = pgm {
            write_pgm(&render(&magnitude(matrix, mode), true), pgm)?;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
struct TransformCmd {
    /// Input WAV file
    #[arg(required_unless_present = "synth", conflicts_with = "synth")]
    input: Option<PathBuf>,
    /// Synthetic input instead of a file: impulse:POS, sine:FREQ[:AMP], chirp:F0:F1 or noise:SEED
    #[arg(long)]
    synth: Option<SynthKind>,
    /// Synthetic signal length in samples
    #[arg(long, default_value_t = 160_000, requires = "synth")]
    length: usize,
    /// Synthetic signal sample rate in Hz
    #[arg(long, default_value_t = 16_000.0, requires = "synth")]
    rate: f64,
    #[arg(short, long)]
    output: PathBuf,
    /// Also render a PGM scalogram to this path
    #[arg(long)]
    pgm: Option<PathBuf>,
    #[command(flatten)]
    opts: TransformOpts,
}

#[derive(Debug, Args)]
struct ScalogramCmd {
    /// Stored coefficient matrix
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Magnitude::LogDb)]
    magnitude: Magnitude,
    /// Put the largest scale (lowest frequency) on the top row
    #[arg(long)]
    low_freq_top: bool,
}

#[derive(Debug, Args)]
struct BenchCmd {
    /// Time a WAV file instead of seeded white noise
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = NonZeroUsize::new(160_000).unwrap(), conflicts_with = "input")]
    length: NonZeroUsize,
    #[arg(long, default_value_t = 16_000.0, conflicts_with = "input")]
    rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = NonZeroUsize::new(64).unwrap())]
    scales: NonZeroUsize,
    #[arg(long, default_value_t = 20.0)]
    fmin: f64,
    #[arg(long)]
    fmax: Option<f64>,
    #[arg(long, default_value_t = NonZeroUsize::new(DEFAULT_HOP).unwrap())]
    hop: NonZeroUsize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Spread scale rows over `--threads` workers instead of one
    #[arg(long)]
    parallel: bool,
    #[command(flatten)]
    threads: ThreadOpts,
    #[arg(long)]
    no_decimate: bool,
    #[arg(long)]
    anti_alias: bool,
    /// Also time a db4 DWT
    #[arg(long)]
    dwt: bool,
    /// Also time the direct reference transform (slow on long inputs)
    #[arg(long)]
    direct: bool,
}

#[derive(Debug, Args)]
struct AucCmd {
    /// CSV with one `score,label` pair per line; labels are 0/1 or false/true
    input: PathBuf,
}

#[derive(Debug, Args)]
struct SynthCmd {
    /// impulse:POS, sine:FREQ[:AMP], chirp:F0:F1 or noise:SEED
    spec: SynthKind,
    #[arg(long, default_value_t = 160_000)]
    length: usize,
    #[arg(long, default_value_t = 16_000.0)]
    rate: f64,
    /// Write 32-bit float samples instead of 16-bit PCM
    #[arg(long)]
    float: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct ScanCmd {
    /// Directory of WAV files (not searched recursively)
    input: PathBuf,
    /// Output directory; created if missing
    #[arg(short, long)]
    output: PathBuf,
    /// Also render `<name>.pgm` for every input
    #[arg(long)]
    pgm: bool,
    #[command(flatten)]
    threads: ThreadOpts,
    #[command(flatten)]
    opts: TransformOpts,
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code: 0 on success, 1 on runtime errors, 2 on usage errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are printed to stdout with exit code 0
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Transform(cmd) => transform(cmd),
        Command::Scalogram(cmd) => scalogram(cmd),
        Command::Bench(cmd) => bench(cmd),
        Command::Auc(cmd) => auc(cmd),
        Command::Synth(cmd) => synth(cmd),
        Command::Scan(cmd) => scan(cmd),
    }
}

fn transform(cmd: TransformCmd) -> CliResult<()> {
    let signal = match (&cmd.input, cmd.synth) {
        (Some(path), _) => read_wav(path)?,
        (None, Some(kind)) => synthesize(&SynthSpec::new(kind, cmd.length, cmd.rate))?,
        (None, None) => unreachable!("clap requires an input or --synth"),
    };
    let matrix = cmd.opts.run(&signal)?;
    cmd.opts.write(&matrix, &cmd.output, cmd.pgm.as_deref())
}

fn scalogram(cmd: ScalogramCmd) -> CliResult<()> {
    let matrix = read_matrix_bin(&cmd.input)?;
    let image = render(&magnitude(&matrix, cmd.magnitude.into()), !cmd.low_freq_top);
    Ok(write_pgm(&image, &cmd.output)?)
}

fn bench(cmd: BenchCmd) -> CliResult<()> {
    let signal = match &cmd.input {
        Some(path) => read_wav(path)?,
        None => synthesize(&SynthSpec::new(
            SynthKind::WhiteNoise { seed: cmd.seed },
            cmd.length.get(),
            cmd.rate,
        ))?,
    };
    let params = MorletParams::default();
    let rate = signal.sample_rate();
    let grid = make_scale_grid(
        cmd.fmin,
        cmd.fmax.unwrap_or(0.45 * rate),
        cmd.scales.get(),
        rate,
        &params,
    )?;
    let opts = BenchOptions {
        repetitions: cmd.reps,
        threads: if cmd.parallel { cmd.threads.count() } else { 1 },
        include_decimate: !cmd.no_decimate,
        include_dwt: cmd.dwt,
        include_direct: cmd.direct,
        anti_alias: cmd.anti_alias,
        ..BenchOptions::default()
    };
    let reports = bench_with(&signal, &grid, &params, cmd.hop.get(), &opts)?;
    print!("{}", to_json_lines(&reports));
    Ok(())
}

fn auc(cmd: AucCmd) -> CliResult<()> {
    let file = fs::File::open(&cmd.input).map_err(|e| format!("{}: {e}", cmd.input.display()))?;
    let data = parse_scores(file)?;
    println!("{}", auc_roc(&data)?);
    Ok(())
}

/// Reads `score,label` records. A first record whose score is not numeric is
/// taken as a header and skipped.
fn parse_scores(input: impl std::io::Read) -> CliResult<LabeledScores> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);
    let mut scores = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let (Some(score), Some(label), 2) = (record.get(0), record.get(1), record.len()) else {
            return Err(format!("line {line}: expected `score,label`").into());
        };
        let score = match score.parse::<f64>() {
            Ok(s) => s,
            Err(_) if i == 0 => continue,
            Err(_) => return Err(format!("line {line}: bad score {score:?}").into()),
        };
        let label = match label {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(format!("line {line}: bad label {other:?}").into()),
        };
        scores.push(score);
        labels.push(label);
    }
    Ok(LabeledScores::new(scores, labels)?)
}

fn synth(cmd: SynthCmd) -> CliResult<()> {
    let signal = synthesize(&SynthSpec::new(cmd.spec, cmd.length, cmd.rate))?;
    let format = if cmd.float {
        WavSampleFormat::Float32
    } else {
        WavSampleFormat::Pcm16
    };
    Ok(write_wav(&signal, &cmd.output, format)?)
}

/// WAV files directly inside `dir`, sorted by file name.
fn wav_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        let is_wav = path
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("wav"));
        if is_wav && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn scan(cmd: ScanCmd) -> CliResult<()> {
    let files = wav_files(&cmd.input)?;
    fs::create_dir_all(&cmd.output).map_err(|e| format!("{}: {e}", cmd.output.display()))?;
    let ext = match cmd.opts.format {
        OutputFormat::Scg => "scg",
        OutputFormat::Csv => "csv",
    };
    let process = |path: &PathBuf| -> CliResult<usize> {
        let stem = path.file_stem().unwrap_or_default();
        let out = cmd.output.join(stem).with_extension(ext);
        let pgm = cmd.pgm.then(|| cmd.output.join(stem).with_extension("pgm"));
        let matrix = cmd.opts.run(&read_wav(path)?)?;
        cmd.opts.write(&matrix, &out, pgm.as_deref())?;
        Ok(matrix.cols())
    };
    let failures: usize = with_threads(cmd.threads.count(), || {
        files
            .par_iter()
            .map(|path| {
                let name = path.display();
                // one eprintln per file keeps progress lines whole
                match process(path) {
                    Ok(cols) => {
                        eprintln!("ok   {name} ({cols} frames)");
                        0
                    }
                    Err(e) => {
                        eprintln!("FAIL {name}: {e}");
                        1
                    }
                }
            })
            .sum()
    });
    eprintln!(
        "{} of {} files transformed",
        files.len() - failures,
        files.len()
    );
    if failures > 0 {
        return Err(format!("{failures} file(s) failed").into());
    }
    Ok(())
}
