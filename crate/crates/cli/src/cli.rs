//! Command-line frontend: encrypt, decrypt, analyze, bifurcation.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/format error. Diagnostics go
//! to standard error; data goes to files or standard output only, and
//! identical invocations produce bit-identical outputs.

use crate::pgm::{read_pgm, write_pgm, PgmError};
use crate::render::{render_bifurcation, render_histogram};
use crate::report::{bifurcation_csv, compare_csv, compare_text};
use chaodna_core::chaos::{bifurcation_scan, ChaosError};
use chaodna_core::cipher::{
    decrypt, encrypt, preprocess, CipherConfig, CipherEnvelope, CipherError, DEFAULT_BURN_IN,
    DEFAULT_U,
};
use chaodna_core::metrics::{compare_report, histogram, MetricsError};
use chaodna_core::{CipherMode, GrayImage, Key128, KeyImageSource};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fs;
use std::num::NonZeroU32;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "chaodna",
    version,
    about = "Grayscale image encryption with a chaotic logistic map and DNA-rule encoding"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Encrypt a PGM image into a ciphertext envelope
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext envelope back into a PGM image
    Decrypt(DecryptArgs),
    /// Report PSNR, SSIM, chi-square, and entropy for an encrypt/decrypt run
    Analyze(AnalyzeArgs),
    /// Scan the logistic map's bifurcation structure to CSV and a PGM render
    Bifurcation(BifurcationArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Chaotic keystream XOR only
    Chaos,
    /// Full pipeline: keystream XOR, then DNA encode + key-image XOR
    ChaosDna,
}

impl From<ModeArg> for CipherMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Chaos => CipherMode::ChaosOnly,
            ModeArg::ChaosDna => CipherMode::ChaosDna,
        }
    }
}

fn parse_key_arg(s: &str) -> Result<Key128, String> {
    Key128::parse(s).map_err(|e| e.to_string())
}

fn parse_dims(s: &str) -> Result<(NonZeroU32, NonZeroU32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| String::from("expected WxH, e.g. 256x256"))?;
    let parse = |part: &str, name: &str| {
        part.trim()
            .parse::<NonZeroU32>()
            .map_err(|_| format!("{name} must be a positive integer"))
    };
    Ok((parse(w, "width")?, parse(h, "height")?))
}

#[derive(Args)]
pub struct EncryptArgs {
    /// Input image (binary PGM, maxval 255)
    #[arg(long = "in")]
    input: PathBuf,
    /// Output envelope path
    #[arg(long)]
    out: PathBuf,
    /// 32-hex-character secret key
    #[arg(long, env = "CHAODNA_KEY", hide_env_values = true, value_parser = parse_key_arg)]
    key: Key128,
    /// Cipher mode
    #[arg(long, value_enum, default_value = "chaos-dna")]
    mode: ModeArg,
    /// Bifurcation parameter of the logistic map
    #[arg(long, default_value_t = DEFAULT_U)]
    u: f64,
    /// Iterations discarded before each keystream
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: u32,
    /// Use this PGM as the key image instead of deriving one from the key
    #[arg(long)]
    key_image: Option<PathBuf>,
    /// Resize the input to WxH before encrypting
    #[arg(long, value_parser = parse_dims)]
    resize: Option<(NonZeroU32, NonZeroU32)>,
}

#[derive(Args)]
pub struct DecryptArgs {
    /// Input envelope path
    #[arg(long = "in")]
    input: PathBuf,
    /// Output image path (binary PGM)
    #[arg(long)]
    out: PathBuf,
    /// 32-hex-character secret key
    #[arg(long, env = "CHAODNA_KEY", hide_env_values = true, value_parser = parse_key_arg)]
    key: Key128,
    /// Bifurcation parameter used at encryption
    #[arg(long, default_value_t = DEFAULT_U)]
    u: f64,
    /// Burn-in used at encryption
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: u32,
    /// Key image used at encryption, when one was supplied
    #[arg(long)]
    key_image: Option<PathBuf>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Original (preprocessed) image, PGM
    #[arg(long)]
    original: PathBuf,
    /// Encrypted image: a PGM, or a ciphertext envelope whose payload is used
    #[arg(long)]
    encrypted: PathBuf,
    /// Decrypted image: a PGM, or a ciphertext envelope whose payload is used
    #[arg(long)]
    decrypted: PathBuf,
    /// Write the CSV report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write histogram bar renders (PGM, one per image) into this directory
    #[arg(long)]
    render_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct BifurcationArgs {
    #[arg(long, default_value_t = 2.4)]
    u_min: f64,
    #[arg(long, default_value_t = 4.0)]
    u_max: f64,
    /// Number of evenly spaced u values
    #[arg(long, default_value_t = 800)]
    steps: u32,
    /// Iterations discarded per u before sampling
    #[arg(long, default_value_t = 500)]
    transient: u32,
    /// Iterates recorded per u
    #[arg(long, default_value_t = 120)]
    samples: u32,
    /// Initial value fed to every slice
    #[arg(long, default_value_t = 0.35)]
    p0: f64,
    /// Write the u,p CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a PGM density render of the scan here
    #[arg(long)]
    render: Option<PathBuf>,
    /// Render dimensions
    #[arg(long, value_parser = parse_dims, default_value = "800x600")]
    render_size: (NonZeroU32, NonZeroU32),
}

/// A post-parse failure: file, format, or computation. Always exit code 2.
#[derive(Debug)]
pub struct DataError(String);

impl std::fmt::Display for DataError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<CipherError> for DataError {
    fn from(e: CipherError) -> Self {
        DataError(e.to_string())
    }
}

impl From<ChaosError> for DataError {
    fn from(e: ChaosError) -> Self {
        DataError(e.to_string())
    }
}

impl From<MetricsError> for DataError {
    fn from(e: MetricsError) -> Self {
        DataError(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, DataError> {
    fs::read(path).map_err(|e| DataError(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), DataError> {
    fs::write(path, bytes).map_err(|e| DataError(format!("{}: {e}", path.display())))
}

fn load_pgm(path: &Path) -> Result<GrayImage, DataError> {
    let bytes = read_file(path)?;
    read_pgm(&bytes).map_err(|e: PgmError| DataError(format!("{}: {e}", path.display())))
}

/// Loads a grayscale image from either a PGM file or a ciphertext envelope
/// (the payload viewed as an image), deciding by magic bytes.
fn load_gray_auto(path: &Path) -> Result<GrayImage, DataError> {
    let bytes = read_file(path)?;
    if bytes.starts_with(&CipherEnvelope::MAGIC) {
        let env = CipherEnvelope::from_bytes(&bytes)
            .map_err(|e| DataError(format!("{}: {e}", path.display())))?;
        Ok(env.payload_image())
    } else {
        read_pgm(&bytes).map_err(|e| DataError(format!("{}: {e}", path.display())))
    }
}

fn build_config(
    u: f64,
    burn_in: u32,
    mode: CipherMode,
    key_image: Option<&Path>,
    target_dims: Option<(NonZeroU32, NonZeroU32)>,
) -> Result<CipherConfig, DataError> {
    let key_image = match key_image {
        Some(path) => KeyImageSource::External(load_pgm(path)?),
        None => KeyImageSource::Generated,
    };
    Ok(CipherConfig {
        u,
        burn_in,
        mode,
        key_image,
        target_dims,
    })
}

fn cmd_encrypt(args: EncryptArgs) -> Result<(), DataError> {
    let cfg = build_config(
        args.u,
        args.burn_in,
        args.mode.into(),
        args.key_image.as_deref(),
        args.resize,
    )?;
    let plain = preprocess(&load_pgm(&args.input)?, &cfg);
    let envelope = encrypt(&plain, args.key, &cfg)?;
    write_file(&args.out, &envelope.to_bytes())
}

fn cmd_decrypt(args: DecryptArgs) -> Result<(), DataError> {
    let cfg = build_config(
        args.u,
        args.burn_in,
        CipherMode::ChaosDna, // the envelope's recorded mode decides
        args.key_image.as_deref(),
        None,
    )?;
    let bytes = read_file(&args.input)?;
    let envelope = CipherEnvelope::from_bytes(&bytes)
        .map_err(|e| DataError(format!("{}: {e}", args.input.display())))?;
    let plain = decrypt(&envelope, args.key, &cfg)?;
    write_file(&args.out, &write_pgm(&plain))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), DataError> {
    let original = load_pgm(&args.original)?;
    let encrypted = load_gray_auto(&args.encrypted)?;
    let decrypted = load_gray_auto(&args.decrypted)?;
    let report = compare_report(&original, &encrypted, &decrypted)?;

    let csv = compare_csv(&report);
    match &args.out {
        Some(path) => write_file(path, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    eprint!("{}", compare_text(&report));

    if let Some(dir) = &args.render_dir {
        fs::create_dir_all(dir).map_err(|e| DataError(format!("{}: {e}", dir.display())))?;
        let renders = [
            ("hist_original.pgm", &report.original_histogram),
            ("hist_encrypted.pgm", &report.encrypted_histogram),
            ("hist_decrypted.pgm", &histogram(&decrypted)),
        ];
        for (name, hist) in renders {
            let img = render_histogram(hist, 200);
            write_file(&dir.join(name), &write_pgm(&img))?;
        }
    }
    Ok(())
}

fn cmd_bifurcation(args: BifurcationArgs) -> Result<(), DataError> {
    let points = bifurcation_scan(
        args.u_min,
        args.u_max,
        args.steps,
        args.transient,
        args.samples,
        args.p0,
    )?;
    let csv = bifurcation_csv(&points);
    match &args.out {
        Some(path) => write_file(path, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.render {
        let (w, h) = args.render_size;
        let img = render_bifurcation(&points, w.get(), h.get(), args.u_min, args.u_max);
        write_file(path, &write_pgm(&img))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), DataError> {
    match cli.command {
        Command::Encrypt(args) => cmd_encrypt(args),
        Command::Decrypt(args) => cmd_decrypt(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Bifurcation(args) => cmd_bifurcation(args),
    }
}

/// Parses and runs one invocation, returning the process exit code:
/// 0 success, 1 usage error, 2 data/format error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("chaodna: {e}");
            2
        }
    }
}
