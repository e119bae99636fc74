//! Command-line and config-file parsing into a validated [`RunConfig`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use jumpdet::verify::{Place, Suite};
use jumpdet::PrecisionContext;

/// Environment variable consulted for the default precision.
pub const BITS_ENV: &str = "JUMPDET_BITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Moments,
    Det,
    Recurrence,
    Identity,
    Asymptote,
    Sweep,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Parser, Default)]
#[command(name = "jumpdet", version, about = "Hankel determinants and orthogonal polynomials for the Gaussian weight with a jump")]
pub struct Cli {
    /// moments | det | recurrence | identity | asymptote | sweep | verify
    #[arg(value_enum)]
    pub command: Option<Command>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_im: Option<f64>,
    /// Jump at lambda0 * sqrt(2n).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mu0")]
    pub lambda0: Option<f64>,
    /// Jump at a fixed point, independent of n.
    #[arg(long, allow_hyphen_values = true)]
    pub mu0: Option<f64>,
    /// Degrees: `16`, `16,32,64` or the inclusive range `2..30`.
    #[arg(long)]
    pub n: Option<String>,
    /// Working precision in bits [default: $JUMPDET_BITS, else max(256, 12 n_max)].
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Report file [default: standard output].
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// selberg | identity | appendix | jumps | thm1 | thm2 | all
    #[arg(long)]
    pub suite: Option<String>,
    /// Samples per relation for the appendix suite.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub beta: (f64, f64),
    pub place: Place,
    pub ns: Vec<usize>,
    pub bits: u32,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
}

const KEYS: [&str; 12] =
    ["command", "beta_re", "beta_im", "lambda0", "mu0", "n", "bits", "format", "output", "suite", "samples", "seed"];

/// Parse `key = value` lines; `#` starts a comment, dashes in keys read as underscores.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(usage(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn from_file<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, UsageError> {
    file.get(key)
        .map(|v| v.parse::<T>().map_err(|_| usage(format!("config key {key}: cannot parse {v:?}"))))
        .transpose()
}

fn enum_from_file<T: ValueEnum>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, UsageError> {
    file.get(key).map(|v| T::from_str(v, true).map_err(|_| usage(format!("config key {key}: bad value {v:?}")))).transpose()
}

/// `16`, `16,32,64`, or the inclusive range `2..30`; must be strictly increasing.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>, UsageError> {
    let bad = || usage(format!("cannot parse n list {s:?}"));
    let ns: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if ns.is_empty() {
        return Err(usage(format!("n list {s:?} is empty")));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage(format!("n list {s:?} must be strictly increasing")));
    }
    Ok(ns)
}

/// Merge flags, config file and environment into a checked configuration.
pub fn resolve(cli: Cli, env_bits: Option<String>) -> Result<RunConfig, UsageError> {
    let file = match &cli.config {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    };
    let command = match cli.command {
        Some(c) => c,
        None => enum_from_file(&file, "command")?.ok_or_else(|| usage("a command is required"))?,
    };
    let beta = (
        cli.beta_re.map_or_else(|| from_file(&file, "beta_re"), |v| Ok(Some(v)))?.unwrap_or(0.0),
        cli.beta_im.map_or_else(|| from_file(&file, "beta_im"), |v| Ok(Some(v)))?.unwrap_or(0.0),
    );
    if !(beta.0 > -0.5 && beta.0 <= 0.5) || !beta.1.is_finite() {
        return Err(usage(format!("Re beta = {} must lie in (-1/2, 1/2]", beta.0)));
    }
    let place = match (cli.lambda0, cli.mu0) {
        (Some(l), None) => Place::Lambda0(l),
        (None, Some(m)) => Place::Mu0(m),
        (Some(_), Some(_)) => return Err(usage("--lambda0 and --mu0 are mutually exclusive")),
        (None, None) => match (from_file::<f64>(&file, "lambda0")?, from_file::<f64>(&file, "mu0")?) {
            (Some(_), Some(_)) => return Err(usage("lambda0 and mu0 are mutually exclusive")),
            (Some(l), None) => Place::Lambda0(l),
            (None, Some(m)) => Place::Mu0(m),
            (None, None) => Place::Lambda0(0.0),
        },
    };
    if let Place::Lambda0(l) = place {
        if !(l > -1.0 && l < 1.0) {
            return Err(usage(format!("lambda0 = {l} must lie in (-1, 1)")));
        }
    }
    let suite_text = cli.suite.clone().or_else(|| file.get("suite").cloned());
    let suite = match suite_text {
        Some(s) => s.parse::<Suite>().map_err(|e| usage(e.to_string()))?,
        None if command == Command::Sweep => Suite::Thm1,
        None => Suite::All,
    };
    let n_text = cli.n.clone().or_else(|| file.get("n").cloned());
    let needs_n = !(command == Command::Verify && matches!(suite, Suite::Appendix | Suite::Jumps));
    let ns = match n_text {
        Some(s) => parse_n_list(&s)?,
        None if needs_n => return Err(usage("--n is required for this command")),
        None => Vec::new(),
    };
    if command != Command::Moments && ns.first() == Some(&0) {
        return Err(usage("degrees must be at least 1"));
    }
    let asymptotic = matches!(command, Command::Asymptote | Command::Sweep)
        || (command == Command::Verify && matches!(suite, Suite::Thm1 | Suite::Thm2 | Suite::All));
    if asymptotic && matches!(place, Place::Mu0(_)) {
        return Err(usage("asymptotic predictions are stated for lambda0; --mu0 cannot be used here"));
    }
    if command == Command::Sweep && !matches!(suite, Suite::Thm1 | Suite::Thm2) {
        return Err(usage("sweep supports --suite thm1 or thm2"));
    }
    let uses_thm2 = matches!(command, Command::Sweep | Command::Verify) && suite == Suite::Thm2;
    if uses_thm2 && beta == (0.0, 0.0) {
        return Err(usage("the polynomial asymptotics require beta != 0; pass --beta-re or --beta-im"));
    }
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let bits = match cli.bits.map_or_else(|| from_file::<u32>(&file, "bits"), |b| Ok(Some(b)))? {
        Some(b) => b,
        None => match env_bits {
            Some(v) => v.trim().parse().map_err(|_| usage(format!("{BITS_ENV} = {v:?} is not an integer")))?,
            None => PrecisionContext::for_degree(n_max).bits(),
        },
    };
    if bits < PrecisionContext::MIN_BITS {
        return Err(usage(format!("bits = {bits} is below {}", PrecisionContext::MIN_BITS)));
    }
    let format = match cli.format {
        Some(f) => f,
        None => enum_from_file(&file, "format")?.unwrap_or(Format::Csv),
    };
    let output = cli.output.clone().or_else(|| file.get("output").map(PathBuf::from));
    let samples = cli.samples.map_or_else(|| from_file(&file, "samples"), |v| Ok(Some(v)))?.unwrap_or(20);
    let seed = cli.seed.map_or_else(|| from_file(&file, "seed"), |v| Ok(Some(v)))?.unwrap_or(1);
    Ok(RunConfig { command, beta, place, ns, bits, format, output, suite, samples, seed })
}

/// Full parse of an argument vector.
pub fn parse_config<I, T>(args: I, env_bits: Option<String>) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => return Err(usage(e.to_string())),
    };
    resolve(cli, env_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, UsageError> {
        parse_config(std::iter::once("jumpdet").chain(args.iter().copied()), None)
    }

    #[test]
    fn verify_selberg_example() {
        let c = parse(&["verify", "--suite", "selberg", "--n", "2..30", "--bits", "512"]).unwrap();
        assert_eq!(c.command, Command::Verify);
        assert_eq!(c.suite, Suite::Selberg);
        assert_eq!(c.ns, (2..=30).collect::<Vec<_>>());
        assert_eq!(c.bits, 512);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn thm2_without_beta_is_a_usage_error() {
        let e = parse(&["verify", "--suite", "thm2", "--n", "8"]).unwrap_err();
        assert!(e.0.contains("beta"), "{e}");
        assert!(parse(&["sweep", "--suite", "thm2", "--n", "8", "--beta-im", "0.4"]).is_ok());
    }

    #[test]
    fn conflicting_jump_locations() {
        assert!(parse(&["det", "--n", "4", "--mu0", "0.1", "--lambda0", "0.2"]).is_err());
        let file = parse_config_text("lambda0 = 0.2\nmu0 = 0.1\n").unwrap();
        assert_eq!(file.len(), 2);
    }

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("16,32,64").unwrap(), [16, 32, 64]);
        assert_eq!(parse_n_list("3..5").unwrap(), [3, 4, 5]);
        assert_eq!(parse_n_list("7").unwrap(), [7]);
        assert!(parse_n_list("4,4").is_err());
        assert!(parse_n_list("9..3").is_err());
        assert!(parse_n_list("a").is_err());
    }

    #[test]
    fn precision_defaults() {
        let c = parse(&["det", "--n", "40"]).unwrap();
        assert_eq!(c.bits, 480);
        let env = parse_config(["jumpdet", "det", "--n", "4"], Some("320".into())).unwrap();
        assert_eq!(env.bits, 320);
        let flag = parse_config(["jumpdet", "det", "--n", "4", "--bits", "200"], Some("320".into())).unwrap();
        assert_eq!(flag.bits, 200);
    }

    #[test]
    fn command_line_overrides_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# sweep settings\ncommand = sweep\nbeta-im = 0.3\nlambda0 = 0.3\nn = 8,16\nbits = 300\nformat = json\n").unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["--config", p, "--bits", "400"]).unwrap();
        assert_eq!(c.command, Command::Sweep);
        assert_eq!(c.beta, (0.0, 0.3));
        assert_eq!(c.place, Place::Lambda0(0.3));
        assert_eq!(c.ns, [8, 16]);
        assert_eq!(c.bits, 400);
        assert_eq!(c.format, Format::Json);
        let c = parse(&["--config", p, "--mu0", "0.5", "det"]).unwrap();
        assert_eq!(c.place, Place::Mu0(0.5));
        std::fs::write(&path, "colour = red\n").unwrap();
        assert!(parse(&["det", "--config", p]).is_err());
    }

    #[test]
    fn asymptotic_commands_need_lambda0() {
        assert!(parse(&["asymptote", "--n", "8", "--mu0", "0.3"]).is_err());
        assert!(parse(&["verify", "--suite", "selberg", "--n", "8", "--mu0", "0.3"]).is_ok());
        assert!(parse(&["verify", "--suite", "jumps"]).is_ok());
        assert!(parse(&["det", "--n", "4", "--beta-re", "0.7"]).is_err());
    }
}
