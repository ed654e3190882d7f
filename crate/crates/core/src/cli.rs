//! Command-line front end: argument model, command execution and output
//! formatting. `execute` returns the full output as a string so identical
//! configurations can be checked for byte-identical results.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_core::{OsRng, RngCore};

use crate::batch::{auto_batch_size, batch_uniform, plan_batch};
use crate::bernoulli::{bernoulli_rational, Rational};
use crate::bitsource::{RandomBitSource, SeededBitSource};
use crate::cost::{batch_cost, exact_cost, AsymptoticModel, AsymptoticParams, CostBreakdown};
use crate::error::{Error, Result};
use crate::fdr::fdr_uniform;
use crate::permutation::{fisher_yates, random_permutation_selection, random_permutation_unranked, Permutation};
use crate::stats::chi_square_uniform;

/// Largest range for which `bench` tallies outcomes for the chi-square test.
pub const CHI_SQUARE_MAX_CELLS: u64 = 1 << 20;

/// Significant digits of every real printed in CSV output.
pub const CSV_SIGNIFICANT_DIGITS: usize = 9;

#[derive(Parser, Debug)]
#[command(
    name = "fastdice",
    version,
    about = "Random-bit-optimal sampling and bit-cost analysis"
)]
pub struct Cli {
    /// PRNG seed: decimal, 0x-prefixed hex, or `random`.
    #[arg(long, global = true, default_value = "0")]
    pub seed: SeedArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("random") {
            return Ok(Self::Random);
        }
        let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            Some(hex) => u64::from_str_radix(hex, 16),
            None => s.parse(),
        };
        parsed.map(Self::Fixed).map_err(|e| format!("invalid seed {s:?}: {e}"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BatchArg {
    Fixed(u32),
    Auto,
}

impl FromStr for BatchArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Self::Auto);
        }
        match s.parse::<u32>() {
            Ok(0) | Err(_) => Err(format!("batch size must be `auto` or a positive integer, got {s:?}")),
            Ok(j) => Ok(Self::Fixed(j)),
        }
    }
}

impl BatchArg {
    fn resolve(self, n: u64) -> u32 {
        match self {
            Self::Fixed(j) => j,
            Self::Auto => auto_batch_size(n),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PermMethod {
    /// Fisher-Yates shuffle, one FDR draw per position.
    Fy,
    /// One FDR draw of range n!, unranked through Fisher-Yates.
    Unrank,
    /// Lehmer digits drawn one by one, selection construction.
    Lehmer,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Uniform integers in [0, n).
    Uniform(UniformArgs),
    /// Uniform random permutations of 1..=n.
    Perm(PermArgs),
    /// Bernoulli trials of parameter num/den.
    Bernoulli(BernoulliArgs),
    /// Table of exact and asymptotic expected costs (CSV).
    Cost(CostArgs),
    /// Measured bits per variate against theory.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct UniformArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Draw this many variates per FDR call, or `auto`.
    #[arg(long)]
    pub batch: Option<BatchArg>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct PermArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = PermMethod::Unrank)]
    pub method: PermMethod,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct BernoulliArgs {
    #[arg(long)]
    pub num: u64,
    #[arg(long)]
    pub den: u64,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct CostArgs {
    #[arg(long)]
    pub n_min: u64,
    #[arg(long)]
    pub n_max: u64,
    /// Add the asymptotic estimate with this many Fourier pairs.
    #[arg(long)]
    pub asymptotic: Option<usize>,
    /// Report per-variate costs for batches of this size.
    #[arg(long)]
    pub batch: Option<u32>,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub count: u64,
    #[arg(long)]
    pub batch: Option<BatchArg>,
}

/// A fully resolved invocation; equal configs produce identical output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub format: Format,
    /// Set when the seed was drawn from system entropy.
    pub random_seed: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let (seed, random_seed) = match cli.seed {
            SeedArg::Fixed(s) => (s, false),
            SeedArg::Random => (OsRng.next_u64(), true),
        };
        Self {
            command: cli.command,
            seed,
            format: cli.format,
            random_seed,
        }
    }

    pub fn parse_from<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(Self::from_cli)
    }
}

/// Measured against predicted cost for one range.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub n: u64,
    pub batch: u32,
    /// Variates generated (whole batches).
    pub count: u64,
    pub total_bits: u64,
    pub mean_bits_per_variate: f64,
    pub theory: f64,
    pub abs_deviation: f64,
    /// Pearson statistic and degrees of freedom; `None` for huge ranges.
    pub chi_square: Option<(f64, usize)>,
}

impl BenchReport {
    pub const CSV_HEADER: &'static str =
        "n,batch,count,total_bits,mean_bits_per_variate,theory,abs_deviation,chi_square,dof";

    pub fn csv_row(&self) -> String {
        let (chi, dof) = match self.chi_square {
            Some((s, d)) => (fmt_real(s), d.to_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.batch,
            self.count,
            self.total_bits,
            fmt_real(self.mean_bits_per_variate),
            fmt_real(self.theory),
            fmt_real(self.abs_deviation),
            chi,
            dof
        )
    }
}

/// Runs `count` variates (rounded up to whole batches) through the sampler.
pub fn bench<S: RandomBitSource + ?Sized>(source: &mut S, n: u64, count: u64, batch: u32) -> Result<BenchReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("range must be at least 1".into()));
    }
    let mut tally = (n <= CHI_SQUARE_MAX_CELLS).then(|| vec![0u64; n as usize]);
    let start = source.bits_consumed();
    let (generated, theory) = if batch <= 1 || n == 1 {
        for _ in 0..count {
            let v = fdr_uniform(source, n)?.value;
            if let Some(t) = tally.as_mut() {
                t[v as usize] += 1;
            }
        }
        (count, exact_cost(n)?)
    } else {
        let plan = plan_batch(n, batch)?;
        let batches = count.div_ceil(u64::from(batch));
        for _ in 0..batches {
            for v in batch_uniform(source, &plan)?.values {
                if let Some(t) = tally.as_mut() {
                    t[v as usize] += 1;
                }
            }
        }
        (batches * u64::from(batch), batch_cost(n, batch)?)
    };
    let total_bits = source.bits_consumed() - start;
    let mean = if generated == 0 {
        0.0
    } else {
        total_bits as f64 / generated as f64
    };
    Ok(BenchReport {
        n,
        batch: batch.max(1),
        count: generated,
        total_bits,
        mean_bits_per_variate: mean,
        theory,
        abs_deviation: (mean - theory).abs(),
        chi_square: tally.map(|t| chi_square_uniform(&t)),
    })
}

/// Formats a real with [`CSV_SIGNIFICANT_DIGITS`] significant digits in
/// plain positional notation; exact zero prints as `0`.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (CSV_SIGNIFICANT_DIGITS as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding may carry into a new leading digit (9.99... -> 10.0...).
    let digits = s.chars().filter(char::is_ascii_digit).count();
    let leading_zeros = s
        .trim_start_matches('-')
        .chars()
        .take_while(|&c| c == '0' || c == '.')
        .filter(|&c| c == '0')
        .count();
    if decimals > 0 && digits - leading_zeros > CSV_SIGNIFICANT_DIGITS {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

fn footer(out: &mut String, fields: &[(&str, String)], config: &RunConfig) {
    out.push('#');
    for (k, v) in fields {
        let _ = write!(out, " {k}={v}");
    }
    out.push('\n');
    if config.random_seed {
        let _ = writeln!(out, "# seed={}", config.seed);
    }
}

pub fn execute(config: &RunConfig) -> Result<String> {
    let mut source = SeededBitSource::seeded(config.seed);
    let mut out = String::new();
    match &config.command {
        Command::Uniform(args) => {
            if args.n == 0 {
                return Err(Error::InvalidArgument("--n must be at least 1".into()));
            }
            if config.format == Format::Csv {
                out.push_str("value\n");
            }
            let batch = args.batch.map(|b| b.resolve(args.n)).unwrap_or(1);
            if batch <= 1 || args.n == 1 {
                for _ in 0..args.count {
                    let _ = writeln!(out, "{}", fdr_uniform(&mut source, args.n)?.value);
                }
            } else {
                let plan = plan_batch(args.n, batch)?;
                let mut left = args.count;
                while left > 0 {
                    for v in batch_uniform(&mut source, &plan)?
                        .values
                        .into_iter()
                        .take(left as usize)
                    {
                        let _ = writeln!(out, "{v}");
                        left -= 1;
                    }
                }
            }
            footer(
                &mut out,
                &[
                    ("bits", source.bits_consumed().to_string()),
                    ("count", args.count.to_string()),
                ],
                config,
            );
        }
        Command::Perm(args) => {
            let sep = if config.format == Format::Csv { "," } else { " " };
            for _ in 0..args.count {
                let perm: Permutation = match args.method {
                    PermMethod::Fy => fisher_yates(&mut source, args.n)?,
                    PermMethod::Unrank => random_permutation_unranked(&mut source, args.n)?,
                    PermMethod::Lehmer => random_permutation_selection(&mut source, args.n)?.0,
                };
                let line: Vec<String> = perm.as_slice().iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{}", line.join(sep));
            }
            footer(
                &mut out,
                &[
                    ("bits", source.bits_consumed().to_string()),
                    ("calls", args.count.to_string()),
                ],
                config,
            );
        }
        Command::Bernoulli(args) => {
            let p = Rational::new(args.num, args.den)?;
            if config.format == Format::Csv {
                out.push_str("value\n");
            }
            let mut ones = 0u64;
            for _ in 0..args.count {
                let b = bernoulli_rational(&mut source, p)?.value;
                ones += u64::from(b);
                let _ = writeln!(out, "{}", u8::from(b));
            }
            footer(
                &mut out,
                &[
                    ("bits", source.bits_consumed().to_string()),
                    ("count", args.count.to_string()),
                    ("ones", ones.to_string()),
                ],
                config,
            );
        }
        Command::Cost(args) => {
            if args.n_min == 0 || args.n_min > args.n_max {
                return Err(Error::InvalidArgument("need 1 <= --n-min <= --n-max".into()));
            }
            let model = args
                .asymptotic
                .map(|k| AsymptoticModel::new(AsymptoticParams::with_terms(k)))
                .transpose()?;
            out.push_str("n,u_exact,log2n,toll,u_asymptotic\n");
            for n in args.n_min..=args.n_max {
                let row = match args.batch {
                    Some(j) => CostBreakdown::batched(n, j, model.as_ref())?,
                    None => CostBreakdown::new(n, model.as_ref())?,
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.n,
                    fmt_real(row.exact_cost),
                    fmt_real(row.log2n),
                    fmt_real(row.toll),
                    row.asymptotic.map(fmt_real).unwrap_or_default()
                );
            }
        }
        Command::Bench(args) => {
            let batch = args.batch.map(|b| b.resolve(args.n)).unwrap_or(1);
            let report = bench(&mut source, args.n, args.count, batch)?;
            match config.format {
                Format::Csv => {
                    out.push_str(BenchReport::CSV_HEADER);
                    out.push('\n');
                    out.push_str(&report.csv_row());
                    out.push('\n');
                }
                Format::Text => {
                    let header = BenchReport::CSV_HEADER.split(',');
                    for (k, v) in header.zip(report.csv_row().split(',')) {
                        let _ = writeln!(out, "{k}: {v}");
                    }
                }
            }
            if config.random_seed {
                let _ = writeln!(out, "# seed={}", config.seed);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> String {
        let mut full = vec!["fastdice"];
        full.extend_from_slice(args);
        execute(&RunConfig::parse_from(full).unwrap()).unwrap()
    }

    #[test]
    fn seed_parsing() {
        assert_eq!("42".parse::<SeedArg>().unwrap(), SeedArg::Fixed(42));
        assert_eq!("0x2A".parse::<SeedArg>().unwrap(), SeedArg::Fixed(42));
        assert_eq!("random".parse::<SeedArg>().unwrap(), SeedArg::Random);
        assert!("-1".parse::<SeedArg>().is_err());
        assert!("0xZZ".parse::<SeedArg>().is_err());
    }

    #[test]
    fn batch_parsing() {
        assert_eq!("auto".parse::<BatchArg>().unwrap(), BatchArg::Auto);
        assert_eq!("6".parse::<BatchArg>().unwrap(), BatchArg::Fixed(6));
        assert!("0".parse::<BatchArg>().is_err());
        assert_eq!(BatchArg::Auto.resolve(3), 39);
    }

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(8.0 / 3.0), "2.66666667");
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(10.0), "10.0000000");
        assert_eq!(fmt_real(9.999_999_999), "10.0000000");
        assert_eq!(fmt_real(0.001_234_567_891_2), "0.00123456789");
        assert_eq!(fmt_real(-1.5), "-1.50000000");
        assert_eq!(fmt_real(1234567890.0), "1234567890");
    }

    #[test]
    fn uniform_dyadic_footer() {
        let out = run(&["uniform", "--n", "4", "--count", "8", "--seed", "7"]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 9);
        assert!(lines[..8].iter().all(|l| l.parse::<u64>().unwrap() < 4));
        assert_eq!(lines[8], "# bits=16 count=8");
    }

    #[test]
    fn uniform_trivial_cases() {
        assert_eq!(
            run(&["uniform", "--n", "1", "--count", "5"]),
            "0\n0\n0\n0\n0\n# bits=0 count=5\n"
        );
        assert_eq!(run(&["uniform", "--n", "3", "--count", "0"]), "# bits=0 count=0\n");
    }

    #[test]
    fn uniform_batches_take_exact_count() {
        let out = run(&["uniform", "--n", "3", "--count", "7", "--batch", "6"]);
        assert_eq!(out.lines().count(), 8);
        let out = run(&[
            "--format", "csv", "uniform", "--n", "10", "--count", "3", "--batch", "auto",
        ]);
        assert!(out.starts_with("value\n"));
    }

    #[test]
    fn perm_output_shape() {
        let out = run(&["perm", "--n", "5", "--method", "fy", "--count", "3"]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 4);
        for l in &lines[..3] {
            let mut v: Vec<usize> = l.split(' ').map(|x| x.parse().unwrap()).collect();
            v.sort_unstable();
            assert_eq!(v, vec![1, 2, 3, 4, 5]);
        }
        assert!(lines[3].starts_with("# bits=") && lines[3].ends_with(" calls=3"));
        let err = execute(&RunConfig::parse_from(["fastdice", "perm", "--n", "21"]).unwrap());
        assert_eq!(err, Err(Error::FactorialOverflow { n: 21 }));
    }

    #[test]
    fn bernoulli_output() {
        let out = run(&["bernoulli", "--num", "1", "--den", "3", "--count", "4"]);
        assert_eq!(out.lines().count(), 5);
        assert!(out.lines().last().unwrap().contains("ones="));
        assert!(
            execute(&RunConfig::parse_from(["fastdice", "bernoulli", "--num", "4", "--den", "3"]).unwrap()).is_err()
        );
    }

    #[test]
    fn cost_rows() {
        let out = run(&["cost", "--n-min", "2", "--n-max", "4"]);
        assert_eq!(
            out,
            "n,u_exact,log2n,toll,u_asymptotic\n\
             2,1.00000000,1.00000000,0,\n\
             3,2.66666667,1.58496250,1.08170417,\n\
             4,2.00000000,2.00000000,0,\n"
        );
        assert!(
            execute(&RunConfig::parse_from(["fastdice", "cost", "--n-min", "5", "--n-max", "4"]).unwrap()).is_err()
        );
    }

    #[test]
    fn bench_dyadic_has_no_deviation() {
        let out = run(&["--format", "csv", "bench", "--n", "8", "--count", "1000"]);
        let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[3], "3000");
        assert_eq!(row[4], "3.00000000");
        assert_eq!(row[6], "0");
        assert_eq!(row[8], "7");
    }

    #[test]
    fn random_seed_is_reported() {
        let out = run(&["--seed", "random", "uniform", "--n", "6", "--count", "2"]);
        assert!(out.lines().last().unwrap().starts_with("# seed="));
    }
}
