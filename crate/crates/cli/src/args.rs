use clap::{Args, Parser, Subcommand, ValueEnum};

use lgb_core::oracle::{DEFAULT_BUDGET, DEFAULT_PRIME};
use lgb_core::{InstanceSpec, Tier};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "lgb",
    version,
    about = "Leading monomials of a minimal Gröbner basis of a generic homogeneous sequence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the leading monomials and the per-degree trace
    Compute(ComputeArgs),
    /// Print the generic Hilbert series
    Hilbert(HilbertArgs),
    /// Per-degree candidate and generator counts for several tiers (CSV)
    Stats(StatsArgs),
    /// Compare against Buchberger on random sequences over a prime field
    Verify(VerifyArgs),
    /// Time each tier and count divisibility checks (CSV)
    Bench(StatsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Number of variables
    #[arg(short = 'n')]
    pub n: usize,
    /// Number of polynomials; defaults to the length of the degree list
    #[arg(short = 'm')]
    pub m: Option<usize>,
    /// Degrees, comma separated; `2^19` repeats 2 nineteen times
    #[arg(short = 'd', value_name = "DEGREES")]
    pub degrees: String,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<InstanceSpec, CliError> {
        let degrees = parse_degrees(&self.degrees)?;
        if let Some(m) = self.m {
            if m != degrees.len() {
                return Err(CliError::Invalid(format!(
                    "-m {m} but {} degrees given",
                    degrees.len()
                )));
            }
        }
        Ok(InstanceSpec::new(self.n, degrees)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(0..=4))]
    pub tier: u8,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads for the divisibility test
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Highest degree to expand; defaults to the degree bound
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Tiers to run, comma separated
    #[arg(long, default_value = "0,1,2,3,4")]
    pub tiers: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

impl StatsArgs {
    pub fn tiers(&self) -> Result<Vec<Tier>, CliError> {
        parse_tiers(&self.tiers)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Seeds, comma separated; `a..b` is an inclusive range
    #[arg(long, default_value = "1..5")]
    pub seeds: String,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u32,
    /// Largest number of degree-D monomials the oracle accepts
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

impl VerifyArgs {
    pub fn seeds(&self) -> Result<Vec<u64>, CliError> {
        parse_seeds(&self.seeds)
    }
}

fn invalid(what: &str, s: &str) -> CliError {
    CliError::Invalid(format!("bad {what} {s:?}"))
}

/// `2,2,3,4`, `2^19`, or a mix such as `2^3,3`.
pub fn parse_degrees(s: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        match item.split_once('^') {
            Some((value, count)) => {
                let value: u32 = value.trim().parse().map_err(|_| invalid("degree", item))?;
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| invalid("repeat count", item))?;
                out.extend(std::iter::repeat_n(value, count));
            }
            None => out.push(item.parse().map_err(|_| invalid("degree", item))?),
        }
    }
    Ok(out)
}

pub fn parse_tiers(s: &str) -> Result<Vec<Tier>, CliError> {
    s.split(',')
        .map(str::trim)
        .map(|t| {
            let level: u8 = t.parse().map_err(|_| invalid("tier", t))?;
            Ok(Tier::try_from(level)?)
        })
        .collect()
}

pub fn parse_seeds(s: &str) -> Result<Vec<u64>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        match item.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.parse().map_err(|_| invalid("seed range", item))?;
                let b: u64 = b.parse().map_err(|_| invalid("seed range", item))?;
                if a > b {
                    return Err(invalid("seed range", item));
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| invalid("seed", item))?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_lists() {
        assert_eq!(parse_degrees("2,2,3,4").unwrap(), [2, 2, 3, 4]);
        assert_eq!(parse_degrees("2^19").unwrap(), vec![2; 19]);
        assert_eq!(parse_degrees("2^2, 3").unwrap(), [2, 2, 3]);
        assert!(parse_degrees("2,,3").is_err());
        assert!(parse_degrees("a").is_err());
        assert!(parse_degrees("2^x").is_err());
    }

    #[test]
    fn tiers_and_seeds() {
        assert_eq!(parse_tiers("0,4").unwrap(), [Tier::T0, Tier::T4]);
        assert!(parse_tiers("5").is_err());
        assert_eq!(parse_seeds("1..3,9").unwrap(), [1, 2, 3, 9]);
        assert!(parse_seeds("3..1").is_err());
    }

    #[test]
    fn m_must_match() {
        let args = SpecArgs {
            n: 3,
            m: Some(3),
            degrees: "2,2,3,4".into(),
        };
        assert!(matches!(args.spec(), Err(CliError::Invalid(_))));
    }
}
