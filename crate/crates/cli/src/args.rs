use biscv_core::{parse_spec, ConcavityIndex, DistributionSpec, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "biscv", version, about = "Bi-s*-concavity toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test condition (iv), (iii) or the midpoint definition on a quantile grid
    Check {
        #[arg(long, value_parser = parse_dist)]
        dist: DistributionSpec,
        #[command(flatten)]
        index: IndexArg,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Suprema of |CR| and |CR_min| against the cap 1/(1+s)
    Gamma {
        #[arg(long, value_parser = parse_dist)]
        dist: DistributionSpec,
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        common: Common,
    },
    /// Largest s in [lo, hi] at which condition (iv) holds
    MaxS {
        #[arg(long, value_parser = parse_dist)]
        dist: DistributionSpec,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        hi: f64,
        /// Width of the final bisection bracket
        #[arg(long, default_value_t = 1e-4, value_parser = parse_positive)]
        bisect_tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Mixture separation at which condition (iv) stops holding
    Threshold {
        #[arg(long, value_enum)]
        family: MixtureArg,
        /// Degrees of freedom, tmix only
        #[arg(long, value_parser = parse_positive)]
        r: Option<f64>,
        #[command(flatten)]
        index: IndexArg,
        #[arg(long, value_parser = parse_real)]
        lo: f64,
        #[arg(long, value_parser = parse_real)]
        hi: f64,
        #[arg(long, default_value_t = 1e-4, value_parser = parse_positive)]
        bisect_tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Table of F, F_L, F_U and the derivative corridor (CSV by default)
    Envelope {
        #[arg(long, value_parser = parse_dist)]
        dist: DistributionSpec,
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        common: Common,
    },
    /// Fisher information, Hardy integrals and the chain between them
    Fisher {
        #[arg(long, value_parser = parse_dist)]
        dist: DistributionSpec,
        #[command(flatten)]
        index: IndexArg,
        /// Relative tolerance of the quadrature
        #[arg(long, default_value_t = 1e-8, value_parser = parse_positive)]
        rel_tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Support, maximal known s and normalizing constant of a family
    Catalog {
        #[arg(long, value_parser = parse_dist)]
        dist: DistributionSpec,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct IndexArg {
    /// Concavity index s > -1; `inf` allowed
    #[arg(long, allow_hyphen_values = true, value_parser = parse_s)]
    pub s: Option<f64>,
    /// Alternative index s* = s/(1+s) <= 1
    #[arg(long = "s-star", allow_hyphen_values = true, value_parser = parse_s_star)]
    pub s_star: Option<f64>,
}

impl IndexArg {
    pub fn resolve(&self) -> Result<ConcavityIndex, Error> {
        match (self.s, self.s_star) {
            (Some(s), None) => ConcavityIndex::to_index(s),
            (None, Some(t)) => ConcavityIndex::from_star(t),
            _ => unreachable!("clap enforces exactly one of --s/--s-star"),
        }
    }
}

#[derive(Args, Debug)]
pub struct Common {
    /// Quantile grid size
    #[arg(long, env = "BISCV_GRID_POINTS", default_value_t = 2000, value_parser = parse_grid_points)]
    pub grid_points: usize,
    /// Tail mass left out of the grid at each end
    #[arg(long, default_value_t = 1e-8, value_parser = parse_eps)]
    pub eps: f64,
    /// Absolute slack of the checkers
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    pub tol: f64,
    /// Output format; csv is only available for `envelope`
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the document here instead of stdout
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Iv,
    Iii,
    Midpoint,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixtureArg {
    Normmix,
    Tmix,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Cli {
    pub fn common(&self) -> &Common {
        match &self.command {
            Command::Check { common, .. }
            | Command::Gamma { common, .. }
            | Command::MaxS { common, .. }
            | Command::Threshold { common, .. }
            | Command::Envelope { common, .. }
            | Command::Fisher { common, .. }
            | Command::Catalog { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match &self.command {
            Command::Check { .. } => "check",
            Command::Gamma { .. } => "gamma",
            Command::MaxS { .. } => "max-s",
            Command::Threshold { .. } => "threshold",
            Command::Envelope { .. } => "envelope",
            Command::Fisher { .. } => "fisher",
            Command::Catalog { .. } => "catalog",
        }
    }

    /// Cross-argument rules clap cannot express.
    pub fn validate(&self) -> Result<(), String> {
        let is_envelope = matches!(self.command, Command::Envelope { .. });
        if self.common().format == Some(Format::Csv) && !is_envelope {
            return Err(format!("--format csv is only available for `envelope`, not `{}`", self.name()));
        }
        if let Command::Threshold { family, r, lo, hi, .. } = &self.command {
            match (family, r) {
                (MixtureArg::Tmix, None) => return Err("--family tmix requires --r".into()),
                (MixtureArg::Normmix, Some(_)) => return Err("--r only applies to --family tmix".into()),
                _ => {}
            }
            if !(lo < hi) {
                return Err(format!("need --lo < --hi, got {lo} and {hi}"));
            }
        }
        if let Command::MaxS { lo, hi, .. } = &self.command {
            if !(lo < hi) {
                return Err(format!("need --lo < --hi, got {lo} and {hi}"));
            }
        }
        Ok(())
    }
}

fn parse_dist(text: &str) -> Result<DistributionSpec, String> {
    parse_spec(text).map_err(|e| e.to_string())
}

/// A float, with `inf`, `+inf`, `-inf` and `infinity` accepted.
pub fn parse_real(text: &str) -> Result<f64, String> {
    let v: f64 = text.trim().parse().map_err(|_| format!("`{text}` is not a number"))?;
    if v.is_nan() {
        return Err("NaN is not allowed".into());
    }
    Ok(v)
}

fn parse_s(text: &str) -> Result<f64, String> {
    let s = parse_real(text)?;
    if s <= -1.0 {
        return Err(format!("s must be > -1, got {s}"));
    }
    Ok(s)
}

fn parse_s_star(text: &str) -> Result<f64, String> {
    let t = parse_real(text)?;
    if t > 1.0 || t == f64::NEG_INFINITY {
        return Err(format!("s* must lie in (-inf, 1], got {t}"));
    }
    Ok(t)
}

fn parse_positive(text: &str) -> Result<f64, String> {
    let v = parse_real(text)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(format!("must be a positive finite number, got {v}"));
    }
    Ok(v)
}

fn parse_grid_points(text: &str) -> Result<usize, String> {
    let n: usize = text.trim().parse().map_err(|_| format!("`{text}` is not a count"))?;
    if n < 16 {
        return Err(format!("grid needs at least 16 points, got {n}"));
    }
    Ok(n)
}

fn parse_eps(text: &str) -> Result<f64, String> {
    let e = parse_real(text)?;
    if !(e > 0.0 && e < 0.1) {
        return Err(format!("eps must lie in (0, 0.1), got {e}"));
    }
    Ok(e)
}

fn parse_tol(text: &str) -> Result<f64, String> {
    let t = parse_real(text)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(format!("tol must be finite and >= 0, got {t}"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_accept_infinity() {
        assert_eq!(parse_real("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_real("-inf").unwrap(), f64::NEG_INFINITY);
        assert_eq!(parse_real("-0.5").unwrap(), -0.5);
        assert!(parse_real("nan").is_err());
        assert!(parse_real("x").is_err());
    }

    #[test]
    fn index_ranges() {
        assert!(parse_s("-1").is_err());
        assert_eq!(parse_s("inf").unwrap(), f64::INFINITY);
        assert!(parse_s_star("1.5").is_err());
        assert_eq!(parse_s_star("1").unwrap(), 1.0);
        assert!(parse_s_star("-inf").is_err());
    }

    #[test]
    fn settings_ranges() {
        assert!(parse_grid_points("15").is_err());
        assert_eq!(parse_grid_points("16").unwrap(), 16);
        assert!(parse_eps("0.1").is_err());
        assert!(parse_eps("0").is_err());
        assert!(parse_tol("-1e-9").is_err());
    }

    #[test]
    fn index_flags_are_exclusive() {
        let r = Cli::try_parse_from(["biscv", "gamma", "--dist", "t:r=1", "--s", "0", "--s-star", "0"]);
        assert!(r.is_err());
        let r = Cli::try_parse_from(["biscv", "gamma", "--dist", "t:r=1"]);
        assert!(r.is_err());
        let cli = Cli::try_parse_from(["biscv", "gamma", "--dist", "t:r=1", "--s-star", "-1"]).unwrap();
        let Command::Gamma { index, .. } = cli.command else { panic!() };
        assert_eq!(index.resolve().unwrap().s, -0.5);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
