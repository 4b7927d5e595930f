//! Spec-string grammar:
//!
//! ```text
//! spec   := family [ ":" pair { "," pair } ]
//! pair   := key "=" number
//! family := "t" | "fdist" | "pareto" | "gpow" | "normal" | "uniform" | "normmix" | "tmix"
//! ```
//!
//! Only `normal` (keys `mu`, `sigma`; default 0, 1) and `uniform` (keys
//! `lo`, `hi`; default 0, 1) may omit keys.

use super::DistributionSpec;
use crate::error::{Error, Result};

struct Keys<'a> {
    family: &'a str,
    pairs: Vec<(&'a str, f64, usize)>,
    end: usize,
}

impl<'a> Keys<'a> {
    fn take(&mut self, key: &str) -> Option<f64> {
        let idx = self.pairs.iter().position(|(k, _, _)| *k == key)?;
        Some(self.pairs.remove(idx).1)
    }

    fn require(&mut self, key: &str) -> Result<f64> {
        self.take(key).ok_or_else(|| Error::Parse {
            position: self.end,
            message: format!("family '{}' requires key '{}'", self.family, key),
        })
    }

    fn finish(self) -> Result<()> {
        if let Some((k, _, pos)) = self.pairs.first() {
            return Err(Error::Parse {
                position: *pos,
                message: format!("unknown key '{}' for family '{}'", k, self.family),
            });
        }
        Ok(())
    }
}

const FAMILIES: [&str; 8] = ["t", "fdist", "pareto", "gpow", "normal", "uniform", "normmix", "tmix"];

/// Parses a distribution spec string such as `"tmix:r=1,delta=1.475"`.
pub fn parse_spec(text: &str) -> Result<DistributionSpec> {
    let (family, rest, rest_at) = match text.find(':') {
        Some(i) => (&text[..i], Some(&text[i + 1..]), i + 1),
        None => (text, None, text.len()),
    };
    if !FAMILIES.contains(&family) {
        return Err(Error::Parse {
            position: 0,
            message: format!("unknown family '{family}' (expected one of {})", FAMILIES.join(", ")),
        });
    }

    let mut pairs: Vec<(&str, f64, usize)> = Vec::new();
    if let Some(rest) = rest {
        let mut offset = rest_at;
        for item in rest.split(',') {
            let Some(eq) = item.find('=') else {
                return Err(Error::Parse {
                    position: offset,
                    message: format!("expected key=number, found '{item}'"),
                });
            };
            let key = &item[..eq];
            let raw = &item[eq + 1..];
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
                return Err(Error::Parse {
                    position: offset,
                    message: format!("invalid key '{key}'"),
                });
            }
            let value: f64 = raw.parse().map_err(|_| Error::Parse {
                position: offset + eq + 1,
                message: format!("invalid number '{raw}'"),
            })?;
            if value.is_nan() {
                return Err(Error::Parse {
                    position: offset + eq + 1,
                    message: "NaN is not a valid parameter".into(),
                });
            }
            if pairs.iter().any(|(k, _, _)| *k == key) {
                return Err(Error::Parse {
                    position: offset,
                    message: format!("duplicate key '{key}'"),
                });
            }
            pairs.push((key, value, offset));
            offset += item.len() + 1;
        }
    } else if !matches!(family, "normal" | "uniform") {
        return Err(Error::Parse {
            position: text.len(),
            message: format!("expected ':' and parameters after '{family}'"),
        });
    }

    let mut keys = Keys {
        family,
        pairs,
        end: text.len(),
    };
    let spec = match family {
        "t" => {
            let r = keys.require("r")?;
            keys.finish()?;
            DistributionSpec::student_t(r)?
        }
        "fdist" => {
            let a = keys.require("a")?;
            let b = keys.require("b")?;
            keys.finish()?;
            DistributionSpec::f_dist(a, b)?
        }
        "pareto" => {
            let a = keys.require("a")?;
            let b = keys.require("b")?;
            keys.finish()?;
            DistributionSpec::pareto(a, b)?
        }
        "gpow" => {
            let r = keys.require("r")?;
            keys.finish()?;
            DistributionSpec::spherical_power(r)?
        }
        "normal" => {
            let mu = keys.take("mu").unwrap_or(0.0);
            let sigma = keys.take("sigma").unwrap_or(1.0);
            keys.finish()?;
            DistributionSpec::normal(mu, sigma)?
        }
        "uniform" => {
            let lo = keys.take("lo").unwrap_or(0.0);
            let hi = keys.take("hi").unwrap_or(1.0);
            keys.finish()?;
            DistributionSpec::uniform(lo, hi)?
        }
        "normmix" => {
            let delta = keys.require("delta")?;
            keys.finish()?;
            DistributionSpec::normal_mixture(delta)?
        }
        "tmix" => {
            let r = keys.require("r")?;
            let delta = keys.require("delta")?;
            keys.finish()?;
            DistributionSpec::t_mixture(r, delta)?
        }
        _ => unreachable!("family list checked above"),
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;

    #[test]
    fn parses_examples() {
        assert_eq!(*parse_spec("t:r=1").unwrap().family(), Family::StudentT { r: 1.0 });
        assert_eq!(
            *parse_spec("tmix:r=1,delta=1.475").unwrap().family(),
            Family::TMixture { r: 1.0, delta: 1.475 }
        );
        assert_eq!(*parse_spec("pareto:a=2,b=1").unwrap().family(), Family::Pareto { a: 2.0, b: 1.0 });
        assert_eq!(*parse_spec("gpow:r=4").unwrap().family(), Family::SphericalPower { r: 4.0 });
        assert_eq!(*parse_spec("fdist:a=4,b=6").unwrap().family(), Family::FDist { a: 4.0, b: 6.0 });
        assert_eq!(*parse_spec("normmix:delta=1.34").unwrap().family(), Family::NormalMixture { delta: 1.34 });
        assert_eq!(*parse_spec("normal").unwrap().family(), Family::Normal { mu: 0.0, sigma: 1.0 });
        assert_eq!(*parse_spec("normal:mu=3").unwrap().family(), Family::Normal { mu: 3.0, sigma: 1.0 });
        assert_eq!(*parse_spec("uniform:hi=2").unwrap().family(), Family::Uniform { lo: 0.0, hi: 2.0 });
    }

    #[test]
    fn key_order_is_free() {
        assert_eq!(parse_spec("tmix:delta=1.3,r=1").unwrap(), parse_spec("tmix:r=1,delta=1.3").unwrap());
    }

    #[test]
    fn constraint_violation_is_named() {
        let e = parse_spec("pareto:a=0,b=1").unwrap_err();
        assert_eq!(e.to_string(), "a must be > 0");
        let e = parse_spec("t:r=-2").unwrap_err();
        assert_eq!(e.to_string(), "r must be > 0");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_spec("gamma:k=1").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 0),
            e => panic!("{e:?}"),
        }
        match parse_spec("t:r=1,q=2").unwrap_err() {
            Error::Parse { position, message } => {
                assert_eq!(position, 6);
                assert!(message.contains("unknown key 'q'"));
            }
            e => panic!("{e:?}"),
        }
        match parse_spec("t:r=abc").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 4),
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse_spec("t:r=1,r=2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("t"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("fdist:a=2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("t:r=nan"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("t:r"), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["t:r=1", "tmix:r=1,delta=1.475", "pareto:a=2,b=1", "gpow:r=4", "fdist:a=4,b=6", "normmix:delta=1.34", "normal:mu=0,sigma=1", "uniform:lo=0,hi=1"] {
            let d = parse_spec(s).unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(parse_spec(&d.to_string()).unwrap(), d);
        }
    }
}
