use crate::args::{Cli, Command, Format, IndexArg, Method, MixtureArg};
use biscv_core::Error;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

/// Non-finite reals as `"inf"`, `"-inf"`, `"nan"`, matching the core types.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

/// Envelope of every JSON document: the command, the full configuration
/// including defaults, then either `result` or `error`.
pub struct Document {
    command: &'static str,
    config: Value,
}

impl Document {
    pub fn new(cli: &Cli) -> Self {
        Self {
            command: cli.name(),
            config: config(cli),
        }
    }

    pub fn render(&self, result: Value) -> String {
        self.finish("result", result)
    }

    pub fn render_error(&self, err: &Error) -> String {
        self.finish("error", json!({ "kind": err.kind(), "message": err.to_string() }))
    }

    fn finish(&self, key: &str, body: Value) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("config".into(), self.config.clone());
        doc.insert(key.into(), body);
        doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values always serialize");
        text.push('\n');
        text
    }
}

fn index_config(cfg: &mut Map<String, Value>, index: &IndexArg) {
    // parse-time validation guarantees the index resolves
    if let Ok(idx) = index.resolve() {
        cfg.insert("s".into(), num(idx.s));
        cfg.insert("s_star".into(), num(idx.s_star));
    }
}

fn config(cli: &Cli) -> Value {
    let mut cfg = Map::new();
    let common = cli.common();
    match &cli.command {
        Command::Check { dist, index, method, .. } => {
            cfg.insert("dist".into(), json!(dist.to_string()));
            index_config(&mut cfg, index);
            let m = match method {
                Method::Iv => "iv",
                Method::Iii => "iii",
                Method::Midpoint => "midpoint",
                Method::All => "all",
            };
            cfg.insert("method".into(), json!(m));
        }
        Command::Gamma { dist, index, .. } | Command::Envelope { dist, index, .. } => {
            cfg.insert("dist".into(), json!(dist.to_string()));
            index_config(&mut cfg, index);
        }
        Command::MaxS {
            dist, lo, hi, bisect_tol, ..
        } => {
            cfg.insert("dist".into(), json!(dist.to_string()));
            cfg.insert("lo".into(), num(*lo));
            cfg.insert("hi".into(), num(*hi));
            cfg.insert("bisect_tol".into(), num(*bisect_tol));
        }
        Command::Threshold {
            family,
            r,
            index,
            lo,
            hi,
            bisect_tol,
            ..
        } => {
            let fam = match family {
                MixtureArg::Normmix => "normmix",
                MixtureArg::Tmix => "tmix",
            };
            cfg.insert("family".into(), json!(fam));
            cfg.insert("r".into(), r.map_or(Value::Null, num));
            index_config(&mut cfg, index);
            cfg.insert("lo".into(), num(*lo));
            cfg.insert("hi".into(), num(*hi));
            cfg.insert("bisect_tol".into(), num(*bisect_tol));
        }
        Command::Fisher {
            dist, index, rel_tol, ..
        } => {
            cfg.insert("dist".into(), json!(dist.to_string()));
            index_config(&mut cfg, index);
            cfg.insert("rel_tol".into(), num(*rel_tol));
        }
        Command::Catalog { dist, .. } => {
            cfg.insert("dist".into(), json!(dist.to_string()));
        }
    }
    cfg.insert("grid_points".into(), json!(common.grid_points));
    cfg.insert("eps".into(), num(common.eps));
    cfg.insert("tol".into(), num(common.tol));
    let is_envelope = matches!(cli.command, Command::Envelope { .. });
    let format = match common.format {
        Some(Format::Csv) => "csv",
        Some(Format::Json) => "json",
        None if is_envelope => "csv",
        None => "json",
    };
    cfg.insert("format".into(), json!(format));
    Value::Object(cfg)
}

/// Writes to `path`, or stdout when none is given.
pub fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
