//! The `foliate` command line.
//!
//! Exit codes: 0 success (or isomorphic), 1 validation failure (or not
//! isomorphic), 2 unreadable or malformed input, 3 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::canonical::{canonical_code, canonicalize, is_isomorphic};
use crate::decompose::{component_closures, decompose, CutMode};
use crate::homeo::realize_half_strip;
use crate::io::{decomposition_report, leaf_space_dot, leaf_space_json, parse, serialize, surface_svg, IoError};
use crate::leaf_space::build_leaf_space;
use crate::surface::{validate_class_f, StripedSurface};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "foliate",
    version,
    about = "Striped surfaces, their leaf spaces and canonical decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LeafFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RenderFormat {
    Svg,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Interior,
    WithBoundary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HalfSide {
    Lower,
    Upper,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a surface document and report its glued leaves and components.
    Validate { file: PathBuf },
    /// Print the leaf space.
    Leafspace {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: LeafFormat,
    },
    /// Cut along special (and optionally boundary) leaves.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "with-boundary")]
        mode: Mode,
    },
    /// Merge across non-special leaves and print the canonical code.
    Canon { file: PathBuf },
    /// Decide whether two surfaces are equivalent.
    Iso { a: PathBuf, b: PathBuf },
    /// Sample the half-strip map of one open-strip component as CSV.
    Realize {
        file: PathBuf,
        /// Id of a strip in the component, or the component's index.
        #[arg(long)]
        component: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value = "lower")]
        side: HalfSide,
    },
    /// Draw the strip diagram (SVG) or the leaf space (DOT).
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: RenderFormat,
    },
}

struct Failure {
    code: i32,
    report: serde_json::Value,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match &e {
            IoError::Parse { line, column, .. } => Failure {
                code: EXIT_PARSE,
                report: json!({"ok": false, "rule": e.rule(), "line": line, "column": column, "message": e.to_string()}),
            },
            IoError::Surface(s) => Failure {
                code: EXIT_INVALID,
                report: json!({"ok": false, "rule": e.rule(), "ids": s.ids(), "message": e.to_string()}),
            },
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        report: json!({"ok": false, "rule": "Usage", "message": message}),
    }
}

fn load(path: &Path) -> Result<StripedSurface, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        report: json!({"ok": false, "rule": "ReadError", "file": path.display().to_string(), "message": e.to_string()}),
    })?;
    Ok(parse(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn disconnected(e: crate::decompose::DecomposeError) -> Failure {
    Failure {
        code: EXIT_INVALID,
        report: json!({"ok": false, "rule": e.rule(), "message": e.to_string()}),
    }
}

fn execute(cmd: Command, out: &mut Vec<u8>) -> Result<i32, Failure> {
    match cmd {
        Command::Validate { file } => {
            let s = load(&file)?;
            let report = validate_class_f(&s);
            out.extend(to_json(&report).bytes());
            Ok(if report.ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Leafspace { file, format } => {
            let ls = build_leaf_space(&load(&file)?);
            match format {
                LeafFormat::Json => out.extend(to_json(&leaf_space_json(&ls)).bytes()),
                LeafFormat::Dot => out.extend(leaf_space_dot(&ls).bytes()),
            }
            Ok(EXIT_OK)
        }
        Command::Decompose { file, mode } => {
            let s = load(&file)?;
            let mode = match mode {
                Mode::Interior => CutMode::Interior,
                Mode::WithBoundary => CutMode::WithBoundary,
            };
            let d = decompose(&s, mode).map_err(disconnected)?;
            out.extend(to_json(&decomposition_report(&s, &d)).bytes());
            Ok(EXIT_OK)
        }
        Command::Canon { file } => {
            let c = canonicalize(&load(&file)?);
            let surface: serde_json::Value = serde_json::from_str(&serialize(&c)).expect("own output parses");
            out.extend(to_json(&json!({"code": canonical_code(&c).to_hex(), "surface": surface})).bytes());
            Ok(EXIT_OK)
        }
        Command::Iso { a, b } => {
            let (sa, sb) = (load(&a)?, load(&b)?);
            let iso = is_isomorphic(&sa, &sb);
            let report = json!({
                "isomorphic": iso,
                "code_a": canonical_code(&canonicalize(&sa)).to_hex(),
                "code_b": canonical_code(&canonicalize(&sb)).to_hex(),
            });
            out.extend(to_json(&report).bytes());
            Ok(if iso { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Realize {
            file,
            component,
            samples,
            depth,
            side,
        } => {
            let s = load(&file)?;
            let d = decompose(&s, CutMode::WithBoundary).map_err(disconnected)?;
            let by_strip = s
                .strip_index(&component)
                .and_then(|i| d.components.iter().position(|c| c.contains_strip(i)));
            let idx = by_strip
                .or_else(|| component.parse::<usize>().ok().filter(|&k| k < d.components.len()))
                .ok_or_else(|| usage(format!("no component {component:?}")))?;
            let comp = &d.components[idx];
            let ls = build_leaf_space(&s);
            let invalid = |message: String| Failure {
                code: EXIT_INVALID,
                report: json!({"ok": false, "rule": "NotOpenStripComponent", "message": message}),
            };
            let closures = component_closures(&s, &ls, comp).map_err(|e| invalid(e.to_string()))?;
            let closure = match side {
                HalfSide::Lower => &closures.lower,
                HalfSide::Upper => &closures.upper,
            };
            let samples = samples.max(2);
            let r =
                realize_half_strip(&s, comp, closure, depth, samples.max(16)).map_err(|e| invalid(e.to_string()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x_in", "y_in", "x_out", "y_out", "leaf_id"])
                .expect("in-memory write");
            let mut row = |x: f64, y: f64| {
                if let Some((u, v)) = r.eta.eval(x, y) {
                    let cells = [
                        x.to_string(),
                        y.to_string(),
                        u.to_string(),
                        v.to_string(),
                        r.leaf_id(u, v),
                    ];
                    w.write_record(&cells).expect("in-memory write");
                }
            };
            for &(a, b) in &r.chart.base {
                for j in 0..samples {
                    row(a + (b - a) * (j as f64 + 0.5) / samples as f64, -1.0);
                }
            }
            let xmax = if r.chart.base.is_empty() {
                1.0
            } else {
                2.0 * r.chart.base.len() as f64
            };
            for i in 1..=samples {
                let y = -1.0 + i as f64 / samples as f64;
                for j in 0..samples {
                    row(-1.0 + (xmax + 1.0) * j as f64 / (samples - 1) as f64, y);
                }
            }
            out.extend(w.into_inner().expect("in-memory flush"));
            Ok(EXIT_OK)
        }
        Command::Render { file, format } => {
            let s = load(&file)?;
            match format {
                RenderFormat::Svg => out.extend(surface_svg(&s).bytes()),
                RenderFormat::Dot => out.extend(leaf_space_dot(&build_leaf_space(&s)).bytes()),
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if help {
                let _ = out.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(text.as_bytes());
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    match execute(cli.command, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(&buf);
            code
        }
        Err(f) => {
            let _ = err.write_all(to_json(&f.report).as_bytes());
            f.code
        }
    }
}
