use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use chromsp::atlas::{render, RenderSpec};
use chromsp::certify::{certify, MethodChoice, ZeroFreeCertificate};
use chromsp::escape::{count_zeros_in_disk, escape_search, EscapeVerdict};
use chromsp::leafjoin::{activity_search, table_sweep, zero_hunt_leafjoined, HuntOptions, TableRow, DEFAULT_THETA_GRID};
use chromsp::sp::{pair_polys, parse};
use chromsp::{Cx, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chromsp", version, about = "Chromatic polynomials of series-parallel graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the pixel atlas to a binary PPM image.
    Render {
        #[arg(long)]
        out: PathBuf,
        /// Optional per-pixel NDJSON dump.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 1001)]
        width: usize,
        #[arg(long, default_value_t = 1001)]
        height: usize,
        #[arg(long, value_parser = parse_cx, default_value = "0,-1", allow_hyphen_values = true)]
        lower_left: Cx,
        #[arg(long, value_parser = parse_cx, default_value = "2,1", allow_hyphen_values = true)]
        upper_right: Cx,
        /// Ascending escape budgets, one per blue shade.
        #[arg(long, value_delimiter = ',', default_value = "75,150,300")]
        depths: Vec<u64>,
        #[arg(long, default_value_t = 1e-6)]
        orange_slack: f64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Search for an escaping interaction at q.
    Escape {
        #[arg(long, value_parser = parse_cx, allow_hyphen_values = true)]
        q: Cx,
        #[arg(long, default_value_t = 300)]
        budget: u64,
        #[arg(long, value_delimiter = ',', default_value = "75,150,300")]
        depths: Vec<u64>,
    },
    /// Look for a zero-free disk certificate at q.
    Certify {
        #[arg(long, value_parser = parse_cx, allow_hyphen_values = true)]
        q: Cx,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Print the chromatic polynomial and the (same, dif) pair of a term.
    Chromatic {
        /// A term such as "s(e,p(e,e))", "cycle(5)" or "theta(2,2)".
        term: String,
    },
    /// Count zeros of the chromatic polynomial of a term inside a disk.
    Zeros {
        term: String,
        #[arg(long, value_parser = parse_cx, allow_hyphen_values = true)]
        center: Cx,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
    },
    /// Neutral-fixed-point activity search on the alternating (d1, d2) tree.
    Activity {
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
        #[arg(long, default_value_t = DEFAULT_THETA_GRID)]
        theta_grid: usize,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Newton search for zeros of alternating leaf-joined trees.
    Zerohunt {
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
        /// Inclusive depth range such as "2..8", or a single depth.
        #[arg(long, value_parser = parse_range, default_value = "2..8")]
        depths: (u32, u32),
        /// Newton seed; defaults to the activity search result.
        #[arg(long, value_parser = parse_cx, allow_hyphen_values = true)]
        seed: Option<Cx>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Recompute the active parameters with Re q > Δ as CSV.
    Table {
        #[arg(long, default_value_t = 4)]
        delta_min: u32,
        #[arg(long, default_value_t = 45)]
        delta_max: u32,
        #[arg(long, default_value_t = DEFAULT_THETA_GRID)]
        theta_grid: usize,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Real01,
    Real3227,
    NearOne,
    General,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Real01 => MethodChoice::Real01,
            MethodArg::Real3227 => MethodChoice::Real3227,
            MethodArg::NearOne => MethodChoice::NearOne,
            MethodArg::General => MethodChoice::General,
        }
    }
}

fn parse_cx(s: &str) -> Result<Cx, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Cx::new(num(re)?, 0.0)),
        [re, im] => Ok(Cx::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad depth {t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let d = num(s)?;
            (d, d)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn pair(z: Cx) -> Value {
    json!([z.re, z.im])
}

fn escape_json(q: Cx, v: &EscapeVerdict) -> Value {
    match v.witness() {
        Some(w) => json!({
            "q": pair(q),
            "status": v.status(),
            "word": w.word,
            "value": pair(w.value),
            "kind": w.kind,
            "budget_used": w.budget_used,
        }),
        None => json!({
            "q": pair(q),
            "status": v.status(),
            "word": Value::Null,
            "value": Value::Null,
            "kind": Value::Null,
            "budget_used": Value::Null,
        }),
    }
}

fn certificate_json(c: &ZeroFreeCertificate) -> Value {
    json!({
        "q": pair(c.q),
        "status": "certified",
        "method": c.method,
        "center": pair(c.disk.center),
        "radius": c.disk.radius,
        "margins": c.margins,
        "slack": c.slack(),
    })
}

fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from(TableRow::CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv());
        s.push('\n');
    }
    s
}

fn emit(out: &mut impl Write, v: &Value) -> Result<(), Error> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn run(cmd: Command) -> Result<(), Error> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Render { out: path, data, width, height, lower_left, upper_right, depths, orange_slack, workers } => {
            let spec = RenderSpec {
                lower_left,
                upper_right,
                width_px: width,
                height_px: height,
                blue_depths: depths,
                orange_slack,
                workers,
            };
            let summary = render(&spec, &path, data.as_deref())?;
            emit(&mut out, &serde_json::to_value(summary).map_err(|e| Error::Internal(e.to_string()))?)
        }
        Command::Escape { q, budget, depths } => {
            let v = escape_search(q, budget, &depths)?;
            emit(&mut out, &escape_json(q, &v))
        }
        Command::Certify { q, method } => match certify(q, method.into()) {
            Ok(c) => emit(&mut out, &certificate_json(&c)),
            Err(Error::NotFound { best_slack }) => {
                emit(&mut out, &json!({"q": pair(q), "status": "not_found", "best_slack": best_slack}))
            }
            Err(e) => Err(e),
        },
        Command::Chromatic { term } => {
            let g = parse(&term)?;
            let p = pair_polys(&g)?;
            emit(
                &mut out,
                &json!({
                    "term": term,
                    "edges": u64::try_from(g.edge_count()).unwrap_or(u64::MAX),
                    "vertices": u64::try_from(g.vertex_count()).unwrap_or(u64::MAX),
                    "z": p.z().to_string(),
                    "same": p.same.to_string(),
                    "dif": p.dif.to_string(),
                }),
            )
        }
        Command::Zeros { term, center, radius, samples } => {
            let g = parse(&term)?;
            let count = count_zeros_in_disk(&g, center, radius, samples)?;
            emit(&mut out, &json!({"term": term, "center": pair(center), "radius": radius, "zeros": count}))
        }
        Command::Activity { d1, d2, theta_grid, workers } => {
            let p = activity_search(d1, d2, theta_grid, workers)?;
            emit(
                &mut out,
                &json!({
                    "d1": p.d1,
                    "d2": p.d2,
                    "theta": p.theta,
                    "lambda": pair(p.lambda),
                    "z_fixed": pair(p.z_fixed),
                    "multiplier": pair(p.multiplier),
                    "q": pair(p.q),
                }),
            )
        }
        Command::Zerohunt { d1, d2, depths, seed, workers } => {
            let seed = match seed {
                Some(s) => s,
                None => activity_search(d1, d2, DEFAULT_THETA_GRID, workers)?.q,
            };
            let opts = HuntOptions { workers, ..HuntOptions::default() };
            let depth_list: Vec<u32> = (depths.0..=depths.1).collect();
            for rec in zero_hunt_leafjoined(d1, d2, &depth_list, seed, &opts)? {
                let base = json!({"d1": d1, "d2": d2, "depth": rec.depth, "kind": rec.kind, "edges": u64::try_from(rec.edges).unwrap_or(u64::MAX)});
                if rec.zeros.is_empty() {
                    let mut v = base.clone();
                    v["q_zero"] = Value::Null;
                    emit(&mut out, &v)?;
                }
                for z in &rec.zeros {
                    let mut v = base.clone();
                    v["q_zero"] = pair(z.q);
                    v["residual"] = json!(z.residual);
                    v["distance"] = json!(z.distance);
                    emit(&mut out, &v)?;
                }
            }
            Ok(())
        }
        Command::Table { delta_min, delta_max, theta_grid, workers } => {
            let rows = table_sweep(delta_min, delta_max, theta_grid, workers)?;
            out.write_all(table_csv(&rows).as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chromsp: {e}");
            match e {
                Error::Argument(_) | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
