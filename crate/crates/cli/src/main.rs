//! `thermo`: exact thermomajorization queries and thermal-process polytope
//! enumeration from the command line. Input is one JSON document; output is
//! JSON (or DOT, or SVG for `render`).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thermo_core::polytope::decomposition_strategies;
use thermo_core::transport::{all_plane_orders, biplanarity_tests, forest_of};
use thermo_core::{
    are_adjacent_extremals, build_curve, enumerate_extremal_tps, extremal_states, face_signature,
    format_rational, hull_membership_oracle, is_achievable, is_interior, thermomajorizes,
    tightly_thermomajorizes, to_transportation, tp_from_pair, EnumerationOptions, Error,
    ThermalProcess, TransportationMatrix,
};

mod input;
mod output;
mod svg;

#[derive(Parser)]
#[command(
    name = "thermo",
    version,
    about = "Exact thermomajorization geometry of thermal processes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input document path; `-` or omitted reads standard input.
    #[arg(value_name = "INPUT", conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Input document given inline.
    #[arg(long, value_name = "DOCUMENT")]
    json: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Add approximate decimal `<field>_float` entries next to exact ones.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct Enumeration {
    /// Worker threads for vertex enumeration.
    #[arg(long, env = "THERMO_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Abort enumeration after this many search states.
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
}

impl Enumeration {
    fn options(&self) -> EnumerationOptions {
        EnumerationOptions {
            jobs: self.jobs.max(1),
            max_states: self.max_states,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Thermomajorization curve of `state` under `context`.
    Curve {
        #[command(flatten)]
        io: Io,
    },
    /// Achievability of `target` from `init`, tightness and contact elbows.
    Check {
        #[command(flatten)]
        io: Io,
    },
    /// Extremal states reachable from `init` and the edges between them.
    Extremals {
        #[command(flatten)]
        io: Io,
        /// List every valid segment order of each state.
        #[arg(long)]
        all_orders: bool,
    },
    /// Convex decomposition of `target` into extremal states of `init`.
    Decompose {
        #[command(flatten)]
        io: Io,
        /// transposition-split or face-descent.
        #[arg(long, default_value = "transposition-split")]
        strategy: String,
    },
    /// Extremal thermal process taking `init` to the extremal `target`.
    TpFromPair {
        #[command(flatten)]
        io: Io,
    },
    /// All extremal thermal processes of `context` with biplanarity flags.
    EnumerateTps {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        enumeration: Enumeration,
        /// chain or plane-orders.
        #[arg(long, default_value = "chain")]
        biplanarity: String,
        /// Emit the support forests as Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Extremality and biplanarity of a transportation `matrix`, or of a
    /// thermal `process` under `context`.
    Classify {
        #[command(flatten)]
        io: Io,
        /// chain or plane-orders.
        #[arg(long, default_value = "chain")]
        biplanarity: String,
        /// List every non-crossing pair of side orders.
        #[arg(long)]
        all_orders: bool,
        /// Emit the support forest as Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Hull-membership verdict from enumerated processes, compared with
    /// the curve criterion.
    Oracle {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        enumeration: Enumeration,
    },
    /// SVG diagram of the curves of `states` (or `init`/`target`/`state`).
    Render {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 640)]
        width: u32,
        #[arg(long, default_value_t = 520)]
        height: u32,
    },
}

/// Anything that stops a command. `Input` covers malformed invocations and
/// documents (exit 2); `Domain` covers violated preconditions (exit 1).
pub enum Failure {
    Input(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownStrategy { .. } => Failure::Input(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

impl Failure {
    fn report(&self) -> ExitCode {
        let (kind, message, code) = match self {
            Failure::Input(m) => ("malformed_input", m.clone(), 2),
            Failure::Domain(e) => (e.kind(), e.to_string(), 1),
        };
        let obj = json!({ "error": { "kind": kind, "message": message } });
        eprintln!("{obj}");
        ExitCode::from(code)
    }
}

enum Rendered {
    Json(Value),
    Text(String),
}

fn emit(io: &Io, out: Rendered) -> Result<(), Failure> {
    let text = match out {
        Rendered::Json(mut v) => {
            if io.float {
                output::annotate_floats(&mut v);
            }
            let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Rendered::Text(s) => s,
    };
    let written = match &io.output {
        Some(p) if p != Path::new("-") => std::fs::write(p, text),
        _ => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Curve { io } => {
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let curve = build_curve(&ctx, &doc.state()?)?;
            emit(&io, Rendered::Json(output::curve(&curve)))
        }
        Command::Check { io } => {
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let (p, r) = (doc.init()?, doc.target()?);
            let init = build_curve(&ctx, &p)?;
            let target = build_curve(&ctx, &r)?;
            let achievable = thermomajorizes(&init, &target)?;
            let (tight, interior, contacts) = if achievable {
                let face = face_signature(&init, &target)?;
                let contacts: Vec<Value> = face.contacts.iter().map(output::point).collect();
                (
                    tightly_thermomajorizes(&init, &target)?,
                    face.is_interior(init.end()),
                    contacts,
                )
            } else {
                (false, false, Vec::new())
            };
            emit(
                &io,
                Rendered::Json(json!({
                    "achievable": achievable,
                    "tight": tight,
                    "interior": interior,
                    "contacts": contacts,
                })),
            )
        }
        Command::Extremals { io, all_orders } => {
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let p = doc.init()?;
            let states = extremal_states(&ctx, &p)?;
            let mut listed = Vec::with_capacity(states.len());
            for e in &states {
                let mut v = output::extremal(e);
                if all_orders {
                    v["orders"] = json!(build_curve(&ctx, &e.state)?.valid_orders());
                }
                listed.push(v);
            }
            // Edges are only well defined when the initial slopes differ.
            let adjacency = if build_curve(&ctx, &p)?.has_distinct_slopes() {
                let mut edges = Vec::new();
                for i in 0..states.len() {
                    for j in i + 1..states.len() {
                        if are_adjacent_extremals(&ctx, &p, &states[i], &states[j])? {
                            edges.push(json!([i, j]));
                        }
                    }
                }
                Value::Array(edges)
            } else {
                Value::Null
            };
            emit(
                &io,
                Rendered::Json(json!({ "states": listed, "adjacency": adjacency })),
            )
        }
        Command::Decompose { io, strategy } => {
            let strategy = decomposition_strategies().get(&strategy)?;
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let (p, r) = (doc.init()?, doc.target()?);
            let d = strategy.decompose(&ctx, &p, &r)?;
            emit(&io, Rendered::Json(output::decomposition(&d)))
        }
        Command::TpFromPair { io } => {
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let (p, r) = (doc.init()?, doc.target()?);
            let t = tp_from_pair(&ctx, &p, &r)?;
            let transport = to_transportation(&ctx, &t)?;
            let biplanar = thermo_core::is_biplanar(&transport)?;
            emit(
                &io,
                Rendered::Json(json!({
                    "process": output::matrix(t.matrix()),
                    "transportation": output::matrix(transport.matrix()),
                    "biplanar": biplanar,
                })),
            )
        }
        Command::EnumerateTps {
            io,
            enumeration,
            biplanarity,
            dot,
        } => {
            let test = biplanarity_tests().get(&biplanarity)?;
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let vertices = enumerate_extremal_tps(&ctx, &enumeration.options())?;
            if dot {
                let text: String = vertices.iter().map(|v| v.transport.to_dot()).collect();
                return emit(&io, Rendered::Text(text));
            }
            let mut listed = Vec::with_capacity(vertices.len());
            for v in &vertices {
                listed.push(json!({
                    "process": output::matrix(v.process.matrix()),
                    "transportation": output::matrix(v.transport.matrix()),
                    "biplanar": test.is_biplanar(&v.transport)?,
                }));
            }
            emit(&io, Rendered::Json(Value::Array(listed)))
        }
        Command::Classify {
            io,
            biplanarity,
            all_orders,
            dot,
        } => {
            let test = biplanarity_tests().get(&biplanarity)?;
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let transport = match (doc.matrix()?, doc.process()?) {
                (Some(m), None) => TransportationMatrix::from_matrix(m)?,
                (None, Some(m)) => {
                    let ctx = doc.context()?;
                    to_transportation(&ctx, &ThermalProcess::new(&ctx, m)?)?
                }
                _ => {
                    return Err(Failure::Input(
                        "classify needs exactly one of `matrix` or `process`".into(),
                    ))
                }
            };
            if dot {
                return emit(&io, Rendered::Text(transport.to_dot()));
            }
            let extremal = transport.is_extremal();
            let (biplanar, forest, orders) = if extremal {
                let orders = if all_orders {
                    Value::Array(
                        all_plane_orders(&transport)?
                            .iter()
                            .map(output::plane_orders)
                            .collect(),
                    )
                } else {
                    thermo_core::plane_orders(&transport)?
                        .as_ref()
                        .map_or(Value::Null, output::plane_orders)
                };
                (
                    json!(test.is_biplanar(&transport)?),
                    output::forest(&forest_of(&transport)?),
                    orders,
                )
            } else {
                (Value::Null, Value::Null, Value::Null)
            };
            emit(
                &io,
                Rendered::Json(json!({
                    "extremal": extremal,
                    "biplanar": biplanar,
                    "forest": forest,
                    "plane_orders": orders,
                    "row_margins": output::vector(transport.row_margins()),
                    "col_margins": output::vector(transport.col_margins()),
                })),
            )
        }
        Command::Oracle { io, enumeration } => {
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let (p, r) = (doc.init()?, doc.target()?);
            let oracle = hull_membership_oracle(&ctx, &p, &r, &enumeration.options())?;
            let achievable = is_achievable(&ctx, &p, &r)?;
            let interior = if achievable {
                json!(is_interior(&ctx, &p, &r)?)
            } else {
                Value::Null
            };
            emit(
                &io,
                Rendered::Json(json!({
                    "oracle": oracle,
                    "achievable": achievable,
                    "agree": oracle == achievable,
                    "interior": interior,
                })),
            )
        }
        Command::Render { io, width, height } => {
            let mut doc = input::load(io.input.as_deref(), io.json.as_deref())?;
            let ctx = doc.context()?;
            let mut curves = Vec::new();
            for (k, p) in doc.all_states()?.iter().enumerate() {
                let values: Vec<String> = p.as_slice().iter().map(format_rational).collect();
                let label = format!("state {k}: ({})", values.join(", "));
                curves.push((label, build_curve(&ctx, p)?));
            }
            let canvas = svg::Canvas { width, height };
            emit(&io, Rendered::Text(canvas.render(&ctx, &curves)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            return Failure::Input(message.trim_end().to_owned()).report();
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
