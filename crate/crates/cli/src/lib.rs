//! Command-line front end for `hyperpd`. [`run`] takes the arguments and
//! returns what the binary would print, so the commands can be driven
//! in-process.

use std::{ffi::OsString, fmt::Write as _, fs, path::PathBuf};

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use hyperpd::{
  coord::{coordinatize, Labeling, LabelingDoc},
  hypergraph::HypergraphDoc,
  ideal::IdealDoc,
  lattice::{lattice_from_hypergraph, lcm_lattice, union_edge_elements, LatticeDoc, SetFamilyLattice},
  oracle::{betti_table, betti_table_of_lattice, hypergraph_betti_table, BettiTable},
  pd::{pd, PdOptions, PdResult},
  reduction::{check_preconditions, full_reduce, ReduceOptions, ReductionTrace},
  Hypergraph, MonomialIdeal,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
  name = "hyperpd",
  version,
  about = "Projective dimension of square-free monomial ideals through dual hypergraphs"
)]
struct Cli {
  #[command(subcommand)]
  command: Command,
}

#[derive(Subcommand)]
enum Command {
  /// Projective dimension of R/I, with the per-component breakdown.
  Pd {
    #[command(flatten)]
    io: Io,
    /// Reject higher edges that are not unions of other edges.
    #[arg(long)]
    strict: bool,
    /// Also run the Betti oracle on every component and require agreement.
    #[arg(long)]
    verify: bool,
    /// Include the reduction trace.
    #[arg(long)]
    trace: bool,
  },
  /// Dual hypergraph of an ideal.
  Hypergraph {
    #[command(flatten)]
    io: Io,
  },
  /// LCM-lattice of an ideal, or the edge-intersection lattice of a hypergraph.
  Lattice {
    #[command(flatten)]
    io: Io,
  },
  /// Apply every pd-preserving reduction and print the result with its trace.
  Reduce {
    #[command(flatten)]
    io: Io,
    #[arg(long)]
    strict: bool,
  },
  /// Total and multigraded Betti numbers from the lattice.
  Betti {
    #[command(flatten)]
    io: Io,
  },
  /// Ideal of a labelled lattice.
  Coordinatize {
    #[command(flatten)]
    io: Io,
    /// Labelling JSON (path or inline).
    #[arg(long, value_name = "PATH|JSON")]
    labels: String,
  },
  /// Separation, bush hypotheses and lattice sanity report.
  Check {
    #[command(flatten)]
    io: Io,
  },
}

#[derive(Args)]
struct Io {
  /// Input file, or the input itself (e.g. "ab, bcg, cdg").
  #[arg(long = "in", value_name = "PATH|TEXT")]
  input: String,
  /// Input format; guessed from the content when omitted.
  #[arg(long, value_enum)]
  format: Option<Format>,
  #[arg(long, value_enum, default_value_t = Output::Json)]
  output: Output,
  /// Characteristic of the coefficient field for oracle runs.
  #[arg(long = "char", env = "HYPERPD_CHAR", default_value_t = 2)]
  field_char: u32,
  /// Write the result here instead of standard output.
  #[arg(long, value_name = "PATH")]
  out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
  IdealText,
  IdealJson,
  HypergraphJson,
  LatticeJson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
  Json,
  Dot,
  Text,
}

enum Input {
  Ideal(MonomialIdeal),
  Hypergraph(Hypergraph),
  Lattice(SetFamilyLattice),
}

enum Failure {
  Domain { kind: &'static str, message: String },
  Usage(clap::Error),
}

impl From<hyperpd::Error> for Failure {
  fn from(e: hyperpd::Error) -> Self {
    Failure::Domain { kind: e.kind(), message: e.to_string() }
  }
}

fn document(e: serde_json::Error) -> Failure {
  hyperpd::Error::Document(e.to_string()).into()
}

fn usage<T>(msg: &str) -> Result<T, Failure> {
  Err(Failure::Usage(Cli::command().error(ErrorKind::ArgumentConflict, msg)))
}

fn read_arg(arg: &str) -> Result<String, Failure> {
  let path = std::path::Path::new(arg);
  if path.is_file() {
    fs::read_to_string(path).map_err(|e| Failure::Domain { kind: "io", message: format!("{arg}: {e}") })
  } else {
    Ok(arg.to_string())
  }
}

fn guess_format(text: &str) -> Result<Format, Failure> {
  if !text.trim_start().starts_with('{') {
    return Ok(Format::IdealText);
  }
  let v: Value = serde_json::from_str(text).map_err(document)?;
  if v.get("mu").is_some() {
    Ok(Format::HypergraphJson)
  } else if v.get("atoms").is_some() {
    Ok(Format::LatticeJson)
  } else if v.get("generators").is_some() {
    Ok(Format::IdealJson)
  } else {
    Err(hyperpd::Error::Document("cannot tell the input format; pass --format".into()).into())
  }
}

fn load(io: &Io) -> Result<Input, Failure> {
  let text = read_arg(&io.input)?;
  let input = match io.format.map_or_else(|| guess_format(&text), Ok)? {
    Format::IdealText => Input::Ideal(hyperpd::parse_ideal(text.trim())?),
    Format::IdealJson => {
      Input::Ideal(MonomialIdeal::from_doc(&serde_json::from_str::<IdealDoc>(&text).map_err(document)?)?)
    }
    Format::HypergraphJson => Input::Hypergraph(Hypergraph::from_doc(
      &serde_json::from_str::<HypergraphDoc>(&text).map_err(document)?,
    )?),
    Format::LatticeJson => Input::Lattice(SetFamilyLattice::from_doc(
      &serde_json::from_str::<LatticeDoc>(&text).map_err(document)?,
    )?),
  };
  if let Input::Ideal(i) = &input {
    for d in i.dropped() {
      eprintln!("warning: dropped non-minimal generator with support {d}");
    }
  }
  Ok(input)
}

fn hypergraph_of(input: Input) -> Result<Hypergraph, Failure> {
  match input {
    Input::Ideal(i) => Ok(Hypergraph::dual_hypergraph(&i)?),
    Input::Hypergraph(h) => Ok(h),
    Input::Lattice(_) => usage("this command needs an ideal or a hypergraph, not a lattice"),
  }
}

fn pretty(v: &Value) -> String {
  serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn trace_json(t: &ReductionTrace) -> Value {
  serde_json::to_value(&t.steps).expect("serializable")
}

fn hypergraph_text(h: &Hypergraph) -> String {
  let mut s = format!("vertices {}\n", h.vertex_set());
  for e in h.edges() {
    let names = h.edge_labels(e).map(|l| l.iter().cloned().collect::<Vec<_>>().join(",")).unwrap_or_default();
    if names.is_empty() {
      let _ = writeln!(s, "{e}");
    } else {
      let _ = writeln!(s, "{names}: {e}");
    }
  }
  s
}

fn pd_output(r: &PdResult, io: &Io, with_trace: bool) -> String {
  match io.output {
    Output::Json => {
      let mut v = serde_json::to_value(r).expect("serializable");
      v["breakdown"] = json!(r.breakdown());
      v["reduced"] = serde_json::to_value(r.reduced.to_doc()).expect("serializable");
      if with_trace {
        v["trace"] = trace_json(&r.trace);
      }
      pretty(&v)
    }
    Output::Text => {
      let parts: Vec<String> = r.breakdown().iter().map(usize::to_string).collect();
      let mut s = format!("pd {}\ncomponents {}\n", r.pd, parts.join(" + "));
      for c in &r.per_component {
        let method = serde_json::to_value(c.method).expect("serializable");
        let _ = write!(s, "  {} {} {:?}", c.pd, method.as_str().unwrap_or_default(), c.vertices);
        if let Some(o) = c.oracle {
          let _ = write!(s, " oracle {o}");
        }
        s.push('\n');
      }
      if with_trace {
        s.push_str(&r.trace.to_json_lines());
      }
      s
    }
    Output::Dot => r.reduced.to_dot(),
  }
}

fn betti_output(t: &BettiTable, io: &Io) -> String {
  match io.output {
    Output::Json => pretty(&json!({
      "char": t.field_char,
      "pd": t.pd,
      "totals": t.totals,
      "multidegrees": t.multidegrees(),
      "intervals_checked": t.intervals_checked,
    })),
    Output::Text => {
      let mut s = String::new();
      for (i, b) in &t.totals {
        let _ = writeln!(s, "beta_{i} {b}");
      }
      let _ = writeln!(s, "pd {}", t.pd);
      s
    }
    Output::Dot => unreachable!("rejected before dispatch"),
  }
}

fn lattice_output(l: &SetFamilyLattice, io: &Io) -> String {
  match io.output {
    Output::Json => pretty(&json!(l.to_doc())),
    Output::Dot => l.to_dot(),
    Output::Text => l.elements().iter().map(|e| format!("{e}\n")).collect(),
  }
}

fn hypergraph_output(h: &Hypergraph, io: &Io) -> String {
  match io.output {
    Output::Json => pretty(&json!(h.to_doc())),
    Output::Dot => h.to_dot(),
    Output::Text => hypergraph_text(h),
  }
}

fn check_report(input: Input) -> Result<Value, Failure> {
  let (h, l) = match input {
    Input::Lattice(l) => {
      return Ok(json!({ "lattice_elements": l.len(), "meets_of_irreducibles": l.meets_of_irreducibles() }))
    }
    other => {
      let h = hypergraph_of(other)?;
      let l = lattice_from_hypergraph(&h).ok();
      (h, l)
    }
  };
  let pre = check_preconditions(&h);
  let shapes: Vec<Value> = h
    .skeleton(1)
    .components()
    .iter()
    .filter(|c| c.num_vertices() > 1)
    .map(|c| {
      let r = c.classify_shape().expect("components are connected");
      json!({ "vertices": c.vertex_set().to_vec(), "kind": r.kind, "joints": r.joints })
    })
    .collect();
  Ok(json!({
    "vertices": h.num_vertices(),
    "edges": h.num_edges(),
    "separated": h.is_separated(),
    "separation_witness": h.separation_witness(),
    "connected": h.is_connected(),
    "closed_vertices": h.closed_vertices().to_vec(),
    "preconditions": pre,
    "preconditions_hold": pre.all(),
    "union_edges": union_edge_elements(&h).iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
    "skeleton_components": shapes,
    "lattice_elements": l.as_ref().map(SetFamilyLattice::len),
    "meets_of_irreducibles": l.as_ref().map(SetFamilyLattice::meets_of_irreducibles),
  }))
}

fn value_text(v: &Value) -> String {
  let mut s = String::new();
  if let Value::Object(m) = v {
    for (k, x) in m {
      let _ = writeln!(s, "{k}: {x}");
    }
  }
  s
}

fn dispatch(cli: Cli) -> Result<(String, Option<PathBuf>), Failure> {
  let (text, out) = match cli.command {
    Command::Betti { io } | Command::Coordinatize { io, .. } | Command::Check { io }
      if io.output == Output::Dot =>
    {
      return usage("this command has no DOT output");
    }
    Command::Pd { io, strict, verify, trace } => {
      let h = hypergraph_of(load(&io)?)?;
      let mut opts = PdOptions { verify, field_char: io.field_char, ..Default::default() };
      opts.reduce.strict = strict;
      let r = pd(&h, opts)?;
      (pd_output(&r, &io, trace), io.out)
    }
    Command::Hypergraph { io } => {
      let h = hypergraph_of(load(&io)?)?;
      (hypergraph_output(&h, &io), io.out)
    }
    Command::Lattice { io } => {
      let l = match load(&io)? {
        Input::Ideal(i) => lcm_lattice(&i)?,
        Input::Hypergraph(h) => lattice_from_hypergraph(&h)?,
        Input::Lattice(l) => l,
      };
      (lattice_output(&l, &io), io.out)
    }
    Command::Reduce { io, strict } => {
      let h = hypergraph_of(load(&io)?)?;
      let (r, t) = full_reduce(&h, ReduceOptions { strict, ..Default::default() })?;
      let text = match io.output {
        Output::Json => pretty(&json!({ "hypergraph": r.to_doc(), "trace": trace_json(&t) })),
        Output::Dot => r.to_dot(),
        Output::Text => t.to_json_lines() + &hypergraph_text(&r),
      };
      (text, io.out)
    }
    Command::Betti { io } => {
      let t = match load(&io)? {
        Input::Ideal(i) => betti_table(&i, io.field_char)?,
        Input::Hypergraph(h) => hypergraph_betti_table(&h, io.field_char)?,
        Input::Lattice(l) => betti_table_of_lattice(&l, io.field_char)?,
      };
      (betti_output(&t, &io), io.out)
    }
    Command::Coordinatize { io, labels } => {
      let Input::Lattice(l) = load(&io)? else { return usage("coordinatize needs lattice-json input") };
      let doc: LabelingDoc = serde_json::from_str(&read_arg(&labels)?).map_err(document)?;
      let ideal = coordinatize(&l, &Labeling::from_doc(&doc)?)?;
      let text = match io.output {
        Output::Json => pretty(&json!({
          "ideal": ideal.to_string(),
          "variables": ideal.ring.names(),
          "generators": ideal.generators.iter().map(|g| &g.0).collect::<Vec<_>>(),
          "square_free": ideal.is_square_free(),
        })),
        Output::Text => ideal.to_string() + "\n",
        Output::Dot => unreachable!("rejected before dispatch"),
      };
      (text, io.out)
    }
    Command::Check { io } => {
      let report = check_report(load(&io)?)?;
      let text = match io.output {
        Output::Json => pretty(&report),
        Output::Text => value_text(&report),
        Output::Dot => unreachable!("rejected before dispatch"),
      };
      (text, io.out)
    }
  };
  Ok((text, out))
}

/// What one invocation printed, and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
  pub code: u8,
  pub stdout: String,
  pub stderr: String,
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
  I: IntoIterator<Item = T>,
  T: Into<OsString> + Clone,
{
  let argv = std::iter::once(OsString::from("hyperpd")).chain(args.into_iter().map(Into::into));
  let result = Cli::try_parse_from(argv).map_err(Failure::Usage).and_then(dispatch);
  let mut stderr = String::new();
  let (code, stdout) = match result {
    Ok((text, None)) => (0, text),
    Ok((text, Some(path))) => match fs::write(&path, text) {
      Ok(()) => (0, String::new()),
      Err(e) => {
        stderr = json!({ "error": "io", "message": format!("{}: {e}", path.display()) }).to_string() + "\n";
        (1, String::new())
      }
    },
    Err(Failure::Domain { kind, message }) => {
      stderr = json!({ "error": kind, "message": message }).to_string() + "\n";
      (1, String::new())
    }
    Err(Failure::Usage(e)) => {
      let rendered = e.render().to_string();
      match e.exit_code() as u8 {
        0 => (0, rendered),
        code => {
          stderr = rendered;
          (code, String::new())
        }
      }
    }
  };
  Outcome { code, stdout, stderr }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn format_guessing() {
    assert!(matches!(guess_format("ab, bc"), Ok(Format::IdealText)));
    assert!(matches!(guess_format(r#"{"mu": 2, "edges": [[1], [2]]}"#), Ok(Format::HypergraphJson)));
    assert!(matches!(guess_format(r#"{"atoms": 1, "elements": [[], [1]]}"#), Ok(Format::LatticeJson)));
    assert!(matches!(guess_format(r#"{"variables": ["a"], "generators": [[0]]}"#), Ok(Format::IdealJson)));
    assert!(guess_format(r#"{"x": 1}"#).is_err());
  }

  #[test]
  fn exit_codes() {
    assert_eq!(run(["pd", "--in", "ab, bc"]).code, 0);
    assert_eq!(run(["pd", "--in", "a^3"]).code, 1);
    assert_eq!(run(["pd", "--in", "ab", "--output", "svg"]).code, 2);
    let help = run(["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
  }

  #[test]
  fn text_outputs() {
    let out = run(["betti", "--in", "ab, bc", "--output", "text"]);
    assert_eq!(out.stdout, "beta_0 1\nbeta_1 2\nbeta_2 1\npd 2\n");
    let out = run(["pd", "--in", "ab, bc, cd", "--output", "text"]);
    assert!(out.stdout.starts_with("pd 2\n"), "{}", out.stdout);
  }
}
