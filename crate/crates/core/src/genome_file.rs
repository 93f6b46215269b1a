//! The `CGP1` plain-text genome format.
//!
//! ```text
//! CGP1
//! <node count>
//! <function> <in_a> <in_b> <param>     one line per node
//! ...
//! <out_h> <out_s> <out_v>
//! ```
//!
//! Readers accept any whitespace layout after the first two lines' tokens.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::genotype::{serialized_len, Genotype};

pub const MAGIC: &str = "CGP1";

pub fn to_cgp1(g: &Genotype) -> String {
    let mut s = String::new();
    writeln!(s, "{MAGIC}").unwrap();
    writeln!(s, "{}", g.node_count()).unwrap();
    for n in g.nodes() {
        writeln!(s, "{} {} {} {}", n.function.get(), n.in_a, n.in_b, n.param).unwrap();
    }
    let [h, sat, v] = g.outputs();
    writeln!(s, "{h} {sat} {v}").unwrap();
    s
}

/// Parse a `CGP1` document. `source` names the input in diagnostics.
pub fn parse_cgp1(text: &str, source: &str) -> Result<Genotype> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: source.to_string(),
        line,
        message,
    };
    // (line number, token)
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));

    match tokens.next() {
        Some((_, MAGIC)) => {}
        Some((line, other)) => {
            return Err(parse_err(line, format!("expected `{MAGIC}`, found `{other}`")))
        }
        None => return Err(parse_err(1, "empty genome file".into())),
    }
    let (count_line, n) = match tokens.next() {
        Some((line, t)) => (
            line,
            t.parse::<usize>()
                .map_err(|_| parse_err(line, format!("bad node count `{t}`")))?,
        ),
        None => return Err(parse_err(1, "missing node count".into())),
    };
    if n == 0 {
        return Err(parse_err(count_line, "node count must be at least 1".into()));
    }
    let expected = serialized_len(n);
    let mut values = Vec::with_capacity(expected);
    let mut lines = Vec::with_capacity(expected);
    for (line, t) in tokens {
        let v = t
            .parse::<i64>()
            .map_err(|_| parse_err(line, format!("bad integer `{t}`")))?;
        values.push(v);
        lines.push(line);
    }
    let last_line = lines.last().copied().unwrap_or(count_line);
    if values.len() != expected {
        return Err(parse_err(
            last_line,
            format!(
                "expected {expected} integers for {n} nodes, found {}",
                values.len()
            ),
        ));
    }
    Genotype::from_integers(&values).map_err(|e| match e {
        Error::Structure {
            position,
            location,
            message,
        } => parse_err(
            lines[position],
            format!("integer #{position} ({location}): {message}"),
        ),
        other => other,
    })
}

pub fn read_genome(path: impl AsRef<Path>) -> Result<Genotype> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_cgp1(&text, &path.display().to_string())
}

pub fn write_genome(path: impl AsRef<Path>, g: &Genotype) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_cgp1(g)).map_err(|e| Error::io(path, e))
}
