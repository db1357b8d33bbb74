use thiserror::Error;

use super::{CoxeterMatrix, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("label {label} on edge {i}-{j} is below 2")]
    LabelTooSmall { i: usize, j: usize, label: u32 },
    #[error("node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("edge {i}-{j} given conflicting labels {first} and {second}")]
    ConflictingEdge { i: usize, j: usize, first: Label, second: Label },
    #[error("unknown diagram type {0:?}")]
    UnknownType(String),
    #[error("{0}")]
    Invalid(String),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { line, column, message: message.into() }
}

/// Splits the source into statements, each a list of whitespace-separated
/// tokens carrying their 1-based line and column.
fn statements(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in line.split(';') {
            let mut tokens = Vec::new();
            let mut pos = 0;
            for word in piece.split_whitespace() {
                let at = piece[pos..].find(word).unwrap() + pos;
                pos = at + word.len();
                tokens.push(Token { text: word, column: offset + at + 1 });
            }
            if !tokens.is_empty() {
                out.push((lineno + 1, tokens));
            }
            offset += piece.len() + 1;
        }
    }
    out
}

/// Parses the line-oriented diagram format:
///
/// ```text
/// rank 4
/// edge 1 2 3
/// edge 3 4 inf    # comment
/// ```
///
/// Statements may also be separated by `;`. A source consisting of a
/// single `type X` statement expands a named diagram (see [`named_type`]).
pub fn parse_diagram(text: &str) -> Result<CoxeterMatrix, DiagramError> {
    let stmts = statements(text);
    let mut matrix: Option<CoxeterMatrix> = None;
    let mut from_type = false;
    for (line, toks) in &stmts {
        let line = *line;
        let head = &toks[0];
        match head.text {
            "rank" => {
                if matrix.is_some() {
                    return Err(syntax(line, head.column, "rank given twice"));
                }
                let [_, n] = toks.as_slice() else {
                    return Err(syntax(line, head.column, "expected `rank <n>`"));
                };
                let rank: usize =
                    n.text.parse().map_err(|_| syntax(line, n.column, format!("bad rank {:?}", n.text)))?;
                if rank == 0 {
                    return Err(syntax(line, n.column, "rank must be at least 1"));
                }
                matrix = Some(CoxeterMatrix::commuting(rank));
            }
            "type" => {
                if matrix.is_some() {
                    return Err(syntax(line, head.column, "type cannot follow other statements"));
                }
                let [_, name] = toks.as_slice() else {
                    return Err(syntax(line, head.column, "expected `type <name>`"));
                };
                matrix = Some(named_type(name.text)?);
                from_type = true;
            }
            "edge" => {
                let Some(m) = matrix.as_mut() else {
                    return Err(syntax(line, head.column, "edge before rank"));
                };
                if from_type {
                    return Err(syntax(line, head.column, "edges cannot extend a named type"));
                }
                let [_, a, b, l] = toks.as_slice() else {
                    return Err(syntax(line, head.column, "expected `edge <i> <j> <label>`"));
                };
                let node = |t: &Token| -> Result<usize, DiagramError> {
                    let v: usize =
                        t.text.parse().map_err(|_| syntax(line, t.column, format!("bad node index {:?}", t.text)))?;
                    if v == 0 || v > m.rank() {
                        return Err(DiagramError::NodeOutOfRange { node: v, rank: m.rank() });
                    }
                    Ok(v)
                };
                let (i, j) = (node(a)?, node(b)?);
                if i == j {
                    return Err(syntax(line, b.column, "edge joins a node to itself"));
                }
                let label = if l.text == "inf" {
                    Label::Infinite
                } else {
                    let v: u32 =
                        l.text.parse().map_err(|_| syntax(line, l.column, format!("bad label {:?}", l.text)))?;
                    if v < 2 {
                        return Err(DiagramError::LabelTooSmall { i, j, label: v });
                    }
                    Label::Finite(v)
                };
                let old = m.label(i - 1, j - 1);
                if old != Label::Finite(2) && old != label {
                    return Err(DiagramError::ConflictingEdge { i, j, first: old, second: label });
                }
                if label != Label::Finite(2) {
                    m.set_label(i - 1, j - 1, label);
                }
            }
            other => {
                return Err(syntax(line, head.column, format!("unknown statement {other:?}")));
            }
        }
    }
    matrix.ok_or_else(|| syntax(1, 1, "missing `rank` or `type` statement"))
}

fn path(rank: usize) -> CoxeterMatrix {
    let mut m = CoxeterMatrix::commuting(rank);
    for i in 1..rank {
        m.set_label(i - 1, i, Label::Finite(3));
    }
    m
}

fn finite_family(fam: char, n: usize) -> Option<CoxeterMatrix> {
    let mut m = path(n);
    match fam {
        'A' if n >= 1 => {}
        'B' | 'C' if n >= 2 => m.set_label(n - 2, n - 1, Label::Finite(4)),
        'B' | 'C' if n == 1 => {}
        'D' if n >= 4 => {
            m = path(n - 1);
            m = extend(&m, n - 3, Label::Finite(3));
        }
        'E' if (6..=8).contains(&n) => {
            m = extend(&path(n - 1), 2, Label::Finite(3));
        }
        'F' if n == 4 => m.set_label(1, 2, Label::Finite(4)),
        'G' if n == 2 => m.set_label(0, 1, Label::Finite(6)),
        'H' if (2..=5).contains(&n) => m.set_label(n - 2, n - 1, Label::Finite(5)),
        _ => return None,
    }
    Some(m)
}

/// Adds one node joined to `to` (zero-based) by `label`.
fn extend(m: &CoxeterMatrix, to: usize, label: Label) -> CoxeterMatrix {
    let n = m.rank();
    let mut out = CoxeterMatrix::commuting(n + 1);
    for i in 0..n {
        for j in i + 1..n {
            out.set_label(i, j, m.label(i, j));
        }
    }
    out.set_label(to, n, label);
    out
}

fn affine_family(fam: char, n: usize) -> Option<CoxeterMatrix> {
    let three = Label::Finite(3);
    Some(match fam {
        'A' if n == 1 => {
            let mut m = CoxeterMatrix::commuting(2);
            m.set_label(0, 1, Label::Infinite);
            m
        }
        'A' if n >= 2 => {
            let mut m = extend(&path(n), n - 1, three);
            m.set_label(0, n, three);
            m
        }
        'B' if n >= 3 => extend(&finite_family('B', n)?, 1, three),
        'C' if n >= 2 => extend(&finite_family('C', n)?, 0, Label::Finite(4)),
        'D' if n >= 4 => extend(&finite_family('D', n)?, 1, three),
        'E' if n == 6 => extend(&finite_family('E', 6)?, 5, three),
        'E' if n == 7 => extend(&finite_family('E', 7)?, 0, three),
        'E' if n == 8 => extend(&finite_family('E', 8)?, 6, three),
        'F' if n == 4 => extend(&finite_family('F', 4)?, 0, three),
        'G' if n == 2 => extend(&finite_family('G', 2)?, 0, three),
        _ => return None,
    })
}

/// Expands a named Coxeter type.
///
/// Accepted forms: `An`, `Bn`, `Cn`, `Dn`, `En`, `F4`, `G2`, `Hn`, `I2(m)`
/// (with `m` an integer or `inf`), and the affine `~Xn`. Underscores are
/// ignored, so `A_5` and `~E_8` also work.
///
/// Node numbering (one-based):
/// - `An`, `Bn`, `Cn`, `Hn`: path `1..n`; for B/C the label-4 edge is
///   `{n-1,n}`, for H the label-5 edge is `{n-1,n}`.
/// - `Dn`: path `1..n-2`, nodes `n-1` and `n` both attached to `n-2`.
/// - `En`: path `1..n-1`, node `n` attached to node 3.
/// - `F4`: `1-2=3-4`, the label-4 edge at `{2,3}`.
/// - `~Xn` has rank `n+1`; the added node is `n+1`. It closes the cycle
///   for `~An`, and attaches to node 2 for `~Bn` and `~Dn`, to node 1
///   (label 4) for `~Cn`, to 6, 1, 7 for `~E6`, `~E7`, `~E8`, and to node
///   1 for `~F4` and `~G2`. `~A1` is `I2(inf)`.
pub fn named_type(name: &str) -> Result<CoxeterMatrix, DiagramError> {
    let unknown = || DiagramError::UnknownType(name.to_string());
    let s: String = name.trim().chars().filter(|&c| c != '_').collect();
    let (affine, s) = match s.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    if let Some(arg) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        if affine {
            return Err(unknown());
        }
        let label = if arg == "inf" {
            Label::Infinite
        } else {
            match arg.parse::<u32>() {
                Ok(v) if v >= 2 => Label::Finite(v),
                _ => return Err(unknown()),
            }
        };
        let mut m = CoxeterMatrix::commuting(2);
        if label != Label::Finite(2) {
            m.set_label(0, 1, label);
        }
        return Ok(m);
    }
    let mut chars = s.chars();
    let fam = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let m = if affine { affine_family(fam, n) } else { finite_family(fam, n) };
    m.ok_or_else(unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let m = parse_diagram("rank 2; edge 1 2 3").unwrap();
        assert_eq!(m.label(0, 1), Label::Finite(3));
        let m = parse_diagram("rank 3\nedge 1 2 3\nedge 2 3 3\n").unwrap();
        assert_eq!(m, named_type("A3").unwrap());
        let m = parse_diagram("rank 2; edge 1 2 inf").unwrap();
        assert_eq!(m.label(1, 0), Label::Infinite);
        let m = parse_diagram("# header\nrank 3 # trailing\n\nedge 3 1 5").unwrap();
        assert_eq!(m.label(0, 2), Label::Finite(5));
        assert_eq!(m.label(0, 1), Label::Finite(2));
    }

    #[test]
    fn reports_errors() {
        match parse_diagram("rank 3\nedge 1 x 3") {
            Err(DiagramError::Syntax { line: 2, column: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_diagram("rank 2; edge 1 2 3; bogus") {
            Err(DiagramError::Syntax { line: 1, column: 21, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_diagram("rank 2; edge 1 2 1"), Err(DiagramError::LabelTooSmall { label: 1, .. })));
        assert!(matches!(parse_diagram("rank 2; edge 1 3 3"), Err(DiagramError::NodeOutOfRange { node: 3, rank: 2 })));
        assert!(matches!(parse_diagram("rank 2; edge 1 2 3; edge 2 1 4"), Err(DiagramError::ConflictingEdge { .. })));
        assert!(parse_diagram("rank 2; edge 1 2 3; edge 2 1 3").is_ok());
        assert!(parse_diagram("edge 1 2 3").is_err());
        assert!(parse_diagram("").is_err());
        assert!(parse_diagram("rank 0").is_err());
        assert!(matches!(parse_diagram("type Q7"), Err(DiagramError::UnknownType(_))));
    }

    #[test]
    fn named_conventions() {
        let e6 = named_type("E6").unwrap();
        assert_eq!(e6.label(2, 5), Label::Finite(3));
        assert_eq!(e6.label(4, 5), Label::Finite(2));
        let d5 = named_type("D5").unwrap();
        assert_eq!(d5.label(2, 3), Label::Finite(3));
        assert_eq!(d5.label(2, 4), Label::Finite(3));
        assert_eq!(d5.label(3, 4), Label::Finite(2));
        let f4 = named_type("F4").unwrap();
        assert_eq!(f4.label(1, 2), Label::Finite(4));
        assert_eq!(named_type("B3").unwrap(), named_type("C3").unwrap());
        let a = named_type("~A3").unwrap();
        assert_eq!(a.rank(), 4);
        assert_eq!(a.label(0, 3), Label::Finite(3));
        assert_eq!(named_type("~A1").unwrap(), named_type("I2(inf)").unwrap());
        assert_eq!(named_type("~E_8").unwrap().label(6, 8), Label::Finite(3));
        assert_eq!(named_type("~C2").unwrap().label(0, 2), Label::Finite(4));
        assert_eq!(parse_diagram("type ~G2").unwrap().label(0, 2), Label::Finite(3));
        assert!(named_type("I2(1)").is_err());
        assert!(named_type("E9").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["A4", "~E7", "H5", "I2(inf)", "~C3"] {
            let m = named_type(s).unwrap();
            assert_eq!(parse_diagram(&m.to_string()).unwrap(), m, "{s}");
        }
    }
}
