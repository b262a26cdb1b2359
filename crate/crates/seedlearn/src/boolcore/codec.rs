//! Text formats:
//!
//! - DNF file: header `dnf n=<n>`, then one term per line as
//!   space-separated signed indices (`i` for x_i, `-i` for ¬x_i); the
//!   literal-free constant-true term is the line `0`; zero term lines
//!   is the constant 0.
//! - Sample file: header `sample n=<n>`, lines `<bitstring> <0|1>`.
//! - Truth-table file: header `tt n=<n>`, one line of 2^n characters.
//! - Decision-tree file: header `dtree n=<n>`, one s-expression line
//!   where a node is `(<var> <child0> <child1>)` and a leaf is `0`/`1`.

use std::collections::BTreeSet;

use super::assignment::{Assignment, Literal, MAX_N};
use super::dnf::Dnf;
use super::partial::PartialFn;
use super::table::TruthTable;
use super::term::Term;
use super::tree::DecisionTree;
use crate::error::{Error, Result};

/// Any of the accepted input descriptions of a Boolean function.
#[derive(Clone, Debug)]
pub enum Input {
    Dnf(Dnf),
    Sample(PartialFn),
    Table(TruthTable),
    Tree { tree: DecisionTree, n: u32 },
}

impl Input {
    pub fn n(&self) -> u32 {
        match self {
            Input::Dnf(d) => d.n(),
            Input::Sample(s) => s.n(),
            Input::Table(t) => t.n(),
            Input::Tree { n, .. } => *n,
        }
    }

    /// The partial function described by the input (total except for
    /// sample files).
    pub fn partial_fn(&self) -> Result<PartialFn> {
        Ok(match self {
            Input::Dnf(d) => PartialFn::from_table(&TruthTable::of_dnf(d)?),
            Input::Sample(s) => s.clone(),
            Input::Table(t) => PartialFn::from_table(t),
            Input::Tree { tree, n } => PartialFn::from_table(&TruthTable::of_tree(tree, *n)?),
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header(line: &str, kind: &str) -> Option<u32> {
    let rest = line.strip_prefix(kind)?.trim();
    let n: u32 = rest.strip_prefix("n=")?.trim().parse().ok()?;
    (n <= MAX_N).then_some(n)
}

/// Parses any of the supported formats, dispatching on the header.
pub fn parse_input(text: &str) -> Result<Input> {
    let first = text.lines().next().unwrap_or("").trim();
    if first.starts_with("dnf") {
        Ok(Input::Dnf(parse_dnf(text)?))
    } else if first.starts_with("sample") {
        Ok(Input::Sample(parse_sample(text)?))
    } else if first.starts_with("tt") {
        Ok(Input::Table(parse_table(text)?))
    } else if first.starts_with("dtree") {
        let (tree, n) = parse_tree(text)?;
        Ok(Input::Tree { tree, n })
    } else {
        Err(parse_err(1, format!("unrecognized header {first:?}")))
    }
}

pub fn parse_dnf(text: &str) -> Result<Dnf> {
    let mut lines = numbered_lines(text);
    let (lineno, header) =
        lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let n = parse_header(header, "dnf")
        .ok_or_else(|| parse_err(lineno, "expected header 'dnf n=<n>'"))?;
    let mut terms = Vec::new();
    for (lineno, line) in lines {
        let mut lits = BTreeSet::new();
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields == ["0"] {
            terms.push(Term::empty());
            continue;
        }
        for field in fields {
            let i: i64 = field
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad literal {field:?}")))?;
            let l = Literal::from_signed(i)
                .map_err(|_| parse_err(lineno, format!("bad literal {field:?}")))?;
            if l.var() > n {
                return Err(parse_err(lineno, format!("variable x{} out of range (n={n})", l.var())));
            }
            lits.insert(l);
        }
        terms.push(Term::from_literals(lits));
    }
    Ok(Dnf::new(n, terms))
}

pub fn serialize_dnf(phi: &Dnf) -> String {
    let mut out = format!("dnf n={}\n", phi.n());
    for t in phi.terms() {
        if t.is_empty() {
            out.push_str("0\n");
        } else {
            let fields: Vec<String> = t.literals().map(|l| l.signed().to_string()).collect();
            out.push_str(&fields.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_sample(text: &str) -> Result<PartialFn> {
    let mut lines = numbered_lines(text);
    let (lineno, header) =
        lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let n = parse_header(header, "sample")
        .ok_or_else(|| parse_err(lineno, "expected header 'sample n=<n>'"))?;
    let mut f = PartialFn::empty(n);
    for (lineno, line) in lines {
        let (bits, label) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| parse_err(lineno, "expected '<bitstring> <0|1>'"))?;
        let a = Assignment::parse(bits.trim())
            .map_err(|e| parse_err(lineno, e.to_string()))?;
        if a.n() != n {
            return Err(parse_err(lineno, format!("bitstring length {} but n={n}", a.n())));
        }
        let label = match label.trim() {
            "0" => false,
            "1" => true,
            other => return Err(parse_err(lineno, format!("bad label {other:?}"))),
        };
        f.insert(a, label).map_err(|e| parse_err(lineno, e.to_string()))?;
    }
    Ok(f)
}

pub fn serialize_sample(f: &PartialFn) -> String {
    let mut out = format!("sample n={}\n", f.n());
    let mut points: Vec<(Assignment, bool)> = f
        .positives()
        .iter()
        .map(|a| (*a, true))
        .chain(f.negatives().iter().map(|a| (*a, false)))
        .collect();
    points.sort();
    for (a, label) in points {
        out.push_str(&format!("{} {}\n", a.bitstring(), u8::from(label)));
    }
    out
}

pub fn parse_table(text: &str) -> Result<TruthTable> {
    let mut lines = numbered_lines(text);
    let (lineno, header) =
        lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let n = parse_header(header, "tt")
        .ok_or_else(|| parse_err(lineno, "expected header 'tt n=<n>'"))?;
    let (lineno, bits) = lines.next().ok_or_else(|| parse_err(lineno + 1, "missing values"))?;
    let tt = TruthTable::parse_bits(n, bits.trim())
        .map_err(|e| parse_err(lineno, e.to_string()))?;
    if let Some((lineno, _)) = lines.next() {
        return Err(parse_err(lineno, "trailing content after truth table"));
    }
    Ok(tt)
}

pub fn serialize_table(tt: &TruthTable) -> String {
    format!("tt n={}\n{}\n", tt.n(), tt.bitstring())
}

pub fn parse_tree(text: &str) -> Result<(DecisionTree, u32)> {
    let mut lines = numbered_lines(text);
    let (lineno, header) =
        lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let n = parse_header(header, "dtree")
        .ok_or_else(|| parse_err(lineno, "expected header 'dtree n=<n>'"))?;
    let (lineno, expr) = lines.next().ok_or_else(|| parse_err(lineno + 1, "missing tree"))?;
    let tokens: Vec<String> = expr
        .replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let mut pos = 0;
    let tree = parse_tree_expr(&tokens, &mut pos, lineno)?;
    if pos != tokens.len() {
        return Err(parse_err(lineno, "trailing tokens after tree"));
    }
    if tree.max_var() > n {
        return Err(parse_err(lineno, format!("variable x{} out of range (n={n})", tree.max_var())));
    }
    Ok((tree, n))
}

fn parse_tree_expr(tokens: &[String], pos: &mut usize, lineno: usize) -> Result<DecisionTree> {
    let tok = tokens.get(*pos).ok_or_else(|| parse_err(lineno, "unexpected end of tree"))?;
    *pos += 1;
    match tok.as_str() {
        "0" => Ok(DecisionTree::leaf(false)),
        "1" => Ok(DecisionTree::leaf(true)),
        "(" => {
            let var_tok =
                tokens.get(*pos).ok_or_else(|| parse_err(lineno, "unexpected end of tree"))?;
            let var: u32 = var_tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad variable {var_tok:?}")))?;
            if var == 0 {
                return Err(parse_err(lineno, "variable index 0"));
            }
            *pos += 1;
            let low = parse_tree_expr(tokens, pos, lineno)?;
            let high = parse_tree_expr(tokens, pos, lineno)?;
            match tokens.get(*pos) {
                Some(t) if t == ")" => *pos += 1,
                _ => return Err(parse_err(lineno, "expected ')'")),
            }
            Ok(DecisionTree::node(var, low, high))
        }
        other => Err(parse_err(lineno, format!("unexpected token {other:?}"))),
    }
}

pub fn serialize_tree(tree: &DecisionTree, n: u32) -> String {
    format!("dtree n={n}\n{tree}\n")
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}
