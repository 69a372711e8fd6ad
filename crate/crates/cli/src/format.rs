// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Plain-text graph and matrix files.
//!
//! ```text
//! # the 4-cycle
//! bipartite 2 2 4
//! e 1 1
//! e 2 1
//! e 2 2
//! e 1 2
//! ```
//!
//! General graphs use `graph <n> <m>` and `e <u> <v>`. Matrices are
//! `matrix <n>` followed by `n` rows of `n` entries, each an integer or
//! `p/q`. Labels are 1-based. Lines starting with `#` and blank lines are
//! skipped; everything else is strict, including the declared counts.

use std::fmt::Write as _;

use konig_core::{BipartiteMultigraph, ExactMatrix, GeneralGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Either kind of graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Bipartite(BipartiteMultigraph),
    General(GeneralGraph),
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn count(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token.parse::<usize>().or_else(|_| {
        err(
            line,
            format!("{what}: expected a nonnegative integer, found {token:?}"),
        )
    })
}

fn label(line: usize, token: &str, bound: usize) -> Result<usize, ParseError> {
    let v = count(line, token, "vertex label")?;
    if v == 0 || v > bound {
        return err(line, format!("vertex label {v} outside 1..={bound}"));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(0, "empty file");
    };
    let (dims, m) = match header.as_slice() {
        ["bipartite", nl, nr, m] => (
            vec![count(hl, nl, "n_left")?, count(hl, nr, "n_right")?],
            count(hl, m, "m")?,
        ),
        ["graph", n, m] => (vec![count(hl, n, "n")?], count(hl, m, "m")?),
        _ => {
            return err(
                hl,
                "expected `bipartite <n_left> <n_right> <m>` or `graph <n> <m>`",
            )
        }
    };
    let mut pairs = Vec::with_capacity(m);
    for (ln, tokens) in lines {
        let ["e", a, b] = tokens.as_slice() else {
            return err(ln, "expected `e <u> <v>`");
        };
        if pairs.len() == m {
            return err(ln, format!("more than the declared {m} edges"));
        }
        let bounds = if dims.len() == 2 {
            (dims[0], dims[1])
        } else {
            (dims[0], dims[0])
        };
        pairs.push((label(ln, a, bounds.0)?, label(ln, b, bounds.1)?, ln));
    }
    if pairs.len() != m {
        return err(0, format!("declared {m} edges, found {}", pairs.len()));
    }
    if let [nl, nr] = dims[..] {
        let g = BipartiteMultigraph::new(nl, nr, pairs.iter().map(|&(a, b, _)| (a, b)))
            .or_else(|e| err(0, e.to_string()))?;
        Ok(GraphFile::Bipartite(g))
    } else {
        if let Some(&(u, _, ln)) = pairs.iter().find(|(a, b, _)| a == b) {
            return err(ln, format!("self-loop at vertex {}", u + 1));
        }
        let g = GeneralGraph::new(dims[0], pairs.iter().map(|&(a, b, _)| (a, b)))
            .or_else(|e| err(0, e.to_string()))?;
        Ok(GraphFile::General(g))
    }
}

pub fn write_bipartite(g: &BipartiteMultigraph) -> String {
    let mut out = format!(
        "bipartite {} {} {}\n",
        g.n_left(),
        g.n_right(),
        g.edge_count()
    );
    for &(l, r) in g.edge_list() {
        writeln!(out, "e {} {}", l + 1, r + 1).unwrap();
    }
    out
}

pub fn write_general(g: &GeneralGraph) -> String {
    let mut out = format!("graph {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn rational(line: usize, token: &str) -> Result<BigRational, ParseError> {
    let bad = || err(line, format!("bad matrix entry {token:?}"));
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (p, q) = match body.split_once('/') {
        Some((p, q)) if digits(p) && digits(q) => (p, q),
        None if digits(body) => (body, "1"),
        _ => return bad(),
    };
    let (Ok(p), Ok(q)) = (p.parse::<BigInt>(), q.parse::<BigInt>()) else {
        return bad();
    };
    if q.is_zero() {
        return err(line, format!("zero denominator in {token:?}"));
    }
    let x = BigRational::new(p, q);
    Ok(if negative { -x } else { x })
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(0, "empty file");
    };
    let n = match header.as_slice() {
        ["matrix", n] => count(hl, n, "n")?,
        _ => return err(hl, "expected `matrix <n>`"),
    };
    let mut rows = Vec::with_capacity(n);
    for (ln, tokens) in lines {
        if rows.len() == n {
            return err(ln, format!("more than the declared {n} rows"));
        }
        if tokens.len() != n {
            return err(ln, format!("expected {n} entries, found {}", tokens.len()));
        }
        rows.push(
            tokens
                .iter()
                .map(|t| rational(ln, t))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if rows.len() != n {
        return err(0, format!("declared {n} rows, found {}", rows.len()));
    }
    ExactMatrix::from_rows(rows).or_else(|e| err(0, e.to_string()))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn write_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("matrix {}\n", m.n());
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}
