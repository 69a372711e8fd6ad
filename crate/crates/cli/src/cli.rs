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

//! The `konig` command line.
//!
//! Every subcommand prints one JSON record on standard output (or writes it
//! to `--output`), except `gen`, which prints a graph or matrix file.
//! Labels in records are 1-based: vertices, edges (file line order), colors
//! and permutation images. Exit codes: 0 success, 1 a precondition of the
//! operation failed, 2 the command line or an input file could not be
//! parsed. Each record is re-verified before it is printed.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use konig_core::factor::{complement, factorize, perfect_matching_via_split, Engine};
use konig_core::instances::{
    random_bounded_degree_bipartite, random_equal_line_sum_matrix, random_line_regular_support,
    random_regular_bipartite,
};
use konig_core::{
    color_edges, components, count_nonzero_members_bruteforce, decompose_into_permutations,
    factor_of_degree, nonzero_member, perfect_matching, support_decomposition, two_coloring,
    verify_coloring, BipartiteMultigraph, Error, ExactMatrix, Factor, Factorization,
    PermutationDecomposition, TwoColoring,
};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::format::{self, format_rational, GraphFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    PreconditionFailed,
    ParseError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PreconditionFailed => 1,
            Status::ParseError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Record(Value),
    Text(String),
}

impl Payload {
    /// Exactly what goes to standard output.
    pub fn render(&self) -> String {
        match self {
            Payload::Record(v) => format!("{v}\n"),
            Payload::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Payload,
    /// Human-readable message for standard error; empty on success.
    pub diagnostics: String,
    /// Where the payload goes instead of standard output.
    pub output: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "konig",
    version,
    about = "Edge coloring and factorization of bipartite multigraphs"
)]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Coloring,
    Pow2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Regular,
    Bounded,
    Matrix,
    Support,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bipartiteness (with an odd closed walk if not), degrees, components.
    Check { file: PathBuf },
    /// Proper edge coloring with k colors (default: the maximum degree).
    Color {
        #[arg(long)]
        k: Option<usize>,
        file: PathBuf,
    },
    /// Decompose a regular graph into perfect matchings.
    Factorize {
        #[arg(long, value_enum, default_value = "coloring")]
        engine: EngineArg,
        file: PathBuf,
    },
    /// One perfect matching of a regular graph.
    Matching {
        /// Go through a split into vertices of degree k / mu.
        #[arg(long)]
        mu: Option<usize>,
        file: PathBuf,
    },
    /// A regular factor of degree d.
    Factor {
        #[arg(long)]
        d: usize,
        file: PathBuf,
    },
    /// Write an equal-line-sum integer matrix as a sum of permutation matrices.
    Decompose { file: PathBuf },
    /// A nonzero determinant member of an equal-line-sum nonnegative matrix.
    Member { file: PathBuf },
    /// Cover the nonzero cells of a line-regular support with permutations.
    SupportDecompose { file: PathBuf },
    /// Count nonzero determinant members by enumeration (n <= 8).
    CountMembers { file: PathBuf },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// regular: n,k  bounded: n_left,n_right,max_deg,edges  matrix: n,s
        /// support: n,k
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Parse(String),
    Precondition(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e)
    }
}

type Outcome = Result<Payload, Failure>;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    status: Status::Ok,
                    payload: Payload::Text(text),
                    diagnostics: String::new(),
                    output: None,
                },
                _ => CommandResult {
                    status: Status::ParseError,
                    payload: Payload::Record(
                        json!({"error": "ParseError", "message": text.trim()}),
                    ),
                    diagnostics: text,
                    output: None,
                },
            };
        }
    };
    let output = cli.output.clone();
    match dispatch(cli.command) {
        Ok(payload) => CommandResult {
            status: Status::Ok,
            payload,
            diagnostics: String::new(),
            output,
        },
        Err(Failure::Parse(message)) => CommandResult {
            status: Status::ParseError,
            payload: Payload::Record(json!({"error": "ParseError", "message": message})),
            diagnostics: message,
            output,
        },
        Err(Failure::Precondition(e)) => {
            let message = e.to_string();
            let mut record = json!({"error": e.name(), "message": message});
            if let Some(w) = e.witness() {
                record["witness"] = walk_record(&w.vertices, &w.edges);
            }
            CommandResult {
                status: Status::PreconditionFailed,
                payload: Payload::Record(record),
                diagnostics: format!("{}: {}", e.name(), message),
                output,
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<GraphFile, Failure> {
    format::parse_graph(&read(path)?)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// A bipartite file, or a general graph that two-colors.
fn load_bipartite(path: &Path) -> Result<BipartiteMultigraph, Failure> {
    match load_graph(path)? {
        GraphFile::Bipartite(g) => Ok(g),
        GraphFile::General(g) => Ok(konig_core::as_bipartite(&g)?.0),
    }
}

fn load_matrix(path: &Path) -> Result<ExactMatrix, Failure> {
    format::parse_matrix(&read(path)?)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn one_based(xs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    xs.into_iter().map(|x| x + 1).collect()
}

fn walk_record(vertices: &[usize], edges: &[usize]) -> Value {
    json!({
        "length": edges.len(),
        "vertices": one_based(vertices.iter().copied()),
        "edges": one_based(edges.iter().copied()),
    })
}

fn edge_labels(f: &Factor) -> Vec<usize> {
    one_based(f.edges.iter().map(|e| e.index()))
}

fn factor_record(g: &BipartiteMultigraph, f: &Factor) -> Outcome {
    f.check(g)?;
    Ok(Payload::Record(
        json!({"degree": f.degree, "edges": edge_labels(f)}),
    ))
}

fn factorization_record(g: &BipartiteMultigraph, fz: &Factorization) -> Outcome {
    fz.check(g)?;
    let factors: Vec<Vec<usize>> = fz.factors.iter().map(edge_labels).collect();
    Ok(Payload::Record(json!({"k": fz.len(), "factors": factors})))
}

fn decomposition_record(m: &ExactMatrix, key: &str, d: &PermutationDecomposition) -> Outcome {
    d.check(m)?;
    let perms: Vec<Vec<usize>> = d
        .parts
        .iter()
        .map(|p| one_based(p.images().iter().copied()))
        .collect();
    let mut record = json!({"permutations": perms});
    record[key] = json!(d.len());
    Ok(Payload::Record(record))
}

fn graph_summary(g: &BipartiteMultigraph) -> Value {
    json!({
        "n_left": g.n_left(),
        "n_right": g.n_right(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree(),
        "regular_degree": g.regular_degree(),
        "components": components(g).len(),
    })
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Check { file } => check(&file),
        Command::Color { k, file } => {
            let g = load_bipartite(&file)?;
            let k = k.unwrap_or_else(|| g.max_degree());
            let c = color_edges(&g, k)?;
            verify_coloring(&g, &c)
                .map_err(|_| Error::InternalInvariantViolation("coloring failed verification"))?;
            let assignments: Vec<[usize; 2]> = c
                .colors()
                .iter()
                .enumerate()
                .map(|(e, &col)| [e + 1, col + 1])
                .collect();
            Ok(Payload::Record(json!({"k": k, "assignments": assignments})))
        }
        Command::Factorize { engine, file } => {
            let g = load_bipartite(&file)?;
            let engine = match engine {
                EngineArg::Coloring => Engine::Coloring,
                EngineArg::Pow2 => Engine::PowerOfTwo,
            };
            factorization_record(&g, &factorize(&g, engine)?)
        }
        Command::Matching { mu, file } => {
            let g = load_bipartite(&file)?;
            let f = match mu {
                Some(mu) => perfect_matching_via_split(&g, mu)?,
                None => perfect_matching(&g)?,
            };
            factor_record(&g, &f)
        }
        Command::Factor { d, file } => {
            let g = load_bipartite(&file)?;
            let f = factor_of_degree(&g, d)?;
            complement(&g, &f)?.check(&g)?;
            factor_record(&g, &f)
        }
        Command::Decompose { file } => {
            let m = load_matrix(&file)?;
            decomposition_record(&m, "s", &decompose_into_permutations(&m)?)
        }
        Command::SupportDecompose { file } => {
            let m = load_matrix(&file)?;
            decomposition_record(&m, "k", &support_decomposition(&m)?)
        }
        Command::Member { file } => {
            let m = load_matrix(&file)?;
            let p = nonzero_member(&m)?;
            let entries: Vec<_> = (0..m.n()).map(|i| m.get(i, p.apply(i))).collect();
            if !entries.iter().all(|x| x.is_positive()) {
                return Err(Error::InternalInvariantViolation("member hits a zero entry").into());
            }
            Ok(Payload::Record(json!({
                "permutation": one_based(p.images().iter().copied()),
                "entries": entries.into_iter().map(format_rational).collect::<Vec<_>>(),
            })))
        }
        Command::CountMembers { file } => {
            let m = load_matrix(&file)?;
            let count = count_nonzero_members_bruteforce(&m)?;
            Ok(Payload::Record(json!({"n": m.n(), "count": count})))
        }
        Command::Gen { kind, params, seed } => generate(kind, &params, seed),
    }
}

fn check(file: &Path) -> Outcome {
    let record = match load_graph(file)? {
        GraphFile::Bipartite(g) => {
            let mut r = graph_summary(&g);
            r["kind"] = json!("bipartite");
            r["bipartite"] = json!(true);
            r
        }
        GraphFile::General(g) => match two_coloring(&g) {
            TwoColoring::OddWalk(w) => {
                if !w.is_valid_in(&g) {
                    return Err(Error::InternalInvariantViolation("invalid odd walk").into());
                }
                json!({
                    "kind": "graph",
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "bipartite": false,
                    "witness": walk_record(&w.vertices, &w.edges),
                })
            }
            TwoColoring::Classes(classes) => {
                let (bg, _) = konig_core::as_bipartite(&g)?;
                let mut r = graph_summary(&bg);
                r["kind"] = json!("graph");
                r["bipartite"] = json!(true);
                r["classes"] = json!(classes
                    .iter()
                    .map(|c| if *c == konig_core::Class::I { 1 } else { 2 })
                    .collect::<Vec<_>>());
                r
            }
        },
    };
    Ok(Payload::Record(record))
}

fn generate(kind: Kind, params: &[usize], seed: u64) -> Outcome {
    let arity = match kind {
        Kind::Regular | Kind::Matrix | Kind::Support => 2,
        Kind::Bounded => 4,
    };
    if params.len() != arity {
        return Err(Failure::Parse(format!(
            "--params expects {arity} values, got {}",
            params.len()
        )));
    }
    let text = match kind {
        Kind::Regular => {
            format::write_bipartite(&random_regular_bipartite(params[0], params[1], seed))
        }
        Kind::Bounded => format::write_bipartite(&random_bounded_degree_bipartite(
            params[0], params[1], params[2], params[3], seed,
        )?),
        Kind::Matrix => {
            format::write_matrix(&random_equal_line_sum_matrix(params[0], params[1], seed))
        }
        Kind::Support => {
            format::write_matrix(&random_line_regular_support(params[0], params[1], seed)?)
        }
    };
    Ok(Payload::Text(text))
}
