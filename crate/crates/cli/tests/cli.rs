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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use konig::format::{self, GraphFile};
use konig::{run, Payload, Status};
use konig_core::instances::fixtures;
use konig_core::{verify_coloring, EdgeColoring, EdgeId};
use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn konig(args: &[&str]) -> (Status, Value) {
    let argv = std::iter::once("konig").chain(args.iter().copied());
    let r = run(argv);
    match r.payload {
        Payload::Record(v) => (r.status, v),
        Payload::Text(t) => panic!("expected a record, got text {t:?}"),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn petersen_is_not_bipartite_with_five_cycle() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "petersen.graph",
        &format::write_general(&fixtures::petersen()),
    );
    let (status, v) = konig(&["check", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["bipartite"], false);
    assert_eq!(v["witness"]["length"], 5);

    let (status, v) = konig(&["color", path(&f)]);
    assert_eq!(status, Status::PreconditionFailed);
    assert_eq!(v["error"], "NotBipartite");
    assert_eq!(v["witness"]["length"], 5);
}

#[test]
fn cube_colors_with_three() {
    let dir = TempDir::new().unwrap();
    let cube = fixtures::cube();
    let f = write(&dir, "cube.graph", &format::write_bipartite(&cube));
    let (status, v) = konig(&["color", "--k", "3", path(&f)]);
    assert_eq!(status, Status::Ok);
    let pairs = v["assignments"].as_array().unwrap();
    assert_eq!(pairs.len(), 12);
    let mut colors = vec![0; 12];
    for (i, p) in pairs.iter().enumerate() {
        assert_eq!(p[0].as_u64().unwrap() as usize, i + 1);
        colors[i] = p[1].as_u64().unwrap() as usize - 1;
    }
    verify_coloring(&cube, &EdgeColoring::new(3, colors)).unwrap();

    let (status, v) = konig(&["color", "--k", "2", path(&f)]);
    assert_eq!(status, Status::PreconditionFailed);
    assert_eq!(v["error"], "KTooSmall");
}

#[test]
fn counterexample_matrix_is_rejected() {
    let dir = TempDir::new().unwrap();
    let m = fixtures::koenig_counterexample_matrix();
    let f = write(&dir, "neg.matrix", &format::write_matrix(&m));
    let (status, v) = konig(&["member", path(&f)]);
    assert_eq!(status, Status::PreconditionFailed);
    assert_eq!(v["error"], "NegativeEntry");
    let (status, v) = konig(&["count-members", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["count"], 0);
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.graph", "bipartite 2 2 2\ne 1 1\n");
    assert_eq!(konig(&["check", path(&bad)]).0, Status::ParseError);
    let range = write(&dir, "range.graph", "bipartite 2 2 1\ne 3 1\n");
    assert_eq!(konig(&["check", path(&range)]).0, Status::ParseError);
    assert_eq!(konig(&["check", "/nonexistent/file"]).0, Status::ParseError);
    assert_eq!(konig(&["frobnicate"]).0, Status::ParseError);
    assert_eq!(Status::ParseError.exit_code(), 2);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let args = [
        "konig", "gen", "--kind", "regular", "--params", "10,4", "--seed", "7",
    ];
    let a = run(args).payload.render();
    let b = run(args).payload.render();
    assert_eq!(a, b);
    let GraphFile::Bipartite(g) = format::parse_graph(&a).unwrap() else {
        panic!("expected a bipartite file");
    };
    assert_eq!(g.regular_degree(), Some(4));
    assert_eq!(format::write_bipartite(&g), a);

    let other = run([
        "konig", "gen", "--kind", "regular", "--params", "10,4", "--seed", "8",
    ]);
    assert_ne!(other.payload.render(), a);
}

#[test]
fn factorize_engines_agree_on_validity() {
    let dir = TempDir::new().unwrap();
    let text = run([
        "konig", "gen", "--kind", "regular", "--params", "12,8", "--seed", "1",
    ])
    .payload
    .render();
    let f = write(&dir, "reg.graph", &text);
    let GraphFile::Bipartite(g) = format::parse_graph(&text).unwrap() else {
        unreachable!()
    };
    for engine in ["coloring", "pow2"] {
        let (status, v) = konig(&["factorize", "--engine", engine, path(&f)]);
        assert_eq!(status, Status::Ok, "{v}");
        let factors = v["factors"].as_array().unwrap();
        assert_eq!(factors.len(), 8);
        let mut seen = vec![false; g.edge_count()];
        for fac in factors {
            let edges = fac.as_array().unwrap();
            assert_eq!(edges.len(), 12);
            for e in edges {
                let e = e.as_u64().unwrap() as usize - 1;
                assert!(!seen[e]);
                seen[e] = true;
                let _ = g.endpoints(EdgeId(e));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}

#[test]
fn matching_and_factor() {
    let dir = TempDir::new().unwrap();
    let text = run([
        "konig", "gen", "--kind", "regular", "--params", "9,6", "--seed", "2",
    ])
    .payload
    .render();
    let f = write(&dir, "reg.graph", &text);
    let (status, v) = konig(&["matching", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
    let (status, v) = konig(&["matching", "--mu", "3", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
    let (status, v) = konig(&["matching", "--mu", "4", path(&f)]);
    assert_eq!(status, Status::PreconditionFailed);
    assert_eq!(v["error"], "NotDivisible");
    let (status, v) = konig(&["factor", "--d", "4", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["degree"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 36);
}

#[test]
fn matrix_commands() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.matrix", "matrix 3\n2 1 0\n0 1 2\n1 1 1\n");
    let (status, v) = konig(&["decompose", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["s"], 3);
    let mut sum = [[0; 3]; 3];
    for p in v["permutations"].as_array().unwrap() {
        for (i, img) in p.as_array().unwrap().iter().enumerate() {
            sum[i][img.as_u64().unwrap() as usize - 1] += 1;
        }
    }
    assert_eq!(sum, [[2, 1, 0], [0, 1, 2], [1, 1, 1]]);

    let (status, v) = konig(&["member", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["permutation"].as_array().unwrap().len(), 3);

    let (status, v) = konig(&["count-members", path(&f)]);
    assert_eq!(status, Status::Ok);
    assert!(v["count"].as_u64().unwrap() >= 1);

    let s = write(&dir, "s.matrix", "matrix 3\n1 -2 0\n0 1/2 3\n7 0 1\n");
    let (status, v) = konig(&["support-decompose", path(&s)]);
    assert_eq!(status, Status::Ok);
    assert_eq!(v["k"], 2);

    let frac = write(&dir, "f.matrix", "matrix 2\n1/2 1/2\n1/2 1/2\n");
    let (status, v) = konig(&["decompose", path(&frac)]);
    assert_eq!(status, Status::PreconditionFailed);
    assert_eq!(v["error"], "NonIntegerEntry");
}

#[test]
fn binary_writes_output_file_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cube = write(
        &dir,
        "cube.graph",
        &format::write_bipartite(&fixtures::cube()),
    );
    let out = dir.path().join("out.json");
    let bin = env!("CARGO_BIN_EXE_konig");
    let st = Command::new(bin)
        .args(["--output", path(&out), "factorize", path(&cube)])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["k"], 3);

    let neg = write(
        &dir,
        "neg.matrix",
        &format::write_matrix(&fixtures::koenig_counterexample_matrix()),
    );
    let st = Command::new(bin)
        .args(["member", path(&neg)])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = Command::new(bin)
        .args(["check", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
}
