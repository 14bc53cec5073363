//! Integration tests for the `pangram` binary: the full problem/acceptor
//! outcome matrix, the reduction subcommands, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pangram"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_fixture(dir: &Path, name: &str, doc: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path
}

/// A one-state DFA accepting every word over {a, b}.
fn sigma_star_dfa(tags: &[&str]) -> Value {
    json!({
        "kind": "dfa",
        "alphabet": ["a", "b"],
        "states": ["q"],
        "initial": "q",
        "accepting": ["q"],
        "transitions": [
            {"from": "q", "symbol": "a", "to": "q"},
            {"from": "q", "symbol": "b", "to": "q"}
        ],
        "tags": tags,
    })
}

/// A one-state NFA accepting every word over {a, b}.
fn sigma_star_nfa() -> Value {
    json!({
        "kind": "nfa",
        "alphabet": ["a", "b"],
        "states": ["q"],
        "initials": ["q"],
        "accepting": ["q"],
        "transitions": [
            {"from": "q", "symbol": "a", "to": "q"},
            {"from": "q", "symbol": "b", "to": "q"}
        ],
    })
}

/// A grammar for { a^n b^n | n >= 1 }.
fn matched_pairs_cfg() -> Value {
    json!({
        "kind": "cfg",
        "terminals": ["a", "b"],
        "nonterminals": ["S"],
        "start": "S",
        "rules": [
            {"lhs": "S", "rhs": ["a", "S", "b"]},
            {"lhs": "S", "rhs": ["a", "b"]}
        ],
    })
}

/// A strictly 2-local description of the nonempty words over {a, b}.
fn nonempty_slt() -> Value {
    json!({
        "kind": "slt",
        "k": 2,
        "alphabet": ["a", "b"],
        "prefixes": [["a"], ["b"]],
        "infixes": [["a", "a"], ["a", "b"], ["b", "a"], ["b", "b"]],
        "suffixes": [["a"], ["b"]],
    })
}

/// A piecewise description with nothing forbidden: every word over {a, b}.
fn sigma_star_spt() -> Value {
    json!({
        "kind": "spt",
        "k": 2,
        "alphabet": ["a", "b"],
        "forbidden": [],
    })
}

#[test]
fn decide_outcome_matrix() {
    let dir = tempfile::tempdir().unwrap();
    // expected `answer` value per acceptor and problem, in the order:
    // contains-pangram, contains-perfect-pangram, covers-pangrams,
    // covers-perfect-pangrams, all-pangrams, all-perfect-pangrams
    let cells: Vec<(&str, Value, [Value; 6])> = vec![
        (
            "dfa.json",
            sigma_star_dfa(&[]),
            [json!(true), json!(true), json!(true), json!(true), json!(false), json!(false)],
        ),
        (
            "nfa.json",
            sigma_star_nfa(),
            [json!(true), json!(true), json!(true), json!(true), json!(false), json!(false)],
        ),
        (
            "cfg.json",
            matched_pairs_cfg(),
            [
                json!(true),
                json!(true),
                json!("undecidable"),
                json!(false),
                json!(true),
                json!(false),
            ],
        ),
        (
            "slt.json",
            nonempty_slt(),
            [json!(true), json!(true), json!(true), json!(true), json!(false), json!(false)],
        ),
        (
            "spt.json",
            sigma_star_spt(),
            [json!(true), json!(true), json!(true), json!(true), json!(false), json!(false)],
        ),
    ];
    let problems = [
        "contains-pangram",
        "contains-perfect-pangram",
        "covers-pangrams",
        "covers-perfect-pangrams",
        "all-pangrams",
        "all-perfect-pangrams",
    ];
    for (name, doc, expected) in &cells {
        let path = write_fixture(dir.path(), name, doc);
        for (problem, want) in problems.iter().zip(expected) {
            let out = run(&["decide", problem, path.to_str().unwrap()]);
            let value = stdout_json(&out);
            assert_eq!(value["problem"], json!(problem));
            assert_eq!(&value["answer"], want, "{problem} on {name}");
        }
    }
    println!("criterion 8 (decide outcome matrix, 5 acceptors x 6 problems): pass");
}

#[test]
fn cofinite_tag_short_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "cofinite.json", &sigma_star_dfa(&["cofinite"]));
    let out = run(&["decide", "contains-pangram", path.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!("trivial-true"));
    assert_eq!(value["witness"], json!(["a", "b"]));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{ not json").unwrap();
    let out = run(&["decide", "contains-pangram", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let unknown = write_fixture(dir.path(), "unknown.json", &json!({"kind": "pda"}));
    let out = run(&["decide", "contains-pangram", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["decide", "no-such-problem", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["decide", "contains-pangram", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exceeded_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "dfa.json", &sigma_star_dfa(&[]));
    let out = run(&["--cap-alphabet", "1", "decide", "contains-pangram", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reduce_hamiltonian_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_fixture(
        dir.path(),
        "graph.json",
        &json!({"nodes": ["u", "v", "w"], "edges": [["u", "v"], ["v", "w"]]}),
    );
    let reduced = dir.path().join("walk-dfa.json");
    let out = run(&[
        "reduce",
        "hamiltonian-to-perfect-pangram-dfa",
        graph.to_str().unwrap(),
        reduced.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["kind"], json!("dfa"));
    assert!(reduced.exists(), "reduction writes the output file");
    let out = run(&["decide", "contains-perfect-pangram", reduced.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!(true));
    assert_eq!(value["witness"], json!(["u", "v", "w"]));
}

#[test]
fn reduce_3slt_writes_rename_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    // node "1" collides with the first position counter, forcing renames
    let graph = write_fixture(
        dir.path(),
        "graph.json",
        &json!({"nodes": ["1", "x"], "edges": [["1", "x"]]}),
    );
    let reduced = dir.path().join("spec.json");
    let out = run(&[
        "reduce",
        "hamiltonian-to-3slt",
        graph.to_str().unwrap(),
        reduced.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["kind"], json!("slt"));
    assert_eq!(doc["k"], json!(3));
    let sidecar = dir.path().join("spec.json.map.json");
    assert!(sidecar.exists(), "renaming sidecar is written");
    let map: Value = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert!(map["renamed"].as_object().unwrap().contains_key("1"));

    let out = run(&["decide", "contains-pangram", reduced.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["answer"], json!(true));
}

#[test]
fn reduce_betweenness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_fixture(
        dir.path(),
        "betweenness.json",
        &json!({"items": ["p", "q", "r"], "constraints": [["p", "q", "r"]]}),
    );
    let reduced = dir.path().join("spt.json");
    let out = run(&[
        "reduce",
        "betweenness-to-3spt",
        instance.to_str().unwrap(),
        reduced.to_str().unwrap(),
    ]);
    assert_eq!(stdout_json(&out)["kind"], json!("spt"));
    let out = run(&["decide", "contains-pangram", reduced.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!(true));
    let order: Vec<String> = value["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().unwrap().to_string())
        .collect();
    let pos = |x: &str| order.iter().position(|t| t == x).unwrap();
    let (p, q, r) = (pos("p"), pos("q"), pos("r"));
    assert!((p < q && q < r) || (r < q && q < p), "q must sit between p and r: {order:?}");
}

#[test]
fn reduce_to_cofinite_tags_output() {
    let dir = tempfile::tempdir().unwrap();
    let perfect = run(&["canon", "perfect-pangram-dfa", "--alphabet", "a,b"]);
    let input = write_fixture(dir.path(), "perfect.json", &stdout_json(&perfect));
    let reduced = dir.path().join("cofinite.json");
    let out = run(&["reduce", "to-cofinite", input.to_str().unwrap(), reduced.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["tags"], json!(["cofinite"]));
    let out = run(&["decide", "contains-pangram", reduced.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["answer"], json!("trivial-true"));
    // the perfect-pangram question is unchanged by adding the wrong lengths
    let out = run(&["decide", "contains-perfect-pangram", reduced.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!(true));
    assert_eq!(value["witness"], json!(["a", "b"]));
}

#[test]
fn reduce_perfect_to_pangram_transfers_answer() {
    let dir = tempfile::tempdir().unwrap();
    let perfect = run(&["canon", "perfect-pangram-dfa", "--alphabet", "a,b"]);
    let input = write_fixture(dir.path(), "perfect.json", &stdout_json(&perfect));
    let reduced = dir.path().join("restricted.json");
    let out = run(&[
        "reduce",
        "perfect-to-pangram",
        input.to_str().unwrap(),
        reduced.to_str().unwrap(),
    ]);
    stdout_json(&out);
    let direct = run(&["decide", "contains-perfect-pangram", input.to_str().unwrap()]);
    let via = run(&["decide", "contains-pangram", reduced.to_str().unwrap()]);
    assert_eq!(stdout_json(&direct)["answer"], stdout_json(&via)["answer"]);
}

#[test]
fn reduce_universality_to_cover() {
    let dir = tempfile::tempdir().unwrap();
    // S -> aS | bS | ε generates every word, so the cover grammar must
    // contain every pangram up to any bound
    let universal = write_fixture(
        dir.path(),
        "universal.json",
        &json!({
            "kind": "cfg",
            "terminals": ["a", "b"],
            "nonterminals": ["S"],
            "start": "S",
            "rules": [
                {"lhs": "S", "rhs": ["a", "S"]},
                {"lhs": "S", "rhs": ["b", "S"]},
                {"lhs": "S", "rhs": []}
            ],
        }),
    );
    let reduced = dir.path().join("cover.json");
    let out = run(&[
        "reduce",
        "universality-to-pangram-cover",
        universal.to_str().unwrap(),
        reduced.to_str().unwrap(),
    ]);
    assert_eq!(stdout_json(&out)["kind"], json!("cfg"));
    // the exact cover question stays undecidable for grammars...
    let out = run(&["decide", "covers-pangrams", reduced.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["answer"], json!("undecidable"));
    // ...but bounded enumeration confirms no short pangram is missing
    let out = run(&["oracle", "covers-pangrams", reduced.to_str().unwrap(), "--max-len", "5"]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!(true));
    assert!(value["witness_note"].as_str().unwrap().contains("length 5"));
}

#[test]
fn canon_and_minimize_agree() {
    let dir = tempfile::tempdir().unwrap();
    let canon = run(&["canon", "pangram-dfa", "--alphabet", "a,b"]);
    let doc = stdout_json(&canon);
    assert_eq!(doc["states"].as_array().unwrap().len(), 4);
    let input = write_fixture(dir.path(), "pangram.json", &doc);
    let minimized = dir.path().join("min.json");
    let out = run(&["minimize", input.to_str().unwrap(), minimized.to_str().unwrap()]);
    let min_doc = stdout_json(&out);
    assert_eq!(min_doc["states"].as_array().unwrap().len(), 4, "already minimal");
    assert!(minimized.exists());
}

#[test]
fn oracle_agrees_with_decider() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "cfg.json", &matched_pairs_cfg());
    let out = run(&["oracle", "contains-pangram", path.to_str().unwrap()]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!(true));
    assert_eq!(value["witness"], json!(["a", "b"]));
    let out = run(&["oracle", "all-perfect-pangrams", path.to_str().unwrap(), "--max-len", "6"]);
    let value = stdout_json(&out);
    assert_eq!(value["answer"], json!(false));
    assert_eq!(value["witness"], json!(["a", "a", "b", "b"]));
}

#[test]
fn gen_corpus_is_seed_deterministic() {
    let a = run(&["gen-corpus", "dfa", "--seed", "7", "--count", "3"]);
    let b = run(&["gen-corpus", "dfa", "--seed", "7", "--count", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let docs = stdout_json(&a);
    let docs = docs.as_array().unwrap();
    assert_eq!(docs.len(), 3);
    assert!(docs.iter().all(|d| d["kind"] == json!("dfa")));
    let c = run(&["gen-corpus", "dfa", "--seed", "8", "--count", "3"]);
    assert_ne!(a.stdout, c.stdout, "different seeds give different corpora");
}
