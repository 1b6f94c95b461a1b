use std::path::{Path, PathBuf};

use tempfile::TempDir;

const PAIR: &str = "\
automaton L1
alphabet 0 1
states 2
initial 0
final 0 1
trans 0 0 1
trans 0 1 0
trans 1 1 1
end
automaton L2
alphabet 0 1
states 2
initial 0
final 0 1
trans 0 0 0
trans 0 1 1
trans 1 0 0
end
";

const ANBN: &str = "grammar anbn\nstart S\nrule S -> a S b\nrule S -> a b\nend\n";

const TWO: &str = "tm two\ntape _ 1\nblank _\nstates 2\ninitial 0\nhalt 1\ntrans 0 _ 1 1 R\nend\n";

const ONE: &str = "tm one\ntape _ 1\nblank _\nstates 1\ninitial 0\nhalt 0\nend\n";

const LOOP: &str = "tm loop\ntape _ 1\nblank _\nstates 2\ninitial 0\nhalt 1\ntrans 0 _ 0 _ R\nend\n";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn genlimit(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("genlimit").chain(args.iter().copied());
    let code = genlimit::cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_every_subfamily() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "pair.txt", PAIR);
    let r = genlimit(&["analyze", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0].split('\t').collect::<Vec<_>>(), ["mask", "members", "states", "finite", "cardinality", "longest"]);
    assert_eq!(lines[3], "3\tL1,L2\t4\tyes\t6\t3");
    assert_eq!(lines.last(), Some(&"minimal_m 7"));
}

#[test]
fn generate_prints_support_words_and_status() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "pair.txt", PAIR);
    let r = genlimit(&["generate", s(&f), "--examples", "0,1,01", "--max-len", "3"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("support L1,L2\nautomaton generated\n"));
    assert!(r.out.ends_with("words\n@\n0\n1\n01\n10\n101\nstatus finite\n"));

    let r = genlimit(&["generate", s(&f), "--examples", "@,0,1,01,11,011,111"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("support L1\n"));
    assert!(r.out.ends_with("status infinite\n"));

    let r = genlimit(&["generate", s(&f), "--examples", "0,0"]);
    assert_eq!(r.code, 1);
    assert!(r.err.starts_with("error: "));
}

#[test]
fn single_automaton_queries() {
    let dir = TempDir::new().unwrap();
    let pair = file(&dir, "pair.txt", PAIR);
    let r = genlimit(&["intersect", s(&pair)]);
    assert_eq!(r.code, 0);
    let both = file(&dir, "both.txt", &r.out);
    assert_eq!(genlimit(&["count", s(&both)]).out, "6\n");
    assert_eq!(genlimit(&["longest", s(&both)]).out, "3\n");
    assert_eq!(genlimit(&["enumerate", s(&both), "--max-len", "2"]).out, "@\n0\n1\n01\n10\n");
    assert_eq!(genlimit(&["enumerate", s(&both), "--max-len", "9", "--count", "2"]).out, "@\n0\n");
    assert_eq!(genlimit(&["member", s(&both), "101"]).out, "true\n");
    assert_eq!(genlimit(&["member", s(&both), "11"]).out, "false\n");
    assert_eq!(genlimit(&["member", s(&both), "@"]).out, "true\n");
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let pair = file(&dir, "pair.txt", PAIR);
    let r = genlimit(&["count", s(&pair)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 1"));

    let broken = file(&dir, "broken.txt", "automaton A\nalphabet 0 1\nstates two\nend\n");
    let r = genlimit(&["analyze", s(&broken)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 3"), "{}", r.err);

    let r = genlimit(&["count", s(&dir.path().join("missing.txt"))]);
    assert_eq!(r.code, 2);
    assert_eq!(genlimit(&["analyze"]).code, 2);
    assert_eq!(genlimit(&["--help"]).code, 0);
}

#[test]
fn witness_build_and_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("w.txt");
    let r = genlimit(&["witness", "build", "--n", "1", "--k", "2", "--padded", "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(genlimit(&["analyze", s(&out)]).out.ends_with("minimal_m 22\n"));

    let r = genlimit(&["witness", "verify", "--n", "2", "--k", "2", "--padded"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("minimal_m 106\n"));
    assert!(r.out.ends_with("OK\n"));

    let r = genlimit(&["witness", "verify", "--n", "1", "--k", "3"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("invalid parameters"));
}

#[test]
fn grammar_and_pda_commands() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "anbn.txt", ANBN);
    assert_eq!(genlimit(&["cfg", "count", s(&g)]).out, "inf\n");
    let fin = file(&dir, "fin.txt", "grammar fin\nstart S\nrule S -> A A\nrule A -> a\nrule A -> b\nrule A -> eps\nend\n");
    assert_eq!(genlimit(&["cfg", "count", s(&fin)]).out, "7\n");

    let tm = file(&dir, "two.txt", TWO);
    let (p1, p2) = (dir.path().join("p1.txt"), dir.path().join("p2.txt"));
    let r = genlimit(&["tm", "encode", s(&tm), "--out1", s(&p1), "--out2", s(&p2)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(genlimit(&["pda", "member", s(&p1), "[0,_].#0.[1,_].1.#1"]).out, "true\n");
    assert_eq!(genlimit(&["pda", "member", s(&p1), "[0,_].#0.[1,1].1.#1"]).out, "false\n");
    let r = genlimit(&["pda", "to-cfg", s(&p2)]);
    assert_eq!(r.code, 0);
    let cfg = file(&dir, "g2.txt", &r.out);
    assert_eq!(genlimit(&["cfg", "count", s(&cfg)]).out, "inf\n");
}

#[test]
fn machine_commands() {
    let dir = TempDir::new().unwrap();
    let two = file(&dir, "two.txt", TWO);
    assert_eq!(genlimit(&["tm", "run", s(&two), "--max-configs", "10"]).out, "[0,_]\n1 [1,_]\nhalted 2\n");
    let looping = file(&dir, "loop.txt", LOOP);
    assert!(genlimit(&["tm", "run", s(&looping), "--max-configs", "3"]).out.ends_with("timeout 3\n"));

    let r = genlimit(&["tm", "intersect", s(&two), "--max-len", "5"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("[0,_].#0.[1,_].1.#0\n"));
    assert!(r.out.ends_with("count 4\n"));
}

#[test]
fn halting_reduction_cases() {
    let dir = TempDir::new().unwrap();
    let one = file(&dir, "one.txt", ONE);
    let r = genlimit(&["reduction", "decide-halting", s(&one)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("case 1\n"));
    assert!(r.out.ends_with("halts 1\n"));

    let two = file(&dir, "two.txt", TWO);
    let r = genlimit(&["reduction", "decide-halting", s(&two)]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("oracle"));
    let r = genlimit(&["reduction", "decide-halting", s(&two), "--oracle", "5"]);
    assert_eq!(r.out, "first inf\nsecond inf\noracle_m 5\ncase 3\nbound 3\nconfigs 2\nhalts 2\n");

    let looping = file(&dir, "loop.txt", LOOP);
    let r = genlimit(&["reduction", "decide-halting", s(&looping), "--oracle-auto", "--auto-cap", "50"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.ends_with("does-not-halt\n"));
    let r = genlimit(&["reduction", "decide-halting", s(&looping), "--oracle", "1", "--oracle-auto"]);
    assert_eq!(r.code, 2);
}
