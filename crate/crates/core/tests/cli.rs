mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pbdom::formats::render_opb;

fn pbdom(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbdom")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_php43(dir: &Path) {
    let (inst, proof) = common::php43_breaking();
    fs::write(dir.join("php.opb"), render_opb(&inst)).unwrap();
    fs::write(dir.join("php.pbp"), proof).unwrap();
}

#[test]
fn verifies_the_symmetry_breaking_proof() {
    let dir = tempfile::tempdir().unwrap();
    write_php43(dir.path());
    let out = pbdom(dir.path(), &["verify", "php.opb", "php.pbp", "--stats"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("VERIFIED NONE"));
    assert!(text.contains("rule dom "), "{text}");
}

#[test]
fn rejection_exits_with_one_and_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    write_php43(dir.path());
    let proof = fs::read_to_string(dir.path().join("php.pbp")).unwrap();
    let (n, _) = proof.lines().enumerate().find(|(_, l)| l.starts_with("rup ")).unwrap();
    let mut lines: Vec<&str> = proof.lines().collect();
    lines[n] = "rup 1 p11 >= 1 ;";
    fs::write(dir.path().join("bad.pbp"), lines.join("\n") + "\n").unwrap();
    let out = pbdom(dir.path(), &["verify", "php.opb", "bad.pbp"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with(&format!("REJECTED line {}:", n + 1)), "{}", stdout(&out));
}

#[test]
fn unreadable_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    write_php43(dir.path());
    assert_eq!(pbdom(dir.path(), &["verify", "php.opb", "missing.pbp"]).status.code(), Some(2));
    fs::write(dir.path().join("garbage.pbp"), "pseudo-Boolean proof version 2.0\nfrobnicate 3\n").unwrap();
    assert_eq!(pbdom(dir.path(), &["verify", "php.opb", "garbage.pbp"]).status.code(), Some(2));
}

#[test]
fn trace_lists_every_accepted_command() {
    let dir = tempfile::tempdir().unwrap();
    write_php43(dir.path());
    let out = pbdom(dir.path(), &["verify", "php.opb", "php.pbp", "--trace"]);
    let text = stdout(&out);
    let proof = fs::read_to_string(dir.path().join("php.pbp")).unwrap();
    let commands = proof.lines().filter(|l| !l.is_empty() && !l.starts_with('*')).count();
    let traced: Vec<&str> = text.lines().skip(1).collect();
    assert!(traced.iter().any(|l| l.contains(" f +1..")), "{text}");
    assert!(traced.len() <= commands && traced.len() > commands / 2, "{} of {commands}", traced.len());
}

#[test]
fn php_and_breaksym_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let gen = pbdom(dir.path(), &["gen", "php", "--pigeons", "4", "--holes", "3", "-o", "p"]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let syms = fs::read_to_string(dir.path().join("p.sym")).unwrap();
    assert_eq!(syms.lines().count(), 5);
    let brk = pbdom(dir.path(), &["gen", "breaksym", "--opb", "p.opb", "--syms", "p.sym", "--limit", "3"]);
    assert!(brk.status.success(), "{}", String::from_utf8_lossy(&brk.stderr));
    let out = pbdom(dir.path(), &["verify", "p.opb", "p.pbp", "--safety-oracle", "0"]);
    assert_eq!(out.status.code(), Some(2), "oracle must refuse 12+ variables");
    let out = pbdom(dir.path(), &["verify", "p.opb", "p.pbp"]);
    assert_eq!(stdout(&out).lines().next(), Some("VERIFIED NONE"));
}

#[test]
fn clique_on_a_triangle_with_a_pendant() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.col"), "c triangle plus pendant\np edge 4 4\ne 1 2\ne 2 3\ne 1 3\ne 3 4\n").unwrap();
    let out = pbdom(dir.path(), &["gen", "clique", "--graph", "g.col"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("optimum 3"), "{text}");
    assert!(text.contains("clique 1 2 3"), "{text}");
    let check = pbdom(dir.path(), &["verify", "g.opb", "g.pbp"]);
    assert_eq!(stdout(&check).lines().next(), Some("VERIFIED OPTIMAL 1"));
}

#[test]
fn malformed_graph_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.col"), "p edge 2 1\ne 1 5\n").unwrap();
    let out = pbdom(dir.path(), &["gen", "clique", "--graph", "g.col"]);
    assert_eq!(out.status.code(), Some(2));
}
