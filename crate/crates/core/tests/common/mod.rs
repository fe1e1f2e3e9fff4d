#![allow(dead_code)]

use pbdom::formats::ParsedInstance;
use pbdom::generators::{emit_symmetry_breaking, parse_symmetries, pigeonhole, BreakOptions, Graph};
use pbdom::pb::Var;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The seven pigeonhole symmetries broken in the worked PHP(4,3) example, in order.
pub const PHP43_SYMMETRIES: &str = "\
(p11 p43)(p12 p42)(p13 p41)(p21 p23)(p31 p33)
(p11 p12)(p21 p32)(p22 p31)(p23 p33)(p41 p42)
(p21 p11)(p22 p12)(p23 p13)
(p11 p31)(p12 p32)(p13 p33)
(p31 p41)(p32 p42)(p33 p43)
(p21 p22)(p11 p12)(p31 p32)(p41 p42)
(p22 p23)(p12 p13)(p32 p33)(p42 p43)
";

pub const PHP43_ORDER: &str = "p21 p22 p23 p11 p12 p13 p31 p32 p33 p41 p42 p43";

/// PHP(4,3) with its symmetry-breaking proof.
pub fn php43_breaking() -> (ParsedInstance, String) {
    let inst = pigeonhole(4, 3);
    let syms = parse_symmetries(PHP43_SYMMETRIES, &inst.vars).unwrap();
    let order: Vec<Var> = PHP43_ORDER.split(' ').map(|n| inst.vars.lookup(n).unwrap()).collect();
    let proof = emit_symmetry_breaking(&inst, &syms, &order, &BreakOptions::default()).unwrap();
    (inst, proof)
}

/// G(n, p) with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

pub fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

/// Splits proof text into tokens, with `;` always a token of its own.
pub fn tokens(text: &str) -> Vec<String> {
    text.replace(';', " ; ").split_whitespace().map(str::to_string).collect()
}

/// Peak resident set size in KiB, where the platform reports it.
pub fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}
