//! Branch-and-bound maximum clique with colour bounds and lazy vertex dominance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::formats::ParsedInstance;
use crate::pb::{Constraint, Lit, Objective, Var, VarTable};

use super::breaksym::pre_order_block;
use super::GenError;

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![vec![false; n]; n] }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Panics on self-loops and out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop on vertex {u}");
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().filter(|&&b| b).count()
    }

    pub fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().enumerate().filter(|&(_, &b)| b).map(|(v, _)| v)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }
}

/// Reads the DIMACS edge format: `c` comments, one `p edge n m` line, then `e u v` lines (1-based).
pub fn parse_dimacs(text: &str) -> Result<Graph, GenError> {
    let mut graph: Option<Graph> = None;
    for (i, line) in text.lines().enumerate() {
        let err = |message: String| GenError::Syntax { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(err("second `p` line".into()));
                }
                let [_, _, n, _] = fields[..] else {
                    return Err(err("expected `p edge <vertices> <edges>`".into()));
                };
                let n = n.parse().map_err(|_| err(format!("bad vertex count `{n}`")))?;
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| err("edge before the `p` line".into()))?;
                let [_, a, b] = fields[..] else {
                    return Err(err("expected `e <u> <v>`".into()));
                };
                let vertex = |t: &str| match t.parse::<usize>() {
                    Ok(v) if (1..=g.len()).contains(&v) => Ok(v - 1),
                    _ => Err(err(format!("bad vertex `{t}`"))),
                };
                let (a, b) = (vertex(a)?, vertex(b)?);
                if a == b {
                    return Err(err(format!("self-loop on vertex {}", a + 1)));
                }
                g.add_edge(a, b);
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    graph.ok_or(GenError::Syntax { line: 0, message: "missing `p` line".into() })
}

/// `u` dominates `v` when every neighbour of `v` other than `u` is a neighbour of `u`.
pub fn vertex_dominates(g: &Graph, u: usize, v: usize) -> bool {
    u != v && g.neighbours(v).all(|w| w == u || g.adjacent(u, w))
}

/// Higher degree first, ties broken towards the larger index.
fn precedes(g: &Graph, u: usize, v: usize) -> bool {
    (g.degree(u), u) > (g.degree(v), v)
}

/// Colours `order` greedily, each vertex taking the first class with no neighbour.
pub fn greedy_colouring(g: &Graph, order: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in order {
        match classes.iter_mut().find(|c| c.iter().all(|&u| !g.adjacent(u, v))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

/// Size of a maximum clique by exhaustive search.
pub fn max_clique_brute_force(g: &Graph) -> usize {
    fn grow(g: &Graph, cands: &[usize], size: usize) -> usize {
        let mut best = size;
        for (i, &v) in cands.iter().enumerate() {
            let rest: Vec<usize> = cands[i + 1..].iter().copied().filter(|&w| g.adjacent(v, w)).collect();
            best = best.max(grow(g, &rest, size + 1));
        }
        best
    }
    grow(g, &(0..g.len()).collect::<Vec<_>>(), 0)
}

/// A solved instance with its certificate.
#[derive(Clone, Debug)]
pub struct CliqueRun {
    pub instance: ParsedInstance,
    pub proof: String,
    /// A maximum clique, as 0-based vertices.
    pub clique: Vec<usize>,
    /// Vertices skipped because an explored vertex dominated them.
    pub skips: usize,
}

impl CliqueRun {
    /// Size of the clique found; the verified objective is the vertex count minus this.
    pub fn optimum(&self) -> usize {
        self.clique.len()
    }
}

struct Search<'a> {
    g: &'a Graph,
    vars: Vec<Var>,
    table: &'a VarTable,
    pair: HashMap<(usize, usize), u64>,
    use_dominance: bool,
    out: String,
    next_id: u64,
    bound: Option<u64>,
    best: Vec<usize>,
    curr: Vec<usize>,
    dominated: BTreeSet<(usize, usize)>,
    skips: usize,
}

impl Search<'_> {
    fn name(&self, v: usize) -> &str {
        self.table.name(self.vars[v])
    }

    fn emit(&mut self, line: std::fmt::Arguments) {
        let _ = self.out.write_fmt(line);
        self.out.push('\n');
        self.next_id += 1;
    }

    fn record_solution(&mut self) {
        self.best = self.curr.clone();
        let lits: Vec<String> = (0..self.g.len())
            .map(|v| if self.curr.contains(&v) { self.name(v).to_string() } else { format!("~{}", self.name(v)) })
            .collect();
        let line = if lits.is_empty() { "sol".to_string() } else { format!("sol {}", lits.join(" ")) };
        self.emit(format_args!("{line}"));
        self.bound = Some(self.next_id - 1);
    }

    fn sorted(&self, mut vs: Vec<usize>) -> Vec<usize> {
        vs.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if precedes(self.g, b, a) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        vs
    }

    /// Mutually dominating vertices must share a class when non-adjacent and
    /// be coloured in `≻` order when adjacent.
    fn check_colouring(&self, classes: &[Vec<usize>]) {
        let class_of: HashMap<usize, usize> =
            classes.iter().enumerate().flat_map(|(k, c)| c.iter().map(move |&v| (v, k))).collect();
        for (&u, &cu) in &class_of {
            for (&v, &cv) in &class_of {
                if u == v || !vertex_dominates(self.g, u, v) || !vertex_dominates(self.g, v, u) {
                    continue;
                }
                if self.g.adjacent(u, v) {
                    assert!(!precedes(self.g, u, v) || cu > cv, "colouring breaks the order of {u} and {v}");
                } else {
                    assert_eq!(cu, cv, "twins {u} and {v} are split across classes");
                }
            }
        }
    }

    fn pair_id(&self, a: usize, b: usize) -> u64 {
        self.pair[&(a.min(b), a.max(b))]
    }

    /// Derives `Σ ~x ≥ |class| - 1` for a class of pairwise non-adjacent vertices.
    fn at_most_one(&mut self, class: &[usize]) -> u64 {
        let mut amo = self.pair_id(class[0], class[1]);
        for i in 2..class.len() {
            let mut line = format!("pol {amo}");
            if i > 2 {
                let _ = write!(line, " {} *", i - 1);
            }
            for &x in &class[..i] {
                let _ = write!(line, " {} +", self.pair_id(x, class[i]));
            }
            let _ = write!(line, " {i} d");
            self.emit(format_args!("{line}"));
            amo = self.next_id - 1;
        }
        amo
    }

    fn backtrack(&mut self) {
        let lits: Vec<String> = self.curr.iter().map(|&w| format!("1 ~{} ", self.name(w))).collect();
        self.emit(format_args!("rup {}>= 1 ;", lits.concat()));
    }

    fn expand(&mut self, rem: Vec<usize>) {
        if self.curr.len() > self.best.len() {
            self.record_solution();
        }
        let mut rem = self.sorted(rem);
        let classes = greedy_colouring(self.g, &rem);
        self.check_colouring(&classes);
        let mut j = classes.len();
        let mut explored: Vec<usize> = Vec::new();
        while j >= 1 && self.curr.len() + j > self.best.len() {
            for &v in classes[j - 1].iter().rev() {
                if self.use_dominance {
                    if let Some(&u) = explored.iter().find(|&&u| vertex_dominates(self.g, u, v)) {
                        debug_assert!(precedes(self.g, u, v));
                        if self.dominated.insert((u, v)) {
                            let (a, b) = (self.name(u).to_string(), self.name(v).to_string());
                            self.emit(format_args!("dom 1 {a} 1 ~{b} >= 1 ; {a} -> {b} {b} -> {a}"));
                        }
                        self.skips += 1;
                        continue;
                    }
                }
                let child: Vec<usize> = rem.iter().copied().filter(|&w| self.g.adjacent(v, w)).collect();
                self.curr.push(v);
                self.expand(child);
                self.curr.pop();
                explored.push(v);
            }
            rem.retain(|w| !classes[j - 1].contains(w));
            j -= 1;
        }
        if j >= 1 {
            let bound = self.bound.expect("a cut implies an incumbent");
            let mut amos = Vec::new();
            for class in &classes[..j] {
                if class.len() >= 2 {
                    amos.push(self.at_most_one(class));
                }
            }
            if !amos.is_empty() {
                let sum: String = amos.iter().map(|id| format!(" {id} +")).collect();
                self.emit(format_args!("pol {bound}{sum}"));
            }
        }
        self.backtrack();
    }
}

/// Solves maximum clique and emits the instance with a proof of optimality.
///
/// The instance minimises the number of excluded vertices subject to one
/// clause per non-edge. With `use_dominance`, a vertex dominated by an
/// already explored vertex is skipped and justified by a dominance step under
/// the lex order over vertices sorted by `≻`.
pub fn solve_clique_certified(g: &Graph, use_dominance: bool) -> CliqueRun {
    let n = g.len();
    let mut table = VarTable::new();
    let vars: Vec<Var> = (0..n).map(|v| table.intern(&format!("v{}", v + 1)).expect("valid name")).collect();
    let objective = Objective::new(vars.iter().map(|&x| (BigInt::from(1), Lit::neg(x))).collect(), BigInt::from(0));
    let mut constraints = Vec::new();
    let mut pair = HashMap::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.adjacent(a, b) {
                constraints.push(Constraint::clause(&[Lit::neg(vars[a]), Lit::neg(vars[b])]));
                pair.insert((a, b), constraints.len() as u64);
            }
        }
    }
    let m = constraints.len();
    let instance = ParsedInstance {
        declared_vars: Some(n),
        declared_constraints: Some(m),
        constraint_lines: m,
        vars: table,
        objective,
        constraints,
    };

    let mut search = Search {
        g,
        vars,
        table: &instance.vars,
        pair,
        use_dominance,
        out: format!("pseudo-Boolean proof version 2.0\nf {m}\n"),
        next_id: m as u64 + 1,
        bound: None,
        best: Vec::new(),
        curr: Vec::new(),
        dominated: BTreeSet::new(),
        skips: 0,
    };
    if use_dominance && n > 0 {
        search.out.push_str(&pre_order_block("lex", n));
        let order = search.sorted((0..n).collect());
        let names: Vec<&str> = order.iter().map(|&v| search.name(v)).collect();
        let _ = writeln!(search.out, "load_order lex {}", names.join(" "));
    }
    if n == 0 {
        search.record_solution();
    }
    search.expand((0..n).collect());
    let _ = writeln!(search.out, "output NONE\nconclusion OPTIMAL {}\nend pseudo-Boolean proof", n - search.best.len());
    let (proof, clique, skips) = (search.out, search.best, search.skips);
    CliqueRun { instance, proof, clique, skips }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{verify, Options};
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    fn check(g: &Graph, use_dominance: bool) -> CliqueRun {
        let run = solve_clique_certified(g, use_dominance);
        assert!(g.is_clique(&run.clique));
        assert_eq!(run.optimum(), max_clique_brute_force(g));
        if let Err(e) = verify(run.instance.clone(), run.proof.as_bytes(), &Options::default()) {
            panic!("{e}\n{}", run.proof);
        }
        run
    }

    #[test]
    fn parses_dimacs() {
        let g = parse_dimacs("c tiny\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!((g.len(), g.edge_count()), (3, 2));
        assert!(g.adjacent(0, 1) && !g.adjacent(0, 2));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 1\n"), Err(GenError::Syntax { line: 2, .. })));
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
    }

    #[test]
    fn dominance_relation() {
        // path 0-1-2: 1 dominates both ends, the ends dominate each other
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(vertex_dominates(&g, 1, 0));
        assert!(vertex_dominates(&g, 0, 2) && vertex_dominates(&g, 2, 0));
        assert!(!vertex_dominates(&g, 0, 1));
        assert!(!vertex_dominates(&g, 1, 1));
    }

    #[test]
    fn triangle_and_edgeless() {
        assert_eq!(check(&graph(3, &[(0, 1), (1, 2), (0, 2)]), true).optimum(), 3);
        let empty = check(&Graph::new(4), true);
        assert_eq!(empty.optimum(), 1);
        assert!(empty.skips > 0);
        assert!(empty.proof.contains("dom 1 "));
        assert_eq!(check(&Graph::new(0), true).optimum(), 0);
    }

    #[test]
    fn large_colour_class_uses_division() {
        let run = check(&graph(5, &[(0, 1)]), false);
        assert!(run.proof.contains(" 3 d"), "{}", run.proof);
    }

    #[test]
    fn colouring_is_proper() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let classes = greedy_colouring(&g, &[0, 1, 2, 3, 4]);
        assert_eq!(classes.len(), 3);
        for c in &classes {
            assert!(c.iter().all(|&a| c.iter().all(|&b| !g.adjacent(a, b))));
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..8).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::new(n);
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[k] {
                            g.add_edge(a, b);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn certified_optimum_matches_brute_force(g in arb_graph(), dom in any::<bool>()) {
            check(&g, dom);
        }
    }
}
