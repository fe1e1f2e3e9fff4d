//! Lex-leader symmetry breaking with a dominance-based justification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::formats::{render_witness, ParsedInstance};
use crate::pb::{Constraint, Image, Lit, Substitution, Var, VarTable};

use super::GenError;

/// A permutation of literals that commutes with negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    map: BTreeMap<Var, Lit>,
}

impl Symmetry {
    /// Product of disjoint variable transpositions.
    pub fn from_swaps(pairs: impl IntoIterator<Item = (Var, Var)>) -> Symmetry {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            map.insert(a, Lit::pos(b));
            map.insert(b, Lit::pos(a));
        }
        Symmetry { map }
    }

    /// Parses cycle notation such as `(x1 x2)(x3 ~x4)` over known variables.
    pub fn parse(text: &str, vars: &VarTable) -> Result<Symmetry, String> {
        let mut cycles: Vec<Vec<Lit>> = Vec::new();
        let mut current: Option<Vec<Lit>> = None;
        let mut word = String::new();
        let flush = |word: &mut String, current: &mut Option<Vec<Lit>>| -> Result<(), String> {
            if word.is_empty() {
                return Ok(());
            }
            let cycle = current.as_mut().ok_or_else(|| format!("`{word}` outside a cycle"))?;
            let (negative, name) = match word.strip_prefix('~') {
                Some(rest) => (true, rest),
                None => (false, word.as_str()),
            };
            let var = vars.lookup(name).ok_or_else(|| format!("unknown variable {name}"))?;
            cycle.push(Lit::new(var, !negative));
            word.clear();
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '(' => {
                    flush(&mut word, &mut current)?;
                    if current.is_some() {
                        return Err("nested `(`".into());
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut word, &mut current)?;
                    cycles.push(current.take().ok_or("unmatched `)`")?);
                }
                c if c.is_whitespace() || c == ',' => flush(&mut word, &mut current)?,
                c => word.push(c),
            }
        }
        flush(&mut word, &mut current)?;
        if current.is_some() {
            return Err("unterminated cycle".into());
        }
        let mut map: BTreeMap<Var, Lit> = BTreeMap::new();
        for cycle in &cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                let image = if from.is_positive() { to } else { !to };
                if let Some(&old) = map.get(&from.var()) {
                    if old != image {
                        return Err(format!("{} is mapped twice", vars.name(from.var())));
                    }
                }
                map.insert(from.var(), image);
            }
        }
        map.retain(|&v, &mut l| l != Lit::pos(v));
        let domain: BTreeSet<Var> = map.keys().copied().collect();
        let range: BTreeSet<Var> = map.values().map(|l| l.var()).collect();
        if domain != range {
            return Err("not a permutation".into());
        }
        Ok(Symmetry { map })
    }

    pub fn image(&self, lit: Lit) -> Lit {
        match self.map.get(&lit.var()) {
            None => lit,
            Some(&l) if lit.is_positive() => l,
            Some(&l) => !l,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    /// Number of non-trivial cycles on variables.
    pub fn cycle_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut cycles = 0;
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            cycles += 1;
            let mut v = start;
            while seen.insert(v) {
                v = self.map[&v].var();
            }
        }
        cycles
    }

    /// Cycle notation accepted by [`Symmetry::parse`].
    pub fn render(&self, vars: &VarTable) -> String {
        let mut seen = BTreeSet::new();
        let mut out = String::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let first = Lit::pos(start);
            let mut cycle = vec![first];
            let mut l = self.image(first);
            while l != first {
                cycle.push(l);
                l = self.image(l);
            }
            seen.extend(cycle.iter().map(|l| l.var()));
            let names: Vec<String> = cycle.iter().map(|&l| vars.lit_name(l)).collect();
            let _ = write!(out, "({})", names.join(" "));
        }
        out
    }

    pub fn witness(&self) -> Substitution {
        let mut w = Substitution::identity();
        for (&v, &l) in &self.map {
            w.insert(v, Image::Lit(l));
        }
        w
    }

    /// Whether applying the permutation maps the constraint multiset onto itself.
    pub fn is_syntactic_symmetry_of(&self, constraints: &[Constraint]) -> bool {
        let w = self.witness();
        let mut count: HashMap<Constraint, i64> = HashMap::new();
        for c in constraints {
            *count.entry(c.clone()).or_default() += 1;
            *count.entry(c.substitute(&w)).or_default() -= 1;
        }
        count.values().all(|&n| n == 0)
    }
}

/// One symmetry per line; blank lines and lines starting with `c`, `*` or `#` are skipped.
pub fn parse_symmetries(text: &str, vars: &VarTable) -> Result<Vec<Symmetry>, GenError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with(['c', '*', '#']) {
            continue;
        }
        out.push(Symmetry::parse(t, vars).map_err(|message| GenError::Syntax { line: i + 1, message })?);
    }
    Ok(out)
}

/// Emission settings.
#[derive(Clone, Debug)]
pub struct BreakOptions {
    pub order_name: String,
    /// Breaking clauses per symmetry.
    pub limit: usize,
    /// Also stop after as many clauses as the symmetry has cycles.
    pub per_cycle: bool,
}

impl Default for BreakOptions {
    fn default() -> BreakOptions {
        BreakOptions { order_name: "exp22".into(), limit: 100, per_cycle: true }
    }
}

fn aux_prefix(vars: &VarTable) -> String {
    let mut prefix = "y".to_string();
    let clashes = |p: &str| {
        vars.vars().any(|v| {
            vars.name(v).strip_prefix(p).is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        })
    };
    while clashes(&prefix) {
        prefix.insert(0, '_');
    }
    prefix
}

pub(super) fn pre_order_block(name: &str, m: usize) -> String {
    let list = |p: &str| (1..=m).map(|i| format!("{p}{i}")).collect::<Vec<_>>().join(" ");
    let mut def = String::new();
    for i in (1..=m).rev() {
        let w = BigInt::one() << (m - i);
        let _ = write!(def, "-{w} u{i} {w} v{i} ");
    }
    format!(
        "pre_order {name}\n\tvars\n\t\tleft {}\n\t\tright {}\n\t\taux\n\tend\n\n\tdef\n\t\t{def}>= 0;\n\tend\n\n\
         \ttransitivity\n\t\tvars\n\t\t\tfresh_right {}\n\t\tend\n\t\tproof\n\t\t\tproofgoal #1\n\
         \t\t\t\tpol 1 2 + 3 +\n\t\t\tqed -1\n\t\tqed\n\tend\nend\n",
        list("u"),
        list("v"),
        list("w"),
    )
}

/// Emits a proof that adds lex-leader breaking clauses for every symmetry.
///
/// The lex order is taken over `order`, most significant first. Each symmetry
/// gets its lex-leader constraint by dominance, then up to `limit` clauses
/// (fewer with `per_cycle`) chained through fresh auxiliary variables.
pub fn emit_symmetry_breaking(
    inst: &ParsedInstance,
    syms: &[Symmetry],
    order: &[Var],
    opts: &BreakOptions,
) -> Result<String, GenError> {
    let vars = &inst.vars;
    if order.is_empty() {
        return Err(GenError::Invalid("the variable order is empty".into()));
    }
    let in_order: BTreeSet<Var> = order.iter().copied().collect();
    if in_order.len() != order.len() {
        return Err(GenError::Invalid("the variable order lists a variable twice".into()));
    }
    for (k, s) in syms.iter().enumerate() {
        if !s.is_syntactic_symmetry_of(&inst.constraints) {
            return Err(GenError::NotSymmetric { index: k + 1 });
        }
        if let Some(v) = s.support().find(|v| !in_order.contains(v)) {
            return Err(GenError::Invalid(format!("symmetry {} moves {} outside the order", k + 1, vars.name(v))));
        }
    }
    let m = order.len();
    let weight = |i: usize| BigInt::one() << (m - 1 - i);
    let name = |l: Lit| vars.lit_name(l);
    let prefix = aux_prefix(vars);
    let mut aux = 0usize;
    let mut fresh = || {
        aux += 1;
        format!("{prefix}{}", aux - 1)
    };

    let mut out = String::new();
    let _ = writeln!(out, "pseudo-Boolean proof version 2.0\nf {}", inst.constraint_lines);
    out.push_str(&pre_order_block(&opts.order_name, m));
    let zs: Vec<&str> = order.iter().map(|&v| vars.name(v)).collect();
    let _ = writeln!(out, "load_order {} {}", opts.order_name, zs.join(" "));

    let mut next_id = inst.constraints.len() as u64 + 1;
    let mut keep: Vec<u64> = Vec::new();
    for (k, s) in syms.iter().enumerate() {
        let moved: Vec<(usize, Var, Lit)> = order
            .iter()
            .enumerate()
            .filter(|&(_, &z)| s.image(Lit::pos(z)) != Lit::pos(z))
            .map(|(i, &z)| (i, z, s.image(Lit::pos(z))))
            .collect();
        if moved.is_empty() {
            let _ = writeln!(out, "* symmetry {} fixes every order variable", k + 1);
            continue;
        }
        out.push_str("dom");
        for &(i, z, img) in moved.iter().rev() {
            let w = weight(i);
            let _ = write!(out, " -{w} {} {w} {}", vars.name(z), name(img));
        }
        let _ = writeln!(out, " >= 0 ; {} ; begin", render_witness(&s.witness(), vars));
        out.push_str("\tproofgoal #2\n\t\tpol -1 -2 +\n\tqed -1\n");
        // negated constraint, reversed order and the sum are temporaries
        let mut acc = next_id + 3;
        next_id += 4;

        let y0 = fresh();
        let _ = writeln!(out, "red 1 {y0} >= 1 ; {y0} -> 1");
        keep.push(next_id);
        next_id += 1;

        let cap = if opts.per_cycle { s.cycle_count() } else { usize::MAX };
        let positions = &moved[..moved.len().min(cap).min(opts.limit)];
        let mut prev = y0;
        for (j, &(i, z, img)) in positions.iter().enumerate() {
            let (nz, zn) = (name(Lit::neg(z)), vars.name(z));
            let (sn, ns) = (name(img), name(!img));
            if j == 0 {
                let _ = writeln!(out, "rup 1 {nz} 1 {sn} >= 1 ;");
            } else {
                let _ = writeln!(out, "rup 1 ~{prev} 1 {nz} 1 {sn} >= 1 ;");
            }
            keep.push(next_id);
            next_id += 1;
            if j + 1 == positions.len() {
                let _ = writeln!(out, "del id {acc}");
                break;
            }
            let y = fresh();
            let _ = writeln!(out, "red 1 {sn} 1 ~{prev} 1 {y} >= 1 ; {y} -> 1");
            let _ = writeln!(out, "red 1 {nz} 1 ~{prev} 1 {y} >= 1 ; {y} -> 1");
            let _ = writeln!(out, "red 1 ~{y} 1 {prev} >= 1 ; {y} -> 0");
            let _ = writeln!(out, "red 1 ~{y} 1 {ns} 1 {zn} >= 1 ; {y} -> 0");
            keep.extend(next_id..next_id + 4);
            let opposite = next_id + 3;
            next_id += 4;
            let _ = writeln!(out, "pol {acc} {opposite} {} * +", weight(i));
            let _ = writeln!(out, "del id {acc}");
            acc = next_id;
            next_id += 1;
            prev = y;
        }
    }
    if !keep.is_empty() {
        let ids: Vec<String> = keep.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "core id {}", ids.join(" "));
    }
    out.push_str("output NONE\nconclusion NONE\nend pseudo-Boolean proof\n");
    Ok(out)
}
