use crate::formats::ParsedInstance;
use crate::pb::{Constraint, Lit, Var, VarTable};

use super::Symmetry;

fn name(i: usize, j: usize, holes: usize) -> String {
    if holes < 10 {
        format!("p{i}{j}")
    } else {
        format!("p{i}_{j}")
    }
}

/// `pigeons` pigeons into `holes` holes: one at-least-one clause per pigeon,
/// then one at-most-one clause per hole and pair of pigeons.
#[allow(clippy::needless_range_loop)]
pub fn pigeonhole(pigeons: usize, holes: usize) -> ParsedInstance {
    let mut vars = VarTable::new();
    let mut p = vec![vec![Var(0); holes + 1]; pigeons + 1];
    for i in 1..=pigeons {
        for j in 1..=holes {
            p[i][j] = vars.intern(&name(i, j, holes)).expect("generated names are valid");
        }
    }
    let mut constraints = Vec::new();
    for row in p.iter().skip(1) {
        let lits: Vec<Lit> = row[1..].iter().map(|&v| Lit::pos(v)).collect();
        constraints.push(Constraint::clause(&lits));
    }
    for j in 1..=holes {
        for a in 1..=pigeons {
            for b in a + 1..=pigeons {
                constraints.push(Constraint::clause(&[Lit::neg(p[a][j]), Lit::neg(p[b][j])]));
            }
        }
    }
    ParsedInstance {
        declared_vars: Some(vars.len()),
        declared_constraints: Some(constraints.len()),
        constraint_lines: constraints.len(),
        vars,
        objective: Default::default(),
        constraints,
    }
}

/// Adjacent pigeon transpositions followed by adjacent hole transpositions.
pub fn pigeonhole_symmetries(inst: &ParsedInstance, pigeons: usize, holes: usize) -> Vec<Symmetry> {
    let var = |i, j| inst.vars.lookup(&name(i, j, holes)).expect("pigeonhole variable");
    let mut out = Vec::new();
    for i in 1..pigeons {
        out.push(Symmetry::from_swaps((1..=holes).map(|j| (var(i, j), var(i + 1, j)))));
    }
    for j in 1..holes {
        out.push(Symmetry::from_swaps((1..=pigeons).map(|i| (var(i, j), var(i, j + 1)))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::render_opb;
    use crate::pb::tests::assignments;

    #[test]
    fn php_4_3_matches_the_worked_example() {
        let inst = pigeonhole(4, 3);
        assert_eq!(inst.constraints.len(), 22);
        let text = render_opb(&inst);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "* #variable= 12 #constraint= 22");
        assert_eq!(lines[1], "1 p11 1 p12 1 p13 >= 1 ;");
        assert_eq!(lines[5], "1 ~p11 1 ~p21 >= 1 ;");
        assert_eq!(lines[22], "1 ~p33 1 ~p43 >= 1 ;");
    }

    #[test]
    fn small_cases() {
        let one = pigeonhole(1, 1);
        assert_eq!(one.constraints.len(), 1);
        let two = pigeonhole(2, 1);
        assert!(assignments(2).all(|a| two.constraints.iter().any(|c| !c.evaluate(&a))));
        let wide = pigeonhole(2, 10);
        assert!(wide.vars.lookup("p2_10").is_some());
    }

    #[test]
    fn transpositions_are_symmetries() {
        let inst = pigeonhole(4, 3);
        let syms = pigeonhole_symmetries(&inst, 4, 3);
        assert_eq!(syms.len(), 5);
        for s in &syms {
            assert!(s.is_syntactic_symmetry_of(&inst.constraints));
        }
    }
}
