use std::fmt::Write as _;

use num_bigint::BigInt;

use super::tokens::{tokenize, Cursor, ParseError};
use super::render_constraint;
use crate::pb::{normalize, Constraint, Objective, VarTable};

/// A parsed OPB file.
#[derive(Clone, Debug, Default)]
pub struct ParsedInstance {
    pub vars: VarTable,
    pub declared_vars: Option<usize>,
    pub declared_constraints: Option<usize>,
    pub objective: Objective,
    /// After `=` expansion.
    pub constraints: Vec<Constraint>,
    /// Constraint lines in the file, before expansion.
    pub constraint_lines: usize,
}

fn header_value(line: &str, key: &str) -> Option<usize> {
    let rest = &line[line.find(key)? + key.len()..];
    rest.split_whitespace().next()?.parse().ok()
}

/// Parses an OPB instance.
pub fn parse_opb(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut inst = ParsedInstance::default();
    let mut seen_constraint = false;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim_start();
        if trimmed.starts_with('*') {
            if inst.declared_vars.is_none() {
                inst.declared_vars = header_value(trimmed, "#variable=");
                inst.declared_constraints = header_value(trimmed, "#constraint=");
            }
            continue;
        }
        let toks = tokenize(line);
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line_no, &toks);
        if cur.peek() == Some("min:") {
            if seen_constraint || !inst.objective.terms().is_empty() {
                return Err(cur.error("the objective must come first and only once"));
            }
            cur.next();
            let mut terms = Vec::new();
            while cur.peek() != Some(";") {
                if cur.at_end() {
                    return Err(cur.error("missing `;` after the objective"));
                }
                let coef = cur.integer("a coefficient")?;
                let lit = cur.lit(&mut inst.vars)?;
                terms.push((coef, lit));
            }
            cur.expect(";")?;
            cur.expect_end()?;
            inst.objective = Objective::new(terms, BigInt::from(0));
            continue;
        }
        let (terms, rel, rhs) = cur.raw_constraint(&mut inst.vars)?;
        cur.expect(";")?;
        cur.expect_end()?;
        inst.constraints.extend(normalize(&terms, rel, &rhs));
        inst.constraint_lines += 1;
        seen_constraint = true;
    }
    Ok(inst)
}

/// Writes an instance back as OPB.
pub fn render_opb(inst: &ParsedInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "* #variable= {} #constraint= {}", inst.vars.len(), inst.constraints.len());
    if !inst.objective.terms().is_empty() {
        out.push_str("min:");
        for (w, l) in inst.objective.terms() {
            let _ = write!(out, " {} {}", w, inst.vars.lit_name(*l));
        }
        out.push_str(" ;\n");
    }
    for c in &inst.constraints {
        out.push_str(&render_constraint(c, &inst.vars));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pb::Lit;

    #[test]
    fn parses_objective_and_equalities() {
        let text = "* #variable= 3 #constraint= 2\nmin: 1 ~v1 1 ~v2 1 ~v3 ;\n1 v1 1 v2 = 1 ;\n* comment\n+1 v1 -2 v3 >= -1 ;\n";
        let inst = parse_opb(text).unwrap();
        assert_eq!(inst.declared_vars, Some(3));
        assert_eq!(inst.declared_constraints, Some(2));
        assert_eq!(inst.constraint_lines, 2);
        assert_eq!(inst.constraints.len(), 3);
        assert_eq!(inst.objective.terms().len(), 3);
        let v1 = inst.vars.lookup("v1").unwrap();
        assert_eq!(inst.objective.terms()[0].1, Lit::neg(v1));
        let round = parse_opb(&render_opb(&inst)).unwrap();
        assert_eq!(round.constraints, inst.constraints);
        assert_eq!(round.objective, inst.objective);
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_opb("1 x >= 1 ;\n1 x 2 >= 1 ;\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 7));
        let err = parse_opb("1 x >= 1\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(parse_opb("1 x > 1 ;").is_err());
    }
}
