//! Text formats: OPB instances, the proof dialect, and constraint rendering.

mod opb;
mod proof;
mod tokens;

pub use opb::{parse_opb, render_opb, ParsedInstance};
pub use proof::{parse_constraint_line, Command, Located, OutputKind, ProofParser, RawImage, RawWitness};
pub use tokens::ParseError;

use crate::pb::{Constraint, Image, Substitution, VarTable};

/// Canonical text `<coef> <lit> … >= <degree> ;`.
pub fn render_constraint(c: &Constraint, vars: &VarTable) -> String {
    let mut out = String::new();
    for t in c.terms() {
        out.push_str(&format!("{} {} ", t.coef, vars.lit_name(t.lit)));
    }
    out.push_str(&format!(">= {} ;", c.degree()));
    out
}

/// Witness text `x -> 0 y -> ~z`, in variable order.
pub fn render_witness(w: &Substitution, vars: &VarTable) -> String {
    let parts: Vec<String> = w
        .iter()
        .map(|(v, img)| {
            let rhs = match img {
                Image::Const(b) => (b as u8).to_string(),
                Image::Lit(l) => vars.lit_name(l),
            };
            format!("{} -> {}", vars.name(v), rhs)
        })
        .collect();
    parts.join(" ")
}
