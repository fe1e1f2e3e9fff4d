use std::io::BufRead;

use super::tokens::{parse_int, tokenize, Cursor, ParseError, Tok};
use crate::derivation::{IdRef, LocatedStep, PolToken, Step, Subproof};
use crate::pb::{is_valid_name, Constraint, Lit, Var, VarTable};
use crate::state::Claim;
use crate::strengthening::{Preorder, PreorderProof};

const HEADER: &str = "pseudo-Boolean proof version 2.0";

/// The right-hand side of a witness entry before name resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawImage {
    Const(bool),
    Lit(String),
}

pub type RawWitness = Vec<(String, RawImage)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputKind {
    None,
    /// The id list that must equal the core.
    Equisatisfiable(Vec<u64>),
}

/// One proof command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    LoadFormula(usize),
    Pol(Vec<PolToken>),
    Rup(Constraint),
    Red { constraint: Constraint, witness: RawWitness, subproofs: Option<Vec<Subproof>> },
    Dom { constraint: Constraint, witness: RawWitness, subproofs: Option<Vec<Subproof>> },
    DelDerived(Vec<IdRef>),
    /// `delc ids` without a witness.
    DelCore(Vec<IdRef>),
    DelCoreChecked { id: IdRef, witness: RawWitness, subproofs: Option<Vec<Subproof>> },
    CoreTransfer(Vec<IdRef>),
    Sol(Vec<Lit>),
    PreOrder { order: Preorder, proof: PreorderProof, aux: Vec<String>, fresh: usize },
    LoadOrder(Option<String>, Vec<Var>),
    Output(OutputKind),
    Conclusion(Claim),
    End,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LoadFormula(_) => "f",
            Command::Pol(_) => "pol",
            Command::Rup(_) => "rup",
            Command::Red { .. } => "red",
            Command::Dom { .. } => "dom",
            Command::DelDerived(_) => "del",
            Command::DelCore(_) | Command::DelCoreChecked { .. } => "delc",
            Command::CoreTransfer(_) => "core",
            Command::Sol(_) => "sol",
            Command::PreOrder { .. } => "pre_order",
            Command::LoadOrder(..) => "load_order",
            Command::Output(_) => "output",
            Command::Conclusion(_) => "conclusion",
            Command::End => "end",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located<T> {
    pub line: usize,
    pub item: T,
}

/// Streaming parser: one command per call, reading only what it needs.
pub struct ProofParser<R> {
    reader: R,
    line_no: usize,
    pending: Option<(usize, Vec<Tok>)>,
    started: bool,
    finished: bool,
}

impl<R: BufRead> ProofParser<R> {
    pub fn new(reader: R) -> ProofParser<R> {
        ProofParser { reader, line_no: 0, pending: None, started: false, finished: false }
    }

    /// Next non-blank, non-comment line.
    fn next_line(&mut self) -> Result<Option<(usize, Vec<Tok>)>, ParseError> {
        if let Some(p) = self.pending.take() {
            return Ok(Some(p));
        }
        let mut buf = String::new();
        loop {
            buf.clear();
            let n = self.reader.read_line(&mut buf).map_err(|e| ParseError {
                line: self.line_no + 1,
                col: 1,
                message: format!("read error: {e}"),
            })?;
            if n == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            let text = buf.trim_end_matches(['\n', '\r']);
            if text.trim_start().starts_with('*') {
                continue;
            }
            let toks = tokenize(text);
            if !toks.is_empty() {
                return Ok(Some((self.line_no, toks)));
            }
        }
    }

    fn require_line(&mut self, open_line: usize, what: &str) -> Result<(usize, Vec<Tok>), ParseError> {
        self.next_line()?.ok_or_else(|| ParseError {
            line: open_line,
            col: 1,
            message: format!("unterminated {what} block"),
        })
    }

    /// Parses the next command, interning new variable names into `vars`.
    pub fn next_command(&mut self, vars: &mut VarTable) -> Result<Option<Located<Command>>, ParseError> {
        if !self.started {
            self.started = true;
            let (line, toks) = self.next_line()?.ok_or(ParseError { line: 1, col: 1, message: "empty proof".into() })?;
            let text: Vec<&str> = toks.iter().map(|t| t.text.as_str()).collect();
            if text.join(" ") != HEADER {
                return Err(ParseError { line, col: 1, message: format!("expected `{HEADER}`") });
            }
        }
        let Some((line, toks)) = self.next_line()? else {
            if self.finished {
                return Ok(None);
            }
            return Err(ParseError {
                line: self.line_no.max(1),
                col: 1,
                message: "proof ends without `end pseudo-Boolean proof`".into(),
            });
        };
        let mut cur = Cursor::new(line, &toks);
        if self.finished {
            return Err(cur.error("content after `end pseudo-Boolean proof`"));
        }
        let cmd = self.command(&mut cur, vars)?;
        if cmd == Command::End {
            self.finished = true;
        }
        Ok(Some(Located { line, item: cmd }))
    }

    fn command(&mut self, cur: &mut Cursor, vars: &mut VarTable) -> Result<Command, ParseError> {
        let line = cur.line;
        let word = cur.next().unwrap();
        let cmd = match word {
            "f" => Command::LoadFormula(cur.usize("a constraint count")?),
            "pol" => Command::Pol(pol_tokens(cur, vars)?),
            "rup" => {
                let c = cur.constraint(vars)?;
                optional_semicolon(cur)?;
                Command::Rup(c)
            }
            "red" | "dom" => {
                let constraint = cur.constraint(vars)?;
                cur.expect(";")?;
                let witness = witness(cur)?;
                let subproofs = self.maybe_subproofs(cur, vars, line)?;
                if word == "red" {
                    Command::Red { constraint, witness, subproofs }
                } else {
                    Command::Dom { constraint, witness, subproofs }
                }
            }
            "del" => {
                cur.expect("id")?;
                Command::DelDerived(id_list(cur)?)
            }
            "core" => {
                cur.expect("id")?;
                Command::CoreTransfer(id_list(cur)?)
            }
            "delc" => {
                let first = id_ref(cur)?;
                if cur.peek() == Some(";") {
                    cur.next();
                    let witness = witness(cur)?;
                    let subproofs = self.maybe_subproofs(cur, vars, line)?;
                    Command::DelCoreChecked { id: first, witness, subproofs }
                } else {
                    let mut ids = vec![first];
                    ids.extend(id_list(cur)?);
                    Command::DelCore(ids)
                }
            }
            "sol" => {
                let mut lits = Vec::new();
                while !cur.at_end() {
                    lits.push(cur.lit(vars)?);
                }
                Command::Sol(lits)
            }
            "pre_order" => self.pre_order(cur, line)?,
            "load_order" => {
                let name = cur.next().map(str::to_string);
                let mut zs = Vec::new();
                while let Some(t) = cur.next() {
                    zs.push(vars.intern(t).map_err(|e| cur.error_prev(e.to_string()))?);
                }
                Command::LoadOrder(name, zs)
            }
            "output" => match cur.next() {
                Some("NONE") => Command::Output(OutputKind::None),
                Some("EQUISATISFIABLE") => {
                    while cur.next().is_some() {}
                    Command::Output(OutputKind::Equisatisfiable(self.id_lines()?))
                }
                _ => return Err(cur.error_prev("expected NONE or EQUISATISFIABLE")),
            },
            "conclusion" => {
                let claim = match cur.next() {
                    Some("NONE") => Claim::None,
                    Some("UNSAT") => Claim::Unsat,
                    Some("OPTIMAL") => Claim::Optimal(cur.integer("a value")?),
                    Some("BOUND-GE") => Claim::BoundGe(cur.integer("a value")?),
                    _ => return Err(cur.error_prev("expected NONE, UNSAT, OPTIMAL or BOUND-GE")),
                };
                Command::Conclusion(claim)
            }
            "end" => {
                cur.expect("pseudo-Boolean")?;
                cur.expect("proof")?;
                Command::End
            }
            other => return Err(cur.error_prev(format!("unknown command `{other}`"))),
        };
        cur.expect_end()?;
        Ok(cmd)
    }

    /// Lines made only of integers that follow an `output` command.
    fn id_lines(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut ids = Vec::new();
        while let Some((line, toks)) = self.next_line()? {
            let parsed: Option<Vec<u64>> = toks.iter().map(|t| t.text.parse::<u64>().ok()).collect();
            match parsed {
                Some(v) => ids.extend(v),
                None => {
                    self.pending = Some((line, toks));
                    break;
                }
            }
        }
        Ok(ids)
    }

    fn maybe_subproofs(
        &mut self,
        cur: &mut Cursor,
        vars: &mut VarTable,
        open_line: usize,
    ) -> Result<Option<Vec<Subproof>>, ParseError> {
        if cur.peek() != Some(";") {
            return Ok(None);
        }
        cur.next();
        cur.expect("begin")?;
        cur.expect_end()?;
        // the closing `end` is optional: any other line ends the block
        let mut subproofs = Vec::new();
        loop {
            let (line, toks) = self.require_line(open_line, "begin")?;
            let mut c = Cursor::new(line, &toks);
            match c.next() {
                Some("end") if toks.len() == 1 => return Ok(Some(subproofs)),
                Some("proofgoal") => subproofs.push(self.subproof(&mut c, vars, open_line)?),
                _ => {
                    self.pending = Some((line, toks));
                    return Ok(Some(subproofs));
                }
            }
        }
    }

    /// The body of `proofgoal #k`, through its `qed`.
    fn subproof(&mut self, head: &mut Cursor, vars: &mut VarTable, open_line: usize) -> Result<Subproof, ParseError> {
        let line = head.line;
        let goal = goal_index(head)?;
        head.expect_end()?;
        let mut steps = Vec::new();
        loop {
            let (l, toks) = self.require_line(open_line, "proofgoal")?;
            let mut c = Cursor::new(l, &toks);
            match c.next() {
                Some("qed") => {
                    let qed = id_ref(&mut c)?;
                    c.expect_end()?;
                    return Ok(Subproof { goal, line, steps, qed, qed_line: l });
                }
                Some("pol") => steps.push(LocatedStep { line: l, step: Step::Pol(pol_tokens(&mut c, vars)?) }),
                Some("rup") => {
                    let con = c.constraint(vars)?;
                    optional_semicolon(&mut c)?;
                    steps.push(LocatedStep { line: l, step: Step::Rup(con) });
                }
                _ => return Err(c.error_prev("expected `pol`, `rup` or `qed`")),
            }
            c.expect_end()?;
        }
    }

    /// A `proof … qed` section of a `pre_order` block.
    fn order_proofs(&mut self, vars: &mut VarTable, open_line: usize) -> Result<Vec<Subproof>, ParseError> {
        let mut out = Vec::new();
        loop {
            let (line, toks) = self.require_line(open_line, "pre_order")?;
            let mut c = Cursor::new(line, &toks);
            match c.next() {
                Some("qed") => {
                    c.expect_end()?;
                    return Ok(out);
                }
                Some("proofgoal") => out.push(self.subproof(&mut c, vars, open_line)?),
                _ => return Err(c.error_prev("expected `proofgoal` or `qed`")),
            }
        }
    }

    fn pre_order(&mut self, head: &mut Cursor, open_line: usize) -> Result<Command, ParseError> {
        let name = head.next().ok_or_else(|| head.error("expected an order name"))?.to_string();
        if !is_valid_name(&name) {
            return Err(head.error_prev(format!("invalid order name `{name}`")));
        }
        let mut local = VarTable::new();
        let mut left: Vec<String> = Vec::new();
        let mut right: Vec<String> = Vec::new();
        let mut aux: Vec<String> = Vec::new();
        let mut have_vars = false;
        let mut constraints = Vec::new();
        let mut proof = PreorderProof::default();
        let mut fresh: Vec<String> = Vec::new();
        loop {
            let (line, toks) = self.require_line(open_line, "pre_order")?;
            let mut c = Cursor::new(line, &toks);
            let section = c.next().unwrap();
            c.expect_end()?;
            match section {
                "end" => break,
                "vars" => loop {
                    let (l, toks) = self.require_line(open_line, "vars")?;
                    let mut c = Cursor::new(l, &toks);
                    let list = match c.next().unwrap() {
                        "end" => {
                            c.expect_end()?;
                            break;
                        }
                        "left" => &mut left,
                        "right" => &mut right,
                        "aux" => &mut aux,
                        other => return Err(c.error_prev(format!("unexpected `{other}` in vars"))),
                    };
                    while let Some(t) = c.next() {
                        if !is_valid_name(t) {
                            return Err(c.error_prev(format!("invalid name `{t}`")));
                        }
                        list.push(t.to_string());
                    }
                    have_vars = true;
                },
                "def" => {
                    if !have_vars || left.len() != right.len() {
                        return Err(c.error_prev("`def` needs `vars` with equally long left and right lists"));
                    }
                    if local.is_empty() {
                        for n in left.iter().chain(&right) {
                            if local.lookup(n).is_some() {
                                return Err(c.error_prev(format!("placeholder `{n}` is declared twice")));
                            }
                            local.intern(n).unwrap();
                        }
                    }
                    loop {
                        let (l, toks) = self.require_line(open_line, "def")?;
                        let mut c = Cursor::new(l, &toks);
                        if c.peek() == Some("end") {
                            c.next();
                            c.expect_end()?;
                            break;
                        }
                        let con = c.constraint(&mut local)?;
                        optional_semicolon(&mut c)?;
                        c.expect_end()?;
                        if local.len() > left.len() + right.len() {
                            return Err(ParseError { line: l, col: 1, message: "order constraint uses an undeclared name".into() });
                        }
                        constraints.push(con);
                    }
                }
                "transitivity" => loop {
                    let (l, toks) = self.require_line(open_line, "transitivity")?;
                    let mut c = Cursor::new(l, &toks);
                    match c.next().unwrap() {
                        "end" => {
                            c.expect_end()?;
                            break;
                        }
                        "vars" => {
                            c.expect_end()?;
                            loop {
                                let (l2, toks) = self.require_line(open_line, "vars")?;
                                let mut c = Cursor::new(l2, &toks);
                                match c.next().unwrap() {
                                    "end" => {
                                        c.expect_end()?;
                                        break;
                                    }
                                    "fresh_right" => {
                                        while let Some(t) = c.next() {
                                            fresh.push(t.to_string());
                                        }
                                    }
                                    other => return Err(c.error_prev(format!("unexpected `{other}` in vars"))),
                                }
                            }
                            if local.len() != left.len() + right.len() {
                                return Err(c.error_prev("`transitivity` must follow `def`"));
                            }
                            for n in &fresh {
                                if local.lookup(n).is_some() {
                                    return Err(c.error_prev(format!("placeholder `{n}` is declared twice")));
                                }
                                local.intern(n).map_err(|e| c.error_prev(e.to_string()))?;
                            }
                        }
                        "proof" => {
                            c.expect_end()?;
                            proof.transitivity = self.order_proofs(&mut local, open_line)?;
                        }
                        other => return Err(c.error_prev(format!("unexpected `{other}` in transitivity"))),
                    }
                },
                "reflexivity" => loop {
                    let (l, toks) = self.require_line(open_line, "reflexivity")?;
                    let mut c = Cursor::new(l, &toks);
                    match c.next().unwrap() {
                        "end" => {
                            c.expect_end()?;
                            break;
                        }
                        "proof" => {
                            c.expect_end()?;
                            proof.reflexivity = self.order_proofs(&mut local, open_line)?;
                        }
                        other => return Err(c.error_prev(format!("unexpected `{other}` in reflexivity"))),
                    }
                },
                other => {
                    return Err(ParseError { line, col: 1, message: format!("unexpected `{other}` in pre_order") });
                }
            }
        }
        if !have_vars {
            return Err(ParseError { line: open_line, col: 1, message: "pre_order without vars".into() });
        }
        let arity = left.len();
        if local.len() > 3 * arity {
            return Err(ParseError { line: open_line, col: 1, message: "order proof uses an undeclared name".into() });
        }
        Ok(Command::PreOrder { order: Preorder { name, arity, constraints }, proof, aux, fresh: fresh.len() })
    }
}

fn optional_semicolon(cur: &mut Cursor) -> Result<(), ParseError> {
    if cur.peek() == Some(";") {
        cur.next();
    }
    Ok(())
}

fn goal_index(cur: &mut Cursor) -> Result<usize, ParseError> {
    let t = cur.next().ok_or_else(|| cur.error("expected a goal `#k`"))?;
    t.strip_prefix('#')
        .and_then(|k| k.parse::<usize>().ok())
        .ok_or_else(|| cur.error_prev(format!("expected a goal `#k`, found `{t}`")))
}

fn id_ref(cur: &mut Cursor) -> Result<IdRef, ParseError> {
    let t = cur.next().ok_or_else(|| cur.error("expected a constraint id"))?;
    IdRef::parse(t).ok_or_else(|| cur.error_prev(format!("expected a constraint id, found `{t}`")))
}

fn id_list(cur: &mut Cursor) -> Result<Vec<IdRef>, ParseError> {
    let mut ids = Vec::new();
    while !cur.at_end() {
        ids.push(id_ref(cur)?);
    }
    Ok(ids)
}

fn witness(cur: &mut Cursor) -> Result<RawWitness, ParseError> {
    let mut out = Vec::new();
    while let Some(t) = cur.peek() {
        if t == ";" {
            break;
        }
        cur.next();
        if !is_valid_name(t) {
            return Err(cur.error_prev(format!("invalid witness variable `{t}`")));
        }
        cur.expect("->")?;
        let img = cur.next().ok_or_else(|| cur.error("expected 0, 1 or a literal"))?;
        let image = match img {
            "0" => RawImage::Const(false),
            "1" => RawImage::Const(true),
            lit if is_valid_name(lit.strip_prefix('~').unwrap_or(lit)) => RawImage::Lit(lit.to_string()),
            other => return Err(cur.error_prev(format!("expected 0, 1 or a literal, found `{other}`"))),
        };
        out.push((t.to_string(), image));
    }
    Ok(out)
}

fn pol_tokens(cur: &mut Cursor, vars: &mut VarTable) -> Result<Vec<PolToken>, ParseError> {
    let mut out = Vec::new();
    while let Some(t) = cur.next() {
        let tok = match t {
            "+" => PolToken::Add,
            "s" => PolToken::Sat,
            "*" | "d" => return Err(cur.error_prev(format!("`{t}` must follow a number"))),
            _ => {
                if let Some(k) = parse_int(t) {
                    match cur.peek() {
                        Some("*") => {
                            cur.next();
                            PolToken::Mul(k)
                        }
                        Some("d") => {
                            cur.next();
                            PolToken::Div(k)
                        }
                        _ => PolToken::Id(
                            IdRef::parse(t).ok_or_else(|| cur.error_prev(format!("invalid constraint id `{t}`")))?,
                        ),
                    }
                } else {
                    PolToken::Axiom(vars.parse_lit(t).map_err(|e| cur.error_prev(e.to_string()))?)
                }
            }
        };
        out.push(tok);
    }
    if out.is_empty() {
        return Err(cur.error("empty pol"));
    }
    Ok(out)
}

/// Parses one constraint in proof syntax (used by tests and tools).
pub fn parse_constraint_line(text: &str, vars: &mut VarTable) -> Result<Constraint, ParseError> {
    let toks = tokenize(text);
    let mut cur = Cursor::new(1, &toks);
    let c = cur.constraint(vars)?;
    optional_semicolon(&mut cur)?;
    cur.expect_end()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_all(text: &str) -> Result<(Vec<Located<Command>>, VarTable), ParseError> {
        let mut vars = VarTable::new();
        let mut p = ProofParser::new(text.as_bytes());
        let mut out = Vec::new();
        while let Some(c) = p.next_command(&mut vars)? {
            out.push(c);
        }
        Ok((out, vars))
    }

    const ORDER: &str = "pre_order exp2
	vars
		left u1 u2
		right v1 v2
		aux
	end
	def
		-1 u2 1 v2 -2 u1 2 v1 >= 0;
	end
	transitivity
		vars
			fresh_right w1 w2
		end
		proof
			proofgoal #1
				pol 1 2 + 3 +
			qed -1
		qed
	end
end
";

    #[test]
    fn parses_order_block() {
        let text = format!("pseudo-Boolean proof version 2.0\nf 0\n{ORDER}load_order exp2 a b\nconclusion NONE\nend pseudo-Boolean proof\n");
        let (cmds, vars) = parse_all(&text).unwrap();
        assert_eq!(cmds.len(), 5);
        match &cmds[1].item {
            Command::PreOrder { order, proof, aux, fresh } => {
                assert_eq!(order.arity, 2);
                assert_eq!(order.constraints.len(), 1);
                assert_eq!(proof.transitivity.len(), 1);
                assert_eq!(proof.transitivity[0].qed, IdRef::Rel(1));
                assert!(aux.is_empty());
                assert_eq!(*fresh, 2);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(cmds[2].line, 23);
        assert_eq!(vars.len(), 2);
    }

    #[test]
    fn parses_rules_with_subproofs() {
        let text = "pseudo-Boolean proof version 2.0
f 1
dom 1 x 1 ~y >= 1 ;  x -> y y -> x ; begin
	proofgoal #2
		pol -1 -2 +
	qed -1
end
red 1 y0 >= 1 ; y0 -> 1
pol 26 32 2048 * + x + 2 d s
delc 3 ; ; begin
end
delc 4 5
output EQUISATISFIABLE PERMUTATION
* #variable= 3 #constraint=2
1 2
3
conclusion BOUND-GE 4
end pseudo-Boolean proof
";
        let (cmds, _) = parse_all(text).unwrap();
        let names: Vec<&str> = cmds.iter().map(|c| c.item.name()).collect();
        assert_eq!(names, vec!["f", "dom", "red", "pol", "delc", "delc", "output", "conclusion", "end"]);
        match &cmds[1].item {
            Command::Dom { witness, subproofs, .. } => {
                assert_eq!(witness.len(), 2);
                let sp = &subproofs.as_ref().unwrap()[0];
                assert_eq!((sp.goal, sp.line, sp.qed_line), (2, 4, 6));
            }
            other => panic!("{other:?}"),
        }
        match &cmds[3].item {
            Command::Pol(t) => assert_eq!(t.len(), 8),
            other => panic!("{other:?}"),
        }
        assert_eq!(cmds[6].item, Command::Output(OutputKind::Equisatisfiable(vec![1, 2, 3])));
        assert_eq!(cmds[7].line, 17);
    }

    #[test]
    fn subproof_block_may_end_without_end() {
        let text = "pseudo-Boolean proof version 2.0
f 1
dom 1 x >= 1 ; x -> 1 ; begin
	proofgoal #2
		pol -1 -2 +
	qed -1
red 1 y0 >= 1 ; y0 -> 1
red 1 y1 >= 1 ; y1 -> 1 ; begin
	proofgoal #1
	qed -1
end pseudo-Boolean proof
";
        let (cmds, _) = parse_all(text).unwrap();
        let lines: Vec<usize> = cmds.iter().map(|c| c.line).collect();
        assert_eq!(lines, vec![2, 3, 7, 8, 11]);
        assert!(matches!(&cmds[3].item, Command::Red { subproofs: Some(s), .. } if s.len() == 1));
    }

    #[test]
    fn errors_carry_positions() {
        let bad_header = parse_all("pseudo-Boolean proof version 1.0\n").unwrap_err();
        assert_eq!(bad_header.line, 1);
        let unknown = parse_all("pseudo-Boolean proof version 2.0\nf 1\nfrobnicate 3\n").unwrap_err();
        assert_eq!((unknown.line, unknown.col), (3, 1));
        let unterminated = parse_all("pseudo-Boolean proof version 2.0\nred 1 x >= 1 ; x -> 1 ; begin\nproofgoal #1\n").unwrap_err();
        assert_eq!(unterminated.line, 2);
        let no_end = parse_all("pseudo-Boolean proof version 2.0\nf 1\n").unwrap_err();
        assert!(no_end.message.contains("end pseudo-Boolean proof"));
        let trailing = parse_all("pseudo-Boolean proof version 2.0\nend pseudo-Boolean proof\nf 1\n").unwrap_err();
        assert_eq!(trailing.line, 3);
        let dangling = parse_all("pseudo-Boolean proof version 2.0\npol 1 + * 2\n").unwrap_err();
        assert_eq!((dangling.line, dangling.col), (2, 9));
    }
}
