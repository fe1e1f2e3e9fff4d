//! Reverse-polish cutting-planes derivations and subproof steps.

use std::rc::Rc;

use num_bigint::BigInt;

use crate::pb::{Constraint, Lit};
use crate::propagation::RupChecker;

/// A reference to a constraint: absolute id, or `-k` for the k-th most
/// recent live constraint.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdRef {
    Abs(u64),
    Rel(u64),
}

impl IdRef {
    /// Parses `17` or `-2`.
    pub fn parse(token: &str) -> Option<IdRef> {
        if let Some(rest) = token.strip_prefix('-') {
            rest.parse::<u64>().ok().filter(|&k| k > 0).map(IdRef::Rel)
        } else {
            token.parse::<u64>().ok().filter(|&k| k > 0).map(IdRef::Abs)
        }
    }
}

impl std::fmt::Display for IdRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdRef::Abs(k) => write!(f, "{k}"),
            IdRef::Rel(k) => write!(f, "-{k}"),
        }
    }
}

/// One token of a `pol` program.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolToken {
    Id(IdRef),
    /// Pushes the literal axiom `ℓ ≥ 0`.
    Axiom(Lit),
    Add,
    Mul(BigInt),
    Div(BigInt),
    Sat,
}

/// A derivation step allowed inside subproofs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Pol(Vec<PolToken>),
    Rup(Constraint),
}

/// A step together with its source line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocatedStep {
    pub line: usize,
    pub step: Step,
}

/// `proofgoal #k … qed r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subproof {
    pub goal: usize,
    pub line: usize,
    pub steps: Vec<LocatedStep>,
    pub qed: IdRef,
    pub qed_line: usize,
}

/// A rejection raised while checking a rule, optionally pinned to a line
/// inside a multi-line command.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct RuleError {
    pub line: Option<usize>,
    pub message: String,
}

impl RuleError {
    pub fn new(message: impl Into<String>) -> RuleError {
        RuleError { line: None, message: message.into() }
    }

    pub fn at(line: usize, message: impl Into<String>) -> RuleError {
        RuleError { line: Some(line), message: message.into() }
    }

    /// Pins the error to `line` unless it already carries one.
    pub fn or_at(mut self, line: usize) -> RuleError {
        self.line.get_or_insert(line);
        self
    }
}

pub type RuleResult<T> = Result<T, RuleError>;

/// The constraint database a derivation runs against.
pub trait Db {
    fn get(&self, r: IdRef) -> RuleResult<Rc<Constraint>>;
    fn insert(&mut self, c: Constraint) -> u64;
    /// RUP check of `c` against every visible constraint.
    fn rup(&self, c: &Constraint) -> bool;
}

/// Evaluates a `pol` program.
pub fn eval_pol(db: &dyn Db, tokens: &[PolToken]) -> RuleResult<Constraint> {
    let mut stack: Vec<Constraint> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        let pos = i + 1;
        let underflow = || RuleError::new(format!("pol: stack underflow at token {pos}"));
        match tok {
            PolToken::Id(r) => {
                let c = db.get(*r).map_err(|e| RuleError::new(format!("pol token {pos}: {}", e.message)))?;
                stack.push((*c).clone());
            }
            PolToken::Axiom(l) => stack.push(Constraint::literal_axiom(*l)),
            PolToken::Add => {
                let b = stack.pop().ok_or_else(underflow)?;
                let a = stack.pop().ok_or_else(underflow)?;
                stack.push(a.add(&b));
            }
            PolToken::Mul(k) => {
                let a = stack.pop().ok_or_else(underflow)?;
                stack.push(a.multiply(k).map_err(|e| RuleError::new(format!("pol token {pos}: {e}")))?);
            }
            PolToken::Div(d) => {
                let a = stack.pop().ok_or_else(underflow)?;
                stack.push(a.divide(d).map_err(|e| RuleError::new(format!("pol token {pos}: {e}")))?);
            }
            PolToken::Sat => {
                let a = stack.pop().ok_or_else(underflow)?;
                stack.push(a.saturate());
            }
        }
    }
    match stack.len() {
        1 => Ok(stack.pop().unwrap()),
        0 => Err(RuleError::new("pol: empty program")),
        k => Err(RuleError::new(format!("pol: {k} operands left on the stack"))),
    }
}

/// Runs one step, returning the new id.
pub fn run_step(db: &mut dyn Db, step: &LocatedStep) -> RuleResult<u64> {
    let c = match &step.step {
        Step::Pol(tokens) => eval_pol(db, tokens).map_err(|e| e.or_at(step.line))?,
        Step::Rup(c) => {
            if !db.rup(c) {
                return Err(RuleError::at(step.line, "rup: constraint is not implied by unit propagation"));
            }
            c.clone()
        }
    };
    Ok(db.insert(c))
}

/// A small standalone database with its own id space (used for order proofs).
#[derive(Default)]
pub struct LocalDb {
    slots: Vec<Option<Rc<Constraint>>>,
}

impl LocalDb {
    pub fn new() -> LocalDb {
        LocalDb::default()
    }

    pub fn retire_from(&mut self, id: u64) {
        for slot in self.slots.iter_mut().skip(id as usize - 1) {
            *slot = None;
        }
    }

    pub fn next_id(&self) -> u64 {
        self.slots.len() as u64 + 1
    }

    pub fn live(&self) -> impl Iterator<Item = &Constraint> {
        self.slots.iter().flatten().map(|c| c.as_ref())
    }
}

impl Db for LocalDb {
    fn get(&self, r: IdRef) -> RuleResult<Rc<Constraint>> {
        let found = match r {
            IdRef::Abs(k) => self.slots.get(k as usize - 1).cloned().flatten(),
            IdRef::Rel(k) => self.slots.iter().rev().flatten().nth(k as usize - 1).cloned(),
        };
        found.ok_or_else(|| RuleError::new(format!("constraint {r} is not available")))
    }

    fn insert(&mut self, c: Constraint) -> u64 {
        self.slots.push(Some(Rc::new(c)));
        self.slots.len() as u64
    }

    fn rup(&self, c: &Constraint) -> bool {
        RupChecker::new(self.live().collect()).implies(c)
    }
}
