//! Slack-based unit propagation and reverse unit propagation (RUP).
//!
//! The engine keeps, for every constraint, its slack: the sum of coefficients
//! of literals that are not falsified minus the degree. A negative slack is a
//! conflict; an unassigned literal whose coefficient exceeds the slack must be
//! true. Slack updates are driven by occurrence lists, so assigning a literal
//! only touches the constraints that contain its negation.
//!
//! Engines use machine integers when every constraint fits comfortably and
//! fall back to big integers otherwise; both paths give identical verdicts.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::pb::{Constraint, Lit, Var};

/// Identifier attached to a constraint in a propagation database.
pub type ConstraintId = u64;

/// Why a literal is on the trail.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reason {
    Decision,
    /// Propagated by the constraint with this id (`None` for unnamed extras).
    Propagated(Option<ConstraintId>),
}

/// A partial assignment with its trail.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
    trail: Vec<(Lit, Reason)>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Sets `lit` true as a decision. Returns false if its negation is already set.
    pub fn decide(&mut self, lit: Lit) -> bool {
        self.set(lit, Reason::Decision)
    }

    fn set(&mut self, lit: Lit, reason: Reason) -> bool {
        let i = lit.var().index();
        if self.values.len() <= i {
            self.values.resize(i + 1, None);
        }
        match self.values[i] {
            Some(b) => b == lit.is_positive(),
            None => {
                self.values[i] = Some(lit.is_positive());
                self.trail.push((lit, reason));
                true
            }
        }
    }

    pub fn value(&self, lit: Lit) -> Option<bool> {
        self.values.get(lit.var().index()).copied().flatten().map(|b| b == lit.is_positive())
    }

    pub fn var_value(&self, var: Var) -> Option<bool> {
        self.values.get(var.index()).copied().flatten()
    }

    pub fn trail(&self) -> &[(Lit, Reason)] {
        &self.trail
    }
}

/// Result of running propagation to completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropagationOutcome {
    Fixpoint(Assignment),
    /// The lowest-id violated constraint and the assignment reached.
    Conflict(ConstraintId, Assignment),
}

/// Slack of `c` under `a`.
pub fn slack(c: &Constraint, a: &Assignment) -> BigInt {
    let mut s = -c.degree().clone();
    for t in c.terms() {
        if a.value(t.lit) != Some(false) {
            s += &t.coef;
        }
    }
    s
}

/// Propagates `db` from `a` until fixpoint or conflict.
pub fn propagate<'a>(
    db: impl IntoIterator<Item = (ConstraintId, &'a Constraint)>,
    a: &Assignment,
) -> PropagationOutcome {
    let db: Vec<(ConstraintId, &Constraint)> = db.into_iter().collect();
    let mut engine = Engine::<BigInt>::new(db.iter().map(|&(id, c)| (Some(id), c)));
    for &(lit, _) in a.trail() {
        engine.decide(lit);
    }
    let conflict = engine.propagate_all();
    let mut out = a.clone();
    for (i, &lit) in engine.trail.iter().enumerate() {
        if a.value(lit).is_none() {
            let reason = engine.reasons[i].map(|ci| engine.cons[ci as usize].id).unwrap_or(None);
            out.set(lit, Reason::Propagated(reason));
        }
    }
    if conflict.is_some() {
        let id = engine
            .violated()
            .filter_map(|ci| engine.cons[ci].id)
            .min()
            .unwrap_or(0);
        PropagationOutcome::Conflict(id, out)
    } else {
        PropagationOutcome::Fixpoint(out)
    }
}

/// True iff `premises ∧ ¬c` propagates to a conflict from the empty assignment.
pub fn rup_check<'a>(premises: impl IntoIterator<Item = (ConstraintId, &'a Constraint)>, c: &Constraint) -> bool {
    let premises: Vec<&Constraint> = premises.into_iter().map(|(_, c)| c).collect();
    let mut checker = RupChecker::new(premises);
    checker.implies(c)
}

/// Numeric type used for slacks.
trait Num: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {
    fn from_big(x: &BigInt) -> Self;
}

impl Num for i64 {
    fn from_big(x: &BigInt) -> i64 {
        x.to_i64().expect("coefficient checked to fit")
    }
}

impl Num for BigInt {
    fn from_big(x: &BigInt) -> BigInt {
        x.clone()
    }
}

const SMALL_LIMIT: i64 = 1 << 60;

fn fits_small(c: &Constraint) -> bool {
    let mut sum: i64 = 0;
    for t in c.terms() {
        match t.coef.to_i64() {
            Some(x) if x < SMALL_LIMIT => sum = sum.saturating_add(x),
            _ => return false,
        }
        if sum >= SMALL_LIMIT {
            return false;
        }
    }
    matches!(c.degree().to_i64(), Some(d) if d < SMALL_LIMIT)
}

struct PCons<N> {
    id: Option<ConstraintId>,
    lits: Vec<Lit>,
    coefs: Vec<N>,
    slack: N,
    max_coef: N,
}

/// Propagation engine with backtracking, generic over the slack type.
struct Engine<N> {
    cons: Vec<PCons<N>>,
    /// For each literal code, the constraints containing that literal.
    occ: Vec<Vec<(u32, u32)>>,
    /// Per variable: 0 unassigned, 1 true, -1 false.
    value: Vec<i8>,
    trail: Vec<Lit>,
    reasons: Vec<Option<u32>>,
    qhead: usize,
    pending: Vec<u32>,
}

impl<N: Num> Engine<N> {
    fn new<'a>(db: impl IntoIterator<Item = (Option<ConstraintId>, &'a Constraint)>) -> Engine<N> {
        let mut e = Engine {
            cons: Vec::new(),
            occ: Vec::new(),
            value: Vec::new(),
            trail: Vec::new(),
            reasons: Vec::new(),
            qhead: 0,
            pending: Vec::new(),
        };
        for (id, c) in db {
            e.add(id, c);
        }
        e
    }

    fn ensure_var(&mut self, v: Var) {
        let i = v.index();
        if self.value.len() <= i {
            self.value.resize(i + 1, 0);
            self.occ.resize(2 * (i + 1), Vec::new());
        }
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var().index()];
        if l.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Registers a constraint under the current assignment and queues it for checking.
    fn add(&mut self, id: Option<ConstraintId>, c: &Constraint) {
        if let Some(v) = c.max_var() {
            self.ensure_var(v);
        }
        let ci = self.cons.len() as u32;
        let mut slack = N::from_big(c.degree());
        slack = {
            let mut s = N::zero();
            s -= &slack;
            s
        };
        let mut max_coef = N::zero();
        let mut lits = Vec::with_capacity(c.len());
        let mut coefs = Vec::with_capacity(c.len());
        for (ti, t) in c.terms().iter().enumerate() {
            let a = N::from_big(&t.coef);
            if self.lit_value(t.lit) >= 0 {
                slack += &a;
            }
            if a > max_coef {
                max_coef = a.clone();
            }
            self.occ[t.lit.code()].push((ci, ti as u32));
            lits.push(t.lit);
            coefs.push(a);
        }
        self.cons.push(PCons { id, lits, coefs, slack, max_coef });
        self.pending.push(ci);
    }

    fn assign(&mut self, lit: Lit, reason: Option<u32>) {
        self.value[lit.var().index()] = if lit.is_positive() { 1 } else { -1 };
        self.trail.push(lit);
        self.reasons.push(reason);
        let neg = (!lit).code();
        for k in 0..self.occ[neg].len() {
            let (ci, ti) = self.occ[neg][k];
            let c = &mut self.cons[ci as usize];
            let a = c.coefs[ti as usize].clone();
            c.slack -= &a;
        }
    }

    fn decide(&mut self, lit: Lit) {
        self.ensure_var(lit.var());
        match self.lit_value(lit) {
            0 => self.assign(lit, None),
            1 => {}
            _ => {
                // Contradictory decisions: represent as an immediate conflict.
                self.pending.push(u32::MAX);
            }
        }
    }

    /// Checks one constraint; returns true on conflict.
    fn check(&mut self, ci: u32) -> bool {
        let c = &self.cons[ci as usize];
        if c.slack < N::zero() {
            return true;
        }
        if c.max_coef <= c.slack {
            return false;
        }
        let mut forced = Vec::new();
        for (l, a) in c.lits.iter().zip(&c.coefs) {
            if *a > c.slack && self.lit_value(*l) == 0 {
                forced.push(*l);
            }
        }
        for l in forced {
            if self.lit_value(l) == 0 {
                self.assign(l, Some(ci));
            }
        }
        false
    }

    /// Runs to fixpoint; returns the conflicting constraint index if any.
    fn propagate_all(&mut self) -> Option<u32> {
        let pending = std::mem::take(&mut self.pending);
        for ci in pending {
            if ci == u32::MAX || self.check(ci) {
                return Some(ci);
            }
        }
        while self.qhead < self.trail.len() {
            let lit = self.trail[self.qhead];
            self.qhead += 1;
            let neg = (!lit).code();
            let mut k = 0;
            while k < self.occ[neg].len() {
                let ci = self.occ[neg][k].0;
                if self.check(ci) {
                    return Some(ci);
                }
                k += 1;
            }
        }
        None
    }

    fn violated(&self) -> impl Iterator<Item = usize> + '_ {
        self.cons.iter().enumerate().filter(|(_, c)| c.slack < N::zero()).map(|(i, _)| i)
    }

    fn mark(&self) -> (usize, usize) {
        (self.trail.len(), self.cons.len())
    }

    fn backtrack(&mut self, (trail_len, cons_len): (usize, usize)) {
        while self.trail.len() > trail_len {
            let lit = self.trail.pop().unwrap();
            self.reasons.pop();
            self.value[lit.var().index()] = 0;
            let neg = (!lit).code();
            for k in 0..self.occ[neg].len() {
                let (ci, ti) = self.occ[neg][k];
                let c = &mut self.cons[ci as usize];
                let a = c.coefs[ti as usize].clone();
                c.slack += &a;
            }
        }
        while self.cons.len() > cons_len {
            let c = self.cons.pop().unwrap();
            let ci = self.cons.len() as u32;
            for l in c.lits {
                let list = &mut self.occ[l.code()];
                while matches!(list.last(), Some(&(x, _)) if x == ci) {
                    list.pop();
                }
            }
        }
        self.qhead = self.trail.len();
        self.pending.clear();
    }
}

/// Root state of an engine: either a fixpoint that can be extended, or a
/// conflict that makes every query succeed.
struct Rooted<N> {
    engine: Engine<N>,
    root_conflict: bool,
}

impl<N: Num> Rooted<N> {
    fn new(premises: &[&Constraint]) -> Rooted<N> {
        let mut engine = Engine::new(premises.iter().map(|c| (None, *c)));
        let root_conflict = engine.propagate_all().is_some();
        Rooted { engine, root_conflict }
    }

    fn refutes(&mut self, extras: &[&Constraint]) -> bool {
        if self.root_conflict {
            return true;
        }
        let mark = self.engine.mark();
        for c in extras {
            self.engine.add(None, c);
        }
        let conflict = self.engine.propagate_all().is_some();
        self.engine.backtrack(mark);
        conflict
    }
}

/// Answers repeated RUP queries against one fixed premise set.
///
/// The premises are propagated once; each query adds its extra constraints on
/// top of the root fixpoint and backtracks afterwards.
pub struct RupChecker<'a> {
    premises: Vec<&'a Constraint>,
    all_small: bool,
    small: Option<Rooted<i64>>,
    big: Option<Rooted<BigInt>>,
}

impl<'a> RupChecker<'a> {
    pub fn new(premises: Vec<&'a Constraint>) -> RupChecker<'a> {
        let all_small = premises.iter().all(|c| fits_small(c));
        RupChecker { premises, all_small, small: None, big: None }
    }

    /// True iff the premises together with `extras` propagate to a conflict.
    pub fn refutes(&mut self, extras: &[&Constraint]) -> bool {
        if self.all_small && extras.iter().all(|c| fits_small(c)) {
            let premises = &self.premises;
            self.small.get_or_insert_with(|| Rooted::new(premises)).refutes(extras)
        } else {
            let premises = &self.premises;
            self.big.get_or_insert_with(|| Rooted::new(premises)).refutes(extras)
        }
    }

    /// RUP check of `c` against the premises.
    pub fn implies(&mut self, c: &Constraint) -> bool {
        let neg = c.negate();
        self.refutes(&[&neg])
    }

    /// Whether the premises alone propagate to a conflict.
    pub fn premises_conflict(&mut self) -> bool {
        self.refutes(&[])
    }
}
