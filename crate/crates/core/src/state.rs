//! The proof configuration and its non-strengthening rules.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;

use crate::derivation::{eval_pol, Db, IdRef, PolToken, RuleError, RuleResult};
use crate::pb::{Constraint, Lit, Objective, Var, VarTable};
use crate::propagation::RupChecker;
use crate::strengthening::{check_preorder, Preorder, PreorderProof};

/// Whether core deletion must be justified.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    #[default]
    Checked,
    Unchecked,
}

/// Which store a live constraint belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Core,
    Derived,
    /// The objective bound `f ≤ v − 1`, a distinguished core member.
    Bound,
    /// Scoped to the rule currently being checked.
    Temp,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Core => "core",
            Role::Derived => "derived",
            Role::Bound => "bound",
            Role::Temp => "temp",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub constraint: Rc<Constraint>,
    pub role: Role,
}

/// An id-level event, recorded when tracing.
#[derive(Clone, Debug)]
pub enum TraceEvent {
    Added(u64, Role, Rc<Constraint>),
    Moved(u64, Role),
    Removed(u64),
}

/// Which live constraints a derivation may see.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Scope {
    pub derived: bool,
    pub excluded: Option<u64>,
}

impl Scope {
    pub const ALL: Scope = Scope { derived: true, excluded: None };

    pub fn admits(&self, id: u64, role: Role) -> bool {
        (self.derived || role != Role::Derived) && self.excluded != Some(id)
    }
}

/// Id-addressed constraint storage with a syntactic index.
#[derive(Default)]
pub struct Store {
    entries: BTreeMap<u64, Entry>,
    index: HashMap<Rc<Constraint>, Vec<u64>>,
    by_var: Vec<BTreeSet<u64>>,
    next_id: u64,
    events: Option<Vec<TraceEvent>>,
}

impl Store {
    pub fn new() -> Store {
        Store { next_id: 1, ..Store::default() }
    }

    pub fn next_id(&self) -> u64 {
        self.next_id
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, c: Constraint, role: Role) -> u64 {
        let id = self.next_id;
        self.next_id += 1;
        let c = Rc::new(c);
        for var in c.vars() {
            if self.by_var.len() <= var.index() {
                self.by_var.resize_with(var.index() + 1, BTreeSet::new);
            }
            self.by_var[var.index()].insert(id);
        }
        self.index.entry(Rc::clone(&c)).or_default().push(id);
        if let Some(ev) = &mut self.events {
            ev.push(TraceEvent::Added(id, role, Rc::clone(&c)));
        }
        self.entries.insert(id, Entry { constraint: c, role });
        id
    }

    pub fn remove(&mut self, id: u64) -> Option<Entry> {
        let entry = self.entries.remove(&id)?;
        for var in entry.constraint.vars() {
            self.by_var[var.index()].remove(&id);
        }
        if let Some(ids) = self.index.get_mut(&entry.constraint) {
            ids.retain(|&i| i != id);
            if ids.is_empty() {
                self.index.remove(&entry.constraint);
            }
        }
        if let Some(ev) = &mut self.events {
            ev.push(TraceEvent::Removed(id));
        }
        Some(entry)
    }

    pub fn get(&self, id: u64) -> Option<&Entry> {
        self.entries.get(&id)
    }

    pub fn set_role(&mut self, id: u64, role: Role) {
        if let Some(e) = self.entries.get_mut(&id) {
            e.role = role;
            if let Some(ev) = &mut self.events {
                ev.push(TraceEvent::Moved(id, role));
            }
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, &Entry)> {
        self.entries.iter().map(|(&id, e)| (id, e))
    }

    pub fn visible(&self, scope: Scope) -> impl DoubleEndedIterator<Item = (u64, &Entry)> {
        self.iter().filter(move |(id, e)| scope.admits(*id, e.role))
    }

    pub fn resolve(&self, r: IdRef, scope: Scope) -> RuleResult<(u64, Rc<Constraint>)> {
        let found = match r {
            IdRef::Abs(id) => self.get(id).filter(|e| scope.admits(id, e.role)).map(|e| (id, e)),
            IdRef::Rel(k) => self.visible(scope).rev().nth(k as usize - 1),
        };
        found
            .map(|(id, e)| (id, Rc::clone(&e.constraint)))
            .ok_or_else(|| RuleError::new(format!("constraint {r} is not available")))
    }

    /// Some visible id holding exactly `c`.
    pub fn find(&self, c: &Constraint, scope: Scope) -> Option<u64> {
        let ids = self.index.get(c)?;
        ids.iter().copied().find(|&id| scope.admits(id, self.entries[&id].role))
    }

    /// Visible ids mentioning any of `vars`, ascending.
    pub fn mentioning(&self, vars: impl IntoIterator<Item = Var>, scope: Scope) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for v in vars {
            if let Some(ids) = self.by_var.get(v.index()) {
                out.extend(ids.iter().copied().filter(|&id| scope.admits(id, self.entries[&id].role)));
            }
        }
        out
    }

    /// Removes every temporary with id at least `from`.
    pub fn retire_temps(&mut self, from: u64) {
        let ids: Vec<u64> = self
            .entries
            .range(from..)
            .filter(|(_, e)| e.role == Role::Temp)
            .map(|(&id, _)| id)
            .collect();
        for id in ids {
            self.remove(id);
        }
    }

    pub fn enable_trace(&mut self) {
        self.events.get_or_insert_with(Vec::new);
    }

    pub fn take_events(&mut self) -> Vec<TraceEvent> {
        self.events.as_mut().map(std::mem::take).unwrap_or_default()
    }
}

/// A view of the store used to run derivations.
pub struct ScopedDb<'a> {
    pub store: &'a mut Store,
    pub scope: Scope,
    pub role: Role,
}

impl Db for ScopedDb<'_> {
    fn get(&self, r: IdRef) -> RuleResult<Rc<Constraint>> {
        self.store.resolve(r, self.scope).map(|(_, c)| c)
    }

    fn insert(&mut self, c: Constraint) -> u64 {
        self.store.insert(c, self.role)
    }

    fn rup(&self, c: &Constraint) -> bool {
        let premises: Vec<&Constraint> = self.store.visible(self.scope).map(|(_, e)| e.constraint.as_ref()).collect();
        RupChecker::new(premises).implies(c)
    }
}

/// Counters reported with `--stats`.
#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct Stats {
    pub rules: BTreeMap<&'static str, u64>,
    pub created: u64,
    pub deleted: u64,
    pub goals_auto: u64,
    pub goals_subproof: u64,
    pub peak_live: usize,
}

impl Stats {
    pub fn count(&mut self, rule: &'static str) {
        *self.rules.entry(rule).or_default() += 1;
    }
}

/// A finalization claim.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Claim {
    None,
    Unsat,
    Optimal(BigInt),
    BoundGe(BigInt),
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Claim::None => write!(f, "NONE"),
            Claim::Unsat => write!(f, "UNSAT"),
            Claim::Optimal(k) => write!(f, "OPTIMAL {k}"),
            Claim::BoundGe(k) => write!(f, "BOUND-GE {k}"),
        }
    }
}

/// The order currently in force.
#[derive(Clone, Debug)]
pub struct LoadedOrder {
    pub order: Rc<Preorder>,
    pub vars: Vec<Var>,
}

/// The configuration (C, D, order, z, v) together with the frozen input.
pub struct Configuration {
    pub vars: VarTable,
    pub(crate) store: Store,
    pub(crate) input: Vec<Constraint>,
    pub(crate) objective: Objective,
    pub(crate) orders: HashMap<String, Rc<Preorder>>,
    pub(crate) order: Option<LoadedOrder>,
    pub(crate) best: Option<BigInt>,
    pub(crate) bound_id: Option<u64>,
    pub(crate) mode: Mode,
    pub stats: Stats,
}

impl Configuration {
    /// Input constraints get ids 1..m in order.
    pub fn new(vars: VarTable, input: Vec<Constraint>, objective: Objective, mode: Mode) -> Configuration {
        let mut store = Store::new();
        for c in &input {
            store.insert(c.clone(), Role::Core);
        }
        let mut cfg = Configuration {
            vars,
            store,
            input,
            objective,
            orders: HashMap::new(),
            order: None,
            best: None,
            bound_id: None,
            mode,
            stats: Stats::default(),
        };
        cfg.stats.peak_live = cfg.store.len();
        cfg
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn input(&self) -> &[Constraint] {
        &self.input
    }

    /// The best value found so far; `None` is ∞.
    pub fn best(&self) -> Option<&BigInt> {
        self.best.as_ref()
    }

    pub fn loaded_order(&self) -> Option<&LoadedOrder> {
        self.order.as_ref()
    }

    pub fn next_id(&self) -> u64 {
        self.store.next_id()
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn enable_trace(&mut self) {
        self.store.enable_trace();
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.store.take_events()
    }

    pub fn live_with_role(&self, role: Role) -> impl Iterator<Item = (u64, &Constraint)> {
        self.store.iter().filter(move |(_, e)| e.role == role).map(|(id, e)| (id, e.constraint.as_ref()))
    }

    pub fn core(&self) -> impl Iterator<Item = (u64, &Constraint)> {
        self.live_with_role(Role::Core)
    }

    pub fn derived(&self) -> impl Iterator<Item = (u64, &Constraint)> {
        self.live_with_role(Role::Derived)
    }

    pub fn bound_constraint(&self) -> Option<(u64, &Constraint)> {
        self.bound_id.map(|id| (id, self.store.get(id).unwrap().constraint.as_ref()))
    }

    pub fn constraint(&self, id: u64) -> Option<&Constraint> {
        self.store.get(id).map(|e| e.constraint.as_ref())
    }

    pub fn role(&self, id: u64) -> Option<Role> {
        self.store.get(id).map(|e| e.role)
    }

    /// True when the loaded order relates every pair of assignments.
    pub fn order_is_trivial(&self) -> bool {
        self.order.as_ref().is_none_or(|o| o.order.is_trivial())
    }

    pub(crate) fn note_live(&mut self) {
        self.stats.peak_live = self.stats.peak_live.max(self.store.len());
    }

    pub(crate) fn add_derived(&mut self, c: Constraint) -> u64 {
        let id = self.store.insert(c, Role::Derived);
        self.stats.created += 1;
        self.note_live();
        id
    }

    fn resolve_id(&self, r: IdRef) -> RuleResult<u64> {
        self.store.resolve(r, Scope::ALL).map(|(id, _)| id)
    }

    /// `pol`: evaluate a cutting-planes program over live constraints.
    pub fn pol(&mut self, tokens: &[PolToken]) -> RuleResult<u64> {
        self.stats.count("pol");
        let db = ScopedDb { store: &mut self.store, scope: Scope::ALL, role: Role::Derived };
        let c = eval_pol(&db, tokens)?;
        Ok(self.add_derived(c))
    }

    /// `rup`: add a constraint implied by unit propagation.
    pub fn rup(&mut self, c: Constraint) -> RuleResult<u64> {
        self.stats.count("rup");
        let db = ScopedDb { store: &mut self.store, scope: Scope::ALL, role: Role::Derived };
        if !db.rup(&c) {
            return Err(RuleError::new("rup: constraint is not implied by unit propagation"));
        }
        Ok(self.add_derived(c))
    }

    /// `sol`: log a solution and tighten the objective bound.
    pub fn sol(&mut self, lits: &[Lit]) -> RuleResult<u64> {
        self.stats.count("sol");
        let mut values: Vec<Option<bool>> = vec![None; self.vars.len()];
        for &l in lits {
            let slot = &mut values[l.var().index()];
            if *slot == Some(!l.is_positive()) {
                return Err(RuleError::new(format!(
                    "sol assigns {} both ways",
                    self.vars.name(l.var())
                )));
            }
            *slot = Some(l.is_positive());
        }
        let needed = self
            .core()
            .flat_map(|(_, c)| c.vars().collect::<Vec<_>>())
            .chain(self.objective.vars());
        for var in needed {
            if values[var.index()].is_none() {
                return Err(RuleError::new(format!("sol does not assign {}", self.vars.name(var))));
            }
        }
        let total: Vec<bool> = values.iter().map(|v| v.unwrap_or(false)).collect();
        if let Some((id, _)) = self.core().find(|(_, c)| !c.evaluate(&total)) {
            return Err(RuleError::new(format!("sol falsifies core constraint {id}")));
        }
        let value = self.objective.evaluate(&total);
        if let Some(best) = &self.best {
            if &value >= best {
                return Err(RuleError::new(format!("sol value {value} does not improve on {best}")));
            }
        }
        if let Some(old) = self.bound_id.take() {
            self.store.remove(old);
            self.stats.deleted += 1;
        }
        let bound = self.objective.at_most(&(&value - 1));
        let id = self.store.insert(bound, Role::Bound);
        self.stats.created += 1;
        self.note_live();
        self.bound_id = Some(id);
        self.best = Some(value);
        Ok(id)
    }

    /// `core id`: move derived constraints to the core.
    pub fn transfer(&mut self, ids: &[IdRef]) -> RuleResult<()> {
        self.stats.count("core");
        let ids: Vec<u64> = ids.iter().map(|&r| self.resolve_id(r)).collect::<RuleResult<_>>()?;
        for &id in &ids {
            if self.role(id) != Some(Role::Derived) {
                return Err(RuleError::new(format!("constraint {id} is not in the derived set")));
            }
        }
        for id in ids {
            self.store.set_role(id, Role::Core);
        }
        Ok(())
    }

    /// `del id`: forget derived constraints.
    pub fn delete_derived(&mut self, ids: &[IdRef]) -> RuleResult<()> {
        self.stats.count("del");
        let ids: Vec<u64> = ids.iter().map(|&r| self.resolve_id(r)).collect::<RuleResult<_>>()?;
        for &id in &ids {
            if self.role(id) != Some(Role::Derived) {
                return Err(RuleError::new(format!("constraint {id} is not in the derived set")));
            }
        }
        for id in ids {
            if self.store.remove(id).is_some() {
                self.stats.deleted += 1;
            }
        }
        Ok(())
    }

    /// `delc` without a witness in unchecked mode.
    pub fn delete_core_unchecked(&mut self, ids: &[IdRef]) -> RuleResult<()> {
        self.stats.count("delc");
        if self.mode != Mode::Unchecked {
            return Err(RuleError::new("unchecked core deletion requires unchecked mode"));
        }
        if self.derived().next().is_some() {
            return Err(RuleError::new("unchecked core deletion needs an empty derived set"));
        }
        let ids: Vec<u64> = ids.iter().map(|&r| self.resolve_id(r)).collect::<RuleResult<_>>()?;
        for &id in &ids {
            if self.role(id) != Some(Role::Core) {
                return Err(RuleError::new(format!("constraint {id} is not in the core set")));
            }
        }
        for id in ids {
            if self.store.remove(id).is_some() {
                self.stats.deleted += 1;
            }
        }
        Ok(())
    }

    /// Registers a preorder once its proofs check.
    pub fn define_preorder(&mut self, order: Preorder, proof: &PreorderProof) -> RuleResult<()> {
        self.stats.count("pre_order");
        if self.orders.contains_key(&order.name) {
            return Err(RuleError::new(format!("order {} is already defined", order.name)));
        }
        check_preorder(&order, proof)?;
        self.orders.insert(order.name.clone(), Rc::new(order));
        Ok(())
    }

    pub fn preorder(&self, name: &str) -> Option<&Rc<Preorder>> {
        self.orders.get(name)
    }

    /// `load_order`; `None` reloads the trivial order.
    pub fn load_order(&mut self, name: Option<&str>, vars: Vec<Var>) -> RuleResult<()> {
        self.stats.count("load_order");
        if let Some((id, _)) = self.derived().next() {
            return Err(RuleError::new(format!(
                "load_order needs an empty derived set, but constraint {id} is derived"
            )));
        }
        let Some(name) = name else {
            if !vars.is_empty() {
                return Err(RuleError::new("the trivial order takes no variables"));
            }
            self.order = None;
            return Ok(());
        };
        let order = self
            .orders
            .get(name)
            .ok_or_else(|| RuleError::new(format!("unknown order {name}")))?;
        if vars.len() != order.arity {
            return Err(RuleError::new(format!(
                "order {name} has arity {} but {} variables were given",
                order.arity,
                vars.len()
            )));
        }
        let distinct: BTreeSet<Var> = vars.iter().copied().collect();
        if distinct.len() != vars.len() {
            return Err(RuleError::new("load_order lists a variable twice"));
        }
        self.order = Some(LoadedOrder { order: Rc::clone(order), vars });
        Ok(())
    }

    fn has_conflict(&self) -> bool {
        self.store.iter().any(|(_, e)| e.role != Role::Temp && e.constraint.is_conflicting())
    }

    /// Checks a finalization claim against the state.
    pub fn conclude(&mut self, claim: &Claim) -> RuleResult<()> {
        self.stats.count("conclusion");
        let need_conflict = || RuleError::new(format!("conclusion {claim} needs a live conflicting constraint"));
        match claim {
            Claim::None => Ok(()),
            Claim::Unsat => {
                if !self.has_conflict() {
                    return Err(need_conflict());
                }
                if let Some(v) = &self.best {
                    return Err(RuleError::new(format!("conclusion UNSAT but a solution of value {v} was logged")));
                }
                Ok(())
            }
            Claim::Optimal(k) | Claim::BoundGe(k) => {
                if matches!(claim, Claim::Optimal(_)) && self.mode != Mode::Checked {
                    return Err(RuleError::new("conclusion OPTIMAL is only available in checked mode"));
                }
                if !self.has_conflict() {
                    return Err(need_conflict());
                }
                match &self.best {
                    Some(v) if v == k => Ok(()),
                    Some(v) => Err(RuleError::new(format!("conclusion claims {k} but the best value is {v}"))),
                    None => Err(RuleError::new(format!("conclusion claims {k} but no solution was logged"))),
                }
            }
        }
    }

    /// `output EQUISATISFIABLE`: the listed ids must be exactly the core.
    pub fn check_core_ids(&self, ids: &[u64]) -> RuleResult<()> {
        let listed: BTreeSet<u64> = ids.iter().copied().collect();
        let core: BTreeSet<u64> = self.core().map(|(id, _)| id).collect();
        if listed != core {
            let missing: Vec<String> = core.difference(&listed).map(|i| i.to_string()).collect();
            let extra: Vec<String> = listed.difference(&core).map(|i| i.to_string()).collect();
            return Err(RuleError::new(format!(
                "output core ids differ: missing [{}], not in core [{}]",
                missing.join(" "),
                extra.join(" ")
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pb::tests::{c, n, p};

    fn config(cons: Vec<Constraint>, nvars: usize) -> Configuration {
        let mut vars = VarTable::new();
        for i in 0..nvars {
            vars.intern(&format!("x{}", i + 1)).unwrap();
        }
        Configuration::new(vars, cons, Objective::zero(), Mode::Checked)
    }

    #[test]
    fn ids_follow_input_order() {
        let cfg = config(vec![c(&[(1, p(0))], 1), c(&[(1, p(1))], 1)], 2);
        let ids: Vec<u64> = cfg.core().map(|(id, _)| id).collect();
        assert_eq!(ids, vec![1, 2]);
        assert_eq!(cfg.next_id(), 3);
    }

    #[test]
    fn relative_ids_skip_deleted() {
        let mut cfg = config(vec![c(&[(1, p(0)), (1, p(1))], 1), c(&[(1, n(0))], 1)], 2);
        let a = cfg.pol(&[PolToken::Id(IdRef::Abs(1)), PolToken::Id(IdRef::Abs(2)), PolToken::Add]).unwrap();
        assert_eq!(a, 3);
        assert_eq!(cfg.constraint(3).unwrap(), &c(&[(1, p(1))], 1));
        let b = cfg.rup(c(&[(1, p(1))], 1)).unwrap();
        cfg.delete_derived(&[IdRef::Abs(b)]).unwrap();
        assert_eq!(cfg.store.resolve(IdRef::Rel(1), Scope::ALL).unwrap().0, 3);
        assert!(cfg.pol(&[PolToken::Id(IdRef::Abs(b))]).is_err());
    }

    #[test]
    fn rup_rules() {
        let mut cfg = config(vec![c(&[(1, p(0)), (1, p(1))], 1)], 2);
        assert!(cfg.rup(c(&[(1, p(1))], 1)).is_err());
        let mut cfg = config(vec![c(&[(1, p(0))], 1), c(&[(1, n(0))], 1)], 1);
        assert!(cfg.rup(Constraint::contradiction()).is_ok());
        assert!(cfg.conclude(&Claim::Unsat).is_ok());
    }

    #[test]
    fn sol_tightens_bound() {
        let mut vars = VarTable::new();
        for name in ["v1", "v2", "v3"] {
            vars.intern(name).unwrap();
        }
        let obj = Objective::new((0..3).map(|i| (BigInt::from(1), n(i))).collect(), BigInt::from(0));
        let mut cfg = Configuration::new(vars, vec![], obj, Mode::Checked);
        let id = cfg.sol(&[p(0), p(1), p(2)]).unwrap();
        assert_eq!(cfg.best(), Some(&BigInt::from(0)));
        assert!(cfg.constraint(id).unwrap().is_conflicting());
        assert!(cfg.sol(&[p(0), p(1), p(2)]).is_err());
        assert!(cfg.conclude(&Claim::Optimal(BigInt::from(0))).is_ok());
        assert!(cfg.conclude(&Claim::Optimal(BigInt::from(1))).is_err());
        assert!(cfg.conclude(&Claim::Unsat).is_err());
    }

    #[test]
    fn sol_on_decision_problem_is_conflicting() {
        let mut cfg = config(vec![c(&[(1, p(0))], 1)], 1);
        assert!(cfg.sol(&[n(0)]).is_err());
        assert!(cfg.sol(&[]).is_err());
        let id = cfg.sol(&[p(0)]).unwrap();
        assert_eq!(cfg.constraint(id).unwrap(), &Constraint::contradiction());
    }

    #[test]
    fn transfer_and_delete() {
        let mut cfg = config(vec![c(&[(1, p(0))], 1)], 2);
        let d = cfg.rup(c(&[(1, p(0)), (1, p(1))], 1)).unwrap();
        assert!(cfg.delete_derived(&[IdRef::Abs(1)]).is_err());
        assert!(cfg.load_order(None, vec![]).is_err());
        cfg.transfer(&[IdRef::Abs(d)]).unwrap();
        assert_eq!(cfg.role(d), Some(Role::Core));
        assert!(cfg.delete_derived(&[IdRef::Abs(d)]).is_err());
        assert!(cfg.load_order(None, vec![]).is_ok());
        assert!(cfg.transfer(&[]).is_ok());
    }

    #[test]
    fn unchecked_deletion_needs_unchecked_mode() {
        let mut cfg = config(vec![c(&[(1, p(0))], 1)], 1);
        assert!(cfg.delete_core_unchecked(&[IdRef::Abs(1)]).is_err());
        cfg.mode = Mode::Unchecked;
        assert!(cfg.delete_core_unchecked(&[IdRef::Abs(1)]).is_ok());
        assert_eq!(cfg.core().count(), 0);
    }

    #[test]
    fn unchecked_deletion_needs_empty_derived_set_even_without_order() {
        let mut cfg = config(vec![c(&[(1, p(0))], 1), c(&[(1, p(1))], 1)], 2);
        cfg.mode = Mode::Unchecked;
        cfg.rup(c(&[(1, p(0))], 1)).unwrap();
        assert!(cfg.delete_core_unchecked(&[IdRef::Abs(1)]).is_err());
        cfg.transfer(&[IdRef::Abs(3)]).unwrap();
        assert!(cfg.delete_core_unchecked(&[IdRef::Abs(1)]).is_ok());
    }

    #[test]
    fn output_core_ids() {
        let mut cfg = config(vec![c(&[(1, p(0))], 1), c(&[(1, p(1))], 1)], 2);
        let d = cfg.rup(c(&[(1, p(0)), (1, p(1))], 1)).unwrap();
        assert!(cfg.check_core_ids(&[1, 2]).is_ok());
        assert!(cfg.check_core_ids(&[1, 2, d]).is_err());
        cfg.transfer(&[IdRef::Abs(d)]).unwrap();
        assert!(cfg.check_core_ids(&[2, d, 1]).is_ok());
    }
}
