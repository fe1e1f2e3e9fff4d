//! Preorders and the redundance, dominance, and checked-deletion rules.
//!
//! A preorder of arity `n` is a formula over placeholder variables numbered
//! `0..n` (left list `u`), `n..2n` (right list `v`) and, inside transitivity
//! proofs, `2n..3n` (fresh list `w`).

use std::collections::BTreeMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::One;

use crate::derivation::{run_step, Db, IdRef, LocalDb, PolToken, RuleError, RuleResult, Step, Subproof};
use crate::formats::render_constraint;
use crate::pb::{Constraint, Image, Lit, Substitution, Var};
use crate::propagation::RupChecker;
use crate::state::{Configuration, Role, Scope, ScopedDb};

/// A named preorder `O(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    pub name: String,
    pub arity: usize,
    pub constraints: Vec<Constraint>,
}

/// Subproofs for the two order properties, indexed by goal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreorderProof {
    pub reflexivity: Vec<Subproof>,
    pub transitivity: Vec<Subproof>,
}

impl Preorder {
    pub fn left(&self, i: usize) -> Var {
        Var(i as u32)
    }

    pub fn right(&self, i: usize) -> Var {
        Var((self.arity + i) as u32)
    }

    pub fn fresh(&self, i: usize) -> Var {
        Var((2 * self.arity + i) as u32)
    }

    /// No constraint can ever fail.
    pub fn is_trivial(&self) -> bool {
        self.constraints.iter().all(Constraint::is_trivial)
    }

    /// `O(left, right)` with the placeholders replaced by the given images.
    pub fn instantiate(&self, left: &[Image], right: &[Image]) -> Vec<Constraint> {
        let mut w = Substitution::identity();
        for i in 0..self.arity {
            w.insert(self.left(i), left[i]);
            w.insert(self.right(i), right[i]);
        }
        self.constraints.iter().map(|c| c.substitute(&w)).collect()
    }

    /// Whether `left ⪯ right` for total assignments of the order variables.
    pub fn holds(&self, left: &[bool], right: &[bool]) -> bool {
        let values: Vec<bool> = left.iter().chain(right).copied().collect();
        self.constraints.iter().all(|c| c.evaluate(&values))
    }

    fn placeholder_map(&self, f: impl Fn(usize) -> (Var, Var)) -> Substitution {
        let mut w = Substitution::identity();
        for i in 0..self.arity {
            let (from, to) = f(i);
            w.insert(from, Image::Lit(Lit::pos(to)));
        }
        w
    }
}

/// The lexicographic order `Σ 2^(n−i) (v_i − u_i) ≥ 0` with its transitivity proof.
pub fn lex_order(name: &str, n: usize) -> (Preorder, PreorderProof) {
    let mut terms = Vec::with_capacity(2 * n);
    for i in 0..n {
        let weight = BigInt::one() << (n - 1 - i);
        terms.push((-weight.clone(), Lit::pos(Var(i as u32))));
        terms.push((weight, Lit::pos(Var((n + i) as u32))));
    }
    let order = Preorder { name: name.to_string(), arity: n, constraints: vec![Constraint::geq(terms, BigInt::from(0))] };
    let sum = crate::derivation::LocatedStep {
        line: 0,
        step: Step::Pol(vec![
            PolToken::Id(IdRef::Abs(1)),
            PolToken::Id(IdRef::Abs(2)),
            PolToken::Add,
            PolToken::Id(IdRef::Abs(3)),
            PolToken::Add,
        ]),
    };
    let proof = PreorderProof {
        reflexivity: vec![],
        transitivity: vec![Subproof { goal: 1, line: 0, steps: vec![sum], qed: IdRef::Rel(1), qed_line: 0 }],
    };
    (order, proof)
}

fn index_subproofs<'a>(subproofs: &'a [Subproof], goals: usize, what: &str) -> RuleResult<BTreeMap<usize, &'a Subproof>> {
    let mut map = BTreeMap::new();
    for sp in subproofs {
        if sp.goal == 0 || sp.goal > goals {
            return Err(RuleError::at(sp.line, format!("{what} has no goal #{} ({goals} goals)", sp.goal)));
        }
        if map.insert(sp.goal, sp).is_some() {
            return Err(RuleError::at(sp.line, format!("goal #{} is addressed twice", sp.goal)));
        }
    }
    Ok(map)
}

/// Runs a subproof in a local id space and returns the constraint named by `qed`.
fn run_local(db: &mut LocalDb, sp: &Subproof) -> RuleResult<Rc<Constraint>> {
    for step in &sp.steps {
        run_step(db, step)?;
    }
    db.get(sp.qed).map_err(|e| e.or_at(sp.qed_line))
}

fn local_auto(premises: &[Constraint], target: &Constraint) -> bool {
    target.is_trivial()
        || premises.iter().any(|p| p == target || p.literal_axiom_implies(target))
        || RupChecker::new(premises.iter().collect()).implies(target)
}

/// Checks reflexivity and transitivity of `order`.
pub fn check_preorder(order: &Preorder, proof: &PreorderProof) -> RuleResult<()> {
    let n = order.arity;
    if let Some(v) = order.constraints.iter().flat_map(|c| c.vars()).find(|v| v.index() >= 2 * n) {
        return Err(RuleError::new(format!("order {} mentions placeholder {} outside its lists", order.name, v.0)));
    }

    let refl_map = order.placeholder_map(|i| (order.right(i), order.left(i)));
    let refl_goals: Vec<Constraint> = order.constraints.iter().map(|c| c.substitute(&refl_map)).collect();
    let refl_proofs = index_subproofs(&proof.reflexivity, refl_goals.len(), "reflexivity")?;
    for (i, goal) in refl_goals.iter().enumerate() {
        let k = i + 1;
        if let Some(sp) = refl_proofs.get(&k) {
            let mut db = LocalDb::new();
            db.insert(goal.negate());
            let q = run_local(&mut db, sp)?;
            if !(q.is_conflicting() || q.literal_axiom_implies(goal)) {
                return Err(RuleError::at(sp.qed_line, format!("reflexivity goal #{k} is not closed by the qed constraint")));
            }
        } else if !local_auto(&[], goal) {
            return Err(RuleError::new(format!("order {}: reflexivity goal #{k} does not hold automatically", order.name)));
        }
    }

    let mut vw = Substitution::identity();
    for i in 0..n {
        vw.insert(order.left(i), Image::Lit(Lit::pos(order.right(i))));
        vw.insert(order.right(i), Image::Lit(Lit::pos(order.fresh(i))));
    }
    let uw = order.placeholder_map(|i| (order.right(i), order.fresh(i)));
    let mut premises: Vec<Constraint> = order.constraints.clone();
    premises.extend(order.constraints.iter().map(|c| c.substitute(&vw)));
    let goals: Vec<Constraint> = order.constraints.iter().map(|c| c.substitute(&uw)).collect();
    let trans_proofs = index_subproofs(&proof.transitivity, goals.len(), "transitivity")?;
    let mut db = LocalDb::new();
    for p in &premises {
        db.insert(p.clone());
    }
    for (i, goal) in goals.iter().enumerate() {
        let k = i + 1;
        if let Some(sp) = trans_proofs.get(&k) {
            let mark = db.next_id();
            db.insert(goal.negate());
            let q = run_local(&mut db, sp)?;
            if !(q.is_conflicting() || q.literal_axiom_implies(goal)) {
                return Err(RuleError::at(
                    sp.qed_line,
                    format!("transitivity goal #{k} is not closed: the qed constraint is not conflicting"),
                ));
            }
            db.retire_from(mark);
        } else if !local_auto(&premises, goal) {
            return Err(RuleError::new(format!("order {}: transitivity goal #{k} does not hold automatically", order.name)));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum RuleKind {
    Redundance,
    Dominance,
    Deletion(u64),
}

enum Slot {
    Order,
    Contradiction,
    Objective,
    Source(u64),
    Final,
}

enum Goal {
    Ordinary(Vec<Constraint>),
    Contradiction(Vec<Constraint>),
}

impl Configuration {
    /// `red`: add `c` to the derived set, justified by witness `w`.
    pub fn redundance(&mut self, c: Constraint, w: &Substitution, subproofs: Option<&[Subproof]>) -> RuleResult<u64> {
        self.stats.count("red");
        self.strengthen(RuleKind::Redundance, &c, w, subproofs)?;
        Ok(self.add_derived(c))
    }

    /// `dom`: add `c` to the derived set, justified by a strict decrease in the order.
    pub fn dominance(&mut self, c: Constraint, w: &Substitution, subproofs: Option<&[Subproof]>) -> RuleResult<u64> {
        self.stats.count("dom");
        self.strengthen(RuleKind::Dominance, &c, w, subproofs)?;
        Ok(self.add_derived(c))
    }

    /// `delc`: remove a core constraint that is re-derivable by redundance from the rest of the core.
    pub fn delete_core_checked(&mut self, id: IdRef, w: &Substitution, subproofs: Option<&[Subproof]>) -> RuleResult<()> {
        self.stats.count("delc");
        let (id, c) = self.store.resolve(id, Scope::ALL)?;
        if self.role(id) != Some(Role::Core) {
            return Err(RuleError::new(format!("constraint {id} is not in the core set")));
        }
        self.strengthen(RuleKind::Deletion(id), &c, w, subproofs)?;
        self.store.remove(id);
        self.stats.deleted += 1;
        Ok(())
    }

    fn strengthen(&mut self, kind: RuleKind, c: &Constraint, w: &Substitution, subproofs: Option<&[Subproof]>) -> RuleResult<()> {
        let mark = self.store.next_id();
        if subproofs.is_some() {
            self.store.insert(c.negate(), Role::Temp);
            self.note_live();
        }
        let result = self.check_goals(kind, c, w, subproofs.unwrap_or(&[]));
        self.store.retire_temps(mark);
        result
    }

    fn order_images(&self, w: &Substitution) -> Option<(Vec<Image>, Vec<Image>, bool)> {
        let loaded = self.order.as_ref()?;
        let plain: Vec<Image> = loaded.vars.iter().map(|&v| Image::Lit(Lit::pos(v))).collect();
        let moved: Vec<Image> = loaded.vars.iter().map(|&v| w.apply(Lit::pos(v))).collect();
        let touched = plain != moved;
        Some((plain, moved, touched))
    }

    fn check_goals(&mut self, kind: RuleKind, c: &Constraint, w: &Substitution, subproofs: &[Subproof]) -> RuleResult<()> {
        let scope = match kind {
            RuleKind::Deletion(id) => Scope { derived: false, excluded: Some(id) },
            _ => Scope::ALL,
        };
        let source_ok = |role: Role| role == Role::Core || (role == Role::Derived && kind == RuleKind::Redundance);

        let mut slots = vec![Slot::Order];
        if kind == RuleKind::Dominance {
            slots.push(Slot::Contradiction);
        }
        slots.push(Slot::Objective);
        slots.extend(self.store.visible(scope).filter(|(_, e)| source_ok(e.role)).map(|(id, _)| Slot::Source(id)));
        if kind != RuleKind::Dominance {
            slots.push(Slot::Final);
        }
        let touched = self.store.mentioning(w.domain(), scope);
        let proofs = index_subproofs(subproofs, slots.len(), "this rule")?;

        let neg = c.negate();
        let premises: Vec<Rc<Constraint>> = self
            .store
            .visible(scope)
            .filter(|(_, e)| e.role != Role::Temp)
            .map(|(_, e)| Rc::clone(&e.constraint))
            .chain(std::iter::once(Rc::new(neg.clone())))
            .collect();
        let mut checker: Option<RupChecker<'_>> = None;
        let images = self.order_images(w);

        for (i, slot) in slots.iter().enumerate() {
            let k = i + 1;
            if let Slot::Source(id) = slot {
                if !touched.contains(id) && !proofs.contains_key(&k) {
                    self.stats.goals_auto += 1;
                    continue;
                }
            }
            let goal = match slot {
                Slot::Order => Goal::Ordinary(match &images {
                    Some((plain, moved, true)) => self.order.as_ref().unwrap().order.instantiate(moved, plain),
                    _ => vec![],
                }),
                Slot::Contradiction => Goal::Contradiction(match &images {
                    Some((plain, moved, _)) => self.order.as_ref().unwrap().order.instantiate(plain, moved),
                    None => vec![],
                }),
                Slot::Objective => Goal::Ordinary(vec![self.objective.not_worse_under(w)]),
                Slot::Source(id) => Goal::Ordinary(vec![self.store.get(*id).unwrap().constraint.substitute(w)]),
                Slot::Final => Goal::Ordinary(vec![c.substitute(w)]),
            };
            if let Some(sp) = proofs.get(&k) {
                self.check_subproof(scope, k, goal, sp)?;
                self.stats.goals_subproof += 1;
                continue;
            }
            let ok = match &goal {
                Goal::Ordinary(targets) => targets.iter().all(|t| {
                    auto_discharge(&self.store, scope, &neg, t, &premises, &mut checker)
                }),
                Goal::Contradiction(extras) => {
                    extras.iter().any(Constraint::is_conflicting) || {
                        let refs: Vec<&Constraint> = extras.iter().collect();
                        checker
                            .get_or_insert_with(|| RupChecker::new(premises.iter().map(|c| c.as_ref()).collect()))
                            .refutes(&refs)
                    }
                }
            };
            if !ok {
                return Err(RuleError::new(self.describe_failure(k, slot, &goal)));
            }
            self.stats.goals_auto += 1;
        }
        Ok(())
    }

    fn describe_failure(&self, k: usize, slot: &Slot, goal: &Goal) -> String {
        let what = match slot {
            Slot::Order => "order".to_string(),
            Slot::Contradiction => "strict order contradiction".to_string(),
            Slot::Objective => "objective".to_string(),
            Slot::Source(id) => format!("constraint {id}"),
            Slot::Final => "substituted new constraint".to_string(),
        };
        let target = match goal {
            Goal::Ordinary(ts) => ts
                .iter()
                .find(|t| !t.is_trivial())
                .map(|t| render_constraint(t, &self.vars))
                .unwrap_or_default(),
            Goal::Contradiction(_) => render_constraint(&Constraint::contradiction(), &self.vars),
        };
        format!("goal #{k} ({what}) is not discharged: {target}")
    }

    fn check_subproof(&mut self, scope: Scope, k: usize, goal: Goal, sp: &Subproof) -> RuleResult<()> {
        let mark = self.store.next_id();
        let targets = match goal {
            Goal::Ordinary(ts) => Some(ts),
            Goal::Contradiction(extras) => {
                for e in extras {
                    self.store.insert(e, Role::Temp);
                }
                None
            }
        };
        let result = (|| {
            let mut db = ScopedDb { store: &mut self.store, scope, role: Role::Temp };
            for step in &sp.steps {
                run_step(&mut db, step)?;
            }
            let q = db.get(sp.qed).map_err(|e| e.or_at(sp.qed_line))?;
            let closed = q.is_conflicting()
                || targets.as_ref().is_some_and(|ts| ts.iter().all(|t| t.is_trivial() || q.literal_axiom_implies(t)));
            if closed {
                Ok(())
            } else if targets.is_none() {
                Err(RuleError::at(sp.qed_line, format!("goal #{k} needs a conflicting constraint at qed")))
            } else {
                Err(RuleError::at(sp.qed_line, format!("the qed constraint does not imply goal #{k}")))
            }
        })();
        self.note_live();
        self.store.retire_temps(mark);
        result
    }
}

fn auto_discharge<'p>(
    store: &crate::state::Store,
    scope: Scope,
    neg: &Constraint,
    target: &Constraint,
    premises: &'p [Rc<Constraint>],
    checker: &mut Option<RupChecker<'p>>,
) -> bool {
    if target.is_trivial() || target == neg || store.find(target, scope).is_some() || neg.literal_axiom_implies(target) {
        return true;
    }
    let rup = checker.get_or_insert_with(|| RupChecker::new(premises.iter().map(|c| c.as_ref()).collect()));
    if rup.implies(target) {
        return true;
    }
    store
        .mentioning(target.vars(), scope)
        .into_iter()
        .filter_map(|id| store.get(id))
        .filter(|e| e.role != Role::Temp)
        .any(|e| e.constraint.literal_axiom_implies(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::LocatedStep;
    use crate::pb::tests::{c, n, p};
    use crate::pb::{Objective, VarTable};
    use crate::state::Mode;

    fn bits(x: usize, n: usize) -> Vec<bool> {
        (0..n).map(|i| x >> (n - 1 - i) & 1 == 1).collect()
    }

    #[test]
    fn lex_order_matches_string_comparison() {
        for n in 1..=6 {
            let (order, proof) = lex_order("lex", n);
            check_preorder(&order, &proof).unwrap();
            for a in 0..1usize << n {
                for b in 0..1usize << n {
                    let (sa, sb) = (bits(a, n), bits(b, n));
                    let lex = sa.iter().map(|&x| x as u8).collect::<Vec<_>>()
                        <= sb.iter().map(|&x| x as u8).collect::<Vec<_>>();
                    assert_eq!(order.holds(&sa, &sb), lex, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn lex_order_twelve_has_coefficient_2048() {
        let (order, _) = lex_order("exp22", 12);
        let max = order.constraints[0].terms().iter().map(|t| t.coef.clone()).max().unwrap();
        assert_eq!(max, BigInt::from(2048));
    }

    #[test]
    fn lex_transitivity_sum_is_conflicting() {
        let (order, _) = lex_order("lex", 3);
        let mut db = LocalDb::new();
        let mut vw = Substitution::identity();
        for i in 0..3 {
            vw.insert(order.left(i), Image::Lit(Lit::pos(order.right(i))));
            vw.insert(order.right(i), Image::Lit(Lit::pos(order.fresh(i))));
        }
        let uw = order.placeholder_map(|i| (order.right(i), order.fresh(i)));
        db.insert(order.constraints[0].clone());
        db.insert(order.constraints[0].substitute(&vw));
        db.insert(order.constraints[0].substitute(&uw).negate());
        let sum = crate::derivation::eval_pol(
            &db,
            &[PolToken::Id(IdRef::Abs(1)), PolToken::Id(IdRef::Abs(2)), PolToken::Add, PolToken::Id(IdRef::Abs(3)), PolToken::Add],
        )
        .unwrap();
        assert_eq!(sum, Constraint::contradiction());
    }

    #[test]
    fn strict_lex_fails_registration() {
        for n in 1..=4 {
            let (mut order, proof) = lex_order("strict", n);
            let c0 = &order.constraints[0];
            order.constraints[0] = Constraint::geq(c0.terms().iter().map(|t| (t.coef.clone(), t.lit)), c0.degree() + 1);
            assert!(check_preorder(&order, &proof).is_err());
            assert!(check_preorder(&order, &PreorderProof::default()).is_err());
        }
    }

    #[test]
    fn example_order_and_trivial_order_register() {
        let example = Preorder { name: "ex".into(), arity: 1, constraints: vec![c(&[(1, p(1)), (1, n(0))], 1)] };
        check_preorder(&example, &PreorderProof::default()).unwrap();
        let trivial = Preorder { name: "t".into(), arity: 2, constraints: vec![] };
        check_preorder(&trivial, &PreorderProof::default()).unwrap();
        assert!(trivial.is_trivial() && !example.is_trivial());
    }

    #[test]
    fn non_transitive_formula_is_rejected() {
        // u ≠ v as an order: reflexivity fails
        let neq = Preorder { name: "neq".into(), arity: 1, constraints: vec![c(&[(1, p(0)), (1, p(1))], 1), c(&[(1, n(0)), (1, n(1))], 1)] };
        assert!(check_preorder(&neq, &PreorderProof::default()).is_err());
    }

    /// Brute-force reflexivity and transitivity of every registered order of arity ≤ 2.
    #[test]
    fn registered_orders_are_preorders() {
        use crate::pb::tests::assignments;
        let mut rng_cases = 0;
        for mask in 0u32..256 {
            // formulas built from a fixed menu of clauses over u1 u2 v1 v2
            let menu = [
                c(&[(1, p(2)), (1, n(0))], 1),
                c(&[(1, p(3)), (1, n(1))], 1),
                c(&[(2, p(2)), (1, p(3)), (2, n(0)), (1, n(1))], 3),
                c(&[(1, n(2)), (1, p(0))], 1),
                c(&[(1, p(0)), (1, p(2))], 1),
                c(&[(1, n(3)), (1, n(1))], 1),
                c(&[(1, p(2)), (1, p(3)), (1, n(0))], 1),
                c(&[(1, p(3)), (1, n(0)), (1, n(1))], 1),
            ];
            let cons: Vec<Constraint> = (0..8).filter(|b| mask >> b & 1 == 1).map(|b| menu[b].clone()).collect();
            let order = Preorder { name: "o".into(), arity: 2, constraints: cons };
            if check_preorder(&order, &PreorderProof::default()).is_err() {
                continue;
            }
            rng_cases += 1;
            let pts: Vec<Vec<bool>> = assignments(2).collect();
            for a in &pts {
                assert!(order.holds(a, a));
                for b in &pts {
                    for d in &pts {
                        if order.holds(a, b) && order.holds(b, d) {
                            assert!(order.holds(a, d), "mask {mask}");
                        }
                    }
                }
            }
        }
        assert!(rng_cases > 1);
    }

    fn cfg_with(cons: Vec<Constraint>, names: &[&str], mode: Mode) -> Configuration {
        let mut vars = VarTable::new();
        for name in names {
            vars.intern(name).unwrap();
        }
        Configuration::new(vars, cons, Objective::zero(), mode)
    }

    fn step(tokens: Vec<PolToken>) -> LocatedStep {
        LocatedStep { line: 7, step: Step::Pol(tokens) }
    }

    #[test]
    fn fresh_variable_definition_autodischarges() {
        let mut cfg = cfg_with(vec![c(&[(1, p(0)), (1, p(1))], 1)], &["x", "y", "y0"], Mode::Checked);
        let w = Substitution::identity().with(Var(2), Image::Const(true));
        let id = cfg.redundance(c(&[(1, p(2))], 1), &w, None).unwrap();
        assert_eq!(id, 2);
    }

    #[test]
    fn bad_witness_rejected() {
        let mut cfg = cfg_with(vec![c(&[(1, p(0)), (1, p(1))], 1)], &["x", "y"], Mode::Checked);
        let w = Substitution::identity().with(Var(0), Image::Const(false));
        let err = cfg.redundance(c(&[(1, p(0))], 1), &w, None).unwrap_err();
        assert!(err.message.contains("goal #"), "{}", err.message);
        assert_eq!(cfg.next_id(), 2);
    }

    #[test]
    fn swap_symmetry_breaking_by_redundance() {
        // x1 + x2 >= 1 is symmetric under swapping x1 and x2
        let mut cfg = cfg_with(vec![c(&[(1, p(0)), (1, p(1))], 1)], &["x1", "x2"], Mode::Checked);
        let w = Substitution::swap(Var(0), Var(1));
        cfg.redundance(c(&[(1, p(1)), (1, n(0))], 1), &w, None).unwrap();
    }

    #[test]
    fn example_one_deletion_is_rejected_and_dominance_accepted() {
        let names = ["p"];
        let example = Preorder { name: "ex".into(), arity: 1, constraints: vec![c(&[(1, p(1)), (1, n(0))], 1)] };
        for mode in [Mode::Checked, Mode::Unchecked] {
            let mut cfg = cfg_with(vec![c(&[(1, p(0))], 1)], &names, mode);
            cfg.define_preorder(example.clone(), &PreorderProof::default()).unwrap();
            cfg.load_order(Some("ex"), vec![Var(0)]).unwrap();
            cfg.rup(c(&[(1, p(0))], 1)).unwrap();
            assert!(cfg.delete_core_checked(IdRef::Abs(1), &Substitution::identity(), None).is_err());
            let flip = Substitution::identity().with(Var(0), Image::Const(true));
            assert!(cfg.delete_core_checked(IdRef::Abs(1), &flip, None).is_err());
            if mode == Mode::Unchecked {
                assert!(cfg.delete_core_unchecked(&[IdRef::Abs(1)]).is_err());
            }
            assert_eq!(cfg.role(1), Some(Role::Core));
        }
        // with C = ∅ the dominance step goes through
        let mut cfg = cfg_with(vec![], &names, Mode::Checked);
        cfg.define_preorder(example, &PreorderProof::default()).unwrap();
        cfg.load_order(Some("ex"), vec![Var(0)]).unwrap();
        let w = Substitution::identity().with(Var(0), Image::Const(false));
        cfg.dominance(c(&[(1, n(0))], 1), &w, None).unwrap();
    }

    fn strict_goal_proof() -> [Subproof; 1] {
        [Subproof {
            goal: 2,
            line: 3,
            steps: vec![step(vec![
                PolToken::Id(IdRef::Rel(1)),
                PolToken::Id(IdRef::Rel(2)),
                PolToken::Mul(BigInt::from(2)),
                PolToken::Add,
            ])],
            qed: IdRef::Rel(1),
            qed_line: 4,
        }]
    }

    #[test]
    fn dominance_exempts_derived_constraints() {
        let mut cfg = cfg_with(vec![], &["x1", "x2", "x3"], Mode::Checked);
        let (lex, proof) = lex_order("lex", 3);
        cfg.define_preorder(lex, &proof).unwrap();
        cfg.load_order(Some("lex"), vec![Var(0), Var(1), Var(2)]).unwrap();
        let first = c(&[(1, n(0)), (1, p(1))], 1);
        cfg.dominance(first, &Substitution::swap(Var(0), Var(1)), Some(&strict_goal_proof())).unwrap();
        let second = c(&[(1, n(1)), (1, p(2))], 1);
        let w = Substitution::swap(Var(1), Var(2));
        let red = cfg.redundance(second.clone(), &w, None).unwrap_err();
        assert!(red.message.contains("constraint 4"), "{}", red.message);
        cfg.dominance(second, &w, Some(&strict_goal_proof())).unwrap();
    }

    #[test]
    fn dominance_subproof_closes_strict_goal() {
        let mut cfg = cfg_with(vec![c(&[(1, p(0)), (1, p(1))], 1)], &["x1", "x2"], Mode::Checked);
        let (lex, proof) = lex_order("lex", 2);
        cfg.define_preorder(lex, &proof).unwrap();
        cfg.load_order(Some("lex"), vec![Var(0), Var(1)]).unwrap();
        let target = c(&[(1, n(0)), (1, p(1))], 1);
        let w = Substitution::swap(Var(0), Var(1));
        assert!(cfg.dominance(target.clone(), &Substitution::identity(), None).is_err());
        let good = strict_goal_proof();
        // ¬C gets id 2, the reversed order id 3, the sum id 4; the new constraint id 5
        assert_eq!(cfg.dominance(target.clone(), &w, Some(&good)).unwrap(), 5);
        let bad = [Subproof { goal: 2, line: 3, steps: vec![], qed: IdRef::Rel(1), qed_line: 4 }];
        let err = cfg.dominance(target.clone(), &w, Some(&bad)).unwrap_err();
        assert_eq!(err.line, Some(4));
        let renumbered = [Subproof { goal: 9, ..good[0].clone() }];
        assert!(cfg.dominance(target, &w, Some(&renumbered)).is_err());
    }

    #[test]
    fn checked_deletion_of_implied_constraint() {
        let mut cfg = cfg_with(vec![c(&[(1, p(0))], 1), c(&[(1, p(0)), (1, p(1))], 1)], &["x", "y"], Mode::Checked);
        cfg.delete_core_checked(IdRef::Abs(2), &Substitution::identity(), None).unwrap();
        assert!(cfg.role(2).is_none());
        // the remaining unit cannot be deleted: nothing implies it
        assert!(cfg.delete_core_checked(IdRef::Abs(1), &Substitution::identity(), None).is_err());
        // but a duplicate can go
        let mut cfg = cfg_with(vec![c(&[(1, p(0))], 1), c(&[(1, p(0))], 1)], &["x"], Mode::Checked);
        cfg.delete_core_checked(IdRef::Abs(1), &Substitution::identity(), None).unwrap();
    }
}
