//! Exhaustive check of the safety invariants on small configurations.
//!
//! Every total assignment over the session vocabulary is enumerated, so this
//! is only usable for a handful of variables. It exists to catch checker bugs.

use num_bigint::BigInt;

use crate::pb::Constraint;
use crate::state::{Configuration, Mode};

/// Which invariant a configuration broke.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SafetyViolation {
    #[error("core lost value: the input reaches objective {input} but the core only reaches {core}")]
    CoreLosesValue { input: BigInt, core: String },
    #[error("no dominating model: assignment {0} has no better-or-equal assignment satisfying core and derived")]
    NoDominatingModel(String),
    #[error("unreachable best: best value {best} but the input cannot reach it")]
    UnreachableBest { best: BigInt },
    #[error("core gained value: the core reaches objective {core} but the input only reaches {input}")]
    CoreGainsValue { core: BigInt, input: String },
}

fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

fn satisfies<'a>(a: &[bool], cs: impl IntoIterator<Item = &'a Constraint>) -> bool {
    cs.into_iter().all(|c| c.evaluate(a))
}

fn show(value: &Option<BigInt>) -> String {
    value.as_ref().map_or("nothing".to_string(), |v| v.to_string())
}

/// Checks value preservation and dominance always, the last two invariants in checked mode.
///
/// Panics if the vocabulary has more than 24 variables; callers bound it first.
pub fn check(cfg: &Configuration) -> Result<(), SafetyViolation> {
    let n = cfg.vars.len();
    assert!(n <= 24, "safety oracle called with {n} variables");
    let f = cfg.objective();
    let best = cfg.best();
    let below = |value: &BigInt| best.is_none_or(|v| value < v);
    let core: Vec<&Constraint> = cfg.core().map(|(_, c)| c).collect();
    let mut core_and_derived = core.clone();
    core_and_derived.extend(cfg.derived().map(|(_, c)| c));

    let mut min_input: Option<BigInt> = None;
    let mut min_core: Option<BigInt> = None;
    // core ∪ {f ≤ v − 1} models and the subset that also satisfies D
    let mut open: Vec<(Vec<bool>, BigInt)> = Vec::new();
    let mut closed: Vec<(Vec<bool>, BigInt)> = Vec::new();
    for a in assignments(n) {
        let value = f.evaluate(&a);
        if satisfies(&a, cfg.input()) && min_input.as_ref().is_none_or(|m| &value < m) {
            min_input = Some(value.clone());
        }
        if !satisfies(&a, core.iter().copied()) {
            continue;
        }
        if min_core.as_ref().is_none_or(|m| &value < m) {
            min_core = Some(value.clone());
        }
        if below(&value) {
            if satisfies(&a, core_and_derived.iter().copied()) {
                closed.push((a, value));
            } else {
                open.push((a, value));
            }
        }
    }

    if let Some(mf) = &min_input {
        if below(mf) && min_core.as_ref().is_none_or(|mc| mc > mf) {
            return Err(SafetyViolation::CoreLosesValue { input: mf.clone(), core: show(&min_core) });
        }
    }

    let order = cfg.loaded_order();
    let project = |a: &[bool]| -> Vec<bool> {
        order.map_or_else(Vec::new, |o| o.vars.iter().map(|v| a[v.index()]).collect())
    };
    for (rho, value) in &open {
        let z = project(rho);
        let found = closed.iter().any(|(other, other_value)| {
            other_value <= value && order.is_none_or(|o| o.order.holds(&project(other), &z))
        });
        if !found {
            let text: Vec<String> = rho
                .iter()
                .enumerate()
                .map(|(i, &b)| format!("{}={}", cfg.vars.name(crate::pb::Var(i as u32)), b as u8))
                .collect();
            return Err(SafetyViolation::NoDominatingModel(text.join(" ")));
        }
    }

    if cfg.mode() == Mode::Checked {
        if let Some(v) = best {
            if min_input.as_ref().is_none_or(|mf| mf > v) {
                return Err(SafetyViolation::UnreachableBest { best: v.clone() });
            }
        }
        if let Some(mc) = &min_core {
            if below(mc) && min_input.as_ref().is_none_or(|mf| mf > mc) {
                return Err(SafetyViolation::CoreGainsValue { core: mc.clone(), input: show(&min_input) });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::IdRef;
    use crate::pb::tests::{c, n, p};
    use crate::pb::{Objective, VarTable};

    fn config(cons: Vec<Constraint>, nvars: usize, mode: Mode) -> Configuration {
        let mut vars = VarTable::new();
        for i in 0..nvars {
            vars.intern(&format!("x{}", i + 1)).unwrap();
        }
        Configuration::new(vars, cons, Objective::zero(), mode)
    }

    #[test]
    fn initial_configuration_is_safe() {
        let cfg = config(vec![c(&[(1, p(0)), (1, p(1))], 1)], 2, Mode::Checked);
        check(&cfg).unwrap();
    }

    #[test]
    fn unchecked_deletion_of_unsat_core_keeps_weak_safety() {
        let mut cfg = config(vec![c(&[(1, p(0))], 1), c(&[(1, n(0))], 1)], 1, Mode::Unchecked);
        cfg.delete_core_unchecked(&[IdRef::Abs(2)]).unwrap();
        // weak safety still holds: the input has no models at all
        check(&cfg).unwrap();
    }

    #[test]
    fn derived_constraint_without_dominating_model_is_caught() {
        let mut cfg = config(vec![], 1, Mode::Checked);
        // bypass the rules to plant an unjustified derived constraint
        cfg.add_derived(Constraint::contradiction());
        assert!(matches!(check(&cfg), Err(SafetyViolation::NoDominatingModel(_))));
    }
}
