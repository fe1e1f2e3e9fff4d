//! Normalized pseudo-Boolean constraints and the cutting-planes algebra.
//!
//! A constraint is kept in the form `Σ a_i ℓ_i ≥ A` with every `a_i > 0`,
//! `A ≥ 0`, at most one term per variable and terms sorted by variable id.
//! Two constraints are syntactically equal exactly when their normal forms
//! are equal, so `==` and hashing can be used for lookups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Not;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors raised by the arithmetic on constraints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbError {
    #[error("multiplier must be positive, got {0}")]
    NonPositiveMultiplier(BigInt),
    #[error("divisor must be positive, got {0}")]
    NonPositiveDivisor(BigInt),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

/// A Boolean variable, interned to a dense id.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A variable or its negation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit((var.0 << 1) | u32::from(!positive))
    }

    pub fn pos(var: Var) -> Lit {
        Lit::new(var, true)
    }

    pub fn neg(var: Var) -> Lit {
        Lit::new(var, false)
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Dense code usable as an array index (`2·var + negated`).
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Truth value of this literal under a total assignment of variables.
    pub fn value_in(self, assignment: &[bool]) -> bool {
        assignment[self.var().index()] == self.is_positive()
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var().0)
        } else {
            write!(f, "~x{}", self.var().0)
        }
    }
}

/// Returns true if `name` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Bijection between variable names and dense ids.
#[derive(Clone, Debug, Default)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

impl VarTable {
    pub fn new() -> VarTable {
        VarTable::default()
    }

    /// Returns the id for `name`, creating it if needed.
    pub fn intern(&mut self, name: &str) -> Result<Var, PbError> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        if !is_valid_name(name) {
            return Err(PbError::InvalidName(name.to_string()));
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        Ok(v)
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, var: Var) -> &str {
        &self.names[var.index()]
    }

    /// Name of a literal, with a `~` prefix for negative polarity.
    pub fn lit_name(&self, lit: Lit) -> String {
        if lit.is_positive() {
            self.name(lit.var()).to_string()
        } else {
            format!("~{}", self.name(lit.var()))
        }
    }

    /// Parses `name` or `~name`, interning the variable.
    pub fn parse_lit(&mut self, token: &str) -> Result<Lit, PbError> {
        match token.strip_prefix('~') {
            Some(rest) => Ok(Lit::neg(self.intern(rest)?)),
            None => Ok(Lit::pos(self.intern(token)?)),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.names.len() as u32).map(Var)
    }
}

/// Relation of a raw (not yet normalized) linear constraint.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coef: BigInt,
    pub lit: Lit,
}

/// A normalized pseudo-Boolean constraint `Σ coef·lit ≥ degree`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Constraint {
    terms: Vec<Term>,
    degree: BigInt,
}

/// Accumulates signed coefficients per variable on the positive literal.
fn to_signed(terms: impl IntoIterator<Item = (BigInt, Lit)>, rhs: BigInt) -> (Vec<(Var, BigInt)>, BigInt) {
    let mut rhs = rhs;
    let mut acc: Vec<(Var, BigInt)> = Vec::new();
    for (a, lit) in terms {
        if lit.is_positive() {
            acc.push((lit.var(), a));
        } else {
            rhs -= &a;
            acc.push((lit.var(), -a));
        }
    }
    acc.sort_by_key(|(v, _)| *v);
    let mut merged: Vec<(Var, BigInt)> = Vec::with_capacity(acc.len());
    for (v, a) in acc {
        match merged.last_mut() {
            Some((w, b)) if *w == v => *b += a,
            _ => merged.push((v, a)),
        }
    }
    (merged, rhs)
}

fn from_signed(signed: Vec<(Var, BigInt)>, mut rhs: BigInt) -> Constraint {
    let mut terms = Vec::with_capacity(signed.len());
    for (v, a) in signed {
        match a.sign() {
            num_bigint::Sign::Plus => terms.push(Term { coef: a, lit: Lit::pos(v) }),
            num_bigint::Sign::Minus => {
                let m = -a;
                rhs += &m;
                terms.push(Term { coef: m, lit: Lit::neg(v) });
            }
            num_bigint::Sign::NoSign => {}
        }
    }
    if rhs.is_negative() {
        rhs = BigInt::zero();
    }
    Constraint { terms, degree: rhs }
}

impl Constraint {
    /// Normalizes `Σ a_i ℓ_i ≥ rhs` for arbitrary signed coefficients.
    pub fn geq(terms: impl IntoIterator<Item = (BigInt, Lit)>, rhs: BigInt) -> Constraint {
        let (signed, rhs) = to_signed(terms, rhs);
        from_signed(signed, rhs)
    }

    /// Convenience constructor with machine-integer coefficients.
    pub fn geq_small(terms: &[(i64, Lit)], rhs: i64) -> Constraint {
        Constraint::geq(terms.iter().map(|&(a, l)| (BigInt::from(a), l)), BigInt::from(rhs))
    }

    /// `0 ≥ 1`.
    pub fn contradiction() -> Constraint {
        Constraint { terms: Vec::new(), degree: BigInt::one() }
    }

    /// `0 ≥ 0`.
    pub fn tautology() -> Constraint {
        Constraint { terms: Vec::new(), degree: BigInt::zero() }
    }

    /// The literal axiom `ℓ ≥ 0`.
    pub fn literal_axiom(lit: Lit) -> Constraint {
        Constraint { terms: vec![Term { coef: BigInt::one(), lit }], degree: BigInt::zero() }
    }

    /// The clause `ℓ_1 + … + ℓ_k ≥ 1`.
    pub fn clause(lits: &[Lit]) -> Constraint {
        Constraint::geq(lits.iter().map(|&l| (BigInt::one(), l)), BigInt::one())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef_sum(&self) -> BigInt {
        self.terms.iter().map(|t| &t.coef).sum()
    }

    /// Satisfied by every assignment.
    pub fn is_trivial(&self) -> bool {
        self.degree.is_zero()
    }

    /// Falsified by every assignment.
    pub fn is_conflicting(&self) -> bool {
        self.coef_sum() < self.degree
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.iter().map(|t| t.lit.var())
    }

    pub fn coef_of(&self, var: Var) -> Option<&Term> {
        self.terms
            .binary_search_by_key(&var, |t| t.lit.var())
            .ok()
            .map(|i| &self.terms[i])
    }

    /// `Σ −a_i ℓ_i ≥ −A + 1`, normalized.
    pub fn negate(&self) -> Constraint {
        let sum = self.coef_sum();
        let terms = self.terms.iter().map(|t| Term { coef: t.coef.clone(), lit: !t.lit }).collect();
        let mut degree = sum - &self.degree + BigInt::one();
        if degree.is_negative() {
            degree = BigInt::zero();
        }
        Constraint { terms, degree }
    }

    /// Sum of two constraints; opposing literals cancel into the degree.
    pub fn add(&self, other: &Constraint) -> Constraint {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut degree = &self.degree + &other.degree;
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j >= other.terms.len()
                || (i < self.terms.len() && self.terms[i].lit.var() < other.terms[j].lit.var());
            let take_right = i >= self.terms.len()
                || (j < other.terms.len() && other.terms[j].lit.var() < self.terms[i].lit.var());
            if take_left {
                terms.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                terms.push(other.terms[j].clone());
                j += 1;
            } else {
                let (a, b) = (&self.terms[i], &other.terms[j]);
                if a.lit == b.lit {
                    terms.push(Term { coef: &a.coef + &b.coef, lit: a.lit });
                } else {
                    // a·ℓ + b·ℓ̄ = (a−b)·ℓ + b
                    match a.coef.cmp(&b.coef) {
                        std::cmp::Ordering::Greater => {
                            degree -= &b.coef;
                            terms.push(Term { coef: &a.coef - &b.coef, lit: a.lit });
                        }
                        std::cmp::Ordering::Less => {
                            degree -= &a.coef;
                            terms.push(Term { coef: &b.coef - &a.coef, lit: b.lit });
                        }
                        std::cmp::Ordering::Equal => degree -= &a.coef,
                    }
                }
                i += 1;
                j += 1;
            }
        }
        if degree.is_negative() {
            degree = BigInt::zero();
        }
        Constraint { terms, degree }
    }

    pub fn multiply(&self, k: &BigInt) -> Result<Constraint, PbError> {
        if !k.is_positive() {
            return Err(PbError::NonPositiveMultiplier(k.clone()));
        }
        Ok(Constraint {
            terms: self.terms.iter().map(|t| Term { coef: &t.coef * k, lit: t.lit }).collect(),
            degree: &self.degree * k,
        })
    }

    /// Division with every coefficient and the degree rounded up.
    pub fn divide(&self, d: &BigInt) -> Result<Constraint, PbError> {
        if !d.is_positive() {
            return Err(PbError::NonPositiveDivisor(d.clone()));
        }
        Ok(Constraint {
            terms: self.terms.iter().map(|t| Term { coef: t.coef.div_ceil(d), lit: t.lit }).collect(),
            degree: self.degree.div_ceil(d),
        })
    }

    /// Caps every coefficient at the degree.
    pub fn saturate(&self) -> Constraint {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let coef = if t.coef > self.degree { self.degree.clone() } else { t.coef.clone() };
                (!coef.is_zero()).then_some(Term { coef, lit: t.lit })
            })
            .collect();
        Constraint { terms, degree: self.degree.clone() }
    }

    /// Applies a substitution and renormalizes.
    pub fn substitute(&self, w: &Substitution) -> Constraint {
        if w.is_identity() {
            return self.clone();
        }
        let mut rhs = self.degree.clone();
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match w.apply(t.lit) {
                Image::Const(true) => rhs -= &t.coef,
                Image::Const(false) => {}
                Image::Lit(l) => raw.push((t.coef.clone(), l)),
            }
        }
        Constraint::geq(raw, rhs)
    }

    /// Whether `target` follows from `self` by adding literal axioms and
    /// lowering the degree.
    pub fn literal_axiom_implies(&self, target: &Constraint) -> bool {
        // Signed form over positive literals: Σ s_x x ≥ S.
        let signed = |c: &Constraint| {
            let mut deg = c.degree.clone();
            let v: Vec<(Var, BigInt)> = c
                .terms
                .iter()
                .map(|t| {
                    if t.lit.is_positive() {
                        (t.lit.var(), t.coef.clone())
                    } else {
                        deg -= &t.coef;
                        (t.lit.var(), -t.coef.clone())
                    }
                })
                .collect();
            (v, deg)
        };
        let (s, mut sdeg) = signed(self);
        let (t, tdeg) = signed(target);
        let zero = BigInt::zero();
        let (mut i, mut j) = (0, 0);
        while i < s.len() || j < t.len() {
            let (sx, tx) = if j >= t.len() || (i < s.len() && s[i].0 < t[j].0) {
                i += 1;
                (&s[i - 1].1, &zero)
            } else if i >= s.len() || t[j].0 < s[i].0 {
                j += 1;
                (&zero, &t[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (&s[i - 1].1, &t[j - 1].1)
            };
            if tx < sx {
                // add (sx − tx)·x̄ ≥ 0, which costs that much degree
                sdeg -= sx - tx;
            }
        }
        sdeg >= tdeg
    }

    /// Evaluates under a total assignment indexed by variable id.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        let mut sum = BigInt::zero();
        for t in &self.terms {
            if t.lit.value_in(assignment) {
                sum += &t.coef;
            }
        }
        sum >= self.degree
    }

    /// Largest variable id mentioned, if any.
    pub fn max_var(&self) -> Option<Var> {
        self.terms.last().map(|t| t.lit.var())
    }
}

/// Normalizes a raw relation; `=` yields two constraints.
pub fn normalize(terms: &[(BigInt, Lit)], relation: Relation, rhs: &BigInt) -> Vec<Constraint> {
    let ge = || Constraint::geq(terms.iter().cloned(), rhs.clone());
    let le = || Constraint::geq(terms.iter().map(|(a, l)| (-a, *l)), -rhs);
    match relation {
        Relation::Ge => vec![ge()],
        Relation::Le => vec![le()],
        Relation::Eq => vec![ge(), le()],
    }
}

/// The value a substitution assigns to a variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Image {
    Const(bool),
    Lit(Lit),
}

impl Image {
    fn negate(self) -> Image {
        match self {
            Image::Const(b) => Image::Const(!b),
            Image::Lit(l) => Image::Lit(!l),
        }
    }
}

/// A finite map from variables to constants or literals; identity elsewhere.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Substitution {
    map: BTreeMap<Var, Image>,
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution::default()
    }

    /// Maps `var` to `image`; mapping a variable to itself removes it.
    pub fn insert(&mut self, var: Var, image: Image) {
        if image == Image::Lit(Lit::pos(var)) {
            self.map.remove(&var);
        } else {
            self.map.insert(var, image);
        }
    }

    pub fn with(mut self, var: Var, image: Image) -> Substitution {
        self.insert(var, image);
        self
    }

    /// Swaps two variables.
    pub fn swap(a: Var, b: Var) -> Substitution {
        Substitution::identity()
            .with(a, Image::Lit(Lit::pos(b)))
            .with(b, Image::Lit(Lit::pos(a)))
    }

    pub fn get(&self, var: Var) -> Option<Image> {
        self.map.get(&var).copied()
    }

    pub fn apply(&self, lit: Lit) -> Image {
        match self.map.get(&lit.var()) {
            None => Image::Lit(lit),
            Some(&img) if lit.is_positive() => img,
            Some(&img) => img.negate(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, Image)> + '_ {
        self.map.iter().map(|(&v, &i)| (v, i))
    }

    pub fn touches(&self, c: &Constraint) -> bool {
        !self.map.is_empty() && c.vars().any(|v| self.map.contains_key(&v))
    }

    /// Apply `self` first, then `then`: the result maps x to then(self(x)).
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::identity();
        for (&v, &img) in &self.map {
            let img = match img {
                Image::Const(b) => Image::Const(b),
                Image::Lit(l) => then.apply(l),
            };
            out.insert(v, img);
        }
        for (&v, &img) in &then.map {
            if !self.map.contains_key(&v) {
                out.insert(v, img);
            }
        }
        out
    }
}

/// A linear objective `Σ w_i ℓ_i + constant` to be minimized.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Objective {
    terms: Vec<(BigInt, Lit)>,
    constant: BigInt,
}

impl Objective {
    pub fn zero() -> Objective {
        Objective::default()
    }

    pub fn new(terms: Vec<(BigInt, Lit)>, constant: BigInt) -> Objective {
        Objective { terms, constant }
    }

    pub fn terms(&self) -> &[(BigInt, Lit)] {
        &self.terms
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(w, _)| w.is_zero()) && self.constant.is_zero()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.iter().map(|(_, l)| l.var())
    }

    pub fn evaluate(&self, assignment: &[bool]) -> BigInt {
        let mut v = self.constant.clone();
        for (w, l) in &self.terms {
            if l.value_in(assignment) {
                v += w;
            }
        }
        v
    }

    pub fn substitute(&self, w: &Substitution) -> Objective {
        let mut constant = self.constant.clone();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, l) in &self.terms {
            match w.apply(*l) {
                Image::Const(true) => constant += a,
                Image::Const(false) => {}
                Image::Lit(l2) => terms.push((a.clone(), l2)),
            }
        }
        Objective { terms, constant }
    }

    /// `f ≤ bound`, normalized.
    pub fn at_most(&self, bound: &BigInt) -> Constraint {
        Constraint::geq(self.terms.iter().map(|(a, l)| (-a, *l)), &self.constant - bound)
    }

    /// `f↾ω ≤ f`, normalized.
    pub fn not_worse_under(&self, w: &Substitution) -> Constraint {
        let fw = self.substitute(w);
        let terms = self
            .terms
            .iter()
            .cloned()
            .chain(fw.terms.iter().map(|(a, l)| (-a, *l)));
        Constraint::geq(terms, &fw.constant - &self.constant)
    }
}
