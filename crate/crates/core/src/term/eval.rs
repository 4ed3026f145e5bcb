//! Term evaluation and identity checking over finite and parametric models.

use serde::Serialize;
use thiserror::Error;

use super::{Atom, Hypothesis, Identity, Relation, Term, MAX_ROOT_DEGREE, VARIABLES};
use crate::hoop::{Elem, FiniteHoop, PropertyFlag};
use crate::parametric::{
    ParamError, ParametricClassification, ParametricHoop, Rational, SamplePlan,
};
use crate::roots::{nth_root_solve, RootMap};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("the model has no least element")]
    Unbounded,
    #[error("the model has no root of degree {0}")]
    MissingRoot(u32),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// The operations a term needs; meet, join, negation and powers are derived.
pub trait Algebra {
    type Value: Clone + PartialEq;

    fn one(&self) -> Self::Value;
    fn zero(&self) -> Result<Self::Value, EvalError>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn imp(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn root(&self, degree: u32, a: &Self::Value) -> Result<Self::Value, EvalError>;
    fn show(&self, a: &Self::Value) -> String;

    fn meet(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        self.mul(a, &self.imp(a, b)?)
    }

    fn join(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        let l = self.imp(&self.imp(a, b)?, b)?;
        let r = self.imp(&self.imp(b, a)?, a)?;
        self.meet(&l, &r)
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value, EvalError> {
        self.imp(a, &self.zero()?)
    }

    fn pow(&self, a: &Self::Value, k: u32) -> Result<Self::Value, EvalError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    fn leq(&self, a: &Self::Value, b: &Self::Value) -> Result<bool, EvalError> {
        Ok(self.imp(a, b)? == self.one())
    }
}

/// Value of `t` with variable `i` bound to `env[i]`.
pub fn eval_term<A: Algebra>(alg: &A, t: &Term, env: &[A::Value]) -> Result<A::Value, EvalError> {
    let ev = |t: &Term| eval_term(alg, t, env);
    match t {
        Term::Var(i) => Ok(env[*i].clone()),
        Term::Zero => alg.zero(),
        Term::One => Ok(alg.one()),
        Term::Mul(a, b) => alg.mul(&ev(a)?, &ev(b)?),
        Term::Imp(a, b) => alg.imp(&ev(a)?, &ev(b)?),
        Term::Meet(a, b) => alg.meet(&ev(a)?, &ev(b)?),
        Term::Join(a, b) => alg.join(&ev(a)?, &ev(b)?),
        Term::Neg(a) => alg.neg(&ev(a)?),
        Term::Pow(a, k) => alg.pow(&ev(a)?, *k),
        Term::Sqrt(a) => alg.root(2, &ev(a)?),
        Term::Root(n, a) => alg.root(*n, &ev(a)?),
    }
}

/// A finite hoop with its roots of every degree the syntax allows, solved
/// once.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    hoop: FiniteHoop,
    roots: Vec<Option<RootMap>>,
    flags: Vec<PropertyFlag>,
}

impl FiniteModel {
    pub fn new(hoop: FiniteHoop) -> Self {
        let roots = (1..=MAX_ROOT_DEGREE)
            .map(|d| nth_root_solve(&hoop, d))
            .collect();
        let flags = hoop.properties();
        FiniteModel { hoop, roots, flags }
    }

    pub fn hoop(&self) -> &FiniteHoop {
        &self.hoop
    }

    pub fn root_map(&self, degree: u32) -> Option<&RootMap> {
        let i = usize::try_from(degree).ok()?.checked_sub(1)?;
        self.roots.get(i)?.as_ref()
    }

    pub fn sqrt_map(&self) -> Option<&RootMap> {
        self.root_map(2)
    }

    pub fn has_property(&self, flag: PropertyFlag) -> bool {
        self.flags.contains(&flag)
    }

    fn sqrt_zero(&self) -> Option<(Elem, Elem)> {
        let s = self.sqrt_map()?;
        let z = self.hoop.zero()?;
        Some((z, s.apply(z)))
    }

    pub fn satisfies(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::Flag(p) => self.has_property(p),
            Hypothesis::Sqrt => self.sqrt_map().is_some(),
            Hypothesis::Root(n) => self.root_map(n).is_some(),
            Hypothesis::SqrtMultiplicative => self
                .sqrt_map()
                .is_some_and(|s| s.is_multiplicative(&self.hoop)),
            Hypothesis::Good => self.sqrt_zero().is_some_and(|(z, s0)| s0 == z),
            Hypothesis::Strict => self
                .sqrt_zero()
                .is_some_and(|(z, s0)| s0 == self.hoop.imp(s0, z)),
        }
    }
}

impl Algebra for FiniteModel {
    type Value = Elem;

    fn one(&self) -> Elem {
        self.hoop.one()
    }

    fn zero(&self) -> Result<Elem, EvalError> {
        self.hoop.zero().ok_or(EvalError::Unbounded)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem, EvalError> {
        Ok(self.hoop.mul(*a, *b))
    }

    fn imp(&self, a: &Elem, b: &Elem) -> Result<Elem, EvalError> {
        Ok(self.hoop.imp(*a, *b))
    }

    fn root(&self, degree: u32, a: &Elem) -> Result<Elem, EvalError> {
        self.root_map(degree)
            .map(|r| r.apply(*a))
            .ok_or(EvalError::MissingRoot(degree))
    }

    fn show(&self, a: &Elem) -> String {
        self.hoop.label(*a).to_string()
    }
}

impl Algebra for ParametricHoop {
    type Value = Rational;

    fn one(&self) -> Rational {
        ParametricHoop::one(self)
    }

    fn zero(&self) -> Result<Rational, EvalError> {
        ParametricHoop::zero(self).ok_or(EvalError::Unbounded)
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Result<Rational, EvalError> {
        Ok(ParametricHoop::mul(self, a, b)?)
    }

    fn imp(&self, a: &Rational, b: &Rational) -> Result<Rational, EvalError> {
        Ok(ParametricHoop::imp(self, a, b)?)
    }

    fn root(&self, degree: u32, a: &Rational) -> Result<Rational, EvalError> {
        if !self.has_root(degree) {
            return Err(EvalError::MissingRoot(degree));
        }
        Ok(ParametricHoop::root(self, degree, a)?)
    }

    fn show(&self, a: &Rational) -> String {
        a.to_string()
    }
}

/// A parametric family together with the sampling plan used to check it.
#[derive(Clone, Debug)]
pub struct ParametricModel {
    hoop: ParametricHoop,
    plan: SamplePlan,
    class: ParametricClassification,
}

impl ParametricModel {
    pub fn new(hoop: ParametricHoop, plan: SamplePlan) -> Result<Self, ParamError> {
        let class = hoop.classify(&plan)?;
        Ok(ParametricModel { hoop, plan, class })
    }

    pub fn hoop(&self) -> &ParametricHoop {
        &self.hoop
    }

    pub fn plan(&self) -> &SamplePlan {
        &self.plan
    }

    pub fn classification(&self) -> &ParametricClassification {
        &self.class
    }

    pub fn satisfies(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::Flag(p) => self.hoop.has_property(p),
            Hypothesis::Sqrt => self.hoop.has_sqrt(),
            Hypothesis::Root(n) => self.hoop.has_root(n),
            Hypothesis::SqrtMultiplicative => self.hoop.sqrt_is_multiplicative(),
            Hypothesis::Good => self.hoop.has_sqrt() && self.class.good,
            Hypothesis::Strict => self.hoop.has_sqrt() && self.class.strict == Some(true),
        }
    }
}

/// What an identity or procedure is checked against.
#[derive(Clone, Copy, Debug)]
pub enum Model<'a> {
    Finite(&'a FiniteModel),
    Sampled(&'a ParametricModel),
}

impl Model<'_> {
    pub fn satisfies(&self, h: Hypothesis) -> bool {
        match self {
            Model::Finite(m) => m.satisfies(h),
            Model::Sampled(m) => m.satisfies(h),
        }
    }

    /// The first hypothesis in `hs` that fails, as a vacuity reason.
    pub(crate) fn unmet(&self, hs: &[Hypothesis]) -> Option<String> {
        hs.iter()
            .find(|&&h| !self.satisfies(h))
            .map(|h| format!("hypothesis `{h}` does not hold"))
    }
}

/// A falsifying assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// variable name and value, in variable order
    pub assignment: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let binds: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, x)| format!("{v} = {x}"))
            .collect();
        write!(
            f,
            "{}: lhs {}, rhs {}",
            binds.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail {
        detail: String,
        witness: Option<Witness>,
    },
    /// a hypothesis of the statement does not hold in the model
    Vacuous {
        reason: String,
    },
    /// the check cannot be carried out on this kind of model
    NotApplicable {
        reason: String,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "FAIL",
            Verdict::Vacuous { .. } => "vacuous",
            Verdict::NotApplicable { .. } => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// assignments on which every premise held and the conclusion was tested
    pub checked: usize,
    /// assignments discarded because a premise failed
    pub skipped: usize,
}

impl CheckReport {
    fn without_checks(verdict: Verdict) -> Self {
        CheckReport {
            verdict,
            checked: 0,
            skipped: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("`r{0}` is used but the model has no root of that degree; declare `{{{hyp}}}` to check conditionally", hyp = root_hyp(*.0))]
    MissingRoot(u32),
    #[error("`0` or negation is used but the model has no least element; declare `{{bounded}}` to check conditionally")]
    Unbounded,
    #[error(transparent)]
    Param(ParamError),
}

fn root_hyp(d: u32) -> String {
    if d == 2 {
        "sqrt".into()
    } else {
        format!("root{d}")
    }
}

impl From<EvalError> for CheckError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Unbounded => CheckError::Unbounded,
            EvalError::MissingRoot(d) => CheckError::MissingRoot(d),
            EvalError::Param(p) => CheckError::Param(p),
        }
    }
}

/// Check `id` on every assignment of a finite model, or on the sampled
/// assignments of a parametric one.
///
/// Unmet hypotheses make the verdict vacuous. Using a root or `0` that the
/// model lacks without declaring the matching hypothesis is an error.
pub fn check_identity(model: Model<'_>, id: &Identity) -> Result<CheckReport, CheckError> {
    if let Some(reason) = model.unmet(&id.hypotheses) {
        return Ok(CheckReport::without_checks(Verdict::Vacuous { reason }));
    }
    if id.uses_bottom() && !model.satisfies(Hypothesis::Flag(PropertyFlag::Bounded)) {
        return Err(CheckError::Unbounded);
    }
    for d in id.root_degrees() {
        if !model.satisfies(Hypothesis::Root(d)) {
            return Err(CheckError::MissingRoot(d));
        }
    }
    let vars = id.variables();
    match model {
        Model::Finite(m) => {
            let n = m.hoop().size();
            let total = n.pow(vars.len() as u32);
            let mut digits = vec![0; vars.len()];
            let assignments = (0..total).map(move |_| {
                let current = digits.clone();
                // the first variable varies fastest
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < n {
                        break;
                    }
                    *d = 0;
                }
                current
            });
            run_checks(m, id, &vars, assignments)
        }
        Model::Sampled(m) => {
            let assignments = m.hoop().assignments(m.plan(), vars.len());
            run_checks(m.hoop(), id, &vars, assignments.into_iter())
        }
    }
}

fn holds<A: Algebra>(
    alg: &A,
    atom: &Atom,
    env: &[A::Value],
) -> Result<(bool, A::Value, A::Value), EvalError> {
    let l = eval_term(alg, &atom.lhs, env)?;
    let r = eval_term(alg, &atom.rhs, env)?;
    let ok = match atom.rel {
        Relation::Eq => l == r,
        Relation::Le => alg.leq(&l, &r)?,
    };
    Ok((ok, l, r))
}

fn run_checks<A: Algebra>(
    alg: &A,
    id: &Identity,
    vars: &[usize],
    assignments: impl Iterator<Item = Vec<A::Value>>,
) -> Result<CheckReport, CheckError> {
    let mut checked = 0;
    let mut skipped = 0;
    let mut env = vec![alg.one(); VARIABLES.len()];
    'next: for values in assignments {
        for (&v, x) in vars.iter().zip(values) {
            env[v] = x;
        }
        for p in &id.premises {
            if !holds(alg, p, &env)?.0 {
                skipped += 1;
                continue 'next;
            }
        }
        checked += 1;
        let (ok, l, r) = holds(alg, &id.conclusion, &env)?;
        if !ok {
            let witness = Witness {
                assignment: vars
                    .iter()
                    .map(|&v| (VARIABLES[v].to_string(), alg.show(&env[v])))
                    .collect(),
                lhs: alg.show(&l),
                rhs: alg.show(&r),
            };
            return Ok(CheckReport {
                verdict: Verdict::Fail {
                    detail: witness.to_string(),
                    witness: Some(witness),
                },
                checked,
                skipped,
            });
        }
    }
    Ok(CheckReport {
        verdict: Verdict::Pass,
        checked,
        skipped,
    })
}
