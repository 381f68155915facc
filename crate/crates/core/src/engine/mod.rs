//! Gotzmann sets, persistence of minimal growth, and the splitting step that
//! drives the inductive certificate.
//!
//! A set `V` of degree-`d` monomials in `n` variables is Gotzmann when its
//! shadow is as small as Macaulay's bound allows: `|MV| = |V|^<n-1>`.

mod certificate;
mod enumerate;
mod exec;
mod lemmas;

pub use certificate::{
    build_certificate, check_certificate, CertificateMismatch, NodeKind, PersistenceCertificate,
    SplitNode,
};
pub use enumerate::{enumerate_gotzmann, enumerate_subsets, Subsets, DEFAULT_BUDGET};
pub use exec::Parallelism;
pub use lemmas::{default_cells, run_lemma_suite, LemmaId, LemmaReport, SuiteRange, Violation};

use num_bigint::BigUint;
use thiserror::Error;

use crate::binomial::{self, BinomialError};
use crate::monomial::{MonomialError, MonomialSet, SplitResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Binomial(#[from] BinomialError),
    #[error("not a Gotzmann set: |MV| = {shadow} but |V|^<n-1> = {bound}")]
    NotGotzmann { shadow: usize, bound: BigUint },
    #[error("gcd(V) = {0}, expected 1")]
    GcdNotOne(String),
    #[error("V is all of M^d")]
    FullSet,
    #[error("V must have more than one member (has {0})")]
    TooSmall(usize),
    #[error("the empty set has no certificate")]
    EmptySet,
    #[error("no variable index satisfies the splitting conditions for\n{set}")]
    NoSplittingIndex { set: String },
    #[error(
        "C(|M^{degree}|, {size}) = {count} subsets in {n_vars} variables exceeds the budget of {budget}"
    )]
    BudgetExceeded {
        n_vars: usize,
        degree: u32,
        size: usize,
        count: BigUint,
        budget: u64,
    },
    #[error("invalid range: {0}")]
    BadRange(String),
    #[error("certificate line {line}: {message}")]
    CertificateParse { line: usize, message: String },
}

/// `count^<order>` on machine-sized counts.
pub fn growth(count: usize, order: u32) -> Result<BigUint, BinomialError> {
    binomial::up(&BigUint::from(count), order)
}

/// `count^<order>` where `order` may be negative; only a zero count has a
/// value there.
pub(crate) fn growth_signed(count: usize, order: i64) -> Result<BigUint, BinomialError> {
    if count == 0 {
        return Ok(BigUint::from(0u32));
    }
    let order = u32::try_from(order).map_err(|_| BinomialError::NoConvention {
        op: "up",
        h: BigUint::from(count),
    })?;
    growth(count, order)
}

/// Macaulay's lower bound `|V|^<n-1>` for the shadow of `v`.
pub fn shadow_bound(v: &MonomialSet) -> BigUint {
    // n = 1 forces |V| <= 1, which the order-0 conventions cover
    growth(v.len(), v.n_vars() as u32 - 1).expect("|V| <= 1 whenever n = 1")
}

/// `|MV| = |V|^<n-1>`. The empty set qualifies.
pub fn is_gotzmann(v: &MonomialSet) -> bool {
    BigUint::from(v.shadow().len()) == shadow_bound(v)
}

fn require_gotzmann(v: &MonomialSet) -> Result<(), EngineError> {
    let shadow = v.shadow().len();
    let bound = shadow_bound(v);
    if BigUint::from(shadow) != bound {
        return Err(EngineError::NotGotzmann { shadow, bound });
    }
    Ok(())
}

/// Shadow sizes `|M^k V|` for `k = 0..=steps` next to the sizes persistence
/// predicts, the k-fold iterate of `h -> h^<n-1>` from `|V|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceChain {
    pub sizes: Vec<usize>,
    pub predicted: Vec<BigUint>,
}

impl PersistenceChain {
    /// Every step grows minimally and the sizes match the iterate.
    pub fn holds(&self, n_vars: usize) -> bool {
        let order = n_vars as u32 - 1;
        let stepwise = self
            .sizes
            .windows(2)
            .all(|w| growth(w[0], order).is_ok_and(|g| g == BigUint::from(w[1])));
        let iterate = self
            .sizes
            .iter()
            .zip(&self.predicted)
            .all(|(s, p)| BigUint::from(*s) == *p);
        stepwise && iterate
    }
}

/// Computes the chain without any precondition on `v`.
pub fn persistence_chain(v: &MonomialSet, steps: usize) -> PersistenceChain {
    let order = v.n_vars() as u32 - 1;
    let mut sizes = Vec::with_capacity(steps + 1);
    let mut predicted = Vec::with_capacity(steps + 1);
    let mut current = v.clone();
    let mut guess = Some(BigUint::from(v.len()));
    for k in 0..=steps {
        sizes.push(current.len());
        predicted.push(guess.clone().unwrap_or_default());
        if k < steps {
            current = current.shadow();
            // an order-0 iterate past 1 has no value; it can never match
            guess = guess.and_then(|g| binomial::up(&g, order).ok());
        }
    }
    PersistenceChain { sizes, predicted }
}

/// Checks `|M^{k+1}V| = |M^kV|^<n-1>` for `k = 0..steps`.
pub fn verify_persistence(v: &MonomialSet, steps: usize) -> Result<bool, EngineError> {
    if steps == 0 {
        return Err(EngineError::BadRange("steps must be at least 1".into()));
    }
    require_gotzmann(v)?;
    Ok(persistence_chain(v, steps).holds(v.n_vars()))
}

/// Numeric and set-level conditions for splitting `V` (with `gcd(V) = 1`)
/// along one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitConditions {
    pub index: usize,
    /// `|V|`
    pub a: usize,
    /// `|D_i(V)|`
    pub b: usize,
    /// `|K_i(V)|`
    pub c: usize,
    pub kept_gotzmann: bool,
    pub dropped_gotzmann: bool,
    pub below_ddown: bool,
    pub above_remainder: bool,
    pub containment: bool,
    pub growth_identity: bool,
    pub doubled_identity: bool,
}

impl SplitConditions {
    /// All three splitting conditions hold.
    pub fn qualifies(&self) -> bool {
        self.kept_gotzmann
            && self.dropped_gotzmann
            && self.below_ddown
            && self.containment
            && self.doubled_identity
    }
}

/// Evaluates every splitting condition for `split` of `v`.
///
/// Requires `gcd(V) = 1`, `|V| > 1` (hence `n >= 2`).
pub fn split_conditions(
    v: &MonomialSet,
    split: &SplitResult,
) -> Result<SplitConditions, EngineError> {
    let n = v.n_vars() as u32;
    if v.len() < 2 {
        return Err(EngineError::TooSmall(v.len()));
    }
    let i = split.index;
    let (a, b, c) = (v.len(), split.dropped.len(), split.kept.len());
    let big = |x: usize| BigUint::from(x);

    let dropped_sub = split.dropped.restrict_vars(i)?;
    let kept_gotzmann = is_gotzmann(&split.kept);
    let dropped_gotzmann = is_gotzmann(&dropped_sub);

    let ddown = binomial::ddown(&big(a), n - 1)?;
    let below_ddown = big(b) < ddown;
    let rem = binomial::remainder(&big(a), n - 1)?.rem;
    let above_remainder = rem <= big(b);

    let containment = split
        .dropped
        .times_variable(i)?
        .is_subset_of(&split.kept.restricted_shadow(i)?);

    // n >= 2 here; at n = 2 the dropped set has at most one member, which is
    // exactly what the order-0 conventions need
    let up_a = growth(a, n - 1)?;
    let up_b = growth(b, n - 2)?;
    let up_c = growth(c, n - 1)?;
    let growth_identity = &up_c + &up_b == up_a;
    let doubled_identity =
        binomial::up(&up_c, n - 1)? + binomial::up(&up_b, n - 2)? == binomial::up(&up_a, n - 1)?;

    Ok(SplitConditions {
        index: i,
        a,
        b,
        c,
        kept_gotzmann,
        dropped_gotzmann,
        below_ddown,
        above_remainder,
        containment,
        growth_identity,
        doubled_identity,
    })
}

/// Smallest variable index along which `V` splits into a Gotzmann set in `n`
/// variables and a Gotzmann set in `n - 1` variables with the doubled growth
/// identity intact.
///
/// Requires a Gotzmann `V` with `gcd(V) = 1`, `V != M^d` and `|V| > 1`.
pub fn find_splitting_index(
    v: &MonomialSet,
) -> Result<(usize, SplitResult, SplitConditions), EngineError> {
    if v.len() < 2 {
        return Err(EngineError::TooSmall(v.len()));
    }
    require_gotzmann(v)?;
    let gcd = v.gcd()?;
    if !gcd.is_one() {
        return Err(EngineError::GcdNotOne(gcd.to_string()));
    }
    if v.is_full() {
        return Err(EngineError::FullSet);
    }
    for i in 1..=v.n_vars() {
        let split = v.split(i)?;
        let conditions = split_conditions(v, &split)?;
        if conditions.qualifies() {
            return Ok((i, split, conditions));
        }
    }
    Err(EngineError::NoSplittingIndex { set: v.to_string() })
}
