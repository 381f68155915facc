//! Exhaustive and sampled sweeps that check the binomial-growth lemmas and
//! the set-level statements behind persistence.
//!
//! Each sweep is cut into independent work items, run through
//! [`Parallelism`], and merged in item order, so a report never depends on
//! the worker count.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    build_certificate, check_certificate, enumerate_subsets, find_splitting_index, growth,
    growth_signed, is_gotzmann, persistence_chain, EngineError, Parallelism,
};
use crate::binomial::{self, binom_u64, eval_terms, shift_plus_one, BinomialRep, BinomialTerm};
use crate::monomial::{count_monomials, MonomialSet};

/// Sweep identifiers, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// Representations round-trip and order the same way as the integers.
    L1_2,
    /// Telescoping `C(h+n, n)` into a leading term plus a run of `n-1` terms,
    /// before and after the `[+1]` shift.
    L1_3,
    /// `h^<n> = h + h_<n>`.
    L1_4,
    /// `a^<n> + b^<n> > (a+b)^<n>`.
    L1_5,
    /// `C(α+n,n)^<n> + a^<n> <= b^<n> + c^<n>` when `C(α+n,n) + a = b + c`,
    /// and equality survives one more application of `<n>`.
    L1_6,
    /// `h^<n> < h^<n+1>`.
    L1_7,
    /// Restricted shadow of `D_i(V)` lies outside `x_i V`, the split lower
    /// bound on `|MV|`, and its equality characterisation.
    L2_1,
    /// `rem(|V|, n-1) <= |D_i(V)| <= |V|_<<n-1>>` on Gotzmann sets.
    L2_2,
    /// `|D_i(V)| = |V|_<<n-1>>` for every `i` forces `V` to be full.
    ClaimSharp,
    /// Macaulay's bound `|MV| >= |V|^<n-1>`.
    Macaulay1,
    /// Minimal growth persists along the shadow chain.
    Persistence,
    /// Splitting index exists and certificates validate.
    Certificate,
}

impl LemmaId {
    pub const ALL: [LemmaId; 12] = [
        LemmaId::L1_2,
        LemmaId::L1_3,
        LemmaId::L1_4,
        LemmaId::L1_5,
        LemmaId::L1_6,
        LemmaId::L1_7,
        LemmaId::L2_1,
        LemmaId::L2_2,
        LemmaId::ClaimSharp,
        LemmaId::Macaulay1,
        LemmaId::Persistence,
        LemmaId::Certificate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::L1_2 => "L1_2",
            LemmaId::L1_3 => "L1_3",
            LemmaId::L1_4 => "L1_4",
            LemmaId::L1_5 => "L1_5",
            LemmaId::L1_6 => "L1_6",
            LemmaId::L1_7 => "L1_7",
            LemmaId::L2_1 => "L2_1",
            LemmaId::L2_2 => "L2_2",
            LemmaId::ClaimSharp => "claim_sharp",
            LemmaId::Macaulay1 => "macaulay_1",
            LemmaId::Persistence => "persistence",
            LemmaId::Certificate => "certificate",
        }
    }

    /// Sweeps that enumerate monomial sets rather than integers.
    pub fn is_set_sweep(self) -> bool {
        matches!(
            self,
            LemmaId::L2_1
                | LemmaId::L2_2
                | LemmaId::ClaimSharp
                | LemmaId::Macaulay1
                | LemmaId::Persistence
                | LemmaId::Certificate
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = LemmaId::ALL.iter().map(|id| id.name()).collect();
                format!("unknown lemma `{s}` (expected one of {})", known.join(", "))
            })
    }
}

/// The `(n, d)` cells swept by default: every subset of `M^d` for
/// `n = 2, d <= 4`, `n = 3, d <= 3` and `n = 4, d = 2`.
pub fn default_cells() -> Vec<(usize, u32)> {
    let mut cells: Vec<(usize, u32)> = (0..=4).map(|d| (2, d)).collect();
    cells.extend((0..=3).map(|d| (3, d)));
    cells.push((4, 2));
    cells
}

/// Parameter space for one sweep. Fields a sweep does not use are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteRange {
    pub max_h: u64,
    pub max_n: u32,
    pub max_a: u64,
    /// `alpha` bound for the sampled part of `L1_6`.
    pub max_alpha: u64,
    /// `L1_6` is exhaustive for `n <= exhaustive_max_n`, `alpha <= exhaustive_max_alpha`.
    pub exhaustive_max_n: u32,
    pub exhaustive_max_alpha: u64,
    pub samples: usize,
    pub seed: u64,
    pub cells: Vec<(usize, u32)>,
    /// Shadow steps for the persistence sweep.
    pub steps: usize,
    /// Cap on subsets per `(n, d, a)` cell.
    pub budget: u64,
}

impl SuiteRange {
    pub fn defaults(id: LemmaId) -> SuiteRange {
        let base = SuiteRange {
            max_h: 0,
            max_n: 0,
            max_a: 0,
            max_alpha: 12,
            exhaustive_max_n: 3,
            exhaustive_max_alpha: 6,
            samples: 10_000,
            seed: 0,
            cells: default_cells(),
            steps: 5,
            budget: super::DEFAULT_BUDGET,
        };
        match id {
            LemmaId::L1_3 => SuiteRange {
                max_h: 50,
                max_n: 6,
                ..base
            },
            LemmaId::L1_2 => SuiteRange {
                max_h: 10_000,
                max_n: 8,
                ..base
            },
            LemmaId::L1_4 => SuiteRange {
                max_h: 10_000,
                max_n: 8,
                ..base
            },
            LemmaId::L1_5 => SuiteRange {
                max_a: 500,
                max_n: 6,
                ..base
            },
            LemmaId::L1_6 => SuiteRange { max_n: 6, ..base },
            LemmaId::L1_7 => SuiteRange {
                max_h: 10_000,
                max_n: 7,
                ..base
            },
            _ => base,
        }
    }

    fn describe(&self, id: LemmaId) -> String {
        match id {
            LemmaId::L1_3 => format!(
                "h in 0..={}, n in 1..={}, alpha in 1..=h",
                self.max_h, self.max_n
            ),
            LemmaId::L1_2 | LemmaId::L1_4 | LemmaId::L1_7 => {
                format!("h in 1..={}, n in 1..={}", self.max_h, self.max_n)
            }
            LemmaId::L1_5 => format!("a,b in 1..={}, n in 1..={}", self.max_a, self.max_n),
            LemmaId::L1_6 => format!(
                "exhaustive n in 1..={}, alpha in 1..={}; {} samples from n in 1..={}, alpha in 1..={} (seed {})",
                self.exhaustive_max_n,
                self.exhaustive_max_alpha,
                self.samples,
                self.max_n,
                self.max_alpha,
                self.seed
            ),
            _ => {
                let cells: Vec<String> = self
                    .cells
                    .iter()
                    .map(|(n, d)| format!("({n},{d})"))
                    .collect();
                let mut out = format!("all subsets of M^d for (n,d) in {}", cells.join(" "));
                if id == LemmaId::Persistence {
                    out.push_str(&format!(", steps={}", self.steps));
                }
                out
            }
        }
    }
}

/// One counterexample: the parameters and, for set sweeps, the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub params: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Violation {
    fn numeric(params: String) -> Self {
        Violation {
            params,
            witness: None,
        }
    }

    fn on_set(params: String, v: &MonomialSet) -> Self {
        Violation {
            params,
            witness: Some(v.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub range: String,
    pub cases: u64,
    pub violations: Vec<Violation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How many counterexamples the plain rendering lists before summarising.
const SHOWN_VIOLATIONS: usize = 20;

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lemma {}", self.lemma)?;
        writeln!(f, "range {}", self.range)?;
        writeln!(
            f,
            "cases={} violations={}",
            self.cases,
            self.violations.len()
        )?;
        for v in self.violations.iter().take(SHOWN_VIOLATIONS) {
            writeln!(f, "violation {}", v.params)?;
            if let Some(w) = &v.witness {
                for line in w.lines() {
                    writeln!(f, "  {line}")?;
                }
            }
        }
        if self.violations.len() > SHOWN_VIOLATIONS {
            writeln!(
                f,
                "... {} more violations",
                self.violations.len() - SHOWN_VIOLATIONS
            )?;
        }
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn check(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.cases += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    fn merge(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), |mut acc, part| {
            acc.cases += part.cases;
            acc.violations.extend(part.violations);
            acc
        })
    }
}

/// Runs one sweep over `range`.
pub fn run_lemma_suite(
    id: LemmaId,
    range: &SuiteRange,
    par: Parallelism,
) -> Result<LemmaReport, EngineError> {
    let tally = match id {
        LemmaId::L1_2 => representations(range, par)?,
        LemmaId::L1_3 => telescoping(range, par)?,
        LemmaId::L1_4 => growth_splits(range, par)?,
        LemmaId::L1_5 => superadditivity(range, par)?,
        LemmaId::L1_6 => three_term(range, par)?,
        LemmaId::L1_7 => order_monotone(range, par)?,
        _ => set_sweep(id, range, par)?,
    };
    Ok(LemmaReport {
        lemma: id.name().to_string(),
        range: range.describe(id),
        cases: tally.cases,
        violations: tally.violations,
    })
}

fn require_positive(value: u64, name: &str) -> Result<(), EngineError> {
    if value == 0 {
        return Err(EngineError::BadRange(format!("{name} must be positive")));
    }
    Ok(())
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn up(h: &BigUint, n: u32) -> BigUint {
    binomial::up(h, n).expect("n >= 1 in numeric sweeps")
}

fn telescoping(range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    require_positive(range.max_n as u64, "max-n")?;
    let items: Vec<(u64, u32)> = (0..=range.max_h)
        .flat_map(|h| (1..=range.max_n).map(move |n| (h, n)))
        .collect();
    let parts = par.map(&items, |&(h, n)| {
        let mut tally = Tally::default();
        let whole = vec![BinomialTerm::new(h + n as u64, n)];
        let lhs = eval_terms(&whole);
        let lhs_shifted = eval_terms(&shift_plus_one(&whole));
        for alpha in 1..=h {
            let mut terms = vec![BinomialTerm::new(alpha - 1 + n as u64, n)];
            terms.extend((alpha..=h).map(|i| BinomialTerm::new(i + n as u64 - 1, n - 1)));
            let ok =
                eval_terms(&terms) == lhs && eval_terms(&shift_plus_one(&terms)) == lhs_shifted;
            tally.check(ok, || {
                Violation::numeric(format!("h={h} n={n} alpha={alpha}"))
            });
        }
        tally
    });
    Ok(Tally::merge(parts))
}

/// Splits `1..=max_h` into fixed-size blocks for each order.
fn h_blocks(max_h: u64, max_n: u32) -> Vec<(u32, u64, u64)> {
    const BLOCK: u64 = 500;
    let mut items = Vec::new();
    for n in 1..=max_n {
        let mut start = 1;
        while start <= max_h {
            let end = (start + BLOCK - 1).min(max_h);
            items.push((n, start, end));
            start = end + 1;
        }
    }
    items
}

fn representations(range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    require_positive(range.max_n as u64, "max-n")?;
    let items = h_blocks(range.max_h, range.max_n);
    let parts = par.map(&items, |&(n, start, end)| {
        let mut tally = Tally::default();
        // each block also compares against the last value of the block before it
        let mut prev = BinomialRep::of(&big(start.max(2) - 1), n).expect("h, n >= 1");
        for h in start..=end {
            let rep = BinomialRep::of(&big(h), n).expect("h, n >= 1");
            let round_trip = rep.value() == big(h);
            // strict increase between neighbours gives the full order by transitivity
            let ordered = h == 1 || prev.compare(&rep) == Ok(Ordering::Less);
            tally.check(round_trip && ordered, || {
                Violation::numeric(format!("h={h} n={n} rep={rep}"))
            });
            prev = rep;
        }
        tally
    });
    Ok(Tally::merge(parts))
}

fn growth_splits(range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    require_positive(range.max_n as u64, "max-n")?;
    let items = h_blocks(range.max_h, range.max_n);
    let parts = par.map(&items, |&(n, start, end)| {
        let mut tally = Tally::default();
        for h in start..=end {
            let hb = big(h);
            let ok = up(&hb, n) == &hb + binomial::down(&hb, n).expect("n >= 1");
            tally.check(ok, || Violation::numeric(format!("h={h} n={n}")));
        }
        tally
    });
    Ok(Tally::merge(parts))
}

fn order_monotone(range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    require_positive(range.max_n as u64, "max-n")?;
    let items = h_blocks(range.max_h, range.max_n);
    let parts = par.map(&items, |&(n, start, end)| {
        let mut tally = Tally::default();
        for h in start..=end {
            let hb = big(h);
            let ok = up(&hb, n) < up(&hb, n + 1);
            tally.check(ok, || Violation::numeric(format!("h={h} n={n}")));
        }
        tally
    });
    Ok(Tally::merge(parts))
}

fn superadditivity(range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    require_positive(range.max_n as u64, "max-n")?;
    let max_a = range.max_a;
    let tables: Vec<Vec<BigUint>> = (1..=range.max_n)
        .map(|n| (0..=2 * max_a).map(|h| up(&big(h), n)).collect())
        .collect();
    let items: Vec<(u32, u64)> = (1..=range.max_n)
        .flat_map(|n| (1..=max_a).map(move |a| (n, a)))
        .collect();
    let parts = par.map(&items, |&(n, a)| {
        let table = &tables[n as usize - 1];
        let mut tally = Tally::default();
        for b in 1..=max_a {
            let ok = &table[a as usize] + &table[b as usize] > table[(a + b) as usize];
            tally.check(ok, || Violation::numeric(format!("a={a} b={b} n={n}")));
        }
        tally
    });
    Ok(Tally::merge(parts))
}

/// One instance of the three-term inequality with `c = C(α+n,n) + a - b`.
fn three_term_case(n: u32, alpha: u64, a: u64, b: u64, tally: &mut Tally) {
    let lead = binom_u64(alpha + n as u64, n);
    let c = &lead + big(a) - big(b);
    let up_n = |h: &BigUint| up(h, n);
    let (ul, ua, ub, uc) = (up_n(&lead), up_n(&big(a)), up_n(&big(b)), up_n(&c));
    let left = &ul + &ua;
    let right = &ub + &uc;
    let mut ok = left <= right;
    if ok && left == right {
        ok = up_n(&ul) + up_n(&ua) == up_n(&ub) + up_n(&uc);
    }
    tally.check(ok, || {
        Violation::numeric(format!("n={n} alpha={alpha} a={a} b={b} c={c}"))
    });
}

fn three_term(range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    let exhaustive: Vec<(u32, u64)> = (1..=range.exhaustive_max_n)
        .flat_map(|n| (1..=range.exhaustive_max_alpha).map(move |alpha| (n, alpha)))
        .collect();
    let mut parts = par.map(&exhaustive, |&(n, alpha)| {
        let mut tally = Tally::default();
        let lead = binom_u64(alpha + n as u64, n)
            .to_u64()
            .expect("exhaustive leading term fits in u64");
        // a < b < lead, and then c = lead + a - b also lies strictly between a and lead
        for a in 1..lead {
            for b in a + 1..lead {
                three_term_case(n, alpha, a, b, &mut tally);
            }
        }
        tally
    });

    let in_exhaustive =
        |n: u32, alpha: u64| n <= range.exhaustive_max_n && alpha <= range.exhaustive_max_alpha;
    let sampled_region_empty =
        (1..=range.max_n).all(|n| (1..=range.max_alpha).all(|alpha| in_exhaustive(n, alpha)));
    if range.samples > 0 {
        if sampled_region_empty {
            return Err(EngineError::BadRange(
                "sampled region lies entirely inside the exhaustive region".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(range.seed);
        let mut samples = Vec::with_capacity(range.samples);
        while samples.len() < range.samples {
            let n = rng.gen_range(1..=range.max_n);
            let alpha = rng.gen_range(1..=range.max_alpha);
            if in_exhaustive(n, alpha) {
                continue;
            }
            let lead = binom_u64(alpha + n as u64, n)
                .to_u64()
                .ok_or_else(|| EngineError::BadRange("sampled C(alpha+n, n) exceeds u64".into()))?;
            if lead < 3 {
                continue;
            }
            let a = rng.gen_range(1..=lead - 2);
            let b = rng.gen_range(a + 1..=lead - 1);
            samples.push((n, alpha, a, b));
        }
        let sampled = par.map(&samples, |&(n, alpha, a, b)| {
            let mut tally = Tally::default();
            three_term_case(n, alpha, a, b, &mut tally);
            tally
        });
        parts.extend(sampled);
    }
    Ok(Tally::merge(parts))
}

/// Work item for a set sweep: ranks `[start, end)` of the `size`-subsets of
/// `M^degree` in `n_vars` variables.
#[derive(Debug, Clone, Copy)]
struct SetChunk {
    n_vars: usize,
    degree: u32,
    size: usize,
    start: u64,
    end: u64,
}

fn set_chunks(range: &SuiteRange) -> Result<Vec<SetChunk>, EngineError> {
    const CHUNK: u64 = 256;
    let mut chunks = Vec::new();
    for &(n_vars, degree) in &range.cells {
        if n_vars == 0 {
            return Err(EngineError::BadRange("n must be positive".into()));
        }
        for size in 0..=count_monomials(n_vars, degree) {
            let total = enumerate_subsets(n_vars, degree, size, range.budget)?.total();
            let mut start = 0;
            while start < total {
                let end = (start + CHUNK).min(total);
                chunks.push(SetChunk {
                    n_vars,
                    degree,
                    size,
                    start,
                    end,
                });
                start = end;
            }
        }
    }
    Ok(chunks)
}

fn set_sweep(id: LemmaId, range: &SuiteRange, par: Parallelism) -> Result<Tally, EngineError> {
    if id == LemmaId::Persistence && range.steps == 0 {
        return Err(EngineError::BadRange("steps must be at least 1".into()));
    }
    let chunks = set_chunks(range)?;
    let parts = par.map(&chunks, |chunk| {
        let mut tally = Tally::default();
        let subsets = enumerate_subsets(chunk.n_vars, chunk.degree, chunk.size, range.budget)
            .expect("budget checked while chunking")
            .with_rank_range(chunk.start, chunk.end);
        for v in subsets {
            match id {
                LemmaId::Macaulay1 => check_macaulay(&v, &mut tally),
                LemmaId::L2_1 => check_split_bound(&v, &mut tally),
                LemmaId::L2_2 => check_dropped_range(&v, &mut tally),
                LemmaId::ClaimSharp => check_claim_sharp(&v, &mut tally),
                LemmaId::Persistence => check_persistence(&v, range.steps, &mut tally),
                LemmaId::Certificate => check_certificates(&v, &mut tally),
                _ => unreachable!("numeric sweep routed to set sweep"),
            }
        }
        tally
    });
    Ok(Tally::merge(parts))
}

fn order_below(v: &MonomialSet) -> u32 {
    v.n_vars() as u32 - 1
}

fn check_macaulay(v: &MonomialSet, tally: &mut Tally) {
    let shadow = v.shadow().len();
    let bound = growth(v.len(), order_below(v)).expect("|V| <= 1 when n = 1");
    tally.check(BigUint::from(shadow) >= bound, || {
        Violation::on_set(format!("|MV|={shadow} bound={bound}"), v)
    });
}

fn check_split_bound(v: &MonomialSet, tally: &mut Tally) {
    if v.is_empty() {
        return;
    }
    let n = v.n_vars() as i64;
    let shadow = v.shadow();
    for i in 1..=v.n_vars() {
        let split = v.split(i).expect("nonempty, index in range");
        let outside = shadow.difference(&v.times_variable(i).expect("index in range"));
        let containment = split
            .dropped
            .restricted_shadow(i)
            .expect("index in range")
            .is_subset_of(&outside);

        let kept_growth = growth(split.kept.len(), (n - 1) as u32);
        let dropped_growth = growth_signed(split.dropped.len(), n - 2);
        let (Ok(kept_growth), Ok(dropped_growth)) = (kept_growth, dropped_growth) else {
            tally.check(false, || {
                Violation::on_set(format!("i={i}: growth undefined for |K|, |D|"), v)
            });
            continue;
        };
        let bound = kept_growth + dropped_growth;
        let shadow_size = BigUint::from(shadow.len());
        let bound_ok = shadow_size >= bound;

        let dropped_gotzmann = split.dropped.is_empty() || {
            let reduced = split
                .dropped
                .divide_out(&split.gcd)
                .and_then(|d| d.restrict_vars(i))
                .expect("D_i(V)/u is free of x_i");
            is_gotzmann(&reduced)
        };
        let nested = split
            .dropped
            .times_variable(i)
            .expect("index in range")
            .is_subset_of(&split.kept.restricted_shadow(i).expect("index in range"));
        let characterised = is_gotzmann(&split.kept) && dropped_gotzmann && nested;
        let equality_ok = (shadow_size == bound) == characterised;

        tally.check(containment && bound_ok && equality_ok, || {
            Violation::on_set(
                format!(
                    "i={i} containment={containment} |MV|={} bound={bound} equality_characterised={equality_ok}",
                    shadow.len()
                ),
                v,
            )
        });
    }
}

fn check_dropped_range(v: &MonomialSet, tally: &mut Tally) {
    if v.is_empty() || !is_gotzmann(v) {
        return;
    }
    let a = BigUint::from(v.len());
    let order = order_below(v);
    let lower = if v.len() <= 1 {
        BigUint::zero()
    } else {
        binomial::remainder(&a, order)
            .expect("n >= 2 when |V| >= 2")
            .rem
    };
    let upper = binomial::ddown(&a, order).expect("|V| <= 1 when n = 1");
    for i in 1..=v.n_vars() {
        let b = BigUint::from(v.split(i).expect("nonempty").dropped.len());
        tally.check(lower <= b && b <= upper, || {
            Violation::on_set(format!("i={i} lower={lower} |D|={b} upper={upper}"), v)
        });
    }
}

fn check_claim_sharp(v: &MonomialSet, tally: &mut Tally) {
    if v.is_empty() || !is_gotzmann(v) || !v.gcd().expect("nonempty").is_one() {
        return;
    }
    let upper =
        binomial::ddown(&BigUint::from(v.len()), order_below(v)).expect("|V| <= 1 when n = 1");
    let uniform = (1..=v.n_vars())
        .all(|i| BigUint::from(v.split(i).expect("nonempty").dropped.len()) == upper);
    tally.check(!uniform || v.is_full(), || {
        Violation::on_set("uniform |D_i| = |V|_<<n-1>> but V is not full".into(), v)
    });
}

fn check_persistence(v: &MonomialSet, steps: usize, tally: &mut Tally) {
    if !is_gotzmann(v) {
        return;
    }
    let chain = persistence_chain(v, steps);
    tally.check(chain.holds(v.n_vars()), || {
        let sizes: Vec<String> = chain.sizes.iter().map(|s| s.to_string()).collect();
        Violation::on_set(format!("chain {}", sizes.join(" ")), v)
    });
}

fn check_certificates(v: &MonomialSet, tally: &mut Tally) {
    if v.is_empty() || !is_gotzmann(v) {
        return;
    }
    let needs_split = v.len() > 1 && !v.is_full() && v.gcd().expect("nonempty").is_one();
    let outcome = (|| -> Result<(), String> {
        if needs_split {
            find_splitting_index(v).map_err(|e| e.to_string())?;
        }
        let cert = build_certificate(v).map_err(|e| e.to_string())?;
        check_certificate(&cert, v).map_err(|e| e.to_string())
    })();
    tally.check(outcome.is_ok(), || {
        Violation::on_set(outcome.clone().unwrap_err(), v)
    });
}
