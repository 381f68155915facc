//! Monomials in a fixed number of variables and same-degree monomial sets.
//!
//! Variable indices are 1-based at the API surface (`x1, ..., xn`). Sets are
//! kept deduplicated in strictly descending lexicographic order, so two sets
//! are equal exactly when their member lists are.
//!
//! Text format: a monomial is either an exponent vector (`2 0 1`) or a
//! product of powers (`x1^2*x3`); the constant monomial is `1`. A set file
//! starts with a `n=<int> d=<int>` header followed by one monomial per line.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range 1..={n_vars}")]
    IndexOutOfRange { index: usize, n_vars: usize },
    #[error("monomial {monomial} has degree {found}, expected {expected}")]
    DegreeMismatch {
        monomial: String,
        found: u32,
        expected: u32,
    },
    #[error("gcd of an empty monomial set is undefined")]
    EmptySet,
    #[error("{divisor} does not divide {monomial}")]
    NotDivisible { divisor: String, monomial: String },
    #[error("{monomial} involves x{index}; it cannot be restricted away")]
    InvolvesVariable { monomial: String, index: usize },
    #[error("cannot drop the only variable")]
    NoVariablesLeft,
    #[error("lexsegment size {size} exceeds |M^{degree}| = {available}")]
    SegmentTooLarge {
        size: usize,
        degree: u32,
        available: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An exponent vector `(a1, ..., an)` standing for `x1^a1 * ... * xn^an`.
///
/// The derived ordering compares exponent vectors lexicographically, which is
/// the lex order on monomials of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { exponents, degree }
    }

    /// The constant monomial `1` in `n_vars` variables.
    pub fn one(n_vars: usize) -> Self {
        Monomial::new(vec![0; n_vars])
    }

    /// `x_index` (1-based).
    pub fn variable(n_vars: usize, index: usize) -> Result<Self, MonomialError> {
        check_index(index, n_vars)?;
        let mut e = vec![0; n_vars];
        e[index - 1] = 1;
        Ok(Monomial::new(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Exponent of `x_index` (1-based).
    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index - 1]
    }

    pub fn times_variable(&self, index: usize) -> Monomial {
        let mut e = self.exponents.clone();
        e[index - 1] += 1;
        Monomial {
            exponents: e,
            degree: self.degree + 1,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.n_vars() == other.n_vars()
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if exact.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&divisor.exponents)
                .map(|(a, b)| a - b)
                .collect(),
            degree: self.degree - divisor.degree,
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Removes coordinate `index` (1-based) from the exponent vector.
    fn without_variable(&self, index: usize) -> Monomial {
        let mut e = self.exponents.clone();
        e.remove(index - 1);
        Monomial::new(e)
    }

    /// Parses either text form for a monomial in `n_vars` variables.
    pub fn parse(text: &str, n_vars: usize) -> Result<Monomial, String> {
        let text = text.trim();
        if text == "1" {
            return Ok(Monomial::one(n_vars));
        }
        if text.contains('x') {
            let mut e = vec![0u32; n_vars];
            for factor in text.split('*') {
                let factor = factor.trim();
                let body = factor
                    .strip_prefix('x')
                    .ok_or_else(|| format!("bad factor `{factor}`"))?;
                let (index, power) = match body.split_once('^') {
                    Some((i, p)) => (i, p),
                    None => (body, "1"),
                };
                let index: usize = index
                    .parse()
                    .map_err(|_| format!("bad variable index in `{factor}`"))?;
                let power: u32 = power
                    .parse()
                    .map_err(|_| format!("bad exponent in `{factor}`"))?;
                if index == 0 || index > n_vars {
                    return Err(format!("variable x{index} out of range 1..={n_vars}"));
                }
                e[index - 1] += power;
            }
            return Ok(Monomial::new(e));
        }
        let e: Vec<u32> = text
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| format!("bad exponent `{t}`")))
            .collect::<Result<_, _>>()?;
        if e.len() != n_vars {
            return Err(format!(
                "exponent vector `{text}` has {} entries, expected {n_vars}",
                e.len()
            ));
        }
        Ok(Monomial::new(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, a)?;
            }
        }
        Ok(())
    }
}

fn check_index(index: usize, n_vars: usize) -> Result<(), MonomialError> {
    if index == 0 || index > n_vars {
        return Err(MonomialError::IndexOutOfRange { index, n_vars });
    }
    Ok(())
}

/// Lex comparison: `a < b` iff the leftmost nonzero entry of `b - a` is positive.
pub fn lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering, MonomialError> {
    if a.n_vars() != b.n_vars() {
        return Err(MonomialError::VarCountMismatch {
            left: a.n_vars(),
            right: b.n_vars(),
        });
    }
    Ok(a.exponents.cmp(&b.exponents))
}

/// A set of degree-`d` monomials in `n` variables, lex-descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    n_vars: usize,
    degree: u32,
    members: Vec<Monomial>,
}

impl MonomialSet {
    pub fn new(
        n_vars: usize,
        degree: u32,
        members: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, MonomialError> {
        let mut list: Vec<Monomial> = Vec::new();
        for m in members {
            if m.n_vars() != n_vars {
                return Err(MonomialError::VarCountMismatch {
                    left: m.n_vars(),
                    right: n_vars,
                });
            }
            if m.degree() != degree {
                return Err(MonomialError::DegreeMismatch {
                    monomial: m.to_string(),
                    found: m.degree(),
                    expected: degree,
                });
            }
            list.push(m);
        }
        list.sort_unstable_by(|a, b| b.cmp(a));
        list.dedup();
        Ok(MonomialSet {
            n_vars,
            degree,
            members: list,
        })
    }

    pub fn empty(n_vars: usize, degree: u32) -> Self {
        MonomialSet {
            n_vars,
            degree,
            members: Vec::new(),
        }
    }

    /// Members must already be valid, deduplicated and lex-descending.
    pub(crate) fn from_sorted(n_vars: usize, degree: u32, members: Vec<Monomial>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] > w[1]));
        debug_assert!(members
            .iter()
            .all(|m| m.n_vars() == n_vars && m.degree() == degree));
        MonomialSet {
            n_vars,
            degree,
            members,
        }
    }

    fn from_btree(n_vars: usize, degree: u32, set: BTreeSet<Monomial>) -> Self {
        MonomialSet {
            n_vars,
            degree,
            members: set.into_iter().rev().collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.members.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.binary_search_by(|probe| m.cmp(probe)).is_ok()
    }

    pub fn is_subset_of(&self, other: &MonomialSet) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &MonomialSet) -> MonomialSet {
        MonomialSet {
            n_vars: self.n_vars,
            degree: self.degree,
            members: self
                .members
                .iter()
                .filter(|m| !other.contains(m))
                .cloned()
                .collect(),
        }
    }

    /// `true` if this is all of `M^d` for its variable count and degree.
    pub fn is_full(&self) -> bool {
        self.len() == count_monomials(self.n_vars, self.degree)
    }

    /// `MV = { x_j v : v in V, j = 1..n }`.
    pub fn shadow(&self) -> MonomialSet {
        let mut out = BTreeSet::new();
        for v in &self.members {
            for j in 1..=self.n_vars {
                out.insert(v.times_variable(j));
            }
        }
        MonomialSet::from_btree(self.n_vars, self.degree + 1, out)
    }

    /// `M^k V`.
    pub fn iterated_shadow(&self, k: usize) -> MonomialSet {
        (0..k).fold(self.clone(), |acc, _| acc.shadow())
    }

    /// Multiplies by every variable except `x_index`.
    pub fn restricted_shadow(&self, index: usize) -> Result<MonomialSet, MonomialError> {
        check_index(index, self.n_vars)?;
        let mut out = BTreeSet::new();
        for v in &self.members {
            for j in (1..=self.n_vars).filter(|&j| j != index) {
                out.insert(v.times_variable(j));
            }
        }
        Ok(MonomialSet::from_btree(self.n_vars, self.degree + 1, out))
    }

    /// `x_index * V`.
    pub fn times_variable(&self, index: usize) -> Result<MonomialSet, MonomialError> {
        check_index(index, self.n_vars)?;
        // multiplication by a fixed monomial preserves lex order
        Ok(MonomialSet {
            n_vars: self.n_vars,
            degree: self.degree + 1,
            members: self
                .members
                .iter()
                .map(|m| m.times_variable(index))
                .collect(),
        })
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn gcd(&self) -> Result<Monomial, MonomialError> {
        let (first, rest) = self.members.split_first().ok_or(MonomialError::EmptySet)?;
        Ok(rest.iter().fold(first.clone(), |acc, m| acc.gcd(m)))
    }

    /// `K_i(V)` and `D_i(V)` for `u = gcd(V)`.
    ///
    /// For `|V| > 1`, `K_i(V)` holds the members divisible by `x_i * u` and
    /// `D_i(V)` the rest. A singleton is kept whole. `D_i(V)` is nonempty
    /// whenever `|V| > 1`; `K_i(V)` may be empty when every member carries the
    /// same power of `x_i`.
    pub fn split(&self, index: usize) -> Result<SplitResult, MonomialError> {
        check_index(index, self.n_vars)?;
        let gcd = self.gcd()?;
        if self.len() == 1 {
            return Ok(SplitResult {
                index,
                gcd,
                kept: self.clone(),
                dropped: MonomialSet::empty(self.n_vars, self.degree),
            });
        }
        let pivot = gcd.times_variable(index);
        let (kept, dropped): (Vec<Monomial>, Vec<Monomial>) =
            self.members.iter().cloned().partition(|m| pivot.divides(m));
        Ok(SplitResult {
            index,
            gcd,
            kept: MonomialSet::from_sorted(self.n_vars, self.degree, kept),
            dropped: MonomialSet::from_sorted(self.n_vars, self.degree, dropped),
        })
    }

    /// `(1/u) V`.
    pub fn divide_out(&self, u: &Monomial) -> Result<MonomialSet, MonomialError> {
        if u.n_vars() != self.n_vars {
            return Err(MonomialError::VarCountMismatch {
                left: u.n_vars(),
                right: self.n_vars,
            });
        }
        let members = self
            .members
            .iter()
            .map(|m| {
                m.checked_div(u).ok_or_else(|| MonomialError::NotDivisible {
                    divisor: u.to_string(),
                    monomial: m.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let degree =
            self.degree
                .checked_sub(u.degree())
                .ok_or_else(|| MonomialError::NotDivisible {
                    divisor: u.to_string(),
                    monomial: format!("degree {}", self.degree),
                })?;
        Ok(MonomialSet {
            n_vars: self.n_vars,
            degree,
            members,
        })
    }

    /// Reads an `x_index`-free set as a set in the remaining `n - 1` variables.
    pub fn restrict_vars(&self, index: usize) -> Result<MonomialSet, MonomialError> {
        check_index(index, self.n_vars)?;
        if self.n_vars == 1 {
            return Err(MonomialError::NoVariablesLeft);
        }
        if let Some(m) = self.members.iter().find(|m| m.exponent(index) > 0) {
            return Err(MonomialError::InvolvesVariable {
                monomial: m.to_string(),
                index,
            });
        }
        // deleting a zero coordinate preserves lex order
        Ok(MonomialSet {
            n_vars: self.n_vars - 1,
            degree: self.degree,
            members: self
                .members
                .iter()
                .map(|m| m.without_variable(index))
                .collect(),
        })
    }

    /// Parses a set file (`n=<int> d=<int>` header, one monomial per line).
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<MonomialSet, MonomialError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines.next().ok_or(MonomialError::Parse {
            line: 1,
            message: "missing `n=<int> d=<int>` header".into(),
        })?;
        let (n_vars, degree) = parse_header(header).map_err(|message| MonomialError::Parse {
            line: header_line,
            message,
        })?;
        let mut members = Vec::new();
        for (line, text) in lines {
            let m = Monomial::parse(text, n_vars)
                .map_err(|message| MonomialError::Parse { line, message })?;
            if m.degree() != degree {
                return Err(MonomialError::Parse {
                    line,
                    message: format!("{m} has degree {}, expected {degree}", m.degree()),
                });
            }
            members.push(m);
        }
        MonomialSet::new(n_vars, degree, members)
    }
}

fn parse_header(header: &str) -> Result<(usize, u32), String> {
    let mut n = None;
    let mut d = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| format!("bad n `{v}`"))?),
            Some(("d", v)) => d = Some(v.parse::<u32>().map_err(|_| format!("bad d `{v}`"))?),
            _ => return Err(format!("unexpected header field `{field}`")),
        }
    }
    match (n, d) {
        (Some(0), _) => Err("n must be positive".into()),
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err("header must be `n=<int> d=<int>`".into()),
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} d={}", self.n_vars, self.degree)?;
        for m in &self.members {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `K_i(V)`, `D_i(V)` and `u = gcd(V)` for one variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub index: usize,
    pub gcd: Monomial,
    pub kept: MonomialSet,
    pub dropped: MonomialSet,
}

/// `|M^d| = C(d+n-1, n-1)`, as a machine integer.
pub fn count_monomials(n_vars: usize, degree: u32) -> usize {
    // C(d+n-1, d) computed incrementally; exact at each step
    let mut acc: u128 = 1;
    for k in 1..n_vars as u128 {
        acc = acc * (degree as u128 + k) / k;
    }
    usize::try_from(acc).expect("monomial count overflows usize")
}

/// `M^d`, lex-descending. `M^0 = {1}`.
pub fn all_monomials(n_vars: usize, degree: u32) -> MonomialSet {
    fn fill(slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for a in (0..=left).rev() {
            cur[slot] = a;
            fill(slot + 1, left - a, cur, out);
        }
    }
    assert!(n_vars > 0, "at least one variable is required");
    let mut out = Vec::with_capacity(count_monomials(n_vars, degree));
    fill(0, degree, &mut vec![0; n_vars], &mut out);
    MonomialSet::from_sorted(n_vars, degree, out)
}

/// `Lex(n, d, a)`: the `a` lex-greatest monomials of `M^d`.
pub fn lexsegment(n_vars: usize, degree: u32, size: usize) -> Result<MonomialSet, MonomialError> {
    let mut all = all_monomials(n_vars, degree);
    if size > all.len() {
        return Err(MonomialError::SegmentTooLarge {
            size,
            degree,
            available: all.len(),
        });
    }
    all.members.truncate(size);
    Ok(all)
}
