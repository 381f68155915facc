//! Exact binomial coefficients and Macaulay (nth binomial) representations.
//!
//! Every positive integer `h` has a unique expansion
//!
//! ```text
//! h = C(h(n)+n, n) + C(h(n-1)+n-1, n-1) + ... + C(h(i)+i, i)
//! ```
//!
//! with `h(n) >= h(n-1) >= ... >= h(i) >= 0` and `i >= 1`. The growth
//! operators [`up`], [`down`] and [`ddown`] act on this expansion term by term.
//! Values `0` and `1` at order `0` follow fixed conventions; anything else at
//! order `0` is rejected.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("binomial representations are defined for positive integers only (got h = 0)")]
    ZeroValue,
    #[error("representation order must be positive (got n = 0)")]
    ZeroOrder,
    #[error("operator `{op}` has no convention for h = {h} at n = 0")]
    NoConvention { op: &'static str, h: BigUint },
    #[error("representations of different orders cannot be compared ({left} vs {right})")]
    OrderMismatch { left: u32, right: u32 },
    #[error("invalid binomial representation: {0}")]
    Invalid(String),
}

/// `C(top, bottom)`, zero when `bottom > top`.
pub fn binom(top: &BigUint, bottom: u32) -> BigUint {
    let bottom_big = BigUint::from(bottom);
    if bottom_big > *top {
        return BigUint::zero();
    }
    // C(t, b) = C(t, t - b); pick the shorter product.
    let complement = top - &bottom_big;
    let k = match complement.to_u32() {
        Some(c) if c < bottom => c,
        _ => bottom,
    };
    let base = top - BigUint::from(k);
    let mut acc = BigUint::one();
    for step in 1..=k {
        acc *= &base + BigUint::from(step);
        acc /= BigUint::from(step);
    }
    acc
}

/// Small-argument convenience wrapper around [`binom`].
pub fn binom_u64(top: u64, bottom: u32) -> BigUint {
    binom(&BigUint::from(top), bottom)
}

/// One summand `C(top, bottom)` of a binomial sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialTerm {
    pub top: BigUint,
    pub bottom: u32,
}

impl BinomialTerm {
    pub fn new(top: impl Into<BigUint>, bottom: u32) -> Self {
        BinomialTerm {
            top: top.into(),
            bottom,
        }
    }

    pub fn value(&self) -> BigUint {
        binom(&self.top, self.bottom)
    }

    /// `h(j) = top - bottom`; `None` if the term is not a valid summand.
    pub fn excess(&self) -> Option<BigUint> {
        let bottom = BigUint::from(self.bottom);
        (self.top >= bottom).then(|| &self.top - bottom)
    }
}

impl fmt::Display for BinomialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.top, self.bottom)
    }
}

/// Sum of the values of an arbitrary list of terms.
pub fn eval_terms(terms: &[BinomialTerm]) -> BigUint {
    terms.iter().map(BinomialTerm::value).sum()
}

/// The `[+1]` shift: every top index incremented, bottoms untouched.
///
/// Accepts any list of terms, canonical or not.
pub fn shift_plus_one(terms: &[BinomialTerm]) -> Vec<BinomialTerm> {
    terms
        .iter()
        .map(|t| BinomialTerm {
            top: &t.top + 1u32,
            bottom: t.bottom,
        })
        .collect()
}

/// The nth binomial representation of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialRep {
    order: u32,
    terms: Vec<BinomialTerm>,
}

impl BinomialRep {
    /// Builds a representation from explicit terms, checking every invariant.
    pub fn new(order: u32, terms: Vec<BinomialTerm>) -> Result<Self, BinomialError> {
        let rep = BinomialRep { order, terms };
        rep.validate()?;
        Ok(rep)
    }

    /// Greedy construction: at each bottom index `j = n, n-1, ...` take the
    /// largest `C(t, j)` not exceeding what is left.
    pub fn of(h: &BigUint, order: u32) -> Result<Self, BinomialError> {
        if h.is_zero() {
            return Err(BinomialError::ZeroValue);
        }
        if order == 0 {
            return Err(BinomialError::ZeroOrder);
        }
        let mut left = h.clone();
        let mut terms = Vec::new();
        let mut bottom = order;
        while !left.is_zero() {
            if bottom == 0 {
                return Err(BinomialError::Invalid(format!(
                    "greedy expansion of {h} at order {order} ran past bottom index 1"
                )));
            }
            let top = largest_top(&left, bottom);
            left -= binom(&top, bottom);
            terms.push(BinomialTerm { top, bottom });
            bottom -= 1;
        }
        let rep = BinomialRep { order, terms };
        rep.validate()?;
        debug_assert_eq!(rep.value(), *h);
        Ok(rep)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[BinomialTerm] {
        &self.terms
    }

    /// Lowest bottom index `i` of the expansion.
    pub fn last_index(&self) -> u32 {
        self.terms.last().map_or(self.order, |t| t.bottom)
    }

    pub fn value(&self) -> BigUint {
        eval_terms(&self.terms)
    }

    /// Top indices `(t_n, ..., t_i, 0, ..., 0)` of the terms `C(t_j, j)`,
    /// padded with zeros to length `n`.
    ///
    /// Tops are strictly decreasing and at least `1`, so the padding cannot
    /// collide with a real entry. Padding the excesses `t_j - j` instead would
    /// make `1 = C(2,2)` and `2 = C(2,2) + C(1,1)` compare equal.
    pub fn padded_tops(&self) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = self.terms.iter().map(|t| t.top.clone()).collect();
        out.resize(self.order as usize, BigUint::zero());
        out
    }

    /// Orders two representations of the same order by lexicographic
    /// comparison of their padded top vectors, which matches the order of the
    /// represented integers.
    pub fn compare(&self, other: &BinomialRep) -> Result<Ordering, BinomialError> {
        if self.order != other.order {
            return Err(BinomialError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(self.padded_tops().cmp(&other.padded_tops()))
    }

    pub fn validate(&self) -> Result<(), BinomialError> {
        if self.order == 0 {
            return Err(BinomialError::ZeroOrder);
        }
        if self.terms.is_empty() {
            return Err(BinomialError::Invalid("no terms".into()));
        }
        let mut previous: Option<BigUint> = None;
        for (offset, term) in self.terms.iter().enumerate() {
            let expected_bottom = self.order as usize - offset;
            if expected_bottom == 0 || term.bottom as usize != expected_bottom {
                return Err(BinomialError::Invalid(format!(
                    "term {term} should have bottom index {expected_bottom}"
                )));
            }
            let excess = term.excess().ok_or_else(|| {
                BinomialError::Invalid(format!("term {term} has top below bottom"))
            })?;
            if let Some(prev) = &previous {
                if excess > *prev {
                    return Err(BinomialError::Invalid(format!(
                        "h({}) = {excess} exceeds the preceding h = {prev}",
                        term.bottom
                    )));
                }
            }
            previous = Some(excess);
        }
        Ok(())
    }
}

impl fmt::Display for BinomialRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, term) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

/// Largest `t >= bottom` with `C(t, bottom) <= value`; requires `value >= 1`.
fn largest_top(value: &BigUint, bottom: u32) -> BigUint {
    let mut lo = BigUint::from(bottom);
    let mut step = BigUint::one();
    let mut hi = &lo + &step;
    while binom(&hi, bottom) <= *value {
        lo = hi;
        step <<= 1;
        hi = &lo + &step;
    }
    // C(lo) <= value < C(hi)
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if binom(&mid, bottom) <= *value {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Greedy nth binomial representation of `h`.
pub fn macaulay_rep(h: &BigUint, n: u32) -> Result<BinomialRep, BinomialError> {
    BinomialRep::of(h, n)
}

pub fn rep_eval(rep: &BinomialRep) -> BigUint {
    rep.value()
}

pub fn rep_compare(a: &BinomialRep, b: &BinomialRep) -> Result<Ordering, BinomialError> {
    a.compare(b)
}

/// Handles the order-0 and value-0 conventions shared by the three operators.
fn convention(
    op: &'static str,
    h: &BigUint,
    n: u32,
    one_at_zero: u32,
) -> Result<Option<BigUint>, BinomialError> {
    if h.is_zero() {
        return Ok(Some(BigUint::zero()));
    }
    if n == 0 {
        if h.is_one() {
            return Ok(Some(BigUint::from(one_at_zero)));
        }
        return Err(BinomialError::NoConvention { op, h: h.clone() });
    }
    Ok(None)
}

/// `h^<n>`: every top index of the nth representation raised by one.
pub fn up(h: &BigUint, n: u32) -> Result<BigUint, BinomialError> {
    if let Some(v) = convention("up", h, n, 1)? {
        return Ok(v);
    }
    let rep = BinomialRep::of(h, n)?;
    Ok(eval_terms(&shift_plus_one(rep.terms())))
}

/// `h_<n>`: every bottom index lowered by one.
pub fn down(h: &BigUint, n: u32) -> Result<BigUint, BinomialError> {
    if let Some(v) = convention("down", h, n, 0)? {
        return Ok(v);
    }
    let rep = BinomialRep::of(h, n)?;
    Ok(rep
        .terms()
        .iter()
        .map(|t| binom(&t.top, t.bottom - 1))
        .sum())
}

/// `h_<<n>>`: every top and bottom index lowered by one.
pub fn ddown(h: &BigUint, n: u32) -> Result<BigUint, BinomialError> {
    if let Some(v) = convention("ddown", h, n, 1)? {
        return Ok(v);
    }
    let rep = BinomialRep::of(h, n)?;
    Ok(rep
        .terms()
        .iter()
        .map(|t| binom(&(&t.top - 1u32), t.bottom - 1))
        .sum())
}

/// `h` split as `C(alpha+n, n) + rem`, with `alpha` the largest value keeping
/// `rem` strictly positive (or `0` when no such value exists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remainder {
    pub alpha: BigUint,
    pub rem: BigUint,
}

pub fn remainder(h: &BigUint, n: u32) -> Result<Remainder, BinomialError> {
    if h.is_zero() {
        return Err(BinomialError::ZeroValue);
    }
    if n == 0 {
        return Err(BinomialError::ZeroOrder);
    }
    let leading = |alpha: &BigUint| binom(&(alpha + n), n);
    let alpha = if leading(&BigUint::zero()) >= *h {
        // only h = 1 lands here: C(n, n) = 1
        BigUint::zero()
    } else {
        // largest alpha with C(alpha+n, n) < h
        let mut lo = BigUint::zero();
        let mut step = BigUint::one();
        let mut hi = &lo + &step;
        while leading(&hi) < *h {
            lo = hi;
            step <<= 1;
            hi = &lo + &step;
        }
        while &hi - &lo > BigUint::one() {
            let mid: BigUint = (&lo + &hi) >> 1;
            if leading(&mid) < *h {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let rem = h - leading(&alpha);
    Ok(Remainder { alpha, rem })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Pascal's triangle, built by addition only.
    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(rows + 1);
        for a in 0..=rows {
            let mut row = vec![BigUint::zero(); a + 1];
            row[0] = BigUint::one();
            row[a] = BigUint::one();
            for b in 1..a {
                row[b] = &table[a - 1][b - 1] + &table[a - 1][b];
            }
            table.push(row);
        }
        table
    }

    /// All expansions with strictly decreasing tops `t_n > ... > t_i >= i`
    /// summing to `h`, found by exhaustive search.
    fn all_expansions(h: u64, n: u32) -> Vec<Vec<(u64, u32)>> {
        fn go(
            left: u64,
            bottom: u32,
            cap: u64,
            acc: &mut Vec<(u64, u32)>,
            out: &mut Vec<Vec<(u64, u32)>>,
        ) {
            if left == 0 {
                if !acc.is_empty() {
                    out.push(acc.clone());
                }
                return;
            }
            if bottom == 0 {
                return;
            }
            for top in bottom as u64..cap {
                let v = binom_u64(top, bottom).to_u64().unwrap();
                if v > left {
                    break;
                }
                acc.push((top, bottom));
                go(left - v, bottom - 1, top, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(h, n, h + n as u64 + 1, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn binom_matches_pascal_oracle() {
        let table = pascal(40);
        for a in 0..=40u64 {
            for b in 0..=45u32 {
                let expected = table[a as usize]
                    .get(b as usize)
                    .cloned()
                    .unwrap_or_else(BigUint::zero);
                assert_eq!(binom_u64(a, b), expected, "C({a},{b})");
            }
        }
        // frozen from the oracle
        assert_eq!(table[30][15], big(155117520));
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_u64(4, 2), big(6));
        assert_eq!(binom_u64(7, 0), big(1));
        assert_eq!(binom_u64(30, 15), big(155117520));
        assert_eq!(binom_u64(3, 5), big(0));
        assert_eq!(binom_u64(0, 0), big(1));
    }

    #[test]
    fn binom_handles_huge_tops() {
        let top = BigUint::from(u64::MAX) * 4u32;
        assert_eq!(binom(&top, 1), top);
        assert_eq!(binom(&top, 0), BigUint::one());
        let expected = &top * (&top - 1u32) / 2u32;
        assert_eq!(binom(&top, 2), expected);
    }

    #[test]
    fn rep_examples() {
        let one = macaulay_rep(&big(1), 4).unwrap();
        assert_eq!(one.terms(), &[BinomialTerm::new(4u32, 4)]);

        let five = macaulay_rep(&big(5), 2).unwrap();
        assert_eq!(
            five.terms(),
            &[BinomialTerm::new(3u32, 2), BinomialTerm::new(2u32, 1)]
        );
        assert_eq!(five.value(), big(5));
        assert_eq!(five.to_string(), "C(3,2)+C(2,1)");

        let ten = macaulay_rep(&big(10), 3).unwrap();
        assert_eq!(ten.terms(), &[BinomialTerm::new(5u32, 3)]);
        assert_eq!(rep_eval(&ten), big(10));
        assert_eq!(ten.last_index(), 3);
    }

    #[test]
    fn rep_rejects_zero() {
        assert_eq!(macaulay_rep(&big(0), 3), Err(BinomialError::ZeroValue));
        assert_eq!(macaulay_rep(&big(3), 0), Err(BinomialError::ZeroOrder));
    }

    #[test]
    fn greedy_rep_is_the_unique_expansion() {
        for n in 1..=4u32 {
            for h in 1..=60u64 {
                let found = all_expansions(h, n);
                assert_eq!(found.len(), 1, "h={h} n={n}: {found:?}");
                let rep = macaulay_rep(&big(h), n).unwrap();
                let greedy: Vec<(u64, u32)> = rep
                    .terms()
                    .iter()
                    .map(|t| (t.top.to_u64().unwrap(), t.bottom))
                    .collect();
                assert_eq!(greedy, found[0]);
            }
        }
    }

    #[test]
    fn new_rejects_malformed_terms() {
        // bottoms not consecutive
        assert!(BinomialRep::new(
            3,
            vec![BinomialTerm::new(5u32, 3), BinomialTerm::new(3u32, 1)]
        )
        .is_err());
        // h(2) = 3 > h(3) = 1
        assert!(BinomialRep::new(
            3,
            vec![BinomialTerm::new(4u32, 3), BinomialTerm::new(5u32, 2)]
        )
        .is_err());
        // top below bottom
        assert!(BinomialRep::new(2, vec![BinomialTerm::new(1u32, 2)]).is_err());
        assert!(BinomialRep::new(
            2,
            vec![BinomialTerm::new(3u32, 2), BinomialTerm::new(2u32, 1)]
        )
        .is_ok());
    }

    #[test]
    fn compare_examples() {
        let r = |h: u64, n: u32| macaulay_rep(&big(h), n).unwrap();
        assert_eq!(rep_compare(&r(5, 2), &r(5, 2)), Ok(Ordering::Equal));
        assert_eq!(rep_compare(&r(5, 2), &r(6, 2)), Ok(Ordering::Less));
        assert_eq!(rep_compare(&r(3, 2), &r(4, 2)), Ok(Ordering::Less));
        assert_eq!(rep_compare(&r(9, 2), &r(4, 2)), Ok(Ordering::Greater));
        assert_eq!(r(6, 2).padded_tops(), vec![big(4), big(0)]);
        assert_eq!(r(5, 2).padded_tops(), vec![big(3), big(2)]);
        assert_eq!(rep_compare(&r(1, 2), &r(2, 2)), Ok(Ordering::Less));
        assert!(matches!(
            rep_compare(&r(5, 2), &r(5, 3)),
            Err(BinomialError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(up(&big(0), 3), Ok(big(0)));
        assert_eq!(up(&big(5), 2), Ok(big(9)));
        assert_eq!(up(&big(1), 0), Ok(big(1)));

        assert_eq!(down(&big(5), 2), Ok(big(4)));
        assert_eq!(down(&big(0), 4), Ok(big(0)));
        assert_eq!(down(&big(1), 0), Ok(big(0)));

        assert_eq!(ddown(&big(5), 2), Ok(big(3)));
        assert_eq!(ddown(&big(0), 2), Ok(big(0)));
        assert_eq!(ddown(&big(1), 0), Ok(big(1)));

        assert_eq!(up(&big(0), 0), Ok(big(0)));
        assert_eq!(down(&big(0), 0), Ok(big(0)));
        assert_eq!(ddown(&big(0), 0), Ok(big(0)));
    }

    #[test]
    fn operators_reject_large_values_at_order_zero() {
        for op in [up, down, ddown] {
            assert!(matches!(
                op(&big(2), 0),
                Err(BinomialError::NoConvention { .. })
            ));
        }
    }

    #[test]
    fn up_at_order_one_is_successor() {
        for h in 1..200u64 {
            assert_eq!(up(&big(h), 1).unwrap(), big(h + 1));
        }
    }

    #[test]
    fn ddown_bridges_to_down() {
        assert_eq!(up(&ddown(&big(5), 2).unwrap(), 1), Ok(big(4)));
        for n in 2..=6u32 {
            for h in 1..=300u64 {
                let dd = ddown(&big(h), n).unwrap();
                assert_eq!(up(&dd, n - 1).unwrap(), down(&big(h), n).unwrap());
            }
        }
    }

    #[test]
    fn remainder_examples() {
        let r = |h: u64, n: u32| remainder(&big(h), n).unwrap();
        assert_eq!(
            r(1, 3),
            Remainder {
                alpha: big(0),
                rem: big(0)
            }
        );
        // 6 = C(4,2): the largest alpha with C(alpha+2,2) < 6 is 1
        assert_eq!(
            r(6, 2),
            Remainder {
                alpha: big(1),
                rem: big(3)
            }
        );
        assert_eq!(
            r(5, 2),
            Remainder {
                alpha: big(1),
                rem: big(2)
            }
        );
        assert_eq!(remainder(&big(0), 2), Err(BinomialError::ZeroValue));
    }

    #[test]
    fn remainder_matches_case_clauses() {
        for n in 1..=6u32 {
            for h in 1..=500u64 {
                let hb = big(h);
                let Remainder { alpha, rem } = remainder(&hb, n).unwrap();
                let rep = macaulay_rep(&hb, n).unwrap();
                let expected = if h == 1 {
                    BigUint::zero()
                } else if rep.last_index() == n {
                    let lead = &rep.terms()[0];
                    binom(&(&lead.top - 1u32), n - 1)
                } else {
                    eval_terms(&rep.terms()[1..])
                };
                assert_eq!(rem, expected, "h={h} n={n}");
                assert!(rem <= binom(&(&alpha + n), n - 1));
                if h > 1 {
                    assert!(rem >= BigUint::one());
                }
                // h^<n> = C(alpha+n, n)^<n> + rem^<n-1>
                let lead = binom(&(&alpha + n), n);
                let split = up(&lead, n).unwrap() + up(&rem, n - 1).unwrap();
                if h > 1 {
                    assert_eq!(up(&hb, n).unwrap(), split, "h={h} n={n}");
                }
            }
        }
    }

    #[test]
    fn shift_examples() {
        let terms = vec![BinomialTerm::new(3u32, 2), BinomialTerm::new(2u32, 1)];
        let shifted = shift_plus_one(&terms);
        assert_eq!(
            shifted,
            vec![BinomialTerm::new(4u32, 2), BinomialTerm::new(3u32, 1)]
        );
        assert_eq!(eval_terms(&shifted), big(9));
        assert!(shift_plus_one(&[]).is_empty());
        let single = shift_plus_one(&[BinomialTerm::new(2u32, 2)]);
        assert_eq!(eval_terms(&single), big(3));
    }

    #[test]
    fn shift_accepts_non_canonical_sums() {
        // bottoms repeat and tops rise: not a representation, still shiftable
        let terms = vec![
            BinomialTerm::new(2u32, 1),
            BinomialTerm::new(4u32, 1),
            BinomialTerm::new(6u32, 3),
        ];
        let shifted = shift_plus_one(&terms);
        assert_eq!(eval_terms(&shifted), big(3 + 5 + 35));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip_and_growth_identity(h in 1u64..5_000_000, n in 1u32..12) {
            let hb = BigUint::from(h);
            let rep = macaulay_rep(&hb, n).unwrap();
            prop_assert_eq!(rep.value(), hb.clone());
            let up_v = up(&hb, n).unwrap();
            prop_assert_eq!(up_v.clone(), &hb + down(&hb, n).unwrap());
            prop_assert!(up_v < up(&hb, n + 1).unwrap());
        }

        #[test]
        fn compare_agrees_with_integers(a in 1u64..100_000, b in 1u64..100_000, n in 1u32..9) {
            let ra = macaulay_rep(&BigUint::from(a), n).unwrap();
            let rb = macaulay_rep(&BigUint::from(b), n).unwrap();
            prop_assert_eq!(ra.compare(&rb).unwrap(), a.cmp(&b));
        }
    }
}
