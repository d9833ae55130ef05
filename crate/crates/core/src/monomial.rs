//! Exponent-vector monomials under the graded reverse lexicographic order.
//!
//! A [`Monomial`] is a dense exponent vector over a fixed number of variables
//! `x1..xn`, where `x1` is the largest variable. Its `Ord` implementation *is*
//! grevlex: higher total degree is greater, and within a degree the monomial
//! with the smaller exponent at the rightmost differing position is greater.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent storage type. Degrees in this problem stay in the low hundreds.
pub type Exponent = u16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[Exponent]>,
    degree: u32,
}

/// 1-based variable index; `x1` is the largest variable under grevlex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableIndex(usize);

impl VariableIndex {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::VariableOutOfRange { index, n });
        }
        Ok(VariableIndex(index))
    }

    /// 1-based index, as in `x<i>`.
    pub fn get(self) -> usize {
        self.0
    }

    /// 0-based position in the exponent vector.
    pub fn offset(self) -> usize {
        self.0 - 1
    }

    pub(crate) fn from_offset(offset: usize) -> Self {
        VariableIndex(offset + 1)
    }
}

impl fmt::Display for VariableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl Monomial {
    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: Vec<Exponent>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    /// The variable `x_v` as a degree-one monomial.
    pub fn variable(v: VariableIndex, n: usize) -> Self {
        let mut exps = vec![0; n];
        exps[v.offset()] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: 1,
        }
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn exponent(&self, v: VariableIndex) -> Exponent {
        self.exps[v.offset()]
    }

    /// Grevlex comparison. Panics if the variable counts differ.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        assert_eq!(
            self.exps.len(),
            other.exps.len(),
            "comparing monomials over different variable counts"
        );
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                // smaller exponent in the rightmost differing slot wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self * x_v`.
    pub fn mul(&self, v: VariableIndex) -> Monomial {
        self.mul_offset(v.offset())
    }

    #[inline]
    pub(crate) fn mul_offset(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_add(1).expect("exponent overflow");
        Monomial {
            exps,
            degree: self.degree + 1,
        }
    }

    /// `self / x_v`, or `None` when `x_v` does not divide `self`.
    pub fn div_variable(&self, v: VariableIndex) -> Option<Monomial> {
        let i = v.offset();
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial {
            exps,
            degree: self.degree - 1,
        })
    }

    /// Product of two monomials.
    pub fn mul_monomial(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Vec<Exponent> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Vec<Exponent> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps: exps.into_boxed_slice(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<Exponent> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exponents(exps)
    }

    /// True iff the two monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The smallest variable (largest index) with a positive exponent.
    pub fn smallest_variable(&self) -> Result<VariableIndex> {
        self.exps
            .iter()
            .rposition(|&e| e > 0)
            .map(VariableIndex::from_offset)
            .ok_or(Error::NoVariable)
    }

    /// Bitmask of the variables present among the first 64 slots.
    #[inline]
    pub(crate) fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .take(64)
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    /// Parses the text form, e.g. `x1^2*x3` or `1`, over `n` variables.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut exps = vec![0 as Exponent; n];
        if s == "1" {
            return Ok(Monomial::from_exponents(exps));
        }
        if s.is_empty() {
            return Err(bad("empty monomial"));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('x')
                .ok_or_else(|| bad("factor must start with 'x'"))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<Exponent>().map_err(|_| bad("bad exponent"))?),
                None => (rest, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
            if idx == 0 || idx > n {
                return Err(Error::VariableOutOfRange { index: idx, n });
            }
            exps[idx - 1] = exps[idx - 1]
                .checked_add(exp)
                .ok_or_else(|| bad("exponent overflow"))?;
        }
        Ok(Monomial::from_exponents(exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of monomials of degree `d` in `n` variables, `C(n+d-1, d)`.
pub fn count_degree(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    let d = d as u128;
    let k = (n - 1) as u128;
    // C(k+d, k), built incrementally so every intermediate is exact
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (d + i) / i;
    }
    acc
}

/// Streams the degree-`d` monomials in `n` variables in descending grevlex order.
///
/// Successor rule: take the leftmost nonzero slot `p` holding `s`; move one
/// unit to slot `p+1` and the remaining `s-1` back to slot 0.
#[derive(Clone, Debug)]
pub struct DegreeMonomials {
    current: Option<Vec<Exponent>>,
    degree: u32,
}

impl DegreeMonomials {
    pub fn new(n: usize, d: u32) -> Self {
        assert!(n >= 1, "need at least one variable");
        let mut first = vec![0; n];
        first[0] = Exponent::try_from(d).expect("degree exceeds exponent range");
        DegreeMonomials {
            current: Some(first),
            degree: d,
        }
    }
}

impl Iterator for DegreeMonomials {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.current.take()?;
        let n = cur.len();
        let out = Monomial {
            exps: cur.clone().into_boxed_slice(),
            degree: self.degree,
        };
        let mut next = cur;
        match next.iter().position(|&e| e > 0) {
            Some(p) if p + 1 < n => {
                let s = next[p];
                next[p] = 0;
                next[p + 1] += 1;
                next[0] = s - 1;
                self.current = Some(next);
            }
            // x_n^d (or the constant monomial) is the last element
            _ => {}
        }
        Some(out)
    }
}

/// All monomials of degree `d` in `n` variables, descending under grevlex.
pub fn enumerate_degree(n: usize, d: u32) -> Vec<Monomial> {
    DegreeMonomials::new(n, d).collect()
}
