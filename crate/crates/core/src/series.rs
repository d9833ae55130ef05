//! Integer power series truncated at a degree cap.
//!
//! Coefficients are `i128` and every operation is overflow-checked: an
//! overflow panics instead of wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lgb::InstanceSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<i128>,
}

#[inline]
fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("series coefficient overflow")
}

#[inline]
fn sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b).expect("series coefficient overflow")
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![0; cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = 1;
        s
    }

    /// Takes the first `cap+1` coefficients, padding with zeros.
    pub fn from_coeffs(coeffs: &[i128], cap: usize) -> Self {
        let mut s = Self::zero(cap);
        for (dst, src) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        s
    }

    /// `1 / (1 - z)^n`: coefficient `i` is `C(n-1+i, i)`.
    pub fn inv_one_minus_z_pow_n(n: usize, cap: usize) -> Self {
        let mut s = Self::one(cap);
        for _ in 0..n {
            s.prefix_sum_stride(1);
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficient of `z^i`. Panics when `i` exceeds the cap.
    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs[i]
    }

    /// Multiplies in place by `1 - z^d`: `c'_i = c_i - c_{i-d}`.
    pub fn mul_one_minus_z_pow_in_place(&mut self, d: usize) {
        assert!(d >= 1);
        for i in (d..self.coeffs.len()).rev() {
            self.coeffs[i] = sub(self.coeffs[i], self.coeffs[i - d]);
        }
    }

    pub fn mul_one_minus_z_pow(&self, d: usize) -> Self {
        let mut out = self.clone();
        out.mul_one_minus_z_pow_in_place(d);
        out
    }

    /// Multiplies in place by `1 / (1 - z^d)`: prefix sums with stride `d`.
    pub fn prefix_sum_stride(&mut self, d: usize) {
        assert!(d >= 1);
        for i in d..self.coeffs.len() {
            self.coeffs[i] = add(self.coeffs[i], self.coeffs[i - d]);
        }
    }

    pub fn add_assign(&mut self, other: &TruncatedSeries) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = add(*a, *b);
        }
    }

    /// Adds `z * other` (other's coefficient `i` lands at `i + 1`).
    pub fn add_shifted(&mut self, other: &TruncatedSeries) {
        for (a, b) in self.coeffs.iter_mut().skip(1).zip(&other.coeffs) {
            *a = add(*a, *b);
        }
    }

    /// Cuts strictly before the first coefficient `<= 0`.
    pub fn bracket(&self) -> BracketSeries {
        match self.coeffs.iter().position(|&c| c <= 0) {
            Some(k) => BracketSeries {
                coeffs: self.coeffs[..k].to_vec(),
                finite: true,
            },
            None => BracketSeries {
                coeffs: self.coeffs.clone(),
                finite: false,
            },
        }
    }
}

/// A series cut before its first nonpositive coefficient.
///
/// `finite == false` means no nonpositive coefficient was observed up to the
/// cap it was computed with; nothing is known past that cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketSeries {
    pub coeffs: Vec<i128>,
    pub finite: bool,
}

impl BracketSeries {
    /// Hilbert function value at `d`: the stored coefficient, or 0 past the
    /// end of a finite series. Panics past the cap of an infinite prefix.
    pub fn value(&self, d: usize) -> i128 {
        match self.coeffs.get(d) {
            Some(&c) => c,
            None if self.finite => 0,
            None => panic!("degree {d} beyond the computed prefix of an infinite series"),
        }
    }

    /// Degree of the polynomial for finite series (`None` when empty or infinite).
    pub fn degree(&self) -> Option<usize> {
        if self.finite {
            self.coeffs.len().checked_sub(1)
        } else {
            None
        }
    }

    /// Expands back to a truncated series; finite series are zero-padded.
    pub fn to_truncated(&self, cap: usize) -> TruncatedSeries {
        if !self.finite {
            assert!(
                cap < self.coeffs.len(),
                "cap {cap} beyond the computed prefix of an infinite series"
            );
        }
        TruncatedSeries::from_coeffs(&self.coeffs, cap)
    }
}

impl fmt::Display for BracketSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (i, *c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("z")?,
                (1, c) => write!(f, "{c}z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, c) => write!(f, "{c}z^{i}")?,
            }
        }
        if !self.finite {
            f.write_str(" + ...")?;
        }
        Ok(())
    }
}

/// `[prod_i (1 - z^{d_i}) / (1 - z)^n]` expanded through `cap`.
pub fn generic_hilbert_series(spec: &InstanceSpec, cap: usize) -> BracketSeries {
    generic_numerator_series(spec, cap).bracket()
}

/// The unbracketed series `prod_i (1 - z^{d_i}) / (1 - z)^n` through `cap`.
pub fn generic_numerator_series(spec: &InstanceSpec, cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::inv_one_minus_z_pow_n(spec.n(), cap);
    for &d in spec.degrees() {
        s.mul_one_minus_z_pow_in_place(d as usize);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(n: usize, degrees: &[u32]) -> InstanceSpec {
        InstanceSpec::new(n, degrees.to_vec()).unwrap()
    }

    /// Schoolbook product with a polynomial, independent of the in-place update.
    fn convolve(s: &[i128], poly: &[i128]) -> Vec<i128> {
        (0..s.len())
            .map(|i| {
                (0..=i)
                    .filter(|&j| j < poly.len())
                    .map(|j| poly[j] * s[i - j])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn one_minus_z_examples() {
        let ones = TruncatedSeries::inv_one_minus_z_pow_n(1, 5);
        assert_eq!(ones.mul_one_minus_z_pow(1).coeffs(), &[1, 0, 0, 0, 0, 0]);

        let s = TruncatedSeries::from_coeffs(&[1, 3, 6, 10], 3);
        let expected = convolve(&[1, 3, 6, 10], &[1, 0, -1]);
        assert_eq!(expected, vec![1, 3, 5, 7]);
        assert_eq!(s.mul_one_minus_z_pow(2).coeffs(), expected.as_slice());
    }

    #[test]
    fn binomial_series() {
        assert_eq!(
            TruncatedSeries::inv_one_minus_z_pow_n(0, 3).coeffs(),
            &[1, 0, 0, 0]
        );
        assert_eq!(
            TruncatedSeries::inv_one_minus_z_pow_n(3, 3).coeffs(),
            &[1, 3, 6, 10]
        );
        assert_eq!(
            TruncatedSeries::inv_one_minus_z_pow_n(18, 10).coeff(10),
            8_436_285
        );
    }

    #[test]
    fn bracket_cases() {
        let b = TruncatedSeries::from_coeffs(&[1, 3, 4, 3, 0, -6, 2], 6).bracket();
        assert_eq!(b.coeffs, vec![1, 3, 4, 3]);
        assert!(b.finite);

        let pos = TruncatedSeries::from_coeffs(&[1, 2, 3], 2).bracket();
        assert_eq!(pos.coeffs, vec![1, 2, 3]);
        assert!(!pos.finite);

        let empty = TruncatedSeries::from_coeffs(&[0, 5, 5], 2).bracket();
        assert!(empty.coeffs.is_empty());
        assert!(empty.finite);
        assert_eq!(empty.to_string(), "0");
    }

    #[test]
    fn generic_series_examples() {
        let toy = generic_hilbert_series(&spec(3, &[2, 2, 3, 4]), 8);
        assert_eq!(toy.coeffs, vec![1, 3, 4, 3]);
        assert!(toy.finite);
        assert_eq!(toy.to_string(), "1 + 3z + 4z^2 + 3z^3");

        let uni = generic_hilbert_series(&spec(1, &[5]), 8);
        assert_eq!(uni.coeffs, vec![1, 1, 1, 1, 1]);
        assert!(uni.finite);

        let case2 = generic_hilbert_series(&spec(14, &[2; 10]), 11);
        assert!(!case2.finite);
        assert_eq!(case2.coeffs.len(), 12);
        assert!(case2.to_string().ends_with("+ ..."));
    }

    #[test]
    fn applying_factors_successively_matches_toy() {
        let mut s = TruncatedSeries::inv_one_minus_z_pow_n(3, 10);
        for d in [2, 2, 3, 4] {
            s = s.mul_one_minus_z_pow(d);
        }
        assert_eq!(s.bracket().to_string(), "1 + 3z + 4z^2 + 3z^3");
    }

    #[test]
    fn artinian_specs_terminate() {
        // n <= m: the bracketed series is a polynomial
        for n in 1..=8usize {
            for m in n..=8usize {
                for d in 1..=4u32 {
                    let sp = spec(n, &vec![d; m]);
                    let cap = sp.macaulay_bound() as usize + 1;
                    assert!(generic_hilbert_series(&sp, cap).finite, "n={n} m={m} d={d}");
                }
                // mixed degrees
                let degrees: Vec<u32> = (0..m).map(|i| 1 + (i as u32 % 4)).collect();
                let sp = spec(n, &degrees);
                let cap = sp.macaulay_bound() as usize + 1;
                assert!(generic_hilbert_series(&sp, cap).finite);
            }
        }
    }

    #[test]
    fn binomial_coefficients_count_monomials() {
        for n in 1..=6 {
            let s = TruncatedSeries::inv_one_minus_z_pow_n(n, 10);
            for i in 0..=10u32 {
                assert_eq!(
                    s.coeff(i as usize),
                    crate::monomial::enumerate_degree(n, i).len() as i128
                );
            }
        }
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_aborts() {
        let mut s = TruncatedSeries::from_coeffs(&[i128::MAX, i128::MAX], 1);
        s.prefix_sum_stride(1);
    }

    #[test]
    fn json_shape() {
        let b = BracketSeries {
            coeffs: vec![1, 3, 4, 3],
            finite: true,
        };
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"coeffs":[1,3,4,3],"finite":true}"#
        );
    }

    proptest! {
        #[test]
        fn stride_inverse_is_identity(
            coeffs in proptest::collection::vec(-1000i128..1000, 1..20),
            d in 1usize..6,
        ) {
            let cap = coeffs.len() - 1;
            let s = TruncatedSeries::from_coeffs(&coeffs, cap);
            let mut t = s.mul_one_minus_z_pow(d);
            t.prefix_sum_stride(d);
            prop_assert_eq!(t, s);
        }

        #[test]
        fn mul_matches_convolution(
            coeffs in proptest::collection::vec(-1000i128..1000, 1..20),
            d in 1usize..6,
        ) {
            let cap = coeffs.len() - 1;
            let mut poly = vec![0i128; d + 1];
            poly[0] = 1;
            poly[d] = -1;
            let s = TruncatedSeries::from_coeffs(&coeffs, cap);
            let got = s.mul_one_minus_z_pow(d);
            prop_assert_eq!(got.coeffs().to_vec(), convolve(&coeffs, &poly));
        }
    }
}
