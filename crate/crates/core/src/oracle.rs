//! Ground truth at desk scale: random dense homogeneous sequences over a
//! prime field, a plain Buchberger under grevlex, and comparison of the
//! resulting leading monomials against [`lgb_improved`].
//!
//! Coefficients come from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a `(spec, prime, seed)` triple names the same sequence
//! on every platform.

use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lgb::{degree_bound, lgb_improved, InstanceSpec, Tier};
use crate::monomial::{count_degree, enumerate_degree, Monomial};
use crate::monomial_ideal::MonomialIdeal;

pub const DEFAULT_PRIME: u32 = 32003;
pub const DEFAULT_BUDGET: u128 = 50_000;

/// Residue modulo the prime of the [`PrimeField`] it was produced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn element(self, v: u64) -> FieldElement {
        FieldElement((v % self.p as u64) as u32)
    }

    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u64 + b.0 as u64;
        FieldElement((s % self.p as u64) as u32)
    }

    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u64 + self.p as u64 - b.0 as u64;
        FieldElement((s % self.p as u64) as u32)
    }

    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn neg(self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement(0), a)
    }

    pub fn pow(self, mut a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat. Panics on zero.
    pub fn inv(self, a: FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p as u64 {
        if (p as u64).is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Homogeneous polynomial: nonzero terms sorted descending under grevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    /// Builds from terms; zero coefficients are dropped and like terms merged.
    /// Returns [`Error::NotHomogeneous`] for mixed degrees.
    pub fn new(field: PrimeField, terms: Vec<(Monomial, FieldElement)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(FieldElement(0));
            *slot = field.add(*slot, c);
        }
        let poly = Self::from_map(acc);
        if let Some(d) = poly.degree() {
            if poly.terms.iter().any(|(m, _)| m.degree() != d) {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(poly)
    }

    fn from_map(map: BTreeMap<Monomial, FieldElement>) -> Self {
        Polynomial {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn monic(mut self, field: PrimeField) -> Self {
        if let Some(&(_, lc)) = self.terms.first() {
            let inv = field.inv(lc);
            for (_, c) in &mut self.terms {
                *c = field.mul(*c, inv);
            }
        }
        self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{}", c.0)?;
            } else {
                write!(f, "{}*{}", c.0, m)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSequenceConfig {
    pub spec: InstanceSpec,
    pub prime: u32,
    pub seed: u64,
}

/// Dense polynomials: every monomial of degree `d_i` with a coefficient
/// drawn uniformly from the nonzero residues.
pub fn random_homogeneous_sequence(cfg: &RandomSequenceConfig) -> Result<Vec<Polynomial>> {
    let field = PrimeField::new(cfg.prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.spec.n();
    Ok(cfg
        .spec
        .degrees()
        .iter()
        .map(|&d| {
            let terms = enumerate_degree(n, d)
                .into_iter()
                .map(|m| (m, FieldElement(rng.random_range(1..field.p))))
                .collect();
            Polynomial { terms }
        })
        .collect())
}

/// Full reduction of `f` by monic `basis`: no term of the result is
/// divisible by a leading monomial of the basis.
pub fn reduce(field: PrimeField, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let work: BTreeMap<Monomial, FieldElement> = f.terms.iter().cloned().collect();
    reduce_map(field, work, basis)
}

fn reduce_map(
    field: PrimeField,
    mut work: BTreeMap<Monomial, FieldElement>,
    basis: &[Polynomial],
) -> Polynomial {
    let mut rem = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let q = m.checked_div(&g.terms[0].0).expect("divisor");
                for (gm, gc) in &g.terms[1..] {
                    let delta = field.mul(c, *gc);
                    match work.entry(gm.mul_monomial(&q)) {
                        Entry::Occupied(mut e) => {
                            let v = field.sub(*e.get(), delta);
                            if v.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = v;
                            }
                        }
                        Entry::Vacant(e) => {
                            e.insert(field.neg(delta));
                        }
                    }
                }
            }
            None => rem.push((m, c)),
        }
    }
    Polynomial { terms: rem }
}

/// S-polynomial of two monic polynomials.
pub fn s_polynomial(field: PrimeField, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (&f.terms[0].0, &g.terms[0].0);
    let lcm = lf.lcm(lg);
    let qf = lcm.checked_div(lf).expect("lcm");
    let qg = lcm.checked_div(lg).expect("lcm");
    let mut work: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
    for (m, c) in &f.terms[1..] {
        let slot = work.entry(m.mul_monomial(&qf)).or_insert(FieldElement(0));
        *slot = field.add(*slot, *c);
    }
    for (m, c) in &g.terms[1..] {
        let slot = work.entry(m.mul_monomial(&qg)).or_insert(FieldElement(0));
        *slot = field.sub(*slot, *c);
    }
    Polynomial::from_map(work)
}

/// Gröbner basis of `<input>` under grevlex.
///
/// Homogeneous Buchberger: critical pairs are taken lowest lcm degree first
/// and input polynomials enter the basis at their own degree, so every new
/// element has a leading monomial outside the ideal of the previous ones.
/// Pairs with coprime leading monomials are skipped.
pub fn buchberger(field: PrimeField, input: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if input.is_empty() {
        return Err(Error::NotHomogeneous);
    }
    let mut pending: Vec<&Polynomial> = input.iter().filter(|f| !f.is_zero()).collect();
    pending.sort_by_key(|f| Reverse(f.degree()));

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();

    loop {
        let next_pair = pairs.peek().map(|Reverse((d, _, _))| *d);
        let next_input = pending.last().and_then(|f| f.degree());
        let degree = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
        };

        let mut fresh: Vec<Polynomial> = Vec::new();
        while let Some(&Reverse((d, i, j))) = pairs.peek() {
            if d != degree {
                break;
            }
            pairs.pop();
            let (f, g) = (&basis[i], &basis[j]);
            if f.terms[0].0.is_coprime(&g.terms[0].0) {
                continue;
            }
            let s = s_polynomial(field, f, g);
            fresh.push(s);
        }
        while pending.last().and_then(|f| f.degree()) == Some(degree) {
            fresh.push(pending.pop().expect("nonempty").clone());
        }

        // reduce each candidate against the basis, including those added at this degree
        for f in fresh {
            let h = reduce(field, &f, &basis);
            if h.is_zero() {
                continue;
            }
            let h = h.monic(field);
            let k = basis.len();
            for (i, g) in basis.iter().enumerate() {
                let lcm_degree = g.terms[0].0.lcm(&h.terms[0].0).degree();
                pairs.push(Reverse((lcm_degree, i, k)));
            }
            basis.push(h);
        }
    }
    Ok(basis)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(field: PrimeField, basis: &[Polynomial]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !reduce(field, &s_polynomial(field, f, g), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Leading monomials of a minimal Gröbner basis extracted from `basis`.
pub fn minimal_lm_set(n: usize, basis: &[Polynomial]) -> MonomialIdeal {
    MonomialIdeal::minimalize(
        n,
        basis.iter().filter_map(|g| g.leading_monomial().cloned()),
    )
}

/// Refuses specs whose degree-bound monomial count exceeds `budget`.
pub fn check_budget(spec: &InstanceSpec, budget: u128) -> Result<()> {
    let degree = degree_bound(spec);
    let count = count_degree(spec.n(), degree);
    if count > budget {
        return Err(Error::BudgetExceeded {
            degree,
            count,
            budget,
        });
    }
    Ok(())
}

/// Leading monomials of a minimal Gröbner basis of a random sequence.
pub fn oracle_leading_monomials(cfg: &RandomSequenceConfig) -> Result<MonomialIdeal> {
    let field = PrimeField::new(cfg.prime)?;
    let seq = random_homogeneous_sequence(cfg)?;
    let gb = buchberger(field, &seq)?;
    Ok(minimal_lm_set(cfg.spec.n(), &gb))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    #[serde(rename = "match")]
    pub matched: bool,
    pub lgb_lm: Vec<String>,
    pub oracle_lm: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: InstanceSpec,
    pub trials: Vec<TrialReport>,
    /// Fresh seeds drawn after a mismatch.
    pub retries: Vec<TrialReport>,
    pub passed: bool,
}

fn lm_strings(ideal: &MonomialIdeal) -> Vec<String> {
    ideal.generators().iter().map(|g| g.to_string()).collect()
}

/// Number of fresh seeds tried after any mismatch.
pub const RETRY_SEEDS: u64 = 5;

/// Compares LGB against the oracle for each seed.
///
/// A mismatch can come from a non-generic draw, so it triggers
/// [`RETRY_SEEDS`] fresh seeds; the spec passes when every initial seed
/// matches or every retry does.
pub fn verify(
    spec: &InstanceSpec,
    seeds: &[u64],
    prime: u32,
    budget: u128,
) -> Result<VerifyReport> {
    PrimeField::new(prime)?;
    check_budget(spec, budget)?;
    let expected = lgb_improved(spec, Tier::T4)?.leading_monomials;
    let trial = |seed: u64| -> Result<TrialReport> {
        let cfg = RandomSequenceConfig {
            spec: spec.clone(),
            prime,
            seed,
        };
        let got = oracle_leading_monomials(&cfg)?;
        Ok(TrialReport {
            seed,
            matched: got == expected,
            lgb_lm: lm_strings(&expected),
            oracle_lm: lm_strings(&got),
        })
    };
    let trials = seeds
        .iter()
        .map(|&s| trial(s))
        .collect::<Result<Vec<_>>>()?;
    let mut retries = Vec::new();
    let mut passed = trials.iter().all(|t| t.matched);
    if !passed {
        let start = seeds.iter().copied().max().unwrap_or(0).wrapping_add(1);
        retries = (0..RETRY_SEEDS)
            .map(|k| trial(start.wrapping_add(k)))
            .collect::<Result<Vec<_>>>()?;
        passed = retries.iter().all(|t| t.matched);
    }
    Ok(VerifyReport {
        spec: spec.clone(),
        trials,
        retries,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = DEFAULT_PRIME;

    fn field() -> PrimeField {
        PrimeField::new(P).unwrap()
    }

    fn spec(n: usize, degrees: &[u32]) -> InstanceSpec {
        InstanceSpec::new(n, degrees.to_vec()).unwrap()
    }

    fn poly(n: usize, terms: &[(&str, u32)]) -> Polynomial {
        let f = field();
        Polynomial::new(
            f,
            terms
                .iter()
                .map(|(m, c)| (Monomial::parse(m, n).unwrap(), f.element(*c as u64)))
                .collect(),
        )
        .unwrap()
    }

    fn names(ideal: &MonomialIdeal) -> Vec<String> {
        let mut v = lm_strings(ideal);
        v.sort();
        v
    }

    #[test]
    fn field_arithmetic() {
        let f = field();
        let a = f.element(12345);
        assert_eq!(f.mul(a, f.inv(a)).value(), 1);
        assert_eq!(f.add(f.element(32002), f.element(2)).value(), 1);
        assert_eq!(f.sub(f.element(1), f.element(2)).value(), 32002);
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn random_sequences_are_dense_and_deterministic() {
        let cfg = RandomSequenceConfig {
            spec: spec(2, &[2]),
            prime: P,
            seed: 7,
        };
        let seq = random_homogeneous_sequence(&cfg).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0].terms().len(), 3);
        assert!(seq[0].terms().iter().all(|(_, c)| !c.is_zero()));
        assert_eq!(seq, random_homogeneous_sequence(&cfg).unwrap());
        let other = RandomSequenceConfig { seed: 8, ..cfg };
        assert_ne!(seq, random_homogeneous_sequence(&other).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let f = field();
        let terms = vec![
            (Monomial::parse("x1", 2).unwrap(), f.element(1)),
            (Monomial::parse("x2^2", 2).unwrap(), f.element(1)),
        ];
        assert_eq!(Polynomial::new(f, terms), Err(Error::NotHomogeneous));
    }

    #[test]
    fn buchberger_small_cases() {
        let f = field();
        let gb = buchberger(f, &[poly(2, &[("x1^2", 1)])]).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_string(), "1*x1^2");

        let gb = buchberger(
            f,
            &[poly(2, &[("x1", 1), ("x2", 1)]), poly(2, &[("x2", 1)])],
        )
        .unwrap();
        assert_eq!(names(&minimal_lm_set(2, &gb)), ["x1", "x2"]);
        assert!(is_groebner_basis(f, &gb));

        let gb = buchberger(
            f,
            &[
                poly(2, &[("x1^2", 1)]),
                poly(2, &[("x1^2*x2", 1), ("x2^3", 5)]),
            ],
        )
        .unwrap();
        let lm = minimal_lm_set(2, &gb);
        assert!(lm
            .generators()
            .contains(&Monomial::parse("x1^2", 2).unwrap()));
        assert!(is_groebner_basis(f, &gb));
    }

    #[test]
    fn s_polynomial_cancels_leading_terms() {
        let f = field();
        let a = poly(3, &[("x1^2", 1), ("x2*x3", 3)]);
        let b = poly(3, &[("x1*x2", 1), ("x3^2", 2)]);
        let s = s_polynomial(f, &a, &b);
        // x2*(x1^2 + 3x2x3) - x1*(x1x2 + 2x3^2) = 3x2^2x3 - 2x1x3^2
        assert_eq!(s.to_string(), "3*x2^2*x3 + 32001*x1*x3^2");
    }

    #[test]
    fn toy_instance_matches() {
        let s = spec(3, &[2, 2, 3, 4]);
        let toy = [
            "x1*x2", "x1*x3^3", "x1^2", "x2*x3^3", "x2^2*x3", "x2^3", "x3^4",
        ];
        for seed in 0..20 {
            let cfg = RandomSequenceConfig {
                spec: s.clone(),
                prime: P,
                seed,
            };
            let field = field();
            let gb = buchberger(field, &random_homogeneous_sequence(&cfg).unwrap()).unwrap();
            assert!(is_groebner_basis(field, &gb));
            assert_eq!(names(&minimal_lm_set(3, &gb)), toy, "seed {seed}");
        }
    }

    #[test]
    fn verify_reports() {
        let r = verify(&spec(2, &[2, 2]), &[1, 2, 3, 4, 5], P, DEFAULT_BUDGET).unwrap();
        assert!(r.passed);
        assert!(r.retries.is_empty());
        assert_eq!(r.trials.len(), 5);
        let json = serde_json::to_value(&r.trials[0]).unwrap();
        assert_eq!(json["match"], true);
        assert_eq!(json["seed"], 1);

        let err = verify(&spec(12, &[2; 12]), &[1], P, DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn small_field_can_break_genericity() {
        // over F_3 dense quadrics are often degenerate; the report must say so
        // rather than fail to run
        let r = verify(
            &spec(3, &[2, 2, 2]),
            &[0, 1, 2, 3, 4, 5, 6, 7],
            3,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.trials.len(), 8);
        if r.trials.iter().any(|t| !t.matched) {
            assert_eq!(r.retries.len(), RETRY_SEEDS as usize);
        }
    }
}
