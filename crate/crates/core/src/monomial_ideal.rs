//! Monomial ideals kept in minimal-generator normal form, plus the recursive
//! Hilbert-series computation over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, VariableIndex};
use crate::series::TruncatedSeries;

/// A monomial ideal in `n` variables, stored by its minimal generators.
///
/// Generators are sorted ascending under grevlex, so they are also grouped
/// by degree with the lowest degrees first. The zero ideal has no
/// generators; the unit ideal has the single generator `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "IdealJson", try_from = "IdealJson")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
    masks: Vec<u64>,
}

/// Choice of splitting variable in the recursive Hilbert-series step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Variable occurring in the most nonlinear generators; ties to the lowest index.
    #[default]
    MostFrequent,
    /// Lowest-index variable of the first nonlinear generator.
    FirstNonlinear,
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
            masks: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        Self::from_minimal(n, vec![Monomial::one(n)])
    }

    /// Builds the ideal generated by `gens`, dropping redundant generators.
    pub fn minimalize<I>(n: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        for g in &all {
            assert_eq!(g.nvars(), n, "generator over the wrong variable count");
        }
        all.sort_unstable();
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        let mut masks: Vec<u64> = Vec::with_capacity(all.len());
        for g in all {
            let gm = g.support_mask();
            let redundant = kept
                .iter()
                .zip(&masks)
                .any(|(k, &km)| km & !gm == 0 && k.divides(&g));
            if !redundant {
                kept.push(g);
                masks.push(gm);
            }
        }
        MonomialIdeal {
            n,
            gens: kept,
            masks,
        }
    }

    /// Wraps generators already known to be minimal; sorts them.
    pub(crate) fn from_minimal(n: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_unstable();
        let masks = gens.iter().map(Monomial::support_mask).collect();
        MonomialIdeal { n, gens, masks }
    }

    /// Appends generators of a degree above every current generator.
    ///
    /// The caller guarantees none of them lies in the ideal already.
    pub(crate) fn append_top_degree(&mut self, mut gens: Vec<Monomial>) {
        if let (Some(last), Some(first)) = (self.gens.last(), gens.iter().min()) {
            assert!(
                last.degree() < first.degree(),
                "generators must be appended by degree"
            );
        }
        gens.sort_unstable();
        self.masks.extend(gens.iter().map(Monomial::support_mask));
        self.gens.extend(gens);
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Minimal generators, ascending under grevlex.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Generators of exactly degree `d`.
    pub fn generators_of_degree(&self, d: u32) -> &[Monomial] {
        let lo = self.gens.partition_point(|g| g.degree() < d);
        let hi = self.gens.partition_point(|g| g.degree() <= d);
        &self.gens[lo..hi]
    }

    /// Membership: some generator divides `m`. Scans low degrees first.
    pub fn contains(&self, m: &Monomial) -> bool {
        let mm = m.support_mask();
        self.gens
            .iter()
            .zip(&self.masks)
            .take_while(|(g, _)| g.degree() <= m.degree())
            .any(|(g, &gm)| gm & !mm == 0 && g.divides(m))
    }

    /// `J : x_v`.
    pub fn colon_by_variable(&self, v: VariableIndex) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|g| g.div_variable(v).unwrap_or_else(|| g.clone()));
        Self::minimalize(self.n, gens)
    }

    /// `J + <x_v>`.
    pub fn add_variable(&self, v: VariableIndex) -> Self {
        if self.is_unit() {
            return self.clone();
        }
        let mut gens: Vec<Monomial> = self
            .gens
            .iter()
            .filter(|g| g.exponent(v) == 0)
            .cloned()
            .collect();
        gens.push(Monomial::variable(v, self.n));
        Self::from_minimal(self.n, gens)
    }

    /// Hilbert series of `R/J` through degree `cap`.
    pub fn hps(&self, cap: usize) -> TruncatedSeries {
        self.hps_with_pivot(cap, PivotRule::default())
    }

    pub fn hps_with_pivot(&self, cap: usize, rule: PivotRule) -> TruncatedSeries {
        hps_rec(self, cap, rule)
    }

    /// `dim_k (R/J)_d`: the number of degree-`d` monomials outside `J`.
    pub fn hilbert_function(&self, d: u32) -> i128 {
        self.hps(d as usize).coeff(d as usize)
    }

    /// Drops generators above degree `cap`; they cannot affect coefficients through `cap`.
    fn truncated(&self, cap: usize) -> Option<Self> {
        let keep = self.gens.partition_point(|g| g.degree() as usize <= cap);
        if keep == self.gens.len() {
            return None;
        }
        Some(MonomialIdeal {
            n: self.n,
            gens: self.gens[..keep].to_vec(),
            masks: self.masks[..keep].to_vec(),
        })
    }

    fn pivot(&self, rule: PivotRule) -> VariableIndex {
        let nonlinear = self.gens.iter().filter(|g| g.degree() > 1);
        let offset = match rule {
            PivotRule::MostFrequent => {
                let mut counts = vec![0usize; self.n];
                for g in nonlinear {
                    for (c, &e) in counts.iter_mut().zip(g.exponents()) {
                        if e > 0 {
                            *c += 1;
                        }
                    }
                }
                // max_by_key keeps the last maximum; scan in reverse so ties go to the lowest index
                (0..self.n)
                    .rev()
                    .max_by_key(|&i| counts[i])
                    .expect("at least one variable")
            }
            PivotRule::FirstNonlinear => {
                let g = nonlinear.into_iter().next().expect("a nonlinear generator");
                g.exponents()
                    .iter()
                    .position(|&e| e > 0)
                    .expect("nonconstant generator")
            }
        };
        VariableIndex::from_offset(offset)
    }
}

fn hps_rec(ideal: &MonomialIdeal, cap: usize, rule: PivotRule) -> TruncatedSeries {
    if let Some(t) = ideal.truncated(cap) {
        return hps_rec(&t, cap, rule);
    }
    let n = ideal.n;
    if ideal.gens.is_empty() {
        return TruncatedSeries::inv_one_minus_z_pow_n(n, cap);
    }
    if ideal.is_unit() {
        return TruncatedSeries::zero(cap);
    }
    if ideal.gens.iter().all(|g| g.degree() == 1) {
        return TruncatedSeries::inv_one_minus_z_pow_n(n - ideal.gens.len(), cap);
    }
    let v = ideal.pivot(rule);
    let mut h = hps_rec(&ideal.add_variable(v), cap, rule);
    if cap >= 1 {
        let colon = hps_rec(&ideal.colon_by_variable(v), cap - 1, rule);
        h.add_shifted(&colon);
    }
    h
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    generators: Vec<String>,
}

impl From<MonomialIdeal> for IdealJson {
    fn from(ideal: MonomialIdeal) -> Self {
        IdealJson {
            n: ideal.n,
            generators: ideal.gens.iter().map(|g| g.to_string()).collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(json: IdealJson) -> Result<Self> {
        let gens = json
            .generators
            .iter()
            .map(|s| Monomial::parse(s, json.n))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal::minimalize(json.n, gens))
    }
}
