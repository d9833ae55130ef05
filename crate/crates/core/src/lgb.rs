//! Leading monomials of a minimal Gröbner basis of a generic sequence,
//! computed degree by degree from the expected Hilbert function alone.
//!
//! At each degree `d` the standard monomials `B_d` outside the ideal built so
//! far are counted; the surplus over `h(d)` is the number `N_d` of new leading
//! monomials, and they are the `N_d` grevlex-largest elements of `B_d`.
//! [`Tier`] selects how `B_d` is found:
//!
//! | tier | monomials tested                         | generators consulted        |
//! |------|------------------------------------------|-----------------------------|
//! | 0    | all of `M_d`                             | all                         |
//! | 1    | `x_i * b`, `b` standard in degree `d-1`  | all                         |
//! | 2    | `x_i * b` for `i >= t`                   | all                         |
//! | 3    | `x_t * b` only; `i > t` taken unchecked  | all                         |
//! | 4    | as tier 3                                | only those divisible by `x_t` |
//!
//! where `x_t` is the smallest variable of the grevlex-largest standard
//! monomial of degree `d-1`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{count_degree, DegreeMonomials, Monomial, VariableIndex};
use crate::monomial_ideal::MonomialIdeal;
use crate::series::{generic_hilbert_series, BracketSeries};

/// Shape of a generic homogeneous sequence: `n` variables, one degree per polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SpecJson", try_from = "SpecJson")]
pub struct InstanceSpec {
    n: usize,
    degrees: Vec<u32>,
}

impl InstanceSpec {
    pub fn new(n: usize, degrees: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("need at least one variable".into()));
        }
        if degrees.is_empty() {
            return Err(Error::InvalidSpec(
                "need at least one polynomial (m >= 1)".into(),
            ));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidSpec("polynomial degrees must be >= 1".into()));
        }
        Ok(InstanceSpec { n, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `sum (d_i - 1) + 1`.
    pub fn macaulay_bound(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum::<u32>() + 1
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "n={} m={} d=({})", self.n, self.m(), ds.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    n: usize,
    m: usize,
    degrees: Vec<u32>,
}

impl From<InstanceSpec> for SpecJson {
    fn from(s: InstanceSpec) -> Self {
        SpecJson {
            n: s.n,
            m: s.degrees.len(),
            degrees: s.degrees,
        }
    }
}

impl TryFrom<SpecJson> for InstanceSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        if j.m != j.degrees.len() {
            return Err(Error::InvalidSpec(format!(
                "m = {} but {} degrees given",
                j.m,
                j.degrees.len()
            )));
        }
        InstanceSpec::new(j.n, j.degrees)
    }
}

/// Candidate-reduction level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Tier {
    T0,
    T1,
    T2,
    T3,
    T4,
}

impl Tier {
    pub const ALL: [Tier; 5] = [Tier::T0, Tier::T1, Tier::T2, Tier::T3, Tier::T4];

    pub fn level(self) -> u8 {
        self as u8
    }
}

impl TryFrom<u8> for Tier {
    type Error = Error;

    fn try_from(level: u8) -> Result<Self> {
        Tier::ALL
            .get(level as usize)
            .copied()
            .ok_or(Error::InvalidTier(level))
    }
}

impl From<Tier> for u8 {
    fn from(t: Tier) -> u8 {
        t.level()
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tier {}", self.level())
    }
}

/// Per-degree counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTrace {
    pub d: u32,
    /// Monomials submitted to the divisibility test.
    pub candidates_checked: u64,
    pub b_d_size: u64,
    /// New leading monomials at this degree.
    pub n_d: u64,
    /// Generators consulted for the divisibility test.
    pub relevant_generators: u64,
}

/// Work counters that are not part of the reported trace.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWork {
    pub d: u32,
    /// Candidate-versus-generator comparisons, counting early exits.
    pub divisibility_checks: u64,
    /// Size of the candidate set, tested plus pre-checked.
    pub candidate_set_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ResultJson", try_from = "ResultJson")]
pub struct LgbResult {
    pub spec: InstanceSpec,
    pub degree_bound: u32,
    pub leading_monomials: MonomialIdeal,
    pub traces: Vec<DegreeTrace>,
}

impl LgbResult {
    /// Leading monomials grouped by degree, each group descending under grevlex.
    pub fn by_degree(&self) -> Vec<(u32, Vec<&Monomial>)> {
        let mut out: Vec<(u32, Vec<&Monomial>)> = Vec::new();
        for g in self.leading_monomials.generators() {
            match out.last_mut() {
                Some((d, group)) if *d == g.degree() => group.push(g),
                _ => out.push((g.degree(), vec![g])),
            }
        }
        for (_, group) in &mut out {
            group.reverse();
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    spec: InstanceSpec,
    #[serde(rename = "D")]
    degree_bound: u32,
    #[serde(rename = "L_G")]
    leading_monomials: Vec<String>,
    traces: Vec<DegreeTrace>,
}

impl From<LgbResult> for ResultJson {
    fn from(r: LgbResult) -> Self {
        let leading_monomials = r
            .by_degree()
            .into_iter()
            .flat_map(|(_, g)| g.into_iter().map(|m| m.to_string()))
            .collect();
        ResultJson {
            degree_bound: r.degree_bound,
            leading_monomials,
            traces: r.traces,
            spec: r.spec,
        }
    }
}

impl TryFrom<ResultJson> for LgbResult {
    type Error = Error;

    fn try_from(j: ResultJson) -> Result<Self> {
        let n = j.spec.n();
        let gens = j
            .leading_monomials
            .iter()
            .map(|s| Monomial::parse(s, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(LgbResult {
            leading_monomials: MonomialIdeal::minimalize(n, gens),
            spec: j.spec,
            degree_bound: j.degree_bound,
            traces: j.traces,
        })
    }
}

/// Highest degree that can carry a leading monomial.
///
/// For `n <= m` this is one plus the degree of the generic Hilbert
/// polynomial; otherwise the Macaulay bound.
pub fn degree_bound(spec: &InstanceSpec) -> u32 {
    if spec.n() <= spec.m() {
        // the unbracketed series is a polynomial of degree < sum d_i
        let cap = spec.degrees().iter().sum::<u32>() as usize + 1;
        let h = generic_hilbert_series(spec, cap);
        debug_assert!(h.finite);
        h.coeffs.len() as u32
    } else {
        spec.macaulay_bound()
    }
}

/// Target Hilbert series, expanded one degree past the bound.
pub fn target_series(spec: &InstanceSpec, bound: u32) -> BracketSeries {
    generic_hilbert_series(spec, bound as usize + 1)
}

/// Monomials proposed for degree `d`.
#[derive(Clone, Debug)]
pub struct Candidates {
    /// Known to lie outside the ideal; they skip the divisibility test.
    pub pre_checked: Vec<Monomial>,
    pub to_check: CandidatePool,
    pub x_t: Option<VariableIndex>,
}

#[derive(Clone, Debug)]
pub enum CandidatePool {
    /// Every monomial of degree `d`, streamed on demand.
    FullDegree {
        n: usize,
        d: u32,
    },
    Listed(Vec<Monomial>),
}

impl CandidatePool {
    pub fn len(&self) -> u64 {
        match self {
            CandidatePool::FullDegree { n, d } => count_degree(*n, *d) as u64,
            CandidatePool::Listed(v) => v.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Materializes the pool, descending under grevlex.
    pub fn to_vec(&self) -> Vec<Monomial> {
        match self {
            CandidatePool::FullDegree { n, d } => DegreeMonomials::new(*n, *d).collect(),
            CandidatePool::Listed(v) => v.clone(),
        }
    }
}

/// Mutable state of the degree loop.
#[derive(Clone, Debug)]
pub struct LgbState {
    spec: InstanceSpec,
    leading: MonomialIdeal,
    /// Standard monomials of degree `d - 1`, descending under grevlex.
    b_tilde_prev: Vec<Monomial>,
    d: u32,
    target: BracketSeries,
    bound: u32,
}

impl LgbState {
    pub fn new(spec: &InstanceSpec) -> Self {
        let bound = degree_bound(spec);
        LgbState {
            spec: spec.clone(),
            leading: MonomialIdeal::zero(spec.n()),
            b_tilde_prev: vec![Monomial::one(spec.n())],
            d: 1,
            target: target_series(spec, bound),
            bound,
        }
    }

    /// Degree the next step will process.
    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn target(&self) -> &BracketSeries {
        &self.target
    }

    pub fn leading(&self) -> &MonomialIdeal {
        &self.leading
    }

    pub fn b_tilde_prev(&self) -> &[Monomial] {
        &self.b_tilde_prev
    }

    pub fn is_done(&self) -> bool {
        self.d > self.bound
    }

    /// Processes degree `d` and advances to `d + 1`.
    pub fn step(
        &mut self,
        tier: Tier,
        pool: Option<&rayon::ThreadPool>,
    ) -> Result<(DegreeTrace, DegreeWork)> {
        let d = self.d;
        let cands = candidates(tier, self)?;
        let relevant = relevant_generators(tier, &self.leading, d, cands.x_t);
        let masks: Vec<u64> = relevant.iter().map(|g| g.support_mask()).collect();
        let filter = GeneratorFilter {
            gens: &relevant,
            masks: &masks,
        };

        let (mut b_d, checks) = filter.survivors(&cands.to_check, pool);
        b_d.extend(cands.pre_checked.iter().cloned());
        b_d.sort_unstable_by(|a, b| b.cmp(a));
        b_d.dedup();

        let expected = self.target.value(d as usize);
        let n_d = b_d.len() as i128 - expected;
        if n_d < 0 {
            return Err(Error::GenericityViolation {
                degree: d,
                b_d_size: b_d.len(),
                expected,
            });
        }
        let n_d = n_d as usize;
        let b_tilde = b_d.split_off(n_d);
        let trace = DegreeTrace {
            d,
            candidates_checked: cands.to_check.len(),
            b_d_size: (n_d + b_tilde.len()) as u64,
            n_d: n_d as u64,
            relevant_generators: relevant.len() as u64,
        };
        let work = DegreeWork {
            d,
            divisibility_checks: checks,
            candidate_set_size: cands.to_check.len() + cands.pre_checked.len() as u64,
        };
        self.leading.append_top_degree(b_d);
        self.b_tilde_prev = b_tilde;
        self.d += 1;
        Ok((trace, work))
    }
}

struct GeneratorFilter<'a> {
    gens: &'a [&'a Monomial],
    masks: &'a [u64],
}

const CHUNK: usize = 1 << 14;

impl GeneratorFilter<'_> {
    /// `(in_ideal, comparisons)`; generators are scanned lowest degree first.
    #[inline]
    fn test(&self, m: &Monomial) -> (bool, u64) {
        let mm = m.support_mask();
        let mut checks = 0;
        for (g, &gm) in self.gens.iter().zip(self.masks) {
            checks += 1;
            if gm & !mm == 0 && g.divides(m) {
                return (true, checks);
            }
        }
        (false, checks)
    }

    fn filter_chunk(
        &self,
        chunk: &[Monomial],
        pool: Option<&rayon::ThreadPool>,
    ) -> (Vec<Monomial>, u64) {
        let run = |c: &[Monomial]| -> Vec<(bool, u64)> {
            match pool {
                Some(_) => c.par_iter().map(|m| self.test(m)).collect(),
                None => c.iter().map(|m| self.test(m)).collect(),
            }
        };
        let flags = match pool {
            Some(p) => p.install(|| run(chunk)),
            None => run(chunk),
        };
        let mut checks = 0;
        let mut out = Vec::new();
        for (m, (inside, c)) in chunk.iter().zip(flags) {
            checks += c;
            if !inside {
                out.push(m.clone());
            }
        }
        (out, checks)
    }

    /// Members of the pool outside the ideal, in pool order.
    fn survivors(
        &self,
        pool_set: &CandidatePool,
        pool: Option<&rayon::ThreadPool>,
    ) -> (Vec<Monomial>, u64) {
        match pool_set {
            CandidatePool::Listed(v) => self.filter_chunk(v, pool),
            CandidatePool::FullDegree { n, d } => {
                let mut it = DegreeMonomials::new(*n, *d);
                let mut out = Vec::new();
                let mut checks = 0;
                loop {
                    let chunk: Vec<Monomial> = it.by_ref().take(CHUNK).collect();
                    if chunk.is_empty() {
                        break;
                    }
                    let (s, c) = self.filter_chunk(&chunk, pool);
                    out.extend(s);
                    checks += c;
                }
                (out, checks)
            }
        }
    }
}

/// `{x_i * b : i in vars, b in basis}` as a deduplicated set, descending.
fn products(basis: &[Monomial], vars: std::ops::Range<usize>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(basis.len() * vars.len());
    for b in basis {
        for i in vars.clone() {
            out.push(b.mul_offset(i));
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// Splitting variable `x_t`: smallest variable of the grevlex-largest
/// standard monomial of degree `d - 1`. At `d = 1` that monomial is `1`
/// and `t = 1` is used.
fn splitting_variable(b_tilde_prev: &[Monomial]) -> VariableIndex {
    let largest = &b_tilde_prev[0];
    if largest.is_one() {
        VariableIndex::from_offset(0)
    } else {
        largest
            .smallest_variable()
            .expect("nonconstant monomial has a variable")
    }
}

/// Candidate monomials for the state's current degree under `tier`.
pub fn candidates(tier: Tier, state: &LgbState) -> Result<Candidates> {
    let n = state.spec.n();
    let d = state.d;
    if tier == Tier::T0 {
        return Ok(Candidates {
            pre_checked: Vec::new(),
            to_check: CandidatePool::FullDegree { n, d },
            x_t: None,
        });
    }
    let basis = &state.b_tilde_prev;
    if basis.is_empty() {
        return Err(Error::InconsistentState {
            degree: d,
            bound: state.bound,
        });
    }
    let out = match tier {
        Tier::T0 => unreachable!(),
        Tier::T1 => Candidates {
            pre_checked: Vec::new(),
            to_check: CandidatePool::Listed(products(basis, 0..n)),
            x_t: None,
        },
        Tier::T2 => {
            let x_t = splitting_variable(basis);
            Candidates {
                pre_checked: Vec::new(),
                to_check: CandidatePool::Listed(products(basis, x_t.offset()..n)),
                x_t: Some(x_t),
            }
        }
        Tier::T3 | Tier::T4 => {
            let x_t = splitting_variable(basis);
            let t = x_t.offset();
            // multiplication by one variable is injective and order-preserving
            let to_check: Vec<Monomial> = basis.iter().map(|b| b.mul_offset(t)).collect();
            let mut pre_checked = products(basis, t + 1..n);
            if !pre_checked.is_empty() {
                let tested: HashSet<&Monomial> = to_check.iter().collect();
                pre_checked.retain(|m| !tested.contains(m));
            }
            Candidates {
                pre_checked,
                to_check: CandidatePool::Listed(to_check),
                x_t: Some(x_t),
            }
        }
    };
    Ok(out)
}

/// Generators consulted when testing degree-`d` candidates.
///
/// Tiers 0–3 use every generator of degree `<= d - 1`; tier 4 keeps only
/// those divisible by `x_t`.
pub fn relevant_generators(
    tier: Tier,
    leading: &MonomialIdeal,
    d: u32,
    x_t: Option<VariableIndex>,
) -> Vec<&Monomial> {
    let below = leading.generators().iter().take_while(|g| g.degree() < d);
    match tier {
        Tier::T4 => {
            let x_t = x_t.expect("tier 4 needs a splitting variable");
            below.filter(|g| g.exponent(x_t) > 0).collect()
        }
        _ => below.collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LgbOptions {
    pub tier: Tier,
    /// Worker threads for the divisibility test; 1 runs inline.
    pub threads: usize,
}

impl Default for LgbOptions {
    fn default() -> Self {
        LgbOptions {
            tier: Tier::T4,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LgbRun {
    pub result: LgbResult,
    pub work: Vec<DegreeWork>,
}

/// Degree loop from 1 to the degree bound, without any Hilbert-series recomputation.
pub fn lgb_improved(spec: &InstanceSpec, tier: Tier) -> Result<LgbResult> {
    lgb_improved_with(spec, LgbOptions { tier, threads: 1 }).map(|r| r.result)
}

pub fn lgb_improved_with(spec: &InstanceSpec, opts: LgbOptions) -> Result<LgbRun> {
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?,
        )
    } else {
        None
    };
    let mut state = LgbState::new(spec);
    let mut traces = Vec::new();
    let mut work = Vec::new();
    while !state.is_done() {
        let (t, w) = state.step(opts.tier, pool.as_ref())?;
        traces.push(t);
        work.push(w);
    }
    Ok(LgbRun {
        result: LgbResult {
            spec: spec.clone(),
            degree_bound: state.bound,
            leading_monomials: state.leading,
            traces,
        },
        work,
    })
}

/// The unoptimized loop: full scan of `M_d` at each degree, stopping once
/// the Hilbert series of the leading-monomial ideal equals the target.
///
/// Series are compared through `degree_bound + 1`. Traces start at degree 1
/// and end where the loop stops, which may be below the bound.
pub fn lgb_basic(spec: &InstanceSpec) -> Result<LgbResult> {
    let n = spec.n();
    let bound = degree_bound(spec);
    let cap = bound as usize + 1;
    let target = target_series(spec, bound);
    let target_series = target.to_truncated(cap);

    let mut leading = MonomialIdeal::zero(n);
    let mut current = leading.hps(cap);
    let mut traces = Vec::new();
    let mut d: u32 = 0;
    while current != target_series {
        if d as usize > cap {
            return Err(Error::InconsistentState { degree: d, bound });
        }
        let mut b_d: Vec<Monomial> = DegreeMonomials::new(n, d)
            .filter(|m| !leading.contains(m))
            .collect();
        let expected = target.value(d as usize);
        let n_d = b_d.len() as i128 - expected;
        if n_d < 0 {
            return Err(Error::GenericityViolation {
                degree: d,
                b_d_size: b_d.len(),
                expected,
            });
        }
        let b_d_size = b_d.len() as u64;
        b_d.truncate(n_d as usize);
        if d > 0 {
            traces.push(DegreeTrace {
                d,
                candidates_checked: count_degree(n, d) as u64,
                b_d_size,
                n_d: n_d as u64,
                relevant_generators: leading.len() as u64,
            });
        }
        leading.append_top_degree(b_d);
        current = leading.hps(cap);
        d += 1;
    }
    Ok(LgbResult {
        spec: spec.clone(),
        degree_bound: bound,
        leading_monomials: leading,
        traces,
    })
}

/// True iff every same-degree monomial grevlex-above a minimal generator
/// lies in the ideal.
pub fn weakly_revlex_check(ideal: &MonomialIdeal) -> bool {
    let gens = ideal.generators();
    let mut i = 0;
    while i < gens.len() {
        let d = gens[i].degree();
        // generators are ascending, so gens[i] is the smallest of degree d
        let smallest = &gens[i];
        let ok = DegreeMonomials::new(ideal.nvars(), d)
            .take_while(|m| m > smallest)
            .all(|m| ideal.contains(&m));
        if !ok {
            return false;
        }
        while i < gens.len() && gens[i].degree() == d {
            i += 1;
        }
    }
    true
}
