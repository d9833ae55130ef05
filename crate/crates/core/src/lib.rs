//! Leading monomials of a minimal Gröbner basis of a generic homogeneous
//! sequence, found by matching Hilbert functions degree by degree instead of
//! reducing polynomials.
//!
//! ```
//! use lgb_core::{lgb_improved, InstanceSpec, Tier};
//!
//! let spec = InstanceSpec::new(3, vec![2, 2, 3, 4]).unwrap();
//! let result = lgb_improved(&spec, Tier::T4).unwrap();
//! assert_eq!(result.leading_monomials.len(), 7);
//! ```

pub mod error;
pub mod lgb;
pub mod monomial;
pub mod monomial_ideal;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use lgb::{
    candidates, degree_bound, lgb_basic, lgb_improved, lgb_improved_with, relevant_generators,
    weakly_revlex_check, CandidatePool, Candidates, DegreeTrace, DegreeWork, InstanceSpec,
    LgbOptions, LgbResult, LgbRun, LgbState, Tier,
};
pub use monomial::{count_degree, enumerate_degree, DegreeMonomials, Monomial, VariableIndex};
pub use monomial_ideal::{MonomialIdeal, PivotRule};
pub use series::{generic_hilbert_series, BracketSeries, TruncatedSeries};
