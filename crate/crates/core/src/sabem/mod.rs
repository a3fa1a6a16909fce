//! Exact moment calculus for the excess variable `X`.
//!
//! A uniformly random 4-colouring `φ: V → {0,1,2,3}` induces random
//! `φ`-compatible arrangements: the colour classes form consecutive blocks
//! in ascending colour order, each block internally shuffled. `X_p` is the
//! probability that constraint `p` is satisfied by such an arrangement minus
//! `1/3`, and `X = Σ_p X_p`. Everything here is exact; weights are kept as
//! integer multiples of `1/6` internally and surface as [`Rational`]s.
//!
//! [`Rational`]: crate::rational::Rational

mod closed_form;
mod compatible;
mod moments;
mod polynomial;
mod profile;
mod weights;

pub use closed_form::{
    classify_pair, cross_term_closed_form, cross_term_lower_bound_check, cross_term_quadratic_form,
    derive_w_prime, second_moment_closed_form, table2_report, verify_table2, w_prime_relations,
    CaseWeight, CaseWeightReport, PairClass, CASE_WEIGHTS, DIAGONAL_WEIGHT, W_PRIME,
};
pub use compatible::{expected_satisfied_exhaustive, EXHAUSTIVE_ARRANGEMENT_LIMIT};
pub use moments::{
    cross_term_enumerated, enumerate_moments, first_moment, fourth_moment_enumerated,
    monte_carlo_moments, pair_expectation, second_moment_enumerated, EnumeratedMoments,
    ENUMERATION_MAX_N,
};
pub use polynomial::{
    decode_triple, encode_triple, instance_polynomial, xp_polynomial, Monomial,
    MultilinearPolynomial, XpPolynomial,
};
pub use profile::{profile_counts, ProfileCounts};
pub use weights::{table1_distribution, x_weight, xp_weight, Table1Case, Table1Row};

pub(crate) use weights::{x_weight_sixths, xp_weight_sixths};

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::VarId;

/// A colouring `φ: V → {0,1,2,3}`, total over `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment4 {
    classes: Vec<u8>,
}

impl Assignment4 {
    pub fn new(classes: Vec<u8>) -> Result<Self> {
        if let Some(bad) = classes.iter().find(|&&c| c > 3) {
            return Err(Error::InvalidArgument(format!(
                "colour {bad} outside 0..=3"
            )));
        }
        Ok(Assignment4 { classes })
    }

    pub fn constant(n: usize, class: u8) -> Self {
        assert!(class < 4);
        Assignment4 {
            classes: vec![class; n],
        }
    }

    /// Decodes base-4 digits of `code`, variable 1 in the lowest digit.
    pub fn from_code(n: usize, code: u64) -> Self {
        Assignment4 {
            classes: (0..n).map(|i| ((code >> (2 * i)) & 3) as u8).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Assignment4 {
            classes: (0..n).map(|_| rng.gen_range(0..4u8)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.classes.len()
    }

    pub fn get(&self, v: VarId) -> u8 {
        self.classes[v.index()]
    }

    pub fn classes(&self) -> &[u8] {
        &self.classes
    }
}
