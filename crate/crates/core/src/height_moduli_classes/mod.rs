//! Motivic classes `{W_n^min}` of height moduli spaces of rational curves
//! `P^1 -> P(λ)` with `L = O(1)`, the single-weight and virtual dual
//! variants, and the combinations that give the classifying stacks
//! `B Q_12`, `B Z` and `B Q_24`.
//!
//! Projective-space factors `{P^m}` are expanded eagerly, so every class is a
//! plain [`MotivicClass`].

mod fit;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::motivic_ring::MotivicClass;

pub use fit::{rational_fit, FitError, FitOutcome, RationalFit, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("weight vectors must be nonempty with positive entries")]
    BadWeights,
    #[error("height-1 class of P{0} needs |λ| >= N + 2")]
    DegenerateProjectiveFactor(WeightVector),
    #[error("the dual class P({0}ˇ) is only defined from height 1 on")]
    DualAtHeightZero(u64),
    #[error("cannot parse target `{0}`")]
    Parse(String),
}

/// Weights `(λ_0, ..., λ_N)` of a weighted projective stack `P(λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Result<Self, HeightError> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(HeightError::BadWeights);
        }
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    /// `|λ| = Σ λ_i`.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `N`, one less than the number of weights.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn max_weight(&self) -> u64 {
        *self.0.iter().max().unwrap()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = HeightError;

    /// `4,6` or `(4,6)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let weights = inner
            .split(',')
            .map(|w| w.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| HeightError::Parse(s.to_string()))?;
        WeightVector::new(weights)
    }
}

fn l_pow(k: u64) -> MotivicClass {
    MotivicClass::monomial(1, k as usize)
}

fn p_space(m: u64) -> MotivicClass {
    MotivicClass::projective_space(m as usize)
}

/// `L^k (L^e - 1) {P^e}`, the shape shared by every height `>= 2` class.
fn stable_class(shift: u64, e: u64) -> MotivicClass {
    &(&l_pow(shift) * &(l_pow(e) - MotivicClass::one())) * &p_space(e)
}

/// `{W_n^min(P(λ), O(1))}`.
pub fn wmin_class(lambda: &WeightVector, n: u64) -> Result<MotivicClass, HeightError> {
    let big_n = lambda.dimension() as u64;
    let total = lambda.total();
    Ok(match n {
        0 => p_space(big_n),
        1 => {
            if total < big_n + 2 {
                return Err(HeightError::DegenerateProjectiveFactor(lambda.clone()));
            }
            let first = &p_space(big_n) * &(l_pow(total) - l_pow(1));
            let second = &l_pow(big_n + 1) * &p_space(total - big_n - 2);
            first + second
        }
        _ => stable_class((n - 2) * total + big_n + 2, total - 1),
    })
}

/// `{W_n^min(P(a), O(1))}` for the zero-dimensional stack `P(a)`.
pub fn wmin_class_single(a: u64, n: u64) -> MotivicClass {
    assert!(a >= 1, "weight must be positive");
    match n {
        0 => MotivicClass::one(),
        1 => MotivicClass::geometric_sum(2, a as usize),
        _ => stable_class((n - 2) * a + 2, a - 1),
    }
}

/// Formal class for the virtual `(-1)`-dimensional stack `P(bˇ)`.
pub fn wmin_class_dual(b: u64, n: u64) -> Result<MotivicClass, HeightError> {
    assert!(b >= 1, "weight must be positive");
    match n {
        0 => Err(HeightError::DualAtHeightZero(b)),
        1 => Ok(p_space(b - 1)),
        _ => Ok(stable_class((n - 2) * b + 1, b - 1)),
    }
}

fn classifying(single: u64, dual: u64, n: u64) -> MotivicClass {
    match n {
        0 => MotivicClass::one(),
        _ => wmin_class_single(single, n) - wmin_class_dual(dual, n).expect("n >= 1"),
    }
}

/// `B Q_12`: `P(8) - P(4ˇ)` from height 1 on.
pub fn class_bq12(n: u64) -> MotivicClass {
    classifying(8, 4, n)
}

/// `B Z`: `P(2) - P(1ˇ)` from height 1 on.
pub fn class_bz(n: u64) -> MotivicClass {
    classifying(2, 1, n)
}

/// `B Q_24`: `P(9) - P(6ˇ)` from height 1 on.
pub fn class_bq24(n: u64) -> MotivicClass {
    classifying(9, 6, n)
}

/// Targets whose height moduli classes are known in closed form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HeightTarget {
    /// `P(λ)` with at least two weights.
    Weighted(WeightVector),
    /// `P(a)`
    Single(u64),
    /// `P(bˇ)`
    Dual(u64),
    BQ12,
    BZ,
    BQ24,
}

impl HeightTarget {
    /// `P(a)` for a single weight, `P(λ)` otherwise.
    pub fn from_weights(lambda: WeightVector) -> Self {
        match lambda.weights() {
            [a] => HeightTarget::Single(*a),
            _ => HeightTarget::Weighted(lambda),
        }
    }

    pub fn class(&self, n: u64) -> Result<MotivicClass, HeightError> {
        match self {
            HeightTarget::Weighted(l) => wmin_class(l, n),
            HeightTarget::Single(a) => Ok(wmin_class_single(*a, n)),
            HeightTarget::Dual(b) => wmin_class_dual(*b, n),
            HeightTarget::BQ12 => Ok(class_bq12(n)),
            HeightTarget::BZ => Ok(class_bz(n)),
            HeightTarget::BQ24 => Ok(class_bq24(n)),
        }
    }
}

impl fmt::Display for HeightTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightTarget::Weighted(l) => write!(f, "P{l}"),
            HeightTarget::Single(a) => write!(f, "P({a})"),
            HeightTarget::Dual(b) => write!(f, "Pdual({b})"),
            HeightTarget::BQ12 => f.write_str("BQ12"),
            HeightTarget::BZ => f.write_str("BZ"),
            HeightTarget::BQ24 => f.write_str("BQ24"),
        }
    }
}

impl FromStr for HeightTarget {
    type Err = HeightError;

    /// `P(4,6)`, `P(8)`, `Pdual(4)` (also `P(4ˇ)` / `P(4v)`), `BQ12`, `BZ`, `BQ24`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || HeightError::Parse(s.to_string());
        match t.to_ascii_uppercase().as_str() {
            "BQ12" => return Ok(HeightTarget::BQ12),
            "BZ" => return Ok(HeightTarget::BZ),
            "BQ24" => return Ok(HeightTarget::BQ24),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("Pdual(").and_then(|r| r.strip_suffix(')')) {
            return inner
                .trim()
                .parse()
                .map(HeightTarget::Dual)
                .map_err(|_| err());
        }
        let inner = t
            .strip_prefix("P(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        if let Some(b) = inner.strip_suffix('ˇ').or_else(|| inner.strip_suffix('v')) {
            return b.trim().parse().map(HeightTarget::Dual).map_err(|_| err());
        }
        let weights: WeightVector = inner.parse().map_err(|_| err())?;
        Ok(HeightTarget::from_weights(weights))
    }
}

/// Classes of one target at a set of heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightClassTable {
    pub target: HeightTarget,
    pub entries: BTreeMap<u64, MotivicClass>,
}

impl HeightClassTable {
    pub fn build(
        target: HeightTarget,
        heights: impl IntoIterator<Item = u64>,
    ) -> Result<Self, HeightError> {
        let entries = heights
            .into_iter()
            .map(|n| target.class(n).map(|c| (n, c)))
            .collect::<Result<_, _>>()?;
        Ok(HeightClassTable { target, entries })
    }
}

/// Coefficients `{W_0}, ..., {W_T}` of the height zeta series `Σ {W_n} t^n`.
pub fn zeta_truncation(
    target: &HeightTarget,
    trunc: u64,
) -> Result<Vec<MotivicClass>, HeightError> {
    (0..=trunc).map(|n| target.class(n)).collect()
}
