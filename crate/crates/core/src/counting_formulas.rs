//! Exact counts of elliptic curves over `F_q(t)` in characteristics 2 and 3,
//! ordered by the height `q^{12n} <= B = q^{12m}` of the discriminant.
//!
//! Every fractional power of `B` is resolved before evaluation:
//! `B^{k/12} = q^{km}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::galois_field::prime_power;
use crate::height_moduli_classes::{class_bq12, class_bq24, wmin_class_dual, wmin_class_single};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{0} is not a power of 2 or 3")]
    UnsupportedOrder(u64),
    #[error("characteristic {0} is not 2 or 3")]
    UnsupportedCharacteristic(u64),
    #[error("height bound m = {m} is below the minimum {min}")]
    HeightTooSmall { m: u64, min: u64 },
    #[error("weight must be positive")]
    ZeroWeight,
    #[error("count at q = {q}, m = {m} is not an integer: {value}")]
    NonIntegral {
        q: u64,
        m: u64,
        value: Box<BigRational>,
    },
    #[error("term sum {terms} disagrees with the closed form {closed}")]
    ClosedFormMismatch {
        terms: Box<BigRational>,
        closed: Box<BigRational>,
    },
    #[error(
        "assembled count {assembled} disagrees with the closed form {closed} at q = {q}, m = {m}"
    )]
    PipelineMismatch {
        q: u64,
        m: u64,
        assembled: Box<BigRational>,
        closed: Box<BigRational>,
    },
}

/// A count request: `q = p^r` with `p` in `{2, 3}` and bound `B = q^{12m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountQuery {
    q: u64,
    p: u64,
    r: u32,
    m: u64,
}

impl CountQuery {
    pub fn new(q: u64, m: u64) -> Result<Self, CountError> {
        match prime_power(q) {
            Some((p, r)) if p == 2 || p == 3 => Ok(CountQuery { q, p, r, m }),
            _ => Err(CountError::UnsupportedOrder(q)),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `B^{k/12} = q^{km}`.
    pub fn b_power(&self, k: u64) -> BigInt {
        qpow(self.q, k * self.m)
    }

    /// `B` itself, as the string `q^{12m}`.
    pub fn bound_display(&self) -> String {
        format!("{}^{}", self.q, 12 * self.m)
    }

    pub fn profile(&self) -> SupersingularProfile {
        supersingular_count(self.p, self.r).expect("characteristic checked at construction")
    }
}

fn qpow(q: u64, e: u64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `(q^a - 1) / (q^b - q^c)`.
fn coefficient(q: u64, a: u64, b: u64, c: u64) -> BigRational {
    BigRational::new(qpow(q, a) - 1, qpow(q, b) - qpow(q, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

/// Number of isomorphism classes of supersingular curves over `F_{p^r}`,
/// and the multiplicity `class_count - 2` it contributes to the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupersingularProfile {
    pub p: u64,
    pub r_parity: Parity,
    pub class_count: u64,
    pub multiplicity: u64,
}

pub fn supersingular_count(p: u64, r: u32) -> Result<SupersingularProfile, CountError> {
    let r_parity = if r % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    };
    let class_count = match (p, r_parity) {
        (3, Parity::Odd) => 4,
        (3, Parity::Even) => 6,
        (2, Parity::Odd) => 3,
        (2, Parity::Even) => 7,
        _ => return Err(CountError::UnsupportedCharacteristic(p)),
    };
    Ok(SupersingularProfile {
        p,
        r_parity,
        class_count,
        multiplicity: class_count - 2,
    })
}

/// Weighted count `((q^9 - 1)/(q^8 - q^7)) B^{5/6} - B^{1/6}`.
pub fn n_weighted(query: &CountQuery) -> BigRational {
    let q = query.q;
    coefficient(q, 9, 8, 7) * rat(query.b_power(10)) - rat(query.b_power(2))
}

fn n_unweighted_rational(query: &CountQuery) -> BigRational {
    let q = query.q;
    let mult = rat(BigInt::from(query.profile().multiplicity));
    let base = rat(BigInt::from(2)) * n_weighted(query);
    match query.p {
        3 => {
            base + mult
                * (coefficient(q, 7, 7, 6) * rat(query.b_power(8))
                    - coefficient(q, 3, 4, 3) * rat(query.b_power(4)))
        }
        _ => {
            base + mult
                * (coefficient(q, 8, 8, 7) * rat(query.b_power(9))
                    - coefficient(q, 5, 6, 5) * rat(query.b_power(6)))
                - rat(BigInt::from(2 * q))
                + rat(BigInt::from(4))
        }
    }
}

/// Number of isomorphism classes of minimal elliptic curves over `F_q(t)`
/// with `ht(Δ) <= q^{12m}`. Requires `m >= 1`.
pub fn n_unweighted(query: &CountQuery) -> Result<BigInt, CountError> {
    if query.m < 1 {
        return Err(CountError::HeightTooSmall { m: query.m, min: 1 });
    }
    let value = n_unweighted_rational(query);
    if !value.is_integer() {
        return Err(CountError::NonIntegral {
            q: query.q,
            m: query.m,
            value: Box::new(value),
        });
    }
    Ok(value.to_integer())
}

fn check_closed(terms: BigRational, closed: BigRational) -> Result<BigRational, CountError> {
    if terms == closed {
        Ok(terms)
    } else {
        Err(CountError::ClosedFormMismatch {
            terms: Box::new(terms),
            closed: Box::new(closed),
        })
    }
}

/// `Σ_{n=2}^{m} #_q W_n(a)`, checked against
/// `((q^{a-1} - 1)/(q^{a-1} - q^{a-2})) (q^{am} - q^a)`.
pub fn partial_sum_single(a: u64, q: u64, m: u64) -> Result<BigRational, CountError> {
    if a == 0 {
        return Err(CountError::ZeroWeight);
    }
    if m < 2 {
        return Err(CountError::HeightTooSmall { m, min: 2 });
    }
    let terms: BigInt = (2..=m).map(|n| wmin_class_single(a, n).specialize(q)).sum();
    let closed = if a == 1 {
        // the classes vanish identically and the closed form is 0/0
        BigRational::zero()
    } else {
        coefficient(q, a - 1, a - 1, a - 2) * rat(qpow(q, a * m) - qpow(q, a))
    };
    check_closed(rat(terms), closed)
}

/// `Σ_{n=2}^{m} #_q W_n(b̌)` as a positive quantity, checked against
/// `((q^{b-1} - 1)/(q (q^{b-1} - q^{b-2}))) (q^{bm} - q^b)`.
pub fn partial_sum_dual(b: u64, q: u64, m: u64) -> Result<BigRational, CountError> {
    if b == 0 {
        return Err(CountError::ZeroWeight);
    }
    if m < 2 {
        return Err(CountError::HeightTooSmall { m, min: 2 });
    }
    let terms: BigInt = (2..=m)
        .map(|n| wmin_class_dual(b, n).expect("n >= 2").specialize(q))
        .sum();
    let closed = if b == 1 {
        BigRational::zero()
    } else {
        BigRational::new(
            qpow(q, b - 1) - 1,
            BigInt::from(q) * (qpow(q, b - 1) - qpow(q, b - 2)),
        ) * rat(qpow(q, b * m) - qpow(q, b))
    };
    check_closed(rat(terms), closed)
}

fn check_pipeline(query: &CountQuery, assembled: BigRational) -> Result<BigRational, CountError> {
    let closed = n_unweighted_rational(query);
    if assembled == closed {
        Ok(assembled)
    } else {
        Err(CountError::PipelineMismatch {
            q: query.q,
            m: query.m,
            assembled: Box::new(assembled),
            closed: Box::new(closed),
        })
    }
}

fn assembly_pre(query: &CountQuery, p: u64) -> Result<(), CountError> {
    if query.p != p {
        return Err(CountError::UnsupportedCharacteristic(query.p));
    }
    if query.m < 1 {
        return Err(CountError::HeightTooSmall { m: query.m, min: 1 });
    }
    Ok(())
}

/// `2 N^w + mult · Σ_{n<=m} #_q BQ_12(n)`, which must reproduce [`n_unweighted`].
pub fn assemble_char3(query: &CountQuery) -> Result<BigRational, CountError> {
    assembly_pre(query, 3)?;
    let mult = BigInt::from(query.profile().multiplicity);
    let j0: BigInt = (0..=query.m)
        .map(|n| class_bq12(n).specialize(query.q))
        .sum();
    let assembled = rat(BigInt::from(2)) * n_weighted(query) + rat(mult * j0);
    check_pipeline(query, assembled)
}

/// `2 (N^w - (q - 1) + 1) + mult · Σ_{n<=m} #_q BQ_24(n)`, which must
/// reproduce [`n_unweighted`].
pub fn assemble_char2(query: &CountQuery) -> Result<BigRational, CountError> {
    assembly_pre(query, 2)?;
    let q = query.q;
    let mult = BigInt::from(query.profile().multiplicity);
    let j0: BigInt = (0..=query.m).map(|n| class_bq24(n).specialize(q)).sum();
    let adjusted = n_weighted(query) - rat(BigInt::from(q - 1)) + BigRational::one();
    let assembled = rat(BigInt::from(2)) * adjusted + rat(mult * j0);
    check_pipeline(query, assembled)
}

/// Assembly for whichever characteristic the query has.
pub fn assemble(query: &CountQuery) -> Result<BigRational, CountError> {
    match query.p {
        3 => assemble_char3(query),
        _ => assemble_char2(query),
    }
}

/// One grid point of the closed-form checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRow {
    pub q: u64,
    pub m: u64,
    pub weighted: BigRational,
    pub unweighted: Result<BigInt, CountError>,
    pub assembled: Result<BigRational, CountError>,
}

impl GridRow {
    pub fn passed(&self) -> bool {
        matches!((&self.unweighted, &self.assembled), (Ok(u), Ok(a)) if rat(u.clone()) == *a)
    }
}

/// Evaluates every `(q, m)` pair in parallel; rows come back in input order.
pub fn pipeline_grid(qs: &[u64], ms: &[u64]) -> Result<Vec<GridRow>, CountError> {
    let queries: Vec<CountQuery> = qs
        .iter()
        .flat_map(|&q| ms.iter().map(move |&m| CountQuery::new(q, m)))
        .collect::<Result<_, _>>()?;
    Ok(queries
        .par_iter()
        .map(|query| GridRow {
            q: query.q,
            m: query.m,
            weighted: n_weighted(query),
            unweighted: n_unweighted(query),
            assembled: assemble(query),
        })
        .collect())
}

/// Renders an exact rational as `a` or `a/b`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else if x.denom().is_negative() {
        format!("{}/{}", -x.numer(), -x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(n_weighted(&CountQuery::new(2, 1).unwrap()), int(4084));
        assert_eq!(n_weighted(&CountQuery::new(3, 1).unwrap()), int(265698));
        assert_eq!(
            n_weighted(&CountQuery::new(2, 0).unwrap()),
            BigRational::new(383.into(), 128.into())
        );
    }

    #[test]
    fn unweighted_examples() {
        let u = |q, m| n_unweighted(&CountQuery::new(q, m).unwrap()).unwrap();
        assert_eq!(u(2, 1), BigInt::from(9126));
        assert_eq!(u(3, 1), BigInt::from(550992));
        assert_eq!(u(4, 1), BigInt::from(12925512));
        assert_eq!(
            n_unweighted(&CountQuery::new(2, 0).unwrap()),
            Err(CountError::HeightTooSmall { m: 0, min: 1 })
        );
    }

    #[test]
    fn rejects_other_characteristics() {
        assert_eq!(CountQuery::new(5, 1), Err(CountError::UnsupportedOrder(5)));
        assert_eq!(CountQuery::new(6, 1), Err(CountError::UnsupportedOrder(6)));
        assert!(supersingular_count(5, 1).is_err());
        let q3 = CountQuery::new(3, 1).unwrap();
        assert_eq!(
            assemble_char2(&q3),
            Err(CountError::UnsupportedCharacteristic(3))
        );
    }

    #[test]
    fn supersingular_profiles() {
        let prof = |p, r| {
            let s = supersingular_count(p, r).unwrap();
            (s.class_count, s.multiplicity)
        };
        assert_eq!(prof(3, 1), (4, 2));
        assert_eq!(prof(3, 2), (6, 4));
        assert_eq!(prof(2, 1), (3, 1));
        assert_eq!(prof(2, 2), (7, 5));
        assert_eq!(prof(2, 5), (3, 1));
    }

    #[test]
    fn partial_sums() {
        assert_eq!(
            partial_sum_single(8, 3, 2).unwrap(),
            BigRational::new(
                BigInt::from(3i64.pow(7) - 1),
                BigInt::from(3i64.pow(7) - 3i64.pow(6))
            ) * int(3i64.pow(16) - 3i64.pow(8))
        );
        assert_eq!(partial_sum_single(9, 2, 2).unwrap(), int(521220));
        assert_eq!(
            partial_sum_single(8, 3, 1),
            Err(CountError::HeightTooSmall { m: 1, min: 2 })
        );
        assert_eq!(partial_sum_dual(4, 3, 2).unwrap(), int(3120));
        assert_eq!(partial_sum_dual(6, 2, 3).unwrap(), int(253890));
        assert_eq!(partial_sum_dual(1, 2, 5).unwrap(), int(0));
        for a in 1..=10 {
            for q in [2, 3, 4, 8, 9] {
                for m in 2..=5 {
                    partial_sum_single(a, q, m).unwrap();
                    partial_sum_dual(a, q, m).unwrap();
                }
            }
        }
    }

    #[test]
    fn assembly_examples() {
        let a3 = |q, m| assemble_char3(&CountQuery::new(q, m).unwrap()).unwrap();
        let a2 = |q, m| assemble_char2(&CountQuery::new(q, m).unwrap()).unwrap();
        assert_eq!(a3(3, 1), int(550992));
        a3(9, 1);
        a3(3, 3);
        assert_eq!(a2(2, 1), int(9126));
        assert_eq!(a2(4, 1), int(12925512));
        a2(2, 4);
    }

    #[test]
    fn grid_is_integral_consistent_and_monotone() {
        let rows = pipeline_grid(&[2, 4, 8, 16, 3, 9, 27], &[1, 2, 3, 4, 5]).unwrap();
        assert!(rows.iter().all(GridRow::passed));
        for pair in rows.windows(2).filter(|w| w[0].q == w[1].q) {
            assert!(pair[1].unweighted.as_ref().unwrap() > pair[0].unweighted.as_ref().unwrap());
        }
    }

    #[test]
    fn bound_rendering() {
        let query = CountQuery::new(3, 2).unwrap();
        assert_eq!(query.bound_display(), "3^24");
        assert_eq!(query.b_power(12), BigInt::from(3).pow(24));
        assert_eq!(
            format_rational(&BigRational::new(383.into(), 128.into())),
            "383/128"
        );
    }
}
