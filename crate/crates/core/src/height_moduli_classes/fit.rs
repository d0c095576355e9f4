//! Exact rational-function fitting of truncated height zeta series.
//!
//! Given `c_0, ..., c_T` in `Z[L]`, find `P(t)/D(t)` with `deg P <= a`,
//! `deg D <= b`, `D(0) = 1`, whose expansion reproduces every supplied
//! coefficient. The unknowns `d_1, ..., d_b` solve the linear recurrence
//! `c_n + d_1 c_{n-1} + ... + d_b c_{n-b} = 0` for `a < n <= T`, a system
//! over the fraction field `Q(L)` that is eliminated exactly.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::motivic_ring::MotivicClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need more than {needed} coefficients, got {got}")]
    TooFewCoefficients { needed: usize, got: usize },
    #[error("the recurrence system is underdetermined (rank {rank} < {unknowns})")]
    Underdetermined { rank: usize, unknowns: usize },
}

/// An element `num / den` of `Q(L)`, stored reduced with a denominator of
/// positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MotivicClass,
    den: MotivicClass,
}

impl RationalFunction {
    pub fn new(num: MotivicClass, den: MotivicClass) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(MotivicClass::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: MotivicClass) -> Self {
        RationalFunction {
            num: p,
            den: MotivicClass::one(),
        }
    }

    pub fn numerator(&self) -> &MotivicClass {
        &self.num
    }

    pub fn denominator(&self) -> &MotivicClass {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this is equal to, if any.
    pub fn as_poly(&self) -> Option<MotivicClass> {
        self.num.div_exact(&self.den)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den - &o.num * &self.den, &self.den * &o.den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MotivicClass::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `numerator(t) / denominator(t)` with coefficients in `Z[L]`, scaled so
/// the coefficients share no common factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFit {
    pub numerator: Vec<MotivicClass>,
    pub denominator: Vec<MotivicClass>,
}

impl RationalFit {
    /// Power series coefficients `0..len`. `None` if the constant term of the
    /// denominator does not divide the recurrence in `Z[L]`.
    pub fn series(&self, len: usize) -> Option<Vec<MotivicClass>> {
        let d0 = self.denominator.first()?;
        let mut out: Vec<MotivicClass> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = self
                .numerator
                .get(n)
                .cloned()
                .unwrap_or_else(MotivicClass::zero);
            for (j, dj) in self.denominator.iter().enumerate().skip(1) {
                if j <= n {
                    acc -= &(dj * &out[n - j]);
                }
            }
            out.push(acc.div_exact(d0)?);
        }
        Some(out)
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn numerator_degree(&self) -> Option<usize> {
        self.numerator.iter().rposition(|c| !c.is_zero())
    }
}

fn render_t_poly(coeffs: &[MotivicClass]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c})*t"),
            _ => format!("({c})*t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for RationalFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] / [{}]",
            render_t_poly(&self.numerator),
            render_t_poly(&self.denominator)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitOutcome {
    Fit(RationalFit),
    /// The recurrence system is inconsistent.
    NoFit,
}

fn row_primitive(row: &mut [MotivicClass]) {
    let g = row.iter().fold(MotivicClass::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == MotivicClass::one() {
        return;
    }
    for x in row.iter_mut() {
        *x = x.div_exact(&g).expect("gcd divides every entry");
    }
}

/// Fits `coefficients` by a rational function with numerator degree at most
/// `num_deg` and denominator degree at most `den_deg`.
pub fn rational_fit(
    coefficients: &[MotivicClass],
    num_deg: usize,
    den_deg: usize,
) -> Result<FitOutcome, FitError> {
    let needed = num_deg + den_deg + 1;
    if coefficients.len() <= needed {
        return Err(FitError::TooFewCoefficients {
            needed,
            got: coefficients.len(),
        });
    }
    let c = |i: isize| -> MotivicClass {
        if i < 0 {
            MotivicClass::zero()
        } else {
            coefficients[i as usize].clone()
        }
    };
    // rows: [c_{n-1}, ..., c_{n-b} | -c_n]
    let mut rows: Vec<Vec<MotivicClass>> = (num_deg + 1..coefficients.len())
        .map(|n| {
            let n = n as isize;
            let mut row: Vec<MotivicClass> = (1..=den_deg as isize).map(|j| c(n - j)).collect();
            row.push(-c(n));
            row
        })
        .collect();

    // fraction-free elimination over Z[L]
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..den_deg {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = &(&*x * &pivot_row[col]) - &(&factor * pv);
            }
            row_primitive(row);
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| !row[den_deg].is_zero()) {
        return Ok(FitOutcome::NoFit);
    }
    if rank < den_deg {
        return Err(FitError::Underdetermined {
            rank,
            unknowns: den_deg,
        });
    }
    // each pivot row now reads pivot * d_col = rhs
    let mut d: Vec<RationalFunction> = vec![RationalFunction::from_poly(MotivicClass::one())];
    for (i, &col) in pivots.iter().enumerate() {
        d.push(RationalFunction::new(
            rows[i][den_deg].clone(),
            rows[i][col].clone(),
        ));
    }
    // clear denominators and content
    let lcm = d.iter().fold(MotivicClass::one(), |acc, x| {
        let g = acc.gcd(x.denominator());
        (&acc * x.denominator()).div_exact(&g).unwrap()
    });
    let mut denominator: Vec<MotivicClass> = d
        .iter()
        .map(|x| (x.numerator() * &lcm).div_exact(x.denominator()).unwrap())
        .collect();
    row_primitive(&mut denominator);
    if denominator[0]
        .leading_coeff()
        .is_some_and(|l| l.is_negative())
    {
        denominator.iter_mut().for_each(|x| *x = -&*x);
    }
    while denominator.len() > 1 && denominator.last().unwrap().is_zero() {
        denominator.pop();
    }
    let mut numerator: Vec<MotivicClass> = (0..=num_deg)
        .map(|n| {
            denominator
                .iter()
                .enumerate()
                .filter(|(j, _)| *j <= n)
                .map(|(j, dj)| dj * &coefficients[n - j])
                .sum()
        })
        .collect();
    while numerator.last().is_some_and(|x| x.is_zero()) {
        numerator.pop();
    }
    let fit = RationalFit {
        numerator,
        denominator,
    };
    debug_assert!(fit
        .series(coefficients.len())
        .is_none_or(|s| s.as_slice() == coefficients));
    Ok(FitOutcome::Fit(fit))
}
