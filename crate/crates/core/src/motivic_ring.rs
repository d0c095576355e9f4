//! Integer polynomials in the Lefschetz motive `L`, and the closed-form
//! classes of the weighted projective stacks and of the moduli of elliptic
//! curves used throughout the crate.
//!
//! Every class handled here is mixed Tate, so a [`MotivicClass`] is simply an
//! element of `Z[L]`. Specializing `L -> q` gives the weighted point count
//! over `F_q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::galois_field::prime_power;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("characteristic {p} divides a weight of P({a},{b})")]
    CharacteristicDividesWeight { p: u64, a: u64, b: u64 },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("no closed form for {0} in characteristic {1}")]
    Unsupported(String, u64),
    #[error("cannot parse motivic class `{0}`")]
    Parse(String),
}

/// An element of `Z[L]`; `coeffs[i]` is the coefficient of `L^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MotivicClass {
    coeffs: Vec<BigInt>,
}

impl MotivicClass {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut c = MotivicClass { coeffs };
        c.normalize();
        c
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        MotivicClass { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64s(&[c])
    }

    /// The Lefschetz motive `L`.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * L^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::new(coeffs)
    }

    /// `L^lo + L^{lo+1} + ... + L^hi`; zero when `lo > hi`.
    pub fn geometric_sum(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); hi + 1];
        for c in &mut coeffs[lo..] {
            *c = BigInt::one();
        }
        Self::new(coeffs)
    }

    /// `{P^m} = L^m + ... + L + 1`.
    pub fn projective_space(m: usize) -> Self {
        Self::geometric_sum(0, m)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `L`; `None` for the zero class.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `L^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        MotivicClass { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluation at `L = x` by Horner's rule.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// The point-counting specialization `L -> q`.
    pub fn specialize(&self, q: u64) -> BigInt {
        self.evaluate(&BigInt::from(q))
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            out.push(quo);
        }
        Some(Self::new(out))
    }

    /// Exact division in `Z[L]`; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let sd = rem.len() - 1;
        if sd < dd {
            return None;
        }
        let mut quo = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &qc * dc;
            }
            quo[k] = qc;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(quo))
    }

    /// Pseudo-remainder of `self` by `divisor` (nonzero).
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading_coeff().unwrap().clone();
            rem = &rem.scale(&lead) - &divisor.scale(&top).shift(rd - dd);
        }
        rem
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_int(&c).unwrap()
    }

    /// Greatest common divisor in `Z[L]`, normalized to a positive leading
    /// coefficient. Computed with the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }
}

impl From<i64> for MotivicClass {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&MotivicClass> for &MotivicClass {
    type Output = MotivicClass;
    fn add(self, rhs: &MotivicClass) -> MotivicClass {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        MotivicClass::new(coeffs)
    }
}

impl Sub<&MotivicClass> for &MotivicClass {
    type Output = MotivicClass;
    fn sub(self, rhs: &MotivicClass) -> MotivicClass {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        MotivicClass::new(coeffs)
    }
}

impl Mul<&MotivicClass> for &MotivicClass {
    type Output = MotivicClass;
    fn mul(self, rhs: &MotivicClass) -> MotivicClass {
        if self.is_zero() || rhs.is_zero() {
            return MotivicClass::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        MotivicClass::new(coeffs)
    }
}

impl Neg for &MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        MotivicClass::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MotivicClass> for MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: MotivicClass) -> MotivicClass {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MotivicClass> for MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: &MotivicClass) -> MotivicClass {
                (&self).$method(rhs)
            }
        }
        impl $tr<MotivicClass> for &MotivicClass {
            type Output = MotivicClass;
            fn $method(self, rhs: MotivicClass) -> MotivicClass {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MotivicClass {
    type Output = MotivicClass;
    fn neg(self) -> MotivicClass {
        -&self
    }
}

impl AddAssign<&MotivicClass> for MotivicClass {
    fn add_assign(&mut self, rhs: &MotivicClass) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MotivicClass> for MotivicClass {
    fn sub_assign(&mut self, rhs: &MotivicClass) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for MotivicClass {
    fn sum<I: Iterator<Item = MotivicClass>>(iter: I) -> Self {
        iter.fold(MotivicClass::zero(), |acc, x| acc + x)
    }
}

/// Renders as `2*L^2 - L + 1`: descending powers, unit coefficients dropped
/// on non-constant terms.
impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        f.write_str("L")?;
                    } else {
                        write!(f, "L^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for MotivicClass {
    type Err = MotiveError;

    /// Accepts the output of `Display`; repeated powers are summed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MotiveError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && !(i > 0 && bytes[i - 1] == b'^') {
                if i > start {
                    terms.push((negative, &compact[start..i]));
                } else if i != 0 {
                    return Err(err());
                }
                negative = b == b'-';
                start = i + 1;
            }
        }
        if start >= compact.len() {
            return Err(err());
        }
        terms.push((negative, &compact[start..]));
        let mut total = MotivicClass::zero();
        for (neg, term) in terms {
            let (coeff, power) = match term.split_once('L') {
                None => (term.parse::<BigInt>().map_err(|_| err())?, 0usize),
                Some((c, p)) => {
                    let coeff = match c {
                        "" => BigInt::one(),
                        _ => c
                            .strip_suffix('*')
                            .ok_or_else(err)?
                            .parse()
                            .map_err(|_| err())?,
                    };
                    let power = match p {
                        "" => 1,
                        _ => p
                            .strip_prefix('^')
                            .ok_or_else(err)?
                            .parse()
                            .map_err(|_| err())?,
                    };
                    (coeff, power)
                }
            };
            if coeff.is_negative() {
                return Err(err());
            }
            let mut coeffs = vec![BigInt::zero(); power + 1];
            coeffs[power] = if neg { -coeff } else { coeff };
            total += &MotivicClass::new(coeffs);
        }
        Ok(total)
    }
}

fn char_and_degree(q: u64) -> Result<(u64, u32), MotiveError> {
    prime_power(q).ok_or(MotiveError::NotPrimePower(q))
}

/// 1 if `x` divides `q - 1`, else 0.
pub fn delta(x: u64, q: u64) -> Result<u64, MotiveError> {
    char_and_degree(q)?;
    if x == 0 {
        return Err(MotiveError::NonPositiveWeight);
    }
    Ok(u64::from((q - 1).is_multiple_of(x)))
}

/// `{P(a,b)} = L + 1`, independent of the weights.
pub fn class_wps(a: u64, b: u64) -> Result<MotivicClass, MotiveError> {
    if a == 0 || b == 0 {
        return Err(MotiveError::NonPositiveWeight);
    }
    Ok(MotivicClass::from_i64s(&[1, 1]))
}

/// `{I P(a,b)} = gcd(a,b)(L+1) + delta(a)(a - gcd) + delta(b)(b - gcd)`.
pub fn class_inertia_wps(a: u64, b: u64, q: u64) -> Result<MotivicClass, MotiveError> {
    if a == 0 || b == 0 {
        return Err(MotiveError::NonPositiveWeight);
    }
    let (p, _) = char_and_degree(q)?;
    if a.is_multiple_of(p) || b.is_multiple_of(p) {
        return Err(MotiveError::CharacteristicDividesWeight { p, a, b });
    }
    let g = a.gcd(&b);
    let constant = delta(a, q)? * (a - g) + delta(b, q)? * (b - g);
    let g = g as i64;
    Ok(MotivicClass::from_i64s(&[g + constant as i64, g]))
}

/// `{M_{1,1}} = L` over any field.
pub fn class_m11() -> MotivicClass {
    MotivicClass::lefschetz()
}

/// Class of the inertia stack of `M_{1,1}` over `F_q`.
pub fn class_inertia_m11(q: u64) -> Result<MotivicClass, MotiveError> {
    let (p, r) = char_and_degree(q)?;
    let constant = match p {
        2 if r % 2 == 1 => 1,
        2 => 5,
        3 if r % 2 == 1 => 2,
        3 => 4,
        _ => match q % 12 {
            1 => 6,
            5 => 2,
            7 => 4,
            11 => 0,
            _ => unreachable!("q coprime to 6"),
        },
    };
    Ok(MotivicClass::from_i64s(&[constant, 2]))
}

/// Stacks with a closed-form class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StackKind {
    /// `P(a,b)`
    Wps(u64, u64),
    /// `P(a) = B mu_a`
    WpsSingle(u64),
    M11,
    M11Bar,
    Inertia(Box<StackKind>),
}

/// A stack together with the field size its class is requested over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackDescriptor {
    pub kind: StackKind,
}

impl StackDescriptor {
    pub fn new(kind: StackKind) -> Result<Self, MotiveError> {
        fn check(kind: &StackKind, under_inertia: bool) -> Result<(), MotiveError> {
            match kind {
                StackKind::Wps(a, b) if *a == 0 || *b == 0 => Err(MotiveError::NonPositiveWeight),
                StackKind::WpsSingle(0) => Err(MotiveError::NonPositiveWeight),
                StackKind::Inertia(inner)
                    if under_inertia || matches!(**inner, StackKind::Inertia(_)) =>
                {
                    Err(MotiveError::Unsupported("iterated inertia".into(), 0))
                }
                StackKind::Inertia(inner) => check(inner, true),
                _ => Ok(()),
            }
        }
        check(&kind, false)?;
        Ok(StackDescriptor { kind })
    }

    /// Class over `F_q`. Only the inertia classes actually depend on `q`.
    pub fn class(&self, q: u64) -> Result<MotivicClass, MotiveError> {
        let (p, _) = char_and_degree(q)?;
        match &self.kind {
            StackKind::Wps(a, b) => class_wps(*a, *b),
            StackKind::WpsSingle(_) => Ok(MotivicClass::one()),
            StackKind::M11 => Ok(class_m11()),
            StackKind::M11Bar => Ok(MotivicClass::from_i64s(&[1, 1])),
            StackKind::Inertia(inner) => match &**inner {
                StackKind::Wps(a, b) => class_inertia_wps(*a, *b, q),
                StackKind::WpsSingle(a) => {
                    if a % p == 0 {
                        return Err(MotiveError::CharacteristicDividesWeight { p, a: *a, b: *a });
                    }
                    // one component per F_q-rational a-th root of unity
                    Ok(MotivicClass::constant(a.gcd(&(q - 1)) as i64))
                }
                StackKind::M11 => class_inertia_m11(q),
                StackKind::M11Bar => {
                    if p == 2 || p == 3 {
                        return Err(MotiveError::Unsupported("inertia of M11bar".into(), p));
                    }
                    class_inertia_wps(4, 6, q)
                }
                StackKind::Inertia(_) => unreachable!("rejected at construction"),
            },
        }
    }
}

impl fmt::Display for StackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackKind::Wps(a, b) => write!(f, "P({a},{b})"),
            StackKind::WpsSingle(a) => write!(f, "P({a})"),
            StackKind::M11 => f.write_str("M11"),
            StackKind::M11Bar => f.write_str("M11bar"),
            StackKind::Inertia(inner) => write!(f, "I({inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(coeffs: &[i64]) -> MotivicClass {
        MotivicClass::from_i64s(coeffs)
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(6, 7), Ok(1));
        assert_eq!(delta(4, 7), Ok(0));
        assert_eq!(delta(1, 2), Ok(1));
        assert_eq!(delta(2, 12), Err(MotiveError::NotPrimePower(12)));
    }

    #[test]
    fn wps_classes() {
        for (a, b) in [(4, 6), (1, 1), (2, 3)] {
            assert_eq!(class_wps(a, b).unwrap(), m(&[1, 1]));
        }
        assert_eq!(class_inertia_wps(4, 6, 13).unwrap(), m(&[8, 2]));
        assert_eq!(class_inertia_wps(4, 6, 11).unwrap(), m(&[2, 2]));
        assert_eq!(class_inertia_wps(1, 1, 5).unwrap(), m(&[1, 1]));
        assert_eq!(
            class_inertia_wps(4, 6, 9),
            Err(MotiveError::CharacteristicDividesWeight { p: 3, a: 4, b: 6 })
        );
    }

    #[test]
    fn m11_classes() {
        assert_eq!(class_m11(), m(&[0, 1]));
        assert_eq!(class_m11().specialize(2), BigInt::from(2));
        assert_eq!(class_m11().specialize(3), BigInt::from(3));
        assert_eq!(class_inertia_m11(2).unwrap(), m(&[1, 2]));
        assert_eq!(class_inertia_m11(4).unwrap(), m(&[5, 2]));
        assert_eq!(class_inertia_m11(3).unwrap(), m(&[2, 2]));
        assert_eq!(class_inertia_m11(9).unwrap(), m(&[4, 2]));
        assert_eq!(class_inertia_m11(3).unwrap().specialize(3), BigInt::from(8));
        assert!(class_inertia_m11(6).is_err());
    }

    #[test]
    fn inertia_m11_char_at_least_5_matches_delta_display() {
        for q in [5u64, 7, 11, 13, 25, 49, 121] {
            let expected = 2 * q + delta(6, q).unwrap() * 4 + delta(4, q).unwrap() * 2;
            assert_eq!(
                class_inertia_m11(q).unwrap().specialize(q),
                BigInt::from(expected),
                "q={q}"
            );
        }
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(m(&[1, 1]).specialize(4), BigInt::from(5));
        assert_eq!(m(&[5, 2]).specialize(4), BigInt::from(13));
        assert_eq!(MotivicClass::zero().specialize(2), BigInt::from(0));
    }

    #[test]
    fn rendering() {
        assert_eq!(m(&[1, 3, 2]).to_string(), "2*L^2 + 3*L + 1");
        assert_eq!(
            m(&[-1, -1, 0, 0, 1, 1, 1, 1, 1]).to_string(),
            "L^8 + L^7 + L^6 + L^5 + L^4 - L - 1"
        );
        assert_eq!(m(&[0, 0, -2]).to_string(), "-2*L^2");
        assert_eq!(MotivicClass::zero().to_string(), "0");
        assert_eq!(m(&[-7]).to_string(), "-7");
    }

    #[test]
    fn parsing() {
        let c: MotivicClass = "L^8 + L^7 + L^6 + L^5 + L^4 + L^3 + L^2 - L^3 - L^2 - L - 1"
            .parse()
            .unwrap();
        assert_eq!(c.to_string(), "L^8 + L^7 + L^6 + L^5 + L^4 - L - 1");
        assert_eq!("-2*L^2".parse::<MotivicClass>().unwrap(), m(&[0, 0, -2]));
        assert_eq!("0".parse::<MotivicClass>().unwrap(), MotivicClass::zero());
        for bad in ["", "L^", "2L", "+", "L + ", "x"] {
            assert!(bad.parse::<MotivicClass>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = m(&[-1, 0, 1]); // L^2 - 1
        let b = m(&[1, 1]); // L + 1
        assert_eq!(a.div_exact(&b), Some(m(&[-1, 1])));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(m(&[1, 2]).div_exact(&m(&[0, 2])), None);
        let g = (&a * &m(&[3, 0, 2])).gcd(&(&m(&[0, 6]) * &m(&[1, 1])));
        assert_eq!(g, m(&[1, 1]));
        assert_eq!(m(&[4, 8]).gcd(&m(&[6])), m(&[2]));
    }

    #[test]
    fn stack_descriptors() {
        let inertia = |k| StackDescriptor::new(StackKind::Inertia(Box::new(k))).unwrap();
        assert_eq!(inertia(StackKind::M11).class(4).unwrap(), m(&[5, 2]));
        assert_eq!(inertia(StackKind::Wps(4, 6)).class(13).unwrap(), m(&[8, 2]));
        assert_eq!(inertia(StackKind::WpsSingle(4)).class(13).unwrap(), m(&[4]));
        assert_eq!(inertia(StackKind::M11Bar).class(13).unwrap(), m(&[8, 2]));
        assert!(inertia(StackKind::M11Bar).class(9).is_err());
        assert!(StackDescriptor::new(StackKind::Wps(0, 1)).is_err());
        assert!(
            StackDescriptor::new(StackKind::Inertia(Box::new(StackKind::Inertia(Box::new(
                StackKind::M11
            )))))
            .is_err()
        );
        let plain = StackDescriptor::new(StackKind::M11).unwrap();
        assert_eq!(plain.class(7).unwrap(), class_m11());
    }
}
