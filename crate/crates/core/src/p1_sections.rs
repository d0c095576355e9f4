//! Global sections of `O(d)` on `P^1_{F_q}` as binary forms, closed points
//! (places), orders of vanishing, and exact counts of minimal tuples of
//! sections.
//!
//! A form of degree `d` stores the coefficient of `s^{d-i} t^i` at index `i`.
//! Dehomogenizing at `s = 1` gives the affine polynomial with the same
//! coefficient vector; the finite places are monic irreducibles in `t` and
//! the place at infinity has local parameter `s`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::galois_field::{Fe, GaloisField};
use crate::height_moduli_classes::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error("the all-zero tuple has no minimality")]
    AllZero,
    #[error("expected {expected} forms, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("form {index} has degree {got}, expected {expected}")]
    Degree {
        index: usize,
        expected: u64,
        got: u64,
    },
    #[error("enumeration of {size} tuples exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },
    #[error(
        "enumeration gives {enumerated} minimal tuples, inclusion-exclusion {inclusion_exclusion}"
    )]
    PathsDisagree {
        enumerated: BigInt,
        inclusion_exclusion: BigInt,
    },
}

/// Homogeneous form of degree `d` in `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<Fe>,
}

impl BinaryForm {
    pub fn zero(degree: u64) -> Self {
        BinaryForm {
            coeffs: vec![Fe::ZERO; degree as usize + 1],
        }
    }

    /// `coeffs[i]` multiplies `s^{d-i} t^i`.
    pub fn from_coeffs(coeffs: Vec<Fe>) -> Self {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        BinaryForm { coeffs }
    }

    /// `c * s^{d-i} t^i`.
    pub fn monomial(degree: u64, i: u64, c: Fe) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[i as usize] = c;
        f
    }

    /// Constant `c` as a degree-0 form.
    pub fn constant(c: Fe) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// Form whose coefficient digits (base `q`, coefficient `i` at place `q^i`)
    /// spell `index`.
    pub fn from_index(field: &GaloisField, degree: u64, mut index: u64) -> Self {
        let q = field.order() as u64;
        let coeffs = (0..=degree)
            .map(|_| {
                let c = field.element((index % q) as u32);
                index /= q;
                c
            })
            .collect();
        BinaryForm { coeffs }
    }

    /// All `q^{d+1}` forms of degree `d`.
    pub fn all(field: &GaloisField, degree: u64) -> impl Iterator<Item = BinaryForm> + '_ {
        let count = (field.order() as u64).pow(degree as u32 + 1);
        (0..count).map(move |i| Self::from_index(field, degree, i))
    }

    pub fn degree(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, field: &GaloisField, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "adding forms of different degree"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| field.add(a, b))
            .collect();
        BinaryForm { coeffs }
    }

    pub fn sub(&self, field: &GaloisField, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "subtracting forms of different degree"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| field.sub(a, b))
            .collect();
        BinaryForm { coeffs }
    }

    pub fn neg(&self, field: &GaloisField) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|&a| field.neg(a)).collect(),
        }
    }

    pub fn scale(&self, field: &GaloisField, c: Fe) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    /// Scalar multiple by an integer constant.
    pub fn scale_int(&self, field: &GaloisField, k: i64) -> Self {
        self.scale(field, field.from_int(k))
    }

    pub fn mul(&self, field: &GaloisField, other: &Self) -> Self {
        let mut coeffs = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(coeffs[i + j], field.mul(a, b));
            }
        }
        BinaryForm { coeffs }
    }

    pub fn pow(&self, field: &GaloisField, e: u32) -> Self {
        (1..e).fold(self.clone(), |acc, _| acc.mul(field, self))
    }

    /// `c` with `self = c * other`, if the two are proportional and `other != 0`.
    pub fn ratio(&self, field: &GaloisField, other: &Self) -> Option<Fe> {
        let pivot = other.coeffs.iter().position(|c| !c.is_zero())?;
        if self.degree() != other.degree() {
            return None;
        }
        let c = field.mul(self.coeffs[pivot], field.inv(other.coeffs[pivot]).unwrap());
        (other.scale(field, c) == *self).then_some(c)
    }

    /// Order of vanishing at `place`; `None` for the zero form.
    pub fn valuation(&self, field: &GaloisField, place: &Place) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        match place {
            Place::Infinity => {
                let top = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                Some(self.degree() - top as u64)
            }
            Place::Finite(pi) => {
                let mut f = upoly::trimmed(&self.coeffs);
                let mut k = 0;
                loop {
                    let (quo, rem) = upoly::divmod(field, &f, pi);
                    if !upoly::is_zero(&rem) {
                        return Some(k);
                    }
                    f = quo;
                    k += 1;
                }
            }
        }
    }

    /// Multiplies by the local equation of `place` raised to `k`: `s^k` at
    /// infinity, `pi(s, t)^k` at a finite place.
    pub fn times_place_power(&self, field: &GaloisField, place: &Place, k: u64) -> Self {
        let p = place.as_form();
        (0..k).fold(self.clone(), |acc, _| acc.mul(field, &p))
    }

    pub fn display(&self, field: &GaloisField) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|&c| field.display(c)).collect();
        format!("[{}]", parts.join(" "))
    }
}

/// Closed point of `P^1_{F_q}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    /// Monic irreducible polynomial in `t`, low coefficient first.
    Finite(Vec<Fe>),
}

impl Place {
    pub fn degree(&self) -> u64 {
        match self {
            Place::Infinity => 1,
            Place::Finite(pi) => pi.len() as u64 - 1,
        }
    }

    /// The homogenized local equation, a binary form of degree `deg(place)`.
    pub fn as_form(&self) -> BinaryForm {
        match self {
            Place::Infinity => BinaryForm::monomial(1, 0, Fe::ONE),
            Place::Finite(pi) => BinaryForm::from_coeffs(pi.clone()),
        }
    }

    /// Rational place `t = a`.
    pub fn rational(field: &GaloisField, a: Fe) -> Place {
        Place::Finite(vec![field.neg(a), Fe::ONE])
    }
}

/// Univariate polynomials over `GF(q)`, low coefficient first.
mod upoly {
    use crate::galois_field::{Fe, GaloisField};

    pub fn trimmed(a: &[Fe]) -> Vec<Fe> {
        let mut v = a.to_vec();
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    }

    pub fn is_zero(a: &[Fe]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Division by a monic polynomial.
    pub fn divmod(field: &GaloisField, a: &[Fe], m: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let dm = m.len() - 1;
        let mut rem = trimmed(a);
        if rem.len() <= dm {
            return (vec![Fe::ZERO], rem);
        }
        let mut quo = vec![Fe::ZERO; rem.len() - dm];
        for k in (0..quo.len()).rev() {
            let top = rem[k + dm];
            if top.is_zero() {
                continue;
            }
            quo[k] = top;
            for (i, &mc) in m.iter().enumerate() {
                rem[k + i] = field.sub(rem[k + i], field.mul(top, mc));
            }
        }
        rem.truncate(dm.max(1));
        (quo, rem)
    }
}

/// Every place of degree `<= max_degree`, infinity first, then finite
/// places by degree and lexicographically.
pub fn places_up_to(field: &GaloisField, max_degree: u64) -> Vec<Place> {
    if max_degree == 0 {
        return Vec::new();
    }
    let mut places = vec![Place::Infinity];
    let mut finite: Vec<Vec<Fe>> = Vec::new();
    let q = field.order() as u64;
    for d in 1..=max_degree {
        for index in 0..q.pow(d as u32) {
            let mut candidate = BinaryForm::from_index(field, d - 1, index).coeffs;
            candidate.push(Fe::ONE);
            let reducible = finite
                .iter()
                .take_while(|pi| 2 * (pi.len() as u64 - 1) <= d)
                .any(|pi| upoly::is_zero(&upoly::divmod(field, &candidate, pi).1));
            if !reducible {
                finite.push(candidate);
            }
        }
    }
    places.extend(finite.into_iter().map(Place::Finite));
    places
}

/// Minimality of `(s_0, ..., s_N)` with `s_i` of degree `λ_i n`: no place
/// `x` has `ν_x(s_j) >= λ_j` for every `j`. Only places of degree `<= n` can
/// fail, since `deg s_j = λ_j n`.
pub fn is_minimal_tuple(
    field: &GaloisField,
    forms: &[BinaryForm],
    lambda: &WeightVector,
    n: u64,
) -> Result<bool, SectionError> {
    check_tuple(forms, lambda, n)?;
    Ok(minimal_at_places(
        field,
        forms,
        lambda,
        &places_up_to(field, n),
    ))
}

fn check_tuple(forms: &[BinaryForm], lambda: &WeightVector, n: u64) -> Result<(), SectionError> {
    if forms.len() != lambda.weights().len() {
        return Err(SectionError::Arity {
            expected: lambda.weights().len(),
            got: forms.len(),
        });
    }
    for (index, (f, &w)) in forms.iter().zip(lambda.weights()).enumerate() {
        if f.degree() != w * n {
            return Err(SectionError::Degree {
                index,
                expected: w * n,
                got: f.degree(),
            });
        }
    }
    if forms.iter().all(BinaryForm::is_zero) {
        return Err(SectionError::AllZero);
    }
    Ok(())
}

fn minimal_at_places(
    field: &GaloisField,
    forms: &[BinaryForm],
    lambda: &WeightVector,
    places: &[Place],
) -> bool {
    !places.iter().any(|x| {
        forms
            .iter()
            .zip(lambda.weights())
            .all(|(f, &w)| f.valuation(field, x).is_none_or(|v| v >= w))
    })
}

/// How [`count_minimal_weighted`] computes its count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountStrategy {
    Enumeration,
    InclusionExclusion,
    /// Both paths when enumeration fits the budget, inclusion-exclusion otherwise.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCensus {
    pub lambda: WeightVector,
    pub n: u64,
    pub q: u64,
    /// Minimal tuples, not divided by `q - 1`.
    pub minimal_count: BigInt,
    /// `minimal_count / (q - 1)`.
    pub weighted: BigRational,
    pub enumerated: bool,
    pub inclusion_exclusion: bool,
}

/// Default cap on the number of tuples an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Weighted count of minimal tuples, i.e. the number of minimal tuples
/// divided by `|G_m(F_q)| = q - 1`.
pub fn count_minimal_weighted(
    lambda: &WeightVector,
    n: u64,
    field: &GaloisField,
    strategy: CountStrategy,
    budget: u64,
) -> Result<SectionCensus, SectionError> {
    let q = field.order() as u64;
    let digits: u64 = lambda.weights().iter().map(|w| w * n + 1).sum();
    let size = BigInt::from(q).pow(digits as u32);
    let fits = size <= BigInt::from(budget);
    let (run_enum, run_ie) = match strategy {
        CountStrategy::Enumeration if !fits => {
            return Err(SectionError::BudgetExceeded {
                size: size.to_string(),
                budget,
            });
        }
        CountStrategy::Enumeration => (true, false),
        CountStrategy::InclusionExclusion => (false, true),
        CountStrategy::Auto => (fits, true),
    };
    let by_enum = run_enum.then(|| BigInt::from(enumerate_minimal(lambda, n, field)));
    let by_ie = run_ie.then(|| inclusion_exclusion_minimal(lambda, n, field));
    let minimal_count = match (by_enum, by_ie) {
        (Some(e), Some(i)) if e != i => {
            return Err(SectionError::PathsDisagree {
                enumerated: e,
                inclusion_exclusion: i,
            });
        }
        (Some(e), _) => e,
        (None, Some(i)) => i,
        (None, None) => unreachable!(),
    };
    let weighted = BigRational::new(minimal_count.clone(), BigInt::from(q - 1));
    Ok(SectionCensus {
        lambda: lambda.clone(),
        n,
        q,
        minimal_count,
        weighted,
        enumerated: run_enum,
        inclusion_exclusion: run_ie,
    })
}

fn enumerate_minimal(lambda: &WeightVector, n: u64, field: &GaloisField) -> u64 {
    let q = field.order() as u64;
    let places = places_up_to(field, n);
    let degrees: Vec<u64> = lambda.weights().iter().map(|w| w * n).collect();
    let radix: Vec<u64> = degrees.iter().map(|d| q.pow(*d as u32 + 1)).collect();
    let total: u64 = radix.iter().product();
    (1..total)
        .into_par_iter()
        .filter(|&index| {
            let mut rest = index;
            let forms: Vec<BinaryForm> = degrees
                .iter()
                .zip(&radix)
                .map(|(&d, &r)| {
                    let f = BinaryForm::from_index(field, d, rest % r);
                    rest /= r;
                    f
                })
                .collect();
            minimal_at_places(field, &forms, lambda, &places)
        })
        .count() as u64
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Sum over finite sets `S` of places of `(-1)^{|S|}` times the number of
/// nonzero tuples vanishing to order `>= λ_j` at every place of `S`. Sets
/// of total degree `> n` contribute nothing, and the signed number of sets
/// of each degree comes from expanding `Π_e (1 - x^e)^{N_e}`, with `N_e`
/// counted from the place enumeration.
fn inclusion_exclusion_minimal(lambda: &WeightVector, n: u64, field: &GaloisField) -> BigInt {
    let q = BigInt::from(field.order());
    let places = places_up_to(field, n);
    let mut per_degree = vec![0u64; n as usize + 1];
    for x in &places {
        per_degree[x.degree() as usize] += 1;
    }
    // signed set counts by total degree
    let mut signed = vec![BigInt::zero(); n as usize + 1];
    signed[0] = BigInt::one();
    for e in 1..=n as usize {
        let count = per_degree[e];
        let mut next = vec![BigInt::zero(); n as usize + 1];
        for (d, c) in signed.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut k = 0u64;
            while d + e * k as usize <= n as usize && k <= count {
                let term = c * binomial(count, k);
                let slot = &mut next[d + e * k as usize];
                if k.is_multiple_of(2) {
                    *slot += term;
                } else {
                    *slot -= term;
                }
                k += 1;
            }
        }
        signed = next;
    }
    signed
        .iter()
        .enumerate()
        .map(|(d, sign)| {
            let dims: u64 = lambda
                .weights()
                .iter()
                .map(|w| w * (n - d as u64) + 1)
                .sum();
            sign * (q.pow(dims as u32) - BigInt::one())
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, r: u32) -> GaloisField {
        GaloisField::new(p, r).unwrap()
    }

    fn form(field: &GaloisField, c: &[u32]) -> BinaryForm {
        BinaryForm::from_coeffs(c.iter().map(|&x| field.element(x)).collect())
    }

    fn w(ws: &[u64]) -> WeightVector {
        WeightVector::new(ws.to_vec()).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let f2 = gf(2, 1);
        let t = Place::rational(&f2, Fe::ZERO);
        // t^2 s
        assert_eq!(form(&f2, &[0, 0, 1, 0]).valuation(&f2, &t), Some(2));
        // s^3
        assert_eq!(
            form(&f2, &[1, 0, 0, 0]).valuation(&f2, &Place::Infinity),
            Some(3)
        );
        let quad = Place::Finite(vec![Fe::ONE, Fe::ONE, Fe::ONE]);
        assert_eq!(quad.as_form().valuation(&f2, &quad), Some(1));
        assert_eq!(BinaryForm::zero(3).valuation(&f2, &t), None);
    }

    #[test]
    fn place_counts() {
        assert_eq!(places_up_to(&gf(2, 1), 1).len(), 3);
        assert_eq!(places_up_to(&gf(2, 1), 2).len(), 4);
        assert_eq!(places_up_to(&gf(3, 1), 2).len(), 7);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = GaloisField::of_order(q).unwrap();
            let deg1 = places_up_to(&f, 1);
            assert_eq!(deg1.len() as u64, q + 1);
            // monic irreducible quadratics
            let deg2 = places_up_to(&f, 2).len() as u64 - (q + 1);
            assert_eq!(deg2, (q * q - q) / 2, "q={q}");
        }
    }

    #[test]
    fn degree_bookkeeping() {
        let f3 = gf(3, 1);
        let places = places_up_to(&f3, 3);
        for f in BinaryForm::all(&f3, 3).filter(|f| !f.is_zero()) {
            let total: u64 = places
                .iter()
                .map(|x| x.degree() * f.valuation(&f3, x).unwrap())
                .sum();
            assert!(total <= 3);
            // equality iff the form splits into the listed places, which for
            // degree 3 and places up to degree 3 is always the case
            assert_eq!(total, 3, "{}", f.display(&f3));
        }
    }

    #[test]
    fn minimal_tuple_examples() {
        let f2 = gf(2, 1);
        let l = Place::rational(&f2, Fe::ONE).as_form();
        let one = BinaryForm::constant(Fe::ONE);
        // (s^2 + st + t^2)^2 vanishes only at the quadratic place, to order 2 < 4
        let quad = Place::Finite(vec![Fe::ONE, Fe::ONE, Fe::ONE]).as_form();
        let a4 = quad.mul(&f2, &quad);
        assert!(is_minimal_tuple(&f2, &[a4, BinaryForm::zero(6)], &w(&[4, 6]), 1).unwrap());
        assert!(!is_minimal_tuple(&f2, &[l.mul(&f2, &l)], &w(&[2]), 1).unwrap());
        let a4 = one.times_place_power(&f2, &Place::rational(&f2, Fe::ONE), 4);
        let a6 = one.times_place_power(&f2, &Place::rational(&f2, Fe::ONE), 6);
        assert!(!is_minimal_tuple(&f2, &[a4, a6], &w(&[4, 6]), 1).unwrap());
        assert_eq!(
            is_minimal_tuple(&f2, &[BinaryForm::zero(2)], &w(&[2]), 1),
            Err(SectionError::AllZero)
        );
        assert!(matches!(
            is_minimal_tuple(&f2, &[BinaryForm::zero(3)], &w(&[2]), 1),
            Err(SectionError::Degree { .. })
        ));
    }

    #[test]
    fn weighted_count_examples() {
        let auto = CountStrategy::Auto;
        let c = count_minimal_weighted(&w(&[2]), 1, &gf(2, 1), auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.minimal_count, BigInt::from(4));
        assert!(c.enumerated && c.inclusion_exclusion);
        let c = count_minimal_weighted(&w(&[1, 1]), 0, &gf(3, 1), auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.weighted, BigRational::from_integer(4.into()));
        let c = count_minimal_weighted(&w(&[4]), 1, &gf(2, 1), auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.weighted, BigRational::from_integer(28.into()));
    }

    #[test]
    fn budget_refusal() {
        let r = count_minimal_weighted(&w(&[4, 6]), 2, &gf(3, 1), CountStrategy::Enumeration, 1000);
        assert!(matches!(r, Err(SectionError::BudgetExceeded { .. })));
        let r =
            count_minimal_weighted(&w(&[4, 6]), 2, &gf(3, 1), CountStrategy::Auto, 1000).unwrap();
        assert!(!r.enumerated && r.inclusion_exclusion);
    }

    #[test]
    fn paths_agree_on_small_instances() {
        for q in [2u64, 3] {
            let f = GaloisField::of_order(q).unwrap();
            for ws in [&[1][..], &[2], &[3], &[4], &[1, 1], &[4, 6]] {
                for n in 0..=2 {
                    let lambda = w(ws);
                    let c = count_minimal_weighted(&lambda, n, &f, CountStrategy::Auto, 1 << 22)
                        .unwrap();
                    let digits: u64 = ws.iter().map(|x| x * n + 1).sum();
                    assert_eq!(c.enumerated, q.pow(digits as u32) <= 1 << 22);
                }
            }
        }
    }

    #[test]
    fn scalar_action_is_free_on_nonzero_tuples() {
        // the G_m orbits of minimal tuples all have size q - 1
        let f = gf(3, 1);
        let lambda = w(&[1, 3]);
        let n = 1;
        let tuples: Vec<(BinaryForm, BinaryForm)> = BinaryForm::all(&f, 1)
            .flat_map(|a| BinaryForm::all(&f, 3).map(move |b| (a.clone(), b)))
            .filter(|(a, b)| !(a.is_zero() && b.is_zero()))
            .filter(|(a, b)| is_minimal_tuple(&f, &[a.clone(), b.clone()], &lambda, n).unwrap())
            .collect();
        let mut orbits = std::collections::BTreeSet::new();
        for (a, b) in &tuples {
            let orbit: std::collections::BTreeSet<_> = f
                .nonzero_elements()
                .map(|c| (a.scale(&f, c), b.scale(&f, f.pow(c, 3))))
                .collect();
            assert_eq!(orbit.len(), 2);
            orbits.insert(orbit.into_iter().next().unwrap());
        }
        assert_eq!(orbits.len() * 2, tuples.len());
    }
}
