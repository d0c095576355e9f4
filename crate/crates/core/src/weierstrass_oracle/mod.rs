//! Generalized Weierstrass models over `P^1_{F_q}`, the coordinate-change
//! group, minimality, and orbit censuses.
//!
//! A model of height `n` is `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
//! with `a_i` a binary form of degree `i n`. A change `(u, r, s, t)` with
//! `u` in `F_q^*` and `r, s, t` of degrees `2n, n, 3n` substitutes
//! `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.

mod census;
pub(crate) mod dense;

pub use census::{
    canonical_representative, census_char2_j0, census_char2_jne0, census_char3_j0, orbit_census,
    slice_census, CensusFilter, CensusOptions, CensusResult, CensusSummary, GroupKind, JStratum,
    OrbitMethod, Stratum, DEFAULT_CENSUS_BUDGET,
};
pub use dense::MAX_DENSE_HEIGHT;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::galois_field::{Fe, GaloisField};
use crate::p1_sections::{places_up_to, BinaryForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("coefficient a{index} has degree {got}, expected {expected}")]
    Degree { index: u64, expected: u64, got: u64 },
    #[error("change has height {got}, model has height {expected}")]
    HeightMismatch { expected: u64, got: u64 },
    #[error("u must be nonzero")]
    ZeroScale,
    #[error("height {0} exceeds the supported maximum {max}", max = MAX_DENSE_HEIGHT)]
    HeightTooLarge(u64),
    #[error("census of {size} models exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },
    #[error("this census needs characteristic {expected}, field has characteristic {got}")]
    WrongCharacteristic { expected: u32, got: u32 },
    #[error("the fixed j-invariant must be nonzero")]
    ZeroJ,
    #[error("census inconsistency: {0}")]
    Inconsistent(String),
}

/// Coefficients `(a1, a2, a3, a4, a6)` at height `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    n: u64,
    a: [BinaryForm; 5],
}

/// Weight of each stored coefficient.
pub const COEFFICIENT_WEIGHTS: [u64; 5] = [1, 2, 3, 4, 6];

impl WeierstrassModel {
    pub fn new(n: u64, a: [BinaryForm; 5]) -> Result<Self, OracleError> {
        for (f, w) in a.iter().zip(COEFFICIENT_WEIGHTS) {
            if f.degree() != w * n {
                return Err(OracleError::Degree {
                    index: w,
                    expected: w * n,
                    got: f.degree(),
                });
            }
        }
        Ok(WeierstrassModel { n, a })
    }

    pub fn zero(n: u64) -> Self {
        WeierstrassModel {
            n,
            a: COEFFICIENT_WEIGHTS.map(|w| BinaryForm::zero(w * n)),
        }
    }

    /// Constant model from field elements `(a1, a2, a3, a4, a6)`.
    pub fn constant(a: [Fe; 5]) -> Self {
        WeierstrassModel {
            n: 0,
            a: a.map(BinaryForm::constant),
        }
    }

    pub fn height(&self) -> u64 {
        self.n
    }

    pub fn coefficients(&self) -> &[BinaryForm; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BinaryForm {
        &self.a[0]
    }

    pub fn a2(&self) -> &BinaryForm {
        &self.a[1]
    }

    pub fn a3(&self) -> &BinaryForm {
        &self.a[2]
    }

    pub fn a4(&self) -> &BinaryForm {
        &self.a[3]
    }

    pub fn a6(&self) -> &BinaryForm {
        &self.a[4]
    }

    pub fn b_invariants(&self, f: &GaloisField) -> BInvariants {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1.mul(f, a1).add(f, &a2.scale_int(f, 4));
        let b4 = a4.scale_int(f, 2).add(f, &a1.mul(f, a3));
        let b6 = a3.mul(f, a3).add(f, &a6.scale_int(f, 4));
        let b8 = a1
            .mul(f, a1)
            .mul(f, a6)
            .add(f, &a2.mul(f, a6).scale_int(f, 4))
            .sub(f, &a1.mul(f, a3).mul(f, a4))
            .add(f, &a2.mul(f, a3).mul(f, a3))
            .sub(f, &a4.mul(f, a4));
        BInvariants { b2, b4, b6, b8 }
    }

    pub fn discriminant(&self, f: &GaloisField) -> BinaryForm {
        let BInvariants { b2, b4, b6, b8 } = self.b_invariants(f);
        b2.mul(f, &b2)
            .mul(f, &b8)
            .neg(f)
            .sub(f, &b4.pow(f, 3).scale_int(f, 8))
            .sub(f, &b6.mul(f, &b6).scale_int(f, 27))
            .add(f, &b2.mul(f, &b4).mul(f, &b6).scale_int(f, 9))
    }

    pub fn c4(&self, f: &GaloisField) -> BinaryForm {
        let BInvariants { b2, b4, .. } = self.b_invariants(f);
        b2.mul(f, &b2).sub(f, &b4.scale_int(f, 24))
    }

    /// `j = c4^3 / Δ`, constant exactly when `c4^3` and `Δ` are proportional.
    pub fn j_invariant(&self, f: &GaloisField) -> Result<JInvariant, OracleError> {
        let delta = self.discriminant(f);
        if delta.is_zero() {
            return Err(OracleError::ZeroDiscriminant);
        }
        let c4 = self.c4(f);
        let cube = c4.pow(f, 3);
        Ok(match cube.ratio(f, &delta) {
            Some(j) => JInvariant::Constant(j),
            None => JInvariant::Nonconstant,
        })
    }

    /// No place admits a change making `ν_x(a_i) >= i` for every `i`.
    ///
    /// Only places of degree `<= n` with `ν_x(Δ) >= 12` are searched, and the
    /// witnesses range over global sections `(r, s, t)` with `u = 1`. Models
    /// with `a1 = a3 = 0` in odd characteristic search `r` alone.
    pub fn is_minimal(&self, f: &GaloisField) -> Result<bool, OracleError> {
        let (ctx, model, delta) = self.minimality_inputs(f)?;
        Ok(ctx.is_minimal(f, &model, &delta))
    }

    /// As [`is_minimal`](Self::is_minimal) but always searching the full
    /// `(r, s, t)` space.
    pub fn is_minimal_exhaustive(&self, f: &GaloisField) -> Result<bool, OracleError> {
        let (ctx, model, delta) = self.minimality_inputs(f)?;
        Ok(ctx.is_minimal_exhaustive(f, &model, &delta))
    }

    fn minimality_inputs(
        &self,
        f: &GaloisField,
    ) -> Result<(dense::MinimalityContext, dense::DenseModel, dense::Poly), OracleError> {
        if self.n > MAX_DENSE_HEIGHT {
            return Err(OracleError::HeightTooLarge(self.n));
        }
        let delta = self.discriminant(f);
        if delta.is_zero() {
            return Err(OracleError::ZeroDiscriminant);
        }
        let ctx = dense::MinimalityContext::new(f, self.n);
        Ok((ctx, self.to_dense(), dense::Poly::from_form(&delta)))
    }

    /// Places `x` of degree `<= n` with `ν_x(Δ) >= 12`.
    pub fn deep_places(
        &self,
        f: &GaloisField,
    ) -> Result<Vec<crate::p1_sections::Place>, OracleError> {
        let delta = self.discriminant(f);
        if delta.is_zero() {
            return Err(OracleError::ZeroDiscriminant);
        }
        Ok(places_up_to(f, self.n)
            .into_iter()
            .filter(|x| delta.valuation(f, x).unwrap() >= 12)
            .collect())
    }

    pub(crate) fn to_dense(&self) -> dense::DenseModel {
        dense::DenseModel {
            n: self.n,
            a: [0, 1, 2, 3, 4].map(|i| dense::Poly::from_form(&self.a[i])),
        }
    }

    pub(crate) fn from_dense(m: &dense::DenseModel) -> Self {
        WeierstrassModel {
            n: m.n,
            a: [0, 1, 2, 3, 4].map(|i| m.a[i].to_form()),
        }
    }

    pub fn display(&self, f: &GaloisField) -> String {
        let parts: Vec<String> = self.a.iter().map(|c| c.display(f)).collect();
        format!("n={} a=({})", self.n, parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BInvariants {
    pub b2: BinaryForm,
    pub b4: BinaryForm,
    pub b6: BinaryForm,
    pub b8: BinaryForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JInvariant {
    Constant(Fe),
    Nonconstant,
}

impl JInvariant {
    pub fn is_zero(&self) -> bool {
        matches!(self, JInvariant::Constant(j) if j.is_zero())
    }
}

/// `(u, r, s, t)` at height `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordinateChange {
    pub u: Fe,
    pub r: BinaryForm,
    pub s: BinaryForm,
    pub t: BinaryForm,
}

impl CoordinateChange {
    pub fn new(u: Fe, r: BinaryForm, s: BinaryForm, t: BinaryForm) -> Result<Self, OracleError> {
        if u.is_zero() {
            return Err(OracleError::ZeroScale);
        }
        let n = s.degree();
        for (index, f, w) in [(2, &r, 2), (3, &t, 3)] {
            if f.degree() != w * n {
                return Err(OracleError::Degree {
                    index,
                    expected: w * n,
                    got: f.degree(),
                });
            }
        }
        Ok(CoordinateChange { u, r, s, t })
    }

    pub fn identity(n: u64) -> Self {
        CoordinateChange {
            u: Fe::ONE,
            r: BinaryForm::zero(2 * n),
            s: BinaryForm::zero(n),
            t: BinaryForm::zero(3 * n),
        }
    }

    pub fn scaling(n: u64, u: Fe) -> Self {
        CoordinateChange {
            u,
            ..Self::identity(n)
        }
    }

    pub fn height(&self) -> u64 {
        self.s.degree()
    }

    /// The change that applies `self` first and `h` second.
    pub fn then(&self, f: &GaloisField, h: &CoordinateChange) -> CoordinateChange {
        let u2 = f.mul(self.u, self.u);
        let u3 = f.mul(u2, self.u);
        CoordinateChange {
            u: f.mul(self.u, h.u),
            r: self.r.add(f, &h.r.scale(f, u2)),
            s: self.s.add(f, &h.s.scale(f, self.u)),
            t: self
                .t
                .add(f, &h.t.scale(f, u3))
                .add(f, &self.s.mul(f, &h.r).scale(f, u2)),
        }
    }

    pub fn inverse(&self, f: &GaloisField) -> CoordinateChange {
        let ui = f.inv(self.u).expect("u is a unit");
        let ui2 = f.mul(ui, ui);
        let ui3 = f.mul(ui2, ui);
        // x' = u^-2 (x - r), y' = u^-3 (y - s x' u^2 - t)
        let r = self.r.neg(f).scale(f, ui2);
        let s = self.s.neg(f).scale(f, ui);
        let t = self.t.neg(f).add(f, &self.r.mul(f, &self.s)).scale(f, ui3);
        CoordinateChange { u: ui, r, s, t }
    }

    /// Every change at height `n`: `(q - 1) q^{6n + 3}` of them.
    pub fn all(f: &GaloisField, n: u64) -> impl Iterator<Item = CoordinateChange> + '_ {
        f.nonzero_elements().flat_map(move |u| {
            BinaryForm::all(f, 2 * n).flat_map(move |r| {
                BinaryForm::all(f, n).flat_map({
                    let r = r.clone();
                    move |s| {
                        let r = r.clone();
                        BinaryForm::all(f, 3 * n).map(move |t| CoordinateChange {
                            u,
                            r: r.clone(),
                            s: s.clone(),
                            t,
                        })
                    }
                })
            })
        })
    }

    #[cfg(test)]
    pub(crate) fn to_dense(&self) -> dense::DenseChange {
        dense::DenseChange {
            u: self.u,
            r: dense::Poly::from_form(&self.r),
            s: dense::Poly::from_form(&self.s),
            t: dense::Poly::from_form(&self.t),
        }
    }
}

/// `(q - 1) q^{6n + 3}`.
pub fn group_order(q: u64, n: u64) -> BigInt {
    BigInt::from(q - 1) * BigInt::from(q).pow(6 * n as u32 + 3)
}

/// Transforms `model` by `g`; `Δ` scales by `u^{-12}` and `j` is unchanged.
pub fn apply_change(
    f: &GaloisField,
    model: &WeierstrassModel,
    g: &CoordinateChange,
) -> Result<WeierstrassModel, OracleError> {
    if g.height() != model.n {
        return Err(OracleError::HeightMismatch {
            expected: model.n,
            got: g.height(),
        });
    }
    let [a1, a2, a3, a4, a6] = &model.a;
    let CoordinateChange { u, r, s, t } = g;
    let n1 = a1.add(f, &s.scale_int(f, 2));
    let n2 = a2
        .sub(f, &s.mul(f, a1))
        .add(f, &r.scale_int(f, 3))
        .sub(f, &s.mul(f, s));
    let n3 = a3.add(f, &r.mul(f, a1)).add(f, &t.scale_int(f, 2));
    let n4 = a4
        .sub(f, &s.mul(f, a3))
        .add(f, &r.mul(f, a2).scale_int(f, 2))
        .sub(f, &t.add(f, &r.mul(f, s)).mul(f, a1))
        .add(f, &r.mul(f, r).scale_int(f, 3))
        .sub(f, &s.mul(f, t).scale_int(f, 2));
    let n6 = a6
        .add(f, &r.mul(f, a4))
        .add(f, &r.mul(f, r).mul(f, a2))
        .add(f, &r.pow(f, 3))
        .sub(f, &t.mul(f, a3))
        .sub(f, &t.mul(f, t))
        .sub(f, &r.mul(f, t).mul(f, a1));
    let ui = f.inv(*u).ok_or(OracleError::ZeroScale)?;
    let a = [n1, n2, n3, n4, n6];
    let a = [0, 1, 2, 3, 4].map(|i| a[i].scale(f, f.pow(ui, COEFFICIENT_WEIGHTS[i] as i64)));
    Ok(WeierstrassModel { n: model.n, a })
}

impl fmt::Display for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JInvariant::Constant(j) => write!(f, "constant({})", j.index()),
            JInvariant::Nonconstant => write!(f, "nonconstant"),
        }
    }
}
