//! Allocation-free Weierstrass arithmetic for the census loops.
//!
//! A [`Poly`] is a binary form stored inline with at most [`CAP`]
//! coefficients, enough for the discriminant at height [`MAX_DENSE_HEIGHT`].

use crate::galois_field::{Fe, GaloisField};
use crate::p1_sections::{BinaryForm, Place};

pub const MAX_DENSE_HEIGHT: u64 = 3;
pub const CAP: usize = 12 * MAX_DENSE_HEIGHT as usize + 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Poly {
    len: u8,
    c: [Fe; CAP],
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.coeffs().iter().map(|c| c.index()))
            .finish()
    }
}

impl Poly {
    pub fn zero(degree: u64) -> Self {
        debug_assert!((degree as usize) < CAP);
        Poly {
            len: degree as u8 + 1,
            c: [Fe::ZERO; CAP],
        }
    }

    pub fn from_form(f: &BinaryForm) -> Self {
        let mut p = Self::zero(f.degree());
        p.c[..f.coeffs().len()].copy_from_slice(f.coeffs());
        p
    }

    pub fn to_form(&self) -> BinaryForm {
        BinaryForm::from_coeffs(self.coeffs().to_vec())
    }

    pub fn constant(c: Fe) -> Self {
        let mut p = Self::zero(0);
        p.c[0] = c;
        p
    }

    pub fn monomial(degree: u64, i: usize, c: Fe) -> Self {
        let mut p = Self::zero(degree);
        p.c[i] = c;
        p
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.len as u64 - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.c[..self.len as usize]
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Fe] {
        &mut self.c[..self.len as usize]
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }

    #[inline]
    pub fn add(&self, f: &GaloisField, o: &Poly) -> Poly {
        debug_assert_eq!(self.len, o.len);
        let mut out = *self;
        for (a, &b) in out.coeffs_mut().iter_mut().zip(o.coeffs()) {
            *a = f.add(*a, b);
        }
        out
    }

    #[inline]
    pub fn sub(&self, f: &GaloisField, o: &Poly) -> Poly {
        debug_assert_eq!(self.len, o.len);
        let mut out = *self;
        for (a, &b) in out.coeffs_mut().iter_mut().zip(o.coeffs()) {
            *a = f.sub(*a, b);
        }
        out
    }

    #[inline]
    pub fn scale(&self, f: &GaloisField, k: Fe) -> Poly {
        let mut out = *self;
        for a in out.coeffs_mut() {
            *a = f.mul(*a, k);
        }
        out
    }

    #[inline]
    pub fn mul(&self, f: &GaloisField, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.degree() + o.degree());
        for (i, &a) in self.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    out.c[i + j] = f.add(out.c[i + j], f.mul(a, b));
                }
            }
        }
        out
    }

    /// `self^e` for `e >= 1`.
    pub fn pow(&self, f: &GaloisField, e: u32) -> Poly {
        (1..e).fold(*self, |acc, _| acc.mul(f, self))
    }

    /// Whether `g` divides `self` as binary forms. `g` is either `s^k`
    /// (the infinite place) or monic in `t`.
    pub fn divisible_by(&self, f: &GaloisField, g: &PlacePower) -> bool {
        match g {
            PlacePower::Infinity(k) => {
                // s^k divides exactly when the top k coefficients vanish
                let len = self.len as usize;
                let k = *k as usize;
                k <= len && self.c[len - k..len].iter().all(|c| c.is_zero())
            }
            PlacePower::Finite(m) => {
                let dm = m.len as usize - 1;
                let mut rem = *self;
                let mut top = rem.len as usize - 1;
                while top >= dm {
                    let lead = rem.c[top];
                    if !lead.is_zero() {
                        for i in 0..=dm {
                            let k = top - dm + i;
                            rem.c[k] = f.sub(rem.c[k], f.mul(lead, m.c[i]));
                        }
                    }
                    if top == 0 {
                        break;
                    }
                    top -= 1;
                }
                rem.c[..dm.min(rem.len as usize)]
                    .iter()
                    .all(|c| c.is_zero())
            }
        }
    }
}

/// `π_x^k` for a place `x`, prepared for divisibility tests.
#[derive(Clone, Copy, Debug)]
pub enum PlacePower {
    Infinity(u64),
    Finite(Poly),
}

impl PlacePower {
    pub fn new(f: &GaloisField, place: &Place, k: u64) -> Self {
        match place {
            Place::Infinity => PlacePower::Infinity(k),
            Place::Finite(pi) => {
                let base = Poly::from_form(&BinaryForm::from_coeffs(pi.clone()));
                PlacePower::Finite(if k == 0 {
                    Poly::constant(Fe::ONE)
                } else {
                    base.pow(f, k as u32)
                })
            }
        }
    }
}

/// Powers `π_x^k` for `k` in `0..=12` at one place.
#[derive(Clone, Debug)]
pub struct PlaceTable {
    pub degree: u64,
    pub powers: Vec<PlacePower>,
}

impl PlaceTable {
    pub fn new(f: &GaloisField, place: &Place) -> Self {
        PlaceTable {
            degree: place.degree(),
            powers: (0..=12).map(|k| PlacePower::new(f, place, k)).collect(),
        }
    }

    /// `ν_x(p) >= k`, treating the zero form as infinitely divisible.
    #[inline]
    pub fn vanishes_to(&self, f: &GaloisField, p: &Poly, k: usize) -> bool {
        if k == 0 || p.is_zero() {
            return true;
        }
        if (k as u64) * self.degree > p.degree() {
            return false;
        }
        p.divisible_by(f, &self.powers[k])
    }
}

/// Integer constants of the universal formulas, reduced into the field.
#[derive(Clone, Copy, Debug)]
pub struct Constants {
    pub two: Fe,
    pub three: Fe,
    pub four: Fe,
    pub eight: Fe,
    pub nine: Fe,
    pub twenty_four: Fe,
    pub twenty_seven: Fe,
}

impl Constants {
    pub fn new(f: &GaloisField) -> Self {
        Constants {
            two: f.from_int(2),
            three: f.from_int(3),
            four: f.from_int(4),
            eight: f.from_int(8),
            nine: f.from_int(9),
            twenty_four: f.from_int(24),
            twenty_seven: f.from_int(27),
        }
    }
}

/// `(a1, a2, a3, a4, a6)` at height `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DenseModel {
    pub n: u64,
    pub a: [Poly; 5],
}

pub const WEIGHTS: [u64; 5] = [1, 2, 3, 4, 6];

impl DenseModel {
    pub fn zero(n: u64) -> Self {
        DenseModel {
            n,
            a: WEIGHTS.map(|w| Poly::zero(w * n)),
        }
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self, f: &GaloisField, k: &Constants) -> [Poly; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let a1a1 = a1.mul(f, a1);
        let a1a3 = a1.mul(f, a3);
        let b2 = a1a1.add(f, &a2.scale(f, k.four));
        let b4 = a4.scale(f, k.two).add(f, &a1a3);
        let b6 = a3.mul(f, a3).add(f, &a6.scale(f, k.four));
        let b8 = a1a1
            .mul(f, a6)
            .add(f, &a2.mul(f, a6).scale(f, k.four))
            .sub(f, &a1a3.mul(f, a4))
            .add(f, &a2.mul(f, &a3.mul(f, a3)))
            .sub(f, &a4.mul(f, a4));
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self, f: &GaloisField, k: &Constants) -> Poly {
        let [b2, b4, b6, b8] = self.b_invariants(f, k);
        let b2b2 = b2.mul(f, &b2);
        let t1 = b2b2.mul(f, &b8);
        let t2 = b4.mul(f, &b4).mul(f, &b4).scale(f, k.eight);
        let t3 = b6.mul(f, &b6).scale(f, k.twenty_seven);
        let t4 = b2.mul(f, &b4).mul(f, &b6).scale(f, k.nine);
        t4.sub(f, &t1).sub(f, &t2).sub(f, &t3)
    }

    pub fn c4(&self, f: &GaloisField, k: &Constants) -> Poly {
        let [b2, b4, _, _] = self.b_invariants(f, k);
        b2.mul(f, &b2).sub(f, &b4.scale(f, k.twenty_four))
    }

    /// Models under `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
    pub fn apply(&self, f: &GaloisField, k: &Constants, g: &DenseChange) -> DenseModel {
        let [a1, a2, a3, a4, a6] = &self.a;
        let DenseChange { u, r, s, t } = g;
        let rs = r.mul(f, s);
        let na1 = a1.add(f, &s.scale(f, k.two));
        let na2 = a2
            .sub(f, &s.mul(f, a1))
            .add(f, &r.scale(f, k.three))
            .sub(f, &s.mul(f, s));
        let na3 = a3.add(f, &r.mul(f, a1)).add(f, &t.scale(f, k.two));
        let na4 = a4
            .sub(f, &s.mul(f, a3))
            .add(f, &r.mul(f, a2).scale(f, k.two))
            .sub(f, &t.add(f, &rs).mul(f, a1))
            .add(f, &r.mul(f, r).scale(f, k.three))
            .sub(f, &s.mul(f, t).scale(f, k.two));
        let rr = r.mul(f, r);
        let na6 = a6
            .add(f, &r.mul(f, a4))
            .add(f, &rr.mul(f, a2))
            .add(f, &rr.mul(f, r))
            .sub(f, &t.mul(f, a3))
            .sub(f, &t.mul(f, t))
            .sub(f, &r.mul(f, t).mul(f, a1));
        let mut out = DenseModel {
            n: self.n,
            a: [na1, na2, na3, na4, na6],
        };
        if *u != Fe::ONE {
            let ui = f.inv(*u).expect("u is a unit");
            for (p, w) in out.a.iter_mut().zip(WEIGHTS) {
                *p = p.scale(f, f.pow(ui, w as i64));
            }
        }
        out
    }
}

/// A coordinate change `(u, r, s, t)` at height `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DenseChange {
    pub u: Fe,
    pub r: Poly,
    pub s: Poly,
    pub t: Poly,
}

impl DenseChange {
    pub fn identity(n: u64) -> Self {
        DenseChange {
            u: Fe::ONE,
            r: Poly::zero(2 * n),
            s: Poly::zero(n),
            t: Poly::zero(3 * n),
        }
    }

    /// `self` followed by `h`.
    #[cfg(test)]
    pub fn then(&self, f: &GaloisField, h: &DenseChange) -> DenseChange {
        let u2 = f.mul(self.u, self.u);
        let u3 = f.mul(u2, self.u);
        DenseChange {
            u: f.mul(self.u, h.u),
            r: self.r.add(f, &h.r.scale(f, u2)),
            s: self.s.add(f, &h.s.scale(f, self.u)),
            t: self
                .t
                .add(f, &h.t.scale(f, u3))
                .add(f, &self.s.mul(f, &h.r).scale(f, u2)),
        }
    }
}

/// Exhaustive search for a change with `u = 1` that makes
/// `ν_x(a_i) >= i` for every `i`. Loops are nested `s`, `r`, `t` so each
/// coefficient condition prunes as soon as its inputs are fixed.
pub fn has_local_witness(
    f: &GaloisField,
    k: &Constants,
    model: &DenseModel,
    place: &PlaceTable,
    sections: &SectionSpaces,
) -> bool {
    let [a1, a2, a3, a4, a6] = &model.a;
    for s in &sections.s {
        let na1 = a1.add(f, &s.scale(f, k.two));
        if !place.vanishes_to(f, &na1, 1) {
            continue;
        }
        let base2 = a2.sub(f, &s.mul(f, a1)).sub(f, &s.mul(f, s));
        let sa3 = s.mul(f, a3);
        for r in &sections.r {
            let na2 = base2.add(f, &r.scale(f, k.three));
            if !place.vanishes_to(f, &na2, 2) {
                continue;
            }
            let ra1 = r.mul(f, a1);
            let rs = r.mul(f, s);
            let rr = r.mul(f, r);
            let base4 = a4
                .sub(f, &sa3)
                .add(f, &r.mul(f, a2).scale(f, k.two))
                .add(f, &rr.scale(f, k.three));
            let base6 = a6
                .add(f, &r.mul(f, a4))
                .add(f, &rr.mul(f, a2))
                .add(f, &rr.mul(f, r));
            for t in &sections.t {
                let na3 = a3.add(f, &ra1).add(f, &t.scale(f, k.two));
                if !place.vanishes_to(f, &na3, 3) {
                    continue;
                }
                let na4 = base4
                    .sub(f, &t.add(f, &rs).mul(f, a1))
                    .sub(f, &s.mul(f, t).scale(f, k.two));
                if !place.vanishes_to(f, &na4, 4) {
                    continue;
                }
                let na6 = base6
                    .sub(f, &t.mul(f, a3))
                    .sub(f, &t.mul(f, t))
                    .sub(f, &r.mul(f, t).mul(f, a1));
                if place.vanishes_to(f, &na6, 6) {
                    return true;
                }
            }
        }
    }
    false
}

/// Witness search restricted to `s = t = 0`, valid for models with
/// `a1 = a3 = 0` in odd characteristic.
pub fn has_local_witness_slice(
    f: &GaloisField,
    k: &Constants,
    model: &DenseModel,
    place: &PlaceTable,
    sections: &SectionSpaces,
) -> bool {
    let [_, a2, _, a4, a6] = &model.a;
    if !place.vanishes_to(f, a2, 2) {
        return false;
    }
    sections.r.iter().any(|r| {
        let na4 = a4.add(f, &r.mul(f, a2).scale(f, k.two));
        if !place.vanishes_to(f, &na4, 4) {
            return false;
        }
        let rr = r.mul(f, r);
        let na6 = a6
            .add(f, &r.mul(f, a4))
            .add(f, &rr.mul(f, a2))
            .add(f, &rr.mul(f, r));
        place.vanishes_to(f, &na6, 6)
    })
}

/// Every global section of `O(n)`, `O(2n)`, `O(3n)`.
#[derive(Clone, Debug)]
pub struct SectionSpaces {
    pub r: Vec<Poly>,
    pub s: Vec<Poly>,
    pub t: Vec<Poly>,
}

impl SectionSpaces {
    pub fn new(f: &GaloisField, n: u64) -> Self {
        let all = |d: u64| {
            BinaryForm::all(f, d)
                .map(|b| Poly::from_form(&b))
                .collect::<Vec<_>>()
        };
        SectionSpaces {
            r: all(2 * n),
            s: all(n),
            t: all(3 * n),
        }
    }
}

/// Shared per-field, per-height tables for minimality tests.
#[derive(Clone, Debug)]
pub struct MinimalityContext {
    pub consts: Constants,
    pub places: Vec<PlaceTable>,
    pub sections: SectionSpaces,
}

impl MinimalityContext {
    pub fn new(f: &GaloisField, n: u64) -> Self {
        let places = crate::p1_sections::places_up_to(f, n)
            .iter()
            .map(|x| PlaceTable::new(f, x))
            .collect();
        MinimalityContext {
            consts: Constants::new(f),
            places,
            sections: SectionSpaces::new(f, n),
        }
    }

    /// Places where `ν_x(Δ) >= 12`.
    pub fn candidates<'a>(
        &'a self,
        f: &'a GaloisField,
        delta: &'a Poly,
    ) -> impl Iterator<Item = &'a PlaceTable> + 'a {
        self.places
            .iter()
            .filter(move |x| x.vanishes_to(f, delta, 12))
    }

    /// Minimality of a model with `Δ != 0`.
    pub fn is_minimal(&self, f: &GaloisField, model: &DenseModel, delta: &Poly) -> bool {
        let slice = f.characteristic() != 2 && model.a[0].is_zero() && model.a[2].is_zero();
        !self.candidates(f, delta).any(|x| {
            if slice {
                has_local_witness_slice(f, &self.consts, model, x, &self.sections)
            } else {
                has_local_witness(f, &self.consts, model, x, &self.sections)
            }
        })
    }

    /// Minimality using the unrestricted `(r, s, t)` search even on the slice.
    pub fn is_minimal_exhaustive(&self, f: &GaloisField, model: &DenseModel, delta: &Poly) -> bool {
        !self
            .candidates(f, delta)
            .any(|x| has_local_witness(f, &self.consts, model, x, &self.sections))
    }
}
