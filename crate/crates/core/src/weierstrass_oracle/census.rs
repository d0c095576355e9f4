//! Exhaustive model censuses and orbit counts.
//!
//! A census enumerates a family of models closed under a subgroup of the
//! coordinate-change group, keeps those passing a [`CensusFilter`], and
//! reports the model count, the weighted count `models / |G|` and the number
//! of orbits. Orbits come from union-find over generator images, with the
//! smallest index of each orbit as its root; that root is also the
//! lexicographically least member, so [`canonical_representative`] can
//! confirm it independently. Every orbit is then checked against its
//! brute-force stabilizer: `|orbit| · |Stab| = |G|`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::dense::{
    Constants, DenseChange, DenseModel, MinimalityContext, Poly, MAX_DENSE_HEIGHT, WEIGHTS,
};
use super::{OracleError, WeierstrassModel};
use crate::galois_field::{Fe, GaloisField};

pub const DEFAULT_CENSUS_BUDGET: u64 = 1 << 25;

/// Which `j`-invariants a census keeps. Every stratum implies `Δ != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JStratum {
    Zero,
    Nonzero,
    /// Constant `j` equal to the field element with this index.
    Value(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CensusFilter {
    pub nonsingular: bool,
    pub minimal: bool,
    pub j: Option<JStratum>,
}

impl CensusFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn delta_nonzero() -> Self {
        CensusFilter {
            nonsingular: true,
            ..Self::default()
        }
    }

    pub fn minimal() -> Self {
        CensusFilter {
            nonsingular: true,
            minimal: true,
            j: None,
        }
    }

    pub fn j0() -> Self {
        CensusFilter {
            nonsingular: true,
            minimal: false,
            j: Some(JStratum::Zero),
        }
    }

    pub fn j_nonzero() -> Self {
        CensusFilter {
            nonsingular: true,
            minimal: false,
            j: Some(JStratum::Nonzero),
        }
    }

    pub fn with_minimal(self) -> Self {
        CensusFilter {
            nonsingular: true,
            minimal: true,
            ..self
        }
    }

    pub fn with_j(self, j: JStratum) -> Self {
        CensusFilter {
            nonsingular: true,
            j: Some(j),
            ..self
        }
    }
}

impl fmt::Display for CensusFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tags = Vec::new();
        if self.minimal {
            tags.push("minimal".to_string());
        } else if self.nonsingular && self.j.is_none() {
            tags.push("delta_nonzero".to_string());
        }
        match self.j {
            Some(JStratum::Zero) => tags.push("j0".into()),
            Some(JStratum::Nonzero) => tags.push("j_nonzero".into()),
            Some(JStratum::Value(v)) => tags.push(format!("j={v}")),
            None => {}
        }
        if tags.is_empty() {
            tags.push("all".into());
        }
        f.write_str(&tags.join(","))
    }
}

impl FromStr for CensusFilter {
    type Err = String;

    /// Comma-separated tags from `all`, `delta_nonzero`, `minimal`, `j0`,
    /// `j_nonzero`, `j=<index>`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = CensusFilter::all();
        for tag in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out = match tag {
                "all" => out,
                "delta_nonzero" => CensusFilter {
                    nonsingular: true,
                    ..out
                },
                "minimal" => out.with_minimal(),
                "j0" => out.with_j(JStratum::Zero),
                "j_nonzero" => out.with_j(JStratum::Nonzero),
                _ => match tag.strip_prefix("j=").map(str::parse::<u32>) {
                    Some(Ok(v)) => out.with_j(JStratum::Value(v)),
                    _ => return Err(format!("unknown filter tag {tag:?}")),
                },
            };
        }
        Ok(out)
    }
}

/// Subgroup of coordinate changes acting on a census family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// All `(u, r, s, t)`.
    Full,
    /// `(u, r, 0, 0)`.
    XShift,
    /// `(u, 0, s, 0)`.
    YShift,
    /// `(u, s^2, s, t)`, characteristic 2.
    SquareShift,
}

impl GroupKind {
    pub fn order(&self, q: u64, n: u64) -> BigInt {
        let e = match self {
            GroupKind::Full => 6 * n + 3,
            GroupKind::XShift => 2 * n + 1,
            GroupKind::YShift => n + 1,
            GroupKind::SquareShift => 4 * n + 2,
        };
        BigInt::from(q - 1) * BigInt::from(q).pow(e as u32)
    }

    fn parts(&self) -> (bool, bool, bool) {
        match self {
            GroupKind::Full => (true, true, true),
            GroupKind::XShift => (true, false, false),
            GroupKind::YShift => (false, true, false),
            GroupKind::SquareShift => (false, true, true),
        }
    }

    fn change(&self, f: &GaloisField, u: Fe, r: Poly, s: Poly, t: Poly) -> DenseChange {
        match self {
            GroupKind::SquareShift => DenseChange {
                u,
                r: s.mul(f, &s),
                s,
                t,
            },
            _ => DenseChange { u, r, s, t },
        }
    }

    /// A generating set: a primitive scaling and `c · monomial` for `c` in
    /// an `F_p`-basis of `F_q` in each free section slot.
    pub(crate) fn generators(&self, f: &GaloisField, n: u64) -> Vec<DenseChange> {
        let (with_r, with_s, with_t) = self.parts();
        let id = DenseChange::identity(n);
        let mut out = Vec::new();
        if f.order() > 2 {
            out.push(DenseChange {
                u: f.primitive_element(),
                ..id
            });
        }
        let basis = f.prime_field_basis();
        let slot = |degree: u64| -> Vec<Poly> {
            (0..=degree as usize)
                .flat_map(|i| basis.iter().map(move |&c| Poly::monomial(degree, i, c)))
                .collect()
        };
        if with_r {
            out.extend(
                slot(2 * n)
                    .into_iter()
                    .map(|r| self.change(f, Fe::ONE, r, id.s, id.t)),
            );
        }
        if with_s {
            out.extend(
                slot(n)
                    .into_iter()
                    .map(|s| self.change(f, Fe::ONE, id.r, s, id.t)),
            );
        }
        if with_t {
            out.extend(
                slot(3 * n)
                    .into_iter()
                    .map(|t| self.change(f, Fe::ONE, id.r, id.s, t)),
            );
        }
        out
    }

    /// Every element of the subgroup.
    pub(crate) fn elements(&self, f: &GaloisField, n: u64) -> Vec<DenseChange> {
        let (with_r, with_s, with_t) = self.parts();
        let sections = |on: bool, degree: u64| -> Vec<Poly> {
            if on {
                crate::p1_sections::BinaryForm::all(f, degree)
                    .map(|b| Poly::from_form(&b))
                    .collect()
            } else {
                vec![Poly::zero(degree)]
            }
        };
        let (rs, ss, ts) = (
            sections(with_r, 2 * n),
            sections(with_s, n),
            sections(with_t, 3 * n),
        );
        let mut out = Vec::new();
        for u in f.nonzero_elements() {
            for r in &rs {
                for s in &ss {
                    for t in &ts {
                        out.push(self.change(f, u, *r, *s, *t));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Full => "u,r,s,t",
            GroupKind::XShift => "u,r",
            GroupKind::YShift => "u,s",
            GroupKind::SquareShift => "u,s,t;r=s^2",
        })
    }
}

/// How one coefficient is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Zero,
    Free,
    Nonzero,
    /// `a6 = c · a1^6`.
    SixthPowerOfA1(Fe),
}

/// Family of models, encoded in mixed radix with `a1` least significant and
/// `a6` most significant.
#[derive(Debug, Clone)]
struct Layout {
    n: u64,
    q: u64,
    slots: [Slot; 5],
    radix: [u64; 5],
    size: u64,
}

impl Layout {
    fn new(q: u64, n: u64, slots: [Slot; 5], budget: u64) -> Result<Self, OracleError> {
        let mut radix = [1u64; 5];
        let mut size = BigInt::from(1);
        for (i, slot) in slots.iter().enumerate() {
            let full = BigInt::from(q).pow((WEIGHTS[i] * n + 1) as u32);
            let r = match slot {
                Slot::Zero | Slot::SixthPowerOfA1(_) => BigInt::from(1),
                Slot::Free => full,
                Slot::Nonzero => full - 1,
            };
            size *= &r;
            if size > BigInt::from(budget.min(u32::MAX as u64)) {
                let mut total = BigInt::from(1);
                for (j, s) in slots.iter().enumerate() {
                    let full = BigInt::from(q).pow((WEIGHTS[j] * n + 1) as u32);
                    total *= match s {
                        Slot::Zero | Slot::SixthPowerOfA1(_) => BigInt::from(1),
                        Slot::Free => full,
                        Slot::Nonzero => full - 1,
                    };
                }
                return Err(OracleError::BudgetExceeded {
                    size: total.to_string(),
                    budget,
                });
            }
            radix[i] = u64::try_from(r).unwrap();
        }
        Ok(Layout {
            n,
            q,
            slots,
            radix,
            size: u64::try_from(size).unwrap(),
        })
    }

    fn decode(&self, f: &GaloisField, mut index: u64) -> DenseModel {
        let mut m = DenseModel::zero(self.n);
        for i in 0..5 {
            let mut v = index % self.radix[i];
            index /= self.radix[i];
            match self.slots[i] {
                Slot::Zero => {}
                Slot::SixthPowerOfA1(c) => m.a[i] = m.a[0].pow(f, 6).scale(f, c),
                Slot::Free | Slot::Nonzero => {
                    if self.slots[i] == Slot::Nonzero {
                        v += 1;
                    }
                    for c in m.a[i].coeffs_mut() {
                        *c = f.element((v % self.q) as u32);
                        v /= self.q;
                    }
                }
            }
        }
        m
    }

    fn encode(&self, m: &DenseModel) -> Option<u64> {
        let mut index = 0u64;
        for i in (0..5).rev() {
            let mut v = 0u64;
            for c in m.a[i].coeffs().iter().rev() {
                v = v * self.q + c.index() as u64;
            }
            let digit = match self.slots[i] {
                Slot::Zero | Slot::SixthPowerOfA1(_) => {
                    // derived slots are checked by the caller through decode
                    if self.slots[i] == Slot::Zero && v != 0 {
                        return None;
                    }
                    0
                }
                Slot::Free => v,
                Slot::Nonzero => v.checked_sub(1)?,
            };
            index = index * self.radix[i] + digit;
        }
        Some(index)
    }
}

/// What a census enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormTag {
    /// Every model.
    All,
    /// `a1 = a3 = 0`.
    Slice,
    /// `y^2 = x^3 + a4 x + a6`, `a4 != 0`.
    Char3J0,
    /// `y^2 + a1 xy = x^3 + a2 x^2 + a1^6 / j`, `a1 != 0`.
    Char2JNonzero(u32),
    /// `y^2 + a3 y = x^3 + a4 x + a6`, `a3 != 0`.
    Char2J0,
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormTag::All => f.write_str("all"),
            FormTag::Slice => f.write_str("slice"),
            FormTag::Char3J0 => f.write_str("char3_j0"),
            FormTag::Char2JNonzero(j) => write!(f, "char2_j{j}"),
            FormTag::Char2J0 => f.write_str("char2_j0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub characteristic: u32,
    pub q: u64,
    pub n: u64,
    pub form: FormTag,
    pub group: GroupKind,
    pub filter: CensusFilter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitMethod {
    #[default]
    UnionFind,
    /// Lexicographically least image under the whole group, per model.
    Canonical,
    /// Both, required to agree model by model.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub budget: u64,
    pub shards: usize,
    pub method: OrbitMethod,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: DEFAULT_CENSUS_BUDGET,
            shards: 1,
            method: OrbitMethod::UnionFind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub stratum: Stratum,
    /// Models in the enumerated family before filtering.
    pub family_size: u64,
    pub model_count: u64,
    pub group_order: BigInt,
    pub weighted: BigRational,
    pub orbit_count: u64,
    /// `Σ_orbits 1/|Stab|`, from brute-force stabilizers.
    pub stabilizer_mass: BigRational,
}

/// Totals over several censuses, typically heights `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSummary {
    pub model_count: u64,
    pub weighted: BigRational,
    pub orbit_count: u64,
}

impl CensusSummary {
    pub fn of(results: &[CensusResult]) -> Self {
        CensusSummary {
            model_count: results.iter().map(|r| r.model_count).sum(),
            weighted: results
                .iter()
                .fold(BigRational::zero(), |acc, r| acc + &r.weighted),
            orbit_count: results.iter().map(|r| r.orbit_count).sum(),
        }
    }
}

fn check_char(f: &GaloisField, p: u32) -> Result<(), OracleError> {
    if f.characteristic() != p {
        return Err(OracleError::WrongCharacteristic {
            expected: p,
            got: f.characteristic(),
        });
    }
    Ok(())
}

/// Census of every model of height `n`.
pub fn orbit_census(
    f: &GaloisField,
    n: u64,
    filter: CensusFilter,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    run(
        f,
        n,
        [Slot::Free; 5],
        GroupKind::Full,
        FormTag::All,
        filter,
        opts,
    )
}

/// Census of the `a1 = a3 = 0` slice in odd characteristic under `(u, r)`.
/// Each full orbit meets the slice in exactly one `(u, r)`-orbit.
pub fn slice_census(
    f: &GaloisField,
    n: u64,
    filter: CensusFilter,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    if f.characteristic() == 2 {
        return Err(OracleError::WrongCharacteristic {
            expected: 3,
            got: 2,
        });
    }
    let slots = [Slot::Zero, Slot::Free, Slot::Zero, Slot::Free, Slot::Free];
    run(f, n, slots, GroupKind::XShift, FormTag::Slice, filter, opts)
}

/// `y^2 = x^3 + a4 x + a6` with `a4 != 0`, characteristic 3, under `(u, r)`.
pub fn census_char3_j0(
    f: &GaloisField,
    n: u64,
    filter: CensusFilter,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    check_char(f, 3)?;
    let slots = [
        Slot::Zero,
        Slot::Zero,
        Slot::Zero,
        Slot::Nonzero,
        Slot::Free,
    ];
    run(
        f,
        n,
        slots,
        GroupKind::XShift,
        FormTag::Char3J0,
        filter,
        opts,
    )
}

/// `y^2 + a1 xy = x^3 + a2 x^2 + a1^6 / j` with `a1 != 0`, characteristic 2,
/// under `(u, s)`.
pub fn census_char2_jne0(
    f: &GaloisField,
    n: u64,
    j: Fe,
    filter: CensusFilter,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    check_char(f, 2)?;
    let inv = f.inv(j).ok_or(OracleError::ZeroJ)?;
    let slots = [
        Slot::Nonzero,
        Slot::Free,
        Slot::Zero,
        Slot::Zero,
        Slot::SixthPowerOfA1(inv),
    ];
    run(
        f,
        n,
        slots,
        GroupKind::YShift,
        FormTag::Char2JNonzero(j.index()),
        filter,
        opts,
    )
}

/// `y^2 + a3 y = x^3 + a4 x + a6` with `a3 != 0`, characteristic 2, under
/// `(u, s^2, s, t)`.
pub fn census_char2_j0(
    f: &GaloisField,
    n: u64,
    filter: CensusFilter,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    check_char(f, 2)?;
    let slots = [
        Slot::Zero,
        Slot::Zero,
        Slot::Nonzero,
        Slot::Free,
        Slot::Free,
    ];
    run(
        f,
        n,
        slots,
        GroupKind::SquareShift,
        FormTag::Char2J0,
        filter,
        opts,
    )
}

/// Lexicographically least model in the orbit of `model` under `group`, in
/// the order that sorts `a6` first, then `a4`, ..., `a1`, each by its
/// coefficients from the top down.
pub fn canonical_representative(
    f: &GaloisField,
    model: &WeierstrassModel,
    group: GroupKind,
) -> Result<WeierstrassModel, OracleError> {
    let n = model.height();
    if n > MAX_DENSE_HEIGHT {
        return Err(OracleError::HeightTooLarge(n));
    }
    let layout = Layout::new(f.order() as u64, n, [Slot::Free; 5], u64::MAX)?;
    let k = Constants::new(f);
    let m = model.to_dense();
    let best = group
        .elements(f, n)
        .iter()
        .map(|g| layout.encode(&m.apply(f, &k, g)).expect("full layout"))
        .min()
        .expect("group is nonempty");
    Ok(WeierstrassModel::from_dense(&layout.decode(f, best)))
}

struct Engine<'a> {
    f: &'a GaloisField,
    k: Constants,
    layout: Layout,
    filter: CensusFilter,
    minimality: Option<MinimalityContext>,
}

impl Engine<'_> {
    fn keep(&self, m: &DenseModel) -> bool {
        if !self.filter.nonsingular {
            return true;
        }
        let f = self.f;
        let delta = m.discriminant(f, &self.k);
        if delta.is_zero() {
            return false;
        }
        if let Some(stratum) = self.filter.j {
            let cube = m.c4(f, &self.k).pow(f, 3);
            let j = proportional(f, &cube, &delta);
            let ok = match stratum {
                JStratum::Zero => cube.is_zero(),
                JStratum::Nonzero => !cube.is_zero(),
                JStratum::Value(v) => j.map(|x| x.index()) == Some(v),
            };
            if !ok {
                return false;
            }
        }
        match &self.minimality {
            Some(ctx) => ctx.is_minimal(f, m, &delta),
            None => true,
        }
    }

    fn image(&self, index: u64, g: &DenseChange) -> u64 {
        let m = self.layout.decode(self.f, index);
        let moved = m.apply(self.f, &self.k, g);
        let out = self
            .layout
            .encode(&moved)
            .expect("the group preserves the family");
        debug_assert_eq!(self.layout.decode(self.f, out), moved);
        out
    }
}

/// `c` with `a = c · b`, for `b != 0`.
fn proportional(f: &GaloisField, a: &Poly, b: &Poly) -> Option<Fe> {
    let pivot = b.coeffs().iter().position(|c| !c.is_zero())?;
    let c = f.mul(a.coeffs()[pivot], f.inv(b.coeffs()[pivot])?);
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .all(|(&x, &y)| x == f.mul(c, y))
        .then_some(c)
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn run(
    f: &GaloisField,
    n: u64,
    slots: [Slot; 5],
    group: GroupKind,
    form: FormTag,
    filter: CensusFilter,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    if n > MAX_DENSE_HEIGHT {
        return Err(OracleError::HeightTooLarge(n));
    }
    let q = f.order() as u64;
    let layout = Layout::new(q, n, slots, opts.budget)?;
    let engine = Engine {
        f,
        k: Constants::new(f),
        layout,
        filter,
        minimality: filter.minimal.then(|| MinimalityContext::new(f, n)),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.shards.max(1))
        .build()
        .map_err(|e| OracleError::Inconsistent(e.to_string()))?;
    let stratum = Stratum {
        characteristic: f.characteristic(),
        q,
        n,
        form,
        group,
        filter,
    };
    pool.install(|| census_body(&engine, group, stratum, opts))
}

fn census_body(
    engine: &Engine<'_>,
    group: GroupKind,
    stratum: Stratum,
    opts: &CensusOptions,
) -> Result<CensusResult, OracleError> {
    let f = engine.f;
    let size = engine.layout.size;
    let n = stratum.n;
    let kept: Vec<bool> = (0..size)
        .into_par_iter()
        .map(|i| engine.keep(&engine.layout.decode(f, i)))
        .collect();
    let model_count = kept.iter().filter(|&&b| b).count() as u64;

    let mut roots: Vec<u32> = Vec::new();
    if opts.method != OrbitMethod::Canonical {
        let mut parent: Vec<u32> = (0..size as u32).collect();
        for g in group.generators(f, n) {
            let images: Vec<u32> = (0..size)
                .into_par_iter()
                .map(|i| {
                    if kept[i as usize] {
                        engine.image(i, &g) as u32
                    } else {
                        i as u32
                    }
                })
                .collect();
            for (i, &j) in images.iter().enumerate() {
                if j as usize == i {
                    continue;
                }
                if !kept[j as usize] {
                    return Err(OracleError::Inconsistent(format!(
                        "filter is not invariant: {i} -> {j}"
                    )));
                }
                let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
                if a < b {
                    parent[b as usize] = a;
                } else if b < a {
                    parent[a as usize] = b;
                }
            }
        }
        for i in 0..size as u32 {
            let r = find(&mut parent, i);
            parent[i as usize] = r;
        }
        roots = parent;
    }

    let elements = group.elements(f, n);
    let group_order = group.order(f.order() as u64, n);
    if BigInt::from(elements.len()) != group_order {
        return Err(OracleError::Inconsistent(
            "group enumeration has the wrong size".into(),
        ));
    }

    if opts.method != OrbitMethod::UnionFind {
        let canonical: Vec<(u64, u32)> = (0..size)
            .into_par_iter()
            .filter(|&i| kept[i as usize])
            .map(|i| {
                (
                    i,
                    elements.iter().map(|g| engine.image(i, g)).min().unwrap() as u32,
                )
            })
            .collect();
        if opts.method == OrbitMethod::Both {
            if let Some((i, c)) = canonical.iter().find(|(i, c)| roots[*i as usize] != *c) {
                return Err(OracleError::Inconsistent(format!(
                    "union-find root {} differs from canonical representative {c} for model {i}",
                    roots[*i as usize]
                )));
            }
        } else {
            roots = (0..size as u32).collect();
            for (i, c) in canonical {
                roots[i as usize] = c;
            }
        }
    }

    let mut orbit_size = std::collections::BTreeMap::<u32, u64>::new();
    for i in 0..size {
        if kept[i as usize] {
            *orbit_size.entry(roots[i as usize]).or_default() += 1;
        }
    }
    let orbit_count = orbit_size.len() as u64;
    let reps: Vec<(u32, u64)> = orbit_size.into_iter().collect();
    let order = u64::try_from(&group_order)
        .map_err(|_| OracleError::Inconsistent("group too large".into()))?;
    let stabilizers: Vec<u64> = reps
        .par_iter()
        .map(|&(rep, _)| {
            elements
                .iter()
                .filter(|g| engine.image(rep as u64, g) == rep as u64)
                .count() as u64
        })
        .collect();
    let mut mass_numerator = 0u64;
    for (&(rep, members), stab) in reps.iter().zip(&stabilizers) {
        if members * stab != order {
            return Err(OracleError::Inconsistent(format!(
                "orbit of model {rep} has {members} members and stabilizer {stab}, group order {order}"
            )));
        }
        mass_numerator += order / stab;
    }
    let weighted = BigRational::new(BigInt::from(model_count), group_order.clone());
    let stabilizer_mass = BigRational::new(BigInt::from(mass_numerator), group_order.clone());
    if stabilizer_mass != weighted {
        return Err(OracleError::Inconsistent(format!(
            "weighted count {weighted} differs from stabilizer mass {stabilizer_mass}"
        )));
    }
    Ok(CensusResult {
        stratum,
        family_size: size,
        model_count,
        group_order,
        weighted,
        orbit_count,
        stabilizer_mass,
    })
}
