//! Cross-layer verification grid.
//!
//! Every entry compares two independently computed values of the same
//! quantity (closed form against census, motive against section count, ...)
//! and passes only on exact equality.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting_formulas::{assemble, format_rational, n_unweighted, n_weighted, CountQuery};
use crate::galois_field::{Fe, GaloisField};
use crate::height_moduli_classes::{
    rational_fit, zeta_truncation, FitOutcome, HeightTarget, WeightVector,
};
use crate::motivic_ring::{class_inertia_m11, MotivicClass};
use crate::p1_sections::{count_minimal_weighted, BinaryForm, CountStrategy, DEFAULT_BUDGET};
use crate::weierstrass_oracle::{
    apply_change, census_char2_j0, census_char2_jne0, census_char3_j0, orbit_census, slice_census,
    CensusFilter, CensusOptions, CensusResult, CensusSummary, CoordinateChange, OracleError,
    WeierstrassModel,
};

/// Which part of the acceptance matrix to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    /// Everything except the two large Weierstrass censuses; 10^3 random
    /// instances per property.
    Quick,
    /// The full matrix with 10^4 random instances per property.
    Default,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Grid::Quick),
            "default" => Ok(Grid::Default),
            _ => Err(format!("unknown grid {s:?} (expected quick or default)")),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grid::Quick => "quick",
            Grid::Default => "default",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A layer refused or errored; counts as a failure.
    Error(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("fail"),
            Verdict::Error(_) => f.write_str("error"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEntry {
    pub criterion: u8,
    pub layer_a: &'static str,
    pub layer_b: &'static str,
    /// `key:value` pairs joined by `/`, no spaces.
    pub instance: String,
    pub value_a: String,
    pub value_b: String,
    pub verdict: Verdict,
    pub millis: u128,
}

impl GridEntry {
    /// One `key=value` record. Error messages go last, quoted.
    pub fn record(&self, with_timing: bool) -> String {
        let mut out = format!(
            "record=verify criterion={} layer_a={} layer_b={} instance={} value_a={} value_b={} verdict={}",
            self.criterion, self.layer_a, self.layer_b, self.instance, self.value_a, self.value_b, self.verdict
        );
        if with_timing {
            out.push_str(&format!(" millis={}", self.millis));
        }
        if let Verdict::Error(msg) = &self.verdict {
            out.push_str(&format!(" error={msg:?}"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub entries: Vec<GridEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &GridEntry> {
        self.entries.iter().filter(|e| !e.verdict.passed())
    }

    /// Per-criterion verdicts, in criterion order.
    pub fn by_criterion(&self) -> Vec<(u8, bool)> {
        let mut out: Vec<(u8, bool)> = Vec::new();
        for e in &self.entries {
            match out.iter_mut().find(|(c, _)| *c == e.criterion) {
                Some((_, ok)) => *ok &= e.verdict.passed(),
                None => out.push((e.criterion, e.verdict.passed())),
            }
        }
        out.sort();
        out
    }

    pub fn summary_record(&self) -> String {
        let failed = self.failures().count();
        format!(
            "record=verify_summary entries={} failed={} overall={}",
            self.entries.len(),
            failed,
            if failed == 0 { "pass" } else { "fail" }
        )
    }
}

struct Recorder<'a> {
    entries: Vec<GridEntry>,
    only: Option<&'a [u8]>,
}

impl Recorder<'_> {
    fn wants(&self, criterion: u8) -> bool {
        self.only.is_none_or(|c| c.contains(&criterion))
    }

    fn push<T: ToString, E: ToString>(
        &mut self,
        criterion: u8,
        layers: (&'static str, &'static str),
        instance: String,
        compute: impl FnOnce() -> Result<(T, T), E>,
    ) {
        let start = Instant::now();
        let result = compute();
        let millis = start.elapsed().as_millis();
        let (value_a, value_b, verdict) = match result {
            Ok((a, b)) => {
                let (a, b) = (a.to_string(), b.to_string());
                let v = if a == b { Verdict::Pass } else { Verdict::Fail };
                (a, b, v)
            }
            Err(e) => ("-".into(), "-".into(), Verdict::Error(e.to_string())),
        };
        self.entries.push(GridEntry {
            criterion,
            layer_a: layers.0,
            layer_b: layers.1,
            instance,
            value_a,
            value_b,
            verdict,
            millis,
        });
    }
}

fn field(q: u64) -> GaloisField {
    GaloisField::of_order(q).expect("grid fields are valid")
}

fn cumulative<F>(heights: u64, run: F) -> Result<CensusSummary, OracleError>
where
    F: Fn(u64) -> Result<CensusResult, OracleError>,
{
    let results = (0..=heights).map(run).collect::<Result<Vec<_>, _>>()?;
    Ok(CensusSummary::of(&results))
}

/// `q^{hi n} + q^{hi n - 1} + ... + q^{lo n}`.
pub fn ledger_sum(q: u64, n: u64, hi: u64, lo: u64) -> BigInt {
    (lo * n..=hi * n)
        .map(|e| BigInt::from(q).pow(e as u32))
        .sum()
}

fn cumulative_class(target: &HeightTarget, q: u64, n: u64) -> BigInt {
    (0..=n)
        .map(|k| target.class(k).expect("closed-form target").specialize(q))
        .sum()
}

/// Runs the grid. `only` restricts to the listed criteria.
pub fn run_grid(grid: Grid, only: Option<&[u8]>, opts: &CensusOptions) -> VerificationReport {
    let mut rec = Recorder {
        entries: Vec::new(),
        only,
    };

    if grid == Grid::Default && rec.wants(1) {
        let f2 = field(2);
        let census = cumulative(1, |n| orbit_census(&f2, n, CensusFilter::minimal(), opts));
        let q = CountQuery::new(2, 1).expect("q = 2");
        let c = census.clone();
        rec.push(1, ("formula", "census"), "q:2/m:1/weighted".into(), || {
            c.map(|s| {
                (
                    format_rational(&n_weighted(&q)),
                    format_rational(&s.weighted),
                )
            })
        });
        rec.push(
            1,
            ("formula", "census"),
            "q:2/m:1/unweighted".into(),
            || {
                let s = census.map_err(|e| e.to_string())?;
                let n = n_unweighted(&q).map_err(|e| e.to_string())?;
                Ok::<_, String>((n.to_string(), s.orbit_count.to_string()))
            },
        );
    }

    if grid == Grid::Default && rec.wants(2) {
        let f3 = field(3);
        let census = cumulative(1, |n| slice_census(&f3, n, CensusFilter::minimal(), opts));
        let q = CountQuery::new(3, 1).expect("q = 3");
        let c = census.clone();
        rec.push(2, ("formula", "census"), "q:3/m:1/weighted".into(), || {
            c.map(|s| {
                (
                    format_rational(&n_weighted(&q)),
                    format_rational(&s.weighted),
                )
            })
        });
        rec.push(
            2,
            ("formula", "census"),
            "q:3/m:1/unweighted".into(),
            || {
                let s = census.map_err(|e| e.to_string())?;
                let n = n_unweighted(&q).map_err(|e| e.to_string())?;
                Ok::<_, String>((n.to_string(), s.orbit_count.to_string()))
            },
        );
    }

    if rec.wants(3) || rec.wants(4) {
        for q in [3u64, 9, 27, 2, 4, 8, 16] {
            for m in 1..=4 {
                let query = CountQuery::new(q, m).expect("grid order");
                if rec.wants(3) {
                    rec.push(3, ("assembly", "formula"), format!("q:{q}/m:{m}"), || {
                        let a = assemble(&query)?;
                        let n = n_unweighted(&query)?;
                        Ok::<_, crate::counting_formulas::CountError>((
                            format_rational(&a),
                            n.to_string(),
                        ))
                    });
                }
                if rec.wants(4) {
                    rec.push(4, ("formula", "integer"), format!("q:{q}/m:{m}"), || {
                        let n = n_unweighted(&query)?;
                        Ok::<_, crate::counting_formulas::CountError>((
                            n.to_string(),
                            n.to_string(),
                        ))
                    });
                }
            }
        }
    }

    if rec.wants(5) {
        for q in [2u64, 3, 4, 5, 8, 9] {
            rec.push(5, ("motive", "census"), format!("q:{q}/n:0"), || {
                let class = class_inertia_m11(q).map_err(|e| e.to_string())?;
                let census = orbit_census(&field(q), 0, CensusFilter::delta_nonzero(), opts)
                    .map_err(|e| e.to_string())?;
                Ok::<_, String>((
                    class.specialize(q).to_string(),
                    census.orbit_count.to_string(),
                ))
            });
        }
    }

    if rec.wants(6) {
        for lambda in ["1", "2", "3", "4", "6", "8", "9", "1,1", "4,6"] {
            let weights: WeightVector = lambda.parse().expect("weight list");
            let target: HeightTarget = format!("P({lambda})").parse().expect("target");
            for q in [2u64, 3] {
                for n in 0..=2 {
                    // P^1 at height 1 has no closed form: the class is rejected
                    if weights.weights() == [1, 1] && n == 1 {
                        continue;
                    }
                    let f = field(q);
                    rec.push(
                        6,
                        ("sections", "motive"),
                        format!("lambda:{lambda}/n:{n}/q:{q}"),
                        || {
                            let count = count_minimal_weighted(
                                &weights,
                                n,
                                &f,
                                CountStrategy::Auto,
                                DEFAULT_BUDGET,
                            )
                            .map_err(|e| e.to_string())?;
                            let class = target.class(n).map_err(|e| e.to_string())?;
                            Ok::<_, String>((
                                format_rational(&count.weighted),
                                class.specialize(q).to_string(),
                            ))
                        },
                    );
                }
            }
        }
    }

    if rec.wants(7) {
        let ledgers = [
            (HeightTarget::BQ12, 8, 4),
            (HeightTarget::BZ, 2, 1),
            (HeightTarget::BQ24, 9, 6),
        ];
        for (target, hi, lo) in &ledgers {
            for q in [2u64, 3, 4, 9] {
                for n in 1..=3 {
                    rec.push(
                        7,
                        ("motive", "ledger"),
                        format!("target:{target}/q:{q}/n:{n}"),
                        || {
                            Ok::<_, String>((
                                cumulative_class(target, q, n),
                                ledger_sum(q, n, *hi, *lo),
                            ))
                        },
                    );
                }
            }
        }
        rec.push(
            7,
            ("ledger", "census"),
            "census:char3_j0/q:3/n:1".into(),
            || {
                let c = census_char3_j0(&field(3), 1, CensusFilter::all(), opts)
                    .map_err(|e| e.to_string())?;
                Ok::<_, String>((
                    ledger_sum(3, 1, 8, 4).to_string(),
                    format_rational(&c.weighted),
                ))
            },
        );
        rec.push(
            7,
            ("ledger", "census"),
            "census:char2_j0/q:2/n:1".into(),
            || {
                let c = census_char2_j0(&field(2), 1, CensusFilter::all(), opts)
                    .map_err(|e| e.to_string())?;
                Ok::<_, String>((
                    ledger_sum(2, 1, 9, 6).to_string(),
                    format_rational(&c.weighted),
                ))
            },
        );
        rec.push(
            7,
            ("ledger", "census"),
            "census:char2_j1/q:2/n:1".into(),
            || {
                let c = census_char2_jne0(&field(2), 1, Fe::ONE, CensusFilter::all(), opts)
                    .map_err(|e| e.to_string())?;
                Ok::<_, String>((
                    ledger_sum(2, 1, 2, 1).to_string(),
                    format_rational(&c.weighted),
                ))
            },
        );
    }

    if rec.wants(8) {
        for (name, den) in [("P(2)", 1usize), ("P(4,6)", 1), ("BQ12", 2), ("BQ24", 2)] {
            let target: HeightTarget = name.parse().expect("target");
            rec.push(
                8,
                ("fit", "motive"),
                format!("target:{name}/trunc:8"),
                || zeta_check(&target, 8, den),
            );
        }
    }

    if rec.wants(9) {
        let cases = match grid {
            Grid::Quick => 1_000,
            Grid::Default => 10_000,
        };
        for q in [2u64, 3] {
            let f = field(q);
            for (name, prop) in PROPERTIES {
                rec.push(
                    9,
                    ("property", "expected"),
                    format!("{name}/q:{q}/cases:{cases}"),
                    || {
                        let failures = run_property(&f, *prop, cases, 0x5eed ^ q);
                        Ok::<_, String>((failures, 0))
                    },
                );
            }
            for filter in ["all", "delta_nonzero", "minimal", "j0", "j_nonzero"] {
                let filter: CensusFilter = filter.parse().expect("filter tag");
                rec.push(
                    9,
                    ("census_identity", "expected"),
                    format!("census:all/q:{q}/n:0/filter:{filter}"),
                    || {
                        let c = orbit_census(&f, 0, filter, opts).map_err(|e| e.to_string())?;
                        Ok::<_, String>((census_identity(&c), true))
                    },
                );
            }
        }
        let f2 = field(2);
        rec.push(
            9,
            ("census_identity", "expected"),
            "census:char2_j0/q:2/n:1".into(),
            || {
                let c = census_char2_j0(&f2, 1, CensusFilter::minimal(), opts)
                    .map_err(|e| e.to_string())?;
                Ok::<_, String>((census_identity(&c), true))
            },
        );
        rec.push(
            9,
            ("census_identity", "expected"),
            "census:char2_j1/q:2/n:1".into(),
            || {
                let c = census_char2_jne0(&f2, 1, Fe::ONE, CensusFilter::minimal(), opts)
                    .map_err(|e| e.to_string())?;
                Ok::<_, String>((census_identity(&c), true))
            },
        );
    }

    VerificationReport {
        entries: rec.entries,
    }
}

/// Fits `{W_0}, ..., {W_trunc}` and predicts the next two coefficients.
/// Compares `(denominator degree, predictions)` with `(den, true classes)`.
pub fn zeta_check(
    target: &HeightTarget,
    trunc: u64,
    den: usize,
) -> Result<(String, String), String> {
    let series = zeta_truncation(target, trunc + 2).map_err(|e| e.to_string())?;
    let known = &series[..=trunc as usize];
    let fit = minimal_fit(known).ok_or_else(|| "no rational fit".to_string())?;
    let predicted = fit
        .series(trunc as usize + 3)
        .ok_or_else(|| "fit is not integral".to_string())?;
    let show = |d: usize, cs: &[MotivicClass]| {
        let cs: Vec<String> = cs.iter().map(|c| c.to_string().replace(' ', "")).collect();
        format!("den:{d}/next:[{}]", cs.join(";"))
    };
    let t = trunc as usize;
    Ok((
        show(fit.denominator_degree(), &predicted[t + 1..]),
        show(den, &series[t + 1..]),
    ))
}

/// Smallest denominator degree admitting a fit with numerator degree one
/// higher, with at least one coefficient beyond the unknowns.
pub fn minimal_fit(coeffs: &[MotivicClass]) -> Option<crate::height_moduli_classes::RationalFit> {
    (0..coeffs.len()).find_map(|d| {
        if 2 * d + 3 > coeffs.len() {
            return None;
        }
        match rational_fit(coeffs, d + 1, d) {
            Ok(FitOutcome::Fit(fit)) => Some(fit),
            _ => None,
        }
    })
}

type Property = fn(&GaloisField, &mut ChaCha8Rng) -> bool;

const PROPERTIES: &[(&str, Property)] = &[
    ("universal_relation", prop_universal_relation),
    ("discriminant_equivariance", prop_discriminant_equivariance),
    ("group_law", prop_group_law),
    ("orbit_stabilizer", prop_orbit_stabilizer),
];

fn run_property(f: &GaloisField, prop: Property, cases: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).filter(|_| !prop(f, &mut rng)).count()
}

fn random_form(f: &GaloisField, degree: u64, rng: &mut impl Rng) -> BinaryForm {
    let coeffs = (0..=degree)
        .map(|_| f.element(rng.gen_range(0..f.order())))
        .collect();
    BinaryForm::from_coeffs(coeffs)
}

/// Random model at height `0..=2`.
pub fn random_model(f: &GaloisField, n: u64, rng: &mut impl Rng) -> WeierstrassModel {
    let a = [1, 2, 3, 4, 6].map(|w| random_form(f, w * n, rng));
    WeierstrassModel::new(n, a).expect("degrees match")
}

pub fn random_change(f: &GaloisField, n: u64, rng: &mut impl Rng) -> CoordinateChange {
    let u = f.element(rng.gen_range(1..f.order()));
    CoordinateChange::new(
        u,
        random_form(f, 2 * n, rng),
        random_form(f, n, rng),
        random_form(f, 3 * n, rng),
    )
    .expect("degrees match")
}

fn prop_universal_relation(f: &GaloisField, rng: &mut ChaCha8Rng) -> bool {
    let m = random_model(f, rng.gen_range(0..=2), rng);
    let b = m.b_invariants(f);
    b.b8.scale_int(f, 4) == b.b2.mul(f, &b.b6).sub(f, &b.b4.mul(f, &b.b4))
}

fn prop_discriminant_equivariance(f: &GaloisField, rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(0..=2);
    let m = random_model(f, n, rng);
    let g = random_change(f, n, rng);
    let image = apply_change(f, &m, &g).expect("same height");
    image.discriminant(f) == m.discriminant(f).scale(f, f.pow(g.u, -12))
}

fn prop_group_law(f: &GaloisField, rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(0..=2);
    let m = random_model(f, n, rng);
    let g = random_change(f, n, rng);
    let h = random_change(f, n, rng);
    let stepwise = apply_change(f, &apply_change(f, &m, &g).expect("height"), &h).expect("height");
    let composed = apply_change(f, &m, &g.then(f, &h)).expect("height");
    let back = apply_change(f, &composed, &g.then(f, &h).inverse(f)).expect("height");
    stepwise == composed && back == m
}

/// `|orbit| * |Stab| = |G|` for a random model of height 0, or height 1
/// over `GF(2)`.
fn prop_orbit_stabilizer(f: &GaloisField, rng: &mut ChaCha8Rng) -> bool {
    let n = if f.order() == 2 {
        rng.gen_range(0..=1)
    } else {
        0
    };
    let m = random_model(f, n, rng);
    let mut orbit = std::collections::HashSet::new();
    let mut stab = 0u64;
    let mut order = 0u64;
    for g in CoordinateChange::all(f, n) {
        let image = apply_change(f, &m, &g).expect("height");
        if image == m {
            stab += 1;
        }
        orbit.insert(image);
        order += 1;
    }
    let expected = crate::weierstrass_oracle::group_order(f.order() as u64, n);
    BigInt::from(order) == expected && BigInt::from(orbit.len() as u64 * stab) == expected
}

/// `weighted * |G| = model_count`, and `Σ 1/|Stab| = weighted`.
pub fn census_identity(result: &CensusResult) -> bool {
    let lhs = &result.weighted * BigRational::from_integer(result.group_order.clone());
    lhs == BigRational::from_integer(BigInt::from(result.model_count))
        && result.stabilizer_mass == result.weighted
}
