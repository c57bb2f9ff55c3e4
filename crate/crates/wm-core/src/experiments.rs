//! Verification suites that cross-validate the analytic and combinatorial
//! halves of the library against each other.
//!
//! Each suite runs one family of checks — tracked monodromy against slide
//! predictions, exact q-weight identities, Littlewood-Richardson consistency,
//! limit clustering against dual equivalence — and returns a [`SuiteReport`]
//! with a pass flag and human-readable detail lines. The `wm verify`
//! subcommand and the acceptance test target both dispatch into this module,
//! so a suite failure shows up identically in both places.
//!
//! Random real root paths deserve a note. Along a path of *distinct real*
//! roots the value order of the roots can never change (continuous distinct
//! reals keep their order), so a random real path is exactly a sequence of
//! strictly sorted waypoint vectors under linear interpolation: sortedness of
//! the endpoints guarantees sortedness (hence distinctness) in between. Norm
//! crossings — the events that drive tableau slides — still happen freely
//! between roots of opposite sign. All waypoint values are dyadic rationals,
//! so the exact path fed to the slide predictor and the f64 path fed to the
//! tracker are the *same* path, not approximations of each other.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jdt::{
    dual_classes, dual_equivalent, evacuation_step, lr_number, rect_ord, s_kl_ord, slide_along,
    ValuePath,
};
use crate::leadterms::{
    gt_check, lead_terms, solve_full, solve_tworoots, Jet, OmegaAssignment,
};
use crate::partitions::{box_distance, BoxCoord, Partition, RectBound, SkewShape};
use crate::tableaux::{rational_to_f64, ExtValue, OrdTableau, ValuedTableau};
use crate::tracker::{
    geometric_roots, limit_point, loop_rotation, loop_skl, match_to_fiber, monodromy,
    projective_distance, solve_fiber, track_ensemble, FiberPoint, RootPath, TrackOptions,
};
use crate::wronski::{schubert_membership_at, PluckerVector};

/// Outcome of one verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            pass: true,
            details: Vec::new(),
        }
    }

    fn ok(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.pass = false;
        self.details.push(format!("FAIL: {}", msg.into()));
    }

    fn require(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond {
            self.fail(msg());
        }
    }
}

fn bq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The default base scale for a bound: 10³ for small fibers, 10² once the
/// largest root would otherwise overflow the comfortable f64 range.
pub fn default_beta(bound: RectBound) -> f64 {
    if bound.boxes() <= 6 {
        1e3
    } else {
        1e2
    }
}

fn full_syt_count(bound: RectBound) -> u64 {
    SkewShape::straight(bound.full()).syt_count()
}

// ---------------------------------------------------------------------------
// random real root configurations and paths
// ---------------------------------------------------------------------------

/// A strictly increasing configuration of nonzero dyadic rational roots:
/// `neg` negative values followed by positive ones, with magnitudes `2^(b·e)`
/// for a random assignment of the exponents 1..=m to the slots, times a
/// jitter in [3/4, 5/4] with denominator 256. Consecutive magnitudes differ
/// by a factor ≥ 2^b·3/5, so the norms are well separated and the
/// leading-term seeds converge.
fn sorted_config(rng: &mut StdRng, m: usize, log2_beta: u32, neg: usize) -> Vec<BigRational> {
    assert!(neg <= m);
    let mut exps: Vec<u32> = (1..=m as u32).collect();
    exps.shuffle(rng);
    let (neg_exps, pos_exps) = exps.split_at_mut(neg);
    // negative block: values increase ⇔ magnitudes decrease
    neg_exps.sort_unstable_by(|a, b| b.cmp(a));
    pos_exps.sort_unstable();
    let mut magnitude = |e: u32| -> BigRational {
        let k = rng.gen_range(192i64..=320);
        BigRational::new(BigInt::from(k) << (log2_beta * e), BigInt::from(256))
    };
    let mut vals: Vec<BigRational> = Vec::with_capacity(m);
    for &e in neg_exps.iter() {
        vals.push(-magnitude(e));
    }
    for &e in pos_exps.iter() {
        vals.push(magnitude(e));
    }
    vals
}

fn to_f64(vals: &[BigRational]) -> Vec<f64> {
    vals.iter().map(rational_to_f64).collect()
}

fn to_c64(vals: &[f64]) -> Vec<Complex64> {
    vals.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// Indices of `vals` sorted by increasing norm.
fn norm_order(vals: &[BigRational]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&i, &j| vals[i].abs().cmp(&vals[j].abs()));
    idx
}

/// Position of `ord` in `ords`, or a labeled error.
fn position_of(ords: &[OrdTableau], ord: &OrdTableau, what: &str) -> Result<usize> {
    ords.iter()
        .position(|o| o == ord)
        .ok_or_else(|| Error::invalid(format!("{what}: tableau not found among fiber labels")))
}

fn ordinalized(fiber: &[(ValuedTableau<Jet<f64>>, FiberPoint)]) -> Result<Vec<OrdTableau>> {
    fiber.iter().map(|(t, _)| t.ordinalize()).collect()
}

fn points_of(fiber: &[(ValuedTableau<Jet<f64>>, FiberPoint)]) -> Vec<FiberPoint> {
    fiber.iter().map(|(_, p)| p.clone()).collect()
}

// ---------------------------------------------------------------------------
// suite: the worked leading-term example
// ---------------------------------------------------------------------------

/// The 2×2 worked example: λ=(2,2), μ=(1), jets {4u+2u², 1, 1}. The
/// leading-coefficient system has the unique solution ω = (6, 1/3, 1) with
/// Jacobian determinant 4, and predicts Plücker leading terms
/// (0, 2u, 6u, 1/3, 1, 1).
pub fn paper_example() -> SuiteReport {
    let mut rep = SuiteReport::new("paper-example");
    let bound = RectBound::new(2, 4).unwrap();
    let shape = SkewShape::new(
        Partition::new(vec![2, 2], bound).unwrap(),
        Partition::new(vec![1], bound).unwrap(),
    )
    .unwrap();
    let t: ValuedTableau<Jet<BigRational>> = ValuedTableau::new(
        shape,
        vec![Jet::int_jet(4, 1), Jet::int_jet(1, 0), Jet::int_jet(1, 0)],
    )
    .unwrap();
    let sols = match solve_full(&t) {
        Ok(s) => s,
        Err(e) => {
            rep.fail(format!("solve_full: {e}"));
            return rep;
        }
    };
    rep.require(sols.len() == 1, || format!("expected 1 solution, found {}", sols.len()));
    if let Some(sol) = sols.first() {
        rep.require(sol.omega.omegas() == [bq(6, 1), bq(1, 3), bq(1, 1)], || {
            format!("ω = {:?}", sol.omega.omegas())
        });
        rep.require(sol.jacobian == bq(4, 1), || format!("Jacobian = {}", sol.jacobian));
        rep.require(!sol.degenerate, || "solution flagged degenerate".into());
        match lead_terms(&t, &sol.omega) {
            Ok(lt) => {
                let expect: Vec<(&[usize], Jet<BigRational>)> = vec![
                    (&[], Jet::Zero),
                    (&[1], Jet::finite(bq(2, 1), bq(1, 1))),
                    (&[1, 1], Jet::finite(bq(6, 1), bq(1, 1))),
                    (&[2], Jet::finite(bq(1, 3), bq(0, 1))),
                    (&[2, 1], Jet::finite(bq(1, 1), bq(0, 1))),
                    (&[2, 2], Jet::finite(bq(1, 1), bq(0, 1))),
                ];
                for (parts, jet) in expect {
                    let nu = Partition::new(parts.to_vec(), bound).unwrap();
                    let got = lt.iter().find(|(p, _)| *p == nu).map(|(_, j)| j.clone());
                    rep.require(got == Some(jet.clone()), || {
                        format!("lead term at {nu:?}: {got:?} ≠ {jet:?}")
                    });
                }
            }
            Err(e) => rep.fail(format!("lead_terms: {e}")),
        }
    }
    if rep.pass {
        rep.ok("ω = (6, 1/3, 1), Jacobian 4, lead terms (2u, 6u, 1/3, 1, 1): exact");
    }
    rep
}

// ---------------------------------------------------------------------------
// suite: fiber degree
// ---------------------------------------------------------------------------

/// Solve the fiber over geometric real roots and check the count against the
/// number of standard tableaux, residuals, pairwise separation, and that the
/// tableau labels are pairwise distinct (hence a bijection with SYT(■)).
pub fn fiber_degree(bound: RectBound, beta: f64, opts: &TrackOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("fiber-degree");
    let roots = geometric_roots(bound, beta);
    let fiber = match solve_fiber(bound, &roots, opts) {
        Ok(f) => f,
        Err(e) => {
            rep.fail(format!("solve_fiber({},{}) at β={beta}: {e}", bound.d, bound.n));
            return rep;
        }
    };
    let expect = full_syt_count(bound) as usize;
    rep.require(fiber.len() == expect, || {
        format!("({},{}) fiber has {} points, expected {expect}", bound.d, bound.n, fiber.len())
    });
    let mut worst_res = 0.0f64;
    for (_, p) in &fiber {
        worst_res = worst_res.max(p.residual);
    }
    rep.require(worst_res <= 1e-12, || format!("worst residual {worst_res:.3e} > 1e-12"));
    let pl: Vec<PluckerVector<Complex64>> = match fiber.iter().map(|(_, p)| p.pluckers()).collect()
    {
        Ok(v) => v,
        Err(e) => {
            rep.fail(format!("pluckers: {e}"));
            return rep;
        }
    };
    let mut min_sep = f64::INFINITY;
    for i in 0..pl.len() {
        for j in i + 1..pl.len() {
            min_sep = min_sep.min(projective_distance(&pl[i], &pl[j]));
        }
    }
    rep.require(min_sep >= 1e-6, || format!("pairwise separation {min_sep:.3e} < 1e-6"));
    match ordinalized(&fiber) {
        Ok(ords) => {
            let mut seen = ords.clone();
            seen.sort_by_key(|o| format!("{o:?}"));
            seen.dedup();
            rep.require(seen.len() == ords.len(), || "duplicate tableau labels".into());
        }
        Err(e) => rep.fail(format!("ordinalize: {e}")),
    }
    if rep.pass {
        rep.ok(format!(
            "({},{}): {} points, worst residual {worst_res:.2e}, min separation {min_sep:.2e}",
            bound.d, bound.n, fiber.len()
        ));
    }
    rep
}

// ---------------------------------------------------------------------------
// suite: reality of the fiber
// ---------------------------------------------------------------------------

/// For random real distinct-root instances, every fiber point is real: after
/// dividing the Plücker vector by its largest coordinate, all imaginary
/// parts are ≤ 1e−8.
pub fn reality(bound: RectBound, trials: usize, seed: u64, opts: &TrackOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("reality");
    let mut rng = StdRng::seed_from_u64(seed);
    let log2_beta = if bound.boxes() <= 6 { 10 } else { 7 };
    let expect = full_syt_count(bound) as usize;
    let mut worst_imag = 0.0f64;
    for trial in 0..trials {
        let m = bound.boxes();
        let neg = rng.gen_range(0..=m);
        let roots = to_f64(&sorted_config(&mut rng, m, log2_beta, neg));
        let fiber = match solve_fiber(bound, &roots, opts) {
            Ok(f) => f,
            Err(e) => {
                rep.fail(format!("trial {trial}: solve_fiber: {e}"));
                continue;
            }
        };
        if fiber.len() != expect {
            rep.fail(format!("trial {trial}: {} points, expected {expect}", fiber.len()));
            continue;
        }
        for (_, p) in &fiber {
            let pl = match p.pluckers() {
                Ok(v) => v,
                Err(e) => {
                    rep.fail(format!("trial {trial}: pluckers: {e}"));
                    continue;
                }
            };
            // phase normalization: divide by the largest coordinate
            let top = pl
                .values()
                .iter()
                .cloned()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .unwrap();
            let imag = pl
                .values()
                .iter()
                .map(|v| (v / top).im.abs())
                .fold(0.0f64, f64::max);
            worst_imag = worst_imag.max(imag);
            if imag > 1e-8 {
                rep.fail(format!("trial {trial}: imaginary part {imag:.3e} > 1e-8"));
            }
        }
    }
    if rep.pass {
        rep.ok(format!(
            "({},{}): {trials} instances real, worst imaginary part {worst_imag:.2e}",
            bound.d, bound.n
        ));
    }
    rep
}

// ---------------------------------------------------------------------------
// suite: tracked monodromy along random real paths vs. slide prediction
// ---------------------------------------------------------------------------

/// One random real path: solve the fiber at both endpoints, track every
/// start point to the end, and compare the resulting label permutation with
/// the jeu de taquin prediction computed by sliding each start tableau along
/// the exact rational value path. Returns the number of slide events seen.
fn geomslide_trial(
    rng: &mut StdRng,
    bound: RectBound,
    legs: usize,
    opts: &TrackOptions,
) -> Result<usize> {
    let m = bound.boxes();
    let log2_beta = if m <= 6 { 10 } else { 7 };
    let mut waypoints: Vec<Vec<BigRational>> = Vec::with_capacity(legs + 1);
    for _ in 0..=legs {
        let neg = rng.gen_range(0..=m);
        waypoints.push(sorted_config(rng, m, log2_beta, neg));
    }
    let start_f = to_f64(&waypoints[0]);
    let end_f = to_f64(waypoints.last().unwrap());
    let start_fiber = solve_fiber(bound, &start_f, opts)?;
    let end_fiber = solve_fiber(bound, &end_f, opts)?;
    let start_ords = ordinalized(&start_fiber)?;
    let end_ords = ordinalized(&end_fiber)?;
    let end_points = points_of(&end_fiber);

    // tracked permutation: start label i ↦ end label
    let times: Vec<f64> = (0..=legs).map(|k| k as f64 / legs as f64).collect();
    let path = RootPath::piecewise_linear(
        times,
        waypoints.iter().map(|w| to_c64(&to_f64(w))).collect(),
    )?;
    let (tracked_ends, _) = track_ensemble(&path, &points_of(&start_fiber), opts)?;
    let mut tracked: Vec<usize> = Vec::with_capacity(tracked_ends.len());
    for p in &tracked_ends {
        tracked.push(match_to_fiber(p, &end_points)?);
    }

    // slide prediction over the same path in exact arithmetic; path labels
    // are ordered by start norm so that label k matches ordinal k+1
    let order = norm_order(&waypoints[0]);
    let vpath = ValuePath::from_waypoints(
        waypoints
            .iter()
            .map(|w| order.iter().map(|&s| ExtValue::Finite(w[s].clone())).collect())
            .collect(),
    )?;
    let start_values: Vec<ExtValue> = order
        .iter()
        .map(|&s| ExtValue::Finite(waypoints[0][s].clone()))
        .collect();
    let mut events = 0usize;
    for (i, ord) in start_ords.iter().enumerate() {
        let t0 = ord.to_valued(&start_values)?;
        let (t_end, evs) = slide_along(&t0, &vpath)?;
        events += evs.len();
        let predicted = position_of(&end_ords, &t_end.ordinalize()?, "slide endpoint")?;
        if tracked[i] != predicted {
            return Err(Error::invalid(format!(
                "label {i}: tracked ↦ {} but slides predict ↦ {predicted}",
                tracked[i]
            )));
        }
    }
    Ok(events / start_ords.len().max(1))
}

/// Tracked monodromy equals the jeu de taquin prediction along random real
/// piecewise-linear root paths. Every mismatch fails the suite.
pub fn geomslide(bound: RectBound, trials: usize, seed: u64, opts: &TrackOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("geomslide");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut matched = 0usize;
    let mut events = 0usize;
    for trial in 0..trials {
        let legs = rng.gen_range(2..=4);
        match geomslide_trial(&mut rng, bound, legs, opts) {
            Ok(ev) => {
                matched += 1;
                events += ev;
            }
            Err(e) => rep.fail(format!("trial {trial}: {e}")),
        }
    }
    rep.ok(format!(
        "({},{}): {matched}/{trials} paths MATCH, ~{} slide events per tableau",
        bound.d,
        bound.n,
        events / trials.max(1)
    ));
    rep
}

// ---------------------------------------------------------------------------
// suite: s_{k,L} loops
// ---------------------------------------------------------------------------

/// Tracked monodromy of the `loop_skl` root loop equals the combinatorial
/// s_{k,L} permutation for every valid k and each L in `ls`.
pub fn skl_loops(bound: RectBound, beta: f64, ls: &[usize], opts: &TrackOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("skl-loops");
    let roots = geometric_roots(bound, beta);
    let fiber = match solve_fiber(bound, &roots, opts) {
        Ok(f) => f,
        Err(e) => {
            rep.fail(format!("solve_fiber: {e}"));
            return rep;
        }
    };
    let ords = match ordinalized(&fiber) {
        Ok(o) => o,
        Err(e) => {
            rep.fail(format!("ordinalize: {e}"));
            return rep;
        }
    };
    let points = points_of(&fiber);
    let m = bound.boxes();
    let mut checked = 0usize;
    for k in 1..m {
        for &l in ls {
            let predicted: Result<Vec<usize>> = ords
                .iter()
                .map(|o| position_of(&ords, &s_kl_ord(o, k, l)?, "s_kl image"))
                .collect();
            let predicted = match predicted {
                Ok(p) => p,
                Err(e) => {
                    rep.fail(format!("k={k} L={l}: {e}"));
                    continue;
                }
            };
            let path = match loop_skl(&roots, k, l as u32) {
                Ok(p) => p,
                Err(e) => {
                    rep.fail(format!("k={k} L={l}: loop_skl: {e}"));
                    continue;
                }
            };
            match monodromy(&path, &points, opts) {
                Ok(res) => {
                    if res.permutation == predicted {
                        checked += 1;
                    } else {
                        rep.fail(format!(
                            "k={k} L={l}: tracked {:?} ≠ s_kl {predicted:?}",
                            res.permutation
                        ));
                    }
                }
                Err(e) => rep.fail(format!("k={k} L={l}: monodromy: {e}")),
            }
        }
    }
    rep.ok(format!(
        "({},{}): {checked}/{} (k,L) loops match s_kL exactly",
        bound.d,
        bound.n,
        (m - 1) * ls.len()
    ));
    rep
}

// ---------------------------------------------------------------------------
// suite: rotation loop = evacuation
// ---------------------------------------------------------------------------

/// Tracked monodromy of the rotation loop equals the evacuation-step
/// permutation, whose N-th power is the identity.
pub fn rotation_evacuation(bound: RectBound, beta: f64, opts: &TrackOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("rotation");
    let roots = geometric_roots(bound, beta);
    let fiber = match solve_fiber(bound, &roots, opts) {
        Ok(f) => f,
        Err(e) => {
            rep.fail(format!("solve_fiber: {e}"));
            return rep;
        }
    };
    let ords = match ordinalized(&fiber) {
        Ok(o) => o,
        Err(e) => {
            rep.fail(format!("ordinalize: {e}"));
            return rep;
        }
    };
    // exact base values β^i, increasing in norm
    let m = bound.boxes();
    let beta_int = BigInt::from(beta as i64);
    let values: Vec<ExtValue> = (1..=m as u32)
        .map(|i| ExtValue::Finite(BigRational::from_integer(beta_int.pow(i))))
        .collect();
    let predicted: Result<Vec<usize>> = ords
        .iter()
        .map(|o| {
            let t = o.to_valued(&values)?;
            position_of(&ords, &evacuation_step(&t)?.ordinalize()?, "evacuation image")
        })
        .collect();
    let predicted = match predicted {
        Ok(p) => p,
        Err(e) => {
            rep.fail(format!("evacuation: {e}"));
            return rep;
        }
    };
    let path = match loop_rotation(&roots, false) {
        Ok(p) => p,
        Err(e) => {
            rep.fail(format!("loop_rotation: {e}"));
            return rep;
        }
    };
    match monodromy(&path, &points_of(&fiber), opts) {
        Ok(res) => {
            rep.require(res.permutation == predicted, || {
                format!("tracked {:?} ≠ evacuation {predicted:?}", res.permutation)
            });
            // N-th power of the tracked permutation is the identity
            let mut power: Vec<usize> = (0..res.permutation.len()).collect();
            for _ in 0..m {
                power = power.iter().map(|&i| res.permutation[i]).collect();
            }
            let identity: Vec<usize> = (0..res.permutation.len()).collect();
            rep.require(power == identity, || format!("permutation^{m} = {power:?} ≠ id"));
        }
        Err(e) => rep.fail(format!("monodromy: {e}")),
    }
    if rep.pass {
        rep.ok(format!(
            "({},{}): rotation = evacuation, order divides N = {m}",
            bound.d, bound.n
        ));
    }
    rep
}

// ---------------------------------------------------------------------------
// suite: trivial monodromy of loops avoiding a point
// ---------------------------------------------------------------------------

/// Random real loops that avoid w = 0 (every root keeps its sign) track to
/// the identity permutation, even though norm crossings occur along the way.
pub fn trivial_loops(bound: RectBound, loops: usize, seed: u64, opts: &TrackOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("nomonodromy");
    let mut rng = StdRng::seed_from_u64(seed);
    let m = bound.boxes();
    let log2_beta = if m <= 6 { 10 } else { 7 };
    let mut passed = 0usize;
    for trial in 0..loops {
        // the sign pattern is fixed for the whole loop, so no root crosses 0
        let neg = rng.gen_range(0..=m);
        let start = sorted_config(&mut rng, m, log2_beta, neg);
        let mut waypoints = vec![start.clone()];
        for _ in 0..3 {
            waypoints.push(sorted_config(&mut rng, m, log2_beta, neg));
        }
        waypoints.push(start.clone());
        let start_f = to_f64(&start);
        let fiber = match solve_fiber(bound, &start_f, opts) {
            Ok(f) => f,
            Err(e) => {
                rep.fail(format!("loop {trial}: solve_fiber: {e}"));
                continue;
            }
        };
        let times: Vec<f64> = (0..waypoints.len())
            .map(|k| k as f64 / (waypoints.len() - 1) as f64)
            .collect();
        let path = match RootPath::piecewise_linear(
            times,
            waypoints.iter().map(|w| to_c64(&to_f64(w))).collect(),
        ) {
            Ok(p) => p,
            Err(e) => {
                rep.fail(format!("loop {trial}: path: {e}"));
                continue;
            }
        };
        match monodromy(&path, &points_of(&fiber), opts) {
            Ok(res) => {
                let identity: Vec<usize> = (0..res.permutation.len()).collect();
                if res.permutation == identity {
                    passed += 1;
                } else {
                    rep.fail(format!("loop {trial}: permutation {:?} ≠ id", res.permutation));
                }
            }
            Err(e) => rep.fail(format!("loop {trial}: monodromy: {e}")),
        }
    }
    rep.ok(format!("({},{}): {passed}/{loops} loops track to the identity", bound.d, bound.n));
    rep
}

// ---------------------------------------------------------------------------
// suite: exact q-weight distance identity
// ---------------------------------------------------------------------------

/// All cover diamonds α ⋖ β, β′ ⋖ γ in the given bound.
pub fn diamonds(bound: RectBound) -> Vec<(Partition, Partition, Partition, Partition)> {
    let mut out = Vec::new();
    for alpha in bound.all_partitions() {
        let covers = alpha.covers_above();
        for (i, b1) in covers.iter().enumerate() {
            for b2 in &covers[i + 1..] {
                let top = b1.join(b2);
                if top.size() == alpha.size() + 2 {
                    out.push((alpha.clone(), b1.clone(), b2.clone(), top));
                }
            }
        }
    }
    out
}

fn small_bounds() -> Vec<RectBound> {
    let mut out = Vec::new();
    for d in 1..=4usize {
        for w in 1..=4usize {
            out.push(RectBound::new(d, d + w).unwrap());
        }
    }
    out
}

/// Exact identity q_β q_{β′} / (q_α q_γ) = 1 − 1/L² over every cover diamond
/// in rectangles up to 4×4, with L the taxicab distance of the added boxes.
pub fn distance_lemma() -> SuiteReport {
    let mut rep = SuiteReport::new("distance-lemma");
    let mut total = 0usize;
    for bound in small_bounds() {
        for (alpha, beta, betap, gamma) in diamonds(bound) {
            total += 1;
            let c1 = alpha.added_box(&beta).unwrap();
            let c2 = alpha.added_box(&betap).unwrap();
            let l = box_distance(c1, c2) as i64;
            let ratio = BigRational::new(
                beta.q_weight() * betap.q_weight(),
                alpha.q_weight() * gamma.q_weight(),
            );
            if ratio != bq(1, 1) - bq(1, l * l) {
                rep.fail(format!(
                    "diamond {alpha:?} ⋖ {beta:?},{betap:?} ⋖ {gamma:?}: ratio {ratio} ≠ 1 − 1/{l}²"
                ));
            }
        }
    }
    rep.ok(format!("{total} diamonds in rectangles ≤ 4×4: exact"));
    rep
}

// ---------------------------------------------------------------------------
// suite: two-root discriminant positivity
// ---------------------------------------------------------------------------

/// For random nonzero real coefficient pairs on every diamond, the tied-pair
/// discriminant is strictly positive, and exceeds (c_k − c_{k+1})² whenever
/// c_k c_{k+1} > 0.
pub fn tworoots_discriminant(samples: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("tworoots");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut total = 0usize;
    for bound in small_bounds() {
        for (alpha, beta, betap, gamma) in diamonds(bound) {
            let ratio = rational_to_f64(&BigRational::new(
                beta.q_weight() * betap.q_weight(),
                alpha.q_weight() * gamma.q_weight(),
            ));
            for s in 0..samples {
                let mut draw = || -> f64 {
                    loop {
                        let c: f64 = rng.gen_range(-10.0..10.0);
                        if c.abs() > 1e-3 {
                            return c;
                        }
                    }
                };
                let (ck, ck1) = (draw(), draw());
                let disc = (ck + ck1).powi(2) - 4.0 * ratio * ck * ck1;
                total += 1;
                if disc <= 0.0 {
                    rep.fail(format!("disc = {disc:.3e} ≤ 0 at c = ({ck}, {ck1})"));
                }
                if ck * ck1 > 0.0 && disc <= (ck - ck1).powi(2) {
                    rep.fail(format!("disc ≤ (c_k − c_{{k+1}})² at c = ({ck}, {ck1})"));
                }
                // spot-check the solver path agrees with the closed form
                if s < 3 {
                    match solve_tworoots(
                        &alpha.q_weight(),
                        &beta.q_weight(),
                        &betap.q_weight(),
                        &gamma.q_weight(),
                        &ck,
                        &ck1,
                    ) {
                        Ok(r) => rep.require((r.discriminant - disc).abs() < 1e-9, || {
                            format!("solver discriminant {:.6e} ≠ {disc:.6e}", r.discriminant)
                        }),
                        Err(e) => rep.fail(format!("solve_tworoots: {e}")),
                    }
                }
            }
        }
    }
    rep.ok(format!("{total} coefficient pairs: discriminant positive"));
    rep
}

// ---------------------------------------------------------------------------
// suite: Gelfand-Tsetlin relations on Ω-generated vectors
// ---------------------------------------------------------------------------

/// Random Ω-generated Plücker vectors satisfy the GT relations exactly, and
/// perturbing a coordinate that sits in a nontrivial relation breaks them.
pub fn gt_relations(bound: RectBound, count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("gt-relations");
    let mut rng = StdRng::seed_from_u64(seed);
    let shape = SkewShape::straight(bound.full());
    let syts = OrdTableau::enumerate(&shape);
    let m = bound.boxes();
    // coordinates that appear in at least one nontrivial relation: those
    // incomparable to some other partition (perturbing a chain coordinate
    // like ∅ or ■ leaves every relation intact, consistent with the Ω-form)
    let parts = bound.all_partitions();
    let perturbable: Vec<Partition> = parts
        .iter()
        .filter(|lam| {
            parts
                .iter()
                .any(|mu| !lam.contains(mu) && !mu.contains(lam))
        })
        .cloned()
        .collect();
    if perturbable.is_empty() {
        rep.fail("no incomparable pairs in this bound".to_string());
        return rep;
    }
    for trial in 0..count {
        let ord = &syts[rng.gen_range(0..syts.len())];
        let boxes: Vec<BoxCoord> = (1..=m).map(|k| ord.box_of(k).unwrap()).collect();
        let omegas: Vec<BigRational> = (0..m)
            .map(|_| {
                let num = loop {
                    let v = rng.gen_range(-30i64..=30);
                    if v != 0 {
                        break v;
                    }
                };
                bq(num, rng.gen_range(1i64..=8))
            })
            .collect();
        let omega = match OmegaAssignment::new(shape.clone(), boxes, omegas) {
            Ok(o) => o,
            Err(e) => {
                rep.fail(format!("trial {trial}: OmegaAssignment: {e}"));
                continue;
            }
        };
        let c: PluckerVector<BigRational> =
            PluckerVector::from_fn(bound, |nu| omega.omega_product(nu));
        if !gt_check(&c, 0.0) {
            rep.fail(format!("trial {trial}: Ω-generated vector fails gt_check"));
        }
        let nu = &perturbable[rng.gen_range(0..perturbable.len())];
        let mut bad = c.clone();
        bad.set(nu, bad.get(nu).clone() + BigRational::one());
        if gt_check(&bad, 0.0) {
            rep.fail(format!("trial {trial}: perturbation at {nu:?} passes gt_check"));
        }
    }
    if rep.pass {
        rep.ok(format!(
            "({},{}): {count} Ω-generated vectors pass, perturbations fail",
            bound.d, bound.n
        ));
    }
    rep
}

// ---------------------------------------------------------------------------
// suite: Littlewood-Richardson consistency
// ---------------------------------------------------------------------------

/// Exhaustive LR consistency in the given bounds: the three counting methods
/// agree (lr_number verifies this internally), dual equivalence classes have
/// size syt_count(ν), and within each dual class the rectification map is
/// injective — so each rectification class meets each dual class exactly
/// once.
pub fn lr_exhaustive(bounds: &[(usize, usize)]) -> SuiteReport {
    let mut rep = SuiteReport::new("lr-rule");
    for &(d, n) in bounds {
        let bound = RectBound::new(d, n).unwrap();
        let parts = bound.all_partitions();
        let mut triples = 0usize;
        for lam in &parts {
            for mu in &parts {
                if !lam.contains(mu) {
                    continue;
                }
                let size = lam.size() - mu.size();
                let shape = match SkewShape::new(lam.clone(), mu.clone()) {
                    Ok(s) => s,
                    Err(e) => {
                        rep.fail(format!("shape {lam:?}/{mu:?}: {e}"));
                        continue;
                    }
                };
                for nu in bound.partitions_of(size) {
                    triples += 1;
                    let c = match lr_number(lam, mu, &nu) {
                        Ok(c) => c,
                        Err(e) => {
                            rep.fail(format!("lr({lam:?},{mu:?},{nu:?}): {e}"));
                            continue;
                        }
                    };
                    if size == 0 {
                        continue;
                    }
                    let classes = match dual_classes(&shape, &nu) {
                        Ok(cl) => cl,
                        Err(e) => {
                            rep.fail(format!("dual_classes({lam:?}/{mu:?},{nu:?}): {e}"));
                            continue;
                        }
                    };
                    rep.require(classes.len() as u64 == c, || {
                        format!(
                            "{lam:?}/{mu:?} → {nu:?}: {} dual classes ≠ c = {c}",
                            classes.len()
                        )
                    });
                    let f_nu = SkewShape::straight(nu.clone()).syt_count() as usize;
                    for class in &classes {
                        rep.require(class.len() == f_nu, || {
                            format!(
                                "{lam:?}/{mu:?} → {nu:?}: class size {} ≠ f^ν = {f_nu}",
                                class.len()
                            )
                        });
                        let mut rects = Vec::with_capacity(class.len());
                        for t in class {
                            match rect_ord(t) {
                                Ok(r) => rects.push(r),
                                Err(e) => rep.fail(format!("rect_ord: {e}")),
                            }
                        }
                        let before = rects.len();
                        rects.sort_by_key(|o| format!("{o:?}"));
                        rects.dedup();
                        rep.require(rects.len() == before, || {
                            format!(
                                "{lam:?}/{mu:?} → {nu:?}: rectification not injective on a dual class"
                            )
                        });
                    }
                }
            }
        }
        rep.ok(format!("({d},{n}): {triples} triples consistent"));
    }
    rep
}

// ---------------------------------------------------------------------------
// suite: limits and dual equivalence clustering
// ---------------------------------------------------------------------------

/// The partition formed by the boxes of `ord` holding entries ≤ m.
fn prefix_partition(ord: &OrdTableau, m: usize) -> Result<Partition> {
    let bound = ord.shape().bound();
    let mut rows = vec![0usize; bound.d];
    for (b, e) in ord.entries() {
        if *e <= m {
            rows[b.row - 1] += 1; // box coordinates are 1-based
        }
    }
    while rows.last() == Some(&0) {
        rows.pop();
    }
    Partition::new(rows, bound)
}

/// The skew subtableau of `ord` on the entries in `block` (0-based ordinal
/// indices, i.e. entries block.start+1 ..= block.end), relabeled from 1.
fn block_subtableau(ord: &OrdTableau, block: &std::ops::Range<usize>) -> Result<OrdTableau> {
    let inner = prefix_partition(ord, block.start)?;
    let outer = prefix_partition(ord, block.end)?;
    let shape = SkewShape::new(outer, inner)?;
    let pairs: Vec<(BoxCoord, usize)> = ord
        .entries()
        .iter()
        .filter(|(_, e)| *e > block.start && *e <= block.end)
        .map(|(b, e)| (*b, e - block.start))
        .collect();
    OrdTableau::from_pairs(shape, pairs)
}

/// Entry placements outside the block, used as the "agrees elsewhere" key.
fn outside_key(ord: &OrdTableau, block: &std::ops::Range<usize>) -> Vec<(BoxCoord, usize)> {
    let mut key: Vec<(BoxCoord, usize)> = ord
        .entries()
        .iter()
        .filter(|(_, e)| *e <= block.start || *e > block.end)
        .cloned()
        .collect();
    key.sort();
    key
}

/// Contract a middle block of roots onto their geometric mean and check that
/// the limit points cluster exactly by (outside entries, dual equivalence
/// class of the block subtableau); that each limit lies in X_λ(c) for λ the
/// rectification shape; and that s_{k,L} monodromy outside the block maps
/// clusters to clusters.
pub fn limit_clusters(
    bound: RectBound,
    beta: f64,
    block: std::ops::Range<usize>,
    opts: &TrackOptions,
) -> SuiteReport {
    let mut rep = SuiteReport::new("limits");
    let roots = geometric_roots(bound, beta);
    let fiber = match solve_fiber(bound, &roots, opts) {
        Ok(f) => f,
        Err(e) => {
            rep.fail(format!("solve_fiber: {e}"));
            return rep;
        }
    };
    let ords = match ordinalized(&fiber) {
        Ok(o) => o,
        Err(e) => {
            rep.fail(format!("ordinalize: {e}"));
            return rep;
        }
    };
    let points = points_of(&fiber);
    // geometric mean of the block roots
    let c = (roots[block.clone()].iter().map(|a| a.ln()).sum::<f64>()
        / block.len() as f64)
        .exp();

    let subs: Result<Vec<OrdTableau>> =
        ords.iter().map(|o| block_subtableau(o, &block)).collect();
    let subs = match subs {
        Ok(s) => s,
        Err(e) => {
            rep.fail(format!("block subtableau: {e}"));
            return rep;
        }
    };
    let keys: Vec<Vec<(BoxCoord, usize)>> =
        ords.iter().map(|o| outside_key(o, &block)).collect();

    let predicted_same = |i: usize, j: usize| -> Result<bool> {
        if keys[i] != keys[j] {
            return Ok(false);
        }
        dual_equivalent(&subs[i], &subs[j])
    };

    let mut limits = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        match limit_point(p, &roots, block.clone(), c, opts) {
            Ok(l) => limits.push(l),
            Err(e) => {
                rep.fail(format!("limit of point {i}: {e}"));
                return rep;
            }
        }
    }

    let mut max_same = 0.0f64;
    let mut min_diff = f64::INFINITY;
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            let dist = projective_distance(&limits[i], &limits[j]);
            let same = match predicted_same(i, j) {
                Ok(s) => s,
                Err(e) => {
                    rep.fail(format!("dual_equivalent({i},{j}): {e}"));
                    continue;
                }
            };
            if same {
                max_same = max_same.max(dist);
                rep.require(dist < 1e-3, || {
                    format!("points {i},{j} dual equivalent but limits differ by {dist:.3e}")
                });
            } else {
                min_diff = min_diff.min(dist);
                rep.require(dist >= 1e-3, || {
                    format!("points {i},{j} not dual equivalent but limits agree ({dist:.3e})")
                });
            }
        }
    }

    // each limit lies in X_λ(c) for λ the rectification shape of its block
    for (i, l) in limits.iter().enumerate() {
        let lam = match rect_ord(&subs[i]) {
            Ok(r) => r.shape().outer().clone(),
            Err(e) => {
                rep.fail(format!("rect_ord({i}): {e}"));
                continue;
            }
        };
        let member = FiberPoint::from_pluckers(l, FiberPoint::best_chart(l))
            .and_then(|x| x.basis())
            .and_then(|b| {
                schubert_membership_at(&b, Some(Complex64::new(c, 0.0)), block.len(), 1e-6)
            });
        match member {
            Ok(list) => rep.require(list.contains(&lam), || {
                format!("limit {i} not in X_{lam:?}(c); membership {list:?}")
            }),
            Err(e) => rep.fail(format!("membership of limit {i}: {e}")),
        }
    }

    // s_{k,L} loops acting away from the block preserve the clusters
    let m = bound.boxes();
    let outside_ks: Vec<usize> = (1..m)
        .filter(|&k| k + 1 <= block.start || k > block.end)
        .collect();
    for &k in &outside_ks {
        let path = match loop_skl(&roots, k, 2) {
            Ok(p) => p,
            Err(e) => {
                rep.fail(format!("loop_skl(k={k}): {e}"));
                continue;
            }
        };
        match monodromy(&path, &points, opts) {
            Ok(res) => {
                let pi = &res.permutation;
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        let before = predicted_same(i, j).unwrap_or(false);
                        let after = predicted_same(pi[i], pi[j]).unwrap_or(false);
                        rep.require(before == after, || {
                            format!("s_{{{k},2}} breaks the cluster relation at ({i},{j})")
                        });
                    }
                }
            }
            Err(e) => rep.fail(format!("monodromy(k={k}): {e}")),
        }
    }

    if rep.pass {
        rep.ok(format!(
            "({},{}) block {:?}: clusters = dual classes (max within {max_same:.2e}, min across {min_diff:.2e}), {} outside loops preserve them",
            bound.d, bound.n, block, outside_ks.len()
        ));
    }
    rep
}

// ---------------------------------------------------------------------------
// dispatch for the CLI
// ---------------------------------------------------------------------------

/// Parameters shared by the named suites; unset fields fall back to the
/// defaults used in the acceptance run.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub bound: Option<RectBound>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub beta: Option<f64>,
    pub opts: TrackOptions,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            bound: None,
            seed: 0x5eed,
            trials: None,
            beta: None,
            opts: TrackOptions::default(),
        }
    }
}

/// Names accepted by [`run_suite`].
pub const SUITE_NAMES: &[&str] = &[
    "paper-example",
    "fiber-degree",
    "reality",
    "geomslide",
    "skl-loops",
    "rotation",
    "nomonodromy",
    "distance-lemma",
    "tworoots",
    "gt-relations",
    "lr-rule",
    "limits",
];

fn bounds_or(params: &SuiteParams, default: &[(usize, usize)]) -> Vec<RectBound> {
    match params.bound {
        Some(b) => vec![b],
        None => default
            .iter()
            .map(|&(d, n)| RectBound::new(d, n).unwrap())
            .collect(),
    }
}

fn merge(mut reports: Vec<SuiteReport>) -> SuiteReport {
    let mut out = reports.remove(0);
    for r in reports {
        out.pass &= r.pass;
        out.details.extend(r.details);
    }
    out
}

/// Run a named suite with the acceptance-run defaults. Unknown names are an
/// error; the caller decides how to render the report.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let opts = &params.opts;
    let beta_for = |b: RectBound| params.beta.unwrap_or_else(|| default_beta(b));
    Ok(match name {
        "paper-example" => paper_example(),
        "fiber-degree" => merge(
            bounds_or(params, &[(2, 4), (2, 5), (3, 6)])
                .into_iter()
                .map(|b| fiber_degree(b, beta_for(b), opts))
                .collect(),
        ),
        "reality" => merge(
            bounds_or(params, &[(2, 4), (2, 5), (3, 6)])
                .into_iter()
                .map(|b| reality(b, params.trials.unwrap_or(20), params.seed, opts))
                .collect(),
        ),
        "geomslide" => merge(
            bounds_or(params, &[(2, 4), (2, 5), (3, 6)])
                .into_iter()
                .map(|b| geomslide(b, params.trials.unwrap_or(50), params.seed, opts))
                .collect(),
        ),
        "skl-loops" => merge(
            bounds_or(params, &[(2, 5), (3, 6)])
                .into_iter()
                .map(|b| skl_loops(b, beta_for(b), &[2, 3], opts))
                .collect(),
        ),
        "rotation" => merge(
            bounds_or(params, &[(2, 4), (2, 5), (3, 6)])
                .into_iter()
                .map(|b| rotation_evacuation(b, beta_for(b), opts))
                .collect(),
        ),
        "nomonodromy" => merge(
            bounds_or(params, &[(2, 4), (2, 5), (3, 6)])
                .into_iter()
                .map(|b| trivial_loops(b, params.trials.unwrap_or(10), params.seed, opts))
                .collect(),
        ),
        "distance-lemma" => distance_lemma(),
        "tworoots" => tworoots_discriminant(params.trials.unwrap_or(10_000), params.seed),
        "gt-relations" => merge(
            bounds_or(params, &[(2, 4), (2, 5), (3, 6)])
                .into_iter()
                .map(|b| gt_relations(b, params.trials.unwrap_or(1000), params.seed))
                .collect(),
        ),
        "lr-rule" => lr_exhaustive(&[(2, 5), (2, 6), (3, 6)]),
        "limits" => merge(
            bounds_or(params, &[(2, 4), (2, 5)])
                .into_iter()
                .map(|b| {
                    let m = b.boxes();
                    // a middle block of two roots, leaving room on the right
                    // for loops away from the block when the fiber is big
                    // enough
                    let block = if m <= 4 { 1..3 } else { 2..4 };
                    limit_clusters(b, beta_for(b), block, opts)
                })
                .collect(),
        ),
        other => return Err(Error::invalid(format!("unknown suite '{other}'"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(d: usize, n: usize) -> RectBound {
        RectBound::new(d, n).unwrap()
    }

    #[test]
    fn paper_example_is_exact() {
        let rep = paper_example();
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn fiber_degree_small() {
        let opts = TrackOptions::default();
        for (d, n) in [(2, 4), (2, 5)] {
            let rep = fiber_degree(b(d, n), 1e3, &opts);
            assert!(rep.pass, "{:?}", rep.details);
        }
    }

    #[test]
    fn reality_small() {
        let rep = reality(b(2, 4), 4, 11, &TrackOptions::default());
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn geomslide_small() {
        let rep = geomslide(b(2, 4), 4, 17, &TrackOptions::default());
        assert!(rep.pass, "{:?}", rep.details);
        let rep = geomslide(b(2, 5), 2, 23, &TrackOptions::default());
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn skl_small() {
        let rep = skl_loops(b(2, 4), 1e3, &[2], &TrackOptions::default());
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn rotation_small() {
        for (d, n) in [(2, 4), (2, 5)] {
            let rep = rotation_evacuation(b(d, n), 1e3, &TrackOptions::default());
            assert!(rep.pass, "{:?}", rep.details);
        }
    }

    #[test]
    fn trivial_loops_small() {
        let rep = trivial_loops(b(2, 4), 2, 31, &TrackOptions::default());
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn distance_lemma_exact() {
        let rep = distance_lemma();
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn tworoots_sampled() {
        let rep = tworoots_discriminant(50, 41);
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn gt_relations_sampled() {
        let rep = gt_relations(b(2, 5), 25, 43);
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn lr_smallest_bound() {
        let rep = lr_exhaustive(&[(2, 4)]);
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn limit_clusters_small() {
        let rep = limit_clusters(b(2, 4), 1e3, 1..3, &TrackOptions::default());
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn block_subtableau_examples() {
        // row-reading SYT of the 2×2 rectangle: 1 2 / 3 4
        let shape = SkewShape::straight(b(2, 4).full());
        let ord = OrdTableau::row_superstandard(&shape);
        let sub = block_subtableau(&ord, &(1..3)).unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(sub.get(BoxCoord::new(1, 2)), Some(1));
        assert_eq!(sub.get(BoxCoord::new(2, 1)), Some(2));
        assert_eq!(outside_key(&ord, &(1..3)).len(), 2);
    }

    #[test]
    fn run_suite_rejects_unknown_names() {
        assert!(run_suite("no-such-suite", &SuiteParams::default()).is_err());
        for name in SUITE_NAMES {
            assert!(SUITE_NAMES.contains(name));
        }
    }

    #[test]
    fn dbg_all() {
        use crate::tracker::*;
        let opts = TrackOptions::default();
        // --- membership of limits, (2,4)
        let bound = b(2, 4);
        let roots = geometric_roots(bound, 1e3);
        let fiber = solve_fiber(bound, &roots, &opts).unwrap();
        let points = points_of(&fiber);
        let block = 1..3;
        let c = (roots[block.clone()].iter().map(|a| a.ln()).sum::<f64>() / 2.0).exp();
        println!("c = {c:.6e}");
        for (i, p) in points.iter().enumerate() {
            let l = limit_point(p, &roots, block.clone(), c, &opts).unwrap();
            println!("limit {i}: {:?}", l.values().iter().map(|v| format!("{:.3e}", v.norm())).collect::<Vec<_>>());
            for sign in [1.0f64, -1.0] {
                for tol in [1e-6, 1e-4, 1e-2] {
                    let x = FiberPoint::from_pluckers(&l, FiberPoint::best_chart(&l)).unwrap().basis().unwrap();
                    let m = crate::wronski::schubert_membership_at(&x, Some(Complex64::new(sign*c,0.0)), 2, tol).unwrap();
                    println!("  sign {sign} tol {tol:.0e}: {:?}", m.iter().map(|q| format!("{:?}", q.parts())).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn dbg_geomslide() {
        let bound = b(2, 4);
        let opts = TrackOptions::default();
        let mut rng = StdRng::seed_from_u64(17);
        for trial in 0..2 {
            let legs = rng.gen_range(2..=4usize);
            let m = bound.boxes();
            let mut waypoints: Vec<Vec<BigRational>> = Vec::new();
            for _ in 0..=legs {
                let neg = rng.gen_range(0..=m);
                waypoints.push(sorted_config(&mut rng, m, 10, neg));
            }
            if trial < 1 { continue; }
            for w in &waypoints { println!("wp: {:?}", to_f64(w)); }
            let start_f = to_f64(&waypoints[0]);
            let end_f = to_f64(waypoints.last().unwrap());
            let start_fiber = solve_fiber(bound, &start_f, &opts).unwrap();
            let end_fiber = solve_fiber(bound, &end_f, &opts).unwrap();
            let times: Vec<f64> = (0..=legs).map(|k| k as f64 / legs as f64).collect();
            let path = RootPath::piecewise_linear(times, waypoints.iter().map(|w| to_c64(&to_f64(w))).collect()).unwrap();
            let (ends, diag) = track_ensemble(&path, &points_of(&start_fiber), &opts).unwrap();
            println!("diag: {diag:?}");
            for (i, e) in ends.iter().enumerate() {
                println!("tracked {i} residual {:.3e} pl {:?}", e.residual, e.pluckers().unwrap().values().iter().map(|v| format!("{:.3e}", v.norm())).collect::<Vec<_>>());
            }
            for (j, (_, p)) in end_fiber.iter().enumerate() {
                println!("endpt {j} pl {:?}", p.pluckers().unwrap().values().iter().map(|v| format!("{:.3e}", v.norm())).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn dbg_rotation25() {
        let bound = b(2, 5);
        let opts = TrackOptions::default();
        let roots = geometric_roots(bound, 1e3);
        let fiber = solve_fiber(bound, &roots, &opts).unwrap();
        let points = points_of(&fiber);
        let path = loop_rotation(&roots, false).unwrap();
        let (ends, diag) = track_ensemble(&path, &points, &opts).unwrap();
        println!("diag: {diag:?}");
        let logs = |p: &FiberPoint| -> Vec<String> {
            let pl = p.pluckers().unwrap();
            let top = pl.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
            pl.values()
                .iter()
                .map(|v| {
                    let s = if v.re >= 0.0 { '+' } else { '-' };
                    format!("{s}{:.1}", (v.norm() / top).log10())
                })
                .collect()
        };
        for (i, p) in points.iter().enumerate() {
            println!("base {i}: {:?}", logs(p));
        }
        for (i, e) in ends.iter().enumerate() {
            println!("end  {i}: {:?} res {:.1e}", logs(e), e.residual);
        }
    }


    #[test]
    fn dbg_beta_scan() {
        let opts = TrackOptions::default();
        for (d, n, betas) in [(2usize, 5usize, vec![10.0f64, 32.0, 100.0, 1000.0]), (3, 6, vec![4.0, 8.0, 16.0, 100.0])] {
            let bound = b(d, n);
            for beta in betas {
                let roots = geometric_roots(bound, beta);
                let fiber = match solve_fiber(bound, &roots, &opts) {
                    Ok(f) => f,
                    Err(e) => { println!("({d},{n}) beta {beta}: solve_fiber FAILED: {e}"); continue; }
                };
                let points = points_of(&fiber);
                let path = match loop_rotation(&roots, false) {
                    Ok(p) => p,
                    Err(e) => { println!("({d},{n}) beta {beta}: loop FAILED: {e}"); continue; }
                };
                match monodromy(&path, &points, &opts) {
                    Ok(res) => println!("({d},{n}) beta {beta}: perm {:?} ratio {:.2e}", res.permutation, res.match_ratio),
                    Err(e) => println!("({d},{n}) beta {beta}: monodromy FAILED: {e}"),
                }
            }
        }
    }


    #[test]
    fn dbg_recovery() {
        use crate::tracker::*;
        let opts = TrackOptions::default();
        let bound = b(2, 5);
        let roots = geometric_roots(bound, 1e3);
        let croots: Vec<Complex64> = roots.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let fiber = solve_fiber(bound, &roots, &opts).unwrap();
        let p0 = fiber[0].1.clone();
        let pl = p0.pluckers().unwrap();
        println!("pluckers: {:?}", pl.values().iter().map(|v| format!("{:.3e}", v.norm())).collect::<Vec<_>>());
        // corrupt the smallest nonzero coordinate by x100
        let vals = pl.values();
        let kmin = (0..vals.len())
            .filter(|&i| vals[i].norm() > 0.0)
            .min_by(|&i, &j| vals[i].norm().total_cmp(&vals[j].norm()))
            .unwrap();
        let mut bad = pl.clone();
        let lam = bad.partitions()[kmin].clone();
        let v = *bad.get(&lam);
        bad.set(&lam, v * Complex64::new(100.0, 0.0));
        let corrupted = FiberPoint::from_pluckers(&bad, p0.chart().clone()).unwrap();
        match newton_refine(&corrupted, &croots, &opts) {
            Ok(r) => {
                let d = projective_distance(&r.pluckers().unwrap(), &p0.pluckers().unwrap());
                println!("recovered: residual {:.2e} dist to original {:.3e}", r.residual, d);
                println!(
                    "rec pluckers: {:?}",
                    r.pluckers().unwrap().values().iter().map(|v| format!("{:.3e}", v.norm())).collect::<Vec<_>>()
                );
            }
            Err(e) => println!("refine FAILED: {e}"),
        }
    }

    #[test]
    fn dbg_separation() {
        use crate::tracker::*;
        let opts = TrackOptions::default();
        for (d, n, beta) in [(2usize, 4usize, 1e3), (2, 5, 1e3), (2, 6, 1e2), (3, 6, 1e2)] {
            let bound = b(d, n);
            let roots = geometric_roots(bound, beta);
            let fiber = match solve_fiber(bound, &roots, &opts) {
                Ok(f) => f,
                Err(e) => {
                    println!("({d},{n}) solve FAILED: {e}");
                    continue;
                }
            };
            let points = points_of(&fiber);
            println!("({d},{n}) beta {beta}: {} points", points.len());
            for (i, p) in points.iter().enumerate() {
                let pl = p.pluckers().unwrap();
                println!(
                    "  {i}: {:?}",
                    pl.values().iter().map(|v| format!("{:.1e}", v.norm())).collect::<Vec<_>>()
                );
            }
            // pairwise distances counting only coordinates above a floor
            for floor in [0.0f64, 1e-8] {
                let mut min_d = f64::INFINITY;
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        let pv = points[i].pluckers().unwrap();
                        let qv = points[j].pluckers().unwrap();
                        let (pv, qv) = (pv.values().to_vec(), qv.values().to_vec());
                        let pm = pv.iter().map(|v| v.norm()).fold(0.0, f64::max);
                        let qm = qv.iter().map(|v| v.norm()).fold(0.0, f64::max);
                        let mut dd: f64 = 0.0;
                        for k in 0..pv.len() {
                            let a = pv[k].norm() / pm;
                            let bb = qv[k].norm() / qm;
                            if a.max(bb) < floor {
                                continue;
                            }
                            // crude magnitude-only gap
                            let rel = (a - bb).abs() / a.max(bb).max(f64::MIN_POSITIVE);
                            dd = dd.max(rel.min(1.0));
                        }
                        min_d = min_d.min(dd);
                    }
                }
                println!("  floor {floor:.0e}: min pairwise magnitude-gap {min_d:.3e}");
            }
        }
    }

    #[test]
    fn dbg_first_step() {
        use crate::tracker::*;
        let opts = TrackOptions::default();
        let bound = b(2, 5);
        let roots = geometric_roots(bound, 1e3);
        let fiber = solve_fiber(bound, &roots, &opts).unwrap();
        let p0 = fiber[0].1.clone();
        let path = loop_rotation(&roots, false).unwrap();
        for dt in [1e-8f64, 1e-6, 1e-4, 1e-2] {
            let r1 = path.roots_at(dt);
            match newton_refine(&p0, &r1, &opts) {
                Ok(q) => {
                    let d = projective_distance(&q.pluckers().unwrap(), &p0.pluckers().unwrap());
                    println!("dt {dt:.0e}: refine ok, moved {d:.3e}, res {:.1e}", q.residual);
                    let pp = p0.pluckers().unwrap();
                    let qq = q.pluckers().unwrap();
                    for (k, (x, y)) in pp.values().iter().zip(qq.values()).enumerate() {
                        let rel = (y - x).norm() / x.norm().max(y.norm()).max(f64::MIN_POSITIVE);
                        if rel > 0.3 {
                            println!("  coord {k}: {:.3e} vs {:.3e} (rel {rel:.2e})", x.norm(), y.norm());
                        }
                    }
                    let a = p0.params();
                    let bb = q.params();
                    for (k, (x, y)) in a.iter().zip(&bb).enumerate() {
                        let rel = (y - x).norm() / x.norm().max(f64::MIN_POSITIVE);
                        if rel > 0.3 {
                            println!("  param {k}: {:.3e} -> {:.3e} (rel {rel:.2e})", x.norm(), y.norm());
                        }
                    }
                }
                Err(e) => println!("dt {dt:.0e}: {e}"),
            }
        }
    }

    #[test]
    fn dbg_seed_collapse() {
        use crate::tracker::*;
        let opts = TrackOptions::default();
        let bound = b(3, 6);
        let beta = 100.0;
        let roots = geometric_roots(bound, beta);
        let croots: Vec<Complex64> = roots.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let tabs = root_tableaux(bound, &roots).unwrap();
        println!("{} tableaux", tabs.len());
        let mut refined: Vec<FiberPoint> = Vec::new();
        for (i, t) in tabs.iter().enumerate().take(4) {
            let seed = fiber_seed(t, 1.0 / std::f64::consts::E).unwrap();
            let r = newton_refine(&seed, &croots, &opts);
            match &r {
                Ok(p) => {
                    println!("tab {i}: seed chart {:?} refine ok residual {:.2e}", seed.chart().parts(), p.residual);
                    refined.push(p.clone());
                }
                Err(e) => println!("tab {i}: refine FAILED: {e}"),
            }
        }
        for i in 0..refined.len() {
            for j in i+1..refined.len() {
                let d = projective_distance(&refined[i].pluckers().unwrap(), &refined[j].pluckers().unwrap());
                println!("dist({i},{j}) = {d:.3e}");
            }
        }
        // seeds before refine
        let s1 = fiber_seed(&tabs[1], 1.0/std::f64::consts::E).unwrap();
        let s2 = fiber_seed(&tabs[2], 1.0/std::f64::consts::E).unwrap();
        println!("seed dist(1,2) = {:.3e}", projective_distance(&s1.pluckers().unwrap(), &s2.pluckers().unwrap()));
        let p1 = s1.pluckers().unwrap();
        let p2 = s2.pluckers().unwrap();
        for ((lam, v1), v2) in p1.partitions().iter().zip(p1.values()).zip(p2.values()) {
            println!("{:?}: {:.3e} vs {:.3e}", lam.parts(), v1.norm(), v2.norm());
        }
    }

}
