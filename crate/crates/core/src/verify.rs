//! Machine verification of the structural claims behind the library: each
//! named check exercises one claim (conservation, bijectivity, counting,
//! linearization, the box-ball dictionary, ...) over a set of curves and
//! produces a graded report.
//!
//! Assertions are graded by epistemic status. A `proposition` is a claim
//! the implementation treats as a theorem; its failure means a bug (in the
//! code or in the claim) and fails the whole run. A `conjecture` is a claim
//! checked on evidence but not relied upon; its outcome is reported without
//! failing the run. `informational` entries record context (counts, skips)
//! and always pass.
//!
//! Checks draw their randomness from a seeded ChaCha stream, so a report is
//! reproducible from its seed.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bbs::{bbs_evolve, beta, enumerate_bbs, rho, BbsState};
use crate::curve::{CurveModel, GraphPoint};
use crate::eigmap::{pi, psi, psi_inverse, sheet_selection};
use crate::error::{Error, Result};
use crate::jacobian::{in_dg, Divisor, JacPoint, Jacobian};
use crate::matrix::RatMat;
use crate::numeric::Rational;
use crate::toda::{
    conserved, enumerate_isolevel, evolve, in_t0, shift, shift_n, t0_membership, ConservedVector,
    TodaState,
};

/// Epistemic grade of an assertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    /// Treated as a theorem; a failure fails the run.
    Proposition,
    /// Checked on evidence; reported but never fails the run.
    Conjecture,
    /// Context only; always passes.
    Informational,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grade::Proposition => "proposition",
            Grade::Conjecture => "conjecture",
            Grade::Informational => "informational",
        })
    }
}

/// One verified statement inside a check.
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub grade: Grade,
    pub passed: bool,
    pub detail: String,
}

/// Report of one registry check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub seed: u64,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

impl CheckReport {
    fn new(check: &str, seed: u64) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            seed,
            assertions: Vec::new(),
            passed: true,
        }
    }

    fn prop(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.push(Grade::Proposition, name, passed, detail);
    }

    fn conjecture(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.push(Grade::Conjecture, name, passed, detail);
    }

    fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(Grade::Informational, name, true, detail);
    }

    fn push(&mut self, grade: Grade, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.into(),
            grade,
            passed,
            detail: detail.into(),
        });
        if grade == Grade::Proposition && !passed {
            self.passed = false;
        }
    }

    /// Names of failed proposition-grade assertions.
    pub fn failures(&self) -> Vec<&str> {
        self.assertions
            .iter()
            .filter(|a| a.grade == Grade::Proposition && !a.passed)
            .map(|a| a.name.as_str())
            .collect()
    }
}

/// Parameters shared by all checks.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub curves: Vec<ConservedVector>,
    /// Number of random samples per statistical assertion.
    pub samples: usize,
    /// Orbit length for flow-based assertions.
    pub steps: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            curves: default_curves(),
            samples: 32,
            steps: 8,
        }
    }
}

/// The benchmark levels used by default: one per genus 1..3 plus a wider
/// genus-2 level.
pub fn default_curves() -> Vec<ConservedVector> {
    [
        vec![8, 3, 0],
        vec![7, 3, 1, 0],
        vec![20, 7, 2, 0],
        vec![13, 6, 3, 1, 0],
    ]
    .iter()
    .map(|c| ConservedVector::from_ints(c).expect("benchmark level"))
    .collect()
}

/// Names of all registry checks, in execution order.
pub const CHECK_NAMES: [&str; 11] = [
    "smoothness",
    "det-identities",
    "conservation",
    "t-cover",
    "psi-roundtrip",
    "psi-image-in-dg",
    "counting",
    "eta-injectivity-on-dg",
    "pi-injectivity",
    "linearization",
    "bbs-toda-diagram",
];

/// Run a single named check.
pub fn run_check(name: &str, cfg: &VerifyConfig) -> Result<CheckReport> {
    match name {
        "smoothness" => check_smoothness(cfg),
        "det-identities" => check_det_identities(cfg),
        "conservation" => check_conservation(cfg),
        "t-cover" => check_t_cover(cfg),
        "psi-roundtrip" => check_psi_roundtrip(cfg),
        "psi-image-in-dg" => check_psi_image_in_dg(cfg),
        "counting" => check_counting(cfg),
        "eta-injectivity-on-dg" => check_eta_injectivity(cfg),
        "pi-injectivity" => check_pi_injectivity(cfg),
        "linearization" => check_linearization(cfg),
        "bbs-toda-diagram" => check_bbs_toda_diagram(cfg),
        other => Err(Error::UnknownCheck {
            name: other.to_string(),
        }),
    }
}

/// Run every registry check.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    CHECK_NAMES.iter().map(|n| run_check(n, cfg)).collect()
}

fn rng_for(cfg: &VerifyConfig, check: &str) -> ChaCha8Rng {
    // Offset the stream per check so checks stay independent of ordering.
    let salt: u64 = check.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

/// Random state with min entry zero, on a generic level. `None` when the
/// draw missed the phase space or genericity.
fn random_state(rng: &mut ChaCha8Rng, n: usize, rational: bool) -> Option<TodaState> {
    let denom = if rational { [1i64, 2, 3][rng.gen_range(0..3)] } else { 1 };
    let entry = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(0..=10), denom);
    let mut q: Vec<Rational> = (0..n).map(|_| entry(rng)).collect();
    let mut w: Vec<Rational> = (0..n).map(|_| entry(rng)).collect();
    let m = q
        .iter()
        .chain(w.iter())
        .cloned()
        .reduce(|a, b| if a <= b { a } else { b })?;
    for x in q.iter_mut().chain(w.iter_mut()) {
        *x = &*x - &m;
    }
    let s = TodaState::new(q, w).ok()?;
    conserved(&s).is_generic().ok()?;
    Some(s)
}

fn sample_states(rng: &mut ChaCha8Rng, count: usize, max_genus: usize, rational: bool) -> Vec<TodaState> {
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 60 {
        attempts += 1;
        let n = rng.gen_range(2..=max_genus + 1);
        if let Some(s) = random_state(rng, n, rational) {
            out.push(s);
        }
    }
    out
}

/// Random divisor in `D^g`, built by placing one point on each basis cycle.
fn random_dg_divisor(rng: &mut ChaCha8Rng, cm: &CurveModel) -> Result<Divisor> {
    let cycles = cm.cycles();
    loop {
        let pts = cycles
            .iter()
            .map(|cyc| {
                let (eid, _) = cyc[rng.gen_range(0..cyc.len())];
                let len = cm.edge(eid).expect("cycle edge").length.clone();
                let offset = &len * &Rational::new(rng.gen_range(0..=12), 12);
                GraphPoint::new(eid, offset)
            })
            .collect();
        let d = Divisor::new(cm, pts)?;
        if in_dg(cm, &d)? {
            return Ok(d);
        }
    }
}

fn check_smoothness(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("smoothness", cfg.seed);
    let mut rng = rng_for(cfg, "smoothness");
    let mut curves: Vec<(String, ConservedVector)> = cfg
        .curves
        .iter()
        .map(|c| (c.to_string(), c.clone()))
        .collect();
    for s in sample_states(&mut rng, cfg.samples / 2, 3, true) {
        let cv = conserved(&s);
        curves.push((format!("level of random state {s}"), cv));
    }

    let mut generic_ok = true;
    let mut stars_ok = true;
    let mut unimodular_ok = true;
    let mut detail = String::new();
    let mut count = 0;
    for (label, cv) in &curves {
        if let Err(e) = cv.is_generic() {
            generic_ok = false;
            detail = format!("{label}: {e}");
            break;
        }
        let cm = CurveModel::build(cv)?;
        count += 1;
        for (v, star) in cm.vertex_stars().iter().enumerate() {
            if star.len() != 3 {
                stars_ok = false;
                detail = format!("{label}: vertex {v} has valence {}", star.len());
            }
            let sum = star.iter().fold((0i64, 0i64), |a, d| (a.0 + d.0, a.1 + d.1));
            if sum != (0, 0) {
                stars_ok = false;
                detail = format!("{label}: vertex {v} unbalanced {sum:?}");
            }
            for i in 0..star.len() {
                for j in i + 1..star.len() {
                    let det = star[i].0 * star[j].1 - star[i].1 * star[j].0;
                    if det.abs() != 1 {
                        unimodular_ok = false;
                        detail = format!("{label}: vertex {v} pair ({i},{j}) det {det}");
                    }
                }
            }
        }
    }
    rep.prop(
        "generic-inequalities-hold",
        generic_ok,
        if generic_ok {
            format!("{count} curves strictly convex")
        } else {
            detail.clone()
        },
    );
    rep.prop(
        "vertices-trivalent-balanced",
        stars_ok,
        if stars_ok {
            "every vertex star has three balanced primitive directions".into()
        } else {
            detail.clone()
        },
    );
    rep.prop(
        "vertex-stars-unimodular",
        unimodular_ok,
        if unimodular_ok {
            "all adjacent direction pairs have determinant +-1".into()
        } else {
            detail
        },
    );
    Ok(rep)
}

fn mat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let mut m = RatMat::zero(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut acc = Rational::zero();
            for k in 0..a.ncols() {
                acc += &(a.at(i, k) * b.at(k, j));
            }
            m.rows[i][j] = acc;
        }
    }
    m
}

fn mat_transpose(a: &RatMat) -> RatMat {
    let mut m = RatMat::zero(a.ncols(), a.nrows());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            m.rows[j][i] = a.at(i, j).clone();
        }
    }
    m
}

fn check_det_identities(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("det-identities", cfg.seed);
    let mut rng = rng_for(cfg, "det-identities");
    let mut curves = cfg.curves.clone();
    for s in sample_states(&mut rng, cfg.samples / 2, 3, true) {
        curves.push(conserved(&s));
    }

    let mut all = [true; 5];
    let mut details = vec![String::new(); 5];
    let mut n = 0;
    for cv in &curves {
        if cv.is_generic().is_err() {
            continue;
        }
        let cm = CurveModel::build(cv)?;
        let jac = Jacobian::new(&cm, None)?;
        let pd = jac.periods();
        let g = cm.genus();
        n += 1;

        let mut fail = |idx: usize, msg: String| {
            all[idx] = false;
            if details[idx].is_empty() {
                details[idx] = format!("{cv}: {msg}");
            }
        };

        if &jac.gram() != pd.k() {
            fail(0, "overlap Gram differs from tridiagonal matrix".into());
        }
        let lklt = mat_mul(&mat_mul(pd.l_mat(), pd.k()), &mat_transpose(pd.l_mat()));
        if &lklt != pd.lambda_mat() {
            fail(1, "Lambda != L K L^T".into());
        }
        let gp1 = Rational::from_int(g as i64 + 1);
        let mut closed = cm.conserved().c(-1).clone();
        for k in 1..g {
            closed = &closed * &cm.rung_length(k);
        }
        if pd.lambda_mat().det() != *pd.det()
            || &gp1 * &pd.a_mat().det() != *pd.det()
            || &gp1 * &closed != *pd.det()
        {
            fail(2, format!("determinant chain broken (det K = {})", pd.det()));
        }
        let ones = vec![Rational::one(); g];
        let c1 = cm.conserved().c(-1);
        if pd.a_mat().mul_vec(&ones) != vec![c1.clone(); g]
            || pd.lambda_mat().mul_vec(&ones) != vec![&gp1 * c1; g]
        {
            fail(3, "all-ones eigenvector identity broken".into());
        }
        // Lambda Z^g inside A Z^g with index g+1: A^{-1} Lambda integral.
        let mut integral = true;
        for j in 0..g {
            let col = pd.lambda_mat().column(j);
            let x = pd.a_mat().solve(&col)?;
            if !x.iter().all(Rational::is_integer) {
                integral = false;
            }
        }
        if !integral {
            fail(4, "A^{-1} Lambda not integral".into());
        }
    }

    let names = [
        "gram-matches-tridiagonal",
        "lambda-equals-l-k-lt",
        "determinant-chain",
        "all-ones-eigenvector",
        "lattice-index-genus-plus-one",
    ];
    for (i, name) in names.iter().enumerate() {
        rep.prop(
            *name,
            all[i],
            if all[i] {
                format!("holds on {n} curves")
            } else {
                details[i].clone()
            },
        );
    }
    Ok(rep)
}

fn check_conservation(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("conservation", cfg.seed);
    let mut rng = rng_for(cfg, "conservation");

    let mut states: Vec<TodaState> = Vec::new();
    for cv in &cfg.curves {
        let all = enumerate_isolevel(cv)?;
        let step = (all.len() / 12).max(1);
        states.extend(all.into_iter().step_by(step));
    }
    states.extend(sample_states(&mut rng, cfg.samples, 4, true));

    let mut flow_ok = true;
    let mut shift_ok = true;
    let mut detail = String::new();
    for s0 in &states {
        let c = conserved(s0);
        let mut s = s0.clone();
        for t in 0..cfg.steps {
            s = match evolve(&s) {
                Ok(next) => next,
                Err(e) => {
                    flow_ok = false;
                    detail = format!("step {t} from {s0}: {e}");
                    break;
                }
            };
            if conserved(&s) != c {
                flow_ok = false;
                detail = format!("level changed at step {} from {s0}", t + 1);
                break;
            }
        }
        if conserved(&shift(s0)) != c {
            shift_ok = false;
            detail = format!("shift changed the level of {s0}");
        }
    }
    rep.prop(
        "flow-preserves-levels",
        flow_ok,
        if flow_ok {
            format!("{} orbits of length {}", states.len(), cfg.steps)
        } else {
            detail.clone()
        },
    );
    rep.prop(
        "shift-preserves-levels",
        shift_ok,
        if shift_ok {
            format!("{} states", states.len())
        } else {
            detail
        },
    );
    Ok(rep)
}

fn check_t_cover(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("t-cover", cfg.seed);
    for cv in &cfg.curves {
        let states = enumerate_isolevel(cv)?;
        let n = cv.entries().len() - 1; // g + 1
        let mut sizes = vec![0usize; n];
        let mut unique_ok = true;
        let mut lemma_ok = true;
        let mut detail = String::new();
        for s in &states {
            match t0_membership(s) {
                Ok(i) => sizes[i] += 1,
                Err(e) => {
                    unique_ok = false;
                    detail = format!("{s}: {e}");
                }
            }
            if in_t0(s) {
                let q = s.q();
                let w = s.w();
                let qpos = (1..n - 1).all(|i| q[i].is_positive());
                let wpos = (0..n - 1).all(|j| w[j].is_positive());
                if !qpos || !wpos {
                    lemma_ok = false;
                    detail = format!("{s} in the base sector violates positivity");
                }
            }
        }
        rep.prop(
            format!("sectors-partition-isolevel-{cv}"),
            unique_ok,
            if unique_ok {
                format!("{} states each in exactly one sector", states.len())
            } else {
                detail.clone()
            },
        );
        let equal = sizes.iter().all(|&c| c == states.len() / n);
        rep.prop(
            format!("sector-sizes-equal-{cv}"),
            unique_ok && equal,
            format!("sizes {sizes:?}"),
        );
        rep.prop(
            format!("base-sector-positivity-{cv}"),
            lemma_ok,
            if lemma_ok {
                "interior entries strictly positive in the base sector".into()
            } else {
                detail
            },
        );
    }
    Ok(rep)
}

fn check_psi_roundtrip(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("psi-roundtrip", cfg.seed);
    let mut rng = rng_for(cfg, "psi-roundtrip");

    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        let g = cm.genus();
        if g > 3 {
            rep.info(
                format!("skipped-{cv}"),
                format!("eigenvector map unimplemented at genus {g}"),
            );
            continue;
        }
        let states = enumerate_isolevel(cv)?;
        if g <= 2 {
            let mut ok = true;
            let mut detail = String::new();
            for s in &states {
                let back = psi(&cm, s).and_then(|d| psi_inverse(&cm, &d));
                if back.as_ref() != Ok(s) {
                    ok = false;
                    detail = format!("{s} -> {back:?}");
                    break;
                }
            }
            rep.prop(
                format!("inverse-roundtrip-isolevel-{cv}"),
                ok,
                if ok { format!("{} states", states.len()) } else { detail },
            );
        } else {
            let mut images = std::collections::BTreeSet::new();
            let mut ok = true;
            for s in &states {
                if !images.insert(psi(&cm, s)?.points().to_vec()) {
                    ok = false;
                }
            }
            rep.prop(
                format!("injective-on-isolevel-{cv}"),
                ok,
                format!("{} states, {} distinct divisors", states.len(), images.len()),
            );
            rep.info(
                format!("inverse-unavailable-{cv}"),
                "no closed-form inverse at genus 3; injectivity checked instead",
            );
        }
    }

    let mut ok = true;
    let mut detail = String::new();
    let mut n = 0;
    for s in sample_states(&mut rng, cfg.samples, 2, true) {
        let cv = conserved(&s);
        let cm = CurveModel::build(&cv)?;
        let back = psi(&cm, &s).and_then(|d| psi_inverse(&cm, &d));
        if back.as_ref() != Ok(&s) {
            ok = false;
            detail = format!("{s} -> {back:?}");
            break;
        }
        n += 1;
    }
    rep.prop(
        "inverse-roundtrip-rational",
        ok,
        if ok { format!("{n} random rational states") } else { detail },
    );
    Ok(rep)
}

fn check_psi_image_in_dg(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("psi-image-in-dg", cfg.seed);
    let mut rng = rng_for(cfg, "psi-image-in-dg");
    let mut forced = 0usize;

    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        if cm.genus() > 3 {
            rep.info(
                format!("skipped-{cv}"),
                format!("eigenvector map unimplemented at genus {}", cm.genus()),
            );
            continue;
        }
        let states = enumerate_isolevel(cv)?;
        let mut ok = true;
        let mut detail = String::new();
        for s in &states {
            let d = psi(&cm, s)?;
            if !in_dg(&cm, &d)? {
                ok = false;
                detail = format!("psi({s}) = {d} outside the distinguished family");
                break;
            }
            if cm.genus() == 3 && sheet_selection(&cm, s)?.forced {
                forced += 1;
            }
        }
        rep.prop(
            format!("image-in-dg-isolevel-{cv}"),
            ok,
            if ok { format!("{} states", states.len()) } else { detail },
        );
    }

    let mut ok = true;
    let mut detail = String::new();
    let mut n = 0;
    for s in sample_states(&mut rng, cfg.samples, 3, true) {
        let cv = conserved(&s);
        let cm = CurveModel::build(&cv)?;
        let d = psi(&cm, &s)?;
        if !in_dg(&cm, &d)? {
            ok = false;
            detail = format!("psi({s}) = {d} outside the distinguished family");
            break;
        }
        n += 1;
    }
    rep.prop(
        "image-in-dg-rational",
        ok,
        if ok { format!("{n} random rational states") } else { detail },
    );
    rep.info(
        "forced-sheet-selections",
        format!("{forced} genus-3 states needed the relaxed sheet rule"),
    );
    Ok(rep)
}

fn check_counting(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("counting", cfg.seed);
    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        let jac = Jacobian::new(&cm, None)?;
        let g = cm.genus();
        let states = enumerate_isolevel(cv)?;
        let det = jac.periods().det().clone();
        rep.prop(
            format!("isolevel-count-equals-det-{cv}"),
            Rational::from_int(states.len() as i64) == det,
            format!("{} states, det = {det}", states.len()),
        );

        let base: Vec<&TodaState> = states.iter().filter(|s| in_t0(s)).collect();
        let mut bbs: Vec<BbsState> = Vec::new();
        let mut rho_ok = true;
        for s in &base {
            match rho(s) {
                Ok(b) => bbs.push(b),
                Err(e) => {
                    rho_ok = false;
                    rep.prop(
                        format!("base-sector-encodes-{cv}"),
                        false,
                        format!("{s}: {e}"),
                    );
                    break;
                }
            }
        }
        if rho_ok {
            bbs.sort_by_key(|b| b.to_string());
            bbs.dedup();
            let expected = &det / &Rational::from_int(g as i64 + 1);
            rep.prop(
                format!("bbs-count-equals-det-over-n-{cv}"),
                Rational::from_int(bbs.len() as i64) == expected,
                format!("{} box-ball states, det/(g+1) = {expected}", bbs.len()),
            );
            let boxes = cv.c(-1).as_integer();
            match boxes {
                Some(l) if l <= num::BigInt::from(13) => {
                    let scanned = enumerate_bbs(cv)?;
                    rep.prop(
                        format!("bbs-scan-matches-encoding-{cv}"),
                        scanned == bbs,
                        format!("direct scan of 2^{l} strings found {}", scanned.len()),
                    );
                }
                _ => rep.info(
                    format!("bbs-scan-skipped-{cv}"),
                    "direct scan skipped for large box count",
                ),
            }
        }
    }
    Ok(rep)
}

fn check_eta_injectivity(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("eta-injectivity-on-dg", cfg.seed);
    let mut rng = rng_for(cfg, "eta-injectivity-on-dg");

    // Path independence: two spanning trees give the same class.
    let mut ok = true;
    let mut detail = String::new();
    let mut n = 0;
    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        let g = cm.genus();
        let default = Jacobian::new(&cm, None)?;
        let mut alt_edges: Vec<usize> = vec![g];
        alt_edges.extend(g + 1..=3 * g);
        let alt = Jacobian::with_tree(&cm, None, &alt_edges)?;
        for e in cm.edges() {
            for k in 0..3i64 {
                let p = GraphPoint::new(e.id, &e.length * &Rational::new(k, 3));
                let a = JacPoint::alpha(default.iota(&p)?);
                let b = JacPoint::alpha(alt.iota(&p)?);
                if !default.jac_equal(&a, &b)? {
                    ok = false;
                    detail = format!("{cv}: point {p} maps to {a} vs {b}");
                }
                n += 1;
            }
        }
    }
    rep.prop(
        "path-independence",
        ok,
        if ok { format!("{n} points, two spanning trees") } else { detail },
    );

    // Genus 1: the Abel-Jacobi map is a bijection Gamma -> R/det, realized
    // by an exact interval tiling by the four edges.
    for cv in cfg.curves.iter().filter(|c| c.entries().len() == 3) {
        let cm = CurveModel::build(cv)?;
        let jac = Jacobian::new(&cm, None)?;
        let det = jac.periods().det().clone();
        let cyc = &cm.cycles()[0];
        let mut intervals: Vec<(Rational, Rational)> = Vec::new();
        let mut total = Rational::zero();
        for e in cm.edges() {
            // Evaluate at the edge midpoint and extend affinely: the map is
            // linear on the edge with slope given by the cycle coefficient,
            // and interior points have no canonical alias to jump to.
            let coeff: i64 = cyc
                .iter()
                .filter(|(eid, _)| *eid == e.id)
                .map(|(_, s)| *s as i64)
                .sum();
            let half = &e.length / &Rational::from_int(2);
            let m = jac.iota(&GraphPoint::new(e.id, half.clone()))?[0].clone();
            let reach = &Rational::from_int(coeff) * &half;
            let a = &m - &reach;
            let b = &m + &reach;
            let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
            while lo.is_negative() {
                lo = &lo + &det;
                hi = &hi + &det;
            }
            while lo >= det {
                lo = &lo - &det;
                hi = &hi - &det;
            }
            total += &(&hi - &lo);
            intervals.push((lo, hi));
        }
        intervals.sort();
        let mut tiles = total == det && intervals[0].0 == Rational::zero();
        for w in intervals.windows(2) {
            tiles &= w[0].1 == w[1].0;
        }
        tiles &= intervals.last().map(|i| i.1 == det).unwrap_or(false);
        let shown: Vec<String> = intervals
            .iter()
            .map(|(a, b)| format!("[{a},{b}]"))
            .collect();
        rep.prop(
            format!("genus1-interval-tiling-{cv}"),
            tiles,
            format!("edges cover R/{det} as {}", shown.join(" ")),
        );
    }

    // Injectivity on sampled distinguished divisors.
    let mut ok = true;
    let mut detail = String::new();
    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        let jac = Jacobian::new(&cm, None)?;
        let mut seen: Vec<(Divisor, JacPoint)> = Vec::new();
        for _ in 0..cfg.samples {
            let d = random_dg_divisor(&mut rng, &cm)?;
            let z = jac.reduce(&jac.eta(&d)?)?;
            for (d0, z0) in &seen {
                if *z0 == z && *d0 != d {
                    ok = false;
                    detail = format!("{cv}: {d0} and {d} share class {z}");
                }
            }
            seen.push((d, z));
        }
    }
    rep.prop(
        "injective-on-sampled-divisors",
        ok,
        if ok {
            format!("{} divisors per curve, all classes distinct", cfg.samples)
        } else {
            detail
        },
    );
    Ok(rep)
}

fn check_pi_injectivity(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("pi-injectivity", cfg.seed);
    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        if cm.genus() > 3 {
            rep.info(
                format!("skipped-{cv}"),
                format!("eigenvector map unimplemented at genus {}", cm.genus()),
            );
            continue;
        }
        let jac = Jacobian::new(&cm, None)?;
        let states = enumerate_isolevel(cv)?;
        let mut image = std::collections::BTreeSet::new();
        for s in &states {
            image.insert(jac.reduce(&pi(&jac, s)?)?.z);
        }
        rep.prop(
            format!("injective-on-isolevel-{cv}"),
            image.len() == states.len(),
            format!("{} states, {} classes", states.len(), image.len()),
        );
        let torus: std::collections::BTreeSet<Vec<Rational>> =
            jac.integer_points()?.into_iter().collect();
        let full = image == torus;
        let msg = format!(
            "image covers {} of {} integer points of the Jacobian",
            image.intersection(&torus).count(),
            torus.len()
        );
        if cm.genus() <= 2 {
            rep.prop(format!("image-is-integer-torus-{cv}"), full, msg);
        } else {
            // Bijectivity is not established at genus 3; record the
            // evidence without relying on it.
            rep.conjecture(format!("image-is-integer-torus-{cv}"), full, msg);
        }
    }
    Ok(rep)
}

fn check_linearization(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("linearization", cfg.seed);
    let mut rng = rng_for(cfg, "linearization");

    let mut flow_ok = true;
    let mut shift_ok = true;
    let mut flow_detail = String::new();
    let mut shift_detail = String::new();
    let mut orbits = 0;

    let mut targets: Vec<TodaState> = Vec::new();
    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        if cm.genus() > 3 {
            continue;
        }
        let all = enumerate_isolevel(cv)?;
        let step = (all.len() / 6).max(1);
        targets.extend(all.into_iter().step_by(step));
    }
    targets.extend(sample_states(&mut rng, cfg.samples / 2, 3, true));

    for s0 in &targets {
        let cv = conserved(s0);
        let cm = CurveModel::build(&cv)?;
        let jac = Jacobian::new(&cm, None)?;
        let delta = jac.evolution_shift();
        orbits += 1;

        let mut s = s0.clone();
        let mut expect = pi(&jac, &s)?;
        for t in 0..cfg.steps {
            s = evolve(&s)?;
            expect = JacPoint::alpha(
                expect.z.iter().zip(&delta.z).map(|(a, b)| a + b).collect(),
            );
            let got = pi(&jac, &s)?;
            if !jac.jac_equal(&got, &expect)? {
                flow_ok = false;
                flow_detail = format!("orbit of {s0}, step {}", t + 1);
                break;
            }
        }

        let here = jac.to_gamma(&pi(&jac, s0)?);
        let there = jac.to_gamma(&pi(&jac, &shift(s0))?);
        if !jac.jac_equal(&jac.translate_nu(&there), &here)? {
            shift_ok = false;
            shift_detail = format!("shift of {s0}");
        }
    }
    rep.prop(
        "flow-translates-by-delta",
        flow_ok,
        if flow_ok {
            format!("{orbits} orbits of length {}", cfg.steps)
        } else {
            flow_detail
        },
    );
    rep.prop(
        "shift-translates-in-cumulative-basis",
        shift_ok,
        if shift_ok {
            format!("{orbits} states")
        } else {
            shift_detail
        },
    );
    Ok(rep)
}

fn check_bbs_toda_diagram(cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("bbs-toda-diagram", cfg.seed);
    for cv in &cfg.curves {
        let cm = CurveModel::build(cv)?;
        let g = cm.genus();
        let n = g + 1;
        let states = enumerate_isolevel(cv)?;
        let base: Vec<&TodaState> = states.iter().filter(|s| in_t0(s)).collect();

        let mut codec_ok = true;
        let mut diagram_ok = true;
        let mut detail = String::new();
        for s in &base {
            let b = rho(s)?;
            let back = beta(&b)?;
            if back != **s {
                codec_ok = false;
                detail = format!("rho/beta roundtrip broke at {s} -> {b}");
                break;
            }
            let evolved = bbs_evolve(&b);
            let toda_next = evolve(s)?;
            let i = t0_membership(&toda_next)?;
            let expected = shift_n(&toda_next, (n - i) % n);
            if beta(&evolved)? != expected {
                diagram_ok = false;
                detail = format!("dictionary broke at {b}");
                break;
            }
        }
        rep.prop(
            format!("encoding-roundtrip-{cv}"),
            codec_ok,
            if codec_ok {
                format!("{} base-sector states", base.len())
            } else {
                detail.clone()
            },
        );
        rep.prop(
            format!("dictionary-commutes-{cv}"),
            diagram_ok,
            if diagram_ok {
                format!("{} box-ball steps", base.len())
            } else {
                detail.clone()
            },
        );

        if g > 3 {
            continue;
        }
        let jac = Jacobian::new(&cm, None)?;
        let mut jprime_ok = true;
        let mut orbit_ok = true;
        let mut detail = String::new();
        for s in &base {
            // The shift quotient J' linearizes the box-ball flow.
            let b = rho(s)?;
            let here = jac.to_jprime(&pi(&jac, s)?)?;
            let there = jac.to_jprime(&pi(&jac, &beta(&bbs_evolve(&b))?)?)?;
            let moved = JacPoint::new(
                pi(&jac, s)?
                    .z
                    .iter()
                    .zip(&jac.evolution_shift().z)
                    .map(|(a, b)| a + b)
                    .collect(),
                crate::jacobian::Basis::Alpha,
            );
            if there != jac.to_jprime(&moved)? {
                jprime_ok = false;
                detail = format!("J' step broke at {b}");
                break;
            }

            // The g+1 shifts of a state are distinct in J but equal in J'.
            let mut classes = std::collections::BTreeSet::new();
            for i in 0..n {
                let t = shift_n(s, i);
                let z = jac.to_gamma(&pi(&jac, &t)?);
                classes.insert(jac.reduce(&z)?.z);
                if jac.to_jprime(&z)? != here {
                    orbit_ok = false;
                    detail = format!("shift orbit of {s} leaves its J' class");
                }
            }
            if classes.len() != n {
                orbit_ok = false;
                detail = format!(
                    "shift orbit of {s} has only {} distinct classes in J",
                    classes.len()
                );
            }
        }
        rep.prop(
            format!("jprime-linearizes-bbs-{cv}"),
            jprime_ok,
            if jprime_ok {
                format!("{} steps", base.len())
            } else {
                detail.clone()
            },
        );
        rep.prop(
            format!("shift-orbits-collapse-in-jprime-{cv}"),
            orbit_ok,
            if orbit_ok {
                format!("{} orbits of {} shifts", base.len(), n)
            } else {
                detail
            },
        );
    }
    Ok(rep)
}
