//! Periodic box-ball system and its correspondence with the Toda lattice.
//!
//! A box-ball state is a cyclic row of `L` boxes, each empty (`0`) or holding
//! one ball (`1`), with strictly fewer balls than empty boxes. One time step
//! moves every ball exactly once to the nearest empty box on its cyclic right,
//! where "empty" ignores boxes already involved in this step: a box vacated
//! this step cannot be refilled, and a box filled this step is no longer
//! empty. The result does not depend on the order in which balls are picked;
//! the test suite exercises that with shuffled orders.
//!
//! The dictionary with the Toda lattice reads the run-length data of the row
//! anchored at box 1: [`beta`] produces a Toda state in the fundamental
//! sector, and [`rho`] writes a fundamental-sector Toda state back as a row.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::toda::{conserved, in_t0, ConservedVector, TodaState};

/// Cyclic row of boxes; `true` marks a ball. Always satisfies
/// `2 * balls < boxes` (the image of the Toda phase space).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BbsState {
    cells: Vec<bool>,
}

impl BbsState {
    pub fn new(cells: Vec<bool>) -> Result<Self> {
        let balls = cells.iter().filter(|&&b| b).count();
        if 2 * balls >= cells.len() {
            return Err(Error::BbsTooDense {
                state: cells.iter().map(|&b| if b { '1' } else { '0' }).collect(),
                balls,
                boxes: cells.len(),
            });
        }
        Ok(BbsState { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn balls(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }
}

impl FromStr for BbsState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cells = Vec::with_capacity(s.len());
        for (position, ch) in s.chars().enumerate() {
            match ch {
                '0' => cells.push(false),
                '1' => cells.push(true),
                found => return Err(Error::BbsParse { position, found }),
            }
        }
        BbsState::new(cells)
    }
}

impl TryFrom<String> for BbsState {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BbsState> for String {
    fn from(b: BbsState) -> String {
        b.to_string()
    }
}

impl fmt::Display for BbsState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.cells {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One time step, processing balls left to right.
pub fn bbs_evolve(s: &BbsState) -> BbsState {
    let order: Vec<usize> = (0..s.len()).filter(|&i| s.cells[i]).collect();
    bbs_evolve_in_order(s, &order)
}

/// One time step, moving the balls in the given order (a permutation of the
/// ball positions). The outcome is provably order-independent; exposing the
/// order lets tests check exactly that.
pub fn bbs_evolve_in_order(s: &BbsState, order: &[usize]) -> BbsState {
    let n = s.len();
    // Boxes that were empty at the start of the step and are still unfilled.
    let mut open: Vec<bool> = s.cells.iter().map(|&b| !b).collect();
    let mut filled = vec![false; n];
    for &ball in order {
        assert!(s.cells[ball], "order must list ball positions");
        let mut j = (ball + 1) % n;
        loop {
            if open[j] {
                open[j] = false;
                filled[j] = true;
                break;
            }
            j = (j + 1) % n;
            assert!(j != ball, "no open box found; density bound violated");
        }
    }
    // Every ball moved away from its box, so the new balls are exactly the
    // boxes filled this step.
    BbsState { cells: filled }
}

pub fn bbs_evolve_n(s: &BbsState, t: usize) -> BbsState {
    let mut cur = s.clone();
    for _ in 0..t {
        cur = bbs_evolve(&cur);
    }
    cur
}

/// Run-length reading of a row into a fundamental-sector Toda state.
///
/// Anchored at box 1, the row factors as alternating runs of empty boxes and
/// balls. Ball runs become box sizes `Q_i`, empty runs become gaps `W_i`:
///
/// * row starts with `0`: the leading empty run is `W_1` and `Q_1 = 0`;
/// * row starts with `1`: the leading ball run is `Q_1`;
/// * row ends with `1`: the trailing ball run is `Q_{g+1}` and `W_{g+1} = 0`;
/// * row ends with `0` after starting with `1`: a zero-size pair
///   `Q_{g+1} = W_{g+1} = 0` pads the data.
///
/// The result always lands in the fundamental sector `T^0` and satisfies
/// `sum(Q) + sum(W) = L` and `sum(Q) < sum(W)`.
pub fn beta(b: &BbsState) -> Result<TodaState> {
    let fail = |reason: &str| Error::BbsRunParse {
        state: b.to_string(),
        reason: reason.to_string(),
    };
    if b.balls() == 0 {
        return Err(fail("the row has no balls, so there is no soliton data"));
    }

    // Run-length factorization: (value, length) with values alternating.
    let mut runs: Vec<(bool, i64)> = Vec::new();
    for &cell in &b.cells {
        match runs.last_mut() {
            Some((v, len)) if *v == cell => *len += 1,
            _ => runs.push((cell, 1)),
        }
    }

    let mut q: Vec<i64> = Vec::new();
    let mut w: Vec<i64> = Vec::new();
    if !runs[0].0 {
        q.push(0);
    }
    for &(value, len) in &runs {
        if value {
            q.push(len);
        } else {
            w.push(len);
        }
    }
    match runs.last().expect("nonempty").0 {
        true => w.push(0),           // row ends with a ball run
        false if runs[0].0 => {
            q.push(0);               // started with balls, ended with gaps
            w.push(0);
        }
        false => {}                  // leading and trailing gaps already paired
    }
    debug_assert_eq!(q.len(), w.len());

    let state = TodaState::from_ints(&q, &w).map_err(|e| match e {
        Error::NotInPhaseSpace { .. } => fail("ball runs outweigh gaps"),
        other => other,
    })?;
    if state.genus() < 1 {
        return Err(fail("fewer than two (Q, W) pairs"));
    }
    debug_assert!(in_t0(&state), "run reading must land in T^0: {state}");
    debug_assert_eq!(
        state.q().iter().sum::<Rational>() + state.w().iter().sum::<Rational>(),
        Rational::from_int(b.len() as i64)
    );
    Ok(state)
}

/// Inverse of [`beta`]: write a fundamental-sector Toda state with
/// nonnegative integer entries as a box-ball row.
///
/// On generic isolevel sets every fundamental-sector state has strictly
/// positive interior entries and the two readings invert each other. A state
/// with a zero interior entry (possible only off the generic locus) still
/// writes a row, but adjacent runs merge and [`beta`] reads back a state of
/// lower genus.
pub fn rho(s: &TodaState) -> Result<BbsState> {
    let not_t0 = |reason: &str| Error::NotInT0 {
        state: s.to_string(),
        reason: reason.to_string(),
    };
    if !in_t0(s) {
        return Err(not_t0(
            "requires W_1 > 0 and (Q_1 = 0 or W_{g+1} = 0)",
        ));
    }
    if !s.is_integral() {
        return Err(not_t0("entries must be integers to form boxes"));
    }
    if s.min_entry().is_negative() {
        return Err(not_t0("entries must be nonnegative to form boxes"));
    }

    let int = |r: &Rational| -> usize {
        let v: i64 = r.as_integer().expect("integral").try_into().expect("box count fits");
        v as usize
    };
    let n = s.len();
    let mut row = String::new();
    if s.q()[0].is_zero() {
        // 0^{W_1} 1^{Q_2} 0^{W_2} ... 1^{Q_{g+1}} 0^{W_{g+1}}
        for i in 0..n {
            if i > 0 {
                row.push_str(&"1".repeat(int(&s.q()[i])));
            }
            row.push_str(&"0".repeat(int(&s.w()[i])));
        }
        // W_1 opens the row, so the sector condition W_1 > 0 keeps the
        // reading anchored: the row genuinely starts with a gap.
    } else {
        // 1^{Q_1} 0^{W_1} ... 0^{W_g} 1^{Q_{g+1}}   (W_{g+1} = 0 here)
        for i in 0..n {
            row.push_str(&"1".repeat(int(&s.q()[i])));
            row.push_str(&"0".repeat(int(&s.w()[i])));
        }
    }
    row.parse()
}

/// Conserved vector of the Toda state read off a row.
pub fn invariants_of(b: &BbsState) -> Result<ConservedVector> {
    Ok(conserved(&beta(b)?))
}

/// Every row of length `C_{-1}` whose soliton data lies on the isolevel set
/// of `cv`, in lexicographic order (`0 < 1`). Exhaustive scan over all
/// `2^L` rows; intended for the small curves used in tests and checks.
pub fn enumerate_bbs(cv: &ConservedVector) -> Result<Vec<BbsState>> {
    cv.is_generic()?;
    if !cv.is_integral() {
        return Err(Error::Invalid(
            "box-ball enumeration needs an integer conserved vector".into(),
        ));
    }
    let l: u32 = cv
        .c(-1)
        .as_integer()
        .expect("integral")
        .try_into()
        .map_err(|_| Error::Invalid("C_-1 out of range".into()))?;
    assert!(l <= 26, "2^L scan is impractical beyond small rows");
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << l) {
        // Lexicographic order over the row string: bit L-1 is box 1.
        let cells: Vec<bool> = (0..l).rev().map(|k| bits >> k & 1 == 1).collect();
        let Ok(b) = BbsState::new(cells) else {
            continue;
        };
        if b.balls() == 0 {
            continue;
        }
        if &invariants_of(&b).expect("nonempty valid row") == cv {
            out.push(b);
        }
    }
    Ok(out)
}
