//! Ultra-discrete periodic Toda lattice.
//!
//! A state of genus `g` is a pair of vectors `(Q_1..Q_{g+1}, W_1..W_{g+1})`
//! with `sum(Q) < sum(W)` (the phase-space condition). One time step is
//!
//! ```text
//! Q'_i = min[ W_i, Q_i - X_i ]
//! W'_i = Q_{i+1} + W_i - Q'_i
//! X_i  = min_{k=0..g} sum_{l=1..k} (W_{i-l} - Q_{i-l})      (k = 0 term is 0)
//! ```
//!
//! with all indices cyclic mod `g+1`. The spectral data of the dynamics is the
//! conserved vector `C = (C_{-1}, C_0, ..., C_g)`: `C_{-1} = sum(Q) + sum(W)`,
//! and for `0 <= k <= g` the quantity `C_{g-k}` is the minimum of
//! `sum_{i in S} Q_i + sum_{j in T} W_j` over index sets `S, T` of total size
//! `k+1` such that no `j in T` equals `i` or `i-1` (cyclically) for any
//! `i in S`. That index-set rule reproduces the classical surviving terms of
//! the characteristic polynomial of the periodic Lax matrix after
//! ultra-discretization; it is validated in the test suite both against the
//! explicit closed forms at `k = 0, 1, g` and by exact invariance under the
//! evolution.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{rmin, Rational};
use crate::workers::parallel_flat_map;

/// State of the ultra-discrete periodic Toda lattice, `g+1` box sizes `Q`
/// and `g+1` gap sizes `W`, with `sum(Q) < sum(W)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TodaStateRepr", into = "TodaStateRepr")]
pub struct TodaState {
    q: Vec<Rational>,
    w: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct TodaStateRepr {
    g: usize,
    #[serde(rename = "Q")]
    q: Vec<Rational>,
    #[serde(rename = "W")]
    w: Vec<Rational>,
}

impl TryFrom<TodaStateRepr> for TodaState {
    type Error = Error;
    fn try_from(r: TodaStateRepr) -> Result<Self> {
        if r.q.len() != r.g + 1 || r.w.len() != r.g + 1 {
            return Err(Error::DimensionMismatch {
                expected: r.g + 1,
                got: if r.q.len() != r.g + 1 { r.q.len() } else { r.w.len() },
            });
        }
        TodaState::new(r.q, r.w)
    }
}

impl From<TodaState> for TodaStateRepr {
    fn from(s: TodaState) -> Self {
        TodaStateRepr {
            g: s.genus(),
            q: s.q,
            w: s.w,
        }
    }
}

impl TodaState {
    /// Build a state, enforcing the phase-space condition `sum(Q) < sum(W)`.
    pub fn new(q: Vec<Rational>, w: Vec<Rational>) -> Result<Self> {
        if q.len() != w.len() {
            return Err(Error::DimensionMismatch {
                expected: q.len(),
                got: w.len(),
            });
        }
        if q.len() < 2 {
            return Err(Error::Invalid(
                "a Toda state needs at least two (Q, W) pairs (genus >= 1)".into(),
            ));
        }
        let sum_q: Rational = q.iter().sum();
        let sum_w: Rational = w.iter().sum();
        if sum_q >= sum_w {
            return Err(Error::NotInPhaseSpace {
                sum_q: sum_q.to_string(),
                sum_w: sum_w.to_string(),
            });
        }
        Ok(TodaState { q, w })
    }

    pub fn from_ints(q: &[i64], w: &[i64]) -> Result<Self> {
        TodaState::new(
            q.iter().copied().map(Rational::from_int).collect(),
            w.iter().copied().map(Rational::from_int).collect(),
        )
    }

    pub fn genus(&self) -> usize {
        self.q.len() - 1
    }

    /// Number of (Q, W) pairs, `g + 1`.
    pub fn len(&self) -> usize {
        self.q.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn q(&self) -> &[Rational] {
        &self.q
    }

    pub fn w(&self) -> &[Rational] {
        &self.w
    }

    pub fn is_integral(&self) -> bool {
        self.q.iter().chain(self.w.iter()).all(Rational::is_integer)
    }

    /// Smallest entry of the state (the value of `C_g`).
    pub fn min_entry(&self) -> Rational {
        self.q
            .iter()
            .chain(self.w.iter())
            .cloned()
            .reduce(Rational::min)
            .expect("nonempty state")
    }
}

impl fmt::Display for TodaState {
    /// Tuple notation `(Q_1,..,Q_{g+1},W_1,..,W_{g+1})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(2 * self.q.len());
        for x in self.q.iter().chain(self.w.iter()) {
            parts.push(x.to_string());
        }
        write!(f, "({})", parts.join(","))
    }
}

/// Conserved vector `(C_{-1}, C_0, ..., C_g)` of a genus-`g` state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConservedRepr", into = "ConservedRepr")]
pub struct ConservedVector {
    /// `c[0] = C_{-1}`, `c[i+1] = C_i`.
    c: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ConservedRepr {
    #[serde(rename = "C")]
    c: Vec<Rational>,
}

impl TryFrom<ConservedRepr> for ConservedVector {
    type Error = Error;
    fn try_from(r: ConservedRepr) -> Result<Self> {
        ConservedVector::new(r.c)
    }
}

impl From<ConservedVector> for ConservedRepr {
    fn from(v: ConservedVector) -> Self {
        ConservedRepr { c: v.c }
    }
}

impl ConservedVector {
    /// `c` lists `C_{-1}, C_0, ..., C_g` in order (length `g + 2`).
    pub fn new(c: Vec<Rational>) -> Result<Self> {
        if c.len() < 3 {
            return Err(Error::Invalid(format!(
                "a conserved vector has at least 3 entries (C_-1, C_0, C_1); got {}",
                c.len()
            )));
        }
        Ok(ConservedVector { c })
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        ConservedVector::new(c.iter().copied().map(Rational::from_int).collect())
    }

    pub fn genus(&self) -> usize {
        self.c.len() - 2
    }

    /// `C_i` for `-1 <= i <= g`.
    pub fn c(&self, i: isize) -> &Rational {
        let g = self.genus() as isize;
        assert!((-1..=g).contains(&i), "C_{i} out of range");
        &self.c[(i + 1) as usize]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(Rational::is_integer)
    }

    /// Check the genericity condition, a strict convexity of the `C_i`:
    /// `C_{-1} > 2 C_0`, `C_i + C_{i+2} > 2 C_{i+1}` for `0 <= i <= g-2`,
    /// and `C_{g-1} > 2 C_g`. Errors name the violated inequality.
    pub fn is_generic(&self) -> Result<()> {
        let g = self.genus() as isize;
        let two = Rational::from_int(2);
        if !(self.c(-1) > &(&two * self.c(0))) {
            return Err(Error::NonGeneric {
                violated: format!("C_-1 > 2*C_0 fails: {} <= 2*{}", self.c(-1), self.c(0)),
            });
        }
        for i in 0..=g - 2 {
            if !(&(self.c(i) + self.c(i + 2)) > &(&two * self.c(i + 1))) {
                return Err(Error::NonGeneric {
                    violated: format!(
                        "C_{} + C_{} > 2*C_{} fails: {} + {} <= 2*{}",
                        i,
                        i + 2,
                        i + 1,
                        self.c(i),
                        self.c(i + 2),
                        self.c(i + 1)
                    ),
                });
            }
        }
        if !(self.c(g - 1) > &(&two * self.c(g))) {
            return Err(Error::NonGeneric {
                violated: format!(
                    "C_{} > 2*C_{} fails: {} <= 2*{}",
                    g - 1,
                    g,
                    self.c(g - 1),
                    self.c(g)
                ),
            });
        }
        Ok(())
    }

    /// Partition data of a generic conserved vector:
    /// `lambda_i = C_{g-i} - C_{g-i+1}` (strictly increasing) and
    /// `p_i = C_{-1} - 2 * sum_j min(lambda_i, lambda_j)` (strictly positive
    /// when additionally `C_g = 0`).
    pub fn partition(&self) -> Result<(Vec<Rational>, Vec<Rational>)> {
        self.is_generic()?;
        let g = self.genus() as isize;
        let lambda: Vec<Rational> = (1..=g).map(|i| self.c(g - i) - self.c(g - i + 1)).collect();
        let two = Rational::from_int(2);
        let p: Vec<Rational> = (0..g as usize)
            .map(|i| {
                let overlap: Rational = lambda.iter().map(|l| rmin(&lambda[i], l)).sum();
                self.c(-1) - &(&two * &overlap)
            })
            .collect();
        Ok((lambda, p))
    }
}

impl fmt::Display for ConservedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(Rational::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One time step of the ultra-discrete periodic Toda lattice.
///
/// The output is validated to still satisfy the phase-space condition; a
/// violation would falsify conservation of `C_0` and is reported as an error
/// rather than silently accepted.
pub fn evolve(s: &TodaState) -> Result<TodaState> {
    let n = s.len();
    let q = s.q();
    let w = s.w();
    let d: Vec<Rational> = (0..n).map(|i| &w[i] - &q[i]).collect();

    let mut new_q = Vec::with_capacity(n);
    let mut new_w = Vec::with_capacity(n);
    for i in 0..n {
        // X_i = min over k of the partial sums of W - Q read backwards from i.
        let mut x = Rational::zero();
        let mut acc = Rational::zero();
        for l in 1..n {
            acc += &d[(i + n - l) % n];
            if acc < x {
                x = acc.clone();
            }
        }
        let qi = rmin(&w[i], &(&q[i] - &x));
        new_q.push(qi);
    }
    for i in 0..n {
        new_w.push(&(&q[(i + 1) % n] + &w[i]) - &new_q[i]);
    }
    TodaState::new(new_q, new_w)
}

/// Evolve `t` steps.
pub fn evolve_n(s: &TodaState, t: usize) -> Result<TodaState> {
    let mut cur = s.clone();
    for _ in 0..t {
        cur = evolve(&cur)?;
    }
    Ok(cur)
}

/// Cyclic left rotation `(Q_1,..,Q_{g+1}) -> (Q_2,..,Q_{g+1},Q_1)`, same on W.
/// Applying it `g+1` times is the identity.
pub fn shift(s: &TodaState) -> TodaState {
    let mut q = s.q().to_vec();
    let mut w = s.w().to_vec();
    q.rotate_left(1);
    w.rotate_left(1);
    TodaState { q, w }
}

pub fn shift_n(s: &TodaState, i: usize) -> TodaState {
    let n = s.len();
    let mut q = s.q().to_vec();
    let mut w = s.w().to_vec();
    q.rotate_left(i % n);
    w.rotate_left(i % n);
    TodaState { q, w }
}

/// Conserved vector of a state, using the index-set rule for `C_g .. C_0`
/// and the explicit total sum for `C_{-1}`.
pub fn conserved(s: &TodaState) -> ConservedVector {
    let n = s.len();
    let g = n - 1;
    assert!(n <= 20, "conserved-quantity enumeration is exponential in g");
    let full: u32 = (1u32 << n) - 1;

    // Subset-sum tables over bitmasks; bit b stands for index b+1.
    let mut qsum = vec![Rational::zero(); 1 << n];
    let mut wsum = vec![Rational::zero(); 1 << n];
    for mask in 1u32..=full {
        let b = mask.trailing_zeros() as usize;
        let rest = (mask & (mask - 1)) as usize;
        qsum[mask as usize] = &qsum[rest] + &s.q()[b];
        wsum[mask as usize] = &wsum[rest] + &s.w()[b];
    }

    let rot_down = |m: u32| ((m >> 1) | ((m & 1) << g)) & full;

    let mut c = vec![Rational::zero(); g + 2];
    c[0] = &qsum[full as usize] + &wsum[full as usize]; // C_{-1}

    for k in 0..=g {
        let want = k + 1;
        let mut best: Option<Rational> = None;
        let mut consider = |v: Rational| match &best {
            Some(b) if *b <= v => {}
            _ => best = Some(v),
        };
        for smask in 0..=full {
            let s_count = smask.count_ones() as usize;
            if s_count > want {
                continue;
            }
            let t_need = want - s_count;
            let base = full & !(smask | rot_down(smask));
            if (base.count_ones() as usize) < t_need {
                continue;
            }
            // Enumerate submasks of `base` (including 0) with |T| = t_need.
            let mut tmask = base;
            loop {
                if tmask.count_ones() as usize == t_need {
                    consider(&qsum[smask as usize] + &wsum[tmask as usize]);
                }
                if tmask == 0 {
                    break;
                }
                tmask = (tmask - 1) & base;
            }
        }
        // C_{g-k} sits at vector slot 1 + (g - k).
        c[1 + g - k] = best.expect("at least one admissible index pair");
    }

    ConservedVector { c }
}

/// Explicit closed forms of the printed conserved quantities, used as an
/// independent oracle for the index-set rule in tests and checks.
pub mod explicit {
    use super::*;

    /// `C_g`: minimum over all entries.
    pub fn c_top(s: &TodaState) -> Rational {
        s.min_entry()
    }

    /// `C_{g-1}`: minimum over `Q_i + Q_j` (i < j), `W_i + W_j` (i < j),
    /// and `Q_i + W_j` with `j != i, i-1` (mod g+1).
    pub fn c_second(s: &TodaState) -> Rational {
        let n = s.len();
        let q = s.q();
        let w = s.w();
        let mut best: Option<Rational> = None;
        let mut consider = |v: Rational| match &best {
            Some(b) if *b <= v => {}
            _ => best = Some(v),
        };
        for i in 0..n {
            for j in i + 1..n {
                consider(&q[i] + &q[j]);
                consider(&w[i] + &w[j]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                // 1-based j != i, i-1 translates to 0-based j != i, (i+n-1)%n.
                if j == i || j == (i + n - 1) % n {
                    continue;
                }
                consider(&q[i] + &w[j]);
            }
        }
        best.expect("n >= 2")
    }

    /// `C_0 = min(sum Q, sum W)`.
    pub fn c_zero(s: &TodaState) -> Rational {
        let sum_q: Rational = s.q().iter().sum();
        let sum_w: Rational = s.w().iter().sum();
        sum_q.min(sum_w)
    }

    /// `C_{-1} = sum Q + sum W`.
    pub fn c_total(s: &TodaState) -> Rational {
        let sum_q: Rational = s.q().iter().sum();
        let sum_w: Rational = s.w().iter().sum();
        sum_q + sum_w
    }
}

/// Index `i` of the sector `T^i` containing `s`, where `T^i` is the image of
/// the fundamental sector `T^0 = { W_1 > 0 and (Q_1 = 0 or W_{g+1} = 0) }`
/// under `i` cyclic shifts. Equivalently, the unique `i` with
/// `shift^{-i}(s)` in `T^0`.
///
/// Requires the isolevel data to be generic with `C_g = 0`; on such states the
/// sectors form a disjoint cover, so a match count other than one is reported
/// as a falsification witness.
pub fn t0_membership(s: &TodaState) -> Result<usize> {
    let cv = conserved(s);
    cv.is_generic()?;
    let g = s.genus() as isize;
    if !cv.c(g).is_zero() {
        return Err(Error::Invalid(format!(
            "sector classification assumes the normalization C_g = 0; this state has C_g = {}",
            cv.c(g)
        )));
    }
    let n = s.len();
    let hits: Vec<usize> = (0..n).filter(|&i| in_t0(&shift_n(s, n - i))).collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::SectorCover {
            state: s.to_string(),
            matches: hits.len(),
        }),
    }
}

/// Membership test for the fundamental sector `T^0` itself.
pub fn in_t0(s: &TodaState) -> bool {
    let n = s.len();
    s.w()[0].is_positive() && (s.q()[0].is_zero() || s.w()[n - 1].is_zero())
}

/// All integer states on the isolevel set of a generic integer `C` with
/// `C_g = 0`, in lexicographic order of `(Q_1,..,Q_{g+1},W_1,..,W_{g+1})`.
///
/// States in the phase space have `sum(Q) = C_0` and `sum(W) = C_{-1} - C_0`,
/// so the search space is a product of two composition families; candidates
/// are filtered by their full conserved vector. The outer loop is spread
/// across workers (see [`crate::workers`]) with a deterministic merge.
pub fn enumerate_isolevel(cv: &ConservedVector) -> Result<Vec<TodaState>> {
    cv.is_generic()?;
    let g = cv.genus();
    if !cv.is_integral() {
        return Err(Error::Invalid(
            "isolevel enumeration needs an integer conserved vector".into(),
        ));
    }
    if !cv.c(g as isize).is_zero() {
        return Err(Error::Invalid(format!(
            "isolevel enumeration assumes the normalization C_g = 0; got C_g = {}",
            cv.c(g as isize)
        )));
    }
    let n = g + 1;
    let total_q: i64 = cv
        .c(0)
        .as_integer()
        .expect("integral")
        .try_into()
        .map_err(|_| Error::Invalid("C_0 out of range".into()))?;
    let total_w: i64 = (cv.c(-1) - cv.c(0))
        .as_integer()
        .expect("integral")
        .try_into()
        .map_err(|_| Error::Invalid("C_-1 out of range".into()))?;
    if total_q < 0 || total_w <= total_q {
        return Err(Error::Invalid(format!(
            "no phase-space states: need 0 <= C_0 < C_-1 - C_0, got C_0 = {}, C_-1 = {}",
            cv.c(0),
            cv.c(-1)
        )));
    }

    // Partition the search on Q_1 so chunks are independent and ordered.
    let states = parallel_flat_map((total_q + 1) as usize, |q1| {
        let q1 = q1 as i64;
        let mut found = Vec::new();
        let mut q = vec![0i64; n];
        q[0] = q1;
        enumerate_rest(&mut q, 1, total_q - q1, &mut |q_full| {
            let mut w = vec![0i64; n];
            enumerate_rest(&mut w, 0, total_w, &mut |w_full| {
                let state = TodaState::from_ints(q_full, w_full).expect("sumQ < sumW");
                if &conserved(&state) == cv {
                    found.push(state);
                }
            });
        });
        found
    });
    Ok(states)
}

/// Fill `parts[from..]` with every composition of `remaining` and call `f`
/// with the completed slice, in lexicographic order.
fn enumerate_rest(parts: &mut Vec<i64>, from: usize, remaining: i64, f: &mut impl FnMut(&[i64])) {
    if from + 1 == parts.len() {
        parts[from] = remaining;
        f(parts);
        return;
    }
    for v in 0..=remaining {
        parts[from] = v;
        enumerate_rest(parts, from + 1, remaining - v, f);
    }
}
