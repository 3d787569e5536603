//! Tropical Jacobian of the spectral curve and the Abel-Jacobi map.
//!
//! The cycle space of the curve graph has the basis `alpha_1..alpha_g` from
//! [`CurveModel::cycles`]. Integration of the harmonic 1-forms dual to that
//! basis reduces, on a metric graph, to the *overlap pairing*: a path and a
//! cycle pair to the signed total length of their common edges. The
//! Abel-Jacobi image of a point `P` (relative to a basepoint `P0`) is the
//! vector of pairings of any `P0 -> P` path with `alpha_1..alpha_g`; changing
//! the path changes the result by a pairing vector of a closed cycle, i.e. by
//! an integer combination of the columns of the Gram matrix
//!
//! ```text
//! K[i][j] = <alpha_i, alpha_j>,
//! ```
//!
//! so the Jacobian is `J = R^g / K Z^g` in these coordinates. `K` is
//! tridiagonal: `K[k][k] = p_{k-1} + p_k + 2(lambda_k - lambda_{k-1})` (with
//! `p_0 = C_-1`, `lambda_0 = 0`) and `K[k][k+1] = -p_k`.
//!
//! A second presentation uses the cumulative cycles
//! `gamma_k = alpha_1 + ... + alpha_k`, whose Gram matrix is
//!
//! ```text
//! Lambda[i][j] = C_-1 + p_i delta_ij + 2 min(lambda_i, lambda_j) = (L K L^T)[i][j]
//! ```
//!
//! with `L` the lower-triangular all-ones matrix. Pairing vectors transform
//! by `z -> L z`, and `Lambda Z^g = L K Z^g`, so both presentations give the
//! same torus. The cyclic shift of Toda states acts on the `gamma`
//! presentation as translation by `-C_-1 * (1,..,1)`; its quotient is
//! `J' = R^g / A Z^g` where `A = Lambda - C_-1 * J_ones` satisfies
//! `A (1,..,1)^T = C_-1 (1,..,1)^T`. The index of `Lambda Z^g` in `A Z^g`
//! is `g + 1`, matching the `g + 1` sectors of an isolevel set.

use std::fmt;

use num::{BigInt, Signed};
use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, GraphPoint};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, RatMat};
use crate::numeric::Rational;

/// Cycle basis a Jacobian vector is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// The Gram basis `alpha_1..alpha_g`; lattice `K Z^g`.
    Alpha,
    /// The cumulative basis `gamma_k = alpha_1 + .. + alpha_k`; lattice `Lambda Z^g`.
    Gamma,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Alpha => "alpha",
            Basis::Gamma => "gamma",
        })
    }
}

/// A vector representing a point of the Jacobian in a tagged cycle basis.
/// Not automatically reduced; see [`Jacobian::reduce`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacPoint {
    pub z: Vec<Rational>,
    pub basis: Basis,
}

impl JacPoint {
    pub fn new(z: Vec<Rational>, basis: Basis) -> Self {
        JacPoint { z, basis }
    }

    pub fn alpha(z: Vec<Rational>) -> Self {
        JacPoint::new(z, Basis::Alpha)
    }
}

impl fmt::Display for JacPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.z.iter().map(Rational::to_string).collect();
        write!(f, "({}) [{}]", parts.join(","), self.basis)
    }
}

/// A point of the quotient `J' = R^g / A Z^g` (always stored reduced, so
/// equality of values is equality in `J'`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JPrimePoint {
    pub z: Vec<Rational>,
}

/// An effective divisor of degree `g`: a multiset of `g` points in canonical
/// graph coordinates, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    points: Vec<GraphPoint>,
}

impl Divisor {
    /// Canonicalizes each point against the curve and sorts. The number of
    /// points must equal the genus.
    pub fn new(cm: &CurveModel, points: Vec<GraphPoint>) -> Result<Self> {
        if points.len() != cm.genus() {
            return Err(Error::DivisorSize {
                got: points.len(),
                genus: cm.genus(),
            });
        }
        let mut canon = points
            .iter()
            .map(|p| cm.canonical(p))
            .collect::<Result<Vec<_>>>()?;
        canon.sort();
        Ok(Divisor { points: canon })
    }

    /// Build from plane coordinates.
    pub fn from_coords(cm: &CurveModel, pts: &[(Rational, Rational)]) -> Result<Self> {
        let points = pts
            .iter()
            .map(|(x, y)| cm.locate(x, y))
            .collect::<Result<Vec<_>>>()?;
        Divisor::new(cm, points)
    }

    pub fn points(&self) -> &[GraphPoint] {
        &self.points
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(GraphPoint::to_string).collect();
        write!(f, "{{{}}}", parts.join(" + "))
    }
}

/// Whether a divisor lies in the distinguished family `D^g`: its points can
/// represent the cycles `alpha_1..alpha_g` (point `i` on an edge of
/// `alpha_i`, each point used once), with at most one point in the open
/// interior of each shared rung `V_1..V_{g-1}`.
pub fn in_dg(cm: &CurveModel, d: &Divisor) -> Result<bool> {
    let g = cm.genus();
    let coords = d
        .points()
        .iter()
        .map(|p| cm.coords(p))
        .collect::<Result<Vec<_>>>()?;

    // Interior multiplicity of the rungs shared by consecutive cycles.
    for k in 1..g {
        let e = cm.edge(k)?;
        let (rx, _) = &cm.vertices()[e.tail];
        let v_y = &cm.vertices()[e.tail].1;
        let u_y = &cm.vertices()[e.head].1;
        let inside = coords
            .iter()
            .filter(|(x, y)| x == rx && y > v_y && y < u_y)
            .count();
        if inside > 1 {
            return Ok(false);
        }
    }

    // Point i may represent cycle j when it lies on a closed edge of alpha_j.
    let cycles = cm.cycles();
    let mut allowed = vec![vec![false; g]; g];
    for (i, (x, y)) in coords.iter().enumerate() {
        for (j, cyc) in cycles.iter().enumerate() {
            allowed[i][j] = cyc.iter().any(|&(eid, _)| {
                let e = cm.edge(eid).expect("cycle edge");
                let (tx, ty) = &cm.vertices()[e.tail];
                match e.direction.0 {
                    0 => x == tx && y >= ty && y <= &(ty + &e.length),
                    _ => {
                        let off = x - tx;
                        !off.is_negative()
                            && off <= e.length
                            && y == &(ty + &(&Rational::from_int(e.direction.1) * &off))
                    }
                }
            });
        }
    }

    // Tiny bipartite matching: try all assignments by backtracking.
    fn assign(allowed: &[Vec<bool>], used: &mut Vec<bool>, i: usize) -> bool {
        if i == allowed.len() {
            return true;
        }
        for j in 0..allowed.len() {
            if allowed[i][j] && !used[j] {
                used[j] = true;
                if assign(allowed, used, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    Ok(assign(&allowed, &mut vec![false; g], 0))
}

/// The three period matrices of the curve and their shared determinant.
#[derive(Debug, Clone)]
pub struct PeriodData {
    k: RatMat,
    lambda: RatMat,
    a: RatMat,
    l: RatMat,
    det: Rational,
}

impl PeriodData {
    pub fn from_curve(cm: &CurveModel) -> PeriodData {
        let g = cm.genus();
        let mut k = RatMat::zero(g, g);
        for i in 1..=g {
            let diag = &(&cm.rung_length(i - 1) + &cm.rung_length(i))
                + &(&Rational::from_int(2) * &(&cm.lam(i) - &cm.lam(i - 1)));
            k.rows[i - 1][i - 1] = diag;
            if i < g {
                let off = -&cm.rung_length(i);
                k.rows[i - 1][i] = off.clone();
                k.rows[i][i - 1] = off;
            }
        }
        let mut lambda = RatMat::zero(g, g);
        for i in 1..=g {
            for j in 1..=g {
                let mut v = cm.conserved().c(-1)
                    + &(&Rational::from_int(2) * &cm.lam(i.min(j)));
                if i == j {
                    v = &v + &cm.rung_length(i);
                }
                lambda.rows[i - 1][j - 1] = v;
            }
        }
        let mut a = lambda.clone();
        for row in a.rows.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x - cm.conserved().c(-1);
            }
        }
        let mut l = RatMat::zero(g, g);
        for i in 0..g {
            for j in 0..=i {
                l.rows[i][j] = Rational::one();
            }
        }
        let det = k.det();
        PeriodData { k, lambda, a, l, det }
    }

    /// Gram matrix of the `alpha` basis (the lattice of the `alpha`
    /// presentation).
    pub fn k(&self) -> &RatMat {
        &self.k
    }

    /// Gram matrix of the cumulative `gamma` basis.
    pub fn lambda_mat(&self) -> &RatMat {
        &self.lambda
    }

    /// `Lambda` with `C_-1` subtracted everywhere; the lattice of `J'`.
    pub fn a_mat(&self) -> &RatMat {
        &self.a
    }

    /// Lower-triangular all-ones basis change (`z_gamma = L z_alpha`).
    pub fn l_mat(&self) -> &RatMat {
        &self.l
    }

    /// `det K = det Lambda`, the number of integer points of the Jacobian.
    pub fn det(&self) -> &Rational {
        &self.det
    }

    fn basis_matrix(&self, basis: Basis) -> &RatMat {
        match basis {
            Basis::Alpha => &self.k,
            Basis::Gamma => &self.lambda,
        }
    }
}

/// The Abel-Jacobi machinery: a curve, a basepoint, a spanning tree for
/// canonical paths, and the period data.
pub struct Jacobian<'c> {
    cm: &'c CurveModel,
    pd: PeriodData,
    /// `cycle_coeff[i][e]` in `{-1, 0, 1}`: coefficient of edge `e` in `alpha_{i+1}`.
    cycle_coeff: Vec<Vec<i64>>,
    /// Edge vector (net signed length per edge) of the tree path from `v_0`
    /// to each vertex.
    tree_vec: Vec<Vec<Rational>>,
    basepoint: GraphPoint,
}

impl<'c> Jacobian<'c> {
    /// Default spanning tree: the left rung plus both chains; the inner rungs
    /// are exactly the non-tree edges, one per independent cycle.
    pub fn new(cm: &'c CurveModel, basepoint: Option<GraphPoint>) -> Result<Self> {
        let g = cm.genus();
        let mut tree = vec![0usize];
        tree.extend(g + 1..=3 * g);
        Jacobian::with_tree(cm, basepoint, &tree)
    }

    /// Same, but with caller-chosen tree edges; used to confirm that the
    /// Abel-Jacobi map is path-independent modulo the period lattice.
    pub fn with_tree(
        cm: &'c CurveModel,
        basepoint: Option<GraphPoint>,
        tree: &[usize],
    ) -> Result<Self> {
        let nv = cm.vertices().len();
        let ne = cm.edges().len();
        if tree.len() + 1 != nv {
            return Err(Error::Invalid(format!(
                "a spanning tree on {nv} vertices needs {} edges, got {}",
                nv - 1,
                tree.len()
            )));
        }
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nv];
        for &eid in tree {
            let e = cm.edge(eid)?;
            adj[e.tail].push((eid, e.head, 1));
            adj[e.head].push((eid, e.tail, -1));
        }
        let mut tree_vec: Vec<Option<Vec<Rational>>> = vec![None; nv];
        tree_vec[0] = Some(vec![Rational::zero(); ne]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let base = tree_vec[v].clone().expect("visited");
            for &(eid, to, sign) in &adj[v] {
                if tree_vec[to].is_some() {
                    continue;
                }
                let mut vec = base.clone();
                let len = cm.edge(eid)?.length.clone();
                vec[eid] += &(&Rational::from_int(sign) * &len);
                tree_vec[to] = Some(vec);
                queue.push_back(to);
            }
        }
        let tree_vec: Vec<Vec<Rational>> = tree_vec
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid("tree edges do not span the graph".into()))?;

        let cycle_coeff = cm
            .cycles()
            .iter()
            .map(|cyc| {
                let mut coeff = vec![0i64; ne];
                for &(eid, sign) in cyc {
                    coeff[eid] += sign as i64;
                }
                coeff
            })
            .collect();

        let basepoint = match basepoint {
            Some(bp) => cm.canonical(&bp)?,
            None => GraphPoint::new(0, Rational::zero()),
        };

        Ok(Jacobian {
            cm,
            pd: PeriodData::from_curve(cm),
            cycle_coeff,
            tree_vec,
            basepoint,
        })
    }

    pub fn curve(&self) -> &CurveModel {
        self.cm
    }

    pub fn periods(&self) -> &PeriodData {
        &self.pd
    }

    pub fn basepoint(&self) -> &GraphPoint {
        &self.basepoint
    }

    /// Gram matrix computed directly from cycle overlaps; equals
    /// [`PeriodData::k`] and serves as an independent route to it in tests.
    pub fn gram(&self) -> RatMat {
        let g = self.cm.genus();
        let mut m = RatMat::zero(g, g);
        for i in 0..g {
            for j in 0..g {
                let mut acc = Rational::zero();
                for e in self.cm.edges() {
                    let c = self.cycle_coeff[i][e.id] * self.cycle_coeff[j][e.id];
                    if c != 0 {
                        acc += &(&Rational::from_int(c) * &e.length);
                    }
                }
                m.rows[i][j] = acc;
            }
        }
        m
    }

    /// Edge vector of the canonical basepoint-to-`p` path: down the
    /// basepoint's stem, through the tree between the edge tails, up `p`'s
    /// stem (a stem runs from an edge's tail along the edge to the point).
    fn path_vector(&self, p: &GraphPoint) -> Result<Vec<Rational>> {
        let p = self.cm.canonical(p)?;
        let ne = self.cm.edges().len();
        let mut vec = vec![Rational::zero(); ne];
        let tail_p = self.cm.edge(p.edge)?.tail;
        let tail_0 = self.cm.edge(self.basepoint.edge)?.tail;
        for (e, x) in self.tree_vec[tail_p].iter().enumerate() {
            vec[e] += x;
        }
        for (e, x) in self.tree_vec[tail_0].iter().enumerate() {
            vec[e] -= x;
        }
        vec[p.edge] += &p.offset;
        vec[self.basepoint.edge] -= &self.basepoint.offset;
        Ok(vec)
    }

    /// Abel-Jacobi vector of a single point in the `alpha` basis (raw, i.e.
    /// for the canonical path; well-defined modulo `K Z^g`).
    pub fn iota(&self, p: &GraphPoint) -> Result<Vec<Rational>> {
        let path = self.path_vector(p)?;
        Ok(self
            .cycle_coeff
            .iter()
            .map(|coeff| {
                let mut acc = Rational::zero();
                for (e, c) in coeff.iter().enumerate() {
                    if *c != 0 {
                        acc += &(&Rational::from_int(*c) * &path[e]);
                    }
                }
                acc
            })
            .collect())
    }

    /// Abel-Jacobi image of a degree-`g` divisor: the sum of the point
    /// vectors, in the `alpha` basis.
    pub fn eta(&self, d: &Divisor) -> Result<JacPoint> {
        let g = self.cm.genus();
        let mut z = vec![Rational::zero(); g];
        for p in d.points() {
            let v = self.iota(p)?;
            for (a, b) in z.iter_mut().zip(v) {
                *a += &b;
            }
        }
        Ok(JacPoint::alpha(z))
    }

    /// Canonical representative in the fundamental domain `M [0,1)^g` of the
    /// point's lattice (`K` for `alpha`, `Lambda` for `gamma`).
    pub fn reduce(&self, pt: &JacPoint) -> Result<JacPoint> {
        let m = self.pd.basis_matrix(pt.basis);
        if pt.z.len() != m.nrows() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: pt.z.len(),
            });
        }
        let t = m.solve(&pt.z)?;
        let frac: Vec<Rational> = t.iter().map(Rational::fract).collect();
        Ok(JacPoint::new(m.mul_vec(&frac), pt.basis))
    }

    /// Equality in the Jacobian. Points must carry the same basis tag;
    /// convert with [`Jacobian::to_gamma`] first when needed.
    pub fn jac_equal(&self, a: &JacPoint, b: &JacPoint) -> Result<bool> {
        if a.basis != b.basis {
            return Err(Error::BasisMismatch {
                op: "jac_equal".into(),
                left: a.basis.to_string(),
                right: b.basis.to_string(),
            });
        }
        Ok(self.reduce(a)? == self.reduce(b)?)
    }

    /// Rewrite an `alpha`-basis point in the cumulative `gamma` basis
    /// (`z -> L z`); `gamma`-basis points pass through unchanged.
    pub fn to_gamma(&self, pt: &JacPoint) -> JacPoint {
        match pt.basis {
            Basis::Gamma => pt.clone(),
            Basis::Alpha => JacPoint::new(self.pd.l.mul_vec(&pt.z), Basis::Gamma),
        }
    }

    /// Translation by `C_-1 * (1,..,1)` in the point's own basis. In the
    /// `gamma` presentation this is the inverse of the cyclic-shift action;
    /// iterating it `g + 1` times returns to the start, since
    /// `Lambda (1,..,1)^T = (g+1) C_-1 (1,..,1)^T`.
    pub fn translate_nu(&self, pt: &JacPoint) -> JacPoint {
        let c = self.cm.conserved().c(-1);
        JacPoint::new(pt.z.iter().map(|z| z + c).collect(), pt.basis)
    }

    /// The translation vector realizing one Toda time step on the Jacobian,
    /// in the `alpha` basis: `(lambda_1, lambda_2 - lambda_1, ...)`.
    pub fn evolution_shift(&self) -> JacPoint {
        let g = self.cm.genus();
        JacPoint::alpha(
            (1..=g)
                .map(|k| &self.cm.lam(k) - &self.cm.lam(k - 1))
                .collect(),
        )
    }

    /// Image in the shift quotient `J' = R^g / A Z^g` (stored reduced, so
    /// `==` on the results is equality in `J'`). Input in either basis.
    pub fn to_jprime(&self, pt: &JacPoint) -> Result<JPrimePoint> {
        let zg = self.to_gamma(pt);
        let t = self.pd.a.solve(&zg.z)?;
        let frac: Vec<Rational> = t.iter().map(Rational::fract).collect();
        Ok(JPrimePoint {
            z: self.pd.a.mul_vec(&frac),
        })
    }

    /// Number of integer points of `J` (the order of `Z^g / K Z^g`),
    /// meaningful for integer period matrices.
    pub fn lattice_point_count(&self) -> Result<BigInt> {
        if !self.pd.k.is_integer() {
            return Err(Error::Invalid(
                "integer point count needs an integer period matrix".into(),
            ));
        }
        let d = self.pd.det().as_integer().expect("integer matrix determinant");
        Ok(d.abs())
    }

    /// The integer points of `J` as canonical reduced representatives in the
    /// `alpha` basis, sorted. Enumerated through the Smith normal form of
    /// `K`, so the cost is `det K` reductions.
    pub fn integer_points(&self) -> Result<Vec<Vec<Rational>>> {
        let count = self.lattice_point_count()?;
        if count > BigInt::from(200_000) {
            return Err(Error::Invalid(format!(
                "refusing to enumerate {count} lattice points"
            )));
        }
        let g = self.cm.genus();
        let m = self.pd.k.to_bigint()?;
        let (u, d, _v) = smith_normal_form(&m);
        // x ~ y mod K Z^g iff U x ~ U y mod D Z^g, so representatives are
        // U^{-1} r for r in the box prod [0, d_i).
        let u_rat = RatMat::new(
            u.iter()
                .map(|row| row.iter().cloned().map(Rational::from).collect())
                .collect(),
        );
        let diag: Vec<i64> = (0..g)
            .map(|i| {
                let di: i64 = d[i][i].clone().try_into().expect("bounded by det");
                di
            })
            .collect();
        let mut reps = Vec::new();
        let mut r = vec![0i64; g];
        loop {
            let rhs: Vec<Rational> = r.iter().map(|&x| Rational::from_int(x)).collect();
            let x = u_rat.solve(&rhs)?;
            let reduced = self.reduce(&JacPoint::alpha(x))?;
            reps.push(reduced.z);
            // Odometer over the box.
            let mut i = 0;
            loop {
                if i == g {
                    reps.sort();
                    debug_assert_eq!(BigInt::from(reps.len()), count);
                    return Ok(reps);
                }
                r[i] += 1;
                if r[i] < diag[i] {
                    break;
                }
                r[i] = 0;
                i += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toda::ConservedVector;

    fn curve(c: &[i64]) -> CurveModel {
        CurveModel::build(&ConservedVector::from_ints(c).unwrap()).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn rv(ns: &[i64]) -> Vec<Rational> {
        ns.iter().map(|&n| r(n)).collect()
    }

    fn mat(rows: &[&[i64]]) -> RatMat {
        RatMat::new(rows.iter().map(|row| rv(row)).collect())
    }

    #[test]
    fn period_matrices_match_hand_values() {
        let cm = curve(&[8, 3, 0]);
        let pd = PeriodData::from_curve(&cm);
        assert_eq!(pd.k(), &mat(&[&[16]]));
        assert_eq!(pd.lambda_mat(), &mat(&[&[16]]));
        assert_eq!(pd.a_mat(), &mat(&[&[8]]));
        assert_eq!(pd.det(), &r(16));

        let cm = curve(&[7, 3, 1, 0]);
        let pd = PeriodData::from_curve(&cm);
        assert_eq!(pd.k(), &mat(&[&[12, -3], &[-3, 6]]));
        assert_eq!(pd.lambda_mat(), &mat(&[&[12, 9], &[9, 12]]));
        assert_eq!(pd.a_mat(), &mat(&[&[5, 2], &[2, 5]]));
        assert_eq!(pd.det(), &r(63));

        let cm = curve(&[13, 6, 3, 1, 0]);
        let pd = PeriodData::from_curve(&cm);
        assert_eq!(pd.det(), &r(1092));
    }

    #[test]
    fn matrix_identities() {
        for c in [
            vec![8, 3, 0],
            vec![7, 3, 1, 0],
            vec![13, 6, 3, 1, 0],
            vec![20, 7, 2, 0],
        ] {
            let cm = curve(&c);
            let g = cm.genus();
            let pd = PeriodData::from_curve(&cm);
            let jac = Jacobian::new(&cm, None).unwrap();

            // K is the Gram matrix of the cycle overlaps.
            assert_eq!(&jac.gram(), pd.k(), "gram vs K on {c:?}");

            // Lambda = L K L^T.
            let lklt = {
                let lk = mul(pd.l_mat(), pd.k());
                let lt = transpose(pd.l_mat());
                mul(&lk, &lt)
            };
            assert_eq!(&lklt, pd.lambda_mat(), "LKL^T on {c:?}");

            // det Lambda = det K = (g+1) det A = (g+1) p_1..p_{g-1} C_-1.
            assert_eq!(&pd.lambda_mat().det(), pd.det());
            assert_eq!(
                &(&Rational::from_int(g as i64 + 1) * &pd.a_mat().det()),
                pd.det()
            );
            let mut prod = cm.conserved().c(-1).clone();
            for k in 1..g {
                prod = &prod * &cm.rung_length(k);
            }
            assert_eq!(
                &(&Rational::from_int(g as i64 + 1) * &prod),
                pd.det(),
                "closed determinant formula on {c:?}"
            );

            // A 1 = C_-1 1 and Lambda 1 = (g+1) C_-1 1.
            let ones = vec![Rational::one(); g];
            let c1 = cm.conserved().c(-1).clone();
            assert_eq!(pd.a_mat().mul_vec(&ones), vec![c1.clone(); g]);
            assert_eq!(
                pd.lambda_mat().mul_vec(&ones),
                vec![&Rational::from_int(g as i64 + 1) * &c1; g]
            );
        }
    }

    fn mul(a: &RatMat, b: &RatMat) -> RatMat {
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

    fn transpose(a: &RatMat) -> RatMat {
        let mut m = RatMat::zero(a.ncols(), a.nrows());
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                m.rows[j][i] = a.at(i, j).clone();
            }
        }
        m
    }

    #[test]
    fn abel_jacobi_frozen_examples() {
        let cm = curve(&[7, 3, 1, 0]);

        // Basepoint v_1 = (1, 2): eta of v_1 + v_2 is (0, 1).
        let jac = Jacobian::new(&cm, Some(GraphPoint::new(1, r(0)))).unwrap();
        let d = Divisor::from_coords(&cm, &[(r(1), r(2)), (r(2), r(3))]).unwrap();
        assert_eq!(jac.eta(&d).unwrap(), JacPoint::alpha(rv(&[0, 1])));

        // Default basepoint v_0: the two reference divisors.
        let jac = Jacobian::new(&cm, None).unwrap();
        let d0 = Divisor::from_coords(&cm, &[(r(1), r(2)), (r(2), r(3))]).unwrap();
        assert_eq!(jac.eta(&d0).unwrap(), JacPoint::alpha(rv(&[2, 1])));
        let d1 = Divisor::from_coords(&cm, &[(r(1), r(3)), (r(1), r(5))]).unwrap();
        assert_eq!(jac.eta(&d1).unwrap(), JacPoint::alpha(rv(&[6, -4])));
    }

    #[test]
    fn reduction_and_equality() {
        let cm = curve(&[7, 3, 1, 0]);
        let jac = Jacobian::new(&cm, None).unwrap();

        let reduced = jac.reduce(&JacPoint::alpha(rv(&[6, -4]))).unwrap();
        assert_eq!(reduced, JacPoint::alpha(rv(&[3, 2])));
        // Reduction is idempotent and respects the lattice.
        assert_eq!(jac.reduce(&reduced).unwrap(), reduced);
        assert!(jac
            .jac_equal(&JacPoint::alpha(rv(&[4, -5])), &JacPoint::alpha(rv(&[1, 1])))
            .unwrap());
        assert!(!jac
            .jac_equal(&JacPoint::alpha(rv(&[4, -5])), &JacPoint::alpha(rv(&[1, 2])))
            .unwrap());
        // Shifting by lattice columns does not change the point.
        let shifted: Vec<Rational> = rv(&[6 + 12, -4 - 3]);
        assert!(jac
            .jac_equal(&JacPoint::alpha(shifted), &JacPoint::alpha(rv(&[6, -4])))
            .unwrap());

        let err = jac
            .jac_equal(
                &JacPoint::alpha(rv(&[0, 0])),
                &JacPoint::new(rv(&[0, 0]), Basis::Gamma),
            )
            .unwrap_err();
        assert!(matches!(err, Error::BasisMismatch { .. }));
    }

    #[test]
    fn eta_is_path_independent_modulo_periods() {
        let cm = curve(&[13, 6, 3, 1, 0]);
        let g = cm.genus();
        let default = Jacobian::new(&cm, None).unwrap();
        // Alternative spanning tree: swap the left rung for the last rung.
        let mut alt_edges: Vec<usize> = vec![g];
        alt_edges.extend(g + 1..=3 * g);
        let alt = Jacobian::with_tree(&cm, None, &alt_edges).unwrap();

        for e in cm.edges() {
            for num in 0..=3i64 {
                let off = &e.length * &Rational::new(num, 3);
                let p = GraphPoint::new(e.id, off);
                let a = JacPoint::alpha(default.iota(&p).unwrap());
                let b = JacPoint::alpha(alt.iota(&p).unwrap());
                assert!(
                    default.jac_equal(&a, &b).unwrap(),
                    "point {p}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn nu_translation_has_order_genus_plus_one() {
        for c in [vec![8, 3, 0], vec![7, 3, 1, 0], vec![13, 6, 3, 1, 0]] {
            let cm = curve(&c);
            let jac = Jacobian::new(&cm, None).unwrap();
            let g = cm.genus();
            let start = JacPoint::new(vec![r(1); g], Basis::Gamma);
            let mut pt = start.clone();
            for step in 1..=g {
                pt = jac.translate_nu(&pt);
                assert!(
                    !jac.jac_equal(&pt, &start).unwrap(),
                    "returned early at step {step} on {c:?}"
                );
                // All the intermediate points collapse in J'.
                assert_eq!(
                    jac.to_jprime(&pt).unwrap(),
                    jac.to_jprime(&start).unwrap(),
                    "J' image changed at step {step} on {c:?}"
                );
            }
            pt = jac.translate_nu(&pt);
            assert!(jac.jac_equal(&pt, &start).unwrap(), "order not {} on {c:?}", g + 1);
        }
    }

    #[test]
    fn integer_points_enumerate_the_full_torus() {
        let cm = curve(&[8, 3, 0]);
        let jac = Jacobian::new(&cm, None).unwrap();
        let pts = jac.integer_points().unwrap();
        assert_eq!(pts.len(), 16);
        let expected: Vec<Vec<Rational>> = (0..16).map(|n| rv(&[n])).collect();
        assert_eq!(pts, expected);

        let cm = curve(&[7, 3, 1, 0]);
        let jac = Jacobian::new(&cm, None).unwrap();
        let pts = jac.integer_points().unwrap();
        assert_eq!(pts.len(), 63);
        // All distinct, all reduced, all integral.
        for p in &pts {
            assert!(p.iter().all(Rational::is_integer));
            assert_eq!(jac.reduce(&JacPoint::alpha(p.clone())).unwrap().z, *p);
        }
        let dedup: std::collections::BTreeSet<_> = pts.iter().cloned().collect();
        assert_eq!(dedup.len(), 63);
    }

    #[test]
    fn divisor_validation() {
        let cm = curve(&[7, 3, 1, 0]);
        assert!(matches!(
            Divisor::new(&cm, vec![GraphPoint::new(0, r(0))]),
            Err(Error::DivisorSize { got: 1, genus: 2 })
        ));
        assert!(Divisor::from_coords(&cm, &[(r(1), r(1)), (r(0), r(0))]).is_err());
        // Vertex aliases canonicalize to the same divisor.
        let a = Divisor::new(&cm, vec![GraphPoint::new(1, r(3)), GraphPoint::new(0, r(0))])
            .unwrap();
        let b = Divisor::new(&cm, vec![GraphPoint::new(6, r(0)), GraphPoint::new(3, r(0))])
            .unwrap();
        // u_1 = (1, 5) is the tail of U2 (id 6) and the head of U1; v_0 is
        // the tail of L1 (id 3).
        assert_eq!(a, b);
    }

    #[test]
    fn dg_membership() {
        let cm = curve(&[13, 6, 3, 1, 0]);
        // v_1 + 2 v_2: vertices can represent adjacent cycles.
        let d = Divisor::from_coords(
            &cm,
            &[(r(1), r(3)), (r(2), r(5)), (r(2), r(5))],
        )
        .unwrap();
        assert!(in_dg(&cm, &d).unwrap());

        let cm2 = curve(&[7, 3, 1, 0]);
        // Two points in the open interior of the shared rung V_1.
        let d = Divisor::new(
            &cm2,
            vec![
                GraphPoint::new(1, Rational::new(1, 2)),
                GraphPoint::new(1, r(2)),
            ],
        )
        .unwrap();
        assert!(!in_dg(&cm2, &d).unwrap());
        // Two points strictly inside the left rung can only represent
        // alpha_1, so no assignment exists.
        let d = Divisor::new(
            &cm2,
            vec![GraphPoint::new(0, r(1)), GraphPoint::new(0, r(2))],
        )
        .unwrap();
        assert!(!in_dg(&cm2, &d).unwrap());
        // One rung-interior point and one chain point are fine.
        let d = Divisor::new(
            &cm2,
            vec![GraphPoint::new(1, r(1)), GraphPoint::new(4, Rational::new(1, 3))],
        )
        .unwrap();
        assert!(in_dg(&cm2, &d).unwrap());
    }
}
