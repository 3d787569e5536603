//! The compact tropical spectral curve of an isolevel set.
//!
//! For a generic conserved vector `C` (normalized so `C_g = 0`) the tropical
//! polynomial
//!
//! ```text
//! F(X, Y) = min[ 2Y, (g+1)X + Y, gX + Y + C_g, ..., X + Y + C_1, Y + C_0, C_-1 ]
//! ```
//!
//! has a smooth tropical zero locus (the points where the minimum is attained
//! at least twice). Its compact part lives in the strip `0 <= X <= lambda_g`
//! and is a "ladder" graph: two horizontal chains (the graphs of the
//! piecewise-linear function `wp(X) = min[(g+1)X, gX + C_g, ..., X + C_1, C_0]`
//! and its reflection `C_-1 - wp(X)`) joined by `g+1` vertical rungs at the
//! breakpoints `lambda_0 = 0 < lambda_1 < ... < lambda_g`. The first Betti
//! number is `g`.
//!
//! Vertices are `v_k = (lambda_k, wp(lambda_k))` on the lower chain and
//! `u_k = (lambda_k, C_-1 - wp(lambda_k))` on the upper chain. Edges carry
//! their lattice length (Euclidean length divided by the norm of the
//! primitive integer direction):
//!
//! * `E0`, the left rung `v_0 u_0`, length `C_-1`;
//! * `Vk`, the inner rung `v_k u_k`, length `p_k` (`1 <= k <= g`);
//! * `Lk`, the lower chain step `v_{k-1} v_k`, length `lambda_k - lambda_{k-1}`;
//! * `Uk`, the upper chain step `u_{k-1} u_k`, same length.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{tmin, trop_min, Rational};
use crate::toda::ConservedVector;

/// Which of the four families an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// The left boundary rung `v_0 u_0`.
    LeftRung,
    /// Inner rung `v_k u_k`, `k = 1..g`.
    Rung(usize),
    /// Lower chain step `v_{k-1} v_k`, `k = 1..g`.
    Lower(usize),
    /// Upper chain step `u_{k-1} u_k`, `k = 1..g`.
    Upper(usize),
}

impl EdgeKind {
    pub fn name(&self) -> String {
        match self {
            EdgeKind::LeftRung => "E0".to_string(),
            EdgeKind::Rung(k) => format!("V{k}"),
            EdgeKind::Lower(k) => format!("L{k}"),
            EdgeKind::Upper(k) => format!("U{k}"),
        }
    }
}

/// Oriented edge of the curve graph. `tail`/`head` index into
/// [`CurveModel::vertices`]; `direction` is the primitive integer vector from
/// tail to head and `length` the lattice length.
#[derive(Debug, Clone)]
pub struct Edge {
    pub id: usize,
    pub kind: EdgeKind,
    pub tail: usize,
    pub head: usize,
    pub direction: (i64, i64),
    pub length: Rational,
}

/// A point of the curve in graph form: a lattice distance `offset` from the
/// tail of edge `edge`, with `0 <= offset <= length`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphPoint {
    pub edge: usize,
    pub offset: Rational,
}

impl GraphPoint {
    pub fn new(edge: usize, offset: Rational) -> Self {
        GraphPoint { edge, offset }
    }
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.edge, self.offset)
    }
}

/// The compact tropical curve of a generic conserved vector.
#[derive(Debug, Clone)]
pub struct CurveModel {
    cv: ConservedVector,
    lambda: Vec<Rational>,
    p: Vec<Rational>,
    vertices: Vec<(Rational, Rational)>,
    edges: Vec<Edge>,
}

impl CurveModel {
    /// Build the curve. Requires `cv` generic and normalized (`C_g = 0`);
    /// genericity makes every edge length strictly positive.
    pub fn build(cv: &ConservedVector) -> Result<CurveModel> {
        cv.is_generic()?;
        let g = cv.genus();
        if !cv.c(g as isize).is_zero() {
            return Err(Error::DegenerateCurve {
                violated: format!("C_g must be normalized to 0, got {}", cv.c(g as isize)),
            });
        }
        let (lambda, p) = cv.partition()?;
        let mut prev = Rational::zero();
        for (i, l) in lambda.iter().enumerate() {
            if l <= &prev {
                return Err(Error::DegenerateCurve {
                    violated: format!("lambda_{} = {} is not greater than lambda_{} = {}", i + 1, l, i, prev),
                });
            }
            prev = l.clone();
        }
        for (i, pk) in p.iter().enumerate() {
            if !pk.is_positive() {
                return Err(Error::DegenerateCurve {
                    violated: format!("p_{} = {} is not positive", i + 1, pk),
                });
            }
        }

        let mut model = CurveModel {
            cv: cv.clone(),
            lambda,
            p,
            vertices: Vec::new(),
            edges: Vec::new(),
        };

        // Vertices: v_0..v_g then u_0..u_g.
        for k in 0..=g {
            let x = model.lam(k);
            let y = model.weierstrass(&x);
            model.vertices.push((x, y));
        }
        for k in 0..=g {
            let (x, y) = model.vertices[k].clone();
            model.vertices.push((x, model.cv.c(-1) - &y));
        }

        // Edges in id order: E0, V_1..V_g, L_1..L_g, U_1..U_g.
        let v = |k: usize| k;
        let u = |k: usize| g + 1 + k;
        model.edges.push(Edge {
            id: 0,
            kind: EdgeKind::LeftRung,
            tail: v(0),
            head: u(0),
            direction: (0, 1),
            length: model.cv.c(-1).clone(),
        });
        for k in 1..=g {
            model.edges.push(Edge {
                id: k,
                kind: EdgeKind::Rung(k),
                tail: v(k),
                head: u(k),
                direction: (0, 1),
                length: model.p[k - 1].clone(),
            });
        }
        for k in 1..=g {
            model.edges.push(Edge {
                id: g + k,
                kind: EdgeKind::Lower(k),
                tail: v(k - 1),
                head: v(k),
                direction: (1, (g + 1 - k) as i64),
                length: &model.lam(k) - &model.lam(k - 1),
            });
        }
        for k in 1..=g {
            model.edges.push(Edge {
                id: 2 * g + k,
                kind: EdgeKind::Upper(k),
                tail: u(k - 1),
                head: u(k),
                direction: (1, -((g + 1 - k) as i64)),
                length: &model.lam(k) - &model.lam(k - 1),
            });
        }
        Ok(model)
    }

    pub fn conserved(&self) -> &ConservedVector {
        &self.cv
    }

    pub fn genus(&self) -> usize {
        self.cv.genus()
    }

    /// `lambda_k` with the convention `lambda_0 = 0`.
    pub fn lam(&self, k: usize) -> Rational {
        if k == 0 {
            Rational::zero()
        } else {
            self.lambda[k - 1].clone()
        }
    }

    /// `p_k` for `0 <= k <= g`, with the convention `p_0 = C_-1` (the left
    /// rung plays the role of the zeroth inner rung).
    pub fn rung_length(&self, k: usize) -> Rational {
        if k == 0 {
            self.cv.c(-1).clone()
        } else {
            self.p[k - 1].clone()
        }
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn p(&self) -> &[Rational] {
        &self.p
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::BadEdge {
            edge: id,
            edges: self.edges.len(),
        })
    }

    /// Vertex id of `v_k` (lower chain).
    pub fn lower_vertex(&self, k: usize) -> usize {
        k
    }

    /// Vertex id of `u_k` (upper chain).
    pub fn upper_vertex(&self, k: usize) -> usize {
        self.genus() + 1 + k
    }

    pub fn vertex_name(&self, id: usize) -> String {
        let g = self.genus();
        if id <= g {
            format!("v{id}")
        } else {
            format!("u{}", id - g - 1)
        }
    }

    /// The piecewise-linear function whose graph is the lower chain (plus the
    /// left tentacle for `X < 0` and the right one for `X > lambda_g`).
    pub fn weierstrass(&self, x: &Rational) -> Rational {
        let g = self.genus() as isize;
        let mut terms = Vec::with_capacity(g as usize + 2);
        terms.push(Rational::from_int(g as i64 + 1) * x);
        for k in (1..=g).rev() {
            terms.push(&(Rational::from_int(k as i64) * x) + self.cv.c(k));
        }
        terms.push(self.cv.c(0).clone());
        tmin(&terms)
    }

    /// The `g + 4` tropical terms of the defining polynomial at `(x, y)`, in
    /// the order `2Y, (g+1)X + Y, gX + Y + C_g, ..., X + Y + C_1, Y + C_0, C_-1`.
    pub fn curve_terms(&self, x: &Rational, y: &Rational) -> Vec<Rational> {
        let g = self.genus() as isize;
        let mut terms = Vec::with_capacity(g as usize + 4);
        terms.push(y + y);
        terms.push(&(Rational::from_int(g as i64 + 1) * x) + y);
        for k in (1..=g).rev() {
            terms.push(&(&(Rational::from_int(k as i64) * x) + y) + self.cv.c(k));
        }
        terms.push(y + self.cv.c(0));
        terms.push(self.cv.c(-1).clone());
        terms
    }

    /// Whether `(x, y)` lies on the compact curve: the tropical minimum is
    /// attained at least twice and `0 <= x <= lambda_g`.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        if x.is_negative() || x > &self.lam(self.genus()) {
            return false;
        }
        trop_min(&self.curve_terms(x, y))
            .expect("nonempty terms")
            .is_tie()
    }

    /// Graph coordinates of a plane point on the curve. At a vertex several
    /// `(edge, offset)` pairs describe the same point; the lexicographically
    /// smallest pair is returned, so the output is canonical.
    pub fn locate(&self, x: &Rational, y: &Rational) -> Result<GraphPoint> {
        let mut best: Option<GraphPoint> = None;
        for e in &self.edges {
            let (tx, ty) = &self.vertices[e.tail];
            let offset = match e.kind {
                EdgeKind::LeftRung | EdgeKind::Rung(_) => {
                    if x != tx {
                        continue;
                    }
                    y - ty
                }
                EdgeKind::Lower(_) | EdgeKind::Upper(_) => {
                    let off = x - tx;
                    let expect_y = ty + &(&Rational::from_int(e.direction.1) * &off);
                    if &expect_y != y {
                        continue;
                    }
                    off
                }
            };
            if offset.is_negative() || offset > e.length {
                continue;
            }
            let cand = GraphPoint::new(e.id, offset);
            if best.as_ref().is_none_or(|b| &cand < b) {
                best = Some(cand);
            }
        }
        best.ok_or(Error::OffCurve {
            x: x.to_string(),
            y: y.to_string(),
        })
    }

    /// Plane coordinates of a graph point.
    pub fn coords(&self, gp: &GraphPoint) -> Result<(Rational, Rational)> {
        let e = self.edge(gp.edge)?;
        if gp.offset.is_negative() || gp.offset > e.length {
            return Err(Error::BadOffset {
                edge: gp.edge,
                offset: gp.offset.to_string(),
                len: e.length.to_string(),
            });
        }
        let (tx, ty) = &self.vertices[e.tail];
        Ok((
            tx + &(&Rational::from_int(e.direction.0) * &gp.offset),
            ty + &(&Rational::from_int(e.direction.1) * &gp.offset),
        ))
    }

    /// Canonical form of a graph point (resolves vertex aliases).
    pub fn canonical(&self, gp: &GraphPoint) -> Result<GraphPoint> {
        let (x, y) = self.coords(gp)?;
        self.locate(&x, &y)
    }

    /// Edge ids incident to a vertex, ascending.
    pub fn incident_edges(&self, vertex: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.tail == vertex || e.head == vertex)
            .map(|e| e.id)
            .collect()
    }

    /// The cycle basis `alpha_1..alpha_g`. Each cycle is a signed edge list
    /// (`+1` = along the edge orientation): `alpha_k` runs along the lower
    /// chain step `L_k`, up the rung `V_k`, back along `U_k`, and down the
    /// previous rung (`V_{k-1}`, or `E0` when `k = 1`).
    pub fn cycles(&self) -> Vec<Vec<(usize, i8)>> {
        let g = self.genus();
        (1..=g)
            .map(|k| {
                let prev_rung = k - 1; // edge id: E0 is 0, V_j is j
                vec![
                    (g + k, 1i8),      // L_k
                    (k, 1),            // V_k
                    (2 * g + k, -1),   // U_k
                    (prev_rung, -1),   // V_{k-1} or E0
                ]
            })
            .collect()
    }

    /// Outgoing primitive directions at each vertex, including the four
    /// tentacle rays cut off by the compactification. Every multiset sums to
    /// zero (the balancing condition) and any two of its members span the
    /// lattice; the smoothness check relies on both.
    pub fn vertex_stars(&self) -> Vec<Vec<(i64, i64)>> {
        let g = self.genus();
        let mut stars: Vec<Vec<(i64, i64)>> = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            stars[e.tail].push(e.direction);
            stars[e.head].push((-e.direction.0, -e.direction.1));
        }
        stars[self.lower_vertex(0)].push((-1, -(g as i64 + 1)));
        stars[self.upper_vertex(0)].push((-1, g as i64 + 1));
        stars[self.lower_vertex(g)].push((1, 0));
        stars[self.upper_vertex(g)].push((1, 0));
        stars
    }

    /// Deterministic SVG rendering with exact coordinates: every plane
    /// coordinate is a rational with denominator dividing `scale_denominator`,
    /// so multiplying by it yields integers and nothing is rounded.
    pub fn svg(&self) -> String {
        self.svg_with_marks(&[])
    }

    /// Same rendering with extra labelled plane points drawn on top, used to
    /// overlay divisor supports or orbit snapshots on the curve picture.
    pub fn svg_with_marks(&self, marks: &[(Rational, Rational, String)]) -> String {
        use num::Integer;
        let g = self.genus();
        let mut scale = self.scale_denominator();
        for (x, y, _) in marks {
            scale = scale.lcm(x.denom());
            scale = scale.lcm(y.denom());
        }
        let px = |r: &Rational| -> i64 {
            let scaled = r * &Rational::from(scale.clone());
            let v: i64 = scaled
                .as_integer()
                .expect("scale clears denominators")
                .try_into()
                .expect("plot coordinate fits in i64");
            v
        };
        let height = px(self.cv.c(-1));
        let width = px(&self.lam(g));
        let flip = |y: i64| height - y;
        let margin = (width.max(height) / 8).max(2);
        let stroke = (height.max(width) / 120).max(1);
        let font = 4 * stroke;

        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
            -margin,
            -margin,
            width + 2 * margin,
            height + 2 * margin
        ));
        out.push_str(&format!(
            "  <!-- C = {}, lattice scale = {} -->\n",
            self.cv, scale
        ));
        for e in &self.edges {
            let (x1, y1) = &self.vertices[e.tail];
            let (x2, y2) = &self.vertices[e.head];
            let color = match e.kind {
                EdgeKind::LeftRung => "#1a6faf",
                EdgeKind::Rung(_) => "#1a6faf",
                EdgeKind::Lower(_) => "#b3541e",
                EdgeKind::Upper(_) => "#3e7d3a",
            };
            out.push_str(&format!(
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                px(x1),
                flip(px(y1)),
                px(x2),
                flip(px(y2)),
                color,
                stroke
            ));
            let mx = (px(x1) + px(x2)) / 2;
            let my = (flip(px(y1)) + flip(px(y2))) / 2;
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#444\">{} (len {})</text>\n",
                mx + stroke,
                my - stroke,
                font,
                e.kind.name(),
                e.length
            ));
        }
        for (id, (x, y)) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#222\"/>\n",
                px(x),
                flip(px(y)),
                2 * stroke
            ));
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#000\">{} = ({}, {})</text>\n",
                px(x) + 2 * stroke,
                flip(px(y)) + 2 * stroke,
                font,
                self.vertex_name(id),
                x,
                y
            ));
        }
        for (x, y, label) in marks {
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#c0392b\" stroke=\"#fff\" stroke-width=\"{}\"/>\n",
                px(x),
                flip(px(y)),
                2 * stroke,
                (stroke / 2).max(1)
            ));
            if !label.is_empty() {
                out.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#c0392b\">{}</text>\n",
                    px(x) + 2 * stroke,
                    flip(px(y)) - 2 * stroke,
                    font,
                    label
                ));
            }
        }
        out.push_str("</svg>\n");
        out
    }

    /// Least common multiple of the denominators of all plane coordinates.
    fn scale_denominator(&self) -> num::BigInt {
        use num::Integer;
        let mut scale = num::BigInt::from(1);
        for (x, y) in &self.vertices {
            scale = scale.lcm(x.denom());
            scale = scale.lcm(y.denom());
        }
        scale
    }
}

impl Serialize for CurveModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.genus();
        let mut s = serializer.serialize_struct("CurveModel", 7)?;
        s.serialize_field("C", self.cv.entries())?;
        s.serialize_field("genus", &g)?;
        s.serialize_field("lambda", &self.lambda)?;
        s.serialize_field("p", &self.p)?;
        let vertices: Vec<BTreeMap<&str, serde_json::Value>> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, (x, y))| {
                BTreeMap::from([
                    ("id", serde_json::json!(id)),
                    ("name", serde_json::json!(self.vertex_name(id))),
                    ("x", serde_json::json!(x.to_string())),
                    ("y", serde_json::json!(y.to_string())),
                ])
            })
            .collect();
        s.serialize_field("vertices", &vertices)?;
        let edges: Vec<BTreeMap<&str, serde_json::Value>> = self
            .edges
            .iter()
            .map(|e| {
                BTreeMap::from([
                    ("id", serde_json::json!(e.id)),
                    ("name", serde_json::json!(e.kind.name())),
                    ("tail", serde_json::json!(e.tail)),
                    ("head", serde_json::json!(e.head)),
                    ("direction", serde_json::json!([e.direction.0, e.direction.1])),
                    ("length", serde_json::json!(e.length.to_string())),
                ])
            })
            .collect();
        s.serialize_field("edges", &edges)?;
        s.serialize_field(
            "cycles",
            &self
                .cycles()
                .iter()
                .map(|c| c.iter().map(|&(e, s)| (e, s as i64)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )?;
        s.end()
    }
}
