//! The triangulation Σ of the junior simplex, built in three steps: corner
//! fans with Jung-Hirzebruch strengths, the knock-out tournament between
//! lines from different corners, and the regular tesselation of what remains.

mod corner;
mod knockout;
mod regions;
mod shape;
mod tesselate;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character, Monomial};
use crate::lattice::{self, Vec3};

pub use corner::{step1_corner_fans, CornerFan};
pub use knockout::{knockout_monomial_rule, step2_knockout, Battle, Knockout, Outcome};
pub use regions::{RegionKind, RegularTriangle};
pub use shape::{check_region_shape, region_pattern, ShapeCase};
pub use tesselate::step3_tesselate;

/// A ratio `m⁺ : m⁻` of coprime monomials of equal weight, stored with the
/// first nonzero exponent of `m⁺ / m⁻` positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ratio {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Ratio {
    pub fn from_exponents(v: Vec3) -> Ratio {
        let v = canonical_sign(v);
        let (plus, minus) = Monomial::split_laurent(v);
        Ratio { plus, minus }
    }

    /// Laurent exponent vector of `m⁺ / m⁻`.
    pub fn exponents(&self) -> Vec3 {
        lattice::sub(self.plus.0, self.minus.0)
    }

    /// Exponent vector signed to be positive on `p` (which must be off the line).
    pub fn positive_on(&self, p: Vec3) -> Vec3 {
        let e = self.exponents();
        if lattice::dot(e, p) < 0 {
            lattice::scale(e, -1)
        } else {
            e
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.plus, self.minus)
    }
}

fn canonical_sign(v: Vec3) -> Vec3 {
    match v.iter().find(|&&c| c != 0) {
        Some(&c) if c < 0 => lattice::scale(v, -1),
        _ => v,
    }
}

/// Primitive invariant exponent vector vanishing on the line through `a` and `b`.
pub fn line_exponents(g: &AbelianGroup, a: Vec3, b: Vec3) -> Result<Vec3> {
    let c = lattice::cross(a, b);
    let d = c.iter().fold(0i128, |acc, &x| num_gcd(acc, x));
    if d == 0 {
        return Err(Error::Invariant(format!("degenerate line through {a:?} and {b:?}")));
    }
    let prim: Vec3 = [0, 1, 2].map(|i| (c[i] / d) as i64);
    let k = g.character_order(g.reduce(prim));
    Ok(lattice::scale(prim, k))
}

fn num_gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest-step decomposition of the segment `from → to` into lattice steps.
/// Returns the primitive step and the number of steps.
pub fn primitive_step(g: &AbelianGroup, from: Vec3, to: Vec3) -> Result<(Vec3, i64)> {
    let v = lattice::sub(to, from);
    let h = lattice::gcd3(v);
    if h == 0 {
        return Err(Error::Invariant("zero-length segment".into()));
    }
    let mut best = None;
    for t in 1..=h {
        if h % t == 0 && g.in_lattice(v.map(|c| c / t)) {
            best = Some(t);
        }
    }
    match best {
        Some(t) => Ok((v.map(|c| c / t), t)),
        None => Err(Error::Invariant(format!("segment {from:?}→{to:?} has no lattice step"))),
    }
}

/// Where a maximal line of Σ comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    /// Interior line of the fan at a corner (0-based corner index).
    Corner(usize),
    /// Side of Δ opposite the given corner.
    Boundary(usize),
    /// Added when subdividing a regular triangle.
    Tesselating,
}

/// A maximal straight segment of Σ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanLine {
    pub kind: LineKind,
    pub start: Vec3,
    pub end: Vec3,
    /// Jung-Hirzebruch coefficient at birth (corner lines only, else 0).
    pub birth_strength: i64,
    /// Strength left after the knock-out (corner lines only, else 0).
    pub strength: i64,
    pub ratio: Ratio,
    pub character: Character,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicTriangle {
    /// Point indices in counter-clockwise order.
    pub vertices: [usize; 3],
    pub orientation: Orientation,
    /// Index of the regular triangle it subdivides.
    pub region: usize,
}

/// A unit edge of Σ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub ends: [usize; 2],
    /// One triangle for boundary edges, two for interior edges.
    pub triangles: Vec<usize>,
    pub line: usize,
    pub ratio: Ratio,
    pub character: Character,
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        self.triangles.len() == 1
    }
}

/// The decorated triangulation Σ.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub order: i64,
    /// Scaled points, corners `e₁,e₂,e₃` first.
    pub points: Vec<Vec3>,
    pub corner_fans: Vec<CornerFan>,
    pub battles: Vec<Battle>,
    pub regions: Vec<RegularTriangle>,
    pub lines: Vec<FanLine>,
    pub triangles: Vec<BasicTriangle>,
    pub edges: Vec<Edge>,
    point_index: HashMap<Vec3, usize>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl Triangulation {
    /// Runs all three steps.
    pub fn build(g: &AbelianGroup) -> Result<Self> {
        let fans = step1_corner_fans(g)?;
        let ko = step2_knockout(g, &fans)?;
        step3_tesselate(g, fans, ko)
    }

    pub fn point_id(&self, p: Vec3) -> Option<usize> {
        self.point_index.get(&p).copied()
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn is_corner(&self, p: usize) -> bool {
        p < 3
    }

    /// A point is on the boundary of Δ when some coordinate vanishes.
    pub fn is_boundary_point(&self, p: usize) -> bool {
        self.points[p].contains(&0)
    }

    pub fn interior_points(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| !self.is_boundary_point(p)).collect()
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.edges[e].is_boundary()).collect()
    }

    /// Counter-clockwise neighbours of a point.
    pub fn neighbours(&self, p: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| match e.ends {
                [a, b] if a == p => Some(b),
                [a, b] if b == p => Some(a),
                _ => None,
            })
            .collect();
        let c = self.points[p];
        out.sort_by(|&a, &b| {
            angle_cmp(lattice::sub(self.points[a], c), lattice::sub(self.points[b], c))
        });
        out
    }

    /// Triangles containing a point, in index order.
    pub fn triangles_at(&self, p: usize) -> Vec<usize> {
        (0..self.triangles.len()).filter(|&t| self.triangles[t].vertices.contains(&p)).collect()
    }

    /// Edges incident to a point.
    pub fn edges_at(&self, p: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].ends.contains(&p)).collect()
    }

    /// Vertex of triangle `t` opposite edge `e`.
    pub fn opposite_vertex(&self, t: usize, e: usize) -> usize {
        let [a, b] = self.edges[e].ends;
        *self.triangles[t].vertices.iter().find(|&&v| v != a && v != b).expect("edge of triangle")
    }

    /// Edges of triangle `t`, opposite vertex 0, 1, 2 in turn.
    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        let v = self.triangles[t].vertices;
        [0, 1, 2].map(|i| self.edge_id(v[(i + 1) % 3], v[(i + 2) % 3]).expect("triangle edge"))
    }
}

/// Total order on planar directions by angle in `[0, 2π)`, using the first two
/// coordinates.
pub(crate) fn angle_cmp(a: Vec3, b: Vec3) -> std::cmp::Ordering {
    let half = |v: Vec3| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&lattice::cross2(a, b)))
}
