//! Affine charts `U_τ ≅ C³`, one per basic triangle, with their A-graphs.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Orientation, Triangulation};
use crate::group::{AbelianGroup, Character, Monomial};
use crate::lattice::{self, Vec3};

/// Coordinates on `U_τ`: coordinate `j` is the invariant Laurent monomial
/// dual to vertex `j` (it vanishes on the opposite edge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub triangle: usize,
    pub orientation: Orientation,
    /// `(numerator, denominator)` per vertex.
    pub coords: [(Monomial, Monomial); 3],
}

impl Chart {
    pub fn exponents(&self, j: usize) -> Vec3 {
        lattice::sub(self.coords[j].0 .0, self.coords[j].1 .0)
    }
}

/// Nakamura's A-graph `Γ_τ`: the generator `r_{χ,τ}` of every character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AGraph {
    pub triangle: usize,
    /// Indexed by [`AbelianGroup::index`].
    pub generators: Vec<Monomial>,
}

impl AGraph {
    pub fn contains(&self, g: &AbelianGroup, m: &Monomial) -> bool {
        self.generators[g.index(g.weight(m))] == *m
    }

    pub fn generator(&self, g: &AbelianGroup, c: Character) -> Monomial {
        self.generators[g.index(c)]
    }

    /// Monomials `m ∈ Γ` with `xm, ym, zm ∉ Γ`.
    pub fn socle(&self, g: &AbelianGroup) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .generators
            .iter()
            .filter(|m| (0..3).all(|i| !self.contains(g, &m.times_var(i))))
            .copied()
            .collect();
        out.sort();
        out
    }
}

/// Coordinates on the chart of triangle `t`.
pub fn chart_coords(g: &AbelianGroup, tri: &Triangulation, t: usize) -> Result<Chart> {
    let n = g.order() as i128;
    let v = tri.triangles[t].vertices.map(|p| tri.points[p]);
    let det = lattice::det3(v[0], v[1], v[2]);
    if det.abs() != n * n {
        return Err(Error::Invariant(format!("triangle {t} is not basic")));
    }
    let edges = tri.triangle_edges(t);
    let mut coords = [(Monomial::ONE, Monomial::ONE); 3];
    for j in 0..3 {
        let c = lattice::cross(v[(j + 1) % 3], v[(j + 2) % 3]);
        let mut m = [0i64; 3];
        for k in 0..3 {
            if (n * c[k]) % det != 0 {
                return Err(Error::Invariant(format!("chart {t}: dual basis is not integral")));
            }
            m[k] = (n * c[k] / det) as i64;
        }
        if !g.is_invariant(m) {
            return Err(Error::Invariant(format!("chart {t}: coordinate {m:?} is not invariant")));
        }
        let edge_ratio = tri.edges[edges[j]].ratio.positive_on(v[j]);
        if edge_ratio != m {
            return Err(Error::Invariant(format!(
                "chart {t}: coordinate {m:?} differs from edge ratio {edge_ratio:?}"
            )));
        }
        coords[j] = Monomial::split_laurent(m);
    }
    Ok(Chart { triangle: t, orientation: tri.triangles[t].orientation, coords })
}

/// The A-graph of triangle `t`: for each character the monomial of that
/// weight with the least pairing against the sum of the three vertices.
pub fn agraph(g: &AbelianGroup, tri: &Triangulation, t: usize) -> Result<AGraph> {
    let v = tri.triangles[t].vertices.map(|p| tri.points[p]);
    let s = lattice::add(v[0], lattice::add(v[1], v[2]));
    let n = g.order() as usize;
    let mut best: Vec<Option<(i64, Monomial)>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, Monomial::ONE)));
    let mut found = 0;
    while let Some(Reverse((val, m))) = heap.pop() {
        let k = g.index(g.weight(&m));
        match best[k] {
            Some((bv, bm)) => {
                if bv == val && bm != m {
                    return Err(Error::Invariant(format!(
                        "chart {t}: {bm} and {m} tie for character {}",
                        g.label(g.weight(&m))
                    )));
                }
            }
            None => {
                best[k] = Some((val, m));
                found += 1;
                for i in 0..3 {
                    let next = m.times_var(i);
                    heap.push(Reverse((next.pair(s), next)));
                }
            }
        }
        if found == n && heap.peek().is_none_or(|Reverse((top, _))| *top > val) {
            break;
        }
    }
    let generators: Vec<Monomial> = best
        .into_iter()
        .map(|b| b.map(|(_, m)| m).ok_or_else(|| Error::Invariant(format!("chart {t}: character missing"))))
        .collect::<Result<_>>()?;
    Ok(AGraph { triangle: t, generators })
}

/// All charts and A-graphs of Σ.
#[derive(Debug, Clone)]
pub struct ChartAtlas {
    pub charts: Vec<Chart>,
    pub agraphs: Vec<AGraph>,
}

impl ChartAtlas {
    pub fn build(g: &AbelianGroup, tri: &Triangulation) -> Result<Self> {
        let mut charts = Vec::with_capacity(tri.triangles.len());
        let mut agraphs = Vec::with_capacity(tri.triangles.len());
        for t in 0..tri.triangles.len() {
            charts.push(chart_coords(g, tri, t)?);
            agraphs.push(agraph(g, tri, t)?);
        }
        Ok(ChartAtlas { charts, agraphs })
    }

    pub fn generator(&self, g: &AbelianGroup, t: usize, c: Character) -> Monomial {
        self.agraphs[t].generator(g, c)
    }

    /// Triangles on which `r_{χ,τ} = m`.
    pub fn conv_region(&self, g: &AbelianGroup, c: Character, m: &Monomial) -> Vec<usize> {
        (0..self.agraphs.len()).filter(|&t| self.generator(g, t, c) == *m).collect()
    }

    /// The partition of Σ by the generator of `χ`, keyed by monomial.
    pub fn conv_regions(&self, g: &AbelianGroup, c: Character) -> BTreeMap<Monomial, Vec<usize>> {
        let mut out: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
        for t in 0..self.agraphs.len() {
            out.entry(self.generator(g, t, c)).or_default().push(t);
        }
        out
    }

    /// Degree of the tautological bundle of `χ` on the curve of an interior
    /// edge: the `d` with `r_{χ,T}·(m⁻)^d = r_{χ,T'}·(m⁺)^d`, where the edge
    /// ratio `m⁺/m⁻` is signed positive on the far vertex of `T'`.
    pub fn degree_on_curve(
        &self,
        g: &AbelianGroup,
        tri: &Triangulation,
        c: Character,
        edge: usize,
    ) -> Result<i64> {
        let e = &tri.edges[edge];
        if e.is_boundary() {
            return Err(Error::Precondition(format!("edge {edge} is on the boundary of Δ")));
        }
        let (t, t2) = (e.triangles[0], e.triangles[1]);
        let far = tri.points[tri.opposite_vertex(t2, edge)];
        let u = e.ratio.positive_on(far);
        let diff = lattice::sub(self.generator(g, t, c).0, self.generator(g, t2, c).0);
        let k = (0..3).find(|&i| u[i] != 0).expect("nonzero ratio");
        let d = diff[k] / u[k];
        if lattice::scale(u, d) != diff {
            return Err(Error::Invariant(format!(
                "no transition exponent for {} across edge {edge}",
                g.label(c)
            )));
        }
        Ok(d)
    }
}

/// Twice the area of the convex hull of a planar point set (first two coordinates).
pub fn hull_area2(points: &[Vec3]) -> i128 {
    let mut p: Vec<(i64, i64)> = points.iter().map(|v| (v[0], v[1])).collect();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let half = |pts: &mut dyn Iterator<Item = (i64, i64)>| {
        let mut h: Vec<(i64, i64)> = Vec::new();
        for q in pts {
            while h.len() >= 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
        h
    };
    let mut hull = half(&mut p.iter().copied());
    hull.extend(half(&mut p.iter().rev().copied()));
    (1..hull.len() - 1).map(|i| cross(hull[0], hull[i], hull[i + 1])).sum()
}

/// True when a union of triangles is convex: its hull has the same area.
pub fn is_convex_union(tri: &Triangulation, triangles: &[usize]) -> bool {
    let n = tri.order as i128;
    let pts: Vec<Vec3> =
        triangles.iter().flat_map(|&t| tri.triangles[t].vertices.map(|p| tri.points[p])).collect();
    hull_area2(&pts) == n * triangles.len() as i128
}
