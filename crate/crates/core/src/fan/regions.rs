use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{self, Vec3};

use super::corner::corner_point;
use super::{angle_cmp, primitive_step, FanLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Corner triangle at `e_i` (0-based).
    Corner(usize),
    #[serde(rename = "meeting_of_champions")]
    Champions,
}

/// A region left by the knock-out: a lattice triangle with `side + 1`
/// lattice points on each edge. Side 0 is a single point where three
/// champions annihilate each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularTriangle {
    /// Counter-clockwise, lexicographically smallest vertex first.
    pub vertices: [Vec3; 3],
    pub side: i64,
    pub kind: RegionKind,
}

/// Faces of the arrangement formed by the drawn corner lines and the sides of Δ.
pub(super) fn extract(g: &AbelianGroup, lines: &[FanLine]) -> Result<Vec<RegularTriangle>> {
    let n = g.order();
    let mut segments: Vec<(Vec3, Vec3)> = lines.iter().map(|l| (l.start, l.end)).collect();
    for i in 0..3 {
        segments.push((corner_point(n, i), corner_point(n, (i + 1) % 3)));
    }
    let mut unit: BTreeSet<(Vec3, Vec3)> = BTreeSet::new();
    for &(a, b) in &segments {
        if a == b {
            continue;
        }
        let (step, count) = primitive_step(g, a, b)?;
        for t in 0..count {
            let p = lattice::add(a, lattice::scale(step, t));
            let q = lattice::add(p, step);
            unit.insert((p.min(q), p.max(q)));
        }
    }
    let mut adj: BTreeMap<Vec3, Vec<Vec3>> = BTreeMap::new();
    for &(p, q) in &unit {
        adj.entry(p).or_default().push(q);
        adj.entry(q).or_default().push(p);
    }
    for (v, nb) in adj.iter_mut() {
        nb.sort_by(|&a, &b| angle_cmp(lattice::sub(a, *v), lattice::sub(b, *v)));
    }

    let mut seen: BTreeSet<(Vec3, Vec3)> = BTreeSet::new();
    let mut faces = Vec::new();
    let mut outer = 0;
    for (&u0, nb) in &adj {
        for &v0 in nb {
            if seen.contains(&(u0, v0)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                seen.insert((u, v));
                face.push(u);
                let around = &adj[&v];
                let k = around.iter().position(|&x| x == u).expect("symmetric adjacency");
                let w = around[(k + around.len() - 1) % around.len()];
                (u, v) = (v, w);
                if (u, v) == (u0, v0) {
                    break;
                }
                if face.len() > unit.len() * 2 {
                    return Err(Error::Algorithm("face traversal does not close".into()));
                }
            }
            let area: i128 = (1..face.len() - 1)
                .map(|i| lattice::cross2(lattice::sub(face[i], face[0]), lattice::sub(face[i + 1], face[0])))
                .sum();
            if area < 0 {
                outer += 1;
            } else {
                faces.push(face);
            }
        }
    }
    if outer != 1 {
        return Err(Error::Algorithm(format!("arrangement has {outer} outer faces")));
    }
    faces.into_iter().map(|f| regular_triangle(g, &f)).collect()
}

fn regular_triangle(g: &AbelianGroup, face: &[Vec3]) -> Result<RegularTriangle> {
    let n = g.order();
    let k = face.len();
    let corners: Vec<Vec3> = (0..k)
        .filter(|&i| {
            let (p, v, q) = (face[(i + k - 1) % k], face[i], face[(i + 1) % k]);
            lattice::cross2(lattice::sub(p, v), lattice::sub(q, v)) != 0
        })
        .map(|i| face[i])
        .collect();
    if corners.len() != 3 {
        return Err(Error::Algorithm(format!(
            "region with {} corners at {:?} is not a triangle",
            corners.len(),
            corners
        )));
    }
    let start = (0..3).min_by_key(|&i| corners[i]).unwrap();
    let v = [0, 1, 2].map(|i| corners[(start + i) % 3]);
    let sides: Vec<i64> = (0..3)
        .map(|i| primitive_step(g, v[i], v[(i + 1) % 3]).map(|(_, c)| c))
        .collect::<Result<_>>()?;
    let r = sides[0];
    let area = lattice::cross2(lattice::sub(v[1], v[0]), lattice::sub(v[2], v[0]));
    if sides.iter().any(|&s| s != r) || area != (r * r * n) as i128 {
        return Err(Error::Algorithm(format!("region {v:?} is not a regular triangle")));
    }
    let on_corner: Vec<usize> = (0..3)
        .filter_map(|i| v.iter().find(|p| **p == corner_point(n, i)).map(|_| i))
        .collect();
    let kind = match on_corner.len() {
        1 | 2 => RegionKind::Corner(on_corner[0]),
        _ => RegionKind::Champions,
    };
    Ok(RegularTriangle { vertices: v, side: r, kind })
}
