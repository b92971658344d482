use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{self, Vec3};

use super::corner::{corner_point, CornerFan};
use super::knockout::Knockout;
use super::shape::check_region_shape;
use super::{
    line_exponents, primitive_step, BasicTriangle, Edge, FanLine, LineKind, Orientation, Ratio,
    Triangulation,
};

/// Step 3: subdivide every regular triangle of side `r` into `r²` basic
/// triangles and label every edge with its ratio.
pub fn step3_tesselate(g: &AbelianGroup, fans: Vec<CornerFan>, ko: Knockout) -> Result<Triangulation> {
    let n = g.order();
    let mut points: Vec<Vec3> = (0..3).map(|i| corner_point(n, i)).collect();
    let mut rest = g.junior_points();
    rest.sort();
    points.extend(rest);
    let point_index: HashMap<Vec3, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let id = |p: Vec3| {
        point_index
            .get(&p)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("{p:?} is not a lattice point of Δ")))
    };

    let mut lines = ko.lines.clone();
    for i in 0..3 {
        let (a, b) = (corner_point(n, (i + 1) % 3), corner_point(n, (i + 2) % 3));
        lines.push(straight_line(g, LineKind::Boundary(i), a, b)?);
    }

    let mut triangles = Vec::new();
    for (ri, reg) in ko.regions.iter().enumerate() {
        let r = reg.side;
        if r == 0 {
            continue;
        }
        check_region_shape(g, reg)?;
        let [p0, p1, p2] = reg.vertices;
        let u = lattice::sub(p1, p0).map(|c| c / r);
        let w = lattice::sub(p2, p0).map(|c| c / r);
        let at = |i: i64, j: i64| lattice::add(p0, lattice::add(lattice::scale(u, i), lattice::scale(w, j)));
        for j in 0..r {
            for i in 0..r - j {
                let up = [at(i, j), at(i + 1, j), at(i, j + 1)];
                triangles.push(BasicTriangle {
                    vertices: [id(up[0])?, id(up[1])?, id(up[2])?],
                    orientation: Orientation::Up,
                    region: ri,
                });
                if i + j + 2 <= r {
                    let down = [at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
                    triangles.push(BasicTriangle {
                        vertices: [id(down[0])?, id(down[1])?, id(down[2])?],
                        orientation: Orientation::Down,
                        region: ri,
                    });
                }
            }
        }
        // lines parallel to each side, at levels 1..r-1 towards the opposite vertex
        for a in 0..3 {
            let (va, vb, vc) = (reg.vertices[a], reg.vertices[(a + 1) % 3], reg.vertices[(a + 2) % 3]);
            let da = lattice::sub(vc, va).map(|c| c / r);
            let db = lattice::sub(vc, vb).map(|c| c / r);
            for lvl in 1..r {
                let s = lattice::add(va, lattice::scale(da, lvl));
                let e = lattice::add(vb, lattice::scale(db, lvl));
                lines.push(straight_line(g, LineKind::Tesselating, s, e)?);
            }
        }
    }

    for t in &triangles {
        let [a, b, c] = t.vertices.map(|v| points[v]);
        if lattice::cross2(lattice::sub(b, a), lattice::sub(c, a)) != n as i128 {
            return Err(Error::Invariant(format!("triangle {a:?},{b:?},{c:?} is not basic")));
        }
    }
    if triangles.len() as i64 != n {
        return Err(Error::Invariant(format!(
            "{} basic triangles but |A| = {n}",
            triangles.len()
        )));
    }

    let mut used = vec![false; points.len()];
    let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ti, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t.vertices[k], t.vertices[(k + 1) % 3]);
            used[a] = true;
            edge_tris.entry((a.min(b), a.max(b))).or_default().push(ti);
        }
    }
    if let Some(p) = used.iter().position(|&u| !u) {
        return Err(Error::Invariant(format!("lattice point {:?} is not a vertex", points[p])));
    }

    let mut edge_line: HashMap<(usize, usize), usize> = HashMap::new();
    for (li, l) in lines.iter().enumerate() {
        let (step, count) = primitive_step(g, l.start, l.end)?;
        for t in 0..count {
            let p = id(lattice::add(l.start, lattice::scale(step, t)))?;
            let q = id(lattice::add(l.start, lattice::scale(step, t + 1)))?;
            if edge_line.insert((p.min(q), p.max(q)), li).is_some() {
                return Err(Error::Invariant(format!("unit edge on two lines near {:?}", points[p])));
            }
        }
    }

    let mut edges = Vec::new();
    let mut edge_index = HashMap::new();
    for ((a, b), tris) in edge_tris {
        let boundary = points[a].iter().zip(&points[b]).any(|(&x, &y)| x == 0 && y == 0);
        if tris.len() != if boundary { 1 } else { 2 } {
            return Err(Error::Invariant(format!(
                "edge {:?}-{:?} borders {} triangles",
                points[a],
                points[b],
                tris.len()
            )));
        }
        let line = *edge_line.get(&(a, b)).ok_or_else(|| {
            Error::Invariant(format!("edge {:?}-{:?} lies on no line", points[a], points[b]))
        })?;
        let l = &lines[line];
        edge_index.insert((a, b), edges.len());
        edges.push(Edge { ends: [a, b], triangles: tris, line, ratio: l.ratio, character: l.character });
    }

    let battles = ko.battles;
    Ok(Triangulation {
        order: n,
        points,
        corner_fans: fans,
        battles,
        regions: ko.regions,
        lines,
        triangles,
        edges,
        point_index,
        edge_index,
    })
}

fn straight_line(g: &AbelianGroup, kind: LineKind, start: Vec3, end: Vec3) -> Result<FanLine> {
    let ratio = Ratio::from_exponents(line_exponents(g, start, end)?);
    Ok(FanLine {
        kind,
        start,
        end,
        birth_strength: 0,
        strength: 0,
        ratio,
        character: g.weight(&ratio.plus),
    })
}
