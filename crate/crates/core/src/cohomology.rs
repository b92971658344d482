//! Cohomology of Y: virtual bundles built from the relations, their c₂
//! pairing against the compact exceptional surfaces, and the H² basis test.
//!
//! All intersection numbers are computed on the surfaces themselves, from the
//! star of the corresponding interior vertex, since Y is not compact.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charts::ChartAtlas;
use crate::error::{Error, Result};
use crate::fan::Triangulation;
use crate::group::{AbelianGroup, Character};
use crate::lattice::{self, Vec3};
use crate::recipe::{CharacterRole, Partition, SurfaceCase, VertexMark};
use crate::relations::Relation;

/// `plus ⊖ minus`, of rank zero and trivial first Chern class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualBundle {
    pub index: Character,
    pub plus: Vec<Character>,
    pub minus: Vec<Character>,
}

pub fn virtual_bundle(g: &AbelianGroup, rel: &Relation) -> Result<VirtualBundle> {
    let mut minus = rel.lhs.clone();
    minus.push(Character::TRIVIAL);
    let v = VirtualBundle { index: rel.lhs[0], plus: rel.rhs.clone(), minus };
    if v.plus.len() != v.minus.len() || g.sum(v.plus.iter()) != g.sum(v.minus.iter()) {
        return Err(Error::Invariant(format!(
            "virtual bundle for {} has nonzero rank or c1",
            g.label(v.index)
        )));
    }
    Ok(v)
}

/// Degrees of every tautological bundle on every compact curve.
#[derive(Debug, Clone)]
pub struct DegreeTable {
    /// Interior edges, in index order.
    pub curves: Vec<usize>,
    column: BTreeMap<usize, usize>,
    /// `rows[g.index(χ)][column]`.
    rows: Vec<Vec<i64>>,
}

impl DegreeTable {
    pub fn build(g: &AbelianGroup, tri: &Triangulation, atlas: &ChartAtlas) -> Result<Self> {
        let curves = tri.interior_edges();
        let column = curves.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let rows = g
            .characters()
            .into_par_iter()
            .map(|c| curves.iter().map(|&e| atlas.degree_on_curve(g, tri, c, e)).collect())
            .collect::<Result<_>>()?;
        Ok(DegreeTable { curves, column, rows })
    }

    pub fn row(&self, g: &AbelianGroup, c: Character) -> &[i64] {
        &self.rows[g.index(c)]
    }

    pub fn degree(&self, g: &AbelianGroup, c: Character, edge: usize) -> i64 {
        self.rows[g.index(c)][self.column[&edge]]
    }
}

/// The toric surface over an interior vertex, described by its boundary curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactSurface {
    pub vertex: usize,
    pub character: Character,
    pub case: SurfaceCase,
    /// Neighbouring vertices in counter-clockwise order; curve `i` joins the
    /// vertex to `neighbours[i]`.
    pub neighbours: Vec<usize>,
    pub curves: Vec<usize>,
    pub self_intersections: Vec<i64>,
}

/// Reads off the self-intersection cycle from the wall relations
/// `u_{i-1} + u_{i+1} = -C_i² u_i` modulo the vertex.
pub fn surface_star(g: &AbelianGroup, tri: &Triangulation, vm: &VertexMark) -> Result<CompactSurface> {
    let v = vm.vertex;
    let p = tri.points[v];
    let neighbours = tri.neighbours(v);
    let k = neighbours.len();
    let u: Vec<Vec3> = neighbours.iter().map(|&q| tri.points[q]).collect();
    let basic = (g.order() as i128).pow(2);
    let fail = |what: &str| Error::Invariant(format!("star of {p:?} is {what}"));
    if k < 3 {
        return Err(fail("incomplete"));
    }
    let mut self_intersections = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b, c) = (u[(i + k - 1) % k], u[i], u[(i + 1) % k]);
        if lattice::det3(p, b, c).abs() != basic {
            return Err(fail("not smooth"));
        }
        let w = lattice::add(a, c);
        if lattice::det3(w, b, p) != 0 {
            return Err(fail("not a fan of a smooth surface"));
        }
        let num = lattice::det3(w, p, a);
        let den = lattice::det3(b, p, a);
        if den == 0 || num % den != 0 {
            return Err(fail("not unimodular"));
        }
        self_intersections.push(-(num / den) as i64);
    }
    let total: i64 = self_intersections.iter().sum();
    if total != 12 - 3 * k as i64 {
        return Err(fail("not complete"));
    }
    let case = match (k, self_intersections.as_slice()) {
        (3, _) => SurfaceCase::P2,
        (4, s) if s[0] + s[2] == 0 && s[1] + s[3] == 0 && (s[0] == 0 || s[1] == 0) => SurfaceCase::Scroll,
        (6, s) if s.iter().all(|&x| x == -1) => SurfaceCase::DP6,
        _ => SurfaceCase::BlownupScroll,
    };
    if case != vm.case {
        return Err(Error::Invariant(format!(
            "surface at {p:?} is {case:?} but the recipe says {:?}",
            vm.case
        )));
    }
    let curves = neighbours
        .iter()
        .map(|&q| tri.edge_id(v, q).ok_or_else(|| fail("missing an edge")))
        .collect::<Result<_>>()?;
    Ok(CompactSurface { vertex: v, character: vm.mark(), case, neighbours, curves, self_intersections })
}

impl CompactSurface {
    /// Intersection number of boundary curves `i` and `j`.
    pub fn curve_pairing(&self, i: usize, j: usize) -> i64 {
        let k = self.curves.len();
        if i == j {
            self.self_intersections[i]
        } else if (i + 1) % k == j || (j + 1) % k == i {
            1
        } else {
            0
        }
    }

    /// Symmetric pairing of classes given as coefficient vectors over the
    /// boundary curves.
    pub fn intersect(&self, a: &[i64], b: &[i64]) -> i64 {
        let k = self.curves.len();
        (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * self.curve_pairing(i, j) * b[j])
            .sum()
    }

    /// Degrees of a class on each boundary curve.
    pub fn degrees(&self, a: &[i64]) -> Vec<i64> {
        let k = self.curves.len();
        (0..k).map(|i| (0..k).map(|j| self.curve_pairing(i, j) * a[j]).sum()).collect()
    }

    /// The class on the surface with the given curve degrees.
    ///
    /// Curves 0 and 1 come from a basis of the plane lattice, so the others
    /// form a basis of Pic and the class has zero coefficients on 0 and 1.
    pub fn class_with_degrees(&self, d: &[i64]) -> Result<Vec<i64>> {
        let k = self.curves.len();
        let a: Vec<Vec<i128>> = (2..k)
            .map(|i| (2..k).map(|j| self.curve_pairing(i, j) as i128).collect())
            .collect();
        let rhs: Vec<i128> = d[2..].iter().map(|&x| x as i128).collect();
        let x = solve_integral(a, rhs)
            .ok_or_else(|| Error::Invariant("intersection form on a surface is not unimodular".into()))?;
        let mut class = vec![0, 0];
        class.extend(x.into_iter().map(|v| v as i64));
        if self.degrees(&class) != d {
            return Err(Error::Invariant(format!(
                "curve degrees {d:?} are not those of a class on the surface at vertex {}",
                self.vertex
            )));
        }
        Ok(class)
    }
}

/// Unique integral solution of a square system, by fraction-free elimination.
fn solve_integral(mut a: Vec<Vec<i128>>, mut b: Vec<i128>) -> Option<Vec<i128>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let (f, q) = (a[c][c], a[r][c]);
            for j in c..n {
                a[r][j] = f * a[r][j] - q * a[c][j];
            }
            b[r] = f * b[r] - q * b[c];
        }
    }
    let mut x = vec![0i128; n];
    for i in (0..n).rev() {
        let s = b[i] - (i + 1..n).map(|j| a[i][j] * x[j]).sum::<i128>();
        if s % a[i][i] != 0 {
            return None;
        }
        x[i] = s / a[i][i];
    }
    Some(x)
}

/// Class of `c₁(R_χ)` restricted to a surface.
pub fn restrict_c1(g: &AbelianGroup, deg: &DegreeTable, c: Character, s: &CompactSurface) -> Result<Vec<i64>> {
    let d: Vec<i64> = s.curves.iter().map(|&e| deg.degree(g, c, e)).collect();
    s.class_with_degrees(&d)
}

fn elementary_symmetric2(s: &CompactSurface, classes: &[Vec<i64>]) -> i64 {
    let mut total = 0;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            total += s.intersect(&classes[i], &classes[j]);
        }
    }
    total
}

/// `∫_S c₂(V)`, which is `e₂(plus) - e₂(minus)` because rank and c₁ vanish.
pub fn c2_pairing(g: &AbelianGroup, deg: &DegreeTable, v: &VirtualBundle, s: &CompactSurface) -> Result<i64> {
    let restrict = |cs: &[Character]| cs.iter().map(|&c| restrict_c1(g, deg, c, s)).collect::<Result<Vec<_>>>();
    Ok(elementary_symmetric2(s, &restrict(&v.plus)?) - elementary_symmetric2(s, &restrict(&v.minus)?))
}

/// `∫_{S_n} c₂(V_m)` with rows indexed by bundles and columns by surfaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityMatrix {
    pub bundles: Vec<Character>,
    pub surfaces: Vec<Character>,
    pub entries: Vec<Vec<i64>>,
}

impl DualityMatrix {
    /// Fails on the first entry that differs from the identity.
    pub fn check(&self, g: &AbelianGroup) -> Result<()> {
        for (m, row) in self.entries.iter().enumerate() {
            for (n, &x) in row.iter().enumerate() {
                if x != (m == n) as i64 {
                    return Err(Error::Correspondence(format!(
                        "duality entry (m, n) = ({}, {}) is {x}",
                        g.label(self.bundles[m]),
                        g.label(self.surfaces[n])
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn duality_matrix(
    g: &AbelianGroup,
    deg: &DegreeTable,
    bundles: &[VirtualBundle],
    surfaces: &[CompactSurface],
) -> Result<DualityMatrix> {
    let entries = bundles
        .par_iter()
        .map(|v| surfaces.iter().map(|s| c2_pairing(g, deg, v, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(DualityMatrix {
        bundles: bundles.iter().map(|v| v.index).collect(),
        surfaces: surfaces.iter().map(|s| s.character).collect(),
        entries,
    })
}

/// Degree matrix of the type (i) and (iii) bundles on the compact curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Basis {
    pub characters: Vec<Character>,
    pub curves: Vec<usize>,
    pub degrees: Vec<Vec<i64>>,
    pub elementary_divisors: Vec<i64>,
}

impl H2Basis {
    pub fn check(&self, b2: usize) -> Result<()> {
        if self.elementary_divisors.len() != b2 || self.elementary_divisors.iter().any(|&d| d != 1) {
            return Err(Error::Correspondence(format!(
                "degree matrix has elementary divisors {:?}, expected {b2} ones",
                self.elementary_divisors
            )));
        }
        Ok(())
    }
}

/// Builds the H² degree matrix and checks every relation row by row.
pub fn h2_basis(
    g: &AbelianGroup,
    partition: &Partition,
    deg: &DegreeTable,
    relations: &[Relation],
) -> Result<H2Basis> {
    let mut characters = partition.of_role(CharacterRole::Line);
    characters.extend(partition.of_role(CharacterRole::SecondDp6));
    characters.sort();
    let degrees: Vec<Vec<i64>> = characters.iter().map(|&c| deg.row(g, c).to_vec()).collect();
    let sum_rows = |cs: &[Character]| {
        let mut acc = vec![0i64; deg.curves.len()];
        for &c in cs {
            for (a, x) in acc.iter_mut().zip(deg.row(g, c)) {
                *a += x;
            }
        }
        acc
    };
    for r in relations {
        if sum_rows(&r.lhs) != sum_rows(&r.rhs) {
            return Err(Error::Correspondence(format!(
                "degree rows break the relation at vertex {}",
                r.vertex
            )));
        }
    }
    let elementary_divisors = lattice::elementary_divisors(&degrees)?
        .into_iter()
        .map(|d| i64::try_from(d).map_err(|_| Error::Resource("elementary divisor overflow".into())))
        .collect::<Result<_>>()?;
    Ok(H2Basis { characters, curves: deg.curves.clone(), degrees, elementary_divisors })
}

/// Surface-local facts behind the duality: `O(1)² = 1` on P², `F·(M + cF) = 1`
/// on scrolls and `C₁·C₂ = 2` on dP6.
pub fn local_facts(
    g: &AbelianGroup,
    deg: &DegreeTable,
    vm: &VertexMark,
    rel: &Relation,
    s: &CompactSurface,
) -> Result<()> {
    let class = |c| restrict_c1(g, deg, c, s);
    let (value, expected, what) = match vm.case {
        SurfaceCase::P2 => {
            let h = class(rel.rhs[0])?;
            (s.intersect(&h, &h), 1, "hyperplane squared")
        }
        SurfaceCase::Scroll | SurfaceCase::BlownupScroll => {
            (s.intersect(&class(rel.rhs[0])?, &class(rel.rhs[1])?), 1, "through-line product")
        }
        SurfaceCase::DP6 => (s.intersect(&class(vm.marks[0])?, &class(vm.marks[1])?), 2, "C1.C2"),
    };
    if value != expected {
        return Err(Error::Correspondence(format!(
            "{what} at vertex {} is {value}, expected {expected}",
            vm.vertex
        )));
    }
    Ok(())
}

/// Counts in the McKay bijection: trivial character, H² basis, H⁴ basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayCounts {
    pub h0: usize,
    pub h2: usize,
    pub h4: usize,
}

/// The full cohomological side of the correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cohomology {
    pub surfaces: Vec<CompactSurface>,
    pub bundles: Vec<VirtualBundle>,
    pub duality: DualityMatrix,
    pub h2: H2Basis,
    pub counts: McKayCounts,
}

impl Cohomology {
    /// Computes everything without judging it; see [`Cohomology::certify`].
    pub fn build(
        g: &AbelianGroup,
        tri: &Triangulation,
        atlas: &ChartAtlas,
        marks: &[VertexMark],
        partition: &Partition,
        relations: &[Relation],
    ) -> Result<Self> {
        let deg = DegreeTable::build(g, tri, atlas)?;
        let surfaces = marks.iter().map(|vm| surface_star(g, tri, vm)).collect::<Result<Vec<_>>>()?;
        for ((vm, rel), s) in marks.iter().zip(relations).zip(&surfaces) {
            local_facts(g, &deg, vm, rel, s)?;
        }
        let bundles = relations.iter().map(|r| virtual_bundle(g, r)).collect::<Result<Vec<_>>>()?;
        for v in &bundles {
            for (i, &e) in deg.curves.iter().enumerate() {
                let d = |cs: &[Character]| cs.iter().map(|&c| deg.rows[g.index(c)][i]).sum::<i64>();
                if d(&v.plus) != d(&v.minus) {
                    return Err(Error::Invariant(format!(
                        "c1 of the virtual bundle for {} has degree on curve {e}",
                        g.label(v.index)
                    )));
                }
            }
        }
        let duality = duality_matrix(g, &deg, &bundles, &surfaces)?;
        let h2 = h2_basis(g, partition, &deg, relations)?;
        let counts = McKayCounts {
            h0: 1,
            h2: h2.characters.len(),
            h4: bundles.len(),
        };
        Ok(Cohomology { surfaces, bundles, duality, h2, counts })
    }

    /// Checks the duality, the H² basis and `1 + b₂ + b₄ = |A|`.
    pub fn certify(&self, g: &AbelianGroup) -> Result<()> {
        self.duality.check(g)?;
        let b2 = g.order() as usize - 1 - self.counts.h4;
        if self.counts.h2 != b2 {
            return Err(Error::Correspondence(format!(
                "{} type (i) and (iii) characters but b2 = {b2}",
                self.counts.h2
            )));
        }
        self.h2.check(b2)
    }
}
