//! Relations between tautological line bundles, one per interior vertex,
//! verified by multiplying generators on every chart.

use serde::{Deserialize, Serialize};

use crate::charts::ChartAtlas;
use crate::error::{Error, Result};
use crate::fan::Triangulation;
use crate::group::{AbelianGroup, Character, Monomial};
use crate::recipe::{Decoration, SurfaceCase};

/// `⊗ lhs = ⊗ rhs` in Pic(Y), written additively over characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub vertex: usize,
    /// 1 = P², 2 = scroll, 3 = blown-up scroll, 4 = dP6.
    pub case: u8,
    pub lhs: Vec<Character>,
    pub rhs: Vec<Character>,
}

/// A chart on which a relation fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub triangle: usize,
    pub lhs: Monomial,
    pub rhs: Monomial,
}

pub fn derive_relations(dec: &Decoration) -> Vec<Relation> {
    dec.vertex_marks
        .iter()
        .map(|vm| {
            let chars: Vec<Character> = vm.through_lines.iter().map(|t| t.character).collect();
            let pairs: Vec<Character> =
                vm.through_lines.iter().filter(|t| t.edges.len() == 2).map(|t| t.character).collect();
            let (case, lhs, rhs) = match vm.case {
                SurfaceCase::P2 => (1, vec![vm.mark()], vec![chars[0], chars[0]]),
                SurfaceCase::Scroll => (2, vec![vm.mark()], pairs),
                SurfaceCase::BlownupScroll => (3, vec![vm.mark()], pairs),
                SurfaceCase::DP6 => (4, vm.marks.clone(), chars),
            };
            Relation { vertex: vm.vertex, case, lhs, rhs }
        })
        .collect()
}

fn product(g: &AbelianGroup, atlas: &ChartAtlas, t: usize, chars: &[Character]) -> Monomial {
    chars.iter().fold(Monomial::ONE, |acc, &c| acc.mul(&atlas.generator(g, t, c)))
}

/// Compares the generator products of both sides on every chart; returns
/// the first chart where they differ.
pub fn verify_relation_chartwise(
    g: &AbelianGroup,
    atlas: &ChartAtlas,
    rel: &Relation,
) -> std::result::Result<(), Witness> {
    for t in 0..atlas.agraphs.len() {
        let lhs = product(g, atlas, t, &rel.lhs);
        let rhs = product(g, atlas, t, &rel.rhs);
        if lhs != rhs {
            return Err(Witness { triangle: t, lhs, rhs });
        }
    }
    Ok(())
}

/// Counts behind the completeness statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completeness {
    pub order: i64,
    pub relations: usize,
    pub interior_vertices: usize,
    pub age_two: usize,
    pub b2: usize,
    pub b4: usize,
}

/// Checks `#relations = I = #age-2 = b₄`, `b₂ = |A| - 1 - b₄` and the
/// character sums of every relation.
pub fn completeness_check(
    g: &AbelianGroup,
    tri: &Triangulation,
    rels: &[Relation],
) -> Result<Completeness> {
    for r in rels {
        if g.sum(r.lhs.iter()) != g.sum(r.rhs.iter()) {
            return Err(Error::Correspondence(format!(
                "relation at {:?} has unequal character sums",
                tri.points[r.vertex]
            )));
        }
    }
    let interior = tri.interior_points().len();
    let age_two = g.elements().iter().filter(|&&e| g.age(e) == 2).count();
    let b4 = interior;
    let b2 = (g.order() as usize) - 1 - b4;
    let c = Completeness { order: g.order(), relations: rels.len(), interior_vertices: interior, age_two, b2, b4 };
    if rels.len() != interior || interior != age_two {
        return Err(Error::Correspondence(format!(
            "{} relations, {interior} interior vertices, {age_two} age-2 elements",
            rels.len()
        )));
    }
    let boundary = tri.points.len() - interior;
    if b2 + 3 != interior + boundary {
        return Err(Error::Correspondence(format!("b2 = {b2} but I + B - 3 = {}", interior + boundary - 3)));
    }
    Ok(c)
}
