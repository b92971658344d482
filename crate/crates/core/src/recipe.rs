//! Reid's recipe: characters on the lines and interior vertices of Σ, and
//! the check that every nontrivial character shows up exactly once.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::charts::ChartAtlas;
use crate::error::{Error, Result};
use crate::fan::{region_pattern, RegionKind, ShapeCase, Triangulation};
use crate::group::{AbelianGroup, Character, Monomial};
use crate::lattice::{self, Vec3};

/// The exceptional surface over an interior vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceCase {
    P2,
    Scroll,
    BlownupScroll,
    #[serde(rename = "dP6")]
    DP6,
}

/// Incident edges at a vertex sharing one character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThroughLine {
    pub character: Character,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMark {
    pub vertex: usize,
    pub valency: usize,
    pub case: SurfaceCase,
    /// One mark, or for dP6 the vertex mark followed by the second character.
    pub marks: Vec<Character>,
    pub through_lines: Vec<ThroughLine>,
}

impl VertexMark {
    /// The character spawning the relation and virtual bundle at this vertex.
    pub fn mark(&self) -> Character {
        self.marks[0]
    }

    /// The second dP6 character, kept in the H² basis.
    pub fn second(&self) -> Option<Character> {
        self.marks.get(1).copied()
    }
}

/// Where a nontrivial character appears on Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacterRole {
    /// Marks a line.
    Line,
    /// Marks a vertex.
    Vertex,
    /// Second character at a dP6 vertex.
    SecondDp6,
}

#[derive(Debug, Clone)]
pub struct Decoration {
    /// Character on every edge (trivial on ∂Δ).
    pub edge_marks: Vec<Character>,
    /// One entry per interior vertex, in point order.
    pub vertex_marks: Vec<VertexMark>,
}

impl Decoration {
    pub fn build(g: &AbelianGroup, tri: &Triangulation, atlas: &ChartAtlas) -> Result<Self> {
        let edge_marks = mark_lines(tri);
        let mut vertex_marks = Vec::new();
        for v in tri.interior_points() {
            vertex_marks.push(mark_vertex(g, tri, atlas, v)?);
        }
        Ok(Decoration { edge_marks, vertex_marks })
    }

    pub fn mark_at(&self, vertex: usize) -> Option<&VertexMark> {
        self.vertex_marks.iter().find(|m| m.vertex == vertex)
    }
}

/// Each edge carries the common weight of its ratio monomials.
pub fn mark_lines(tri: &Triangulation) -> Vec<Character> {
    tri.edges.iter().map(|e| e.character).collect()
}

/// Applies the valency case analysis at an interior vertex.
pub fn mark_vertex(
    g: &AbelianGroup,
    tri: &Triangulation,
    atlas: &ChartAtlas,
    v: usize,
) -> Result<VertexMark> {
    let nbrs = tri.neighbours(v);
    let valency = nbrs.len();
    let edge_to = |w: usize| tri.edge_id(v, w).expect("neighbour edge");
    let mut classes: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
    for &w in &nbrs {
        let e = edge_to(w);
        classes.entry(tri.edges[e].character).or_default().push(e);
    }
    let through_lines: Vec<ThroughLine> = classes
        .iter()
        .map(|(&character, edges)| ThroughLine { character, edges: edges.clone() })
        .collect();
    let pairs: Vec<Character> =
        through_lines.iter().filter(|t| t.edges.len() == 2).map(|t| t.character).collect();
    let mut sizes: Vec<usize> = through_lines.iter().map(|t| t.edges.len()).collect();
    sizes.sort();
    let at = tri.points[v];
    let straight = valency == 6
        && (0..3).all(|i| {
            let a = lattice::sub(tri.points[nbrs[i]], at);
            let b = lattice::sub(tri.points[nbrs[i + 3]], at);
            lattice::cross2(a, b) == 0
        });
    let bad = |why: &str| {
        Error::Invariant(format!(
            "vertex {at:?} (valency {valency}, through-line sizes {sizes:?}): {why}"
        ))
    };
    let (case, marks) = match valency {
        3 if sizes == [3] => {
            let k = through_lines[0].character;
            (SurfaceCase::P2, vec![g.add(k, k)])
        }
        4 if sizes == [2, 2] => (SurfaceCase::Scroll, vec![g.add(pairs[0], pairs[1])]),
        5 if sizes == [1, 2, 2] => (SurfaceCase::BlownupScroll, vec![g.add(pairs[0], pairs[1])]),
        6 if straight => {
            for i in 0..3 {
                if tri.edges[edge_to(nbrs[i])].character != tri.edges[edge_to(nbrs[i + 3])].character {
                    return Err(bad("a straight line changes character"));
                }
            }
            if sizes != [2, 2, 2] {
                return Err(bad("straight lines do not carry three distinct characters"));
            }
            let socle = dp6_socle_marks(g, tri, atlas, v)?;
            let projections = dp6_projection_marks(g, tri, v)?;
            if socle != projections {
                return Err(Error::Correspondence(format!(
                    "dP6 vertex {at:?}: socle marks {:?} differ from projection marks {:?}",
                    socle.iter().map(|c| g.label(*c)).collect::<Vec<_>>(),
                    projections.iter().map(|c| g.label(*c)).collect::<Vec<_>>()
                )));
            }
            let lines_sum = g.sum(pairs.iter());
            if g.add(socle[0], socle[1]) != lines_sum {
                return Err(Error::Correspondence(format!(
                    "dP6 vertex {at:?}: mark sum differs from through-line sum"
                )));
            }
            // the character with the lexicographically smaller exponents on
            // the generators (the smaller index for cyclic groups) stays in H²
            let (small, large) = if g.character_values(socle[0]) < g.character_values(socle[1]) {
                (socle[0], socle[1])
            } else {
                (socle[1], socle[0])
            };
            (SurfaceCase::DP6, vec![large, small])
        }
        6 if sizes == [1, 1, 2, 2] => (SurfaceCase::BlownupScroll, vec![g.add(pairs[0], pairs[1])]),
        3..=6 => return Err(bad("through-lines match no case of the recipe")),
        _ => return Err(bad("valency outside 3..6")),
    };
    Ok(VertexMark { vertex: v, valency, case, marks, through_lines })
}

/// Characters whose generators lie in the socle of every A-graph at `v`.
pub fn socle_characters_at(
    g: &AbelianGroup,
    tri: &Triangulation,
    atlas: &ChartAtlas,
    v: usize,
) -> BTreeSet<Character> {
    let mut common: Option<BTreeSet<Character>> = None;
    for t in tri.triangles_at(v) {
        let here: BTreeSet<Character> =
            atlas.agraphs[t].socle(g).iter().map(|m| g.weight(m)).collect();
        common = Some(match common {
            None => here,
            Some(c) => c.intersection(&here).copied().collect(),
        });
    }
    common.unwrap_or_default()
}

/// dP6 marks as the characters common to the socles of the six charts.
pub fn dp6_socle_marks(
    g: &AbelianGroup,
    tri: &Triangulation,
    atlas: &ChartAtlas,
    v: usize,
) -> Result<Vec<Character>> {
    let common = socle_characters_at(g, tri, atlas, v);
    if common.len() != 2 {
        return Err(Error::Invariant(format!(
            "dP6 vertex {:?}: {} socle characters instead of 2",
            tri.points[v],
            common.len()
        )));
    }
    Ok(common.into_iter().collect())
}

/// dP6 marks from the two projections to P², built from the three line
/// ratios `p : q` (pure power `p`, mixed monomial `q`).
pub fn dp6_projection_marks(g: &AbelianGroup, tri: &Triangulation, v: usize) -> Result<Vec<Character>> {
    let nbrs = tri.neighbours(v);
    let mut sides = Vec::new();
    for &w in nbrs.iter().take(3) {
        let r = tri.edges[tri.edge_id(v, w).expect("edge")].ratio;
        let pure = |m: &Monomial| m.0.iter().filter(|&&e| e > 0).count() == 1;
        match (pure(&r.plus), pure(&r.minus)) {
            (true, false) => sides.push((r.plus, r.minus)),
            (false, true) => sides.push((r.minus, r.plus)),
            _ => {
                return Err(Error::Invariant(format!(
                    "dP6 vertex {:?}: ratio {r} is not pure power : mixed",
                    tri.points[v]
                )))
            }
        }
    }
    let mut out = BTreeSet::new();
    for a in 0..3 {
        for b in 0..3 {
            if a == b {
                continue;
            }
            let (pa, qa) = sides[a];
            let (pb, _) = sides[b];
            let qb = sides[b].1;
            let num = pa.mul(&pb);
            let d = gcd_mono(&gcd_mono(&num, &qa.mul(&pb)), &qa.mul(&qb));
            out.insert(g.reduce(lattice::sub(num.0, d.0)));
        }
    }
    if out.len() != 2 {
        return Err(Error::Invariant(format!(
            "dP6 vertex {:?}: projections give {} characters",
            tri.points[v],
            out.len()
        )));
    }
    Ok(out.into_iter().collect())
}

fn gcd_mono(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial([0, 1, 2].map(|i| a.0[i].min(b.0[i])))
}

/// Cor 4.4 bookkeeping: the role of every nontrivial character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub roles: BTreeMap<Character, CharacterRole>,
}

impl Partition {
    pub fn of_role(&self, role: CharacterRole) -> Vec<Character> {
        self.roles.iter().filter(|(_, &r)| r == role).map(|(&c, _)| c).collect()
    }
}

/// Checks that lines, vertex marks and second dP6 marks partition the
/// nontrivial characters.
pub fn classify_characters(g: &AbelianGroup, tri: &Triangulation, dec: &Decoration) -> Result<Partition> {
    let mut roles: BTreeMap<Character, CharacterRole> = BTreeMap::new();
    let line_chars: BTreeSet<Character> = tri
        .interior_edges()
        .into_iter()
        .map(|e| dec.edge_marks[e])
        .collect();
    for c in line_chars {
        if c.is_trivial() {
            return Err(Error::Correspondence("an interior line carries the trivial character".into()));
        }
        roles.insert(c, CharacterRole::Line);
    }
    let mut place = |c: Character, role: CharacterRole, at: Vec3| -> Result<()> {
        if let Some(prev) = roles.insert(c, role) {
            return Err(Error::Correspondence(format!(
                "character {} at vertex {at:?} already appears as {prev:?}",
                g.label(c)
            )));
        }
        Ok(())
    };
    for m in &dec.vertex_marks {
        let at = tri.points[m.vertex];
        place(m.mark(), CharacterRole::Vertex, at)?;
        if let Some(c) = m.second() {
            place(c, CharacterRole::SecondDp6, at)?;
        }
    }
    if roles.contains_key(&Character::TRIVIAL) {
        return Err(Error::Correspondence("the trivial character marks a vertex".into()));
    }
    if let Some(c) = g.characters().into_iter().find(|c| !c.is_trivial() && !roles.contains_key(c)) {
        return Err(Error::Correspondence(format!("character {} appears nowhere on Σ", g.label(c))));
    }
    Ok(Partition { roles })
}

/// Characters marking the strata of a regular triangle, from the closed-form
/// lists for the two ratio patterns (as a set, including the trivial one).
pub fn corner_region_characters(g: &AbelianGroup, tri: &Triangulation, region: usize) -> Result<BTreeSet<Character>> {
    let reg = &tri.regions[region];
    if !matches!(reg.kind, RegionKind::Corner(_)) || reg.side == 0 {
        return Err(Error::Precondition(format!("region {region} is not a corner triangle")));
    }
    let (case, vars, [_, _, c, d, _, f]) = region_pattern(g, reg)?;
    let r = reg.side;
    let mono = |px: i64, pz: i64| {
        let mut e = [0; 3];
        e[vars[0]] = px;
        e[vars[2]] = pz;
        g.reduce(e)
    };
    let mut out = BTreeSet::new();
    for i in 0..=r {
        for k in 0..=r {
            match case {
                ShapeCase::A => {
                    out.insert(mono(0, f - k));
                    out.insert(mono(d - i, f - k));
                }
                ShapeCase::B if i + k <= r => {
                    out.insert(mono(i, f - k));
                    out.insert(mono(d - i, c + k));
                }
                ShapeCase::B => {}
            }
        }
    }
    Ok(out)
}

/// Characters actually marking the closed region: its interior edges and
/// interior vertices, plus the trivial character.
pub fn region_marked_characters(tri: &Triangulation, dec: &Decoration, region: usize) -> BTreeSet<Character> {
    let tris: Vec<usize> = (0..tri.triangles.len()).filter(|&t| tri.triangles[t].region == region).collect();
    let mut pts = BTreeSet::new();
    let mut out = BTreeSet::new();
    out.insert(Character::TRIVIAL);
    for &t in &tris {
        for e in tri.triangle_edges(t) {
            if !tri.edges[e].is_boundary() {
                out.insert(dec.edge_marks[e]);
            }
        }
        pts.extend(tri.triangles[t].vertices);
    }
    for p in pts {
        if let Some(m) = dec.mark_at(p) {
            out.extend(m.marks.iter().copied());
        }
    }
    out
}

/// Placement of every character on the hexagon tiling of `C[x,y,z]/xyz`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverEmbedding {
    /// Chart whose A-graph supplies the representatives.
    pub chart: usize,
    /// `(character, monomial, hexagon coordinates)` in character order.
    pub cells: Vec<(Character, Monomial, [i64; 2])>,
    /// Basis of the period lattice on the hexagon plane.
    pub periods: [[i64; 2]; 2],
}

/// Places each character at its generator in chart 0 and checks that the
/// result is a connected fundamental domain for the period lattice.
pub fn quiver_embedding(g: &AbelianGroup, atlas: &ChartAtlas) -> Result<QuiverEmbedding> {
    let chart = 0;
    let graph = &atlas.agraphs[chart];
    let hex = |m: Vec3| [m[0] - m[2], m[1] - m[2]];
    let cells: Vec<(Character, Monomial, [i64; 2])> = g
        .characters()
        .into_iter()
        .map(|c| {
            let m = graph.generator(g, c);
            (c, m, hex(m.0))
        })
        .collect();
    // period lattice: image of M_A, which contains (1,1,1)
    let h = g.invariant_basis();
    let mut rows: Vec<[i64; 2]> = h.iter().map(|m| hex(*m)).collect();
    let periods = hermite2(&mut rows)?;
    if periods[0][0] * periods[1][1] != g.order() {
        return Err(Error::Correspondence("period lattice has the wrong index".into()));
    }
    let mut seen = BTreeSet::new();
    for &(c, _, p) in &cells {
        let q1 = p[1].div_euclid(periods[1][1]);
        let red = [p[0] - q1 * periods[1][0], p[1] - q1 * periods[1][1]];
        let red = [red[0].rem_euclid(periods[0][0]), red[1]];
        if !seen.insert(red) {
            return Err(Error::Correspondence(format!(
                "quiver cell of {} repeats modulo the periods",
                g.label(c)
            )));
        }
    }
    let occupied: BTreeSet<[i64; 2]> = cells.iter().map(|c| c.2).collect();
    let mut reached = BTreeSet::new();
    let mut stack = vec![[0i64, 0]];
    if !occupied.contains(&[0, 0]) {
        return Err(Error::Correspondence("quiver domain misses the trivial character".into()));
    }
    while let Some(p) = stack.pop() {
        if !reached.insert(p) {
            continue;
        }
        for d in [[1, 0], [0, 1], [-1, -1], [-1, 0], [0, -1], [1, 1]] {
            let q = [p[0] + d[0], p[1] + d[1]];
            if occupied.contains(&q) && !reached.contains(&q) {
                stack.push(q);
            }
        }
    }
    if reached.len() != cells.len() {
        return Err(Error::Correspondence("quiver domain is not connected".into()));
    }
    Ok(QuiverEmbedding { chart, cells, periods })
}

/// Lower-triangular basis `[[p, 0], [s, q]]` of a rank-2 lattice in Z².
fn hermite2(rows: &mut Vec<[i64; 2]>) -> Result<[[i64; 2]; 2]> {
    // column 1 first
    loop {
        rows.retain(|r| r != &[0, 0]);
        let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][1] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| rows[i][1].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let q = rows[i][1].div_euclid(rows[p][1]);
                rows[i] = [rows[i][0] - q * rows[p][0], rows[i][1] - q * rows[p][1]];
            }
        }
    }
    let pi = (0..rows.len())
        .find(|&i| rows[i][1] != 0)
        .ok_or_else(|| Error::Invariant("period lattice is degenerate".into()))?;
    let mut second = rows[pi];
    if second[1] < 0 {
        second = [-second[0], -second[1]];
    }
    let g0 = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pi)
        .fold(0, |acc, (_, r)| lattice::gcd(acc, r[0]));
    if g0 == 0 {
        return Err(Error::Invariant("period lattice is degenerate".into()));
    }
    Ok([[g0, 0], [second[0].rem_euclid(g0), second[1]]])
}
