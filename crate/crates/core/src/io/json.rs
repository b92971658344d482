//! The versioned JSON document. Field order is fixed by the struct
//! definitions, so serializing the same run twice gives identical bytes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{LineKind, Orientation, Ratio};
use crate::group::{AbelianGroup, Character, Generator, Monomial};
use crate::lattice::Vec3;
use crate::pipeline::{Pipeline, RunReport};
use crate::recipe::{CharacterRole, SurfaceCase};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharJson {
    pub rep: [i64; 3],
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub text: String,
    pub exponents: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioJson {
    pub text: String,
    pub plus: [i64; 3],
    pub minus: [i64; 3],
}

/// A chart coordinate `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCoordJson {
    pub text: String,
    pub num: [i64; 3],
    pub den: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub spec: String,
    pub order: i64,
    pub cyclic: bool,
    pub generators: Vec<Generator>,
    pub invariant_basis: [Vec3; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub id: usize,
    /// Barycentric coordinates scaled by `|A|`.
    pub coords: Vec3,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub kind: LineKind,
    pub start: Vec3,
    pub end: Vec3,
    pub birth_strength: i64,
    pub strength: i64,
    pub ratio: RatioJson,
    pub character: CharJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub ends: [usize; 2],
    pub triangles: Vec<usize>,
    pub ratio: RatioJson,
    pub character: CharJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AGraphEntry {
    pub character: CharJson,
    pub monomial: MonomialJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub id: usize,
    pub vertices: [usize; 3],
    pub orientation: Orientation,
    pub region: usize,
    /// Coordinate `j` is dual to vertex `j`.
    pub chart: Vec<ChartCoordJson>,
    pub agraph: Vec<AGraphEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThroughLineJson {
    pub character: CharJson,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMarkJson {
    pub vertex: usize,
    pub point: Vec3,
    pub valency: usize,
    pub case: SurfaceCase,
    pub marks: Vec<CharJson>,
    pub through_lines: Vec<ThroughLineJson>,
    pub self_intersections: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub trivial: CharJson,
    pub line: Vec<CharJson>,
    pub vertex: Vec<CharJson>,
    pub second_dp6: Vec<CharJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub vertex: usize,
    pub case: u8,
    pub lhs: Vec<CharJson>,
    pub rhs: Vec<CharJson>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualBundleJson {
    pub index: CharJson,
    pub plus: Vec<CharJson>,
    pub minus: Vec<CharJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityJson {
    pub bundles: Vec<CharJson>,
    pub surfaces: Vec<CharJson>,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Json {
    pub characters: Vec<CharJson>,
    /// Edge ids of the compact curves.
    pub curves: Vec<usize>,
    pub degrees: Vec<Vec<i64>>,
    pub elementary_divisors: Vec<i64>,
}

/// Everything a run produced. Sections after a failed stage are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub group: GroupJson,
    pub points: Vec<PointJson>,
    pub lines: Vec<LineJson>,
    pub edges: Vec<EdgeJson>,
    pub triangles: Vec<TriangleJson>,
    pub vertex_marks: Vec<VertexMarkJson>,
    pub character_partition: Option<PartitionJson>,
    pub relations: Vec<RelationJson>,
    pub virtual_bundles: Vec<VirtualBundleJson>,
    pub duality_matrix: Option<DualityJson>,
    pub h2_basis: Option<H2Json>,
    pub report: RunReport,
}

fn ch(g: &AbelianGroup, c: Character) -> CharJson {
    CharJson { rep: c.rep(), label: g.label(c) }
}

fn chs(g: &AbelianGroup, cs: &[Character]) -> Vec<CharJson> {
    cs.iter().map(|&c| ch(g, c)).collect()
}

fn mono(m: &Monomial) -> MonomialJson {
    MonomialJson { text: m.to_string(), exponents: m.exps() }
}

fn ratio(r: &Ratio) -> RatioJson {
    RatioJson { text: r.to_string(), plus: r.plus.exps(), minus: r.minus.exps() }
}

fn product_text(g: &AbelianGroup, cs: &[Character]) -> String {
    cs.iter().map(|&c| format!("R{}", &g.label(c)["χ".len()..])).collect::<Vec<_>>().join(" ⊗ ")
}

impl Document {
    pub fn from_pipeline(p: &Pipeline) -> Document {
        let g = &p.group;
        let group = GroupJson {
            spec: g.spec().to_string(),
            order: g.order(),
            cyclic: g.is_cyclic_spec(),
            generators: g.spec().generators.clone(),
            invariant_basis: g.invariant_basis(),
        };
        let mut doc = Document {
            schema_version: SCHEMA_VERSION,
            group,
            points: Vec::new(),
            lines: Vec::new(),
            edges: Vec::new(),
            triangles: Vec::new(),
            vertex_marks: Vec::new(),
            character_partition: None,
            relations: Vec::new(),
            virtual_bundles: Vec::new(),
            duality_matrix: None,
            h2_basis: None,
            report: p.report.clone(),
        };
        let Some(tri) = &p.triangulation else { return doc };
        doc.points = (0..tri.points.len())
            .map(|id| {
                let kind = if tri.is_corner(id) {
                    "corner"
                } else if tri.is_boundary_point(id) {
                    "boundary"
                } else {
                    "interior"
                };
                PointJson { id, coords: tri.points[id], kind: kind.into() }
            })
            .collect();
        doc.lines = tri
            .lines
            .iter()
            .map(|l| LineJson {
                kind: l.kind,
                start: l.start,
                end: l.end,
                birth_strength: l.birth_strength,
                strength: l.strength,
                ratio: ratio(&l.ratio),
                character: ch(g, l.character),
            })
            .collect();
        doc.edges = tri
            .edges
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeJson {
                id,
                ends: e.ends,
                triangles: e.triangles.clone(),
                ratio: ratio(&e.ratio),
                character: ch(g, e.character),
            })
            .collect();
        if let Some(atlas) = &p.atlas {
            let chars = g.characters();
            doc.triangles = tri
                .triangles
                .iter()
                .enumerate()
                .map(|(id, t)| TriangleJson {
                    id,
                    vertices: t.vertices,
                    orientation: t.orientation,
                    region: t.region,
                    chart: atlas.charts[id]
                        .coords
                        .iter()
                        .map(|(num, den)| ChartCoordJson {
                            text: format!("{num}/{den}"),
                            num: num.exps(),
                            den: den.exps(),
                        })
                        .collect(),
                    agraph: chars
                        .iter()
                        .map(|&c| AGraphEntry { character: ch(g, c), monomial: mono(&atlas.generator(g, id, c)) })
                        .collect(),
                })
                .collect();
        }
        let surfaces = p.cohomology.as_ref().map(|c| &c.surfaces);
        if let Some(dec) = &p.decoration {
            doc.vertex_marks = dec
                .vertex_marks
                .iter()
                .enumerate()
                .map(|(i, vm)| VertexMarkJson {
                    vertex: vm.vertex,
                    point: tri.points[vm.vertex],
                    valency: vm.valency,
                    case: vm.case,
                    marks: chs(g, &vm.marks),
                    through_lines: vm
                        .through_lines
                        .iter()
                        .map(|t| ThroughLineJson { character: ch(g, t.character), edges: t.edges.clone() })
                        .collect(),
                    self_intersections: surfaces.map_or(Vec::new(), |s| s[i].self_intersections.clone()),
                })
                .collect();
        }
        doc.character_partition = p.partition.as_ref().map(|part| PartitionJson {
            trivial: ch(g, Character::TRIVIAL),
            line: chs(g, &part.of_role(CharacterRole::Line)),
            vertex: chs(g, &part.of_role(CharacterRole::Vertex)),
            second_dp6: chs(g, &part.of_role(CharacterRole::SecondDp6)),
        });
        doc.relations = p
            .relations
            .iter()
            .flatten()
            .map(|r| RelationJson {
                vertex: r.vertex,
                case: r.case,
                lhs: chs(g, &r.lhs),
                rhs: chs(g, &r.rhs),
                text: format!("{} = {}", product_text(g, &r.lhs), product_text(g, &r.rhs)),
            })
            .collect();
        if let Some(c) = &p.cohomology {
            doc.virtual_bundles = c
                .bundles
                .iter()
                .map(|v| VirtualBundleJson { index: ch(g, v.index), plus: chs(g, &v.plus), minus: chs(g, &v.minus) })
                .collect();
            doc.duality_matrix = Some(DualityJson {
                bundles: chs(g, &c.duality.bundles),
                surfaces: chs(g, &c.duality.surfaces),
                entries: c.duality.entries.clone(),
            });
            doc.h2_basis = Some(H2Json {
                characters: chs(g, &c.h2.characters),
                curves: c.h2.curves.clone(),
                degrees: c.h2.degrees.clone(),
                elementary_divisors: c.h2.elementary_divisors.clone(),
            });
        }
        doc
    }

    /// Compact JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Input(format!("bad document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Input(format!("unsupported schema version {}", doc.schema_version)));
        }
        Ok(doc)
    }
}
