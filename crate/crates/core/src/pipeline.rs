//! End-to-end run over one group, recording a status for every check.

use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::charts::ChartAtlas;
use crate::cohomology::Cohomology;
use crate::error::{Error, Result};
use crate::fan::Triangulation;
use crate::group::{AbelianGroup, GroupSpec};
use crate::lattice;
use crate::recipe::{classify_characters, quiver_embedding, Decoration, Partition, QuiverEmbedding};
use crate::relations::{completeness_check, derive_relations, verify_relation_chartwise, Completeness, Relation};

/// Every check, in the order the pipeline runs them.
pub const CHECKS: [&str; 11] = [
    "euler",
    "basic",
    "ratios",
    "decoration",
    "partition",
    "quiver",
    "relations",
    "completeness",
    "duality",
    "h2_basis",
    "certificate",
];

/// Which checks a run evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckSet {
    #[default]
    All,
    Fan,
    Recipe,
    Relations,
    Cohomology,
}

impl CheckSet {
    pub fn includes(self, check: &str) -> bool {
        let group = match check {
            "euler" | "basic" | "ratios" => CheckSet::Fan,
            "decoration" | "partition" | "quiver" => CheckSet::Recipe,
            "relations" | "completeness" => CheckSet::Relations,
            "duality" | "h2_basis" => CheckSet::Cohomology,
            _ => CheckSet::All,
        };
        self == CheckSet::All || self == group
    }

    /// Index in [`CHECKS`] after which nothing more needs computing.
    fn last(self) -> usize {
        match self {
            CheckSet::Fan => 2,
            CheckSet::Recipe => 5,
            CheckSet::Relations => 7,
            CheckSet::Cohomology | CheckSet::All => 10,
        }
    }
}

impl FromStr for CheckSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => CheckSet::All,
            "fan" => CheckSet::Fan,
            "recipe" => CheckSet::Recipe,
            "relations" => CheckSet::Relations,
            "cohomology" => CheckSet::Cohomology,
            _ => return Err(Error::Input(format!("unknown check set `{s}`"))),
        })
    }
}

/// A deliberate fault, for negative controls of the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Perturbation {
    #[default]
    None,
    /// Replace one right-hand character of the first relation.
    Relation,
    /// Add one to the first diagonal entry of the duality matrix.
    Duality,
}

impl FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "none" => Perturbation::None,
            "relation" => Perturbation::Relation,
            "duality" => Perturbation::Duality,
            _ => return Err(Error::Input(format!("unknown perturbation `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
}

/// The first failed check with the error that caused it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub order: i64,
    pub b2: usize,
    pub b4: usize,
    pub triangles: usize,
    pub interior_vertices: usize,
}

/// Outcome of a run. Timings live on [`Pipeline`] so that reports are
/// byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub group: String,
    pub counts: Counts,
    pub checks: Vec<CheckRecord>,
    pub first_failure: Option<Failure>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == check).map(|c| c.status)
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::Resource(_) => "resource",
        Error::Precondition(_) => "precondition",
        Error::Invariant(_) => "invariant",
        Error::Algorithm(_) => "algorithm",
        Error::Correspondence(_) => "correspondence",
    }
}

/// Every artifact computed for one group. Stages after a failure are `None`.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub group: AbelianGroup,
    pub triangulation: Option<Triangulation>,
    pub atlas: Option<ChartAtlas>,
    pub decoration: Option<Decoration>,
    pub partition: Option<Partition>,
    pub quiver: Option<QuiverEmbedding>,
    pub relations: Option<Vec<Relation>>,
    pub completeness: Option<Completeness>,
    pub cohomology: Option<Cohomology>,
    pub report: RunReport,
    /// Wall time of each stage that ran.
    pub timings: Vec<(String, Duration)>,
}

struct Runner {
    checks: CheckSet,
    records: Vec<CheckRecord>,
    failure: Option<Failure>,
    timings: Vec<(String, Duration)>,
}

impl Runner {
    /// Runs the named stage unless an earlier one failed or it lies past the
    /// selected checks. Stages always run when later selected ones need them.
    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Option<T> {
        let idx = CHECKS.iter().position(|&c| c == name).expect("known check");
        if self.failure.is_some() || idx > self.checks.last() {
            self.records.push(CheckRecord { name: name.into(), status: Status::Skipped });
            return None;
        }
        let start = Instant::now();
        let out = f();
        self.timings.push((name.into(), start.elapsed()));
        let selected = self.checks.includes(name);
        let status = match &out {
            Ok(_) if selected => Status::Pass,
            Ok(_) => Status::Skipped,
            Err(e) => {
                self.failure = Some(Failure { check: name.into(), kind: kind(e).into(), message: e.to_string() });
                Status::Fail
            }
        };
        self.records.push(CheckRecord { name: name.into(), status });
        out.ok()
    }
}

impl Pipeline {
    /// Builds the group, then runs the stages in order. Only problems with
    /// the request itself are returned as errors; failed checks are recorded
    /// in the report.
    pub fn run(spec: &GroupSpec, max_order: u64, checks: CheckSet) -> Result<Pipeline> {
        Self::run_perturbed(spec, max_order, checks, Perturbation::None)
    }

    /// [`Pipeline::run`] with a fault injected after the given stage.
    pub fn run_perturbed(
        spec: &GroupSpec,
        max_order: u64,
        checks: CheckSet,
        perturb: Perturbation,
    ) -> Result<Pipeline> {
        let g = AbelianGroup::with_max_order(spec, max_order)?;
        let n = g.order();
        let mut r = Runner { checks, records: Vec::new(), failure: None, timings: Vec::new() };

        let tri = r.stage("euler", || {
            let tri = Triangulation::build(&g)?;
            let interior = tri.interior_points().len() as i64;
            let boundary = tri.points.len() as i64 - interior;
            if tri.triangles.len() as i64 != n || 2 * interior + boundary - 2 != n {
                return Err(Error::Invariant(format!(
                    "{} triangles, I = {interior}, B = {boundary} for |A| = {n}",
                    tri.triangles.len()
                )));
            }
            Ok(tri)
        });
        let tri = tri.as_ref();
        r.stage("basic", || {
            let tri = tri.expect("euler passed");
            for (i, t) in tri.triangles.iter().enumerate() {
                let [a, b, c] = t.vertices.map(|v| tri.points[v]);
                if lattice::det3(a, b, c) != (n as i128).pow(2) {
                    return Err(Error::Invariant(format!("triangle {i} is not basic and positively oriented")));
                }
            }
            Ok(())
        });
        r.stage("ratios", || {
            let tri = tri.expect("euler passed");
            for e in &tri.edges {
                let m = e.ratio.exponents();
                let on_line = e.ends.iter().all(|&p| lattice::dot(m, tri.points[p]) == 0);
                if !on_line || !g.is_invariant(m) || g.weight(&e.ratio.plus) != e.character {
                    return Err(Error::Invariant(format!("bad ratio {} on edge {:?}", e.ratio, e.ends)));
                }
            }
            Ok(())
        });
        let atlas_dec = r.stage("decoration", || {
            let tri = tri.expect("fan built");
            let atlas = ChartAtlas::build(&g, tri)?;
            let dec = Decoration::build(&g, tri, &atlas)?;
            for e in tri.interior_edges() {
                let d = atlas.degree_on_curve(&g, tri, dec.edge_marks[e], e)?;
                if d != 1 {
                    return Err(Error::Invariant(format!(
                        "mark {} has degree {d} on its curve {:?}",
                        g.label(dec.edge_marks[e]),
                        tri.edges[e].ends
                    )));
                }
            }
            Ok((atlas, dec))
        });
        let (atlas, decoration) = atlas_dec.unzip();
        let partition = r.stage("partition", || {
            classify_characters(&g, tri.expect("fan built"), decoration.as_ref().expect("decorated"))
        });
        let quiver = r.stage("quiver", || {
            let q = quiver_embedding(&g, atlas.as_ref().expect("charts built"))?;
            if q.cells.len() as i64 != n {
                return Err(Error::Invariant(format!("{} hexagons for |A| = {n}", q.cells.len())));
            }
            Ok(q)
        });
        let relations = r.stage("relations", || {
            let mut rels = derive_relations(decoration.as_ref().expect("decorated"));
            if let (Perturbation::Relation, Some(r)) = (perturb, rels.first_mut()) {
                let shift = g.characters().into_iter().find(|c| !c.is_trivial()).expect("nontrivial group");
                r.rhs[0] = g.add(r.rhs[0], shift);
            }
            for rel in &rels {
                verify_relation_chartwise(&g, atlas.as_ref().expect("charts built"), rel).map_err(|w| {
                    Error::Correspondence(format!(
                        "relation at vertex {} fails on chart {}: {} vs {}",
                        rel.vertex, w.triangle, w.lhs, w.rhs
                    ))
                })?;
            }
            Ok(rels)
        });
        let completeness = r.stage("completeness", || {
            completeness_check(&g, tri.expect("fan built"), relations.as_ref().expect("relations derived"))
        });
        let cohomology = r.stage("duality", || {
            let mut c = Cohomology::build(
                &g,
                tri.expect("fan built"),
                atlas.as_ref().expect("charts built"),
                &decoration.as_ref().expect("decorated").vertex_marks,
                partition.as_ref().expect("partitioned"),
                relations.as_ref().expect("relations derived"),
            )?;
            if let (Perturbation::Duality, Some(row)) = (perturb, c.duality.entries.first_mut()) {
                row[0] += 1;
            }
            c.duality.check(&g)?;
            Ok(c)
        });
        r.stage("h2_basis", || {
            let c = cohomology.as_ref().expect("cohomology built");
            c.h2.check(n as usize - 1 - c.counts.h4)
        });
        r.stage("certificate", || cohomology.as_ref().expect("cohomology built").certify(&g));

        let counts = Counts {
            order: n,
            b2: tri.map_or(0, |t| n as usize - 1 - t.interior_points().len()),
            b4: tri.map_or(0, |t| t.interior_points().len()),
            triangles: tri.map_or(0, |t| t.triangles.len()),
            interior_vertices: tri.map_or(0, |t| t.interior_points().len()),
        };
        let report = RunReport {
            group: g.spec().to_string(),
            counts,
            checks: r.records,
            first_failure: r.failure,
        };
        let triangulation = tri.cloned();
        Ok(Pipeline {
            group: g,
            triangulation,
            atlas,
            decoration,
            partition,
            quiver,
            relations,
            completeness,
            cohomology,
            report,
            timings: r.timings,
        })
    }
}
