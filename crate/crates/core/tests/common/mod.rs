//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles recompute facts by brute force or by a different route
//! than the library, so that agreement means something.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ahilb::fan::{knockout_monomial_rule, LineKind, Outcome};
use ahilb::group::DEFAULT_MAX_ORDER;
use ahilb::io::parse_group;
use ahilb::lattice;
use ahilb::pipeline::{CheckSet, Pipeline};
use ahilb::recipe::{dp6_projection_marks, dp6_socle_marks, CharacterRole, SurfaceCase};
use ahilb::relations::verify_relation_chartwise;
use ahilb::{AbelianGroup, Character, GroupSpec, Monomial};

pub fn spec(text: &str) -> GroupSpec {
    parse_group(text).unwrap()
}

/// Runs every check and panics with the failure record if one fails.
pub fn full(spec: &GroupSpec) -> Pipeline {
    let p = Pipeline::run(spec, DEFAULT_MAX_ORDER, CheckSet::All).unwrap();
    assert!(p.report.passed(), "{spec}: {:?}", p.report.first_failure);
    p
}

/// Every cyclic `1/r(a,b,c)` with `r <= max`, one per normalized spec.
pub fn all_cyclic_up_to(max: u64) -> Vec<GroupSpec> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in 1..=max {
        for a in 0..r {
            for b in 0..r {
                let s = GroupSpec::cyclic(r, [a, b, (2 * r - a - b) % r]);
                let key = AbelianGroup::new(&s).unwrap().spec().to_string();
                if seen.insert(key) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Products of two cyclic groups with `|A| <= 400`.
pub fn non_cyclic_samples() -> Vec<GroupSpec> {
    [
        "1/2(1,1,0);1/2(0,1,1)",
        "1/3(1,2,0);1/3(0,1,2)",
        "1/4(1,3,0);1/4(0,1,3)",
        "1/5(1,4,0);1/5(0,1,4)",
        "1/6(1,5,0);1/6(0,1,5)",
        "1/2(1,1,0);1/4(1,1,2)",
        "1/3(1,2,0);1/9(1,2,6)",
        "1/2(1,1,0);1/6(1,2,3)",
        "1/10(1,9,0);1/10(0,1,9)",
        "1/4(1,3,0);1/8(1,2,5)",
        "1/3(0,1,2);1/7(1,2,4)",
        "1/20(1,19,0);1/20(0,1,19)",
    ]
    .iter()
    .map(|s| spec(s))
    .collect()
}

/// Group elements by closing the generators under addition, scaled by `n`.
pub fn oracle_elements(spec: &GroupSpec) -> BTreeSet<[i64; 3]> {
    let gens: Vec<(i64, [i64; 3])> =
        spec.generators.iter().map(|g| (g.order as i64, g.weights.map(|w| w as i64))).collect();
    let mut set = BTreeSet::from([[0i64; 3]]);
    // elements as fractions with common denominator L = lcm of orders
    let l = gens.iter().fold(1, |acc, &(r, _)| lattice::lcm(acc, r));
    loop {
        let mut next = set.clone();
        for e in &set {
            for &(r, w) in &gens {
                next.insert([0, 1, 2].map(|i| (e[i] + w[i] * (l / r)).rem_euclid(l)));
            }
        }
        if next.len() == set.len() {
            break;
        }
        set = next;
    }
    let n = set.len() as i64;
    set.into_iter().map(|e| e.map(|x| x * n / l)).collect()
}

/// Gcd of all maximal minors of a full-row-rank matrix; small sizes only.
pub fn oracle_minor_gcd(rows: &[Vec<i64>]) -> i128 {
    let k = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    let mut g: i128 = 0;
    let mut cols: Vec<usize> = (0..k).collect();
    if k == 0 {
        return 1;
    }
    loop {
        let sub: Vec<Vec<i128>> = rows.iter().map(|r| cols.iter().map(|&c| r[c] as i128).collect()).collect();
        g = gcd128(g, bareiss_det(sub));
        if g == 1 {
            return 1;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] < m - k + i {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn fail(spec: &str, what: impl std::fmt::Display) -> String {
    format!("{spec}: {what}")
}

/// Every property of the suite, recomputed independently of the pipeline's
/// own checks wherever that is feasible.
pub fn check_properties(p: &Pipeline) -> Result<(), String> {
    let g = &p.group;
    let s = g.spec().to_string();
    let n = g.order();
    let tri = p.triangulation.as_ref().ok_or_else(|| fail(&s, "no triangulation"))?;
    let atlas = p.atlas.as_ref().ok_or_else(|| fail(&s, "no charts"))?;
    let dec = p.decoration.as_ref().ok_or_else(|| fail(&s, "no decoration"))?;
    let part = p.partition.as_ref().ok_or_else(|| fail(&s, "no partition"))?;
    let rels = p.relations.as_ref().ok_or_else(|| fail(&s, "no relations"))?;
    let coh = p.cohomology.as_ref().ok_or_else(|| fail(&s, "no cohomology"))?;

    // group order and ages from a brute-force closure
    let elements = oracle_elements(g.spec());
    if elements.len() as i64 != n {
        return Err(fail(&s, format!("closure has {} elements, library says {n}", elements.len())));
    }
    let age = |e: &[i64; 3]| (e[0] + e[1] + e[2]) / n;
    let age1 = elements.iter().filter(|e| age(e) == 1).count();
    let age2 = elements.iter().filter(|e| age(e) == 2).count();
    if 1 + age1 + age2 != n as usize {
        return Err(fail(&s, "ages do not add up to |A|"));
    }
    if tri.points.len() != age1 + 3 {
        return Err(fail(&s, format!("{} points but {age1} junior elements", tri.points.len())));
    }

    // basic triangles, Euler number and the counting identity
    for t in &tri.triangles {
        let [a, b, c] = t.vertices.map(|v| tri.points[v]);
        if lattice::det3(a, b, c) != (n as i128).pow(2) {
            return Err(fail(&s, format!("triangle {:?} is not basic", t.vertices)));
        }
    }
    let interior = tri.interior_points().len();
    let boundary = tri.points.len() - interior;
    if tri.triangles.len() as i64 != n || (2 * interior + boundary) as i64 - 2 != n {
        return Err(fail(&s, "Euler count"));
    }

    // strength rule against the monomial rule on every battle
    for b in &tri.battles {
        let corner = |l: usize| match tri.lines[l].kind {
            LineKind::Corner(c) => c,
            _ => unreachable!("only corner lines fight"),
        };
        let max = *b.strengths.iter().max().unwrap();
        let strongest: Vec<usize> = (0..b.lines.len()).filter(|&i| b.strengths[i] == max).collect();
        let by_strength = if strongest.len() == 1 { Some(b.lines[strongest[0]]) } else { None };
        if by_strength != b.winner {
            return Err(fail(&s, format!("battle at {:?}: strengths disagree with the winner", b.point)));
        }
        for i in 0..b.lines.len() {
            for j in i + 1..b.lines.len() {
                let (li, lj) = (b.lines[i], b.lines[j]);
                let rule = knockout_monomial_rule(
                    (corner(li), &tri.lines[li].ratio),
                    (corner(lj), &tri.lines[lj].ratio),
                )
                .map_err(|e| fail(&s, e))?;
                let by_strength = match b.strengths[i].cmp(&b.strengths[j]) {
                    std::cmp::Ordering::Greater => Outcome::First,
                    std::cmp::Ordering::Less => Outcome::Second,
                    std::cmp::Ordering::Equal => Outcome::BothDie,
                };
                if rule != by_strength {
                    return Err(fail(&s, format!("battle at {:?}: monomial rule {rule:?}", b.point)));
                }
            }
        }
    }

    // ratio weights
    for l in &tri.lines {
        if g.weight(&l.ratio.plus) != g.weight(&l.ratio.minus) {
            return Err(fail(&s, format!("line {} is not a ratio of equal weights", l.ratio)));
        }
    }

    // A-graphs: one monomial per character, closed under division
    for graph in &atlas.agraphs {
        let weights: BTreeSet<Character> = graph.generators.iter().map(|m| g.weight(m)).collect();
        if weights.len() as i64 != n || graph.generators.len() as i64 != n {
            return Err(fail(&s, format!("A-graph {} is not a bijection", graph.triangle)));
        }
        let members: BTreeSet<Monomial> = graph.generators.iter().copied().collect();
        for m in &members {
            for i in 0..3 {
                if m.0[i] > 0 {
                    let mut d = m.0;
                    d[i] -= 1;
                    if !members.contains(&Monomial(d)) {
                        return Err(fail(&s, format!("A-graph {} not downward closed at {m}", graph.triangle)));
                    }
                }
            }
        }
    }

    // support functions: on each triangle the generator pairs minimally
    // with the vertices, compared with the neighbour's generator
    for e in tri.interior_edges() {
        let [t, t2] = [tri.edges[e].triangles[0], tri.edges[e].triangles[1]];
        for (here, there) in [(t, t2), (t2, t)] {
            for c in g.characters() {
                let (rh, rt) = (atlas.generator(g, here, c), atlas.generator(g, there, c));
                for &v in &tri.triangles[here].vertices {
                    if lattice::dot(rh.0, tri.points[v]) > lattice::dot(rt.0, tri.points[v]) {
                        return Err(fail(&s, format!("support function of {} not convex at edge {e}", g.label(c))));
                    }
                }
            }
        }
    }

    // partition: lines, vertex marks and second dP6 marks cover each
    // nontrivial character once
    let line_chars: BTreeSet<Character> =
        tri.interior_edges().iter().map(|&e| dec.edge_marks[e]).collect();
    let mut seen: Vec<Character> = line_chars.iter().copied().collect();
    for vm in &dec.vertex_marks {
        seen.extend(&vm.marks);
    }
    seen.sort();
    let nontrivial: Vec<Character> = g.characters().into_iter().filter(|c| !c.is_trivial()).collect();
    if seen != nontrivial {
        return Err(fail(&s, "characters are not partitioned"));
    }
    let roles = [CharacterRole::Line, CharacterRole::Vertex, CharacterRole::SecondDp6];
    if roles.iter().map(|&r| part.of_role(r).len()).sum::<usize>() != nontrivial.len() {
        return Err(fail(&s, "partition sizes"));
    }

    // local shape of the marking at each vertex
    for vm in &dec.vertex_marks {
        let mut counts: BTreeMap<Character, usize> = BTreeMap::new();
        for e in tri.edges_at(vm.vertex) {
            *counts.entry(dec.edge_marks[e]).or_default() += 1;
        }
        let repeated = counts.values().filter(|&&k| k >= 2).count();
        let ok = match (vm.valency, vm.case) {
            (3, _) => counts.len() == 1,
            (_, SurfaceCase::DP6) => {
                let lines: Vec<Character> = vm.through_lines.iter().map(|t| t.character).collect();
                g.sum(vm.marks.iter()) == g.sum(lines.iter())
                    && dp6_socle_marks(g, tri, atlas, vm.vertex).map(BTreeSet::from_iter)
                        == dp6_projection_marks(g, tri, vm.vertex).map(BTreeSet::from_iter)
            }
            (5, _) => repeated == 2 && counts.len() == 3,
            _ => repeated == 2,
        };
        if !ok {
            return Err(fail(&s, format!("marking at vertex {:?}", tri.points[vm.vertex])));
        }
    }

    // relations, their number and degree one on every marked curve
    for r in rels {
        verify_relation_chartwise(g, atlas, r).map_err(|w| fail(&s, format!("relation fails: {w:?}")))?;
    }
    if rels.len() != age2 {
        return Err(fail(&s, "relation count differs from the age-2 count"));
    }
    for e in tri.interior_edges() {
        if atlas.degree_on_curve(g, tri, dec.edge_marks[e], e) != Ok(1) {
            return Err(fail(&s, format!("mark has degree other than one on edge {e}")));
        }
    }

    // duality and H²
    for (m, row) in coh.duality.entries.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            if x != (m == k) as i64 {
                return Err(fail(&s, format!("duality entry ({m}, {k}) = {x}")));
            }
        }
    }
    let b2 = n as usize - 1 - interior;
    if coh.h2.elementary_divisors.len() != b2 || coh.h2.elementary_divisors.iter().any(|&d| d != 1) {
        return Err(fail(&s, "H2 Smith form"));
    }
    if b2 <= 4 && coh.h2.curves.len() <= 14 && oracle_minor_gcd(&coh.h2.degrees) != 1 {
        return Err(fail(&s, "maximal minors of the H2 degree matrix are not coprime"));
    }
    Ok(())
}
