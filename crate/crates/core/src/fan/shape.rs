use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{self, Vec3};

use super::line_exponents;
use super::regions::RegularTriangle;

/// Which of the two side-ratio patterns a regular triangle follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeCase {
    /// Sides `(d,-b,0), (-a,e,0), (0,-c,f)` with `d-a = e-b-c = f = r`.
    A,
    /// Sides `(d,-b,0), (0,e,-c), (-a,0,f)` with `d-a = e-b = f-c = r`.
    B,
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Verifies the side-ratio identities of a regular triangle of side `r` and
/// that the `r - 1` tesselating lines parallel to each side carry the ratios
/// `s - i(1,1,1)`.
pub fn check_region_shape(g: &AbelianGroup, reg: &RegularTriangle) -> Result<ShapeCase> {
    region_pattern(g, reg).map(|(case, _, _)| case)
}

/// Like [`check_region_shape`], also returning the variable order `(x, y, z)`
/// and exponents `[a, b, c, d, e, f]` of the matched pattern.
pub fn region_pattern(g: &AbelianGroup, reg: &RegularTriangle) -> Result<(ShapeCase, [usize; 3], [i64; 6])> {
    let r = reg.side;
    let n = g.order();
    let v = reg.vertices;
    let mut sides = [[0i64; 3]; 3];
    for a in 0..3 {
        let (p, q, opp) = (v[a], v[(a + 1) % 3], v[(a + 2) % 3]);
        let mut s = line_exponents(g, p, q)?;
        if lattice::dot(s, opp) < 0 {
            s = lattice::scale(s, -1);
        }
        if lattice::dot(s, opp) != r * n {
            return Err(Error::Invariant(format!(
                "side ratio {s:?} of region {v:?} has height {} not {r}",
                lattice::dot(s, opp) / n
            )));
        }
        for lvl in 1..r {
            let dp = lattice::sub(opp, p).map(|c| c / r);
            let dq = lattice::sub(opp, q).map(|c| c / r);
            let a_pt = lattice::add(p, lattice::scale(dp, lvl));
            let b_pt = lattice::add(q, lattice::scale(dq, lvl));
            let got = line_exponents(g, a_pt, b_pt)?;
            let want = lattice::sub(s, [lvl; 3]);
            if got != want && got != lattice::scale(want, -1) {
                return Err(Error::Invariant(format!(
                    "tesselating line at level {lvl} of region {v:?} has ratio {got:?}, expected {want:?}"
                )));
            }
        }
        sides[a] = s;
    }
    classify(&sides, r).ok_or_else(|| {
        Error::Invariant(format!("region {v:?} sides {sides:?} match neither ratio pattern"))
    })
}

/// Variable order and exponents `[a, b, c, d, e, f]` of the first matching pattern.
pub(crate) fn classify(sides: &[Vec3; 3], r: i64) -> Option<(ShapeCase, [usize; 3], [i64; 6])> {
    for vars in PERMS {
        for roles in PERMS {
            for signs in 0..8 {
                let s: Vec<Vec3> = (0..3)
                    .map(|k| {
                        let raw = sides[roles[k]];
                        let sg = if signs >> k & 1 == 1 { -1 } else { 1 };
                        [0, 1, 2].map(|c| sg * raw[vars[c]])
                    })
                    .collect();
                if let Some(p) = case_a(&s, r) {
                    return Some((ShapeCase::A, vars, p));
                }
                if let Some(p) = case_b(&s, r) {
                    return Some((ShapeCase::B, vars, p));
                }
            }
        }
    }
    None
}

fn case_a(s: &[Vec3], r: i64) -> Option<[i64; 6]> {
    let (d, b) = (s[0][0], -s[0][1]);
    let (a, e) = (-s[1][0], s[1][1]);
    let (c, f) = (-s[2][1], s[2][2]);
    let p = [a, b, c, d, e, f];
    (s[0][2] == 0
        && s[1][2] == 0
        && s[2][0] == 0
        && p.iter().all(|&x| x >= 0)
        && d - a == r
        && e - b - c == r
        && f == r)
        .then_some(p)
}

fn case_b(s: &[Vec3], r: i64) -> Option<[i64; 6]> {
    let (d, b) = (s[0][0], -s[0][1]);
    let (e, c) = (s[1][1], -s[1][2]);
    let (a, f) = (-s[2][0], s[2][2]);
    let p = [a, b, c, d, e, f];
    (s[0][2] == 0
        && s[1][0] == 0
        && s[2][1] == 0
        && p.iter().all(|&x| x >= 0)
        && d - a == r
        && e - b == r
        && f - c == r)
        .then_some(p)
}
