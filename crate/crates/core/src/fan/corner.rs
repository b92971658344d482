use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{self, Vec3};

use super::primitive_step;

/// The fan of lines at one corner of Δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerFan {
    pub corner: usize,
    /// Convex-hull chain `P₀, …, P_{m+1}` of `Δ ∖ e_i`, ordered by angle;
    /// `P₀` and `P_{m+1}` lie on the sides of Δ through the corner.
    pub chain: Vec<Vec3>,
    /// Strengths `a₁, …, a_m` of the interior lines `e_i P_j`.
    pub strengths: Vec<i64>,
}

impl CornerFan {
    /// Primitive direction of the `j`-th interior line (1-based like the chain).
    pub fn direction(&self, n: i64, j: usize) -> Vec3 {
        lattice::sub(self.chain[j], corner_point(n, self.corner))
    }
}

pub(crate) fn corner_point(n: i64, i: usize) -> Vec3 {
    let mut e = [0; 3];
    e[i] = n;
    e
}

/// Step 1: for each corner, the lines to the hull of the remaining lattice
/// points together with their Jung-Hirzebruch strengths.
pub fn step1_corner_fans(g: &AbelianGroup) -> Result<Vec<CornerFan>> {
    let n = g.order();
    let mut pts: Vec<Vec3> = (0..3).map(|i| corner_point(n, i)).collect();
    pts.extend(g.junior_points().into_iter().filter(|p| !p.contains(&n)));
    (0..3).map(|i| corner_fan(g, &pts, i)).collect()
}

fn corner_fan(g: &AbelianGroup, pts: &[Vec3], i: usize) -> Result<CornerFan> {
    let n = g.order();
    let e = corner_point(n, i);
    let (side_a, _) = primitive_step(g, e, corner_point(n, (i + 1) % 3))?;
    let (side_b, _) = primitive_step(g, e, corner_point(n, (i + 2) % 3))?;
    let a = lattice::add(e, side_a);
    let b = lattice::add(e, side_b);
    let s = lattice::cross2(side_a, side_b).signum();
    let rel = |p: Vec3| lattice::sub(p, e);

    let mut chain = vec![a];
    let mut cur = a;
    while cur != b {
        let mut best: Option<Vec3> = None;
        for &r in pts {
            if r == e || r == cur || s * lattice::cross2(rel(cur), rel(r)).signum() <= 0 {
                continue;
            }
            best = Some(match best {
                None => r,
                Some(q) => {
                    let side_e = lattice::cross2(lattice::sub(q, cur), lattice::sub(e, cur)).signum();
                    let side_r = lattice::cross2(lattice::sub(q, cur), lattice::sub(r, cur)).signum();
                    let closer = |x: Vec3, y: Vec3| {
                        let dx = lattice::sub(x, cur);
                        let dy = lattice::sub(y, cur);
                        lattice::dot_wide(dx, dx) < lattice::dot_wide(dy, dy)
                    };
                    if (side_r != 0 && side_r == side_e) || (side_r == 0 && closer(r, q)) {
                        r
                    } else {
                        q
                    }
                }
            });
        }
        cur = best.ok_or_else(|| Error::Invariant(format!("corner {}: hull chain broke", i + 1)))?;
        chain.push(cur);
        if chain.len() > pts.len() + 1 {
            return Err(Error::Invariant(format!("corner {}: hull chain does not close", i + 1)));
        }
    }

    let mut strengths = Vec::new();
    for j in 1..chain.len() - 1 {
        let (p, q, r) = (rel(chain[j - 1]), rel(chain[j]), rel(chain[j + 1]));
        if lattice::cross2(p, q).abs() != n as i128 {
            return Err(Error::Invariant(format!("corner {}: non-basic local lattice", i + 1)));
        }
        let sum = lattice::add(p, r);
        let k = (0..3).find(|&c| q[c] != 0).expect("nonzero direction");
        if sum[k] % q[k] != 0 || lattice::scale(q, sum[k] / q[k]) != sum {
            return Err(Error::Invariant(format!("corner {}: strength is not integral", i + 1)));
        }
        let a = sum[k] / q[k];
        if a < 2 {
            return Err(Error::Invariant(format!("corner {}: strength {a} < 2", i + 1)));
        }
        strengths.push(a);
    }
    if chain.len() >= 2 {
        let last = chain.len() - 1;
        if lattice::cross2(rel(chain[last - 1]), rel(chain[last])).abs() != n as i128 {
            return Err(Error::Invariant(format!("corner {}: non-basic local lattice", i + 1)));
        }
    }
    Ok(CornerFan { corner: i, chain, strengths })
}
