use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{self, Vec3};

use super::corner::{corner_point, CornerFan};
use super::regions::{self, RegionKind, RegularTriangle};
use super::{line_exponents, FanLine, LineKind, Ratio};

/// A lattice point where two or three living lines from different corners meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Battle {
    pub point: Vec3,
    /// Indices into [`Knockout::lines`].
    pub lines: Vec<usize>,
    /// Strength of each participant on arrival.
    pub strengths: Vec<i64>,
    pub winner: Option<usize>,
}

/// Result of Step 2.
#[derive(Debug, Clone)]
pub struct Knockout {
    /// Interior corner lines, drawn from the corner to the point where they die
    /// or reach the opposite side.
    pub lines: Vec<FanLine>,
    pub battles: Vec<Battle>,
    pub regions: Vec<RegularTriangle>,
}

/// Outcome of a two-line battle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    First,
    Second,
    BothDie,
}

/// The local rule: lines from corners `e_i` and `e_k` share the third
/// variable, and the line with the strictly smaller exponent of it extends.
pub fn knockout_monomial_rule(
    first: (usize, &Ratio),
    second: (usize, &Ratio),
) -> Result<Outcome> {
    let (ci, ri) = first;
    let (ck, rk) = second;
    if ci == ck || ci > 2 || ck > 2 {
        return Err(Error::Precondition("battling lines must come from different corners".into()));
    }
    let j = 3 - ci - ck;
    let (a, b) = (ri.exponents()[j].abs(), rk.exponents()[j].abs());
    if a == 0 || b == 0 {
        return Err(Error::Precondition(format!(
            "ratios {ri} and {rk} share no monomial variable"
        )));
    }
    Ok(match a.cmp(&b) {
        Ordering::Less => Outcome::First,
        Ordering::Greater => Outcome::Second,
        Ordering::Equal => Outcome::BothDie,
    })
}

/// Exact rational `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        if den < 0 {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    fn lt(self, o: Frac) -> bool {
        self.num * o.den < o.num * self.den
    }

    fn integer(self) -> Option<i64> {
        (self.num % self.den == 0).then(|| (self.num / self.den) as i64)
    }
}

struct Ray {
    corner: usize,
    origin: Vec3,
    dir: Vec3,
    t_max: Frac,
    ratio: Ratio,
    birth: i64,
}

struct Meeting {
    point: Vec3,
    /// (line, parameter) pairs.
    at: Vec<(usize, i64)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Open,
    Done,
}

/// Step 2: run the knock-out tournament and cut Δ into regular triangles.
pub fn step2_knockout(g: &AbelianGroup, fans: &[CornerFan]) -> Result<Knockout> {
    let n = g.order();
    let mut rays = Vec::new();
    for fan in fans {
        let e = corner_point(n, fan.corner);
        for j in 1..fan.chain.len() - 1 {
            let dir = fan.direction(n, j);
            let t_max = Frac::new(n as i128, -(dir[fan.corner] as i128));
            let ratio = Ratio::from_exponents(line_exponents(g, e, fan.chain[j])?);
            rays.push(Ray { corner: fan.corner, origin: e, dir, t_max, ratio, birth: fan.strengths[j - 1] });
        }
    }

    // all pairwise crossings inside Δ
    let mut meet_map: BTreeMap<Vec3, Vec<(usize, i64)>> = BTreeMap::new();
    let mut off_lattice: Vec<(usize, Frac, usize, Frac)> = Vec::new();
    for a in 0..rays.len() {
        for b in a + 1..rays.len() {
            let (ra, rb) = (&rays[a], &rays[b]);
            if ra.corner == rb.corner {
                continue;
            }
            let det = -lattice::cross2(ra.dir, rb.dir);
            if det == 0 {
                continue;
            }
            let w = lattice::sub(rb.origin, ra.origin);
            let t = Frac::new(lattice::cross2(w, lattice::scale(rb.dir, -1)), det);
            let s = Frac::new(lattice::cross2(ra.dir, w), det);
            let zero = Frac::new(0, 1);
            if !(zero.lt(t) && zero.lt(s)) || ra.t_max.lt(t) || rb.t_max.lt(s) {
                continue;
            }
            match (t.integer(), s.integer()) {
                (Some(ti), Some(si)) => {
                    let p = lattice::add(ra.origin, lattice::scale(ra.dir, ti));
                    let entry = meet_map.entry(p).or_default();
                    for (l, par) in [(a, ti), (b, si)] {
                        if !entry.iter().any(|&(x, _)| x == l) {
                            entry.push((l, par));
                        }
                    }
                }
                _ => off_lattice.push((a, t, b, s)),
            }
        }
    }
    let meetings: Vec<Meeting> =
        meet_map.into_iter().map(|(point, at)| Meeting { point, at }).collect();
    // meetings along each line, by parameter
    let mut on_line: Vec<Vec<(i64, usize)>> = vec![Vec::new(); rays.len()];
    for (m, mt) in meetings.iter().enumerate() {
        for &(l, t) in &mt.at {
            on_line[l].push((t, m));
        }
    }
    for v in &mut on_line {
        v.sort();
    }

    // after[l][k]: line l is still alive just past its k-th meeting. A line
    // survives a meeting iff it strictly beats every rival alive there, so
    // only rivals it fails to beat need to be resolved first.
    let pos = |l: usize, m: usize| on_line[l].iter().position(|&(_, x)| x == m).unwrap();
    let mut beats: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for mt in &meetings {
        for &(l, _) in &mt.at {
            for &(o, _) in &mt.at {
                if o != l {
                    let out = knockout_monomial_rule(
                        (rays[l].corner, &rays[l].ratio),
                        (rays[o].corner, &rays[o].ratio),
                    )?;
                    beats.insert((l, o), out == Outcome::First);
                }
            }
        }
    }
    let mut after: Vec<Vec<Option<bool>>> = on_line.iter().map(|v| vec![None; v.len()]).collect();
    let mut state: Vec<Vec<State>> = on_line.iter().map(|v| vec![State::Fresh; v.len()]).collect();
    let before = |after: &Vec<Vec<Option<bool>>>, l: usize, k: usize| -> Option<bool> {
        if k == 0 {
            Some(true)
        } else {
            after[l][k - 1]
        }
    };
    for l0 in 0..rays.len() {
        for k0 in 0..on_line[l0].len() {
            if after[l0][k0].is_some() {
                continue;
            }
            let mut stack = vec![(l0, k0)];
            state[l0][k0] = State::Open;
            while let Some(&(l, k)) = stack.last() {
                let m = on_line[l][k].1;
                let mut value = None;
                let mut pending = Vec::new();
                match before(&after, l, k) {
                    Some(false) => value = Some(false),
                    None => pending.push((l, k - 1)),
                    Some(true) => {
                        for &(o, _) in &meetings[m].at {
                            if o == l || beats[&(l, o)] {
                                continue;
                            }
                            let ko = pos(o, m);
                            match before(&after, o, ko) {
                                Some(true) => {
                                    value = Some(false);
                                    break;
                                }
                                Some(false) => {}
                                None => pending.push((o, ko - 1)),
                            }
                        }
                        if value.is_none() && pending.is_empty() {
                            value = Some(true);
                        }
                    }
                }
                if let Some(v) = value {
                    after[l][k] = Some(v);
                    state[l][k] = State::Done;
                    stack.pop();
                    continue;
                }
                match pending.iter().find(|&&(a, b)| state[a][b] == State::Fresh) {
                    Some(&(a, b)) => {
                        state[a][b] = State::Open;
                        stack.push((a, b));
                    }
                    None => {
                        return Err(Error::Algorithm(format!(
                            "cyclic dependency between battles at {:?}",
                            meetings[m].point
                        )));
                    }
                }
            }
        }
    }
    let mut participants: Vec<Vec<usize>> = vec![Vec::new(); meetings.len()];
    let mut survivors: Vec<Vec<usize>> = vec![Vec::new(); meetings.len()];
    for l in 0..rays.len() {
        for (k, &(_, m)) in on_line[l].iter().enumerate() {
            if before(&after, l, k) == Some(true) {
                participants[m].push(l);
                if after[l][k] == Some(true) {
                    survivors[m].push(l);
                }
            }
        }
    }
    if let Some(m) = (0..meetings.len()).find(|&m| participants[m].len() >= 2 && survivors[m].len() > 1) {
        return Err(Error::Algorithm(format!("two lines survive the battle at {:?}", meetings[m].point)));
    }

    // strength bookkeeping and battle records, in order along each line
    let defeated_before = |l: usize, t: i64| -> i64 {
        on_line[l]
            .iter()
            .filter(|&&(t2, m2)| t2 < t && participants[m2].len() >= 2 && survivors[m2] == [l])
            .map(|&(_, m2)| participants[m2].len() as i64 - 1)
            .sum()
    };
    let mut battles = Vec::new();
    for (m, mt) in meetings.iter().enumerate() {
        if participants[m].len() < 2 {
            continue;
        }
        let lines = participants[m].clone();
        let strengths: Vec<i64> = lines
            .iter()
            .map(|&l| {
                let t = mt.at.iter().find(|&&(x, _)| x == l).unwrap().1;
                rays[l].birth - defeated_before(l, t)
            })
            .collect();
        let top = *strengths.iter().max().unwrap();
        let by_strength: Vec<usize> =
            lines.iter().zip(&strengths).filter(|&(_, &s)| s == top).map(|(&l, _)| l).collect();
        let strength_winner = (by_strength.len() == 1).then(|| by_strength[0]);
        let winner = survivors[m].first().copied();
        if strength_winner != winner {
            return Err(Error::Algorithm(format!(
                "strength rule and monomial rule disagree at {:?}",
                mt.point
            )));
        }
        battles.push(Battle { point: mt.point, lines, strengths, winner });
    }

    // where each line stops
    let mut lines = Vec::with_capacity(rays.len());
    let mut stop = Vec::with_capacity(rays.len());
    for (l, ray) in rays.iter().enumerate() {
        let death = on_line[l]
            .iter()
            .find(|&&(_, m)| participants[m].contains(&l) && !survivors[m].contains(&l))
            .map(|&(t, _)| t);
        let t_end = match death {
            Some(t) => t,
            None => ray.t_max.integer().ok_or_else(|| {
                Error::Algorithm(format!(
                    "surviving line from e{} reaches the opposite side off the lattice",
                    ray.corner + 1
                ))
            })?,
        };
        stop.push(Frac::new(t_end as i128, 1));
        let total_defeated = defeated_before(l, t_end + 1);
        lines.push(FanLine {
            kind: LineKind::Corner(ray.corner),
            start: ray.origin,
            end: lattice::add(ray.origin, lattice::scale(ray.dir, t_end)),
            birth_strength: ray.birth,
            strength: ray.birth - total_defeated,
            ratio: ray.ratio,
            character: g.weight(&ray.ratio.plus),
        });
    }
    for &(a, t, b, s) in &off_lattice {
        if t.lt(stop[a]) && s.lt(stop[b]) {
            return Err(Error::Algorithm(format!(
                "living lines from e{} and e{} cross off the lattice",
                rays[a].corner + 1,
                rays[b].corner + 1
            )));
        }
    }

    let mut regions = regions::extract(g, &lines)?;
    for b in &battles {
        if b.lines.len() == 3 && b.winner.is_none() {
            regions.push(RegularTriangle {
                vertices: [b.point; 3],
                side: 0,
                kind: RegionKind::Champions,
            });
        }
    }
    Ok(Knockout { lines, battles, regions })
}

