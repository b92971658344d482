//! Exact integer helpers: gcds, small vector algebra, Hermite and Smith forms.

use crate::error::{Error, Result};

pub type Vec3 = [i64; 3];

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)) * b
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` and `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

pub fn dot(a: Vec3, b: Vec3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn dot_wide(a: Vec3, b: Vec3) -> i128 {
    a.iter().zip(b.iter()).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: Vec3, k: i64) -> Vec3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn cross(a: Vec3, b: Vec3) -> [i128; 3] {
    let (a0, a1, a2) = (a[0] as i128, a[1] as i128, a[2] as i128);
    let (b0, b1, b2) = (b[0] as i128, b[1] as i128, b[2] as i128);
    [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
}

pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> i128 {
    let x = cross(b, c);
    a[0] as i128 * x[0] + a[1] as i128 * x[1] + a[2] as i128 * x[2]
}

pub fn gcd3(v: Vec3) -> i64 {
    gcd(gcd(v[0], v[1]), v[2])
}

/// Planar cross product using the first two coordinates.
///
/// Points of the junior simplex all have the same coordinate sum, so the
/// projection onto the first two coordinates is injective there and this
/// is (up to the constant factor of that projection) the signed area form.
pub fn cross2(a: Vec3, b: Vec3) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

/// Row-style Hermite normal form of a full-rank 3x3 integer matrix.
///
/// The result is upper triangular with positive diagonal and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: [Vec3; 3]) -> Result<[Vec3; 3]> {
    let mut m: Vec<[i128; 3]> = rows
        .iter()
        .map(|r| [r[0] as i128, r[1] as i128, r[2] as i128])
        .collect();
    for col in 0..3 {
        // Euclid on rows col.. until a single nonzero entry remains in `col`.
        loop {
            let mut pivot: Option<usize> = None;
            for r in col..3 {
                if m[r][col] != 0 && pivot.is_none_or(|p| m[r][col].abs() < m[p][col].abs()) {
                    pivot = Some(r);
                }
            }
            let p = pivot.ok_or_else(|| Error::Invariant("lattice basis is not full rank".into()))?;
            m.swap(col, p);
            let mut done = true;
            for r in col + 1..3 {
                let q = m[r][col].div_euclid(m[col][col]);
                for c in 0..3 {
                    m[r][c] -= q * m[col][c];
                }
                if m[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[col][col] < 0 {
            for c in 0..3 {
                m[col][c] = -m[col][c];
            }
        }
        for r in 0..col {
            let q = m[r][col].div_euclid(m[col][col]);
            for c in 0..3 {
                m[r][c] -= q * m[col][c];
            }
        }
    }
    let mut out = [[0i64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            out[r][c] = i64::try_from(m[r][c])
                .map_err(|_| Error::Resource("Hermite form entry overflow".into()))?;
        }
    }
    Ok(out)
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or_else(|| Error::Resource("integer overflow in Smith normal form".into()))
}

/// Nonzero elementary divisors (Smith normal form diagonal) of an integer matrix.
pub fn elementary_divisors(rows: &[Vec<i64>]) -> Result<Vec<i128>> {
    let nrows = rows.len();
    if nrows == 0 {
        return Ok(Vec::new());
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(p);
                    for j in t..ncols {
                        let v = checked(m[t][j].checked_mul(q))?;
                        m[i][j] = checked(m[i][j].checked_sub(v))?;
                    }
                    if m[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..ncols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(p);
                    for i in t..nrows {
                        let v = checked(m[i][t].checked_mul(q))?;
                        m[i][j] = checked(m[i][j].checked_sub(v))?;
                    }
                    if m[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let mut offender = None;
                'scan: for i in t + 1..nrows {
                    for j in t + 1..ncols {
                        if m[i][j] % p != 0 {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    None => break,
                    Some(i) => {
                        for j in t..ncols {
                            m[t][j] = checked(m[t][j].checked_add(m[i][j]))?;
                        }
                        continue;
                    }
                }
            }
            // move the new smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    Ok(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_identity() {
        for a in -20..20 {
            for b in -20..20 {
                let (g, s, t) = ext_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn hermite_of_diagonal_sublattice() {
        let h = hermite_rows([[0, 0, 3], [2, 0, 0], [1, 5, 0]]).unwrap();
        assert_eq!(h, [[1, 5, 0], [0, 10, 0], [0, 0, 3]]);
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(elementary_divisors(&[vec![2, 4], vec![6, 8]]).unwrap(), vec![2, 4]);
        assert_eq!(elementary_divisors(&[vec![1, 0, 2], vec![0, 1, 3]]).unwrap(), vec![1, 1]);
        assert_eq!(elementary_divisors(&[vec![0, 0], vec![0, 0]]).unwrap(), Vec::<i128>::new());
        assert_eq!(elementary_divisors(&[vec![2, 3]]).unwrap(), vec![1]);
        // rank two matrix with a nontrivial second divisor
        assert_eq!(elementary_divisors(&[vec![2, 0], vec![0, 3]]).unwrap(), vec![1, 6]);
    }
}
