//! Diagonal abelian subgroups of SL(3,C): element enumeration, the
//! invariant-monomial lattice and the character group.
//!
//! Everything downstream works in coordinates scaled by the group order
//! `n = |A|`: a group element `v_a = (α₁,α₂,α₃)/r` is stored as the integer
//! triple `n·v_a`, and points of the junior simplex have coordinate sum `n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, Vec3};

/// Default hard cap on `|A|`.
pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;

/// One diagonal generator `1/r(a₁,a₂,a₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub order: u64,
    pub weights: [u64; 3],
}

impl Generator {
    pub fn new(order: u64, weights: [u64; 3]) -> Self {
        Generator { order, weights }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "1/{}({},{},{})", self.order, a, b, c)
    }
}

/// A group given by a list of generators; the empty list is the trivial group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    pub fn cyclic(order: u64, weights: [u64; 3]) -> Self {
        GroupSpec { generators: vec![Generator::new(order, weights)] }
    }

    pub fn trivial() -> Self {
        GroupSpec::default()
    }

    /// Checks the range and SL(3) conditions on every generator.
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.order == 0 {
                return Err(Error::Input(format!("{g}: order must be positive")));
            }
            if g.weights.iter().any(|&w| w >= g.order) {
                return Err(Error::Input(format!("{g}: weights must lie in [0, {})", g.order)));
            }
            let s: u64 = g.weights.iter().sum();
            if !s.is_multiple_of(g.order) {
                return Err(Error::Input(format!(
                    "{g}: weight sum {s} is not divisible by {} (not in SL(3))",
                    g.order
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// A monomial `x^i y^j z^k` with non-negative exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub [i64; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(exps: [i64; 3]) -> Result<Self> {
        if exps.iter().any(|&e| e < 0) {
            return Err(Error::Invariant(format!("negative monomial exponent {exps:?}")));
        }
        Ok(Monomial(exps))
    }

    pub fn var(i: usize, power: i64) -> Self {
        let mut e = [0; 3];
        e[i] = power;
        Monomial(e)
    }

    pub fn exps(&self) -> [i64; 3] {
        self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(lattice::add(self.0, other.0))
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0;
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// Pairing with a (scaled) lattice point.
    pub fn pair(&self, p: Vec3) -> i64 {
        lattice::dot(self.0, p)
    }

    /// Splits a Laurent exponent vector into numerator and denominator.
    pub fn split_laurent(v: Vec3) -> (Monomial, Monomial) {
        let mut pos = [0; 3];
        let mut neg = [0; 3];
        for i in 0..3 {
            if v[i] > 0 {
                pos[i] = v[i];
            } else {
                neg[i] = -v[i];
            }
        }
        (Monomial(pos), Monomial(neg))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == [0, 0, 0] {
            return write!(f, "1");
        }
        for (i, name) in ["x", "y", "z"].iter().enumerate() {
            match self.0[i] {
                0 => {}
                1 => write!(f, "{name}")?,
                e => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A character of `A`, stored as the canonical representative of its coset
/// in `Z³ / M_A` (reduced against the Hermite basis of `M_A`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub [i64; 3]);

impl Character {
    pub const TRIVIAL: Character = Character([0, 0, 0]);

    pub fn rep(&self) -> [i64; 3] {
        self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == [0, 0, 0]
    }
}

/// The finite group `A` together with its lattices.
#[derive(Debug, Clone)]
pub struct AbelianGroup {
    spec: GroupSpec,
    order: i64,
    elements: Vec<Vec3>,
    invariant_basis: [Vec3; 3],
}

impl AbelianGroup {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        Self::with_max_order(spec, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(spec: &GroupSpec, max_order: u64) -> Result<Self> {
        spec.validate()?;
        let max_order = max_order.max(1) as i64;
        // normalize each generator to its true order
        let mut gens: Vec<(i64, Vec3)> = Vec::new();
        for g in &spec.generators {
            let r = g.order as i64;
            let a = g.weights.map(|w| w as i64);
            let d = lattice::gcd(r, lattice::gcd3(a));
            let (r, a) = (r / d, a.map(|w| w / d));
            if r > 1 && !gens.contains(&(r, a)) {
                gens.push((r, a));
            }
        }
        let mut exponent = 1i64;
        for &(r, _) in &gens {
            exponent = lattice::lcm(exponent, r);
            if exponent > max_order {
                return Err(Error::Resource(format!("group order exceeds the cap {max_order}")));
            }
        }
        // closure in (Z/exponent)^3
        let steps: Vec<Vec3> = gens.iter().map(|&(r, a)| lattice::scale(a, exponent / r)).collect();
        let mut seen: BTreeSet<Vec3> = BTreeSet::new();
        let mut queue = vec![[0i64; 3]];
        seen.insert([0; 3]);
        while let Some(e) = queue.pop() {
            for s in &steps {
                let next = [0, 1, 2].map(|i| (e[i] + s[i]).rem_euclid(exponent));
                if seen.insert(next) {
                    if seen.len() as i64 > max_order {
                        return Err(Error::Resource(format!(
                            "group order exceeds the cap {max_order}"
                        )));
                    }
                    queue.push(next);
                }
            }
        }
        let order = seen.len() as i64;
        let elements: Vec<Vec3> =
            seen.into_iter().map(|e| lattice::scale(e, order / exponent)).collect();

        // M_A: exponent vectors pairing to 0 mod r against every generator
        let mut basis: [Vec3; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for &(r, a) in &gens {
            let mut w: [i64; 3] = basis.map(|b| lattice::dot(b, a).rem_euclid(r));
            for i in 1..3 {
                if w[i] == 0 {
                    continue;
                }
                let (g, s, t) = lattice::ext_gcd(w[0], w[i]);
                let (b0, bi) = (basis[0], basis[i]);
                basis[0] = lattice::add(lattice::scale(b0, s), lattice::scale(bi, t));
                basis[i] = lattice::sub(lattice::scale(b0, w[i] / g), lattice::scale(bi, w[0] / g));
                w[0] = g;
                w[i] = 0;
            }
            let k = r / lattice::gcd(w[0], r);
            basis[0] = lattice::scale(basis[0], k);
        }
        let invariant_basis = lattice::hermite_rows(basis)?;
        let index = invariant_basis[0][0] * invariant_basis[1][1] * invariant_basis[2][2];
        if index != order {
            return Err(Error::Invariant(format!(
                "index of M_A is {index} but |A| = {order}"
            )));
        }
        let normalized = GroupSpec {
            generators: gens
                .iter()
                .map(|&(r, a)| Generator::new(r as u64, a.map(|w| w as u64)))
                .collect(),
        };
        Ok(AbelianGroup { spec: normalized, order, elements, invariant_basis })
    }

    /// Normalized generators (true orders, duplicates and identities removed).
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_cyclic_spec(&self) -> bool {
        self.spec.generators.len() == 1
    }

    /// Group elements scaled by `|A|`, sorted, identity first.
    pub fn elements(&self) -> &[Vec3] {
        &self.elements
    }

    /// Hermite basis (rows) of the invariant exponent lattice `M_A`.
    pub fn invariant_basis(&self) -> [Vec3; 3] {
        self.invariant_basis
    }

    pub fn age(&self, element: Vec3) -> i64 {
        (element[0] + element[1] + element[2]) / self.order
    }

    /// Age-1 elements, i.e. the lattice points of the junior simplex other
    /// than its corners.
    pub fn junior_points(&self) -> Vec<Vec3> {
        self.elements.iter().copied().filter(|&e| self.age(e) == 1).collect()
    }

    /// True when the scaled vector `v` (that is, `v/|A|`) lies in `N`.
    pub fn in_lattice(&self, v: Vec3) -> bool {
        let n = self.order as i128;
        self.invariant_basis.iter().all(|m| lattice::dot_wide(*m, v) % n == 0)
    }

    pub fn is_invariant(&self, exps: Vec3) -> bool {
        self.reduce(exps).is_trivial()
    }

    /// Character of a Laurent exponent vector.
    pub fn reduce(&self, v: Vec3) -> Character {
        let mut r = v;
        for (i, row) in self.invariant_basis.iter().enumerate() {
            let q = r[i].div_euclid(row[i]);
            r = lattice::sub(r, lattice::scale(*row, q));
        }
        Character(r)
    }

    pub fn weight(&self, m: &Monomial) -> Character {
        self.reduce(m.0)
    }

    pub fn add(&self, a: Character, b: Character) -> Character {
        self.reduce(lattice::add(a.0, b.0))
    }

    pub fn neg(&self, a: Character) -> Character {
        self.reduce(lattice::scale(a.0, -1))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Character>>(&self, chars: I) -> Character {
        chars.into_iter().fold(Character::TRIVIAL, |acc, c| self.add(acc, *c))
    }

    /// Dense index of a character in `0..|A|`.
    pub fn index(&self, c: Character) -> usize {
        let h = &self.invariant_basis;
        ((c.0[0] * h[1][1] + c.0[1]) * h[2][2] + c.0[2]) as usize
    }

    /// All characters in index order.
    pub fn characters(&self) -> Vec<Character> {
        let h = &self.invariant_basis;
        let mut out = Vec::with_capacity(self.order as usize);
        for a in 0..h[0][0] {
            for b in 0..h[1][1] {
                for c in 0..h[2][2] {
                    out.push(Character([a, b, c]));
                }
            }
        }
        out
    }

    /// Values of the character on each normalized generator.
    pub fn character_values(&self, c: Character) -> Vec<i64> {
        self.spec
            .generators
            .iter()
            .map(|g| {
                let a = g.weights.map(|w| w as i64);
                lattice::dot(c.0, a).rem_euclid(g.order as i64)
            })
            .collect()
    }

    /// Order of a character in the character group.
    pub fn character_order(&self, c: Character) -> i64 {
        let mut acc = c;
        let mut k = 1;
        while !acc.is_trivial() {
            acc = self.add(acc, c);
            k += 1;
        }
        k
    }

    /// Display label: `χi` for a cyclic presentation, `χ(v1,v2,..)` otherwise.
    pub fn label(&self, c: Character) -> String {
        let vals = self.character_values(c);
        match vals.len() {
            0 => "χ0".to_string(),
            1 => format!("χ{}", vals[0]),
            _ => {
                let parts: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                format!("χ({})", parts.join(","))
            }
        }
    }

    /// Character with a given cyclic label (first generator pairing), if any.
    pub fn character_by_label(&self, index: i64) -> Option<Character> {
        self.characters().into_iter().find(|c| {
            let v = self.character_values(*c);
            v.len() == 1 && v[0] == index.rem_euclid(self.spec.generators[0].order as i64)
        })
    }
}
