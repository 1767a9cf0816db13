//! Finite groups given by multiplication tables, with the sector
//! combinatorics used by the orbifold formulas: conjugacy classes,
//! centralizers, commuting pairs and classes of commuting pairs under
//! simultaneous conjugation.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{denom_u64, frac, int};
use crate::Rational;

/// Serializable description of a group, shared with the model format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    /// ℤ/order; element `s` is the `s`-th power of the generator.
    Cyclic { order: usize },
    /// ℤ/n₁ × ℤ/n₂ × …; element index is mixed radix with the first factor fastest.
    Product { factors: Vec<usize> },
    /// S_degree; elements are permutations in lexicographic order.
    Symmetric { degree: usize },
    /// Explicit multiplication table, `table[a][b] = a·b`.
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { order } => FiniteGroup::cyclic(*order),
            GroupSpec::Product { factors } => FiniteGroup::product(factors),
            GroupSpec::Symmetric { degree } => FiniteGroup::symmetric(*degree),
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleClass {
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
}

impl FiniteGroup {
    /// Validates the table: closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: &str| Error::SchemaError(format!("group table: {m}"));
        if n == 0 {
            return Err(bad("empty"));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad("not a closed square table"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("no identity"))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| bad("missing inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
            abelian,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::product(&[n])
    }

    pub fn product(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::SchemaError("group: factors must be positive".into()));
        }
        let n: usize = factors.iter().product();
        let digits = |mut x: usize| {
            factors
                .iter()
                .map(|&f| {
                    let d = x % f;
                    x /= f;
                    d
                })
                .collect::<Vec<_>>()
        };
        let index = |ds: &[usize]| {
            ds.iter()
                .zip(factors)
                .rev()
                .fold(0, |acc, (&d, &f)| acc * f + d)
        };
        let table = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<usize> = da
                            .iter()
                            .zip(&db)
                            .zip(factors)
                            .map(|((x, y), f)| (x + y) % f)
                            .collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// Symmetric group on `degree <= 5` letters; `(p·q)(i) = p(q(i))`.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 5 {
            return Err(Error::SchemaError("group: symmetric degree must be 1..=5".into()));
        }
        let perms = permutations(degree);
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| pos(&q.iter().map(|&i| p[i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse(g))
    }

    pub fn element_order(&self, h: usize) -> usize {
        let mut x = h;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, h);
            k += 1;
        }
        k
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        self.classes_of_subgroup(&self.elements().collect::<Vec<_>>())
    }

    /// Conjugacy classes of a subgroup given by its element list.
    pub fn classes_of_subgroup(&self, subgroup: &[usize]) -> Vec<ConjClass> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &h in subgroup {
            if seen.contains(&h) {
                continue;
            }
            let members: BTreeSet<usize> = subgroup.iter().map(|&g| self.conjugate(g, h)).collect();
            seen.extend(members.iter().copied());
            out.push(ConjClass {
                representative: h,
                members: members.into_iter().collect(),
            });
        }
        out
    }

    /// `{g | gh = hg}`, sorted.
    pub fn centralizer(&self, h: usize) -> Vec<usize> {
        self.elements()
            .filter(|&g| self.mul(g, h) == self.mul(h, g))
            .collect()
    }

    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| self.mul(a, b) == self.mul(b, a))
            .collect()
    }

    /// Orbits of commuting pairs under simultaneous conjugation.
    pub fn double_classes(&self) -> Vec<DoubleClass> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in self.commuting_pairs() {
            if seen.contains(&(a, b)) {
                continue;
            }
            let members: BTreeSet<(usize, usize)> = self
                .elements()
                .map(|g| (self.conjugate(g, a), self.conjugate(g, b)))
                .collect();
            seen.extend(members.iter().copied());
            out.push(DoubleClass {
                representative: (a, b),
                members: members.into_iter().collect(),
            });
        }
        out
    }

    /// Checks that `chi` (indexed by element) is a homomorphism to ℚ/ℤ with
    /// values in `[0, 1)`, `chi(e) = 0`, and denominators dividing element orders.
    pub fn character_validate(&self, chi: &[Rational]) -> Result<bool> {
        if !self.abelian {
            return Err(Error::NonAbelianGroup);
        }
        if chi.len() != self.order() {
            return Ok(false);
        }
        let zero = int(0);
        let one = int(1);
        if !chi[self.identity].is_zero() || chi.iter().any(|c| *c < zero || *c >= one) {
            return Ok(false);
        }
        for h in self.elements() {
            if (self.element_order(h) as u64) % denom_u64(&chi[h]) != 0 {
                return Ok(false);
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                if frac(&(&chi[a] + &chi[b])) != chi[self.mul(a, b)] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.members.len()).collect();
        v.sort();
        v
    }

    #[test]
    fn conjugacy_examples() {
        assert_eq!(class_sizes(&FiniteGroup::cyclic(4).unwrap()), vec![1, 1, 1, 1]);
        assert_eq!(class_sizes(&FiniteGroup::symmetric(3).unwrap()), vec![1, 2, 3]);
        assert_eq!(class_sizes(&FiniteGroup::trivial()), vec![1]);
    }

    #[test]
    fn centralizer_examples() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transposition = (0..6).find(|&h| s3.element_order(h) == 2).unwrap();
        assert_eq!(s3.centralizer(transposition).len(), 2);
        assert_eq!(s3.centralizer(s3.identity()).len(), 6);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.centralizer(4).len(), 6);
    }

    #[test]
    fn pair_counts() {
        assert_eq!(FiniteGroup::cyclic(3).unwrap().commuting_pairs().len(), 9);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().commuting_pairs().len(), 18);
        assert_eq!(FiniteGroup::trivial().commuting_pairs().len(), 1);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().double_classes().len(), 4);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().double_classes().len(), 8);
        assert_eq!(FiniteGroup::trivial().double_classes().len(), 1);
    }

    #[test]
    fn characters() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let canonical: Vec<_> = (0..3).map(|s| rat(s, 3)).collect();
        assert!(z3.character_validate(&canonical).unwrap());
        let halves: Vec<_> = (0..3).map(|s| frac(&rat(s, 2))).collect();
        assert!(!z3.character_validate(&halves).unwrap());

        let klein = FiniteGroup::product(&[2, 2]).unwrap();
        // homomorphisms ℤ/2×ℤ/2 → ½ℤ/ℤ: (x, y) ↦ (a x + b y)/2
        for a in 0..2 {
            for b in 0..2 {
                let chi: Vec<_> = (0..4)
                    .map(|idx| frac(&rat(a * (idx % 2) + b * (idx / 2), 2)))
                    .collect();
                assert!(klein.character_validate(&chi).unwrap());
            }
        }
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(
            s3.character_validate(&vec![int(0); 6]),
            Err(Error::NonAbelianGroup)
        );
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(FiniteGroup::symmetric(6).is_err());
    }
}
