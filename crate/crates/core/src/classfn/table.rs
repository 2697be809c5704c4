use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};

use crate::error::{contract, Error, Result};
use crate::groups::Gl2;

const EXHAUSTIVE_ASSOC_LIMIT: usize = 200;
const SAMPLED_ASSOC_TRIPLES: usize = 200_000;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: u32,
    fingerprint: u64,
}

impl FiniteGroupTable {
    /// Validates identity, inverses and associativity (every triple for
    /// `n <= 200`, a fixed random sample above).
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0
            || rows
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x as usize >= n))
        {
            return contract("table must be n x n with entries below n");
        }
        let mul: Vec<u32> = rows.into_iter().flatten().collect();
        let at = |x: usize, y: usize| mul[x * n + y] as usize;
        let id = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::Contract("no identity element".into()))?;
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == id && at(y, x) == id)
                .ok_or_else(|| Error::Contract(format!("element {x} has no inverse")))?;
            inv[x] = y as u32;
        }
        let assoc = |x: usize, y: usize, z: usize| at(at(x, y), z) == at(x, at(y, z));
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !assoc(x, y, z) {
                            return contract(format!("not associative at ({x}, {y}, {z})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand::rngs::StdRng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (x, y, z) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(x, y, z) {
                    return contract(format!("not associative at ({x}, {y}, {z})"));
                }
            }
        }
        let mut h = DefaultHasher::new();
        mul.hash(&mut h);
        Ok(Self {
            n,
            mul,
            inv,
            id: id as u32,
            fingerprint: h.finish(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.n + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    /// `t^{-1} g t`
    #[inline]
    pub fn conj_by(&self, t: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(t), g), t)
    }

    /// Hash of the multiplication table; class functions remember it so
    /// that mixing groups is caught.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n)
            .map(|x| (0..n).map(|y| ((x + y) % n) as u32).collect())
            .collect();
        Self::new(rows).expect("cyclic group")
    }

    /// `S_3` acting on `{0, 1, 2}`, elements as permutations in lexicographic order.
    pub fn symmetric3() -> Self {
        Self::from_permutations(&permutations(3))
    }

    /// The dihedral group of order 8 as symmetries of a square `0, 1, 2, 3`.
    pub fn dihedral4() -> Self {
        let mut perms = Vec::new();
        for k in 0..4 {
            perms.push((0..4).map(|i| (i + k) % 4).collect::<Vec<_>>());
            perms.push((0..4).map(|i| (4 + k - i) % 4).collect::<Vec<_>>());
        }
        perms.sort();
        Self::from_permutations(&perms)
    }

    /// Composition `(p q)(i) = p(q(i))` of a list of permutations closed
    /// under composition.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Self {
        let pos = |p: &Vec<usize>| {
            perms
                .iter()
                .position(|q| q == p)
                .expect("closed set of permutations") as u32
        };
        let rows = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| pos(&q.iter().map(|&i| p[i]).collect()))
                    .collect()
            })
            .collect();
        Self::new(rows).expect("permutation group")
    }

    pub fn from_gl2(g: &Gl2) -> Self {
        let n = g.order() as u32;
        let rows = (0..n)
            .map(|x| (0..n).map(|y| g.mul(x, y)).collect())
            .collect();
        Self::new(rows).expect("GL_2 table")
    }

    /// First line `n`, then `n` lines of `n` space-separated indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group table".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad order line: {e}")))?;
        let rows: Vec<Vec<u32>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Self::new(rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.mul.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    /// The subgroup on `members`, re-indexed; fails unless `members` is closed.
    pub fn subgroup(&self, members: &[u32]) -> Result<Subgroup> {
        let mut locate = vec![u32::MAX; self.n];
        let mut embed = Vec::with_capacity(members.len());
        for &m in members {
            if (m as usize) < self.n && locate[m as usize] == u32::MAX {
                locate[m as usize] = embed.len() as u32;
                embed.push(m);
            }
        }
        if embed.is_empty() {
            return contract("empty subgroup");
        }
        let mut rows = Vec::with_capacity(embed.len());
        for &x in &embed {
            let mut row = Vec::with_capacity(embed.len());
            for &y in &embed {
                let z = locate[self.mul(x, y) as usize];
                if z == u32::MAX {
                    return contract("subset is not closed under the group law");
                }
                row.push(z);
            }
            rows.push(row);
        }
        Ok(Subgroup {
            table: Self::new(rows)?,
            embed,
            locate,
        })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements()
            .all(|t| h.embed.iter().all(|&x| h.contains(self.conj_by(t, x))))
    }

    /// `G/N` with cosets numbered by first appearance.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_normal(n) {
            return contract("N is not normal");
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            for &x in &n.embed {
                coset_of[self.mul(g, x) as usize] = reps.len() as u32;
            }
            reps.push(g);
        }
        let rows = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| coset_of[self.mul(a, b) as usize])
                    .collect()
            })
            .collect();
        Ok(QuotientGroup {
            table: Self::new(rows)?,
            coset_of,
        })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for slot in 0..k {
            let mut q = p.clone();
            q.insert(slot, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A subgroup `H ≤ G` with its own table and the embedding into `G`.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub table: FiniteGroupTable,
    /// `H`-index to `G`-index
    pub embed: Vec<u32>,
    locate: Vec<u32>,
}

impl Subgroup {
    pub fn contains(&self, g: u32) -> bool {
        self.locate.get(g as usize).is_some_and(|&i| i != u32::MAX)
    }

    /// `H`-index of a `G`-element, if it lies in `H`.
    pub fn locate(&self, g: u32) -> Option<u32> {
        self.locate
            .get(g as usize)
            .copied()
            .filter(|&i| i != u32::MAX)
    }
}

#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub table: FiniteGroupTable,
    /// `G`-index to coset index
    pub coset_of: Vec<u32>,
}
