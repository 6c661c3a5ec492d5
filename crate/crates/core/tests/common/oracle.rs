//! Slow, set-based evaluators written straight from the definitions.
//!
//! Shares nothing with the library beyond the table layout (entry `m` is the
//! closure of the subset whose bit pattern is `m`), so it can be used to
//! cross-check the bitmask implementation.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Set = BTreeSet<usize>;

pub fn set_of(bits: u32) -> Set {
    (0..32).filter(|i| bits >> i & 1 == 1).collect()
}

pub fn bits_of(s: &Set) -> u32 {
    s.iter().map(|i| 1u32 << i).sum()
}

pub fn powerset(n: usize) -> Vec<Set> {
    let mut out = vec![Set::new()];
    for x in 0..n {
        let mut grown: Vec<Set> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(x);
                t
            })
            .collect();
        out.append(&mut grown);
    }
    out
}

pub struct OSpace {
    pub n: usize,
    pub cl: BTreeMap<Set, Set>,
}

impl OSpace {
    pub fn from_table(n: usize, table: &[u32]) -> Self {
        assert_eq!(table.len(), 1 << n);
        let cl = table
            .iter()
            .enumerate()
            .map(|(m, &v)| (set_of(m as u32), set_of(v)))
            .collect();
        OSpace { n, cl }
    }

    pub fn x(&self) -> Set {
        (0..self.n).collect()
    }

    pub fn subsets(&self) -> Vec<Set> {
        powerset(self.n)
    }

    pub fn cl(&self, a: &Set) -> Set {
        self.cl[a].clone()
    }

    pub fn int(&self, a: &Set) -> Set {
        let x = self.x();
        let rest: Set = x.difference(a).cloned().collect();
        x.difference(&self.cl(&rest)).cloned().collect()
    }

    pub fn ext(&self, a: &Set) -> Set {
        self.x().difference(&self.cl(a)).cloned().collect()
    }

    pub fn separated(&self, a: &Set, b: &Set) -> bool {
        a.is_disjoint(&self.cl(b)) && self.cl(a).is_disjoint(b)
    }

    pub fn grounded(&self) -> bool {
        self.cl(&Set::new()).is_empty()
    }

    pub fn isotonic(&self) -> bool {
        let all = self.subsets();
        all.iter().all(|a| {
            all.iter()
                .filter(|b| a.is_subset(b))
                .all(|b| self.cl(a).is_subset(&self.cl(b)))
        })
    }

    pub fn enlarging(&self) -> bool {
        self.subsets().iter().all(|a| a.is_subset(&self.cl(a)))
    }

    pub fn idempotent(&self) -> bool {
        self.subsets()
            .iter()
            .all(|a| self.cl(&self.cl(a)) == self.cl(a))
    }

    pub fn sublinear(&self) -> bool {
        let all = self.subsets();
        all.iter().all(|a| {
            all.iter().all(|b| {
                let u: Set = a.union(b).cloned().collect();
                let rhs: Set = self.cl(a).union(&self.cl(b)).cloned().collect();
                self.cl(&u).is_subset(&rhs)
            })
        })
    }

    pub fn pointwise_symmetric(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                !self.cl(&Set::from([y])).contains(&x) || self.cl(&Set::from([x])).contains(&y)
            })
        })
    }

    /// x lies in every neighbourhood of y.
    fn in_every_nbhd(&self, x: usize, y: usize) -> bool {
        self.subsets()
            .iter()
            .all(|nb| !self.int(nb).contains(&y) || nb.contains(&x))
    }

    pub fn r0(&self) -> bool {
        (0..self.n)
            .all(|x| (0..self.n).all(|y| !self.in_every_nbhd(x, y) || self.in_every_nbhd(y, x)))
    }

    pub fn exterior_separated(&self) -> bool {
        self.subsets().iter().all(|a| {
            self.ext(a)
                .iter()
                .all(|&x| self.separated(&Set::from([x]), a))
        })
    }

    pub fn separated_pairs(&self) -> ORel {
        let mut pairs = BTreeSet::new();
        for a in self.subsets() {
            for b in self.subsets() {
                if self.separated(&a, &b) {
                    pairs.insert(upair(&a, &b));
                }
            }
        }
        ORel { n: self.n, pairs }
    }
}

pub fn upair(a: &Set, b: &Set) -> (Set, Set) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Set-based relation of unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ORel {
    pub n: usize,
    pub pairs: BTreeSet<(Set, Set)>,
}

impl ORel {
    pub fn has(&self, a: &Set, b: &Set) -> bool {
        self.pairs.contains(&upair(a, b))
    }

    pub fn condition1(&self) -> bool {
        let all = powerset(self.n);
        all.iter().all(|a| {
            all.iter()
                .filter(|b| a.is_subset(b))
                .all(|b| all.iter().all(|c| !self.has(b, c) || self.has(a, c)))
        })
    }

    pub fn condition2(&self) -> bool {
        let all = powerset(self.n);
        all.iter().all(|a| {
            all.iter().all(|b| {
                let hyp = a.iter().all(|&x| self.has(&Set::from([x]), b))
                    && b.iter().all(|&y| self.has(&Set::from([y]), a));
                !hyp || self.has(a, b)
            })
        })
    }

    /// cl(A) = { x : {{x}, A} not in the relation }.
    pub fn formula_table(&self) -> Vec<u32> {
        powerset(self.n)
            .iter()
            .map(|a| {
                let s: Set = (0..self.n)
                    .filter(|&x| !self.has(&Set::from([x]), a))
                    .collect();
                (bits_of(a), bits_of(&s))
            })
            .collect::<BTreeMap<u32, u32>>()
            .into_values()
            .collect()
    }

    pub fn grounded_crit(&self) -> bool {
        (0..self.n).all(|x| self.has(&Set::from([x]), &Set::new()))
    }

    pub fn enlarging_crit(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a.is_disjoint(b))
    }

    pub fn sublinear_crit(&self) -> bool {
        let all = powerset(self.n);
        all.iter().all(|a| {
            all.iter().all(|b| {
                all.iter().all(|c| {
                    let u: Set = b.union(c).cloned().collect();
                    !(self.has(a, b) && self.has(a, c)) || self.has(a, &u)
                })
            })
        })
    }

    pub fn idempotent_sufficient(&self) -> bool {
        let all = powerset(self.n);
        (0..self.n).all(|x| {
            let sx = Set::from([x]);
            all.iter().all(|a| {
                all.iter().all(|b| {
                    let hyp = !self.has(&sx, b) && b.iter().all(|&y| !self.has(&Set::from([y]), a));
                    !hyp || !self.has(&sx, a)
                })
            })
        })
    }
}

pub fn image(f: &[usize], a: &Set) -> Set {
    a.iter().map(|&i| f[i]).collect()
}

pub fn preimage(f: &[usize], b: &Set) -> Set {
    (0..f.len()).filter(|&i| b.contains(&f[i])).collect()
}

pub fn closure_preserving(x: &OSpace, y: &OSpace, f: &[usize]) -> bool {
    x.subsets()
        .iter()
        .all(|a| image(f, &x.cl(a)).is_subset(&y.cl(&image(f, a))))
}

pub fn continuous(x: &OSpace, y: &OSpace, f: &[usize]) -> bool {
    y.subsets()
        .iter()
        .all(|b| x.cl(&preimage(f, b)).is_subset(&preimage(f, &y.cl(b))))
}

/// Literal form: non-separated pairs have non-separated images.
pub fn nonseparating(x: &OSpace, y: &OSpace, f: &[usize]) -> bool {
    let all = x.subsets();
    all.iter().all(|a| {
        all.iter()
            .all(|b| x.separated(a, b) || !y.separated(&image(f, a), &image(f, b)))
    })
}

pub fn preimage_separating(x: &OSpace, y: &OSpace, f: &[usize]) -> bool {
    let all = y.subsets();
    all.iter().all(|c| {
        all.iter()
            .all(|d| !y.separated(c, d) || x.separated(&preimage(f, c), &preimage(f, d)))
    })
}
