//! Separation relations: the unordered pairs of subsets a closure function
//! separates, and the reconstruction of a closure function from such pairs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Space;
use crate::subset::{GroundSet, SubsetMask};

/// A symmetric collection of unordered pairs `{A, B}` of subsets. Pairs with
/// `A = B` are allowed. Stored canonically as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparationRelation {
    ground: Arc<GroundSet>,
    pairs: BTreeSet<(SubsetMask, SubsetMask)>,
}

fn canonical(a: SubsetMask, b: SubsetMask) -> (SubsetMask, SubsetMask) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SeparationRelation {
    pub fn new(ground: impl Into<Arc<GroundSet>>) -> Self {
        SeparationRelation {
            ground: ground.into(),
            pairs: BTreeSet::new(),
        }
    }

    pub fn from_pairs<I>(ground: impl Into<Arc<GroundSet>>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, SubsetMask)>,
    {
        let mut rel = SeparationRelation::new(ground);
        for (a, b) in pairs {
            rel.insert(a, b)?;
        }
        Ok(rel)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Adds `{a, b}`; returns false if it was already present.
    pub fn insert(&mut self, a: SubsetMask, b: SubsetMask) -> Result<bool> {
        let a = self.ground.check(a)?;
        let b = self.ground.check(b)?;
        Ok(self.pairs.insert(canonical(a, b)))
    }

    pub fn remove(&mut self, a: SubsetMask, b: SubsetMask) -> bool {
        self.pairs.remove(&canonical(a, b))
    }

    pub fn contains(&self, a: SubsetMask, b: SubsetMask) -> bool {
        self.pairs.contains(&canonical(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Canonical pairs `(A, B)` with `A <= B`, in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask)> + '_ {
        self.pairs.iter().copied()
    }

    fn lookup(&self) -> PairLookup<'_> {
        PairLookup::new(self)
    }
}

/// Membership test backed by a dense bit matrix on small carriers.
enum PairLookup<'a> {
    Dense { side: usize, bits: Vec<u64> },
    Sparse(&'a SeparationRelation),
}

const DENSE_LIMIT: usize = 10;

impl<'a> PairLookup<'a> {
    fn new(rel: &'a SeparationRelation) -> Self {
        let n = rel.ground.len();
        if n > DENSE_LIMIT {
            return PairLookup::Sparse(rel);
        }
        let side = 1usize << n;
        let mut bits = vec![0u64; (side * side).div_ceil(64)];
        for (a, b) in rel.iter() {
            for k in [a.index() * side + b.index(), b.index() * side + a.index()] {
                bits[k / 64] |= 1 << (k % 64);
            }
        }
        PairLookup::Dense { side, bits }
    }

    #[inline]
    fn has(&self, a: SubsetMask, b: SubsetMask) -> bool {
        match self {
            PairLookup::Dense { side, bits } => {
                let k = a.index() * side + b.index();
                bits[k / 64] >> (k % 64) & 1 == 1
            }
            PairLookup::Sparse(rel) => rel.contains(a, b),
        }
    }
}

/// Violation of the downward-closure condition: `A ⊆ B`, `{B, C}` present,
/// `{A, C}` absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DownwardWitness {
    pub a: SubsetMask,
    pub b: SubsetMask,
    pub c: SubsetMask,
}

/// Violation of the singleton condition: every `{{x}, B}` with `x ∈ A` and
/// every `{{y}, A}` with `y ∈ B` is present, but `{A, B}` is not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SingletonWitness {
    pub a: SubsetMask,
    pub b: SubsetMask,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionReport {
    pub condition1: bool,
    pub condition2: bool,
    pub witness1: Option<DownwardWitness>,
    pub witness2: Option<SingletonWitness>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.condition1 && self.condition2
    }

    /// Human-readable account of the violations, using element names.
    pub fn describe(&self, ground: &GroundSet) -> String {
        let s = |m| format!("{{{}}}", ground.format_subset(m));
        let mut lines = Vec::new();
        if let Some(w) = self.witness1 {
            lines.push(format!(
                "condition 1 violated: A={} ⊆ B={}, {{B, C}} present with C={}, {{A, C}} absent",
                s(w.a),
                s(w.b),
                s(w.c)
            ));
        }
        if let Some(w) = self.witness2 {
            lines.push(format!(
                "condition 2 violated: A={} B={} are singleton-separated but {{A, B}} is absent",
                s(w.a),
                s(w.b)
            ));
        }
        if lines.is_empty() {
            lines.push("both conditions hold".to_string());
        }
        lines.join("\n")
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.witness1, self.witness2) {
            (None, None) => write!(f, "both conditions hold"),
            (w1, w2) => {
                if let Some(w) = w1 {
                    write!(
                        f,
                        "condition 1 fails at A={:b} B={:b} C={:b}",
                        w.a, w.b, w.c
                    )?;
                }
                if let Some(w) = w2 {
                    if w1.is_some() {
                        write!(f, "; ")?;
                    }
                    write!(f, "condition 2 fails at A={:b} B={:b}", w.a, w.b)?;
                }
                Ok(())
            }
        }
    }
}

/// All unordered pairs `{A, B}` that `space` closure-separates.
pub fn separated_pairs(space: &Space) -> SeparationRelation {
    let mut pairs = BTreeSet::new();
    let subsets = space.ground().subsets();
    for a in subsets.clone() {
        for b in subsets.clone().skip(a.index()) {
            if space.sep(a, b) {
                pairs.insert((a, b));
            }
        }
    }
    SeparationRelation {
        ground: space.ground().clone(),
        pairs,
    }
}

/// Checks the two reconstruction conditions. Witnesses are the first
/// violations in ascending numeric order of (A, B, C), resp. (A, B) with A ≤ B.
pub fn check_relation_conditions(rel: &SeparationRelation) -> ConditionReport {
    let lookup = rel.lookup();
    let subsets = rel.ground.subsets();

    let witness1 = subsets.clone().find_map(|a| {
        subsets.clone().filter(|b| a.is_subset(*b)).find_map(|b| {
            subsets
                .clone()
                .find(|&c| lookup.has(b, c) && !lookup.has(a, c))
                .map(|c| DownwardWitness { a, b, c })
        })
    });

    let singles_related = |a: SubsetMask, b: SubsetMask| {
        a.elements()
            .all(|x| lookup.has(SubsetMask::singleton(x), b))
    };
    let witness2 = subsets.clone().find_map(|a| {
        subsets
            .clone()
            .skip(a.index())
            .find(|&b| singles_related(a, b) && singles_related(b, a) && !lookup.has(a, b))
            .map(|b| SingletonWitness { a, b })
    });

    ConditionReport {
        condition1: witness1.is_none(),
        condition2: witness2.is_none(),
        witness1,
        witness2,
    }
}

/// The table `cl(A) = { x : {{x}, A} ∉ rel }`, computed without checking
/// the reconstruction conditions.
pub fn closure_by_formula(rel: &SeparationRelation) -> Space {
    let lookup = rel.lookup();
    let n = rel.ground.len();
    let table: Vec<u32> = rel
        .ground
        .subsets()
        .map(|a| {
            (0..n)
                .filter(|&x| !lookup.has(SubsetMask::singleton(x), a))
                .fold(0, |acc, x| acc | 1 << x)
        })
        .collect();
    Space::from_raw(rel.ground.clone(), &table)
}

/// The unique pointwise-symmetric isotonic closure function separating
/// exactly the pairs of `rel`. Fails when either condition is violated.
pub fn closure_from_relation(rel: &SeparationRelation) -> Result<Space> {
    let report = check_relation_conditions(rel);
    if !report.holds() {
        return Err(Error::ConditionsViolated(Box::new(report)));
    }
    Ok(closure_by_formula(rel))
}

/// Relation-level counterparts of the closure axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AxiomCriteria {
    /// Every `{{x}, ∅}` is present.
    pub grounded: bool,
    /// Every present pair is disjoint.
    pub enlarging: bool,
    /// `{A, B}` and `{A, C}` present imply `{A, B ∪ C}` present.
    pub sublinear: bool,
    /// `{{x}, B}` absent and `{{y}, A}` absent for all `y ∈ B` imply `{{x}, A}` absent.
    pub idempotent_sufficient: bool,
}

pub fn relation_axiom_criteria(rel: &SeparationRelation) -> AxiomCriteria {
    let lookup = rel.lookup();
    let ground = &rel.ground;
    let n = ground.len();

    let grounded = (0..n).all(|x| lookup.has(SubsetMask::singleton(x), SubsetMask::EMPTY));
    let enlarging = rel.iter().all(|(a, b)| a.is_disjoint(b));

    let mut partners: Vec<Vec<SubsetMask>> = vec![Vec::new(); ground.subset_count()];
    for (a, b) in rel.iter() {
        partners[a.index()].push(b);
        if a != b {
            partners[b.index()].push(a);
        }
    }
    let sublinear = ground.subsets().all(|a| {
        let ps = &partners[a.index()];
        ps.iter().all(|&b| ps.iter().all(|&c| lookup.has(a, b | c)))
    });

    // With f(A) = { x : {{x}, A} ∉ rel } the criterion reads:
    // B ⊆ f(A) implies f(B) ⊆ f(A).
    let f: Vec<SubsetMask> = closure_by_formula(rel).table().to_vec();
    let idempotent_sufficient = ground.subsets().all(|a| {
        let fa = f[a.index()];
        fa.subsets().all(|b| f[b.index()].is_subset(fa))
    });

    AxiomCriteria {
        grounded,
        enlarging,
        sublinear,
        idempotent_sufficient,
    }
}

/// True iff reconstructing from the separated pairs of `space` gives `space` back.
pub fn roundtrip_ok(space: &Space) -> bool {
    closure_from_relation(&separated_pairs(space)).is_ok_and(|rebuilt| rebuilt == *space)
}

/// Every closure table entry agrees with `{ x : {{x}, A} ∉ separated_pairs(space) }`.
pub fn closure_matches_formula(space: &Space) -> bool {
    closure_by_formula(&separated_pairs(space)).table() == space.table()
}

/// First pair of distinct spaces with the same separated pairs, if any.
pub fn find_separation_collision<I>(spaces: I) -> Option<(Space, Space)>
where
    I: IntoIterator<Item = Space>,
{
    let mut seen: HashMap<SeparationRelation, Space> = HashMap::new();
    for space in spaces {
        let rel = separated_pairs(&space);
        if let Some(prev) = seen.get(&rel) {
            if *prev != space {
                return Some((prev.clone(), space));
            }
        } else {
            seen.insert(rel, space);
        }
    }
    None
}
