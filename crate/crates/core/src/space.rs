//! Finite generalized closure spaces and the predicates defined on them.
//!
//! A [`Space`] is an arbitrary map from the powerset of its carrier to itself,
//! stored as a table with one entry per subset. No axiom is assumed; every
//! property below is decided by evaluating its definition on the table.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{GroundSet, SubsetMask};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Space {
    ground: Arc<GroundSet>,
    table: Arc<[SubsetMask]>,
}

/// The five optional closure axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AxiomProfile {
    pub grounded: bool,
    pub isotonic: bool,
    pub enlarging: bool,
    pub idempotent: bool,
    pub sublinear: bool,
}

/// The three weak separation properties. None is derived from another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryProfile {
    pub pointwise_symmetric: bool,
    pub r0: bool,
    pub exterior_separated: bool,
}

impl Space {
    /// Builds a space from a full closure table; entry `m` is the closure of
    /// the subset with bits `m`.
    pub fn new(ground: impl Into<Arc<GroundSet>>, table: Vec<SubsetMask>) -> Result<Self> {
        let ground = ground.into();
        if table.len() != ground.subset_count() {
            return Err(Error::LengthMismatch {
                expected: ground.subset_count(),
                found: table.len(),
            });
        }
        for &entry in &table {
            ground.check(entry)?;
        }
        Ok(Space {
            ground,
            table: table.into(),
        })
    }

    pub fn from_fn(
        ground: impl Into<Arc<GroundSet>>,
        mut closure: impl FnMut(SubsetMask) -> SubsetMask,
    ) -> Result<Self> {
        let ground = ground.into();
        let table = ground.subsets().map(&mut closure).collect();
        Space::new(ground, table)
    }

    /// Table must already be validated against `ground`.
    pub(crate) fn from_raw(ground: Arc<GroundSet>, table: &[u32]) -> Self {
        debug_assert_eq!(table.len(), ground.subset_count());
        debug_assert!(table
            .iter()
            .all(|&v| SubsetMask::from_bits(v).is_valid_for(ground.len())));
        Space {
            ground,
            table: table.iter().map(|&v| SubsetMask::from_bits(v)).collect(),
        }
    }

    /// cl(A) = A.
    pub fn discrete(ground: impl Into<Arc<GroundSet>>) -> Self {
        let ground = ground.into();
        let table = ground.subsets().collect();
        Space { ground, table }
    }

    /// cl(A) = X for every A, including the empty set.
    pub fn indiscrete(ground: impl Into<Arc<GroundSet>>) -> Self {
        let ground = ground.into();
        let table = vec![ground.full(); ground.subset_count()].into();
        Space { ground, table }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Carrier size.
    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> SubsetMask {
        self.ground.full()
    }

    pub fn table(&self) -> &[SubsetMask] {
        &self.table
    }

    #[inline]
    pub(crate) fn cl(&self, a: SubsetMask) -> SubsetMask {
        self.table[a.index()]
    }

    pub fn closure(&self, a: SubsetMask) -> Result<SubsetMask> {
        Ok(self.cl(self.ground.check(a)?))
    }

    /// X - cl(X - A).
    pub fn interior(&self, a: SubsetMask) -> Result<SubsetMask> {
        let a = self.ground.check(a)?;
        Ok(self.int(a))
    }

    /// X - cl(A).
    pub fn exterior(&self, a: SubsetMask) -> Result<SubsetMask> {
        let a = self.ground.check(a)?;
        Ok(self.ext(a))
    }

    #[inline]
    pub(crate) fn int(&self, a: SubsetMask) -> SubsetMask {
        let n = self.n();
        self.cl(a.complement(n)).complement(n)
    }

    #[inline]
    pub(crate) fn ext(&self, a: SubsetMask) -> SubsetMask {
        self.cl(a).complement(self.n())
    }

    /// `nbhd` is a neighborhood of `x` iff `x` is in its interior.
    pub fn is_neighborhood(&self, nbhd: SubsetMask, x: usize) -> Result<bool> {
        let nbhd = self.ground.check(nbhd)?;
        let x = self.ground.check_element(x)?;
        Ok(self.int(nbhd).contains(x))
    }

    /// A and B are closure-separated: A ∩ cl(B) = ∅ and cl(A) ∩ B = ∅.
    pub fn are_separated(&self, a: SubsetMask, b: SubsetMask) -> Result<bool> {
        let a = self.ground.check(a)?;
        let b = self.ground.check(b)?;
        Ok(self.sep(a, b))
    }

    #[inline]
    pub(crate) fn sep(&self, a: SubsetMask, b: SubsetMask) -> bool {
        a.is_disjoint(self.cl(b)) && self.cl(a).is_disjoint(b)
    }

    pub fn axiom_profile(&self) -> AxiomProfile {
        AxiomProfile {
            grounded: self.is_grounded(),
            isotonic: self.is_isotonic(),
            enlarging: self.is_enlarging(),
            idempotent: self.is_idempotent(),
            sublinear: self.is_sublinear(),
        }
    }

    pub fn symmetry_profile(&self) -> SymmetryProfile {
        SymmetryProfile {
            pointwise_symmetric: self.is_pointwise_symmetric(),
            r0: self.is_r0(),
            exterior_separated: self.is_exterior_separated(),
        }
    }

    pub fn is_grounded(&self) -> bool {
        self.cl(SubsetMask::EMPTY).is_empty()
    }

    /// Checks cl(A - {x}) ⊆ cl(A) for every A and x ∈ A. By transitivity of ⊆
    /// along single-element chains this decides the same property as
    /// [`is_isotonic_pairwise`](Self::is_isotonic_pairwise) in O(2^n·n).
    pub fn is_isotonic(&self) -> bool {
        self.ground.subsets().all(|a| {
            let cl_a = self.cl(a);
            a.elements().all(|x| self.cl(a.without(x)).is_subset(cl_a))
        })
    }

    /// cl(A) ⊆ cl(B) for every pair A ⊆ B.
    pub fn is_isotonic_pairwise(&self) -> bool {
        self.ground.subsets().all(|b| {
            let cl_b = self.cl(b);
            b.subsets().all(|a| self.cl(a).is_subset(cl_b))
        })
    }

    pub fn is_enlarging(&self) -> bool {
        self.ground.subsets().all(|a| a.is_subset(self.cl(a)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.table.iter().all(|&c| self.cl(c) == c)
    }

    pub fn is_sublinear(&self) -> bool {
        let subsets = self.ground.subsets();
        subsets.clone().all(|a| {
            let cl_a = self.cl(a);
            // The test is symmetric in A and B.
            subsets
                .clone()
                .skip(a.index())
                .all(|b| self.cl(a | b).is_subset(cl_a | self.cl(b)))
        })
    }

    pub fn is_pointwise_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|y| {
            let cl_y = self.cl(SubsetMask::singleton(y));
            cl_y.elements()
                .all(|x| self.cl(SubsetMask::singleton(x)).contains(y))
        })
    }

    /// Intersection of all neighborhoods of `y`; the full carrier when `y`
    /// has none. `x` lies in every neighborhood of `y` iff it is a member.
    pub fn neighborhood_core(&self, y: usize) -> Result<SubsetMask> {
        let y = self.ground.check_element(y)?;
        Ok(self.nbhd_core(y))
    }

    fn nbhd_core(&self, y: usize) -> SubsetMask {
        self.ground
            .subsets()
            .filter(|&nb| self.int(nb).contains(y))
            .fold(self.full(), |acc, nb| acc & nb)
    }

    /// If x is in each neighborhood of y then y is in each neighborhood of x.
    pub fn is_r0(&self) -> bool {
        let cores: Vec<SubsetMask> = (0..self.n()).map(|y| self.nbhd_core(y)).collect();
        cores
            .iter()
            .enumerate()
            .all(|(y, core_y)| core_y.elements().all(|x| cores[x].contains(y)))
    }

    /// Every x ∈ ext(A) is separated from A. Since {x} ∩ cl(A) = ∅ holds by
    /// choice of x, only cl({x}) ∩ A = ∅ needs checking.
    pub fn is_exterior_separated(&self) -> bool {
        let singles: Vec<SubsetMask> = (0..self.n())
            .map(|x| self.cl(SubsetMask::singleton(x)))
            .collect();
        self.ground
            .subsets()
            .all(|a| self.ext(a).elements().all(|x| singles[x].is_disjoint(a)))
    }

    /// A and B are separated iff A ⊆ ext(B) and B ⊆ ext(A), for every pair.
    pub fn separation_matches_exterior_form(&self) -> bool {
        let subsets = self.ground.subsets();
        subsets.clone().all(|a| {
            subsets
                .clone()
                .all(|b| self.sep(a, b) == (a.is_subset(self.ext(b)) && b.is_subset(self.ext(a))))
        })
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for a in self.ground.subsets() {
            map.entry(
                &format_args!("{{{}}}", self.ground.format_subset(a)),
                &format_args!("{{{}}}", self.ground.format_subset(self.cl(a))),
            );
        }
        map.finish()
    }
}
