//! Functions between closure spaces and the morphism predicates on them.

use crate::error::{Error, Result};
use crate::space::Space;
use crate::subset::SubsetMask;

/// A total function from the carrier of `domain` to the carrier of `codomain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceMap {
    domain: Space,
    codomain: Space,
    assignment: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MapProfile {
    pub closure_preserving: bool,
    pub continuous: bool,
    pub nonseparating: bool,
    pub preimage_separating: bool,
}

impl SpaceMap {
    /// `assignment[i]` is the codomain element that domain element `i` maps to.
    pub fn new(domain: Space, codomain: Space, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.n() {
            return Err(Error::LengthMismatch {
                expected: domain.n(),
                found: assignment.len(),
            });
        }
        for &target in &assignment {
            codomain.ground().check_element(target)?;
        }
        Ok(SpaceMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(domain: Space, codomain: Space) -> Result<Self> {
        if domain.n() != codomain.n() {
            return Err(Error::GroundMismatch);
        }
        let assignment = (0..domain.n()).collect();
        SpaceMap::new(domain, codomain, assignment)
    }

    pub fn constant(domain: Space, codomain: Space, target: usize) -> Result<Self> {
        let assignment = vec![target; domain.n()];
        SpaceMap::new(domain, codomain, assignment)
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, a: SubsetMask) -> Result<SubsetMask> {
        let a = self.domain.ground().check(a)?;
        Ok(self.image_of(a))
    }

    pub fn preimage(&self, b: SubsetMask) -> Result<SubsetMask> {
        let b = self.codomain.ground().check(b)?;
        Ok(self.preimage_of(b))
    }

    fn image_of(&self, a: SubsetMask) -> SubsetMask {
        a.elements()
            .fold(SubsetMask::EMPTY, |acc, i| acc.with(self.assignment[i]))
    }

    fn preimage_of(&self, b: SubsetMask) -> SubsetMask {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &t)| b.contains(t))
            .fold(SubsetMask::EMPTY, |acc, (i, _)| acc.with(i))
    }

    /// Image of every domain subset, indexed by subset.
    fn image_table(&self) -> Vec<SubsetMask> {
        let mut table = vec![SubsetMask::EMPTY; self.domain.ground().subset_count()];
        for k in 1..table.len() {
            let low = k.trailing_zeros() as usize;
            table[k] = table[k & (k - 1)].with(self.assignment[low]);
        }
        table
    }

    /// Preimage of every codomain subset, indexed by subset.
    fn preimage_table(&self) -> Vec<SubsetMask> {
        let mut fibres = vec![SubsetMask::EMPTY; self.codomain.n()];
        for (i, &t) in self.assignment.iter().enumerate() {
            fibres[t] = fibres[t].with(i);
        }
        let mut table = vec![SubsetMask::EMPTY; self.codomain.ground().subset_count()];
        for k in 1..table.len() {
            let low = k.trailing_zeros() as usize;
            table[k] = table[k & (k - 1)] | fibres[low];
        }
        table
    }

    /// f(cl_X(A)) ⊆ cl_Y(f(A)) for every A ⊆ X.
    pub fn is_closure_preserving(&self) -> bool {
        let img = self.image_table();
        let (x, y) = (&self.domain, &self.codomain);
        x.ground()
            .subsets()
            .all(|a| img[x.cl(a).index()].is_subset(y.cl(img[a.index()])))
    }

    /// cl_X(f⁻¹(B)) ⊆ f⁻¹(cl_Y(B)) for every B ⊆ Y.
    pub fn is_continuous(&self) -> bool {
        let pre = self.preimage_table();
        let (x, y) = (&self.domain, &self.codomain);
        y.ground()
            .subsets()
            .all(|b| x.cl(pre[b.index()]).is_subset(pre[y.cl(b).index()]))
    }

    /// A and B are cl_X-separated whenever f(A) and f(B) are cl_Y-separated.
    pub fn is_nonseparating(&self) -> bool {
        let img = self.image_table();
        let (x, y) = (&self.domain, &self.codomain);
        let subsets = x.ground().subsets();
        subsets.clone().all(|a| {
            subsets
                .clone()
                .skip(a.index())
                .all(|b| x.sep(a, b) || !y.sep(img[a.index()], img[b.index()]))
        })
    }

    /// f⁻¹(C) and f⁻¹(D) are cl_X-separated whenever C and D are cl_Y-separated.
    pub fn is_preimage_separating(&self) -> bool {
        let pre = self.preimage_table();
        let (x, y) = (&self.domain, &self.codomain);
        let subsets = y.ground().subsets();
        subsets.clone().all(|c| {
            subsets
                .clone()
                .skip(c.index())
                .all(|d| !y.sep(c, d) || x.sep(pre[c.index()], pre[d.index()]))
        })
    }

    pub fn profile(&self) -> MapProfile {
        MapProfile {
            closure_preserving: self.is_closure_preserving(),
            continuous: self.is_continuous(),
            nonseparating: self.is_nonseparating(),
            preimage_separating: self.is_preimage_separating(),
        }
    }
}
