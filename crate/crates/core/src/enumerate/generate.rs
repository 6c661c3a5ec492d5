use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorClass;
use crate::error::{Error, Result};
use crate::maps::SpaceMap;
use crate::separation::{separated_pairs, SeparationRelation};
use crate::space::Space;
use crate::subset::{GroundSet, SubsetMask};

/// Number of up-sets of the Boolean lattice on n atoms, for n = 0..=8.
const DEDEKIND: [u128; 9] = [
    2,
    3,
    6,
    20,
    168,
    7581,
    7_828_354,
    2_414_682_040_998,
    56_130_437_228_687_557_907_788,
];

/// Size of `class` on an `n`-element carrier; exact for `All`, `Isotonic` and
/// `ExteriorSeparated`, an upper bound otherwise. Saturates at `u128::MAX`.
pub fn class_size(n: usize, class: GeneratorClass) -> u128 {
    match class {
        GeneratorClass::All => {
            let exp = (n as u32).saturating_mul(1 << n);
            2u128.checked_pow(exp).unwrap_or(u128::MAX)
        }
        GeneratorClass::Isotonic
        | GeneratorClass::IsotonicPointwiseSymmetric
        | GeneratorClass::EnlargingIsotonic => DEDEKIND
            .get(n)
            .and_then(|m| m.checked_pow(n as u32))
            .unwrap_or(u128::MAX),
        GeneratorClass::ExteriorSeparated => exterior_separated_count(n),
    }
}

/// An exterior-separated table is: any cl(∅), a symmetric membership
/// relation on singletons, and for |A| ≥ 2 any superset of
/// { x : cl({x}) ∩ A ≠ ∅ }.
fn exterior_separated_count(n: usize) -> u128 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    if pairs.len() > 20 {
        return class_size(n, GeneratorClass::All);
    }
    let mut total: u128 = 0;
    for choice in 0u32..1 << pairs.len() {
        let mut singles = vec![0u32; n];
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if choice >> k & 1 == 1 {
                singles[x] |= 1 << y;
                singles[y] |= 1 << x;
            }
        }
        let mut product: u128 = 1;
        for a in 0u32..1 << n {
            if a.count_ones() < 2 {
                continue;
            }
            let forced = (0..n).filter(|&x| singles[x] & a != 0).count();
            product = product.saturating_mul(1u128 << (n - forced));
        }
        total = total.saturating_add(product);
    }
    total.saturating_mul(1u128 << n)
}

fn letters(n: usize) -> Result<Arc<GroundSet>> {
    Ok(Arc::new(GroundSet::letters(n)?))
}

fn space_cost(n: usize) -> u128 {
    1u128 << (2 * n)
}

/// Every space of `class` on the carrier `{a, b, ...}` of size `n`, once
/// each, in lexicographic order of the closure table.
///
/// Fails with `UniverseTooLarge` when the class size times 4^n subset-pair
/// evaluations exceeds `budget`.
pub fn enumerate_spaces(n: usize, class: GeneratorClass, budget: u64) -> Result<SpaceStream> {
    let ground = letters(n)?;
    let required = class_size(n, class).saturating_mul(space_cost(n));
    if required > budget as u128 {
        return Err(Error::UniverseTooLarge { required, budget });
    }
    Ok(SpaceStream::new(ground, class))
}

/// Depth-first search over table entries in index order. Each entry ranges
/// over supersets of a lower bound derived from earlier entries, so the
/// emitted tables come out in lexicographic order. Isotonicity is enforced
/// by the lower bound (every immediate subset has a smaller index); other
/// class constraints prune partial tables as soon as the entries they
/// mention are fixed.
pub struct SpaceStream {
    ground: Arc<GroundSet>,
    class: GeneratorClass,
    full: u32,
    table: Vec<u32>,
    lower: Vec<u32>,
    free: Vec<u32>,
    chosen: Vec<u32>,
    started: bool,
    done: bool,
}

impl SpaceStream {
    fn new(ground: Arc<GroundSet>, class: GeneratorClass) -> Self {
        let size = ground.subset_count();
        SpaceStream {
            full: ground.full().bits(),
            ground,
            class,
            table: vec![0; size],
            lower: vec![0; size],
            free: vec![0; size],
            chosen: vec![0; size],
            started: false,
            done: false,
        }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    fn lower_bound(&self, k: usize) -> u32 {
        let isotonic = !matches!(
            self.class,
            GeneratorClass::All | GeneratorClass::ExteriorSeparated
        );
        let mut lower = 0;
        if isotonic {
            let mut rest = k;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                lower |= self.table[k & !bit];
                rest &= rest - 1;
            }
        }
        if self.class == GeneratorClass::EnlargingIsotonic {
            lower |= k as u32;
        }
        lower
    }

    fn partial_ok(&self, k: usize, value: u32) -> bool {
        match self.class {
            GeneratorClass::All | GeneratorClass::Isotonic | GeneratorClass::EnlargingIsotonic => {
                true
            }
            GeneratorClass::IsotonicPointwiseSymmetric => {
                if !k.is_power_of_two() {
                    return true;
                }
                let y = k.trailing_zeros();
                (0..y).all(|x| (value >> x & 1) == (self.table[1 << x] >> y & 1))
            }
            GeneratorClass::ExteriorSeparated => {
                // For every set A and point x: x ∈ cl(A) or cl({x}) ∩ A = ∅.
                let n = self.ground.len();
                let a = k as u32;
                let against_singles = (0..n).filter(|&x| 1 << x <= k).all(|x| {
                    let single = if 1 << x == k {
                        value
                    } else {
                        self.table[1 << x]
                    };
                    value >> x & 1 == 1 || single & a == 0
                });
                if !against_singles {
                    return false;
                }
                if k.is_power_of_two() {
                    let y = k.trailing_zeros();
                    return (0..k).all(|b| self.table[b] >> y & 1 == 1 || value & b as u32 == 0);
                }
                true
            }
        }
    }

    fn settle(&mut self, k: usize, mut sub: u32) -> bool {
        let (lower, free) = (self.lower[k], self.free[k]);
        loop {
            let value = lower | sub;
            if self.partial_ok(k, value) {
                self.table[k] = value;
                self.chosen[k] = sub;
                return true;
            }
            sub = next_subset(sub, free);
            if sub == 0 {
                return false;
            }
        }
    }

    fn first(&mut self, k: usize) -> bool {
        self.lower[k] = self.lower_bound(k);
        self.free[k] = self.full & !self.lower[k];
        self.settle(k, 0)
    }

    fn advance(&mut self, k: usize) -> bool {
        let sub = next_subset(self.chosen[k], self.free[k]);
        sub != 0 && self.settle(k, sub)
    }
}

/// Next subset of `within` after `sub` in ascending order; 0 once exhausted.
fn next_subset(sub: u32, within: u32) -> u32 {
    (sub | !within).wrapping_add(1) & within
}

impl Iterator for SpaceStream {
    type Item = Space;

    fn next(&mut self) -> Option<Space> {
        if self.done {
            return None;
        }
        let last = self.table.len() - 1;
        let (mut k, mut fresh) = if self.started {
            (last, false)
        } else {
            (0, true)
        };
        self.started = true;
        loop {
            let ok = if fresh {
                self.first(k)
            } else {
                self.advance(k)
            };
            if !ok {
                if k == 0 {
                    self.done = true;
                    return None;
                }
                k -= 1;
                fresh = false;
                continue;
            }
            if k < last {
                k += 1;
                fresh = true;
                continue;
            }
            let space = Space::from_raw(self.ground.clone(), &self.table);
            if self.class.contains(&space) {
                return Some(space);
            }
            fresh = false;
        }
    }
}

/// Seeded random spaces of `class`; every draw is a member by construction.
pub fn sample_spaces(
    n: usize,
    class: GeneratorClass,
    count: usize,
    seed: u64,
) -> Result<SpaceSampler> {
    Ok(SpaceSampler {
        ground: letters(n)?,
        class,
        rng: ChaCha8Rng::seed_from_u64(seed),
        remaining: count,
    })
}

pub struct SpaceSampler {
    ground: Arc<GroundSet>,
    class: GeneratorClass,
    rng: ChaCha8Rng,
    remaining: usize,
}

impl Iterator for SpaceSampler {
    type Item = Space;

    fn next(&mut self) -> Option<Space> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(random_space(&self.ground, self.class, &mut self.rng))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

/// Random subset of `within`, each member kept with probability `density`.
fn random_bits(rng: &mut impl Rng, within: u32, density: f64) -> u32 {
    SubsetMask::from_bits(within)
        .elements()
        .filter(|_| rng.random_bool(density))
        .fold(0, |acc, i| acc | 1 << i)
}

/// Symmetric singleton closures: bit y of `singles[x]` iff bit x of `singles[y]`.
fn random_symmetric(rng: &mut impl Rng, n: usize, density: f64) -> Vec<u32> {
    let mut singles = vec![0u32; n];
    for x in 0..n {
        for y in x..n {
            if rng.random_bool(density) {
                singles[x] |= 1 << y;
                singles[y] |= 1 << x;
            }
        }
    }
    singles
}

pub(crate) fn random_space(
    ground: &Arc<GroundSet>,
    class: GeneratorClass,
    rng: &mut impl Rng,
) -> Space {
    let n = ground.len();
    let size = ground.subset_count();
    let full = ground.full().bits();
    let density: f64 = rng.random_range(0.05..0.95);
    let mut table = vec![0u32; size];
    let immediate_union = |table: &[u32], k: usize| {
        SubsetMask::from_bits(k as u32)
            .elements()
            .fold(0, |acc, x| acc | table[k & !(1 << x)])
    };
    match class {
        GeneratorClass::All => {
            for entry in table.iter_mut() {
                *entry = random_bits(rng, full, density);
            }
        }
        GeneratorClass::Isotonic | GeneratorClass::EnlargingIsotonic => {
            let enlarging = class == GeneratorClass::EnlargingIsotonic;
            for k in 0..size {
                let mut lower = immediate_union(&table, k);
                if enlarging {
                    lower |= k as u32;
                }
                table[k] = lower | random_bits(rng, full & !lower, density);
            }
        }
        GeneratorClass::IsotonicPointwiseSymmetric => {
            let singles = random_symmetric(rng, n, density);
            let common = singles.iter().fold(full, |acc, s| acc & s);
            table[0] = random_bits(rng, common, density);
            for (x, s) in singles.iter().enumerate() {
                table[1 << x] = *s;
            }
            for k in 3..size {
                if k.is_power_of_two() {
                    continue;
                }
                let lower = immediate_union(&table, k);
                table[k] = lower | random_bits(rng, full & !lower, density);
            }
        }
        GeneratorClass::ExteriorSeparated => {
            let singles = random_symmetric(rng, n, density);
            table[0] = random_bits(rng, full, density);
            for (x, s) in singles.iter().enumerate() {
                table[1 << x] = *s;
            }
            for (k, entry) in table.iter_mut().enumerate().skip(3) {
                if k.is_power_of_two() {
                    continue;
                }
                let forced = (0..n)
                    .filter(|&x| singles[x] & k as u32 != 0)
                    .fold(0, |acc, x| acc | 1 << x);
                *entry = forced | random_bits(rng, full & !forced, density);
            }
        }
    }
    let space = Space::from_raw(ground.clone(), &table);
    debug_assert!(
        class.contains(&space),
        "sampler produced a non-member of {class:?}"
    );
    space
}

/// All total functions from the carrier of `x` to the carrier of `y`,
/// lexicographic in the assignment vector.
pub fn enumerate_maps(x: &Space, y: &Space, budget: u64) -> Result<MapStream> {
    let required = (y.n() as u128)
        .checked_pow(x.n() as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::UniverseTooLarge { required, budget });
    }
    Ok(MapStream {
        domain: x.clone(),
        codomain: y.clone(),
        next: Some(vec![0; x.n()]),
    })
}

pub struct MapStream {
    domain: Space,
    codomain: Space,
    next: Option<Vec<usize>>,
}

impl Iterator for MapStream {
    type Item = SpaceMap;

    fn next(&mut self) -> Option<SpaceMap> {
        let current = self.next.take()?;
        let mut following = current.clone();
        let radix = self.codomain.n();
        let mut k = following.len();
        self.next = loop {
            if k == 0 {
                break None;
            }
            k -= 1;
            following[k] += 1;
            if following[k] < radix {
                break Some(following);
            }
            following[k] = 0;
        };
        Some(
            SpaceMap::new(self.domain.clone(), self.codomain.clone(), current)
                .expect("odometer stays within the codomain"),
        )
    }
}

/// Canonical unordered pairs (A ≤ B) of an `n`-element carrier, ascending.
fn canonical_pairs(n: usize) -> Vec<(SubsetMask, SubsetMask)> {
    let size = 1u32 << n;
    (0..size)
        .flat_map(|a| (a..size).map(move |b| (SubsetMask::from_bits(a), SubsetMask::from_bits(b))))
        .collect()
}

/// Every separation relation on `n` elements: each subset of the canonical
/// pairs, ordered by the binary counter over that pair list.
pub fn all_relations(n: usize, budget: u64) -> Result<RelationStream> {
    let ground = letters(n)?;
    let pairs = canonical_pairs(n);
    let required = 2u128
        .checked_pow(pairs.len() as u32)
        .unwrap_or(u128::MAX)
        .saturating_mul(space_cost(n));
    if pairs.len() >= 64 || required > budget as u128 {
        return Err(Error::UniverseTooLarge { required, budget });
    }
    Ok(RelationStream {
        ground,
        end: 1u64 << pairs.len(),
        pairs,
        counter: 0,
    })
}

pub struct RelationStream {
    ground: Arc<GroundSet>,
    pairs: Vec<(SubsetMask, SubsetMask)>,
    counter: u64,
    end: u64,
}

impl Iterator for RelationStream {
    type Item = SeparationRelation;

    fn next(&mut self) -> Option<SeparationRelation> {
        if self.counter == self.end {
            return None;
        }
        let bits = self.counter;
        self.counter += 1;
        let chosen = (0..self.pairs.len())
            .filter(|k| bits >> k & 1 == 1)
            .map(|k| self.pairs[k]);
        Some(
            SeparationRelation::from_pairs(self.ground.clone(), chosen)
                .expect("canonical pairs are valid"),
        )
    }
}

/// Seeded random relations: alternately an arbitrary pair set, and the
/// separated pairs of a random isotonic pointwise-symmetric space, toggled
/// at one pair half of the time. Roughly a mix of relations that do and do
/// not satisfy the reconstruction conditions.
pub fn sample_relations(n: usize, count: usize, seed: u64) -> Result<Vec<SeparationRelation>> {
    let ground = letters(n)?;
    let pairs = canonical_pairs(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let rel = if i % 2 == 0 {
            let density: f64 = rng.random_range(0.05..0.95);
            let chosen: Vec<_> = pairs
                .iter()
                .copied()
                .filter(|_| rng.random_bool(density))
                .collect();
            SeparationRelation::from_pairs(ground.clone(), chosen)?
        } else {
            let space = random_space(
                &ground,
                GeneratorClass::IsotonicPointwiseSymmetric,
                &mut rng,
            );
            let mut rel = separated_pairs(&space);
            if rng.random_bool(0.5) {
                let (a, b) = pairs[rng.random_range(0..pairs.len())];
                if !rel.remove(a, b) {
                    rel.insert(a, b)?;
                }
            }
            rel
        };
        out.push(rel);
    }
    Ok(out)
}
