use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::claims::{find_claim, Atom, Claim, MapProp, RelationProp, SpaceProp, Universe};
use super::generate::{
    all_relations, class_size, enumerate_maps, enumerate_spaces, random_space, sample_relations,
};
use super::GeneratorClass;
use crate::error::{Error, Result};
use crate::maps::SpaceMap;
use crate::separation::{
    check_relation_conditions, closure_by_formula, closure_from_relation, relation_axiom_criteria,
    separated_pairs, AxiomCriteria, ConditionReport, SeparationRelation,
};
use crate::space::Space;
use crate::subset::GroundSet;

/// Default budget, in (instance, subset-pair) evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Upper limit on the number of draws when a universe has to be sampled.
pub const DEFAULT_SAMPLE_CAP: u64 = 20_000;

/// Stored violations per report; the count is always exact.
const KEPT_VIOLATIONS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: u64,
    pub seed: u64,
    pub parallel: bool,
    pub sample_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
            parallel: true,
            sample_cap: DEFAULT_SAMPLE_CAP,
        }
    }
}

/// A single element of a claim's universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    Space(Space),
    Relation(SeparationRelation),
    Map(SpaceMap),
}

impl Instance {
    /// Carrier size; for maps, that of the domain.
    pub fn carrier_size(&self) -> usize {
        match self {
            Instance::Space(s) => s.n(),
            Instance::Relation(r) => r.ground().len(),
            Instance::Map(f) => f.domain().n(),
        }
    }

    /// Total order used to make merged reports independent of scheduling:
    /// kind, carrier size, then table entries (and the assignment for maps).
    pub(crate) fn sort_key(&self) -> Vec<u32> {
        let table = |s: &Space| s.table().iter().map(|m| m.bits()).collect::<Vec<_>>();
        match self {
            Instance::Space(s) => [vec![0, s.n() as u32], table(s)].concat(),
            Instance::Relation(r) => {
                let mut key = vec![1, r.ground().len() as u32];
                key.extend(r.iter().flat_map(|(a, b)| [a.bits(), b.bits()]));
                key
            }
            Instance::Map(f) => [
                vec![2, f.domain().n() as u32],
                table(f.domain()),
                vec![f.codomain().n() as u32],
                table(f.codomain()),
                f.assignment().iter().map(|&t| t as u32).collect(),
            ]
            .concat(),
        }
    }
}

/// Lazily computed facts about one space.
struct SpaceFacts<'a> {
    space: &'a Space,
    separated: Option<SeparationRelation>,
    criteria: Option<AxiomCriteria>,
}

impl<'a> SpaceFacts<'a> {
    fn new(space: &'a Space) -> Self {
        SpaceFacts {
            space,
            separated: None,
            criteria: None,
        }
    }

    fn separated(&mut self) -> &SeparationRelation {
        self.separated
            .get_or_insert_with(|| separated_pairs(self.space))
    }

    fn criteria(&mut self) -> AxiomCriteria {
        if let Some(c) = self.criteria {
            return c;
        }
        let c = relation_axiom_criteria(self.separated());
        self.criteria = Some(c);
        c
    }

    fn eval(&mut self, prop: SpaceProp) -> bool {
        let s = self.space;
        match prop {
            SpaceProp::Grounded => s.is_grounded(),
            SpaceProp::Isotonic => s.is_isotonic(),
            SpaceProp::IsotonicPairwise => s.is_isotonic_pairwise(),
            SpaceProp::Enlarging => s.is_enlarging(),
            SpaceProp::Idempotent => s.is_idempotent(),
            SpaceProp::Sublinear => s.is_sublinear(),
            SpaceProp::PointwiseSymmetric => s.is_pointwise_symmetric(),
            SpaceProp::R0 => s.is_r0(),
            SpaceProp::ExteriorSeparated => s.is_exterior_separated(),
            SpaceProp::SeparationExteriorForm => s.separation_matches_exterior_form(),
            SpaceProp::ClosureFormula => closure_by_formula(self.separated()).table() == s.table(),
            SpaceProp::Roundtrip => {
                closure_from_relation(self.separated()).is_ok_and(|rebuilt| rebuilt == *s)
            }
            SpaceProp::GroundedCriterion => self.criteria().grounded,
            SpaceProp::EnlargingCriterion => self.criteria().enlarging,
            SpaceProp::SublinearCriterion => self.criteria().sublinear,
            SpaceProp::IdempotentSufficient => self.criteria().idempotent_sufficient,
        }
    }
}

struct RelationFacts<'a> {
    rel: &'a SeparationRelation,
    report: Option<ConditionReport>,
    formula: Option<Space>,
}

impl<'a> RelationFacts<'a> {
    fn report(&mut self) -> &ConditionReport {
        self.report
            .get_or_insert_with(|| check_relation_conditions(self.rel))
    }

    fn formula(&mut self) -> &Space {
        self.formula
            .get_or_insert_with(|| closure_by_formula(self.rel))
    }

    fn eval(&mut self, prop: RelationProp) -> bool {
        match prop {
            RelationProp::Condition1 => self.report().condition1,
            RelationProp::Condition2 => self.report().condition2,
            RelationProp::FormulaIsotonic => self.formula().is_isotonic(),
            RelationProp::FormulaPointwiseSymmetric => self.formula().is_pointwise_symmetric(),
            RelationProp::FormulaSeparatesExactly => separated_pairs(self.formula()) == *self.rel,
        }
    }
}

fn eval_map(f: &SpaceMap, prop: MapProp) -> bool {
    match prop {
        MapProp::ClosurePreserving => f.is_closure_preserving(),
        MapProp::Continuous => f.is_continuous(),
        MapProp::Nonseparating => f.is_nonseparating(),
        MapProp::PreimageSeparating => f.is_preimage_separating(),
    }
}

/// Outcome of checking one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub premise: bool,
    pub holds: bool,
}

impl Claim {
    /// Evaluates hypothesis and conclusion on `instance`.
    ///
    /// # Panics
    /// If the instance kind does not belong to the claim's universe.
    pub fn check(&self, instance: &Instance) -> Verdict {
        let mut lookup: Box<dyn FnMut(Atom) -> bool + '_> = match instance {
            Instance::Space(s) => {
                let mut facts = SpaceFacts::new(s);
                Box::new(move |atom| match atom {
                    Atom::Space(p) => facts.eval(p),
                    other => panic!("{other:?} does not apply to a space"),
                })
            }
            Instance::Relation(rel) => {
                let mut facts = RelationFacts {
                    rel,
                    report: None,
                    formula: None,
                };
                Box::new(move |atom| match atom {
                    Atom::Relation(p) => facts.eval(p),
                    other => panic!("{other:?} does not apply to a relation"),
                })
            }
            Instance::Map(f) => {
                let mut dom = SpaceFacts::new(f.domain());
                let mut cod = SpaceFacts::new(f.codomain());
                Box::new(move |atom| match atom {
                    Atom::Domain(p) => dom.eval(p),
                    Atom::Codomain(p) => cod.eval(p),
                    Atom::Map(p) => eval_map(f, p),
                    other => panic!("{other:?} does not apply to a map"),
                })
            }
        };
        let premise = self.hypothesis.eval(&mut lookup);
        let holds = !premise || self.conclusion.eval(&mut lookup);
        Verdict { premise, holds }
    }

    /// True when `instance` satisfies the hypothesis but not the conclusion.
    pub fn is_violated_by(&self, instance: &Instance) -> bool {
        !self.check(instance).holds
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: String,
    pub n: usize,
    pub instances_checked: u64,
    /// Instances satisfying the hypothesis; zero means the check was vacuous.
    pub premise_hits: u64,
    pub violation_count: u64,
    /// The first few violations in canonical order.
    pub violations: Vec<Instance>,
    pub exhaustive: bool,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Equality on everything but timing.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        self.claim == other.claim
            && self.n == other.n
            && self.instances_checked == other.instances_checked
            && self.premise_hits == other.premise_hits
            && self.violation_count == other.violation_count
            && self.violations == other.violations
            && self.exhaustive == other.exhaustive
    }

    /// `checked=<k> violations=<v> exhaustive=<bool>`.
    pub fn summary(&self) -> String {
        format!(
            "checked={} violations={} exhaustive={}",
            self.instances_checked, self.violation_count, self.exhaustive
        )
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    premise_hits: u64,
    violation_count: u64,
    violations: Vec<Instance>,
}

impl Tally {
    fn record(mut self, claim: &Claim, instance: Instance) -> Self {
        let verdict = claim.check(&instance);
        self.checked += 1;
        self.premise_hits += verdict.premise as u64;
        if !verdict.holds {
            self.violation_count += 1;
            self.violations.push(instance);
            if self.violations.len() > 4 * KEPT_VIOLATIONS {
                self.trim();
            }
        }
        self
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.premise_hits += other.premise_hits;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.trim();
        self
    }

    /// Keeps the smallest violations by canonical key, so the result does not
    /// depend on how the stream was split.
    fn trim(&mut self) {
        self.violations.sort_by_cached_key(Instance::sort_key);
        self.violations.truncate(KEPT_VIOLATIONS);
    }
}

type InstanceIter = Box<dyn Iterator<Item = Instance> + Send>;

fn letters(n: usize) -> Result<Arc<GroundSet>> {
    Ok(Arc::new(GroundSet::letters(n)?))
}

fn universe_size(universe: Universe, n: usize) -> u128 {
    match universe {
        Universe::Spaces(class) => class_size(n, class),
        Universe::Relations => {
            let side = 1u128 << n;
            let pairs = side * (side + 1) / 2;
            u32::try_from(pairs)
                .ok()
                .and_then(|p| 2u128.checked_pow(p))
                .unwrap_or(u128::MAX)
        }
        Universe::Maps { domain, codomain } => class_size(n, domain)
            .saturating_mul(class_size(n, codomain))
            .saturating_mul((n as u128).checked_pow(n as u32).unwrap_or(u128::MAX)),
    }
}

/// Evaluations needed to sweep `universe` exhaustively at carrier size `n`:
/// instances times 4^n subset pairs.
pub fn universe_cost(universe: Universe, n: usize) -> u128 {
    universe_size(universe, n).saturating_mul(1u128 << (2 * n))
}

fn exhaustive_instances(universe: Universe, n: usize) -> Result<InstanceIter> {
    Ok(match universe {
        Universe::Spaces(class) => {
            Box::new(enumerate_spaces(n, class, u64::MAX)?.map(Instance::Space))
        }
        Universe::Relations => Box::new(all_relations(n, u64::MAX)?.map(Instance::Relation)),
        Universe::Maps { domain, codomain } => {
            let doms: Vec<Space> = enumerate_spaces(n, domain, u64::MAX)?.collect();
            let cods: Arc<Vec<Space>> =
                Arc::new(enumerate_spaces(n, codomain, u64::MAX)?.collect());
            Box::new(doms.into_iter().flat_map(move |x| {
                let cods = cods.clone();
                (0..cods.len()).flat_map(move |k| {
                    enumerate_maps(&x, &cods[k], u64::MAX)
                        .expect("unbounded budget")
                        .map(Instance::Map)
                })
            }))
        }
    })
}

fn sampled_instances(
    universe: Universe,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<InstanceIter> {
    Ok(match universe {
        Universe::Spaces(class) => {
            Box::new(super::generate::sample_spaces(n, class, count, seed)?.map(Instance::Space))
        }
        Universe::Relations => Box::new(
            sample_relations(n, count, seed)?
                .into_iter()
                .map(Instance::Relation),
        ),
        Universe::Maps { domain, codomain } => {
            let ground = letters(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..count).map(move |_| {
                let x = random_space(&ground, domain, &mut rng);
                let y = random_space(&ground, codomain, &mut rng);
                let assignment = (0..n).map(|_| rng.random_range(0..n)).collect();
                Instance::Map(SpaceMap::new(x, y, assignment).expect("assignment within carrier"))
            }))
        }
    })
}

/// Chooses exhaustive enumeration when the universe fits the budget and a
/// seeded sample otherwise.
fn instances_for(
    universe: Universe,
    n: usize,
    opts: &VerifyOptions,
) -> Result<(InstanceIter, bool)> {
    letters(n)?;
    if universe_cost(universe, n) <= opts.budget as u128 {
        return Ok((exhaustive_instances(universe, n)?, true));
    }
    let per_instance = 1u64 << (2 * n).min(63);
    let count = (opts.budget / per_instance).clamp(1, opts.sample_cap.max(1));
    Ok((
        sampled_instances(universe, n, count as usize, opts.seed)?,
        false,
    ))
}

/// Sweeps claim `id` over its universe at carrier size `n`.
pub fn verify_claim(id: &str, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let claim = find_claim(id)?;
    let start = Instant::now();
    let (instances, exhaustive) = instances_for(claim.universe, n, opts)?;
    let mut tally = if opts.parallel {
        instances
            .par_bridge()
            .fold(Tally::default, |t, inst| t.record(claim, inst))
            .reduce(Tally::default, Tally::merge)
    } else {
        instances.fold(Tally::default(), |t, inst| t.record(claim, inst))
    };
    tally.trim();
    Ok(VerificationReport {
        claim: claim.id.to_string(),
        n,
        instances_checked: tally.checked,
        premise_hits: tally.premise_hits,
        violation_count: tally.violation_count,
        violations: tally.violations,
        exhaustive,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntOutcome {
    pub claim: String,
    pub witness: Instance,
    /// Instances examined across all carrier sizes, including the witness.
    pub instances_checked: u64,
    /// False if the carrier size holding the witness had to be sampled, in
    /// which case the witness need not be the first in enumeration order.
    pub exhaustive: bool,
}

/// Searches carrier sizes 1..=n_max in order for an instance satisfying the
/// hypothesis of `id` but not its conclusion. Within a size, the first such
/// instance in enumeration order is returned.
pub fn hunt_counterexample(
    id: &str,
    n_max: usize,
    opts: &VerifyOptions,
) -> Result<Option<HuntOutcome>> {
    let claim = find_claim(id)?;
    let mut checked = 0u64;
    for n in 1..=n_max {
        let (instances, exhaustive) = instances_for(claim.universe, n, opts)?;
        for instance in instances {
            checked += 1;
            if claim.is_violated_by(&instance) {
                return Ok(Some(HuntOutcome {
                    claim: claim.id.to_string(),
                    witness: instance,
                    instances_checked: checked,
                    exhaustive,
                }));
            }
        }
    }
    Ok(None)
}

impl From<GeneratorClass> for Universe {
    fn from(class: GeneratorClass) -> Self {
        Universe::Spaces(class)
    }
}

#[allow(dead_code)]
fn _assert_send() {
    fn is_send<T: Send>() {}
    is_send::<Instance>();
    is_send::<Error>();
}
