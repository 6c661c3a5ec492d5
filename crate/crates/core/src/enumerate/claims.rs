//! Claims as data: each one names a universe and gives its hypothesis and
//! conclusion as formulas over named predicates. The predicates are the
//! definitional evaluators from `space`, `separation` and `maps`; no claim
//! is ever evaluated by appeal to another.

use std::sync::LazyLock;

use super::GeneratorClass;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceProp {
    Grounded,
    /// Single-element-drop test.
    Isotonic,
    /// All pairs A ⊆ B.
    IsotonicPairwise,
    Enlarging,
    Idempotent,
    Sublinear,
    PointwiseSymmetric,
    R0,
    ExteriorSeparated,
    /// Separation agrees with the A ⊆ ext(B), B ⊆ ext(A) form on every pair.
    SeparationExteriorForm,
    /// cl(A) = { x : {{x}, A} not separated } for every A.
    ClosureFormula,
    /// Reconstruction from the separated pairs gives the space back.
    Roundtrip,
    GroundedCriterion,
    EnlargingCriterion,
    SublinearCriterion,
    IdempotentSufficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationProp {
    Condition1,
    Condition2,
    /// The formula closure cl(A) = { x : {{x}, A} ∉ rel } is isotonic.
    FormulaIsotonic,
    FormulaPointwiseSymmetric,
    /// The formula closure separates exactly the pairs of the relation.
    FormulaSeparatesExactly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapProp {
    ClosurePreserving,
    Continuous,
    Nonseparating,
    PreimageSeparating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Space(SpaceProp),
    Domain(SpaceProp),
    Codomain(SpaceProp),
    Relation(RelationProp),
    Map(MapProp),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    Atom(Atom),
    Not(Box<Formula>),
    All(Vec<Formula>),
    Any(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Evaluates with short-circuiting; `atom` is only called when needed.
    pub fn eval(&self, atom: &mut impl FnMut(Atom) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::Atom(a) => atom(*a),
            Formula::Not(f) => !f.eval(atom),
            Formula::All(fs) => fs.iter().all(|f| f.eval(atom)),
            Formula::Any(fs) => fs.iter().any(|f| f.eval(atom)),
            Formula::Implies(p, q) => !p.eval(atom) || q.eval(atom),
            Formula::Iff(p, q) => p.eval(atom) == q.eval(atom),
        }
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::True => {}
            Formula::Atom(a) => out.push(*a),
            Formula::Not(f) => f.collect_atoms(out),
            Formula::All(fs) | Formula::Any(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Implies(p, q) | Formula::Iff(p, q) => {
                p.collect_atoms(out);
                q.collect_atoms(out);
            }
        }
    }
}

/// What a claim quantifies over, at a fixed carrier size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Universe {
    Spaces(GeneratorClass),
    Relations,
    /// Every (domain, codomain, map) triple with both carriers of the same size.
    Maps {
        domain: GeneratorClass,
        codomain: GeneratorClass,
    },
}

impl Universe {
    /// Whether `atom` can be evaluated on instances of this universe.
    pub fn admits(&self, atom: Atom) -> bool {
        matches!(
            (self, atom),
            (Universe::Spaces(_), Atom::Space(_))
                | (Universe::Relations, Atom::Relation(_))
                | (
                    Universe::Maps { .. },
                    Atom::Domain(_) | Atom::Codomain(_) | Atom::Map(_)
                )
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Every instance satisfying the hypothesis satisfies the conclusion.
    Theorem,
    /// A converse that fails in general; witnesses are expected to exist.
    Converse,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub universe: Universe,
    pub hypothesis: Formula,
    pub conclusion: Formula,
    pub polarity: Polarity,
}

impl Claim {
    pub fn atoms(&self) -> Vec<Atom> {
        let mut atoms = self.hypothesis.atoms();
        atoms.extend(self.conclusion.atoms());
        atoms
    }
}

fn sp(p: SpaceProp) -> Formula {
    Formula::Atom(Atom::Space(p))
}

fn dom(p: SpaceProp) -> Formula {
    Formula::Atom(Atom::Domain(p))
}

fn cod(p: SpaceProp) -> Formula {
    Formula::Atom(Atom::Codomain(p))
}

fn rel(p: RelationProp) -> Formula {
    Formula::Atom(Atom::Relation(p))
}

fn map(p: MapProp) -> Formula {
    Formula::Atom(Atom::Map(p))
}

fn all(fs: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::All(fs.into_iter().collect())
}

fn implies(p: Formula, q: Formula) -> Formula {
    Formula::Implies(Box::new(p), Box::new(q))
}

fn iff(p: Formula, q: Formula) -> Formula {
    Formula::Iff(Box::new(p), Box::new(q))
}

fn spaces(class: GeneratorClass) -> Universe {
    Universe::Spaces(class)
}

fn maps(domain: GeneratorClass, codomain: GeneratorClass) -> Universe {
    Universe::Maps { domain, codomain }
}

static CATALOG: LazyLock<Vec<Claim>> = LazyLock::new(build_catalog);

/// Every claim, theorems first, in a fixed order.
pub fn catalog() -> &'static [Claim] {
    &CATALOG
}

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    catalog()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

fn build_catalog() -> Vec<Claim> {
    use GeneratorClass as G;
    use MapProp::*;
    use Polarity::*;
    use RelationProp::*;
    use SpaceProp::*;

    let theorem = |id, statement, universe, hypothesis, conclusion| Claim {
        id,
        statement,
        universe,
        hypothesis,
        conclusion,
        polarity: Theorem,
    };
    let converse = |id, statement, universe, hypothesis, conclusion| Claim {
        id,
        statement,
        universe,
        hypothesis,
        conclusion,
        polarity: Converse,
    };

    vec![
        theorem(
            "axioms-equiv-check",
            "the fast isotonicity test agrees with the pairwise one, and separation agrees with its exterior form",
            spaces(G::All),
            Formula::True,
            all([
                iff(sp(Isotonic), sp(IsotonicPairwise)),
                sp(SeparationExteriorForm),
            ]),
        ),
        theorem(
            "cor-r0",
            "exterior points separated implies pointwise-symmetric and R0",
            spaces(G::All),
            sp(ExteriorSeparated),
            all([sp(PointwiseSymmetric), sp(R0)]),
        ),
        theorem(
            "thm-equiv-isotonic",
            "for isotonic closures, exterior separation, pointwise symmetry and R0 coincide",
            spaces(G::Isotonic),
            sp(Isotonic),
            all([
                iff(sp(PointwiseSymmetric), sp(R0)),
                iff(sp(R0), sp(ExteriorSeparated)),
            ]),
        ),
        theorem(
            "thm-clthm-formula",
            "with exterior points separated, cl(A) = { x : {{x}, A} not separated }",
            spaces(G::ExteriorSeparated),
            sp(ExteriorSeparated),
            sp(ClosureFormula),
        ),
        theorem(
            "thm-reconstruct",
            "a relation meeting both conditions is exactly the separated pairs of the isotonic pointwise-symmetric formula closure",
            Universe::Relations,
            all([rel(Condition1), rel(Condition2)]),
            all([
                rel(FormulaIsotonic),
                rel(FormulaPointwiseSymmetric),
                rel(FormulaSeparatesExactly),
            ]),
        ),
        theorem(
            "thm-roundtrip",
            "an isotonic pointwise-symmetric closure is recovered from its separated pairs",
            spaces(G::IsotonicPointwiseSymmetric),
            all([sp(Isotonic), sp(PointwiseSymmetric)]),
            sp(Roundtrip),
        ),
        theorem(
            "thm-crit-grounded",
            "with exterior points separated, grounded iff every {{x}, {}} is separated",
            spaces(G::ExteriorSeparated),
            sp(ExteriorSeparated),
            iff(sp(Grounded), sp(GroundedCriterion)),
        ),
        theorem(
            "thm-crit-enlarging",
            "with exterior points separated, enlarging iff every separated pair is disjoint",
            spaces(G::ExteriorSeparated),
            sp(ExteriorSeparated),
            iff(sp(Enlarging), sp(EnlargingCriterion)),
        ),
        theorem(
            "thm-crit-sublinear",
            "with exterior points separated, sub-linear iff separation from B and C gives separation from B ∪ C",
            spaces(G::ExteriorSeparated),
            sp(ExteriorSeparated),
            iff(sp(Sublinear), sp(SublinearCriterion)),
        ),
        theorem(
            "thm-idem-sufficient",
            "with exterior points separated, an enlarging closure meeting the relation criterion is idempotent",
            spaces(G::ExteriorSeparated),
            all([
                sp(ExteriorSeparated),
                sp(Enlarging),
                sp(IdempotentSufficient),
            ]),
            sp(Idempotent),
        ),
        theorem(
            "thm-idem-necessary",
            "with exterior points separated, an isotonic idempotent closure meets the relation criterion",
            spaces(G::ExteriorSeparated),
            all([sp(ExteriorSeparated), sp(Isotonic), sp(Idempotent)]),
            sp(IdempotentSufficient),
        ),
        theorem(
            "thm-cp-cont",
            "closure-preserving into an isotonic codomain is continuous; continuous from an isotonic domain is closure-preserving",
            maps(G::All, G::All),
            Formula::True,
            all([
                implies(
                    all([map(ClosurePreserving), cod(Isotonic)]),
                    map(Continuous),
                ),
                implies(
                    all([map(Continuous), dom(Isotonic)]),
                    map(ClosurePreserving),
                ),
            ]),
        ),
        theorem(
            "thm-cp-implies-ns",
            "closure-preserving maps are nonseparating",
            maps(G::All, G::All),
            map(ClosurePreserving),
            map(Nonseparating),
        ),
        theorem(
            "cor-cont-implies-ns",
            "continuous maps from an isotonic domain are nonseparating",
            maps(G::Isotonic, G::All),
            all([dom(Isotonic), map(Continuous)]),
            map(Nonseparating),
        ),
        theorem(
            "thm-preimage",
            "nonseparating into an isotonic codomain gives separated preimages; separated preimages from an isotonic domain give nonseparating",
            maps(G::All, G::All),
            Formula::True,
            all([
                implies(
                    all([map(Nonseparating), cod(Isotonic)]),
                    map(PreimageSeparating),
                ),
                implies(
                    all([map(PreimageSeparating), dom(Isotonic)]),
                    map(Nonseparating),
                ),
            ]),
        ),
        theorem(
            "thm-ns-iff-cp",
            "into a codomain with exterior points separated, nonseparating iff closure-preserving",
            maps(G::All, G::ExteriorSeparated),
            cod(ExteriorSeparated),
            iff(map(Nonseparating), map(ClosurePreserving)),
        ),
        theorem(
            "cor-ns-iff-cont",
            "between isotonic spaces with a pointwise-symmetric codomain, nonseparating iff continuous",
            maps(G::Isotonic, G::IsotonicPointwiseSymmetric),
            all([dom(Isotonic), cod(Isotonic), cod(PointwiseSymmetric)]),
            iff(map(Nonseparating), map(Continuous)),
        ),
        converse(
            "neg-pws-not-extsep",
            "pointwise symmetry does not imply exterior separation",
            spaces(G::All),
            sp(PointwiseSymmetric),
            sp(ExteriorSeparated),
        ),
        converse(
            "neg-r0-not-extsep",
            "R0 does not imply exterior separation",
            spaces(G::All),
            sp(R0),
            sp(ExteriorSeparated),
        ),
        converse(
            "neg-cont-not-cp",
            "continuity does not imply closure preservation",
            maps(G::All, G::All),
            map(Continuous),
            map(ClosurePreserving),
        ),
        converse(
            "neg-cp-not-cont",
            "closure preservation does not imply continuity",
            maps(G::All, G::All),
            map(ClosurePreserving),
            map(Continuous),
        ),
        converse(
            "neg-ns-not-cp",
            "nonseparating does not imply closure-preserving",
            maps(G::All, G::All),
            map(Nonseparating),
            map(ClosurePreserving),
        ),
        converse(
            "neg-ns-not-cont",
            "nonseparating does not imply continuous",
            maps(G::All, G::All),
            map(Nonseparating),
            map(Continuous),
        ),
    ]
}
