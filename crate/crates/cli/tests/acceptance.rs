//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use clospace::enumerate::{
    catalog, class_size, enumerate_spaces, hunt_counterexample, sample_relations, sample_spaces,
    verify_claim, Instance, Polarity, VerifyOptions,
};
use clospace::io::{
    parse_map, parse_relation, parse_space, serialize_instance, serialize_map, serialize_relation,
    serialize_space,
};
use clospace::separation::relation_axiom_criteria;
use clospace::{
    closure_from_relation, separated_pairs, Error, GeneratorClass, SeparationRelation, Space,
    SpaceMap, SubsetMask,
};
use oracle::OSpace;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const UNBOUNDED: u64 = u64::MAX;

fn sequential() -> VerifyOptions {
    VerifyOptions {
        parallel: false,
        ..VerifyOptions::default()
    }
}

fn bits(s: &Space) -> Vec<u32> {
    s.table().iter().map(|m| m.bits()).collect()
}

fn oracle_of(s: &Space) -> OSpace {
    OSpace::from_table(s.n(), &bits(s))
}

/// Every closure table on `n` points, by plain counting in base 2^n.
fn all_tables(n: usize) -> Vec<Vec<u32>> {
    let (len, base) = (1usize << n, 1u64 << n);
    let total = base.pow(len as u32);
    (0..total)
        .map(|mut k| {
            (0..len)
                .map(|_| {
                    let d = (k % base) as u32;
                    k /= base;
                    d
                })
                .collect()
        })
        .collect()
}

fn sweep_clean(id: &str, n: usize, opts: &VerifyOptions) -> Result<(u64, Duration), String> {
    let r = verify_claim(id, n, opts).map_err(|e| e.to_string())?;
    ensure!(r.exhaustive, "{id} n={n} was sampled");
    ensure!(
        r.violation_count == 0,
        "{id} n={n}: {} violations",
        r.violation_count
    );
    Ok((r.instances_checked, r.elapsed))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = verify_claim("cor-r0", 2, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(
        r.instances_checked == 256 && r.exhaustive,
        "universe: {}",
        r.summary()
    );
    ensure!(r.violation_count == 0, "{}", r.summary());
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    let mut hits = 0;
    for t in all_tables(2) {
        let o = OSpace::from_table(2, &t);
        if o.exterior_separated() {
            hits += 1;
            ensure!(
                o.pointwise_symmetric() && o.r0(),
                "oracle violation at {t:?}"
            );
        }
    }
    ensure!(
        hits == r.premise_hits,
        "premise count {} vs oracle {hits}",
        r.premise_hits
    );
    Ok(format!(
        "{}, {hits} exterior-separated, {elapsed:.2?}",
        r.summary()
    ))
}

fn criterion_2() -> Outcome {
    let (c2, _) = sweep_clean("thm-equiv-isotonic", 2, &VerifyOptions::default())?;
    let start = Instant::now();
    let (c3, _) = sweep_clean("thm-equiv-isotonic", 3, &VerifyOptions::default())?;
    let elapsed = start.elapsed();
    ensure!((c2, c3) == (36, 8000), "checked {c2} and {c3}");
    ensure!(elapsed < Duration::from_secs(30), "n=3 took {elapsed:?}");
    for n in [2, 3] {
        for s in enumerate_spaces(n, GeneratorClass::Isotonic, UNBOUNDED).unwrap() {
            let o = oracle_of(&s);
            let (p, r, e) = (o.pointwise_symmetric(), o.r0(), o.exterior_separated());
            ensure!(p == r && r == e, "oracle disagreement at {s:?}");
        }
    }
    Ok(format!("36 + 8000 isotonic spaces, n=3 in {elapsed:.2?}"))
}

/// { x : {{x}, A} not separated }, computed from the relation alone.
fn formula_closure(rel: &SeparationRelation, a: SubsetMask) -> SubsetMask {
    let n = rel.ground().len();
    (0..n)
        .filter(|&x| !rel.contains(SubsetMask::singleton(x), a))
        .fold(SubsetMask::EMPTY, |m, x| m.with(x))
}

fn criterion_3() -> Outcome {
    let oracle_n2 = all_tables(2)
        .iter()
        .filter(|t| OSpace::from_table(2, t).exterior_separated())
        .count();
    let mut total = 0;
    for n in 1..=3 {
        let mut count = 0u128;
        for s in enumerate_spaces(n, GeneratorClass::ExteriorSeparated, UNBOUNDED).unwrap() {
            ensure!(s.is_exterior_separated(), "stream emitted {s:?}");
            let rel = separated_pairs(&s);
            for a in s.ground().subsets() {
                ensure!(
                    s.table()[a.index()] == formula_closure(&rel, a),
                    "formula fails on {s:?} at {a:?}"
                );
            }
            count += 1;
        }
        ensure!(
            count == class_size(n, GeneratorClass::ExteriorSeparated),
            "n={n} count {count}"
        );
        if n == 2 {
            ensure!(
                count == oracle_n2 as u128,
                "n=2 count {count} vs oracle filter {oracle_n2}"
            );
        }
        total += count;
    }
    Ok(format!(
        "{total} exterior-separated spaces over n<=3, 0 violations"
    ))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        let mut seen = HashSet::new();
        for s in enumerate_spaces(n, GeneratorClass::IsotonicPointwiseSymmetric, UNBOUNDED).unwrap()
        {
            let o = oracle_of(&s);
            ensure!(
                o.isotonic() && o.pointwise_symmetric(),
                "stream emitted {s:?}"
            );
            let rel = separated_pairs(&s);
            ensure!(
                closure_from_relation(&rel).as_ref() == Ok(&s),
                "round trip fails on {s:?}"
            );
            ensure!(
                seen.insert(rel),
                "two spaces share the separated pairs of {s:?}"
            );
        }
        total += seen.len();
    }
    Ok(format!(
        "{total} spaces, round trip exact, relations pairwise distinct"
    ))
}

fn criterion_5() -> Outcome {
    let rels = sample_relations(2, 1000, 2024).map_err(|e| e.to_string())?;
    ensure!(rels.len() == 1000, "sampled {}", rels.len());
    let mut valid = 0;
    for rel in &rels {
        let o = oracle::ORel {
            n: 2,
            pairs: rel
                .iter()
                .map(|(a, b)| oracle::upair(&oracle::set_of(a.bits()), &oracle::set_of(b.bits())))
                .collect(),
        };
        let expected = o.condition1() && o.condition2();
        match closure_from_relation(rel) {
            Ok(space) => {
                ensure!(
                    expected,
                    "accepted a relation failing the conditions: {rel:?}"
                );
                ensure!(
                    separated_pairs(&space) == *rel,
                    "result does not reproduce {rel:?}"
                );
                valid += 1;
            }
            Err(Error::ConditionsViolated(_)) => {
                ensure!(!expected, "rejected a valid relation: {rel:?}")
            }
            Err(e) => return Err(format!("unexpected error {e}")),
        }
    }
    ensure!(valid > 0 && valid < 1000, "no mix: {valid} valid");
    Ok(format!(
        "1000 relations, {valid} valid / {} invalid",
        1000 - valid
    ))
}

fn criterion_6() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        for s in enumerate_spaces(n, GeneratorClass::ExteriorSeparated, UNBOUNDED).unwrap() {
            let p = s.axiom_profile();
            let c = relation_axiom_criteria(&separated_pairs(&s));
            ensure!(c.grounded == p.grounded, "grounded criterion on {s:?}");
            ensure!(c.enlarging == p.enlarging, "enlarging criterion on {s:?}");
            ensure!(c.sublinear == p.sublinear, "sublinear criterion on {s:?}");
            if p.enlarging && c.idempotent_sufficient {
                ensure!(
                    p.idempotent,
                    "sufficient criterion without idempotence on {s:?}"
                );
            }
            if p.isotonic && p.idempotent {
                ensure!(
                    c.idempotent_sufficient,
                    "necessary direction fails on {s:?}"
                );
            }
            total += 1;
        }
        for id in [
            "thm-crit-grounded",
            "thm-crit-enlarging",
            "thm-crit-sublinear",
            "thm-idem-sufficient",
            "thm-idem-necessary",
        ] {
            sweep_clean(id, n, &VerifyOptions::default())?;
        }
    }
    Ok(format!("{total} exterior-separated spaces, 0 violations"))
}

const MAP_CLAIMS: [&str; 6] = [
    "thm-cp-cont",
    "thm-cp-implies-ns",
    "cor-cont-implies-ns",
    "thm-preimage",
    "thm-ns-iff-cp",
    "cor-ns-iff-cont",
];

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut checked = Vec::new();
    for id in MAP_CLAIMS {
        checked.push(sweep_clean(id, 2, &sequential())?.0);
    }
    let single = start.elapsed();
    ensure!(
        checked[1] == 256 * 256 * 4,
        "thm-cp-implies-ns checked {}",
        checked[1]
    );
    ensure!(
        single < Duration::from_secs(300),
        "single-threaded sweep took {single:?}"
    );

    for id in MAP_CLAIMS {
        let seq = verify_claim(id, 2, &sequential()).unwrap();
        let par = verify_claim(id, 2, &VerifyOptions::default()).unwrap();
        ensure!(seq.same_outcome(&par), "{id}: parallel report differs");
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let speedup = if threads < 2 {
        "speedup not measurable: 1 CPU available".to_string()
    } else {
        let start = Instant::now();
        for id in MAP_CLAIMS {
            sweep_clean(id, 2, &VerifyOptions::default())?;
        }
        let parallel = start.elapsed();
        let ratio = single.as_secs_f64() / parallel.as_secs_f64();
        let wanted = 0.5 * threads.min(8) as f64;
        ensure!(
            ratio.ge(&wanted),
            "speedup {ratio:.2} on {threads} threads, wanted >= {wanted:.1}"
        );
        format!("speedup {ratio:.2}x on {threads} threads")
    };
    Ok(format!(
        "{} instances, single-threaded {single:.2?}, merged reports identical, {speedup}",
        checked.iter().sum::<u64>()
    ))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn oracle_confirms(id: &str, w: &Instance) -> bool {
    match w {
        Instance::Space(s) => {
            let o = oracle_of(s);
            match id {
                "neg-pws-not-extsep" => o.pointwise_symmetric() && !o.exterior_separated(),
                "neg-r0-not-extsep" => o.r0() && !o.exterior_separated(),
                _ => false,
            }
        }
        Instance::Map(f) => {
            let (x, y, a) = (
                oracle_of(f.domain()),
                oracle_of(f.codomain()),
                f.assignment(),
            );
            let cp = oracle::closure_preserving(&x, &y, a);
            let cont = oracle::continuous(&x, &y, a);
            let ns = oracle::nonseparating(&x, &y, a);
            match id {
                "neg-cont-not-cp" => cont && !cp,
                "neg-cp-not-cont" => cp && !cont,
                "neg-ns-not-cp" => ns && !cp,
                "neg-ns-not-cont" => ns && !cont,
                _ => false,
            }
        }
        Instance::Relation(_) => false,
    }
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_clospace");
    let scratch = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut ids = Vec::new();
    for claim in catalog()
        .iter()
        .filter(|c| c.polarity == Polarity::Converse)
    {
        let id = claim.id;
        let found = hunt_counterexample(id, 2, &VerifyOptions::default())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{id}: no witness at n<=2"))?;
        ensure!(
            oracle_confirms(id, &found.witness),
            "{id}: witness fails the definitional check"
        );
        let text = serialize_instance(&found.witness);
        let golden = std::fs::read_to_string(golden_dir().join(format!("{id}.json")))
            .map_err(|e| format!("{id}: {e}"))?;
        ensure!(text == golden, "{id}: witness differs from golden fixture");

        for run in 0..2 {
            let out = scratch.path().join(format!("{id}-{run}.json"));
            let status = Command::new(bin)
                .args(["--quiet", "hunt", "--claim", id, "--n", "2", "-o"])
                .arg(&out)
                .status()
                .map_err(|e| e.to_string())?;
            ensure!(status.code() == Some(0), "{id}: hunt exited with {status}");
            let written = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
            ensure!(
                written == golden,
                "{id}: CLI run {run} is not byte-identical to the fixture"
            );
        }
        ids.push(format!("{id}@n={}", found.witness.carrier_size()));
    }
    ensure!(
        ids.len() == 6,
        "expected 6 negative claims, found {}",
        ids.len()
    );
    Ok(ids.join(" "))
}

/// Up-sets of the subset lattice on `n` points, counted by brute force over
/// all families of subsets.
fn count_upsets(n: usize) -> u64 {
    let len = 1u32 << n;
    (0u64..1 << len)
        .filter(|family| {
            (0..len).all(|a| {
                family >> a & 1 == 0 || (0..len).all(|b| a & b != a || family >> b & 1 == 1)
            })
        })
        .count() as u64
}

fn criterion_9() -> Outcome {
    let count = |n, class| enumerate_spaces(n, class, UNBOUNDED).map(|s| s.count());
    let all2 = count(2, GeneratorClass::All).map_err(|e| e.to_string())?;
    let iso2 = count(2, GeneratorClass::Isotonic).map_err(|e| e.to_string())?;
    let iso3: Vec<Space> = enumerate_spaces(3, GeneratorClass::Isotonic, UNBOUNDED)
        .map_err(|e| e.to_string())?
        .collect();
    let tables = all_tables(2);
    let oracle_all2 = tables.len();
    let oracle_iso2 = tables
        .iter()
        .filter(|t| OSpace::from_table(2, t).isotonic())
        .count();
    let oracle_iso3 = count_upsets(3).pow(3) as usize;
    ensure!(
        all2 == 256 && oracle_all2 == 256,
        "n=2 all: stream {all2}, oracle {oracle_all2}"
    );
    ensure!(
        iso2 == 36 && oracle_iso2 == 36,
        "n=2 isotonic: stream {iso2}, oracle {oracle_iso2}"
    );
    ensure!(
        iso3.len() == 8000 && oracle_iso3 == 8000,
        "n=3 isotonic: stream {}, oracle {oracle_iso3}",
        iso3.len()
    );
    ensure!(
        iso3.iter().all(|s| oracle_of(s).isotonic()),
        "non-isotonic space in n=3 stream"
    );
    ensure!(
        iso3.iter().collect::<HashSet<_>>().len() == 8000,
        "duplicates in n=3 stream"
    );
    Ok("256 / 36 / 8000, matching oracle filter and up-set product".into())
}

const D2: &str =
    r#"{"elements": ["a", "b"], "closure": {"": "", "a": "a", "b": "b", "a,b": "a,b"}}"#;

struct Malformed {
    name: &'static str,
    command: &'static str,
    text: String,
    expected: fn(&Error) -> bool,
}

fn malformed_corpus() -> Vec<Malformed> {
    let space_doc =
        |closure: &str| format!(r#"{{"elements": ["a", "b"], "closure": {{{closure}}}}}"#);
    let map_doc = |assignment: &str| {
        format!(r#"{{"domain": {D2}, "codomain": {D2}, "assignment": {{{assignment}}}}}"#)
    };
    vec![
        Malformed {
            name: "truncated json",
            command: "check",
            text: r#"{"elements": ["a""#.into(),
            expected: |e| matches!(e, Error::Syntax(_)),
        },
        Malformed {
            name: "unknown field",
            command: "check",
            text: r#"{"elements": ["a"], "closure": {"": "", "a": "a"}, "extra": 1}"#.into(),
            expected: |e| matches!(e, Error::Syntax(_)),
        },
        Malformed {
            name: "missing subset key",
            command: "check",
            text: space_doc(r#""": "", "a": "a", "b": "b""#),
            expected: |e| *e == Error::MissingSubsetKey("a,b".into()),
        },
        Malformed {
            name: "unknown element in value",
            command: "separate",
            text: space_doc(r#""": "", "a": "z", "b": "b", "a,b": "a,b""#),
            expected: |e| *e == Error::UnknownElement("z".into()),
        },
        Malformed {
            name: "duplicate element",
            command: "check",
            text: r#"{"elements": ["a", "a"], "closure": {}}"#.into(),
            expected: |e| *e == Error::DuplicateElement("a".into()),
        },
        Malformed {
            name: "duplicate subset key",
            command: "check",
            text: space_doc(r#""": "", "a": "a", "a": "", "b": "b", "a,b": "a,b""#),
            expected: |e| *e == Error::DuplicateSubsetKey("a".into()),
        },
        Malformed {
            name: "unsorted subset",
            command: "check",
            text: space_doc(r#""": "", "a": "a", "b": "b", "b,a": "a,b""#),
            expected: |e| *e == Error::NonCanonicalSubset("b,a".into()),
        },
        Malformed {
            name: "empty ground set",
            command: "check",
            text: r#"{"elements": [], "closure": {"": ""}}"#.into(),
            expected: |e| *e == Error::EmptyGround,
        },
        Malformed {
            name: "duplicate pair",
            command: "derive",
            text: r#"{"elements": ["a", "b"], "pairs": [["", "a"], ["a", ""]]}"#.into(),
            expected: |e| *e == Error::DuplicatePair("".into(), "a".into()),
        },
        Malformed {
            name: "pair with unknown element",
            command: "derive",
            text: r#"{"elements": ["a", "b"], "pairs": [["", "c"]]}"#.into(),
            expected: |e| *e == Error::UnknownElement("c".into()),
        },
        Malformed {
            name: "partial assignment",
            command: "map-check",
            text: map_doc(r#""a": "b""#),
            expected: |e| *e == Error::PartialAssignment("b".into()),
        },
        Malformed {
            name: "assignment target outside codomain",
            command: "map-check",
            text: map_doc(r#""a": "b", "b": "q""#),
            expected: |e| *e == Error::UnknownElement("q".into()),
        },
    ]
}

fn parse_for(command: &str, text: &str) -> Result<(), Error> {
    match command {
        "check" | "separate" => parse_space(text).map(drop),
        "derive" => parse_relation(text).map(drop),
        _ => parse_map(text, None).map(drop),
    }
}

fn criterion_10() -> Outcome {
    // Round trips over seeded random documents.
    let mut checked = 0;
    for (i, class) in GeneratorClass::ALL.iter().cycle().take(100).enumerate() {
        let n = 1 + i % 4;
        let mut pick = sample_spaces(n, *class, 2, i as u64).unwrap();
        let (x, y) = (pick.next().unwrap(), pick.next().unwrap());
        ensure!(
            parse_space(&serialize_space(&x)).as_ref() == Ok(&x),
            "space round trip {x:?}"
        );

        let assignment = (0..n).map(|k| (k * 7 + i) % n).collect();
        let f = SpaceMap::new(x, y, assignment).unwrap();
        ensure!(
            parse_map(&serialize_map(&f), None).as_ref() == Ok(&f),
            "map round trip {f:?}"
        );
        checked += 2;
    }
    for rel in sample_relations(3, 100, 77).unwrap() {
        ensure!(
            parse_relation(&serialize_relation(&rel)).as_ref() == Ok(&rel),
            "relation round trip {rel:?}"
        );
        checked += 1;
    }

    // Malformed documents: library error class and CLI exit code.
    let bin = env!("CARGO_BIN_EXE_clospace");
    let scratch = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = malformed_corpus();
    for case in &corpus {
        let err = parse_for(case.command, &case.text).err();
        ensure!(
            err.as_ref().is_some_and(case.expected),
            "{}: got {err:?}",
            case.name
        );
        let path = scratch.path().join("doc.json");
        std::fs::write(&path, &case.text).unwrap();
        let out = Command::new(bin)
            .args(["--quiet", case.command])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            out.status.code() == Some(2),
            "{}: exit {:?}",
            case.name,
            out.status.code()
        );
    }
    Ok(format!(
        "{checked} documents round-tripped, {} malformed documents rejected with exit 2",
        corpus.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            1,
            "exterior separation implies pointwise symmetry and R0 (n=2, all)",
            criterion_1,
        ),
        (
            2,
            "symmetry properties coincide on isotonic spaces (n=2,3)",
            criterion_2,
        ),
        (
            3,
            "closure formula from separated pairs (n<=3)",
            criterion_3,
        ),
        (4, "round trip and injectivity (n<=3)", criterion_4),
        (
            5,
            "relation conditions soundness (1000 relations, n=2)",
            criterion_5,
        ),
        (6, "relation-level axiom criteria (n<=3)", criterion_6),
        (7, "map theorems (n=2, exhaustive)", criterion_7),
        (8, "negative witnesses and golden fixtures", criterion_8),
        (9, "enumeration counts", criterion_9),
        (
            10,
            "document round trips and malformed corpus",
            criterion_10,
        ),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  [{id:>2}] {name}: {detail} ({elapsed:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  [{id:>2}] {name}: {detail} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of {} criteria passed", 10 - failed, 10);
    if failed > 0 {
        std::process::exit(1);
    }
}
