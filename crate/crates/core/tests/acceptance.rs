//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line with its
//! elapsed time against a pinned wall-clock bound; the process exits non-zero
//! if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use xconn::cones::{build_tp, build_tpi, verify_cone_axiom_p, verify_cone_axiom_pi, ConeP, ConePi};
use xconn::cross_connection::{
    build_s_gamma, enumerate_cross_connections, verify_chi, verify_s_gamma_iso, verify_variant_iso, PermCrossConnection,
};
use xconn::foundation::{enumerate_sing, GroundSet, Permutation, SetPartition};
use xconn::ideals::{exclude_minimal_partitions, ideal_union, principal_ideal};
use xconn::normal_dual::{verify_dual_p, verify_dual_pi};
use xconn::partition_category::verify_normal_category_pi;
use xconn::powerset::verify_normal_category_p;
use xconn::semigroup::{sing_table, verify_anti_iso, verify_iso, CayleyTable};

const SING_ORDERS: [(usize, usize); 4] = [(2, 2), (3, 21), (4, 232), (5, 3005)];
const DUAL_OBJECTS: [(usize, usize); 2] = [(3, 4), (4, 14)];
const CXN_COUNTS: [(usize, usize); 3] = [(2, 2), (3, 6), (4, 24)];
const N4_SAMPLE: [usize; 5] = [0, 5, 11, 17, 23];
const EXAMPLE_EXCLUDED: usize = 120;
const EXAMPLE_ORDER: usize = 2885;
const SMALL_EXAMPLE_ORDER: usize = 15;
const FACTOR_CAP_N4: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn g(n: usize) -> GroundSet {
    GroundSet::new(n).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn cardinalities() -> Outcome {
    for (n, want) in SING_ORDERS {
        let got = enumerate_sing(g(n)).len();
        ensure(
            got == want && got == n.pow(n as u32) - (1..=n).product::<usize>(),
            || format!("|Sing({n})| = {got}, expected {want}"),
        )?;
    }
    for (n, want) in DUAL_OBJECTS {
        let got = g(n).partitions().len();
        ensure(got == want, || {
            format!("{got} partition objects at n={n}, expected {want}")
        })?;
    }
    Ok("Sing orders 2/21/232/3005, partition objects 4/14".into())
}

fn powerset_cone_iso() -> Outcome {
    let mut pairs = 0;
    for n in [3, 4] {
        let sing = sing_table(g(n)).map_err(e)?;
        let tp = build_tp(g(n)).map_err(e)?;
        let ok = verify_iso(&sing, &tp, |a| ConeP::new(*a).unwrap()).map_err(e)?;
        ensure(ok, || format!("a -> rho^a fails at n={n}"))?;
        pairs += tp.order() * tp.order();
    }
    ensure(pairs == 441 + 53_824, || format!("{pairs} products checked"))?;
    Ok(format!("{pairs} cone products through normal factorizations"))
}

fn partition_cone_anti_iso() -> Outcome {
    let sing = sing_table(g(3)).map_err(e)?;
    let tpi = build_tpi(g(3)).map_err(e)?;
    let ok = verify_anti_iso(&sing, &tpi, |a| ConePi::new(*a).unwrap()).map_err(e)?;
    ensure(ok, || "a -> sigma^a is not an anti-isomorphism at n=3".into())?;
    Ok("441 products at n=3".into())
}

fn factorization() -> Outcome {
    let mut checks = 0;
    let r = verify_normal_category_p(g(4), Some(FACTOR_CAP_N4)).map_err(e)?;
    ensure(r.passed(), || r.to_string())?;
    checks += r.checks;
    for n in [3, 4] {
        let r = verify_normal_category_pi(g(n)).map_err(e)?;
        ensure(r.passed(), || r.to_string())?;
        checks += r.checks;
    }
    Ok(format!("{checks} checks, 0 violations"))
}

fn mset_cross_sections() -> Outcome {
    let mut count = 0;
    for n in [3, 4] {
        for a in enumerate_sing(g(n)) {
            let mset: BTreeSet<_> = ConeP::new(a).unwrap().mset().into_iter().collect();
            let sections: BTreeSet<_> = a.kernel().unwrap().cross_sections().into_iter().collect();
            ensure(mset == sections, || {
                format!("M-set of rho^{a} differs from cross-sections")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} cones"))
}

fn duals() -> Outcome {
    let mut checks = 0;
    for n in [3, 4] {
        for r in [verify_dual_p(g(n)).map_err(e)?, verify_dual_pi(g(n)).map_err(e)?] {
            ensure(r.passed(), || r.to_string())?;
            checks += r.checks;
        }
    }
    Ok(format!("{checks} checks at n=3,4"))
}

fn chi_naturality() -> Outcome {
    let mut checks = 0;
    for th in g(3).permutations() {
        let r = verify_chi(&PermCrossConnection::new(th)).map_err(e)?;
        ensure(r.passed(), || r.to_string())?;
        checks += r.checks;
    }
    Ok(format!("{checks} squares and bijections over 6 permutations"))
}

fn s_gamma_iso() -> Outcome {
    let mut thetas: Vec<Permutation> = g(3).permutations();
    let n4 = g(4).permutations();
    thetas.extend(N4_SAMPLE.iter().map(|&i| n4[i]));
    for th in &thetas {
        let r = verify_s_gamma_iso(&PermCrossConnection::new(*th)).map_err(e)?;
        ensure(r.passed(), || r.to_string())?;
    }
    for th in g(3).permutations() {
        let r = verify_variant_iso(&PermCrossConnection::new(th)).map_err(e)?;
        ensure(r.passed(), || r.to_string())?;
    }
    Ok(format!("psi for {} permutations, phi for 6", thetas.len()))
}

fn search() -> Outcome {
    let mut counts = Vec::new();
    for (n, want) in CXN_COUNTS {
        let found = enumerate_cross_connections(g(n)).map_err(e)?;
        ensure(found.len() == want && found == g(n).permutations(), || {
            format!("{} cross-connections at n={n}, expected {want}", found.len())
        })?;
        counts.push(found.len().to_string());
    }
    Ok(format!("found {}", counts.join("/")))
}

fn example() -> Outcome {
    let r = exclude_minimal_partitions(g(5), &[SetPartition::parse("12|3|4|5").unwrap()]).map_err(e)?;
    ensure(r.excluded_count == EXAMPLE_EXCLUDED, || {
        format!("{} excluded", r.excluded_count)
    })?;
    ensure(r.table.order() == EXAMPLE_ORDER, || {
        format!("order {}", r.table.order())
    })?;
    ensure(r.is_regular && r.is_right_reductive, || "flags false at n=5".into())?;
    let small = exclude_minimal_partitions(g(3), &[SetPartition::parse("12|3").unwrap()]).map_err(e)?;
    ensure(small.table.order() == SMALL_EXAMPLE_ORDER, || {
        format!("n=3 order {}", small.table.order())
    })?;
    ensure(small.is_regular && small.is_right_reductive, || {
        "flags false at n=3".into()
    })?;
    Ok("n=5: 120 excluded, order 2885, closed/regular/right reductive; n=3: order 15".into())
}

fn minimal(n: usize) -> Vec<SetPartition> {
    g(n).partitions().into_iter().filter(|p| p.is_minimal()).collect()
}

fn totality_boundary() -> Outcome {
    let mut subsets = 0;
    for n in [4, 5] {
        let mins = minimal(n);
        let k = mins.len();
        for bits in (0u32..1 << k).filter(|b| b.count_ones() as usize == n - 2) {
            let keep: Vec<_> = (0..k)
                .filter(|i| bits & (1 << i) == 0)
                .map(|i| principal_ideal(&mins[i]))
                .collect();
            ensure(ideal_union(&keep).map_err(e)?.is_total(), || {
                format!("n={n}: excluding {bits:b} breaks totality")
            })?;
            subsets += 1;
        }
    }
    for n in [3, 4] {
        for pt in 0..n {
            let keep: Vec<_> = minimal(n)
                .iter()
                .filter(|q| (0..n).all(|y| y == pt || !q.same_block(pt, y)))
                .map(principal_ideal)
                .collect();
            let total = !keep.is_empty() && ideal_union(&keep).map_err(e)?.is_total();
            ensure(!total, || {
                format!("n={n}: excluding doubletons through {} keeps totality", pt + 1)
            })?;
        }
    }
    Ok(format!(
        "{subsets} (n-2)-exclusions stay total; point exclusions break it"
    ))
}

fn associative<T: Sync>(name: &str, t: &CayleyTable<T>) -> Result<(), String> {
    ensure(t.check_associative().map_err(e)?, || {
        format!("{name} is not associative")
    })
}

fn properties() -> Outcome {
    let x = g(3);
    let mut tables = 0;
    associative("Sing(3)", &sing_table(x).map_err(e)?)?;
    associative("TP(3)", &build_tp(x).map_err(e)?)?;
    associative("TPi(3)", &build_tpi(x).map_err(e)?)?;
    tables += 3;
    for th in x.permutations() {
        let cxn = PermCrossConnection::new(th);
        associative("S-Gamma", &build_s_gamma(&cxn).map_err(e)?.table)?;
        let variant = CayleyTable::from_product(enumerate_sing(x), |a, b| cxn.variant_product(a, b)).map_err(e)?;
        associative("variant", &variant)?;
        tables += 2;
    }
    for p in minimal(3) {
        associative(
            "ideal subsemigroup",
            &exclude_minimal_partitions(x, &[p]).map_err(e)?.table,
        )?;
        tables += 1;
    }
    let rp = verify_cone_axiom_p(x);
    let rpi = verify_cone_axiom_pi(x);
    ensure(rp.passed(), || rp.to_string())?;
    ensure(rpi.passed(), || rpi.to_string())?;
    Ok(format!(
        "{tables} tables associative; {} cone-axiom checks",
        rp.checks + rpi.checks
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("cardinalities", 1, cardinalities),
        ("powerset cones isomorphic to Sing (n=3,4)", 10, powerset_cone_iso),
        (
            "partition cones anti-isomorphic to Sing (n=3)",
            1,
            partition_cone_anti_iso,
        ),
        ("normal factorizations recompose", 10, factorization),
        ("M-sets are kernel cross-sections (n=3,4)", 1, mset_cross_sections),
        ("normal duals (n=3,4)", 10, duals),
        ("chi natural and bijective (n=3)", 10, chi_naturality),
        ("S-Gamma isomorphic to Sing; variant map", 10, s_gamma_iso),
        ("cross-connection search 2/6/24", 30, search),
        ("right reductive subsemigroup example", 60, example),
        ("totality boundary", 10, totality_boundary),
        ("table associativity and cone axiom (n=3)", 10, properties),
    ];
    let mut failures = 0;
    for (i, (name, bound, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(bound);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the time bound")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} [{:>2}] {name} ({:.2}s, bound {bound}s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
