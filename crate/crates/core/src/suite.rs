//! The full verification suite: one labelled row per structural result, each
//! backed by an exhaustive [`VerificationReport`] at a chosen ground-set size.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cones::{build_tp, build_tpi, verify_cone_axiom_p, verify_cone_axiom_pi, ConeP, ConePi};
use crate::cross_connection::{
    enumerate_cross_connections, verify_chi, verify_cross_connection, verify_s_gamma_iso, verify_variant_iso,
    PermCrossConnection,
};
use crate::error::{Error, Result};
use crate::foundation::{enumerate_sing, GroundSet, SetPartition};
use crate::ideals::{exclude_minimal_partitions, ideal_union, principal_ideal};
use crate::normal_dual::{verify_dual_p, verify_dual_pi};
use crate::report::VerificationReport;
use crate::semigroup::{sing_table, verify_anti_iso, verify_iso};

/// Largest ground set the whole suite runs on.
pub const SUITE_MAX_N: usize = 4;

/// Row labels in matrix order.
pub const SUITE_LABELS: [&str; 10] = [
    "powerset-cones-iso",
    "partition-cones-anti-iso",
    "dual-of-powerset",
    "dual-of-partitions",
    "mset-cross-sections",
    "duality-natural",
    "cxn-semigroup-iso",
    "all-cxn-from-permutations",
    "total-ideal-criterion",
    "right-reductive-subsemigroup",
];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub label: &'static str,
    pub report: VerificationReport,
}

impl SuiteRow {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

impl fmt::Display for SuiteRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{:<30} {status}  {} checks, {} violations",
            self.label, self.report.checks, self.report.violation_count
        )?;
        for w in &self.report.witnesses {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

/// Run a single row by label.
pub fn run_row(label: &str, ground: GroundSet) -> Result<SuiteRow> {
    guard(ground)?;
    let label = SUITE_LABELS
        .iter()
        .copied()
        .find(|l| *l == label)
        .ok_or_else(|| Error::Parse {
            kind: "suite label",
            input: label.to_string(),
            reason: format!("expected one of {}", SUITE_LABELS.join(", ")),
        })?;
    let report = match label {
        "powerset-cones-iso" => powerset_cones(ground)?,
        "partition-cones-anti-iso" => partition_cones(ground)?,
        "dual-of-powerset" => verify_dual_p(ground)?,
        "dual-of-partitions" => verify_dual_pi(ground)?,
        "mset-cross-sections" => mset_cross_sections(ground)?,
        "duality-natural" => for_every_theta(ground, "chi natural and bijective", verify_chi)?,
        "cxn-semigroup-iso" => for_every_theta(ground, "S-Gamma isomorphisms", |c| {
            let mut r = verify_s_gamma_iso(c)?;
            r.absorb(verify_variant_iso(c)?);
            Ok(r)
        })?,
        "all-cxn-from-permutations" => all_cross_connections(ground)?,
        "total-ideal-criterion" => total_ideal_criterion(ground)?,
        _ => right_reductive(ground)?,
    };
    Ok(SuiteRow { label, report })
}

/// Every row, in [`SUITE_LABELS`] order.
pub fn run_suite(ground: GroundSet) -> Result<Vec<SuiteRow>> {
    guard(ground)?;
    SUITE_LABELS.iter().map(|l| run_row(l, ground)).collect()
}

fn guard(ground: GroundSet) -> Result<()> {
    if ground.size() > SUITE_MAX_N {
        return Err(Error::SizeGuard {
            what: "verification suite",
            n: ground.size(),
            max: SUITE_MAX_N,
        });
    }
    Ok(())
}

fn powerset_cones(ground: GroundSet) -> Result<VerificationReport> {
    let sing = sing_table(ground)?;
    let tp = build_tp(ground)?;
    let mut r = VerificationReport::new(format!("a -> rho^a is an isomorphism (n={})", ground.size()));
    r.check(verify_iso(&sing, &tp, |a| ConeP::new(*a).expect("singular"))?, || {
        "a -> rho^a is not a bijective homomorphism".into()
    });
    r.check(tp.check_associative()?, || "cone table is not associative".into());
    r.absorb(verify_cone_axiom_p(ground));
    Ok(r)
}

fn partition_cones(ground: GroundSet) -> Result<VerificationReport> {
    let sing = sing_table(ground)?;
    let tpi = build_tpi(ground)?;
    let mut r = VerificationReport::new(format!("a -> sigma^a is an anti-isomorphism (n={})", ground.size()));
    r.check(
        verify_anti_iso(&sing, &tpi, |a| ConePi::new(*a).expect("singular"))?,
        || "a -> sigma^a is not a bijective anti-homomorphism".into(),
    );
    r.check(tpi.check_associative()?, || "cone table is not associative".into());
    r.absorb(verify_cone_axiom_pi(ground));
    Ok(r)
}

fn mset_cross_sections(ground: GroundSet) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!(
        "M-set equals cross-sections of the kernel (n={})",
        ground.size()
    ));
    for a in enumerate_sing(ground) {
        let cone = ConeP::new(a)?;
        let mset: BTreeSet<_> = cone.mset().into_iter().collect();
        let sections: BTreeSet<_> = a.kernel()?.cross_sections().into_iter().collect();
        r.check(mset == sections, || {
            format!(
                "{cone}: M-set differs from cross-sections of {}",
                a.kernel().expect("singular")
            )
        });
    }
    Ok(r)
}

fn for_every_theta(
    ground: GroundSet,
    title: &str,
    check: impl Fn(&PermCrossConnection) -> Result<VerificationReport> + Sync,
) -> Result<VerificationReport> {
    let reports = ground
        .permutations()
        .into_par_iter()
        .map(|th| check(&PermCrossConnection::new(th)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = VerificationReport::new(format!("{title} (n={})", ground.size()));
    reports.into_iter().for_each(|x| r.absorb(x));
    Ok(r)
}

fn all_cross_connections(ground: GroundSet) -> Result<VerificationReport> {
    let found = enumerate_cross_connections(ground)?;
    let perms = ground.permutations();
    let mut r = VerificationReport::new(format!(
        "cross-connections are exactly Gamma_theta (n={})",
        ground.size()
    ));
    r.check(found == perms, || {
        format!("search found {} connections, expected {}", found.len(), perms.len())
    });
    r.absorb(for_every_theta(
        ground,
        "every Gamma_theta is a cross-connection",
        verify_cross_connection,
    )?);
    Ok(r)
}

fn minimal_partitions(ground: GroundSet) -> Vec<SetPartition> {
    ground.partitions().into_iter().filter(|p| p.is_minimal()).collect()
}

/// Excluding at most `n - 2` minimal partitions keeps totality; excluding
/// every doubleton through one point loses it.
fn total_ideal_criterion(ground: GroundSet) -> Result<VerificationReport> {
    let n = ground.size();
    let mins = minimal_partitions(ground);
    let k = mins.len();
    let mut r = VerificationReport::new(format!("totality boundary for minimal-partition ideals (n={n})"));
    for bits in (0u32..1 << k).filter(|b| b.count_ones() as usize <= n.saturating_sub(2)) {
        let keep: Vec<_> = (0..k)
            .filter(|i| bits & (1 << i) == 0)
            .map(|i| principal_ideal(&mins[i]))
            .collect();
        r.check(ideal_union(&keep)?.is_total(), || {
            format!("excluding mask {bits:b} breaks totality")
        });
    }
    for pt in ground.elements() {
        let keep: Vec<_> = mins
            .iter()
            .filter(|q| ground.elements().all(|y| y == pt || !q.same_block(pt, y)))
            .map(principal_ideal)
            .collect();
        let total = !keep.is_empty() && ideal_union(&keep)?.is_total();
        r.check(!total, || {
            format!("excluding every doubleton through {} keeps totality", pt + 1)
        });
    }
    Ok(r)
}

/// For each single excluded minimal partition (or none when `n = 2`), the
/// subsemigroup is closed, regular, right reductive, and omits exactly the
/// maps with that kernel.
fn right_reductive(ground: GroundSet) -> Result<VerificationReport> {
    let sing = enumerate_sing(ground);
    let mut r = VerificationReport::new(format!(
        "total ideals give right reductive subsemigroups (n={})",
        ground.size()
    ));
    let exclusions: Vec<Vec<SetPartition>> = if ground.size() > 2 {
        minimal_partitions(ground).into_iter().map(|p| vec![p]).collect()
    } else {
        vec![Vec::new()]
    };
    for excluded in exclusions {
        let res = exclude_minimal_partitions(ground, &excluded)?;
        let direct = sing
            .iter()
            .filter(|a| excluded.contains(&a.kernel().expect("singular")))
            .count();
        let tag = excluded.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        r.check(res.is_regular, || format!("excluding [{tag}]: not regular"));
        r.check(res.is_right_reductive, || {
            format!("excluding [{tag}]: not right reductive")
        });
        r.check(res.excluded_count == direct, || {
            format!(
                "excluding [{tag}]: {} maps dropped, expected {direct}",
                res.excluded_count
            )
        });
        r.check(res.table.check_associative()?, || {
            format!("excluding [{tag}]: not associative")
        });
    }
    Ok(r)
}
