use rayon::prelude::*;

use super::local_iso::{
    covers_partitions, covers_subsets, is_local_isomorphism, FunctorCandidate, PartitionCategory, PowersetCategory,
};
use super::PermCrossConnection;
use crate::error::{Error, Result};
use crate::foundation::{mask_elements, GroundSet, Mask, Permutation, SetPartition, SubsetObject, Transformation};
use crate::partition_category::BlockMapMorphism;
use crate::powerset::SetFunction;

/// Largest ground set the cross-connection search accepts.
pub const SEARCH_MAX_N: usize = 5;

fn propagate(assignment: &[usize], mask: Mask) -> Mask {
    mask_elements(mask).fold(0, |m, x| m | (1 << assignment[x]))
}

/// Every cross-connection from the partition category to the normal dual of
/// the powerset category, found by searching object maps on the dual side.
///
/// A local isomorphism must send each singleton `{x}` (whose ideal has a single
/// object) to a singleton `{θ(x)}`, and inclusion preservation then forces
/// `Δ(A) = θ(A)`. Each of the `n^n` assignments `x ↦ θ(x)` is filtered by:
///
/// * two-element sets must stay two-element sets, otherwise `Δ` collapses an
///   isomorphism (this forces `θ` injective);
/// * every partition must have some `θ(A)` as a cross-section (this forces `θ`
///   onto);
/// * `Δ_θ` and `Γ_θ` must pass the full local-isomorphism and covering checks.
///
/// Survivors are returned in lexicographic order.
pub fn enumerate_cross_connections(ground: GroundSet) -> Result<Vec<Permutation>> {
    let n = ground.size();
    if n > SEARCH_MAX_N {
        return Err(Error::SizeGuard {
            what: "cross-connection search",
            n,
            max: SEARCH_MAX_N,
        });
    }
    let partitions = ground.partitions();
    let subsets = ground.subsets();
    let total = n.pow(n as u32);
    let mut found: Vec<Permutation> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let assignment: Vec<usize> = (0..n)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect();
            let pairs_survive =
                (0..n).all(|a| (a + 1..n).all(|b| propagate(&assignment, (1 << a) | (1 << b)).count_ones() == 2));
            if !pairs_survive {
                return None;
            }
            let covered = partitions.iter().all(|p| {
                subsets
                    .iter()
                    .any(|s| p.is_cross_section(propagate(&assignment, s.mask())))
            });
            if !covered {
                return None;
            }
            let theta = Permutation::from_transformation(&Transformation::new(ground, &assignment).ok()?).ok()?;
            accept(PermCrossConnection::new(theta)).then_some(theta)
        })
        .collect();
    found.sort();
    Ok(found)
}

fn accept(cxn: PermCrossConnection) -> bool {
    let ground = cxn.ground();
    let delta = FunctorCandidate::new(
        move |a: &SubsetObject| cxn.delta_object(a).expect("same ground set"),
        move |f: &SetFunction| cxn.delta_morphism(f).expect("same ground set"),
    );
    let gamma = FunctorCandidate::new(
        move |p: &SetPartition| cxn.gamma_object(p).expect("same ground set"),
        move |m: &BlockMapMorphism| cxn.gamma_morphism(m).expect("same ground set"),
    );
    is_local_isomorphism(&PowersetCategory::new(ground), &delta).unwrap_or(false)
        && covers_partitions(ground, |a| delta.object(a))
        && is_local_isomorphism(&PartitionCategory::new(ground), &gamma).unwrap_or(false)
        && covers_subsets(ground, |p| gamma.object(p))
}
