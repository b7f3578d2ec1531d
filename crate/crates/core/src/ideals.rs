//! Ideals of the partition category, total ideals, and the right reductive
//! subsemigroups of `Sing(X)` they produce through the inclusion-functor
//! cross-connection.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundation::{enumerate_sing, GroundSet, SetPartition, SubsetObject, Transformation};
use crate::semigroup::CayleyTable;

/// A set of partition objects closed downward in the object order, i.e. closed
/// under coarsening of the underlying partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionIdeal {
    ground: GroundSet,
    members: BTreeSet<SetPartition>,
}

impl PartitionIdeal {
    /// Validate downward closure.
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = SetPartition>) -> Result<Self> {
        let members: BTreeSet<SetPartition> = members.into_iter().collect();
        for p in &members {
            ground.check_same(p.ground())?;
            if let Some(q) = p.coarsenings().into_iter().find(|q| !members.contains(q)) {
                return Err(Error::ClosureViolation(format!(
                    "{q} lies below member {p} but is not in the ideal"
                )));
            }
        }
        Ok(PartitionIdeal { ground, members })
    }

    /// Every object of the partition category.
    pub fn full(ground: GroundSet) -> Self {
        PartitionIdeal {
            ground,
            members: ground.partitions().into_iter().collect(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &BTreeSet<SetPartition> {
        &self.members
    }

    pub fn contains(&self, p: &SetPartition) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The first maximal proper subset that is a cross-section of no member.
    pub fn uncovered(&self) -> Option<SubsetObject> {
        self.ground
            .subsets()
            .into_iter()
            .filter(|a| a.len() + 1 == self.ground.size())
            .find(|a| !self.members.iter().any(|p| p.is_cross_section(a.mask())))
    }

    /// Every maximal proper subset of `X` is a cross-section of some member.
    pub fn is_total(&self) -> bool {
        self.uncovered().is_none()
    }
}

impl fmt::Display for PartitionIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// All coarsenings of `π`.
pub fn principal_ideal(p: &SetPartition) -> PartitionIdeal {
    PartitionIdeal {
        ground: p.ground(),
        members: p.coarsenings().into_iter().collect(),
    }
}

/// Union of ideals over a common ground set; closure is re-verified.
pub fn ideal_union(parts: &[PartitionIdeal]) -> Result<PartitionIdeal> {
    let first = parts.first().ok_or_else(|| Error::Invalid {
        kind: "ideal union",
        reason: "no ideals given".into(),
    })?;
    for p in parts {
        first.ground.check_same(p.ground)?;
    }
    PartitionIdeal::new(first.ground, parts.iter().flat_map(|p| p.members.iter().copied()))
}

/// The subsemigroup `T` built from a total ideal, with its structural flags.
#[derive(Debug, Clone)]
pub struct RightReductiveResult {
    pub ideal: PartitionIdeal,
    pub table: CayleyTable<Transformation>,
    pub is_regular: bool,
    pub is_right_reductive: bool,
    /// `|Sing(X)| - |T|`.
    pub excluded_count: usize,
}

/// Machine-readable digest of a [`RightReductiveResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub order: usize,
    pub regular: bool,
    pub right_reductive: bool,
    pub excluded_count: usize,
}

impl RightReductiveResult {
    pub fn summary(&self) -> IdealSummary {
        IdealSummary {
            order: self.table.order(),
            regular: self.is_regular,
            right_reductive: self.is_right_reductive,
            excluded_count: self.excluded_count,
        }
    }
}

/// Build `T` for a total ideal `I`. With `Γ` the inclusion of `I` and `Δ` the
/// identity, the bifunctor sets are `{a : Im a ⊆ A, π_a ⊇ π}` for `π̄ ∈ I`,
/// linked pairs are diagonal, and `T` is the union of those sets under the
/// product of `Sing(X)`.
pub fn build_ideal_cxn(ideal: &PartitionIdeal) -> Result<RightReductiveResult> {
    if let Some(a) = ideal.uncovered() {
        return Err(Error::NotTotal(a.to_string()));
    }
    let ground = ideal.ground;
    let sing = enumerate_sing(ground);
    let subsets = ground.subsets();
    let mut roster: BTreeSet<Transformation> = BTreeSet::new();
    for p in ideal.members() {
        for a in &subsets {
            roster.extend(
                sing.iter()
                    .filter(|t| t.image_mask() & !a.mask() == 0 && t.is_constant_on(p)),
            );
        }
    }
    let table = CayleyTable::from_product(roster.into_iter().collect(), |a, b| a.then(b))?;
    let is_regular = table.is_regular();
    let is_right_reductive = table.is_right_reductive();
    Ok(RightReductiveResult {
        ideal: ideal.clone(),
        excluded_count: sing.len() - table.order(),
        table,
        is_regular,
        is_right_reductive,
    })
}

/// The ideal generated by every minimal partition except `excluded`, and its
/// subsemigroup. Each excluded partition must be minimal (one doubleton block).
pub fn exclude_minimal_partitions(ground: GroundSet, excluded: &[SetPartition]) -> Result<RightReductiveResult> {
    for p in excluded {
        ground.check_same(p.ground())?;
        if !p.is_minimal() {
            return Err(Error::Invalid {
                kind: "excluded partition",
                reason: format!("{p} is not a minimal partition"),
            });
        }
    }
    let kept: Vec<PartitionIdeal> = ground
        .partitions()
        .into_iter()
        .filter(|p| p.is_minimal() && !excluded.contains(p))
        .map(|p| principal_ideal(&p))
        .collect();
    if kept.is_empty() {
        return Err(Error::NotTotal(format!("every subset of size {}", ground.size() - 1)));
    }
    build_ideal_cxn(&ideal_union(&kept)?)
}
