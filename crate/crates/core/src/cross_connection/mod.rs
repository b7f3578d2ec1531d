//! Cross-connections induced by permutations: the functors `Γ_θ` on the
//! partition category and `Δ_θ` on the powerset category, their bifunctor
//! sets, the duality `χ`, linked pairs and the semigroup `S̃Γ_θ`.

mod local_iso;
mod search;

pub use local_iso::{
    check_local_isomorphism, covers_partitions, covers_subsets, is_local_isomorphism, FiniteCategory, FunctorCandidate,
    PartitionCategory, PowersetCategory,
};
pub use search::{enumerate_cross_connections, SEARCH_MAX_N};

use std::collections::BTreeSet;
use std::fmt;

use crate::cones::{cone_compose_p, cone_compose_pi, ConeP, ConePi};
use crate::error::{Error, Result};
use crate::foundation::{enumerate_sing, mask_min, GroundSet, Permutation, SetPartition, SubsetObject, Transformation};
use crate::partition_category::{BlockMapMorphism, PartitionObject};
use crate::powerset::SetFunction;
use crate::report::VerificationReport;
use crate::semigroup::{sing_table, verify_iso, CayleyTable};

/// Largest ground set for which the cross-connection semigroups are tabulated.
pub const TABLE_MAX_N: usize = 4;

fn table_guard(ground: GroundSet, what: &'static str) -> Result<()> {
    if ground.size() > TABLE_MAX_N {
        return Err(Error::SizeGuard {
            what,
            n: ground.size(),
            max: TABLE_MAX_N,
        });
    }
    Ok(())
}

/// The cross-connection `Γ_θ` together with its dual `Δ_θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermCrossConnection {
    theta: Permutation,
}

impl PermCrossConnection {
    pub fn new(theta: Permutation) -> Self {
        PermCrossConnection { theta }
    }

    pub fn theta(&self) -> Permutation {
        self.theta
    }

    pub fn ground(&self) -> GroundSet {
        self.theta.ground()
    }

    /// `Γ_θ(π̄) = θ⁻¹(π)`.
    pub fn gamma_object(&self, p: &PartitionObject) -> Result<PartitionObject> {
        self.theta.preimage_partition(p)
    }

    /// `Γ_θ(η*)`: the block `θ⁻¹(B)` goes to `θ⁻¹(η(B))`.
    pub fn gamma_morphism(&self, m: &BlockMapMorphism) -> Result<BlockMapMorphism> {
        let (p1, p2) = (m.dom(), m.cod());
        let (g1, g2) = (self.gamma_object(&p1)?, self.gamma_object(&p2)?);
        Ok(BlockMapMorphism::from_fn(g1, g2, |j| {
            let b = p2.block_of(self.theta.apply(mask_min(g2.block(j))));
            let target = p1.block(m.eta(b));
            g1.block_of(self.theta.inverse().apply(mask_min(target)))
        }))
    }

    /// `Δ_θ(A) = θ(A)`.
    pub fn delta_object(&self, a: &SubsetObject) -> Result<SubsetObject> {
        self.theta.image_subset(a)
    }

    /// `Δ_θ(f) = θ⁻¹ f θ`, i.e. `y ↦ θ(f(θ⁻¹ y))`.
    pub fn delta_morphism(&self, f: &SetFunction) -> Result<SetFunction> {
        let inv = self.theta.inverse();
        SetFunction::from_fn(self.delta_object(&f.dom())?, self.delta_object(&f.cod())?, |y| {
            self.theta.apply(f.apply(inv.apply(y)))
        })
    }

    /// `Γ(A, π̄) = {a : Im a ⊆ A, θ⁻¹(π) ⊆ π_a}`.
    pub fn gamma_set(&self, a: &SubsetObject, p: &PartitionObject) -> Result<Vec<Transformation>> {
        let g = self.gamma_object(p)?;
        Ok(enumerate_sing(self.ground())
            .into_iter()
            .filter(|t| t.image_mask() & !a.mask() == 0 && t.is_constant_on(&g))
            .collect())
    }

    /// `Δ(A, π̄) = {a : Im a ⊆ θ(A), π ⊆ π_a}`.
    pub fn delta_set(&self, a: &SubsetObject, p: &PartitionObject) -> Result<Vec<Transformation>> {
        let d = self.delta_object(a)?;
        Ok(enumerate_sing(self.ground())
            .into_iter()
            .filter(|t| t.image_mask() & !d.mask() == 0 && t.is_constant_on(p))
            .collect())
    }

    /// `Γ(f, η*)` on `a ∈ Γ(A, π̄1)`: `x ↦ f(a(θ⁻¹(r)))` with `r` any element of
    /// the `π1` block `η([θx]_{π2})`.
    pub fn gamma_action(&self, f: &SetFunction, m: &BlockMapMorphism, a: &Transformation) -> Transformation {
        let (p1, p2) = (m.dom(), m.cod());
        let inv = self.theta.inverse();
        Transformation::from_fn(self.ground(), |x| {
            let blk = p1.block(m.eta(p2.block_of(self.theta.apply(x))));
            f.apply(a.apply(inv.apply(mask_min(blk))))
        })
    }

    /// `Δ(f, η*)` on `b ∈ Δ(A, π̄1)`: `x ↦ Δ_θ(f)(b(r))` with `r` any element of
    /// the `π1` block `η([x]_{π2})`.
    pub fn delta_action(&self, f: &SetFunction, m: &BlockMapMorphism, b: &Transformation) -> Result<Transformation> {
        let df = self.delta_morphism(f)?;
        let (p1, p2) = (m.dom(), m.cod());
        Ok(Transformation::from_fn(self.ground(), |x| {
            let blk = p1.block(m.eta(p2.block_of(x)));
            df.apply(b.value_on_block(blk))
        }))
    }

    /// `χ(a) = θ⁻¹ a θ`.
    pub fn chi(&self, a: &Transformation) -> Result<Transformation> {
        self.theta.conjugate(a)
    }

    /// Union of all `Γ(A, π̄)`.
    pub fn u_gamma(&self) -> Result<BTreeSet<Transformation>> {
        table_guard(self.ground(), "union of bifunctor sets")?;
        let mut out = BTreeSet::new();
        for a in self.ground().subsets() {
            for p in self.ground().partitions() {
                out.extend(self.gamma_set(&a, &p)?);
            }
        }
        Ok(out)
    }

    /// Union of all `Δ(A, π̄)`.
    pub fn u_delta(&self) -> Result<BTreeSet<Transformation>> {
        table_guard(self.ground(), "union of bifunctor sets")?;
        let mut out = BTreeSet::new();
        for a in self.ground().subsets() {
            for p in self.ground().partitions() {
                out.extend(self.delta_set(&a, &p)?);
            }
        }
        Ok(out)
    }

    /// `(a, θ⁻¹ a θ)`.
    pub fn linked_pair(&self, a: &Transformation) -> Result<LinkedPair> {
        Ok(LinkedPair { a: *a, b: self.chi(a)? })
    }

    pub fn is_linked(&self, pair: &LinkedPair) -> bool {
        self.chi(&pair.a).map(|b| b == pair.b).unwrap_or(false)
    }

    /// `a ∗ b = a θ b`.
    pub fn variant_product(&self, a: &Transformation, b: &Transformation) -> Transformation {
        a.then(&self.theta.as_transformation()).then(b)
    }
}

impl fmt::Display for PermCrossConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma[theta={}]", self.theta)
    }
}

/// A pair of cones `(ρ^a, σ^b)` represented by their transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkedPair {
    pub a: Transformation,
    pub b: Transformation,
}

impl LinkedPair {
    /// `(ρ^a, σ^b)(ρ^{a'}, σ^{b'}) = (ρ^a · ρ^{a'}, σ^{b'} · σ^b)`.
    pub fn product(&self, other: &LinkedPair) -> LinkedPair {
        let rho = cone_compose_p(
            &ConeP::new(self.a).expect("singular"),
            &ConeP::new(other.a).expect("singular"),
        );
        let sigma = cone_compose_pi(
            &ConePi::new(other.b).expect("singular"),
            &ConePi::new(self.b).expect("singular"),
        );
        LinkedPair {
            a: rho.transformation(),
            b: sigma.transformation(),
        }
    }
}

impl fmt::Display for LinkedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.a, self.b)
    }
}

/// `S̃Γ_θ` tabulated over its linked pairs.
#[derive(Debug, Clone)]
pub struct CrossConnectionSemigroup {
    pub theta: Permutation,
    pub table: CayleyTable<LinkedPair>,
}

pub fn build_s_gamma(cxn: &PermCrossConnection) -> Result<CrossConnectionSemigroup> {
    table_guard(cxn.ground(), "cross-connection semigroup")?;
    let roster = enumerate_sing(cxn.ground())
        .iter()
        .map(|a| cxn.linked_pair(a))
        .collect::<Result<Vec<_>>>()?;
    let table = CayleyTable::from_product(roster, LinkedPair::product)?;
    Ok(CrossConnectionSemigroup {
        theta: cxn.theta(),
        table,
    })
}

/// `ψ: a ↦ (a, θ⁻¹aθ)` is an isomorphism `Sing(X) -> S̃Γ_θ`.
pub fn verify_s_gamma_iso(cxn: &PermCrossConnection) -> Result<VerificationReport> {
    let s = build_s_gamma(cxn)?;
    let sing = sing_table(cxn.ground())?;
    let mut report = VerificationReport::new(format!("S-Gamma for theta={} is isomorphic to Sing", cxn.theta()));
    report.check(s.table.roster().iter().all(|p| cxn.is_linked(p)), || {
        "roster holds an unlinked pair".into()
    });
    report.check(
        verify_iso(&sing, &s.table, |a| cxn.linked_pair(a).expect("same ground set"))?,
        || "psi is not a bijective homomorphism".into(),
    );
    Ok(report)
}

/// `φ: a ↦ (θa, aθ)` is an isomorphism from `(Sing(X), ∗)` onto `S̃Γ_θ`.
pub fn verify_variant_iso(cxn: &PermCrossConnection) -> Result<VerificationReport> {
    let s = build_s_gamma(cxn)?;
    let variant = CayleyTable::from_product(enumerate_sing(cxn.ground()), |a, b| cxn.variant_product(a, b))?;
    let th = cxn.theta();
    let mut report = VerificationReport::new(format!("variant product for theta={} is isomorphic to S-Gamma", th));
    report.check(
        verify_iso(&variant, &s.table, |a| LinkedPair {
            a: th.pre(a),
            b: th.post(a),
        })?,
        || "phi is not a bijective homomorphism".into(),
    );
    Ok(report)
}

/// `χ` is a bijection `Γ(A, π̄) -> Δ(A, π̄)` for every object pair and commutes
/// with the bifunctor actions of every `(f, η*)`.
pub fn verify_chi(cxn: &PermCrossConnection) -> Result<VerificationReport> {
    table_guard(cxn.ground(), "duality check")?;
    let ground = cxn.ground();
    let subsets = ground.subsets();
    let partitions = ground.partitions();
    let mut report = VerificationReport::new(format!("duality chi for theta={}", cxn.theta()));
    for a_obj in &subsets {
        for p1 in &partitions {
            let gs = cxn.gamma_set(a_obj, p1)?;
            let ds: BTreeSet<_> = cxn.delta_set(a_obj, p1)?.into_iter().collect();
            let images: BTreeSet<_> = gs.iter().map(|a| cxn.chi(a)).collect::<Result<_>>()?;
            report.check(images.len() == gs.len() && images == ds, || {
                format!("chi is not a bijection Gamma({a_obj},{p1}) -> Delta({a_obj},{p1})")
            });
            for b_obj in &subsets {
                let fs = SetFunction::hom(*a_obj, *b_obj);
                for p2 in &partitions {
                    let ms = BlockMapMorphism::hom(*p1, *p2);
                    for f in &fs {
                        for m in &ms {
                            for a in &gs {
                                let lhs = cxn.chi(&cxn.gamma_action(f, m, a))?;
                                let rhs = cxn.delta_action(f, m, &cxn.chi(a)?)?;
                                report.check(lhs == rhs, || format!("chi square fails at {a}, {f}, {m}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `Γ_θ` and `Δ_θ` are local isomorphisms with the covering property, the
/// bifunctor actions land in their target sets, and both unions are `Sing(X)`.
pub fn verify_cross_connection(cxn: &PermCrossConnection) -> Result<VerificationReport> {
    table_guard(cxn.ground(), "cross-connection verification")?;
    let ground = cxn.ground();
    let mut report = VerificationReport::new(format!("cross-connection {cxn}"));
    let pcat = PartitionCategory::new(ground);
    let gamma = FunctorCandidate::new(
        move |p: &SetPartition| cxn.gamma_object(p).expect("same ground set"),
        move |m: &BlockMapMorphism| cxn.gamma_morphism(m).expect("same ground set"),
    );
    report.absorb(check_local_isomorphism(&pcat, &gamma)?);
    report.check(covers_subsets(ground, |p| gamma.object(p)), || {
        "some subset is a cross-section of no Gamma(pi)".into()
    });
    let scat = PowersetCategory::new(ground);
    let delta = FunctorCandidate::new(
        move |a: &SubsetObject| cxn.delta_object(a).expect("same ground set"),
        move |f: &SetFunction| cxn.delta_morphism(f).expect("same ground set"),
    );
    report.absorb(check_local_isomorphism(&scat, &delta)?);
    report.check(covers_partitions(ground, |a| delta.object(a)), || {
        "some partition has no Delta(A) as cross-section".into()
    });
    let sing: BTreeSet<_> = enumerate_sing(ground).into_iter().collect();
    report.check(cxn.u_gamma()? == sing, || "union of Gamma sets is not Sing(X)".into());
    report.check(cxn.u_delta()? == sing, || "union of Delta sets is not Sing(X)".into());
    Ok(report)
}
