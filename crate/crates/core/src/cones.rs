//! Normal cones in both categories. A cone is stored as the transformation
//! it encodes; components are computed on demand.
//!
//! `ρ^a` in the powerset category has vertex `Im a` and component `a|_C` at `C`.
//! `σ^a` in the partition category has vertex `π̄_a`; its component at `π̄`
//! sends the block `[x]_{π_a}` to `[x·a]_π`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::foundation::{enumerate_sing, mask_min, GroundSet, SetPartition, SubsetObject, Transformation};
use crate::partition_category::{inclusion_pi, normal_factorize_pi, BlockMapMorphism, PartitionObject};
use crate::powerset::{inclusion_p, normal_factorize_p, SetFunction};
use crate::report::VerificationReport;
use crate::semigroup::CayleyTable;

/// Largest ground set for which the full cone semigroups are tabulated.
pub const TABLE_MAX_N: usize = 4;

/// The cone `ρ^a` of the powerset category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeP {
    a: Transformation,
}

/// The cone `σ^a` of the partition category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConePi {
    a: Transformation,
}

impl ConeP {
    pub fn new(a: Transformation) -> Result<Self> {
        if !a.is_singular() {
            return Err(Error::NotSingular(a.to_string()));
        }
        Ok(ConeP { a })
    }

    pub fn transformation(&self) -> Transformation {
        self.a
    }

    pub fn vertex(&self) -> SubsetObject {
        self.a.image().expect("singular")
    }

    /// `a|_C : C -> Im a`.
    pub fn component(&self, c: SubsetObject) -> SetFunction {
        SetFunction::from_fn(c, self.vertex(), |x| self.a.apply(x)).expect("values lie in the image")
    }

    /// Objects where the component is an isomorphism, found by scanning all objects.
    pub fn mset(&self) -> Vec<SubsetObject> {
        self.a
            .ground()
            .subsets()
            .into_iter()
            .filter(|&c| self.component(c).is_isomorphism())
            .collect()
    }
}

impl ConePi {
    pub fn new(a: Transformation) -> Result<Self> {
        if !a.is_singular() {
            return Err(Error::NotSingular(a.to_string()));
        }
        Ok(ConePi { a })
    }

    pub fn transformation(&self) -> Transformation {
        self.a
    }

    pub fn vertex(&self) -> PartitionObject {
        self.a.kernel().expect("singular")
    }

    /// The morphism `π̄ -> π̄_a` with block map `[x]_{π_a} ↦ [x·a]_π`.
    pub fn component(&self, p: PartitionObject) -> BlockMapMorphism {
        let v = self.vertex();
        BlockMapMorphism::from_fn(p, v, |j| p.block_of(self.a.value_on_block(v.block(j))))
    }

    /// The cone as an element of `π̄_a`: one value per block of the vertex.
    pub fn as_element(&self) -> Vec<usize> {
        self.vertex()
            .blocks()
            .iter()
            .map(|&b| self.a.value_on_block(b))
            .collect()
    }

    pub fn mset(&self) -> Vec<PartitionObject> {
        self.a
            .ground()
            .partitions()
            .into_iter()
            .filter(|&p| self.component(p).is_isomorphism())
            .collect()
    }
}

impl fmt::Display for ConeP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho:{}", self.a)
    }
}

impl fmt::Display for ConePi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma:{}", self.a)
    }
}

/// The components of `γ · δ` at every object: `γ(C) ; δ(c_γ)°`.
pub fn compose_family_p(gamma: &ConeP, delta: &ConeP) -> Vec<(SubsetObject, SetFunction)> {
    let epi = normal_factorize_p(&delta.component(gamma.vertex())).epi();
    gamma
        .a
        .ground()
        .subsets()
        .into_iter()
        .map(|c| (c, gamma.component(c).then(&epi)))
        .collect()
}

/// `γ · δ`: append the epimorphic part of `δ`'s component at `γ`'s vertex to
/// `γ`'s components, then read the transformation off the singleton components.
pub fn cone_compose_p(gamma: &ConeP, delta: &ConeP) -> ConeP {
    let ground = gamma.a.ground();
    let epi = normal_factorize_p(&delta.component(gamma.vertex())).epi();
    let images: Vec<usize> = ground
        .elements()
        .map(|x| {
            let single = SubsetObject::from_elements(ground, [x]).expect("singletons are proper");
            gamma.component(single).then(&epi).apply(x)
        })
        .collect();
    ConeP::new(Transformation::new(ground, &images).expect("values in X")).expect("product of singular maps")
}

/// The components of `γ · δ` at every object: `γ(π̄) ; δ(c_γ)°`.
pub fn compose_family_pi(gamma: &ConePi, delta: &ConePi) -> Vec<(PartitionObject, BlockMapMorphism)> {
    let epi = normal_factorize_pi(&delta.component(gamma.vertex())).epi();
    gamma
        .a
        .ground()
        .partitions()
        .into_iter()
        .map(|p| (p, gamma.component(p).then(&epi)))
        .collect()
}

/// `γ · δ` in the partition category. The vertex of `γ` carries `γ` itself as
/// the element `â ∈ π̄_a`; pushing it along `δ(c_γ)°` gives the product as an
/// element of the new vertex. Working with elements rather than component
/// families keeps the result determined even when the category has a single
/// object (`n = 2`).
pub fn cone_compose_pi(gamma: &ConePi, delta: &ConePi) -> ConePi {
    let ground = gamma.a.ground();
    let epi = normal_factorize_pi(&delta.component(gamma.vertex())).epi();
    let values = epi.act(&gamma.as_element());
    let vertex = epi.cod();
    let images: Vec<usize> = ground.elements().map(|x| values[vertex.block_of(x)]).collect();
    ConePi::new(Transformation::new(ground, &images).expect("values in X")).expect("product of singular maps")
}

/// `ρ^u` with `u` fixing `D` and sending everything else to `min D`.
pub fn idempotent_cone_p(d: SubsetObject) -> ConeP {
    let m = d.least();
    let u = Transformation::from_fn(d.ground(), |x| if d.contains(x) { x } else { m });
    ConeP { a: u }
}

/// The canonical idempotent with kernel `π` and the block minima as image.
pub fn canonical_idempotent(p: &SetPartition) -> Transformation {
    Transformation::from_fn(p.ground(), |x| mask_min(p.block_mask_of(x)))
}

/// `σ^e` for the canonical idempotent `e` with kernel `π`.
pub fn idempotent_cone_pi(p: PartitionObject) -> ConePi {
    ConePi {
        a: canonical_idempotent(&p),
    }
}

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

/// The semigroup of powerset cones under cone composition.
pub fn build_tp(ground: GroundSet) -> Result<CayleyTable<ConeP>> {
    table_guard(ground, "powerset cone semigroup")?;
    let roster: Vec<ConeP> = enumerate_sing(ground).into_iter().map(|a| ConeP { a }).collect();
    CayleyTable::from_product(roster, cone_compose_p)
}

/// The semigroup of partition cones under cone composition.
pub fn build_tpi(ground: GroundSet) -> Result<CayleyTable<ConePi>> {
    table_guard(ground, "partition cone semigroup")?;
    let roster: Vec<ConePi> = enumerate_sing(ground).into_iter().map(|a| ConePi { a }).collect();
    CayleyTable::from_product(roster, cone_compose_pi)
}

/// Every powerset cone satisfies `j(C, C') ; γ(C') = γ(C)` and has a nonempty M-set.
pub fn verify_cone_axiom_p(ground: GroundSet) -> VerificationReport {
    let objects = ground.subsets();
    let reports: Vec<VerificationReport> = enumerate_sing(ground)
        .par_iter()
        .map(|&a| {
            let cone = ConeP { a };
            let mut r = VerificationReport::new(cone.to_string());
            for &c in &objects {
                for &c2 in objects.iter().filter(|c2| c.is_subset_of(c2)) {
                    let j = inclusion_p(c, c2).expect("c ⊆ c2");
                    r.check(j.then(&cone.component(c2)) == cone.component(c), || {
                        format!("{cone}: inclusion {c} -> {c2} breaks the cone axiom")
                    });
                }
            }
            r.check(!cone.mset().is_empty(), || format!("{cone} has an empty M-set"));
            r
        })
        .collect();
    let mut report = VerificationReport::new(format!("powerset cone axiom (n={})", ground.size()));
    reports.into_iter().for_each(|r| report.absorb(r));
    report
}

/// Every partition cone satisfies the cone axiom and has a nonempty M-set.
pub fn verify_cone_axiom_pi(ground: GroundSet) -> VerificationReport {
    let objects = ground.partitions();
    let reports: Vec<VerificationReport> = enumerate_sing(ground)
        .par_iter()
        .map(|&a| {
            let cone = ConePi { a };
            let mut r = VerificationReport::new(cone.to_string());
            for &p in &objects {
                for &p2 in objects.iter().filter(|p2| p2.refines(&p)) {
                    let j = inclusion_pi(p, p2).expect("p below p2");
                    r.check(j.then(&cone.component(p2)) == cone.component(p), || {
                        format!("{cone}: inclusion {p} -> {p2} breaks the cone axiom")
                    });
                }
            }
            r.check(!cone.mset().is_empty(), || format!("{cone} has an empty M-set"));
            r
        })
        .collect();
    let mut report = VerificationReport::new(format!("partition cone axiom (n={})", ground.size()));
    reports.into_iter().for_each(|r| report.absorb(r));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Transformation {
        Transformation::parse(s).unwrap()
    }

    fn x(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn rho(s: &str) -> ConeP {
        ConeP::new(t(s)).unwrap()
    }

    fn sigma(s: &str) -> ConePi {
        ConePi::new(t(s)).unwrap()
    }

    fn sub(n: usize, s: &str) -> SubsetObject {
        SubsetObject::parse(x(n), s).unwrap()
    }

    #[test]
    fn component_examples() {
        let c = rho("1,1,2");
        assert_eq!(c.component(sub(3, "{2,3}")).to_string(), "f: {2,3}->{1,2} [1,2]");
        assert!(c.component(sub(3, "{1,3}")).is_isomorphism());
        let s = sigma("1,1,3");
        assert_eq!(s.component(s.vertex()), BlockMapMorphism::identity(s.vertex()));
    }

    #[test]
    fn rejects_bijections() {
        assert!(matches!(ConeP::new(t("2,1")), Err(Error::NotSingular(_))));
        assert!(ConePi::new(t("1,2,3")).is_err());
    }

    #[test]
    fn composition_examples() {
        assert_eq!(cone_compose_p(&rho("1,1,2"), &rho("2,2,3")), rho("2,2,2"));
        let e = rho("1,1,3");
        assert_eq!(cone_compose_p(&e, &e), e);
        // σ^a · σ^b = σ^{ba}
        let (a, b) = (t("1,1,2"), t("2,2,3"));
        assert_eq!(
            cone_compose_pi(&sigma("1,1,2"), &sigma("2,2,3")),
            ConePi::new(b.then(&a)).unwrap()
        );
        assert_eq!(b.then(&a), t("1,1,2"));
    }

    #[test]
    fn families_match_the_closed_form_on_n3() {
        let all = enumerate_sing(x(3));
        for &a in &all {
            for &b in &all {
                let ab = ConeP { a: a.then(&b) };
                for (c, comp) in compose_family_p(&ConeP { a }, &ConeP { a: b }) {
                    assert_eq!(comp, ab.component(c));
                }
                let ba = ConePi { a: b.then(&a) };
                for (p, comp) in compose_family_pi(&ConePi { a }, &ConePi { a: b }) {
                    assert_eq!(comp, ba.component(p));
                }
            }
        }
    }

    #[test]
    fn mset_examples() {
        let m: Vec<String> = rho("1,1,2").mset().iter().map(|c| c.to_string()).collect();
        assert_eq!(m, vec!["{1,3}", "{2,3}"]);
        let m: Vec<String> = sigma("1,1,2").mset().iter().map(|p| p.to_string()).collect();
        assert_eq!(m, vec!["13|2", "1|23"]);
        let m: Vec<String> = rho("2,2,2").mset().iter().map(|c| c.to_string()).collect();
        assert_eq!(m, vec!["{1}", "{2}", "{3}"]);
    }

    #[test]
    fn mset_is_the_set_of_cross_sections() {
        for n in [3, 4] {
            for a in enumerate_sing(x(n)) {
                let mut want = a.kernel().unwrap().cross_sections();
                want.sort();
                assert_eq!(ConeP { a }.mset(), want);
                let im = a.image_mask();
                let want: Vec<_> = x(n)
                    .partitions()
                    .into_iter()
                    .filter(|p| p.is_cross_section(im))
                    .collect();
                assert_eq!(ConePi { a }.mset(), want);
            }
        }
    }

    #[test]
    fn idempotent_cones() {
        let c = idempotent_cone_p(sub(3, "{1,2}"));
        assert_eq!(c.transformation(), t("1,2,1"));
        assert!(c.transformation().is_idempotent());
        assert_eq!(c.component(sub(3, "{1,2}")), SetFunction::identity(sub(3, "{1,2}")));
        assert_eq!(idempotent_cone_p(sub(2, "{1}")).transformation(), t("1,1"));
        let s = idempotent_cone_pi(SetPartition::parse("12|3").unwrap());
        assert_eq!(s.transformation(), t("1,1,3"));
        assert_eq!(s.component(s.vertex()), BlockMapMorphism::identity(s.vertex()));
    }

    #[test]
    fn labels() {
        assert_eq!(rho("1,1,2").to_string(), "rho:1,1,2");
        assert_eq!(sigma("1,1,2").to_string(), "sigma:1,1,2");
    }

    #[test]
    fn cone_axiom_holds_on_n3() {
        let r = verify_cone_axiom_p(x(3));
        assert!(r.passed(), "{r}");
        let r = verify_cone_axiom_pi(x(3));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn n2_tables() {
        let tp = build_tp(x(2)).unwrap();
        let tpi = build_tpi(x(2)).unwrap();
        assert_eq!(tp.order(), 2);
        // powerset side: products take the second constant; partition side: the first
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(tp.product(i, j), j);
                assert_eq!(tpi.product(i, j), i);
            }
        }
        assert!(matches!(build_tp(x(5)), Err(Error::SizeGuard { .. })));
    }
}
