use std::collections::{HashMap, HashSet};
use std::fmt::Display;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::foundation::{GroundSet, SetPartition, SubsetObject};
use crate::partition_category::{inclusion_pi, is_below, BlockMapMorphism};
use crate::powerset::{inclusion_p, SetFunction};
use crate::report::VerificationReport;

/// A finite category with subobjects, enumerated explicitly.
pub trait FiniteCategory: Sync {
    type Object: Copy + Eq + Hash + Ord + Display + Send + Sync;
    type Morphism: Copy + Eq + Hash + Display + Send + Sync;

    fn objects(&self) -> Vec<Self::Object>;
    fn hom(&self, a: &Self::Object, b: &Self::Object) -> Vec<Self::Morphism>;
    fn dom(&self, m: &Self::Morphism) -> Self::Object;
    fn cod(&self, m: &Self::Morphism) -> Self::Object;
    /// Left-to-right composite `f ; g`.
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    fn identity(&self, a: &Self::Object) -> Self::Morphism;
    fn is_subobject(&self, a: &Self::Object, b: &Self::Object) -> bool;
    /// The inclusion `a -> b` when `a` is a subobject of `b`.
    fn inclusion(&self, a: &Self::Object, b: &Self::Object) -> Option<Self::Morphism>;
}

#[derive(Debug, Clone, Copy)]
pub struct PowersetCategory {
    ground: GroundSet,
}

impl PowersetCategory {
    pub fn new(ground: GroundSet) -> Self {
        PowersetCategory { ground }
    }
}

impl FiniteCategory for PowersetCategory {
    type Object = SubsetObject;
    type Morphism = SetFunction;

    fn objects(&self) -> Vec<SubsetObject> {
        self.ground.subsets()
    }
    fn hom(&self, a: &SubsetObject, b: &SubsetObject) -> Vec<SetFunction> {
        SetFunction::hom(*a, *b)
    }
    fn dom(&self, m: &SetFunction) -> SubsetObject {
        m.dom()
    }
    fn cod(&self, m: &SetFunction) -> SubsetObject {
        m.cod()
    }
    fn compose(&self, f: &SetFunction, g: &SetFunction) -> SetFunction {
        f.then(g)
    }
    fn identity(&self, a: &SubsetObject) -> SetFunction {
        SetFunction::identity(*a)
    }
    fn is_subobject(&self, a: &SubsetObject, b: &SubsetObject) -> bool {
        a.is_subset_of(b)
    }
    fn inclusion(&self, a: &SubsetObject, b: &SubsetObject) -> Option<SetFunction> {
        inclusion_p(*a, *b).ok()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PartitionCategory {
    ground: GroundSet,
}

impl PartitionCategory {
    pub fn new(ground: GroundSet) -> Self {
        PartitionCategory { ground }
    }
}

impl FiniteCategory for PartitionCategory {
    type Object = SetPartition;
    type Morphism = BlockMapMorphism;

    fn objects(&self) -> Vec<SetPartition> {
        self.ground.partitions()
    }
    fn hom(&self, a: &SetPartition, b: &SetPartition) -> Vec<BlockMapMorphism> {
        BlockMapMorphism::hom(*a, *b)
    }
    fn dom(&self, m: &BlockMapMorphism) -> SetPartition {
        m.dom()
    }
    fn cod(&self, m: &BlockMapMorphism) -> SetPartition {
        m.cod()
    }
    fn compose(&self, f: &BlockMapMorphism, g: &BlockMapMorphism) -> BlockMapMorphism {
        f.then(g)
    }
    fn identity(&self, a: &SetPartition) -> BlockMapMorphism {
        BlockMapMorphism::identity(*a)
    }
    fn is_subobject(&self, a: &SetPartition, b: &SetPartition) -> bool {
        is_below(a, b)
    }
    fn inclusion(&self, a: &SetPartition, b: &SetPartition) -> Option<BlockMapMorphism> {
        inclusion_pi(*a, *b).ok()
    }
}

type ObjectMap<'a, O> = Box<dyn Fn(&O) -> O + Send + Sync + 'a>;
type MorphismMap<'a, M> = Box<dyn Fn(&M) -> M + Send + Sync + 'a>;

/// An endofunctor candidate: an object map and a morphism map.
pub struct FunctorCandidate<'a, O, M> {
    object_map: ObjectMap<'a, O>,
    morphism_map: MorphismMap<'a, M>,
}

impl<'a, O, M> FunctorCandidate<'a, O, M> {
    pub fn new(
        object_map: impl Fn(&O) -> O + Send + Sync + 'a,
        morphism_map: impl Fn(&M) -> M + Send + Sync + 'a,
    ) -> Self {
        FunctorCandidate {
            object_map: Box::new(object_map),
            morphism_map: Box::new(morphism_map),
        }
    }

    pub fn object(&self, o: &O) -> O {
        (self.object_map)(o)
    }

    pub fn morphism(&self, m: &M) -> M {
        (self.morphism_map)(m)
    }
}

type HomSets<C> =
    HashMap<(<C as FiniteCategory>::Object, <C as FiniteCategory>::Object), Vec<<C as FiniteCategory>::Morphism>>;

/// Check that the candidate is a local isomorphism: a functor that preserves
/// inclusions, is fully faithful, and restricts to an isomorphism of every
/// principal ideal `⟨c⟩` onto `⟨F c⟩`. Errors with
/// [`Error::MalformedCandidate`] if the maps do not even type-check as a
/// functor (objects outside the category, morphisms between the wrong objects).
pub fn check_local_isomorphism<C: FiniteCategory>(
    cat: &C,
    f: &FunctorCandidate<'_, C::Object, C::Morphism>,
) -> Result<VerificationReport> {
    let objects = cat.objects();
    let known: HashSet<C::Object> = objects.iter().copied().collect();
    let fobj: HashMap<C::Object, C::Object> = objects.iter().map(|o| (*o, f.object(o))).collect();
    for (o, fo) in &fobj {
        if !known.contains(fo) {
            return Err(Error::MalformedCandidate(format!(
                "{o} is sent to {fo}, which is not an object"
            )));
        }
    }
    let homs: HomSets<C> = objects
        .iter()
        .flat_map(|a| objects.iter().map(move |b| ((*a, *b), cat.hom(a, b))))
        .collect();
    for ((a, b), ms) in &homs {
        for m in ms {
            let fm = f.morphism(m);
            if cat.dom(&fm) != fobj[a] || cat.cod(&fm) != fobj[b] {
                return Err(Error::MalformedCandidate(format!(
                    "{m} is sent to {fm}, which is not a morphism {} -> {}",
                    fobj[a], fobj[b]
                )));
            }
        }
    }

    let mut report = VerificationReport::new("local isomorphism");

    // functor laws
    for a in &objects {
        report.check(f.morphism(&cat.identity(a)) == cat.identity(&fobj[a]), || {
            format!("identity at {a} is not preserved")
        });
    }
    let laws: Vec<VerificationReport> = objects
        .par_iter()
        .map(|b| {
            let mut r = VerificationReport::new("composition");
            for a in &objects {
                for m1 in &homs[&(*a, *b)] {
                    let fm1 = f.morphism(m1);
                    for c in &objects {
                        for m2 in &homs[&(*b, *c)] {
                            r.check(
                                f.morphism(&cat.compose(m1, m2)) == cat.compose(&fm1, &f.morphism(m2)),
                                || format!("composite of {m1} and {m2} is not preserved"),
                            );
                        }
                    }
                }
            }
            r
        })
        .collect();
    laws.into_iter().for_each(|r| report.absorb(r));

    // inclusions go to inclusions
    for a in &objects {
        for b in objects.iter().filter(|b| cat.is_subobject(a, b)) {
            let image = cat.inclusion(&fobj[a], &fobj[b]);
            let j = cat.inclusion(a, b).expect("a is a subobject of b");
            report.check(image.is_some() && image == Some(f.morphism(&j)), || {
                format!("inclusion {a} -> {b} is not sent to an inclusion")
            });
        }
    }

    // full faithfulness: each hom-set maps bijectively
    for a in &objects {
        for b in &objects {
            let images: HashSet<C::Morphism> = homs[&(*a, *b)].iter().map(|m| f.morphism(m)).collect();
            let target = cat.hom(&fobj[a], &fobj[b]);
            report.check(
                images.len() == homs[&(*a, *b)].len() && images.len() == target.len(),
                || {
                    format!(
                        "hom({a}, {b}) is not mapped bijectively onto hom({}, {})",
                        fobj[a], fobj[b]
                    )
                },
            );
        }
    }

    // principal ideals: ⟨c⟩ -> ⟨F c⟩ is an order isomorphism
    for c in &objects {
        let ideal: Vec<&C::Object> = objects.iter().filter(|a| cat.is_subobject(a, c)).collect();
        let images: HashSet<C::Object> = ideal.iter().map(|a| fobj[*a]).collect();
        let target: HashSet<C::Object> = objects
            .iter()
            .filter(|b| cat.is_subobject(b, &fobj[c]))
            .copied()
            .collect();
        report.check(images.len() == ideal.len() && images == target, || {
            format!("ideal of {c} is not mapped bijectively onto the ideal of {}", fobj[c])
        });
        for a in &ideal {
            for b in &ideal {
                report.check(cat.is_subobject(a, b) == cat.is_subobject(&fobj[*a], &fobj[*b]), || {
                    format!("order between {a} and {b} is not reflected inside the ideal of {c}")
                });
            }
        }
    }
    Ok(report)
}

pub fn is_local_isomorphism<C: FiniteCategory>(
    cat: &C,
    f: &FunctorCandidate<'_, C::Object, C::Morphism>,
) -> Result<bool> {
    Ok(check_local_isomorphism(cat, f)?.passed())
}

/// Every subset is a cross-section of some image partition `F(π̄)`.
pub fn covers_subsets(ground: GroundSet, object_map: impl Fn(&SetPartition) -> SetPartition) -> bool {
    let images: Vec<SetPartition> = ground.partitions().iter().map(object_map).collect();
    ground
        .subsets()
        .iter()
        .all(|a| images.iter().any(|p| p.is_cross_section(a.mask())))
}

/// Every partition has some image subset `F(A)` as a cross-section.
pub fn covers_partitions(ground: GroundSet, object_map: impl Fn(&SubsetObject) -> SubsetObject) -> bool {
    let images: Vec<SubsetObject> = ground.subsets().iter().map(object_map).collect();
    ground
        .partitions()
        .iter()
        .all(|p| images.iter().any(|a| p.is_cross_section(a.mask())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::Permutation;

    fn x(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn p(s: &str) -> SetPartition {
        SetPartition::parse(s).unwrap()
    }

    #[test]
    fn identity_functors_are_local_isomorphisms() {
        let pc = PartitionCategory::new(x(3));
        let id = FunctorCandidate::new(|o: &SetPartition| *o, |m: &BlockMapMorphism| *m);
        assert!(is_local_isomorphism(&pc, &id).unwrap());
        let sc = PowersetCategory::new(x(3));
        let id = FunctorCandidate::new(|o: &SubsetObject| *o, |m: &SetFunction| *m);
        assert!(is_local_isomorphism(&sc, &id).unwrap());
    }

    #[test]
    fn constant_object_map_is_rejected() {
        let pc = PartitionCategory::new(x(3));
        let top = p("123");
        let c = FunctorCandidate::new(
            move |_: &SetPartition| top,
            move |_: &BlockMapMorphism| BlockMapMorphism::identity(top),
        );
        assert!(!is_local_isomorphism(&pc, &c).unwrap());
    }

    #[test]
    fn altering_one_object_breaks_inclusions() {
        let pc = PartitionCategory::new(x(3));
        let (bottom, moved) = (p("123"), p("12|3"));
        let obj = move |o: &SetPartition| if *o == bottom { moved } else { *o };
        let c = FunctorCandidate::new(obj, move |m: &BlockMapMorphism| {
            let (a, b) = (obj(&m.dom()), obj(&m.cod()));
            if (a, b) == (m.dom(), m.cod()) {
                *m
            } else {
                BlockMapMorphism::hom(a, b)[0]
            }
        });
        let r = check_local_isomorphism(&pc, &c).unwrap();
        assert!(!r.passed());
        // 123 sits below 13|2, but 12|3 does not
        assert!(is_below(&bottom, &p("13|2")));
        assert!(!is_below(&obj(&bottom), &obj(&p("13|2"))));
    }

    #[test]
    fn mistyped_candidate_is_malformed() {
        let pc = PartitionCategory::new(x(3));
        let c = FunctorCandidate::new(
            |o: &SetPartition| *o,
            |_: &BlockMapMorphism| BlockMapMorphism::identity(p("123")),
        );
        assert!(matches!(
            is_local_isomorphism(&pc, &c),
            Err(Error::MalformedCandidate(_))
        ));
        let c = FunctorCandidate::new(|_: &SetPartition| p("1234"), |m: &BlockMapMorphism| *m);
        assert!(matches!(
            is_local_isomorphism(&pc, &c),
            Err(Error::MalformedCandidate(_))
        ));
    }

    #[test]
    fn covering_examples() {
        let th = Permutation::parse("2,3,1").unwrap();
        assert!(covers_subsets(x(3), |q| th.preimage_partition(q).unwrap()));
        assert!(covers_partitions(x(3), |a| th.image_subset(a).unwrap()));
        assert!(!covers_subsets(x(3), |_| p("12|3")));
    }
}
