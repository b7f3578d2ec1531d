//! H-functors of both categories and the functors `P`, `Q`, `R` identifying
//! the normal dual of the powerset category with the partition category,
//! and the normal dual of the partition category with the powerset category.
//!
//! A powerset H-functor `H(e;-)` depends only on `π_e`, so it is keyed by that
//! kernel; a partition H-functor depends only on `Im e` and is keyed by it.

use std::collections::BTreeSet;
use std::fmt;

use crate::cones::canonical_idempotent;
use crate::error::{Error, Result};
use crate::foundation::{enumerate_sing, mask_min, GroundSet, SetPartition, SubsetObject, Transformation};
use crate::partition_category::{is_below, BlockMapMorphism, PartitionObject};
use crate::powerset::SetFunction;
use crate::report::VerificationReport;

/// Largest ground set the exhaustive duality checks accept.
pub const VERIFY_MAX_N: usize = 4;

/// Largest ground set on which naturality squares are walked exhaustively.
pub const NATURALITY_MAX_N: usize = 3;

/// `H(e;-)` on the powerset category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HFunctorP {
    kernel: SetPartition,
}

impl HFunctorP {
    pub fn new(kernel: SetPartition) -> Self {
        HFunctorP { kernel }
    }

    /// The functor of an idempotent.
    pub fn of_idempotent(e: &Transformation) -> Result<Self> {
        Ok(HFunctorP { kernel: e.kernel()? })
    }

    pub fn kernel(&self) -> SetPartition {
        self.kernel
    }

    /// The canonical idempotent with this kernel (block minima as image).
    pub fn idempotent(&self) -> Transformation {
        canonical_idempotent(&self.kernel)
    }

    /// `a ∈ H(e;A)`: `π_a ⊇ π_e` and `Im a ⊆ A`.
    pub fn contains(&self, a: &Transformation, obj: &SubsetObject) -> bool {
        a.image_mask() & !obj.mask() == 0 && a.is_constant_on(&self.kernel)
    }

    /// `H(e;A)`, filtered from `Sing(X)` in lexicographic order.
    pub fn h_set(&self, obj: &SubsetObject) -> Vec<Transformation> {
        enumerate_sing(self.kernel.ground())
            .into_iter()
            .filter(|a| self.contains(a, obj))
            .collect()
    }

    /// `H(e;g)(a) = a ; g` for `a ∈ H(e; dom g)`.
    pub fn h_apply(&self, g: &SetFunction, a: &Transformation) -> Result<Transformation> {
        if !self.contains(a, &g.dom()) {
            return Err(Error::NotMember {
                element: a.to_string(),
                set: format!("{self}({})", g.dom()),
            });
        }
        Ok(Transformation::from_fn(a.ground(), |x| g.apply(a.apply(x))))
    }

    /// `H(e;g)` tabulated on `H(e; dom g)`.
    pub fn h_map(&self, g: &SetFunction) -> Vec<(Transformation, Transformation)> {
        self.h_set(&g.dom())
            .into_iter()
            .map(|a| (a, self.h_apply(g, &a).expect("member of the domain set")))
            .collect()
    }
}

impl fmt::Display for HFunctorP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H[ker={}]", self.kernel)
    }
}

/// `H(e;-)` on the partition category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HFunctorPi {
    image: SubsetObject,
}

impl HFunctorPi {
    pub fn new(image: SubsetObject) -> Self {
        HFunctorPi { image }
    }

    pub fn of_idempotent(e: &Transformation) -> Result<Self> {
        Ok(HFunctorPi { image: e.image()? })
    }

    pub fn image(&self) -> SubsetObject {
        self.image
    }

    /// `a ∈ H(e;π̄)`: `Im a ⊆ Im e` and `π_a ⊇ π`.
    pub fn contains(&self, a: &Transformation, p: &PartitionObject) -> bool {
        a.image_mask() & !self.image.mask() == 0 && a.is_constant_on(p)
    }

    pub fn h_set(&self, p: &PartitionObject) -> Vec<Transformation> {
        enumerate_sing(self.image.ground())
            .into_iter()
            .filter(|a| self.contains(a, p))
            .collect()
    }

    /// `H(e;η*)(a)`: `x ↦ a` evaluated on the block `η([x]_{π2})` of `π1`.
    pub fn h_apply(&self, m: &BlockMapMorphism, a: &Transformation) -> Result<Transformation> {
        if !self.contains(a, &m.dom()) {
            return Err(Error::NotMember {
                element: a.to_string(),
                set: format!("{self}({})", m.dom()),
            });
        }
        let (p1, p2) = (m.dom(), m.cod());
        Ok(Transformation::from_fn(a.ground(), |x| {
            a.value_on_block(p1.block(m.eta(p2.block_of(x))))
        }))
    }

    pub fn h_map(&self, m: &BlockMapMorphism) -> Vec<(Transformation, Transformation)> {
        self.h_set(&m.dom())
            .into_iter()
            .map(|a| (a, self.h_apply(m, &a).expect("member of the domain set")))
            .collect()
    }
}

impl fmt::Display for HFunctorPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H[im={}]", self.image)
    }
}

/// A natural transformation `H(e;-) -> H(f;-)` acting by `a ↦ w ; a`, where
/// `w` lies in `f · Sing(X) · e` for the canonical idempotents `e`, `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NatTransformP {
    source: HFunctorP,
    target: HFunctorP,
    w: Transformation,
}

impl NatTransformP {
    /// Requires `π_w ⊇ π_f` and `Im w ⊆ Im e`.
    pub fn new(source: HFunctorP, target: HFunctorP, w: Transformation) -> Result<Self> {
        let im_e = source.idempotent().image_mask();
        if !w.is_constant_on(&target.kernel) || w.image_mask() & !im_e != 0 {
            return Err(Error::Invalid {
                kind: "natural transformation",
                reason: format!("{w} is not in f·Sing(X)·e for {source} -> {target}"),
            });
        }
        Ok(NatTransformP { source, target, w })
    }

    pub fn source(&self) -> HFunctorP {
        self.source
    }

    pub fn target(&self) -> HFunctorP {
        self.target
    }

    pub fn w(&self) -> Transformation {
        self.w
    }

    /// Component at `C`: `a ↦ w ; a`.
    pub fn nat_apply(&self, c: &SubsetObject, a: &Transformation) -> Result<Transformation> {
        if !self.source.contains(a, c) {
            return Err(Error::NotMember {
                element: a.to_string(),
                set: format!("{}({c})", self.source),
            });
        }
        Ok(self.w.then(a))
    }

    /// Vertical composite `self` then `next`: `a ↦ w_next ; w_self ; a`.
    pub fn then(&self, next: &NatTransformP) -> Result<NatTransformP> {
        if self.target != next.source {
            return Err(Error::NotComposable {
                left: self.target.to_string(),
                right: next.source.to_string(),
            });
        }
        NatTransformP::new(self.source, next.target, next.w.then(&self.w))
    }

    /// All natural transformations between two H-functors.
    pub fn hom(source: HFunctorP, target: HFunctorP) -> Vec<NatTransformP> {
        enumerate_sing(source.kernel.ground())
            .into_iter()
            .filter_map(|w| NatTransformP::new(source, target, w).ok())
            .collect()
    }
}

/// A natural transformation `H(e;-) -> H(f;-)` of partition H-functors, acting
/// by `a ↦ a ; w` for a set function `w: Im e -> Im f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NatTransformPi {
    w: SetFunction,
}

impl NatTransformPi {
    pub fn new(w: SetFunction) -> Self {
        NatTransformPi { w }
    }

    pub fn source(&self) -> HFunctorPi {
        HFunctorPi::new(self.w.dom())
    }

    pub fn target(&self) -> HFunctorPi {
        HFunctorPi::new(self.w.cod())
    }

    pub fn w(&self) -> SetFunction {
        self.w
    }

    pub fn nat_apply(&self, p: &PartitionObject, a: &Transformation) -> Result<Transformation> {
        if !self.source().contains(a, p) {
            return Err(Error::NotMember {
                element: a.to_string(),
                set: format!("{}({p})", self.source()),
            });
        }
        Ok(Transformation::from_fn(a.ground(), |x| self.w.apply(a.apply(x))))
    }
}

/// `P(H(e;-)) = π̄_e`.
pub fn functor_p(h: &HFunctorP) -> PartitionObject {
    h.kernel
}

/// `P` on morphisms: `[x]_{π_f} ↦ [x·w]_{π_e}`, a morphism `π̄_e -> π̄_f`.
pub fn functor_p_morphism(t: &NatTransformP) -> BlockMapMorphism {
    let (pe, pf) = (t.source.kernel, t.target.kernel);
    BlockMapMorphism::new(
        pe,
        pf,
        &pf.blocks()
            .iter()
            .map(|&b| pe.block_of(t.w.value_on_block(b)))
            .collect::<Vec<_>>(),
    )
    .expect("block indices in range")
}

/// `Q(π̄) = H(e;-)` for any idempotent with kernel `π`.
pub fn functor_q(p: &PartitionObject) -> HFunctorP {
    HFunctorP::new(*p)
}

/// `Q` on morphisms: `w` sends `x` to the least element of the block `η([x]_{π2})`.
pub fn functor_q_morphism(m: &BlockMapMorphism) -> NatTransformP {
    let (p1, p2) = (m.dom(), m.cod());
    let w = Transformation::from_fn(p1.ground(), |x| mask_min(p1.block(m.eta(p2.block_of(x)))));
    NatTransformP::new(functor_q(&p1), functor_q(&p2), w).expect("w lies in f·Sing(X)·e")
}

/// `R(H(e;-)) = Im e`.
pub fn functor_r(h: &HFunctorPi) -> SubsetObject {
    h.image
}

/// `R(σ) = w`.
pub fn functor_r_morphism(t: &NatTransformPi) -> SetFunction {
    t.w
}

fn size_guard(ground: GroundSet) -> Result<()> {
    if ground.size() > VERIFY_MAX_N {
        return Err(Error::SizeGuard {
            what: "normal dual verification",
            n: ground.size(),
            max: VERIFY_MAX_N,
        });
    }
    Ok(())
}

/// `{e ; g : g: Im e -> A}` — the defining description of `H(e;A)`.
fn compositional_set_p(e: &Transformation, obj: &SubsetObject) -> BTreeSet<Transformation> {
    let im = e.image().expect("singular");
    SetFunction::hom(im, *obj)
        .into_iter()
        .map(|g| Transformation::from_fn(e.ground(), |x| g.apply(e.apply(x))))
        .collect()
}

/// `{b ; e : π_b ⊇ π}` — the defining description of `H(e;π̄)`.
fn compositional_set_pi(e: &Transformation, p: &PartitionObject, sing: &[Transformation]) -> BTreeSet<Transformation> {
    sing.iter().filter(|b| b.is_constant_on(p)).map(|b| b.then(e)).collect()
}

/// The powerset side: `P` and `Q` are mutually inverse isomorphisms between the
/// normal dual of the powerset category and the partition category.
pub fn verify_dual_p(ground: GroundSet) -> Result<VerificationReport> {
    size_guard(ground)?;
    let sing = enumerate_sing(ground);
    let subsets = ground.subsets();
    let partitions = ground.partitions();
    let mut report = VerificationReport::new(format!("normal dual of the powerset category (n={})", ground.size()));

    // every idempotent's H-functor is the one keyed by its kernel
    for e in sing.iter().filter(|e| e.is_idempotent()) {
        let h = HFunctorP::of_idempotent(e)?;
        for c in &subsets {
            let keyed: BTreeSet<_> = h.h_set(c).into_iter().collect();
            report.check(keyed == compositional_set_p(e, c), || {
                format!("H({e};{c}) differs from {h}({c})")
            });
        }
    }

    // objects: P ∘ Q = 1 and Q ∘ P = 1; distinct kernels give distinct functors
    let functors: Vec<HFunctorP> = partitions.iter().map(functor_q).collect();
    for (p, h) in partitions.iter().zip(&functors) {
        report.check(functor_p(h) == *p, || format!("PQ({p}) = {}", functor_p(h)));
        report.check(functor_q(&functor_p(h)) == *h, || format!("QP({h}) differs"));
    }
    for (i, h1) in functors.iter().enumerate() {
        for h2 in &functors[i + 1..] {
            report.check(subsets.iter().any(|c| h1.h_set(c) != h2.h_set(c)), || {
                format!("{h1} and {h2} agree on every object")
            });
        }
    }

    // order: π̄1 <= π̄2 exactly when H(Q π1; -) is a subfunctor of H(Q π2; -)
    for (p1, h1) in partitions.iter().zip(&functors) {
        for (p2, h2) in partitions.iter().zip(&functors) {
            let sub = subsets.iter().all(|c| {
                let big: BTreeSet<_> = h2.h_set(c).into_iter().collect();
                h1.h_set(c).iter().all(|a| big.contains(a))
            });
            report.check(sub == is_below(p1, p2), || {
                format!("order mismatch between {p1} and {p2}")
            });
        }
    }

    // hom-sets: P and Q are inverse bijections; distinct w act differently
    for &p1 in &partitions {
        for &p2 in &partitions {
            let (h1, h2) = (functor_q(&p1), functor_q(&p2));
            let homs = BlockMapMorphism::hom(p1, p2);
            let nats = NatTransformP::hom(h1, h2);
            report.check(homs.len() == nats.len(), || {
                format!(
                    "{p1} -> {p2}: {} morphisms but {} natural transformations",
                    homs.len(),
                    nats.len()
                )
            });
            for m in &homs {
                report.check(functor_p_morphism(&functor_q_morphism(m)) == *m, || {
                    format!("PQ({m}) differs")
                });
            }
            let mut actions = BTreeSet::new();
            for t in &nats {
                report.check(functor_q_morphism(&functor_p_morphism(t)) == *t, || {
                    format!("QP(w = {}) differs", t.w)
                });
                let action: Vec<Transformation> = subsets
                    .iter()
                    .flat_map(|c| h1.h_set(c).into_iter().map(|a| t.nat_apply(c, &a).expect("member")))
                    .collect();
                report.check(actions.insert(action), || {
                    format!("w = {} acts like another natural transformation", t.w)
                });
            }
        }
    }

    if ground.size() <= NATURALITY_MAX_N {
        report.absorb(naturality_p(ground, &partitions, &subsets)?);
    }
    Ok(report)
}

/// Naturality squares, component targets and functoriality of `P`.
fn naturality_p(
    ground: GroundSet,
    partitions: &[SetPartition],
    subsets: &[SubsetObject],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("powerset dual naturality (n={})", ground.size()));
    for &p1 in partitions {
        for &p2 in partitions {
            for t in NatTransformP::hom(functor_q(&p1), functor_q(&p2)) {
                for &a_obj in subsets {
                    for a in t.source.h_set(&a_obj) {
                        let wa = t.nat_apply(&a_obj, &a)?;
                        report.check(t.target.contains(&wa, &a_obj), || {
                            format!("w;a = {wa} leaves {}", t.target)
                        });
                        for &b_obj in subsets {
                            for g in SetFunction::hom(a_obj, b_obj) {
                                let lhs = t.target.h_apply(&g, &wa)?;
                                let rhs = t.nat_apply(&b_obj, &t.source.h_apply(&g, &a)?)?;
                                report.check(lhs == rhs, || format!("naturality fails for w = {}, a = {a}, {g}", t.w));
                            }
                        }
                    }
                }
                for &p3 in partitions {
                    for s in NatTransformP::hom(functor_q(&p2), functor_q(&p3)) {
                        let ts = t.then(&s)?;
                        report.check(
                            functor_p_morphism(&ts) == functor_p_morphism(&t).then(&functor_p_morphism(&s)),
                            || format!("P does not preserve the composite of w = {} and {}", t.w, s.w),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The partition side: `R` is an isomorphism from the normal dual of the
/// partition category onto the powerset category.
pub fn verify_dual_pi(ground: GroundSet) -> Result<VerificationReport> {
    size_guard(ground)?;
    let sing = enumerate_sing(ground);
    let subsets = ground.subsets();
    let partitions = ground.partitions();
    let mut report = VerificationReport::new(format!("normal dual of the partition category (n={})", ground.size()));

    for e in sing.iter().filter(|e| e.is_idempotent()) {
        let h = HFunctorPi::of_idempotent(e)?;
        for p in &partitions {
            let keyed: BTreeSet<_> = h.h_set(p).into_iter().collect();
            report.check(keyed == compositional_set_pi(e, p, &sing), || {
                format!("H({e};{p}) differs from {h}({p})")
            });
        }
    }

    let functors: Vec<HFunctorPi> = subsets.iter().map(|&a| HFunctorPi::new(a)).collect();
    for (a, h) in subsets.iter().zip(&functors) {
        report.check(functor_r(h) == *a, || format!("R({h}) = {}", functor_r(h)));
    }
    for (i, h1) in functors.iter().enumerate() {
        for h2 in &functors[i + 1..] {
            report.check(partitions.iter().any(|p| h1.h_set(p) != h2.h_set(p)), || {
                format!("{h1} and {h2} agree on every object")
            });
        }
    }
    for (a, h1) in subsets.iter().zip(&functors) {
        for (b, h2) in subsets.iter().zip(&functors) {
            let sub = partitions.iter().all(|p| {
                let big: BTreeSet<_> = h2.h_set(p).into_iter().collect();
                h1.h_set(p).iter().all(|x| big.contains(x))
            });
            report.check(sub == a.is_subset_of(b), || {
                format!("order mismatch between {a} and {b}")
            });
        }
    }

    for &a in &subsets {
        for &b in &subsets {
            let mut actions = BTreeSet::new();
            for w in SetFunction::hom(a, b) {
                let t = NatTransformPi::new(w);
                report.check(functor_r_morphism(&t) == w, || format!("R does not recover {w}"));
                let action: Vec<Transformation> = partitions
                    .iter()
                    .flat_map(|p| {
                        t.source()
                            .h_set(p)
                            .into_iter()
                            .map(|x| t.nat_apply(p, &x).expect("member"))
                    })
                    .collect();
                report.check(actions.insert(action), || {
                    format!("{w} acts like another natural transformation")
                });
                if ground.size() <= NATURALITY_MAX_N {
                    for &p1 in &partitions {
                        for x in t.source().h_set(&p1) {
                            let wx = t.nat_apply(&p1, &x)?;
                            report.check(t.target().contains(&wx, &p1), || {
                                format!("{w} sends {x} outside the target")
                            });
                            for &p2 in &partitions {
                                for m in BlockMapMorphism::hom(p1, p2) {
                                    let lhs = t.target().h_apply(&m, &wx)?;
                                    let rhs = t.nat_apply(&p2, &t.source().h_apply(&m, &x)?)?;
                                    report.check(lhs == rhs, || format!("naturality fails for {w}, {x}, {m}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Both dualities.
pub fn verify_dual_isomorphisms(ground: GroundSet) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("normal duals (n={})", ground.size()));
    report.absorb(verify_dual_p(ground)?);
    report.absorb(verify_dual_pi(ground)?);
    Ok(report)
}
