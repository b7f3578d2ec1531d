//! The partition category: one object `π̄` per non-identity partition `π`,
//! with morphisms `η*: π̄1 -> π̄2` induced by block maps `η: π2 -> π1`.
//!
//! `π̄1 <= π̄2` exactly when `π2` refines `π1`.

use std::fmt;

use crate::cones::idempotent_cone_pi;
use crate::error::{parse_error, Error, Result};
use crate::foundation::{mask_min, GroundSet, SetPartition, MAX_N};
use crate::report::VerificationReport;

/// Objects are represented by their underlying partition.
pub type PartitionObject = SetPartition;

/// Largest ground set the exhaustive partition-category checks accept.
pub const VERIFY_MAX_N: usize = 4;

/// `η*: dom -> cod`, stored as the block map `η` from `cod`'s blocks to `dom`'s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockMapMorphism {
    dom: PartitionObject,
    cod: PartitionObject,
    eta: [u8; MAX_N],
}

impl BlockMapMorphism {
    /// `eta[j]` is the index of the `dom` block that block `j` of `cod` is sent to.
    pub fn new(dom: PartitionObject, cod: PartitionObject, eta: &[usize]) -> Result<Self> {
        dom.ground().check_same(cod.ground())?;
        if eta.len() != cod.block_count() {
            return Err(Error::Invalid {
                kind: "block map",
                reason: format!("{} entries for {} blocks of {cod}", eta.len(), cod.block_count()),
            });
        }
        let mut arr = [0u8; MAX_N];
        for (slot, &i) in arr.iter_mut().zip(eta) {
            if i >= dom.block_count() {
                return Err(Error::Invalid {
                    kind: "block map",
                    reason: format!("block index {i} out of range for {dom}"),
                });
            }
            *slot = i as u8;
        }
        Ok(BlockMapMorphism { dom, cod, eta: arr })
    }

    pub(crate) fn from_fn(dom: PartitionObject, cod: PartitionObject, f: impl Fn(usize) -> usize) -> Self {
        let mut eta = [0u8; MAX_N];
        for (j, slot) in eta.iter_mut().enumerate().take(cod.block_count()) {
            let i = f(j);
            debug_assert!(i < dom.block_count());
            *slot = i as u8;
        }
        BlockMapMorphism { dom, cod, eta }
    }

    /// Parse `eta: 12|34 -> 13|2|4 [0,0]`, written in the direction of `η`
    /// (codomain partition first); the label before `:` is optional.
    pub fn parse(input: &str) -> Result<Self> {
        let err = |why: String| parse_error("partition morphism", input, why);
        let body = match input.split_once(':') {
            Some((_, rest)) => rest,
            None => input,
        };
        let (objects, values) = body.split_once('[').ok_or_else(|| err("missing [indices]".into()))?;
        let values = values
            .trim()
            .strip_suffix(']')
            .ok_or_else(|| err("missing closing ]".into()))?;
        let (cod, dom) = objects.split_once("->").ok_or_else(|| err("missing ->".into()))?;
        let cod = SetPartition::parse(cod.trim()).map_err(|e| err(e.to_string()))?;
        let dom = SetPartition::parse(dom.trim()).map_err(|e| err(e.to_string()))?;
        let idx: Vec<usize> = if values.trim().is_empty() {
            Vec::new()
        } else {
            values
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("{t:?} is not a block index")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(dom, cod, &idx).map_err(|e| err(e.to_string()))
    }

    pub fn identity(p: PartitionObject) -> Self {
        Self::from_fn(p, p, |j| j)
    }

    #[inline]
    pub fn dom(&self) -> PartitionObject {
        self.dom
    }

    #[inline]
    pub fn cod(&self) -> PartitionObject {
        self.cod
    }

    /// `η(j)`: the `dom` block index hit by block `j` of `cod`.
    #[inline]
    pub fn eta(&self, j: usize) -> usize {
        self.eta[j] as usize
    }

    pub fn eta_values(&self) -> &[u8] {
        &self.eta[..self.cod.block_count()]
    }

    /// Left-to-right composite `self ; m`; the block map is `m`'s followed by `self`'s.
    #[inline]
    pub fn then(&self, m: &BlockMapMorphism) -> BlockMapMorphism {
        assert_eq!(self.cod, m.dom, "partition morphisms are not composable");
        Self::from_fn(self.dom, m.cod, |j| self.eta(m.eta(j)))
    }

    pub fn compose(&self, m: &BlockMapMorphism) -> Result<BlockMapMorphism> {
        if self.cod != m.dom {
            return Err(Error::NotComposable {
                left: self.cod.to_string(),
                right: m.dom.to_string(),
            });
        }
        Ok(self.then(m))
    }

    fn image_bits(&self) -> u16 {
        self.eta_values().iter().fold(0, |m, &i| m | (1 << i))
    }

    /// Isomorphisms are exactly the morphisms with a bijective block map.
    pub fn is_isomorphism(&self) -> bool {
        self.dom.block_count() == self.cod.block_count()
            && self.image_bits().count_ones() as usize == self.cod.block_count()
    }

    /// Equal to `inclusion_pi(dom, cod)`.
    pub fn is_inclusion(&self) -> bool {
        self.cod.refines(&self.dom)
            && (0..self.cod.block_count()).all(|j| self.dom.block(self.eta(j)) & self.cod.block(j) == self.cod.block(j))
    }

    /// Evaluate `η*` on `α ∈ π̄1`, given as one value per block of `dom`:
    /// `(α)η* = ηα`, one value per block of `cod`.
    pub fn act(&self, alpha: &[usize]) -> Vec<usize> {
        debug_assert_eq!(alpha.len(), self.dom.block_count());
        (0..self.cod.block_count()).map(|j| alpha[self.eta(j)]).collect()
    }

    /// Every morphism `dom -> cod`.
    pub fn hom(dom: PartitionObject, cod: PartitionObject) -> Vec<BlockMapMorphism> {
        let k = cod.block_count();
        let m = dom.block_count();
        let mut idx = [0u8; MAX_N];
        let mut out = Vec::with_capacity(m.pow(k as u32));
        loop {
            out.push(BlockMapMorphism { dom, cod, eta: idx });
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                idx[i] += 1;
                if (idx[i] as usize) < m {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}

impl fmt::Display for BlockMapMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.eta_values().iter().map(|i| i.to_string()).collect();
        write!(f, "eta: {} -> {} [{}]", self.cod, self.dom, idx.join(","))
    }
}

/// `π̄1 <= π̄2`, i.e. `π2` refines `π1`.
pub fn is_below(p1: &PartitionObject, p2: &PartitionObject) -> bool {
    p2.refines(p1)
}

fn order_check(p1: &PartitionObject, p2: &PartitionObject) -> Result<()> {
    p1.ground().check_same(p2.ground())?;
    if is_below(p1, p2) {
        Ok(())
    } else {
        Err(Error::OrderViolation {
            lower: p1.to_string(),
            upper: p2.to_string(),
        })
    }
}

/// The inclusion `π̄1 -> π̄2`: each block of `π2` goes to the `π1` block containing it.
pub fn inclusion_pi(p1: PartitionObject, p2: PartitionObject) -> Result<BlockMapMorphism> {
    order_check(&p1, &p2)?;
    Ok(BlockMapMorphism::from_fn(p1, p2, |j| {
        p1.block_of(mask_min(p2.block(j)))
    }))
}

/// The retraction `π̄2 -> π̄1`: each block `A` of `π1` goes to the `π2` block holding `min A`.
pub fn retraction_pi(p2: PartitionObject, p1: PartitionObject) -> Result<BlockMapMorphism> {
    order_check(&p1, &p2)?;
    Ok(BlockMapMorphism::from_fn(p2, p1, |i| {
        p2.block_of(mask_min(p1.block(i)))
    }))
}

/// `η* = ζ* ; u* ; ν*` through `π̄1 -> γ̄ -> σ̄ -> π̄2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalFactorizationPi {
    pub zeta_star: BlockMapMorphism,
    pub u_star: BlockMapMorphism,
    pub nu_star: BlockMapMorphism,
    pub sigma: SetPartition,
    pub gamma: SetPartition,
}

impl NormalFactorizationPi {
    /// The epimorphic component `ζ* ; u*`.
    pub fn epi(&self) -> BlockMapMorphism {
        self.zeta_star.then(&self.u_star)
    }

    pub fn recompose(&self) -> BlockMapMorphism {
        self.zeta_star.then(&self.u_star).then(&self.nu_star)
    }
}

pub fn normal_factorize_pi(m: &BlockMapMorphism) -> NormalFactorizationPi {
    let (p1, p2) = (m.dom(), m.cod());
    let ground = p1.ground();
    let n = ground.size();

    // σ: fuse π2-blocks with a common η-image
    let keys: Vec<usize> = (0..n).map(|x| m.eta(p2.block_of(x))).collect();
    let sigma = SetPartition::from_keys(ground, &keys).expect("coarser than a non-identity partition");

    // γ: merge every π1-block outside Im η into the image block with the least minimum
    let image = m.image_bits();
    let a1 = (0..p1.block_count())
        .find(|i| image & (1 << i) != 0)
        .expect("η has a nonempty image");
    let gkeys: Vec<usize> = (0..n)
        .map(|x| {
            let i = p1.block_of(x);
            if image & (1 << i) != 0 {
                i
            } else {
                a1
            }
        })
        .collect();
    let gamma = SetPartition::from_keys(ground, &gkeys).expect("coarser than a non-identity partition");

    // ζ: γ-blocks -> π1-blocks; the merged block goes to A_1, the others to themselves
    let zeta_star = BlockMapMorphism::from_fn(p1, gamma, |g| {
        let blk = gamma.block(g);
        if blk & p1.block(a1) != 0 {
            a1
        } else {
            p1.block_of(mask_min(blk))
        }
    });
    // u: σ-blocks -> γ-blocks, [x]_σ ↦ γ-block containing η([x]_{π2})
    let u_star = BlockMapMorphism::from_fn(gamma, sigma, |s| {
        let x = mask_min(sigma.block(s));
        gamma.block_of(mask_min(p1.block(m.eta(p2.block_of(x)))))
    });
    let nu_star = inclusion_pi(sigma, p2).expect("π2 refines σ");
    NormalFactorizationPi {
        zeta_star,
        u_star,
        nu_star,
        sigma,
        gamma,
    }
}

/// Exhaustive check of the normal-category axioms for `n <= 4`.
pub fn verify_normal_category_pi(ground: GroundSet) -> Result<VerificationReport> {
    if ground.size() > VERIFY_MAX_N {
        return Err(Error::SizeGuard {
            what: "partition normal-category verification",
            n: ground.size(),
            max: VERIFY_MAX_N,
        });
    }
    let objects = ground.partitions();
    let mut report = VerificationReport::new(format!("partition category is normal (n={})", ground.size()));
    for &p1 in &objects {
        for &p2 in &objects {
            for m in BlockMapMorphism::hom(p1, p2) {
                let fac = normal_factorize_pi(&m);
                report.check(fac.recompose() == m, || format!("{m} does not recompose"));
                report.check(p2.refines(&fac.sigma) && p1.refines(&fac.gamma), || {
                    format!("{m}: σ or γ is not coarser than expected")
                });
                report.check(fac.u_star.is_isomorphism(), || format!("{m}: u* is not an isomorphism"));
                report.check(fac.nu_star.is_inclusion(), || format!("{m}: ν* is not an inclusion"));
                let back = inclusion_pi(fac.gamma, p1)?.then(&fac.zeta_star);
                report.check(back == BlockMapMorphism::identity(fac.gamma), || {
                    format!("{m}: ζ* is not a retraction")
                });
                report.check(
                    (0..ground.size()).all(|x| {
                        let s = fac.sigma.block(fac.sigma.block_of(x));
                        m.eta(p2.block_of(x)) == m.eta(p2.block_of(mask_min(s)))
                    }),
                    || format!("{m}: η is not constant on σ-blocks"),
                );
            }
            if is_below(&p1, &p2) {
                let nu = inclusion_pi(p1, p2)?;
                let zeta = retraction_pi(p2, p1)?;
                report.check(nu.then(&zeta) == BlockMapMorphism::identity(p1), || {
                    format!("inclusion {p1} -> {p2} followed by its retraction is not the identity")
                });
            }
        }
        let cone = idempotent_cone_pi(p1);
        report.check(cone.component(p1) == BlockMapMorphism::identity(p1), || {
            format!("idempotent cone at {p1} is not the identity there")
        });
    }
    report.absorb(verify_subobject_axiom(&objects));
    Ok(report)
}

/// If `f = h ; g` with `f`, `g` inclusions, then `h` is an inclusion.
fn verify_subobject_axiom(objects: &[PartitionObject]) -> VerificationReport {
    let mut report = VerificationReport::new("subobject axiom");
    for &c in objects {
        for &a in objects.iter().filter(|a| is_below(a, &c)) {
            let f = inclusion_pi(a, c).expect("a <= c");
            for &b in objects.iter().filter(|b| is_below(b, &c)) {
                let g = inclusion_pi(b, c).expect("b <= c");
                for h in BlockMapMorphism::hom(a, b) {
                    if h.then(&g) == f {
                        report.check(h.is_inclusion(), || format!("{h} factors an inclusion but is not one"));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        SetPartition::parse(s).unwrap()
    }

    fn x(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    /// All `α ∈ π̄`, as one value per block.
    fn elements_of(pi: &SetPartition) -> Vec<Vec<usize>> {
        let n = pi.ground().size();
        let k = pi.block_count();
        (0..n.pow(k as u32))
            .map(|mut code| {
                (0..k)
                    .map(|_| {
                        let v = code % n;
                        code /= n;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    fn acts_equal(a: &BlockMapMorphism, b: &BlockMapMorphism) -> bool {
        elements_of(&a.dom()).iter().all(|alpha| a.act(alpha) == b.act(alpha))
    }

    #[test]
    fn literal_round_trip() {
        let m = BlockMapMorphism::parse("eta: 12|34 -> 13|2|4 [0,0]").unwrap();
        assert_eq!(m.dom(), p("13|2|4"));
        assert_eq!(m.cod(), p("12|34"));
        assert_eq!(m.to_string(), "eta: 12|34 -> 13|2|4 [0,0]");
        assert!(BlockMapMorphism::parse("eta: 12|34 -> 13|2|4 [0,3]").is_err());
        assert!(BlockMapMorphism::parse("eta: 12|34 -> 13|2|4 [0]").is_err());
        assert!(BlockMapMorphism::parse("eta: 12|3 -> 13|2|4 [0,0]").is_err());
    }

    #[test]
    fn inclusion_and_retraction_examples() {
        let nu = inclusion_pi(p("123"), p("12|3")).unwrap();
        assert_eq!(nu.eta_values(), &[0, 0]);
        let zeta = retraction_pi(p("12|3"), p("123")).unwrap();
        assert_eq!(zeta.eta_values(), &[0]);
        assert_eq!(nu.then(&zeta), BlockMapMorphism::identity(p("123")));
        assert_eq!(
            inclusion_pi(p("13|2"), p("13|2")).unwrap(),
            BlockMapMorphism::identity(p("13|2"))
        );
        assert!(matches!(
            inclusion_pi(p("12|3"), p("123")),
            Err(Error::OrderViolation { .. })
        ));
        assert!(inclusion_pi(p("12|3"), p("13|2")).is_err());
    }

    #[test]
    fn composition_agrees_with_evaluation_on_n3() {
        let objs = x(3).partitions();
        for &a in &objs {
            for &b in &objs {
                for m1 in BlockMapMorphism::hom(a, b) {
                    for &c in &objs {
                        for m2 in BlockMapMorphism::hom(b, c) {
                            let comp = m1.then(&m2);
                            for alpha in elements_of(&a) {
                                assert_eq!(comp.act(&alpha), m2.act(&m1.act(&alpha)));
                            }
                            for &d in &objs {
                                for m3 in BlockMapMorphism::hom(c, d) {
                                    assert_eq!(comp.then(&m3), m1.then(&m2.then(&m3)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_laws_and_checked_compose() {
        let m = BlockMapMorphism::parse("eta: 12|3 -> 13|2 [1,0]").unwrap();
        assert_eq!(m.then(&BlockMapMorphism::identity(m.cod())), m);
        assert_eq!(BlockMapMorphism::identity(m.dom()).then(&m), m);
        assert!(matches!(m.compose(&m), Err(Error::NotComposable { .. })));
    }

    #[test]
    fn factorization_example_n3() {
        let m = BlockMapMorphism::new(p("13|2"), p("12|3"), &[0, 0]).unwrap();
        let fac = normal_factorize_pi(&m);
        assert_eq!(fac.sigma, p("123"));
        assert_eq!(fac.gamma, p("123"));
        assert_eq!(fac.nu_star.eta_values(), &[0, 0]);
        assert_eq!(fac.u_star.eta_values(), &[0]);
        assert_eq!(fac.zeta_star.eta_values(), &[0]);
        assert_eq!(p("13|2").block(fac.zeta_star.eta(0)), 0b101);
        assert_eq!(fac.recompose(), m);
    }

    #[test]
    fn factorization_example_n4() {
        let m = BlockMapMorphism::new(p("12|3|4"), p("12|34"), &[0, 0]).unwrap();
        let fac = normal_factorize_pi(&m);
        assert_eq!(fac.sigma, p("1234"));
        assert_eq!(fac.gamma, p("1234"));
        assert_eq!(p("12|3|4").block(fac.zeta_star.eta(0)), 0b0011);
        assert_eq!(fac.recompose(), m);
        assert!(acts_equal(&fac.recompose(), &m));
    }

    #[test]
    fn factorization_of_an_isomorphism_is_trivial() {
        let m = BlockMapMorphism::new(p("12|3"), p("13|2"), &[1, 0]).unwrap();
        assert!(m.is_isomorphism());
        let fac = normal_factorize_pi(&m);
        assert_eq!(fac.sigma, p("13|2"));
        assert_eq!(fac.gamma, p("12|3"));
        assert_eq!(fac.zeta_star, BlockMapMorphism::identity(p("12|3")));
        assert_eq!(fac.nu_star, BlockMapMorphism::identity(p("13|2")));
        assert_eq!(fac.u_star, m);
    }

    #[test]
    fn factorization_recomposes_extensionally_on_n3() {
        let objs = x(3).partitions();
        for &a in &objs {
            for &b in &objs {
                for m in BlockMapMorphism::hom(a, b) {
                    assert!(acts_equal(&normal_factorize_pi(&m).recompose(), &m), "{m}");
                }
            }
        }
    }

    #[test]
    fn order_is_refinement_reversed() {
        for n in [3, 4] {
            let objs = x(n).partitions();
            for a in &objs {
                for b in &objs {
                    assert_eq!(is_below(a, b), inclusion_pi(*a, *b).is_ok());
                    assert_eq!(is_below(a, b) && is_below(b, a), a == b);
                }
            }
        }
    }

    #[test]
    fn verification_passes() {
        for n in 2..=4 {
            let r = verify_normal_category_pi(x(n)).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(matches!(verify_normal_category_pi(x(5)), Err(Error::SizeGuard { .. })));
    }
}
