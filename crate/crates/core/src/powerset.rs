//! The powerset category: objects are nonempty proper subsets of `X`,
//! morphisms are set functions, inclusions are the identity embeddings.

use std::fmt;

use crate::cones::idempotent_cone_p;
use crate::error::{parse_error, Error, Result};
use crate::foundation::{mask_min, parse_element_list, GroundSet, Mask, SubsetObject, MAX_N};
use crate::report::VerificationReport;

const UNMAPPED: u8 = u8::MAX;

/// Largest number of morphisms a powerset verification will walk.
pub const MORPHISM_BUDGET: usize = 2_000_000;

/// A morphism `f: A -> B` of the powerset category. Equality is extensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFunction {
    dom: SubsetObject,
    cod: SubsetObject,
    map: [u8; MAX_N],
}

impl SetFunction {
    /// Build from a rule on `dom`; every value must land in `cod`.
    pub fn from_fn(dom: SubsetObject, cod: SubsetObject, f: impl Fn(usize) -> usize) -> Result<Self> {
        dom.ground().check_same(cod.ground())?;
        let mut map = [UNMAPPED; MAX_N];
        for x in dom.iter() {
            let y = f(x);
            if !cod.contains(y) {
                return Err(Error::Invalid {
                    kind: "set function",
                    reason: format!("{} maps to {}, outside codomain {cod}", x + 1, y + 1),
                });
            }
            map[x] = y as u8;
        }
        Ok(SetFunction { dom, cod, map })
    }

    /// Values listed over `dom` in ascending order (0-based).
    pub fn from_values(dom: SubsetObject, cod: SubsetObject, values: &[usize]) -> Result<Self> {
        if values.len() != dom.len() {
            return Err(Error::Invalid {
                kind: "set function",
                reason: format!("{} values given for a domain of size {}", values.len(), dom.len()),
            });
        }
        let elems: Vec<usize> = dom.iter().collect();
        Self::from_fn(dom, cod, |x| {
            values[elems.iter().position(|&e| e == x).expect("x in dom")]
        })
    }

    /// Parse `f: {1,2,3}->{1,2,4} [1,1,4]`; the label before `:` is optional.
    pub fn parse(ground: GroundSet, input: &str) -> Result<Self> {
        let err = |why: &str| parse_error("set function", input, why);
        let body = match input.split_once(':') {
            Some((_, rest)) => rest,
            None => input,
        };
        let (objects, values) = body.split_once('[').ok_or_else(|| err("missing [values]"))?;
        let values = values
            .trim()
            .strip_suffix(']')
            .ok_or_else(|| err("missing closing ]"))?;
        let (dom, cod) = objects.split_once("->").ok_or_else(|| err("missing ->"))?;
        let dom = SubsetObject::parse(ground, dom)?;
        let cod = SubsetObject::parse(ground, cod)?;
        let vals = parse_element_list("set function", values)?;
        Self::from_values(dom, cod, &vals).map_err(|e| err(&e.to_string()))
    }

    pub fn identity(a: SubsetObject) -> Self {
        Self::from_fn(a, a, |x| x).expect("identity lands in its domain")
    }

    #[inline]
    pub fn dom(&self) -> SubsetObject {
        self.dom
    }

    #[inline]
    pub fn cod(&self) -> SubsetObject {
        self.cod
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        debug_assert!(self.dom.contains(x));
        self.map[x] as usize
    }

    /// Values over `dom` in ascending order (0-based).
    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.dom.iter().map(move |x| self.map[x] as usize)
    }

    /// Left-to-right composite `self ; g`; panics unless `self.cod() == g.dom()`.
    #[inline]
    pub fn then(&self, g: &SetFunction) -> SetFunction {
        assert_eq!(self.cod, g.dom, "set functions are not composable");
        let mut map = [UNMAPPED; MAX_N];
        for x in self.dom.iter() {
            map[x] = g.map[self.map[x] as usize];
        }
        SetFunction {
            dom: self.dom,
            cod: g.cod,
            map,
        }
    }

    /// Checked left-to-right composite.
    pub fn compose(&self, g: &SetFunction) -> Result<SetFunction> {
        if self.cod != g.dom {
            return Err(Error::NotComposable {
                left: self.cod.to_string(),
                right: g.dom.to_string(),
            });
        }
        Ok(self.then(g))
    }

    pub fn image_mask(&self) -> Mask {
        self.values().fold(0, |m, y| m | (1 << y))
    }

    pub fn is_injective(&self) -> bool {
        self.image_mask().count_ones() as usize == self.dom.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask() == self.cod.mask()
    }

    /// Isomorphisms of the category are the bijections.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_inclusion(&self) -> bool {
        self.dom.is_subset_of(&self.cod) && self.dom.iter().all(|x| self.apply(x) == x)
    }

    /// Blocks of the kernel partition `π_f` of `dom`, ordered by least element.
    pub fn kernel_blocks(&self) -> Vec<Mask> {
        let mut blocks: Vec<Mask> = Vec::new();
        for x in self.dom.iter() {
            let y = self.map[x];
            match blocks.iter_mut().find(|b| self.map[mask_min(**b)] == y) {
                Some(b) => *b |= 1 << x,
                None => blocks.push(1 << x),
            }
        }
        blocks
    }

    /// Every function `dom -> cod`, in lexicographic order of value lists.
    pub fn hom(dom: SubsetObject, cod: SubsetObject) -> Vec<SetFunction> {
        let d: Vec<usize> = dom.iter().collect();
        let c: Vec<usize> = cod.iter().collect();
        let mut idx = vec![0usize; d.len()];
        let mut out = Vec::with_capacity(c.len().pow(d.len() as u32));
        loop {
            let mut map = [UNMAPPED; MAX_N];
            for (&x, &i) in d.iter().zip(&idx) {
                map[x] = c[i] as u8;
            }
            out.push(SetFunction { dom, cod, map });
            let mut k = d.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < c.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl fmt::Display for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values().map(|y| (y + 1).to_string()).collect();
        write!(f, "f: {}->{} [{}]", self.dom, self.cod, vals.join(","))
    }
}

/// The identity embedding `j(A, B)`.
pub fn inclusion_p(a: SubsetObject, b: SubsetObject) -> Result<SetFunction> {
    if !a.is_subset_of(&b) {
        return Err(Error::NotSubset {
            sub: a.to_string(),
            sup: b.to_string(),
        });
    }
    SetFunction::from_fn(a, b, |x| x)
}

/// The retraction `B -> A` fixing `A` and sending `B \ A` to `min A`.
pub fn retraction_p(b: SubsetObject, a: SubsetObject) -> Result<SetFunction> {
    if !a.is_subset_of(&b) {
        return Err(Error::NotSubset {
            sub: a.to_string(),
            sup: b.to_string(),
        });
    }
    let m = a.least();
    SetFunction::from_fn(b, a, |x| if a.contains(x) { x } else { m })
}

/// `f = q ; u ; j` with `q` a retraction, `u` a bijection and `j` an inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalFactorizationP {
    pub q: SetFunction,
    pub u: SetFunction,
    pub j: SetFunction,
}

impl NormalFactorizationP {
    /// The epimorphic component `q ; u`.
    pub fn epi(&self) -> SetFunction {
        self.q.then(&self.u)
    }

    pub fn recompose(&self) -> SetFunction {
        self.q.then(&self.u).then(&self.j)
    }
}

/// Factor through the block-minima cross-section of `π_f` and the image of `f`.
pub fn normal_factorize_p(f: &SetFunction) -> NormalFactorizationP {
    let ground = f.dom().ground();
    let blocks = f.kernel_blocks();
    let section = blocks.iter().fold(0 as Mask, |m, &b| m | (1 << mask_min(b)));
    let a_prime = SubsetObject::from_mask(ground, section).expect("nonempty subset of a proper subset");
    let b_prime = SubsetObject::from_mask(ground, f.image_mask()).expect("nonempty subset of a proper subset");
    let q = SetFunction::from_fn(f.dom(), a_prime, |x| {
        let b = blocks.iter().find(|&&b| b & (1 << x) != 0).expect("x lies in a block");
        mask_min(*b)
    })
    .expect("block minima lie in the section");
    let u = SetFunction::from_fn(a_prime, b_prime, |x| f.apply(x)).expect("values lie in the image");
    let j = inclusion_p(b_prime, f.cod()).expect("image lies in the codomain");
    NormalFactorizationP { q, u, j }
}

/// `q: A -> A'` with `A' ⊆ A` and `j(A', A) ; q = 1`.
pub fn is_retraction_p(q: &SetFunction) -> bool {
    q.cod().is_subset_of(&q.dom()) && q.cod().iter().all(|x| q.apply(x) == x)
}

/// Exhaustive check of the normal-category axioms over all objects of size `<= cap`
/// (default: every object).
pub fn verify_normal_category_p(ground: GroundSet, cap: Option<usize>) -> Result<VerificationReport> {
    let cap = cap.unwrap_or(ground.size() - 1);
    let objects: Vec<SubsetObject> = ground.subsets().into_iter().filter(|a| a.len() <= cap).collect();
    let morphism_count: usize = objects
        .iter()
        .flat_map(|a| objects.iter().map(move |b| b.len().pow(a.len() as u32)))
        .sum();
    if morphism_count > MORPHISM_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "powerset normal-category verification",
            count: morphism_count,
            budget: MORPHISM_BUDGET,
        });
    }

    let mut report = VerificationReport::new(format!("powerset category is normal (n={}, cap={cap})", ground.size()));
    for &a in &objects {
        for &b in &objects {
            for f in SetFunction::hom(a, b) {
                let fac = normal_factorize_p(&f);
                report.check(fac.recompose() == f, || format!("{f} does not recompose"));
                report.check(is_retraction_p(&fac.q) && fac.q.is_surjective(), || {
                    format!("{f}: q = {} is not a retraction", fac.q)
                });
                report.check(fac.u.is_isomorphism(), || {
                    format!("{f}: u = {} is not a bijection", fac.u)
                });
                report.check(fac.j.is_inclusion(), || {
                    format!("{f}: j = {} is not an inclusion", fac.j)
                });
                report.check(fac.j.dom().mask() == f.image_mask(), || {
                    format!("{f}: B' differs from Im f")
                });
                report.check(
                    f.kernel_blocks()
                        .iter()
                        .all(|&blk| (blk & fac.q.cod().mask()).count_ones() == 1),
                    || format!("{f}: A' is not a cross-section of the kernel"),
                );
                let epi = fac.epi();
                report.check(epi.image_mask() == f.image_mask() && epi.is_surjective(), || {
                    format!("{f}: epimorphic component has the wrong image")
                });
            }
            if a.is_subset_of(&b) {
                let j = inclusion_p(a, b)?;
                let r = retraction_p(b, a)?;
                report.check(j.then(&r) == SetFunction::identity(a), || {
                    format!("j({a},{b}) ; retraction is not the identity")
                });
            }
        }
        let cone = idempotent_cone_p(a);
        report.check(cone.component(a) == SetFunction::identity(a), || {
            format!("idempotent cone at {a} is not the identity there")
        });
    }
    report.absorb(verify_subobject_axiom(&objects));
    Ok(report)
}

/// If `f = h ; g` with `f`, `g` inclusions, then `h` is an inclusion.
fn verify_subobject_axiom(objects: &[SubsetObject]) -> VerificationReport {
    let mut report = VerificationReport::new("subobject axiom");
    for &c in objects {
        for &a in objects.iter().filter(|a| a.is_subset_of(&c)) {
            let f = inclusion_p(a, c).expect("a ⊆ c");
            for &b in objects.iter().filter(|b| b.is_subset_of(&c)) {
                let g = inclusion_p(b, c).expect("b ⊆ c");
                for h in SetFunction::hom(a, b) {
                    if h.then(&g) == f {
                        report.check(h.is_inclusion(), || format!("{h} factors an inclusion but is not one"));
                    }
                }
            }
        }
    }
    report
}
