use std::fmt;

use super::{parse_element_list, GroundSet, Mask, SetPartition, SubsetObject, MAX_N};
use crate::error::{parse_error, Error, Result};

/// A total self-map of the ground set, composed left to right:
/// `(x)(ab) = ((x)a)b`.
///
/// Ordering is lexicographic on the image sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    ground: GroundSet,
    images: [u8; MAX_N],
}

impl Transformation {
    /// From 0-based images.
    pub fn new(ground: GroundSet, images: &[usize]) -> Result<Self> {
        if images.len() != ground.size() {
            return Err(Error::GroundMismatch(ground.size(), images.len()));
        }
        let mut arr = [0u8; MAX_N];
        for (slot, &v) in arr.iter_mut().zip(images) {
            if v >= ground.size() {
                return Err(Error::Invalid {
                    kind: "transformation",
                    reason: format!("image {} outside {ground}", v + 1),
                });
            }
            *slot = v as u8;
        }
        Ok(Transformation { ground, images: arr })
    }

    pub(crate) fn from_fn(ground: GroundSet, f: impl Fn(usize) -> usize) -> Self {
        let mut images = [0u8; MAX_N];
        for x in ground.elements() {
            let v = f(x);
            debug_assert!(v < ground.size());
            images[x] = v as u8;
        }
        Transformation { ground, images }
    }

    /// Parse `1,1,2`; the ground set size is the sequence length.
    pub fn parse(input: &str) -> Result<Self> {
        let imgs = parse_element_list("transformation", input)?;
        let ground = GroundSet::new(imgs.len()).map_err(|e| parse_error("transformation", input, e.to_string()))?;
        Self::new(ground, &imgs).map_err(|e| parse_error("transformation", input, e.to_string()))
    }

    pub fn identity(ground: GroundSet) -> Self {
        Self::from_fn(ground, |x| x)
    }

    /// Constant map onto `c` (0-based).
    pub fn constant(ground: GroundSet, c: usize) -> Self {
        Self::from_fn(ground, |_| c)
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// 0-based image sequence.
    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images[..self.ground.size()].iter().map(|&v| v as usize)
    }

    /// Left-to-right product `self ; other`. Panics on mismatched ground sets.
    #[inline]
    pub fn then(&self, other: &Transformation) -> Transformation {
        assert_eq!(self.ground, other.ground, "ground set mismatch");
        let mut images = [0u8; MAX_N];
        for x in self.ground.elements() {
            images[x] = other.images[self.images[x] as usize];
        }
        Transformation {
            ground: self.ground,
            images,
        }
    }

    /// Checked left-to-right product.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        self.ground.check_same(other.ground)?;
        Ok(self.then(other))
    }

    #[inline]
    pub fn image_mask(&self) -> Mask {
        self.images().fold(0, |m, v| m | (1 << v))
    }

    pub fn rank(&self) -> usize {
        self.image_mask().count_ones() as usize
    }

    pub fn is_singular(&self) -> bool {
        self.rank() < self.ground.size()
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    /// `Im a` as an object of the powerset category.
    pub fn image(&self) -> Result<SubsetObject> {
        if !self.is_singular() {
            return Err(Error::NotSingular(self.to_string()));
        }
        Ok(SubsetObject::from_mask_unchecked(self.ground, self.image_mask()))
    }

    /// The kernel partition `π_a`: `x ~ y` iff `(x)a = (y)a`.
    pub fn kernel(&self) -> Result<SetPartition> {
        SetPartition::from_keys(self.ground, &self.images[..self.ground.size()])
            .map_err(|_| Error::NotSingular(self.to_string()))
    }

    /// `(Im a, π_a)`.
    pub fn profile(&self) -> Result<(SubsetObject, SetPartition)> {
        Ok((self.image()?, self.kernel()?))
    }

    /// `a` is constant on every block of `p`, i.e. `p ⊆ π_a` as relations.
    pub fn is_constant_on(&self, p: &SetPartition) -> bool {
        p.blocks().iter().all(|&b| {
            let x0 = super::mask_min(b);
            super::mask_elements(b).all(|x| self.images[x] == self.images[x0])
        })
    }

    /// Value of `a` on a block on which it is constant.
    #[inline]
    pub fn value_on_block(&self, block: Mask) -> usize {
        self.apply(super::mask_min(block))
    }
}

/// All non-bijective self-maps of `X`, in lexicographic order of image sequences.
pub fn enumerate_sing(ground: GroundSet) -> Vec<Transformation> {
    let n = ground.size();
    let total = n.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut images = [0u8; MAX_N];
    loop {
        let t = Transformation { ground, images };
        if t.is_singular() {
            out.push(t);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            images[k] += 1;
            if (images[k] as usize) < n {
                break;
            }
            images[k] = 0;
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
