use std::fmt;

use super::{mask_elements, parse_element_list, GroundSet, Mask, SetPartition, SubsetObject, Transformation, MAX_N};
use crate::error::{parse_error, Error, Result};

/// A bijection of the ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    ground: GroundSet,
    images: [u8; MAX_N],
}

impl Permutation {
    /// From 0-based images; must be a bijection.
    pub fn new(ground: GroundSet, images: &[usize]) -> Result<Self> {
        let t = Transformation::new(ground, images)?;
        Self::from_transformation(&t)
    }

    pub fn from_transformation(t: &Transformation) -> Result<Self> {
        if t.is_singular() {
            return Err(Error::Invalid {
                kind: "permutation",
                reason: format!("{t} is not a bijection"),
            });
        }
        let mut images = [0u8; MAX_N];
        for (slot, v) in images.iter_mut().zip(t.images()) {
            *slot = v as u8;
        }
        Ok(Permutation {
            ground: t.ground(),
            images,
        })
    }

    /// Parse `2,3,1`.
    pub fn parse(input: &str) -> Result<Self> {
        let imgs = parse_element_list("permutation", input)?;
        let ground = GroundSet::new(imgs.len()).map_err(|e| parse_error("permutation", input, e.to_string()))?;
        Self::new(ground, &imgs).map_err(|e| parse_error("permutation", input, e.to_string()))
    }

    pub fn identity(ground: GroundSet) -> Self {
        let mut images = [0u8; MAX_N];
        for x in ground.elements() {
            images[x] = x as u8;
        }
        Permutation { ground, images }
    }

    /// All permutations in lexicographic order.
    pub fn enumerate(ground: GroundSet) -> Vec<Self> {
        let n = ground.size();
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self::new(ground, &cur).expect("bijection"));
            // next lexicographic permutation
            let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = [0u8; MAX_N];
        for x in self.ground.elements() {
            images[self.images[x] as usize] = x as u8;
        }
        Permutation {
            ground: self.ground,
            images,
        }
    }

    pub fn as_transformation(&self) -> Transformation {
        Transformation::from_fn(self.ground, |x| self.apply(x))
    }

    pub fn is_identity(&self) -> bool {
        self.ground.elements().all(|x| self.apply(x) == x)
    }

    /// `θ(mask) = {(x)θ : x ∈ mask}`.
    pub fn image_mask(&self, mask: Mask) -> Mask {
        mask_elements(mask).fold(0, |m, x| m | (1 << self.apply(x)))
    }

    /// `θ(A)`.
    pub fn image_subset(&self, a: &SubsetObject) -> Result<SubsetObject> {
        self.ground.check_same(a.ground())?;
        Ok(SubsetObject::from_mask_unchecked(
            self.ground,
            self.image_mask(a.mask()),
        ))
    }

    /// `θ⁻¹(σ)`: the partition with blocks `θ⁻¹(B)` for each block `B` of `σ`.
    pub fn preimage_partition(&self, sigma: &SetPartition) -> Result<SetPartition> {
        self.ground.check_same(sigma.ground())?;
        let keys: Vec<usize> = self.ground.elements().map(|x| sigma.block_of(self.apply(x))).collect();
        SetPartition::from_keys(self.ground, &keys)
    }

    /// `θ(σ)`: the partition with blocks `θ(B)`.
    pub fn image_partition(&self, sigma: &SetPartition) -> Result<SetPartition> {
        self.inverse().preimage_partition(sigma)
    }

    /// The left-to-right composite `θ⁻¹ a θ`.
    pub fn conjugate(&self, a: &Transformation) -> Result<Transformation> {
        self.ground.check_same(a.ground())?;
        let inv = self.inverse();
        Ok(Transformation::from_fn(self.ground, |x| {
            self.apply(a.apply(inv.apply(x)))
        }))
    }

    /// `θ a` (left to right: apply `θ` first).
    pub fn pre(&self, a: &Transformation) -> Transformation {
        self.as_transformation().then(a)
    }

    /// `a θ`.
    pub fn post(&self, a: &Transformation) -> Transformation {
        a.then(&self.as_transformation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.as_transformation(), f)
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
