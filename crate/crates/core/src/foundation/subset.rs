use std::fmt;

use super::{format_mask, mask_elements, mask_min, parse_element_list, GroundSet, Mask};
use crate::error::{parse_error, Error, Result};

/// A nonempty proper subset of the ground set; an object of the powerset category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetObject {
    ground: GroundSet,
    mask: Mask,
}

impl SubsetObject {
    pub fn from_mask(ground: GroundSet, mask: Mask) -> Result<Self> {
        if mask == 0 {
            return Err(Error::Invalid {
                kind: "subset",
                reason: "subset is empty".into(),
            });
        }
        if mask & !ground.full_mask() != 0 {
            return Err(Error::Invalid {
                kind: "subset",
                reason: format!("mask {mask:#b} has elements outside {ground}"),
            });
        }
        if mask == ground.full_mask() {
            return Err(Error::Invalid {
                kind: "subset",
                reason: "subset is all of X, not a proper subset".into(),
            });
        }
        Ok(SubsetObject { ground, mask })
    }

    pub(crate) fn from_mask_unchecked(ground: GroundSet, mask: Mask) -> Self {
        debug_assert!(mask != 0 && mask != ground.full_mask());
        SubsetObject { ground, mask }
    }

    /// Build from 0-based elements.
    pub fn from_elements(ground: GroundSet, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask: Mask = 0;
        for x in elements {
            if x >= ground.size() {
                return Err(Error::Invalid {
                    kind: "subset",
                    reason: format!("element {} outside {ground}", x + 1),
                });
            }
            mask |= 1 << x;
        }
        Self::from_mask(ground, mask)
    }

    /// Parse `{1,3}` over the given ground set.
    pub fn parse(ground: GroundSet, input: &str) -> Result<Self> {
        let t = input.trim();
        let body = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| parse_error("subset", input, "expected braces, e.g. {1,3}"))?;
        let elems = parse_element_list("subset", body)?;
        Self::from_elements(ground, elems).map_err(|e| parse_error("subset", input, e.to_string()))
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn mask(&self) -> Mask {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < 16 && self.mask & (1 << x) != 0
    }

    #[inline]
    pub fn is_subset_of(&self, other: &SubsetObject) -> bool {
        self.ground == other.ground && self.mask & !other.mask == 0
    }

    #[inline]
    pub fn least(&self) -> usize {
        mask_min(self.mask)
    }

    /// Elements in ascending order (0-based).
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        mask_elements(self.mask)
    }

    pub fn is_singleton(&self) -> bool {
        self.mask.count_ones() == 1
    }
}

impl fmt::Display for SubsetObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_mask(self.mask))
    }
}
