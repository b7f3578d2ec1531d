//! Canonical finite objects over a ground set `X = {1..n}`: subsets,
//! partitions, transformations and permutations.
//!
//! Elements are stored 0-based internally and printed 1-based. Subsets and
//! partition blocks are `u16` bit masks, so `n` is capped at [`MAX_N`], which
//! also keeps the compact partition literal (`12|3`) unambiguous.

mod partition;
mod permutation;
mod subset;
mod transformation;

pub use partition::SetPartition;
pub use permutation::Permutation;
pub use subset::SubsetObject;
pub use transformation::{enumerate_sing, Transformation};

use crate::error::{Error, Result};

/// Largest supported ground-set size.
pub const MAX_N: usize = 9;

/// Bit mask over the ground set; bit `i` stands for element `i + 1`.
pub type Mask = u16;

/// The ground set `X = {1..n}` with `2 <= n <= MAX_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateGroundSet(n));
        }
        if n > MAX_N {
            return Err(Error::GroundSetTooLarge(n));
        }
        Ok(GroundSet(n as u8))
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn full_mask(self) -> Mask {
        ((1u32 << self.0) - 1) as Mask
    }

    pub(crate) fn check_same(self, other: GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch(self.size(), other.size()))
        }
    }

    /// All objects of the powerset category: nonempty proper subsets, in mask order.
    pub fn subsets(self) -> Vec<SubsetObject> {
        (1..self.full_mask())
            .map(|m| SubsetObject::from_mask_unchecked(self, m))
            .collect()
    }

    /// All non-identity partitions of `X`, in restricted-growth-string order.
    pub fn partitions(self) -> Vec<SetPartition> {
        SetPartition::enumerate(self)
    }

    /// All permutations of `X` in lexicographic order of image sequences.
    pub fn permutations(self) -> Vec<Permutation> {
        Permutation::enumerate(self)
    }

    /// Elements `0..n` (0-based).
    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

impl std::fmt::Display for GroundSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{1..{}}}", self.0)
    }
}

/// Iterate the set bits of a mask in ascending order (0-based elements).
pub(crate) fn mask_elements(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn mask_min(mask: Mask) -> usize {
    debug_assert!(mask != 0);
    mask.trailing_zeros() as usize
}

pub(crate) fn format_mask(mask: Mask) -> String {
    let items: Vec<String> = mask_elements(mask).map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Parse a comma separated list of 1-based elements into 0-based values.
pub(crate) fn parse_element_list(kind: &'static str, input: &str) -> Result<Vec<usize>> {
    let body = input.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            match tok.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(crate::error::parse_error(
                    kind,
                    input,
                    format!("{tok:?} is not an element 1..n"),
                )),
            }
        })
        .collect()
}
