use std::fmt;

use super::{mask_elements, mask_min, GroundSet, Mask, SubsetObject, MAX_N};
use crate::error::{parse_error, Error, Result};

/// A non-identity partition of the ground set in canonical form.
///
/// Blocks are numbered by first occurrence, so block `0` holds element 1 and
/// blocks are ordered by their least element. Equality is canonical-form
/// equality. Viewed as an equivalence relation, `p.refines(&q)` is `p ⊆ q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: GroundSet,
    labels: [u8; MAX_N],
    count: u8,
    blocks: [Mask; MAX_N],
}

/// Canonical relabelling of arbitrary keys: equal keys share a block,
/// blocks are numbered by first occurrence.
pub(crate) fn canonical_labels<K: PartialEq + Copy>(keys: &[K]) -> ([u8; MAX_N], usize) {
    let mut labels = [0u8; MAX_N];
    let mut seen: Vec<K> = Vec::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        let idx = match seen.iter().position(|s| s == k) {
            Some(p) => p,
            None => {
                seen.push(*k);
                seen.len() - 1
            }
        };
        labels[i] = idx as u8;
    }
    (labels, seen.len())
}

impl SetPartition {
    /// Build from one key per element; elements with equal keys share a block.
    /// Fails if every block is a singleton.
    pub fn from_keys<K: PartialEq + Copy>(ground: GroundSet, keys: &[K]) -> Result<Self> {
        if keys.len() != ground.size() {
            return Err(Error::GroundMismatch(ground.size(), keys.len()));
        }
        let (labels, count) = canonical_labels(keys);
        Self::from_canonical(ground, labels, count)
    }

    fn from_canonical(ground: GroundSet, labels: [u8; MAX_N], count: usize) -> Result<Self> {
        if count == ground.size() {
            return Err(Error::Invalid {
                kind: "partition",
                reason: "identity partition (all blocks singletons) is excluded".into(),
            });
        }
        let mut blocks = [0 as Mask; MAX_N];
        for x in ground.elements() {
            blocks[labels[x] as usize] |= 1 << x;
        }
        Ok(SetPartition {
            ground,
            labels,
            count: count as u8,
            blocks,
        })
    }

    /// Build from block masks; they must be nonempty, disjoint and cover `X`.
    pub fn from_blocks(ground: GroundSet, blocks: &[Mask]) -> Result<Self> {
        let mut seen: Mask = 0;
        let mut keys = [usize::MAX; MAX_N];
        for (i, &b) in blocks.iter().enumerate() {
            if b == 0 || b & seen != 0 || b & !ground.full_mask() != 0 {
                return Err(Error::Invalid {
                    kind: "partition",
                    reason: "blocks must be nonempty, disjoint and inside X".into(),
                });
            }
            seen |= b;
            for x in mask_elements(b) {
                keys[x] = i;
            }
        }
        if seen != ground.full_mask() {
            return Err(Error::Invalid {
                kind: "partition",
                reason: "blocks do not cover X".into(),
            });
        }
        Self::from_keys(ground, &keys[..ground.size()])
    }

    /// Parse the compact literal `12|3`; the ground set size is the number of digits.
    pub fn parse(input: &str) -> Result<Self> {
        let t = input.trim();
        let mut blocks: Vec<Mask> = Vec::new();
        let mut total = 0usize;
        for part in t.split('|') {
            let mut b: Mask = 0;
            if part.is_empty() {
                return Err(parse_error("partition", input, "empty block"));
            }
            for c in part.chars() {
                let d = c
                    .to_digit(10)
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| parse_error("partition", input, format!("{c:?} is not an element 1..9")))?
                    as usize;
                if b & (1 << (d - 1)) != 0 {
                    return Err(parse_error("partition", input, format!("element {d} repeated")));
                }
                b |= 1 << (d - 1);
                total += 1;
            }
            blocks.push(b);
        }
        let ground = GroundSet::new(total).map_err(|e| parse_error("partition", input, e.to_string()))?;
        Self::from_blocks(ground, &blocks).map_err(|e| parse_error("partition", input, e.to_string()))
    }

    /// Parse and require a specific ground set.
    pub fn parse_in(ground: GroundSet, input: &str) -> Result<Self> {
        let p = Self::parse(input)?;
        ground.check_same(p.ground)?;
        Ok(p)
    }

    /// All non-identity partitions, in restricted-growth-string order.
    pub fn enumerate(ground: GroundSet) -> Vec<Self> {
        let n = ground.size();
        let mut out = Vec::new();
        let mut rgs = [0u8; MAX_N];
        // maxes[i] = max(rgs[0..=i])
        loop {
            let count = rgs[..n].iter().max().map_or(0, |&m| m as usize + 1);
            if let Ok(p) = Self::from_canonical(ground, rgs, count) {
                out.push(p);
            }
            // increment
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return out;
                }
                let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= prefix_max {
                    rgs[i] += 1;
                    for r in rgs.iter_mut().take(n).skip(i + 1) {
                        *r = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn block_count(&self) -> usize {
        self.count as usize
    }

    #[inline]
    pub fn blocks(&self) -> &[Mask] {
        &self.blocks[..self.count as usize]
    }

    #[inline]
    pub fn block(&self, i: usize) -> Mask {
        self.blocks[i]
    }

    /// Index of the block containing `x` (0-based element).
    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x] as usize
    }

    #[inline]
    pub fn block_mask_of(&self, x: usize) -> Mask {
        self.blocks[self.labels[x] as usize]
    }

    #[inline]
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Canonical block labels, one per element.
    pub fn labels(&self) -> &[u8] {
        &self.labels[..self.ground.size()]
    }

    /// Index of the block whose mask is exactly `mask`, if any.
    pub fn index_of_block(&self, mask: Mask) -> Option<usize> {
        if mask == 0 {
            return None;
        }
        let i = self.block_of(mask_min(mask));
        (self.blocks[i] == mask).then_some(i)
    }

    /// Every block of `self` lies inside a block of `other`; as relations `self ⊆ other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.ground == other.ground && self.blocks().iter().all(|&b| other.block_mask_of(mask_min(b)) & b == b)
    }

    /// Checked form of [`SetPartition::refines`].
    pub fn try_refines(&self, other: &SetPartition) -> Result<bool> {
        self.ground.check_same(other.ground)?;
        Ok(self.refines(other))
    }

    /// Exactly one doubleton block, all others singletons.
    pub fn is_minimal(&self) -> bool {
        self.block_count() + 1 == self.ground.size()
    }

    /// `mask` picks exactly one element from every block.
    pub fn is_cross_section(&self, mask: Mask) -> bool {
        mask & !self.ground.full_mask() == 0 && self.blocks().iter().all(|&b| (b & mask).count_ones() == 1)
    }

    /// All cross-sections, enumerated with block 0 as the most significant choice.
    pub fn cross_sections(&self) -> Vec<SubsetObject> {
        let blocks: Vec<Vec<usize>> = self.blocks().iter().map(|&b| mask_elements(b).collect()).collect();
        let mut idx = vec![0usize; blocks.len()];
        let mut out = Vec::with_capacity(blocks.iter().map(Vec::len).product());
        loop {
            let mask = blocks.iter().zip(&idx).fold(0 as Mask, |m, (b, &i)| m | (1 << b[i]));
            out.push(SubsetObject::from_mask_unchecked(self.ground, mask));
            let mut k = blocks.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < blocks[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Block-minima cross-section.
    pub fn minima(&self) -> SubsetObject {
        let mask = self.blocks().iter().fold(0 as Mask, |m, &b| m | (1 << mask_min(b)));
        SubsetObject::from_mask_unchecked(self.ground, mask)
    }

    /// All partitions `q` with `self.refines(q)` (coarsenings, including `self`).
    pub fn coarsenings(&self) -> Vec<SetPartition> {
        let k = self.block_count();
        let mut out = Vec::new();
        let mut rgs = vec![0usize; k];
        loop {
            let mut keys = [0usize; MAX_N];
            for x in self.ground.elements() {
                keys[x] = rgs[self.block_of(x)];
            }
            // merging blocks of a non-identity partition never yields the identity
            out.push(Self::from_keys(self.ground, &keys[..self.ground.size()]).expect("coarsening of non-identity"));
            let mut i = k - 1;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
                if rgs[i] <= prefix_max {
                    rgs[i] += 1;
                    for r in rgs.iter_mut().skip(i + 1) {
                        *r = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    /// Partition with the single block `X`.
    pub fn coarsest(ground: GroundSet) -> Self {
        Self::from_keys(ground, &vec![0u8; ground.size()]).expect("one block is non-identity")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &b) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for x in mask_elements(b) {
                write!(f, "{}", x + 1)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
