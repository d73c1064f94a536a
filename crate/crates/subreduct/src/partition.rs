//! Indiscernibility partitions and positive regions.
//!
//! Objects are indiscernible under a feature subset `B` when they agree on
//! every feature in `B`. The partition `U/B` collects the resulting
//! equivalence classes; the positive region gathers the members of every
//! class whose objects all share one decision. Partitions are built by
//! iterative splitting: start from the single block `U` and refine by one
//! feature at a time, so adding a feature to an existing partition costs
//! only a pass over the blocks it actually splits.

use std::collections::HashMap;

use crate::data::{DecisionSystem, FeatureSubset};
use crate::error::Result;

/// One equivalence class of an indiscernibility partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    members: Vec<usize>,
    /// The shared decision code when every member agrees, cached at
    /// construction so purity checks never rescan members.
    pure_decision: Option<u32>,
}

impl Block {
    fn new(members: Vec<usize>, decisions: &[u32]) -> Self {
        debug_assert!(!members.is_empty());
        let first = decisions[members[0]];
        let pure = members[1..].iter().all(|&x| decisions[x] == first);
        Block {
            members,
            pure_decision: pure.then_some(first),
        }
    }

    /// Objects in this class, in ascending order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether every member carries the same decision.
    pub fn is_pure(&self) -> bool {
        self.pure_decision.is_some()
    }

    /// The shared decision code, if pure.
    pub fn pure_decision(&self) -> Option<u32> {
        self.pure_decision
    }
}

/// The partition `U/B` for some feature subset `B`.
///
/// Blocks keep their members sorted and the block list is ordered by each
/// block's smallest member, so structurally equal partitions compare equal
/// regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Block>,
    num_objects: usize,
}

impl Partition {
    /// The coarsest partition: every object in one block (or no block at
    /// all when the table is empty).
    pub fn universe(system: &DecisionSystem) -> Self {
        let n = system.num_objects();
        let blocks = if n == 0 {
            Vec::new()
        } else {
            vec![Block::new((0..n).collect(), system.decisions())]
        };
        Partition {
            blocks,
            num_objects: n,
        }
    }

    /// Builds `U/B` by refining the universe with each feature of `B`.
    pub fn of_subset(system: &DecisionSystem, subset: &FeatureSubset) -> Result<Self> {
        subset.validate(system)?;
        let mut partition = Partition::universe(system);
        for feature in subset.iter() {
            partition = partition.refine(system, feature)?;
        }
        Ok(partition)
    }

    /// Splits every block by one more feature, producing `U/(B ∪ {a})`
    /// from `U/B`. Blocks already uniform on the feature pass through
    /// untouched.
    pub fn refine(&self, system: &DecisionSystem, feature: usize) -> Result<Self> {
        system.check_feature(feature)?;
        let column = system.column(feature);
        let decisions = system.decisions();
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
        for block in &self.blocks {
            let first_value = column[block.members[0]];
            if block.members[1..].iter().all(|&x| column[x] == first_value) {
                blocks.push(block.clone());
                continue;
            }
            groups.clear();
            for &x in &block.members {
                groups.entry(column[x]).or_default().push(x);
            }
            for members in groups.drain().map(|(_, members)| members) {
                blocks.push(Block::new(members, decisions));
            }
        }
        blocks.sort_by_key(|b| b.members[0]);
        Ok(Partition {
            blocks,
            num_objects: self.num_objects,
        })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    /// Members of every pure block, merged and sorted ascending.
    pub fn positive_region(&self) -> Vec<usize> {
        let mut region: Vec<usize> = self
            .blocks
            .iter()
            .filter(|b| b.is_pure())
            .flat_map(|b| b.members.iter().copied())
            .collect();
        region.sort_unstable();
        region
    }

    /// `|POS_B|` without materializing the member list.
    pub fn positive_region_size(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.is_pure())
            .map(|b| b.len())
            .sum()
    }
}

/// Convenience wrapper: the positive region of `B` as sorted object ids.
pub fn positive_region(system: &DecisionSystem, subset: &FeatureSubset) -> Result<Vec<usize>> {
    Ok(Partition::of_subset(system, subset)?.positive_region())
}

/// Convenience wrapper for `|POS_B|`.
pub fn positive_region_size(system: &DecisionSystem, subset: &FeatureSubset) -> Result<usize> {
    Ok(Partition::of_subset(system, subset)?.positive_region_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DecisionSystem;

    fn interlocking() -> DecisionSystem {
        DecisionSystem::from_rows(
            &["a1", "a2", "a3"],
            "d",
            &[
                (&["Y", "Y", "Y"], "A"),
                (&["N", "Y", "N"], "B"),
                (&["Y", "N", "N"], "B"),
                (&["N", "N", "Y"], "A"),
                (&["Y", "Y", "Y"], "B"),
            ],
        )
        .unwrap()
    }

    fn blocks_of(p: &Partition) -> Vec<Vec<usize>> {
        p.blocks().iter().map(|b| b.members().to_vec()).collect()
    }

    #[test]
    fn universe_is_one_block() {
        let ds = interlocking();
        let p = Partition::universe(&ds);
        assert_eq!(blocks_of(&p), vec![vec![0, 1, 2, 3, 4]]);
        assert!(!p.blocks()[0].is_pure());
    }

    #[test]
    fn single_feature_blocks() {
        let ds = interlocking();
        let p = Partition::of_subset(&ds, &FeatureSubset::from_indices([0])).unwrap();
        assert_eq!(blocks_of(&p), vec![vec![0, 2, 4], vec![1, 3]]);
        assert!(p.positive_region().is_empty());
    }

    #[test]
    fn full_subset_blocks() {
        let ds = interlocking();
        let p = Partition::of_subset(&ds, &FeatureSubset::from_indices([0, 1, 2])).unwrap();
        assert_eq!(
            blocks_of(&p),
            vec![vec![0, 4], vec![1], vec![2], vec![3]]
        );
        assert_eq!(p.positive_region(), vec![1, 2, 3]);
        assert_eq!(p.positive_region_size(), 3);
    }

    #[test]
    fn third_feature_alone() {
        let ds = interlocking();
        let p = Partition::of_subset(&ds, &FeatureSubset::from_indices([2])).unwrap();
        assert_eq!(blocks_of(&p), vec![vec![0, 3, 4], vec![1, 2]]);
        assert_eq!(p.positive_region(), vec![1, 2]);
    }

    #[test]
    fn pair_positive_region() {
        let ds = interlocking();
        let p = Partition::of_subset(&ds, &FeatureSubset::from_indices([0, 1])).unwrap();
        assert_eq!(p.positive_region(), vec![1, 2, 3]);
    }

    #[test]
    fn refinement_matches_from_scratch() {
        let ds = interlocking();
        let from_scratch =
            Partition::of_subset(&ds, &FeatureSubset::from_indices([0, 2])).unwrap();
        let incremental = Partition::universe(&ds)
            .refine(&ds, 2)
            .unwrap()
            .refine(&ds, 0)
            .unwrap();
        assert_eq!(from_scratch, incremental);
    }

    #[test]
    fn purity_is_cached_per_block() {
        let ds = interlocking();
        let p = Partition::of_subset(&ds, &FeatureSubset::from_indices([2])).unwrap();
        let pure: Vec<bool> = p.blocks().iter().map(|b| b.is_pure()).collect();
        assert_eq!(pure, vec![false, true]);
        assert_eq!(p.blocks()[1].pure_decision(), Some(1));
    }

    #[test]
    fn out_of_range_feature_is_rejected() {
        let ds = interlocking();
        assert!(Partition::of_subset(&ds, &FeatureSubset::from_indices([3])).is_err());
        assert!(Partition::universe(&ds).refine(&ds, 7).is_err());
    }
}
