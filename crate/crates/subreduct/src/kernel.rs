//! Solver-internal partition state.
//!
//! The search loops only ever need two numbers from a partition: the size of
//! the positive region and the conditional entropy of the decision. Both are
//! unaffected by how a pure block splits further, so this representation
//! drops pure blocks the moment they appear, folding their sizes into a
//! running counter. Refinement then touches only the impure remainder,
//! which shrinks as the subset grows.

use crate::data::DecisionSystem;

/// A partition reduced to what the solvers consume: the accumulated size of
/// all pure blocks plus the impure blocks still worth splitting.
#[derive(Clone, Debug)]
pub(crate) struct Condensed {
    num_objects: usize,
    pos_count: usize,
    impure: Vec<Vec<usize>>,
}

impl Condensed {
    /// Condenses the one-block universe partition.
    pub(crate) fn universe(system: &DecisionSystem) -> Self {
        let n = system.num_objects();
        let mut state = Condensed {
            num_objects: n,
            pos_count: 0,
            impure: Vec::new(),
        };
        if n > 0 {
            state.absorb((0..n).collect(), system.decisions());
        }
        state
    }

    fn absorb(&mut self, members: Vec<usize>, decisions: &[u32]) {
        let first = decisions[members[0]];
        if members[1..].iter().all(|&x| decisions[x] == first) {
            self.pos_count += members.len();
        } else {
            self.impure.push(members);
        }
    }

    /// Splits the impure blocks by one feature. Pure fragments move into
    /// the positive count and disappear from further work.
    pub(crate) fn refine(&self, system: &DecisionSystem, feature: usize) -> Self {
        let column = system.column(feature);
        let decisions = system.decisions();
        let mut next = Condensed {
            num_objects: self.num_objects,
            pos_count: self.pos_count,
            impure: Vec::with_capacity(self.impure.len()),
        };
        let mut groups: std::collections::HashMap<u32, Vec<usize>> =
            std::collections::HashMap::new();
        for block in &self.impure {
            let first_value = column[block[0]];
            if block[1..].iter().all(|&x| column[x] == first_value) {
                next.impure.push(block.clone());
                continue;
            }
            groups.clear();
            for &x in block {
                groups.entry(column[x]).or_default().push(x);
            }
            for (_, members) in groups.drain() {
                next.absorb(members, decisions);
            }
        }
        next
    }

    /// `|POS_B|`: everything that ever landed in a pure block.
    pub(crate) fn positive_region_size(&self) -> usize {
        self.pos_count
    }

    /// Conditional entropy of the decision given the partition, in bits.
    /// Pure blocks contribute zero, so only the impure remainder is
    /// scanned.
    pub(crate) fn entropy_bits(&self, system: &DecisionSystem) -> f64 {
        if self.num_objects == 0 {
            return 0.0;
        }
        let decisions = system.decisions();
        let num_classes = system.decision_domain_size();
        let n = self.num_objects as f64;
        let mut counts = vec![0usize; num_classes];
        let mut total = 0.0f64;
        for block in &self.impure {
            for c in counts.iter_mut() {
                *c = 0;
            }
            for &x in block {
                counts[decisions[x] as usize] += 1;
            }
            let size = block.len() as f64;
            let mut h = 0.0f64;
            for &count in &counts {
                if count > 0 {
                    let p = count as f64 / size;
                    h -= p * p.log2();
                }
            }
            total += (size / n) * h;
        }
        total
    }

    /// Whether further refinement can still grow the positive region.
    pub(crate) fn is_fully_pure(&self) -> bool {
        self.impure.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{DecisionSystem, FeatureSubset};
    use crate::partition::Partition;

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

    fn condensed_of(ds: &DecisionSystem, features: &[usize]) -> Condensed {
        let mut state = Condensed::universe(ds);
        for &f in features {
            state = state.refine(ds, f);
        }
        state
    }

    #[test]
    fn matches_full_partition_on_every_subset() {
        let ds = interlocking();
        for mask in 0u32..8 {
            let features: Vec<usize> = (0..3).filter(|&f| mask & (1 << f) != 0).collect();
            let condensed = condensed_of(&ds, &features);
            let full =
                Partition::of_subset(&ds, &FeatureSubset::from_indices(features.clone()))
                    .unwrap();
            assert_eq!(
                condensed.positive_region_size(),
                full.positive_region_size(),
                "mask {mask:#b}"
            );
        }
    }

    #[test]
    fn entropy_of_universe() {
        let ds = interlocking();
        let state = Condensed::universe(&ds);
        // Two of five against three of five.
        assert!((state.entropy_bits(&ds) - 0.9709505944546686).abs() < 1e-12);
    }

    #[test]
    fn entropy_after_full_refinement() {
        let ds = interlocking();
        let state = condensed_of(&ds, &[0, 1, 2]);
        // Only the {0,4} block is impure: (2/5) * 1 bit.
        assert!((state.entropy_bits(&ds) - 0.4).abs() < 1e-12);
        assert_eq!(state.positive_region_size(), 3);
        assert!(!state.is_fully_pure());
    }

    #[test]
    fn entropy_single_features() {
        let ds = interlocking();
        for f in [0usize, 1] {
            let state = condensed_of(&ds, &[f]);
            assert!(
                (state.entropy_bits(&ds) - 0.9509775004326937).abs() < 1e-12,
                "feature {f}"
            );
        }
        let state = condensed_of(&ds, &[2]);
        assert!((state.entropy_bits(&ds) - 0.5509775004326937).abs() < 1e-12);
    }

    #[test]
    fn pure_table_condenses_to_nothing() {
        let ds = DecisionSystem::from_rows(
            &["a"],
            "d",
            &[(&["x"], "p"), (&["y"], "p"), (&["x"], "p")],
        )
        .unwrap();
        let state = Condensed::universe(&ds);
        assert!(state.is_fully_pure());
        assert_eq!(state.positive_region_size(), 3);
        assert_eq!(state.entropy_bits(&ds), 0.0);
    }

    #[test]
    fn refinement_order_does_not_matter() {
        let ds = interlocking();
        let a = condensed_of(&ds, &[0, 2]);
        let b = condensed_of(&ds, &[2, 0]);
        assert_eq!(a.positive_region_size(), b.positive_region_size());
        assert!((a.entropy_bits(&ds) - b.entropy_bits(&ds)).abs() < 1e-15);
    }
}
