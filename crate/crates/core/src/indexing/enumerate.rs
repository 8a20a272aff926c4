use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::IndexingSystem;
use crate::group::Group;

/// All indexing systems of a group, ordered by size and then by class set,
/// with the covering relation.
#[derive(Debug, Clone)]
pub struct IndexingLattice {
    pub group: Group,
    pub systems: Vec<IndexingSystem>,
    /// `(i, j)` when system `j` covers system `i`.
    pub hasse: Vec<(usize, usize)>,
}

fn sort_key(s: &FixedBitSet) -> (usize, Vec<usize>) {
    (s.count_ones(..), s.ones().collect())
}

/// Enumerates closed class sets in lectic order (Ganter's NextClosure).
pub fn enumerate_all(group: &Group) -> IndexingLattice {
    let space = group.pair_space();
    let m = space.class_count();
    let mut found = Vec::new();
    let mut a = space.close(FixedBitSet::with_capacity(m));
    found.push(a.clone());
    'outer: loop {
        for i in (0..m).rev() {
            if a.contains(i) {
                a.set(i, false);
                continue;
            }
            let mut seed = a.clone();
            seed.insert(i);
            let b = space.close(seed);
            let new_below = b.ones().take_while(|&j| j < i).any(|j| !a.contains(j));
            if !new_below {
                a = b;
                found.push(a.clone());
                continue 'outer;
            }
        }
        break;
    }
    log::debug!("{}: {} closed sets over {} pair classes", group.display_name(), found.len(), m);
    found.sort_by_cached_key(sort_key);
    let hasse = covers(&found);
    let systems = found.into_iter().map(|c| IndexingSystem::from_classes(group, c)).collect();
    IndexingLattice { group: group.clone(), systems, hasse }
}

fn covers(sets: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let n = sets.len();
    let below: Vec<FixedBitSet> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut b = FixedBitSet::with_capacity(n);
            for i in 0..j {
                if sets[i].count_ones(..) < sets[j].count_ones(..) && sets[i].is_subset(&sets[j]) {
                    b.insert(i);
                }
            }
            b
        })
        .collect();
    let per: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut covered = FixedBitSet::with_capacity(n);
            for k in below[j].ones() {
                covered.union_with(&below[k]);
            }
            below[j].ones().filter(|&i| !covered.contains(i)).map(|i| (i, j)).collect()
        })
        .collect();
    per.into_iter().flatten().collect()
}

impl IndexingLattice {
    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn position(&self, s: &IndexingSystem) -> Option<usize> {
        self.systems.iter().position(|t| t == s)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.display_name(),
            "count": self.systems.len(),
            "systems": self.systems.iter().map(IndexingSystem::to_json).map(|mut v| {
                v.as_object_mut().unwrap().remove("group");
                v
            }).collect::<Vec<_>>(),
            "hasse": self.hasse,
        })
    }

    /// Hasse diagram in DOT. Nodes are labelled by their number of
    /// nontrivial pair classes; `marks` optionally tags nodes.
    pub fn to_dot(&self, marks: Option<&dyn Fn(usize) -> Option<String>>) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{}\" {{\n  rankdir=BT;\n", self.group.display_name()));
        for (i, s) in self.systems.iter().enumerate() {
            let count = s.nontrivial_representatives().len();
            let extra = marks.and_then(|f| f(i));
            match extra {
                Some(tag) => out.push_str(&format!("  n{} [label=\"{}\\n{}\", style=filled];\n", i, count, tag)),
                None => out.push_str(&format!("  n{} [label=\"{}\"];\n", i, count)),
            }
        }
        for &(a, b) in &self.hasse {
            out.push_str(&format!("  n{} -> n{};\n", a, b));
        }
        out.push_str("}\n");
        out
    }
}
