use serde_json::{json, Value};

use super::IndexingSystem;
use crate::group::Group;
use crate::gset::{graph_subgroup, sets_of_size, GSet, GraphSubgroup};

/// A conjugacy class of graph subgroups `Γ_T ≤ G × Σ_n`: the subgroup `H`
/// (canonical lattice index of `G`) and the orbit types of `T` over the
/// lattice of `H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyMember {
    pub subgroup: usize,
    pub orbits: Vec<(usize, usize)>,
}

impl FamilyMember {
    pub fn gset(&self, group: &Group) -> GSet {
        GSet::from_orbit_types(&group.subgroup_group(self.subgroup), &self.orbits)
    }

    pub fn graph(&self, group: &Group) -> GraphSubgroup {
        graph_subgroup(&self.gset(group), group).expect("subgroup of the ambient group")
    }

    pub fn to_json(&self, group: &Group) -> Value {
        let h = group.subgroup_group(self.subgroup);
        let emb = group.embedding_of(&h).expect("own subgroup");
        let l = group.lattice();
        json!({
            "subgroup": l.label(self.subgroup),
            "orbits": self.orbits.iter().map(|&(k, m)| json!([l.label(emb[k]), m])).collect::<Vec<_>>(),
        })
    }
}

/// Orbit types of `T` up to the action of the normalizer of `H`.
fn normal_form(group: &Group, h: usize, types: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let l = group.lattice();
    let hg = group.subgroup_group(h);
    let emb = group.embedding_of(&hg).expect("own subgroup");
    let hl = hg.lattice();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for x in 0..group.order() {
        if l.conjugate(x, h) != h {
            continue;
        }
        let mut moved: Vec<(usize, usize)> = types
            .iter()
            .map(|&(k, m)| {
                let gk = l.conjugate(x, emb[k]);
                (hl.canonical(group.restrict_index(gk, &hg).expect("inside H")), m)
            })
            .collect();
        moved.sort();
        if best.as_ref().is_none_or(|b| moved < *b) {
            best = Some(moved);
        }
    }
    best.unwrap_or_default()
}

/// Classes of graph subgroups `Γ_T` for the admissible H-sets `T` of size
/// `n`, over all `H` up to conjugacy.
pub fn family_sequence(system: &IndexingSystem, n: usize) -> Vec<FamilyMember> {
    let group = system.group();
    let l = group.lattice();
    let mut out = Vec::new();
    for class in l.classes() {
        let h = class[0];
        let hg = group.subgroup_group(h);
        let emb = group.embedding_of(&hg).expect("own subgroup");
        for types in sets_of_size(&hg, n) {
            if types.iter().all(|&(k, _)| system.contains(h, emb[k])) {
                out.push(FamilyMember { subgroup: h, orbits: normal_form(group, h, &types) });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub passed: bool,
    /// Number of (orbit, fibre set) combinations examined.
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl CompositionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "axiom": "composition",
            "status": if self.passed { "pass" } else { "fail" },
            "checked": self.checked,
            "witnesses": self.counterexample.iter().collect::<Vec<_>>(),
        })
    }
}

/// For every admissible orbit `H/K` with `|H/K| ≤ n_max` and every
/// admissible K-set `S` with `|S| ≤ n_max`, checks that `H ×_K S`, the
/// union of the fibres `S_t` over `t ∈ H/K`, is admissible. Unions over
/// several orbits reduce to this case since admissible sets are closed
/// under disjoint unions.
pub fn check_composition_closure(system: &IndexingSystem, n_max: usize) -> CompositionReport {
    let group = system.group();
    let l = group.lattice();
    let mut checked = 0;
    for class in l.classes() {
        let h = class[0];
        let hg = group.subgroup_group(h);
        for k in l.subgroups_of(h) {
            if !system.contains(h, k) || l.order(h) / l.order(k) > n_max {
                continue;
            }
            let kg = group.subgroup_group(k);
            let kemb = group.embedding_of(&kg).expect("own subgroup");
            let hemb = group.embedding_of(&hg).expect("own subgroup");
            for size in 1..=n_max {
                for types in sets_of_size(&kg, size) {
                    if !types.iter().all(|&(m, _)| system.contains(k, kemb[m])) {
                        continue;
                    }
                    checked += 1;
                    let s = GSet::from_orbit_types(&kg, &types);
                    let union = s.induce(&hg).expect("K ≤ H");
                    if let Some(o) = union.orbits().iter().find(|o| !system.contains(h, hemb[o.stabilizer])) {
                        return CompositionReport {
                            passed: false,
                            checked,
                            counterexample: Some(format!(
                                "{} over {}/{} has orbit {}/{}",
                                s.to_literal(),
                                l.label(h),
                                l.label(k),
                                l.label(h),
                                l.label(hemb[o.stabilizer])
                            )),
                        };
                    }
                }
            }
        }
    }
    CompositionReport { passed: true, checked, counterexample: None }
}
