//! Independent reference computations shared by the integration suites.
//! Nothing here goes through the pair space, the closure rules or the
//! lectic enumeration of the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ninfty::group::{construct_group, Group, PRESETS};
use ninfty::gset::GSet;
use ninfty::indexing::{validate, IndexingSystem};

/// Presets of order at most 12.
pub fn small_presets() -> Vec<Group> {
    PRESETS.iter().map(|p| construct_group(p).unwrap()).filter(|g| g.order() <= 12).collect()
}

/// Number of indexing systems per preset, produced by `oracle_systems`
/// and frozen here. S4 and A5 come from the library enumeration, checked
/// against the oracle where the oracle is fast enough.
pub const FROZEN_COUNTS: &[(&str, usize)] = &[
    ("C1", 1),
    ("C2", 2),
    ("C3", 2),
    ("C4", 5),
    ("C2xC2", 19),
    ("C5", 2),
    ("C6", 10),
    ("S3", 9),
    ("C7", 2),
    ("C8", 14),
    ("C2xC4", 328),
    ("D8", 294),
    ("Q8", 68),
    ("C9", 5),
    ("C3xC3", 36),
    ("C10", 10),
    ("D10", 9),
    ("C12", 68),
    ("C2xC6", 3396),
    ("D12", 3133),
    ("A4", 20),
    ("S4", 8691),
    ("A5", 987),
];

/// Subgroups as raw member sets, with intersection and conjugation done
/// on the sets themselves.
pub struct RawSubgroups {
    pub group: Group,
    pub members: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl RawSubgroups {
    pub fn new(group: &Group) -> RawSubgroups {
        let l = group.lattice();
        let members: Vec<Vec<usize>> = (0..l.len()).map(|s| l.members(s).to_vec()).collect();
        let index = members.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        RawSubgroups { group: group.clone(), members, index }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn le(&self, k: usize, h: usize) -> bool {
        self.members[k].iter().all(|x| self.members[h].binary_search(x).is_ok())
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let m: Vec<usize> = self.members[a].iter().copied().filter(|x| self.members[b].binary_search(x).is_ok()).collect();
        self.index[&m]
    }

    pub fn conjugate(&self, g: usize, s: usize) -> usize {
        let gr = &self.group;
        let mut m: Vec<usize> = self.members[s].iter().map(|&x| gr.mul(gr.mul(g, x), gr.inv(g))).collect();
        m.sort_unstable();
        self.index[&m]
    }

    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for h in 0..self.len() {
            for k in 0..self.len() {
                if self.le(k, h) {
                    out.push((h, k));
                }
            }
        }
        out
    }

    /// Conjugacy classes of pairs `K ≤ H`.
    pub fn pair_classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (h, k) in self.all_pairs() {
            if seen.contains(&(h, k)) {
                continue;
            }
            let class: BTreeSet<(usize, usize)> =
                (0..self.group.order()).map(|g| (self.conjugate(g, h), self.conjugate(g, k))).collect();
            seen.extend(class.iter().copied());
            out.push(class.into_iter().collect());
        }
        out
    }
}

/// Implications between pair classes read off the axioms: each entry is
/// (premise classes, conclusion class).
fn class_instances(raw: &RawSubgroups, class_of: &HashMap<(usize, usize), usize>) -> Vec<(Vec<usize>, usize)> {
    let pairs = raw.all_pairs();
    let mut out = BTreeSet::new();
    for &(h, k) in &pairs {
        let c = class_of[&(h, k)];
        for l in (0..raw.len()).filter(|&l| raw.le(l, h)) {
            out.insert((vec![c], class_of[&(l, raw.meet(l, k))]));
        }
        for &(k2, m) in pairs.iter().filter(|p| p.0 == k) {
            let mut prem = vec![c, class_of[&(k2, m)]];
            prem.sort();
            prem.dedup();
            out.insert((prem, class_of[&(h, m)]));
        }
        for &(_, m) in pairs.iter().filter(|p| p.0 == h) {
            let mut prem = vec![c, class_of[&(h, m)]];
            prem.sort();
            prem.dedup();
            out.insert((prem, class_of[&(h, raw.meet(k, m))]));
        }
    }
    out.into_iter().collect()
}

/// Every conjugation-closed, diagonal-containing pair set that passes
/// `validate`, as sorted pair sets. Small cases run the plain filter over
/// all subsets; larger ones prune a depth-first search whenever a fully
/// decided axiom instance already fails, then still pass each leaf through
/// `validate`.
pub fn oracle_systems(group: &Group) -> Vec<BTreeSet<(usize, usize)>> {
    let raw = RawSubgroups::new(group);
    let classes = raw.pair_classes();
    let mut class_of = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for &p in c {
            class_of.insert(p, i);
        }
    }
    let diagonal: Vec<usize> = (0..classes.len()).filter(|&i| classes[i][0].0 == classes[i][0].1).collect();
    let free: Vec<usize> = (0..classes.len()).filter(|i| !diagonal.contains(i)).collect();
    let to_pairs = |chosen: &[bool]| -> BTreeSet<(usize, usize)> {
        let mut s = BTreeSet::new();
        for (i, c) in classes.iter().enumerate() {
            if chosen[i] {
                s.extend(c.iter().copied());
            }
        }
        s
    };
    let mut base = vec![false; classes.len()];
    for &d in &diagonal {
        base[d] = true;
    }
    let mut out = Vec::new();
    if free.len() <= 16 {
        for mask in 0u64..(1 << free.len()) {
            let mut chosen = base.clone();
            for (b, &c) in free.iter().enumerate() {
                chosen[c] = mask >> b & 1 == 1;
            }
            let pairs = to_pairs(&chosen);
            if validate(group, &pairs).valid {
                out.push(pairs);
            }
        }
    } else {
        let instances = class_instances(&raw, &class_of);
        // Position of each class in the decision order; diagonal first.
        let mut rank = vec![0usize; classes.len()];
        for (i, &c) in free.iter().enumerate() {
            rank[c] = i + 1;
        }
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); free.len() + 1];
        for (i, (prem, concl)) in instances.iter().enumerate() {
            let last = prem.iter().chain(std::iter::once(concl)).map(|&c| rank[c]).max().unwrap();
            by_last[last].push(i);
        }
        let broken = |chosen: &[bool], step: usize| {
            by_last[step].iter().any(|&i| {
                let (prem, concl) = &instances[i];
                prem.iter().all(|&p| chosen[p]) && !chosen[*concl]
            })
        };
        fn dfs(
            step: usize,
            free: &[usize],
            chosen: &mut Vec<bool>,
            broken: &dyn Fn(&[bool], usize) -> bool,
            leaf: &mut dyn FnMut(&[bool]),
        ) {
            if step == free.len() {
                leaf(chosen);
                return;
            }
            for v in [false, true] {
                chosen[free[step]] = v;
                if !broken(chosen, step + 1) {
                    dfs(step + 1, free, chosen, broken, leaf);
                }
            }
            chosen[free[step]] = false;
        }
        let mut chosen = base.clone();
        if !broken(&chosen, 0) {
            let mut leaf = |c: &[bool]| {
                let pairs = to_pairs(c);
                if validate(group, &pairs).valid {
                    out.push(pairs);
                }
            };
            dfs(0, &free, &mut chosen, &broken, &mut leaf);
        }
    }
    out.sort();
    out
}

/// Checks a pair set against the set-level definition: admissible sets
/// contain the trivial ones and are closed under restriction, conjugation,
/// products and self-induction, all computed with actual G-sets.
pub fn satisfies_definition(group: &Group, pairs: &BTreeSet<(usize, usize)>) -> bool {
    let raw = RawSubgroups::new(group);
    let l = group.lattice();
    let orbit_ok = |h: usize, set: &GSet| -> bool {
        let emb = group.embedding_of(set.group()).unwrap();
        set.orbits().iter().all(|o| pairs.contains(&(h, emb[o.stabilizer])))
    };
    for h in 0..raw.len() {
        if !pairs.contains(&(h, h)) {
            return false;
        }
    }
    for &(h, k) in pairs {
        let hg = group.subgroup_group(h);
        let orbit = GSet::coset_space(&hg, group.restrict_index(k, &hg).unwrap());
        for m in (0..raw.len()).filter(|&m| raw.le(m, h)) {
            if !orbit_ok(m, &orbit.restrict(&group.subgroup_group(m)).unwrap()) {
                return false;
            }
        }
        for g in 0..group.order() {
            let moved = orbit.conjugate(group, g).unwrap();
            if !orbit_ok(l.conjugate(g, h), &moved) {
                return false;
            }
        }
        for &(_, m) in pairs.iter().filter(|p| p.0 == h) {
            let other = GSet::coset_space(&hg, group.restrict_index(m, &hg).unwrap());
            if !orbit_ok(h, &orbit.product(&other).unwrap()) {
                return false;
            }
        }
        let kg = group.subgroup_group(k);
        for &(_, m) in pairs.iter().filter(|p| p.0 == k) {
            let inner = GSet::coset_space(&kg, group.restrict_index(m, &kg).unwrap());
            if !orbit_ok(h, &inner.induce(&hg).unwrap()) {
                return false;
            }
        }
    }
    true
}

/// All conjugation-closed, diagonal-containing pair sets of a small group.
pub fn all_candidate_sets(group: &Group) -> Vec<BTreeSet<(usize, usize)>> {
    let raw = RawSubgroups::new(group);
    let classes = raw.pair_classes();
    let free: Vec<&Vec<(usize, usize)>> = classes.iter().filter(|c| c[0].0 != c[0].1).collect();
    let diag: BTreeSet<(usize, usize)> = classes.iter().filter(|c| c[0].0 == c[0].1).flatten().copied().collect();
    assert!(free.len() <= 16);
    (0u32..(1 << free.len()))
        .map(|mask| {
            let mut s = diag.clone();
            for (b, c) in free.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.extend(c.iter().copied());
                }
            }
            s
        })
        .collect()
}

pub fn system_pairs(s: &IndexingSystem) -> BTreeSet<(usize, usize)> {
    s.pairs()
}
