use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::group::FiniteGroup;

const NONE: u32 = u32::MAX;

/// Implication between pair classes: `a` (and `b`) force `conclusion`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Rule {
    a: usize,
    b: Option<usize>,
    conclusion: usize,
}

/// The pairs `K ≤ H` of a group's lattice, their conjugacy classes, and the
/// class-level closure rules coming from restriction, composition and
/// products.
#[derive(Debug)]
pub struct PairSpace {
    nsub: usize,
    pair_id: Vec<u32>,
    pairs: Vec<(usize, usize)>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    diagonal: FixedBitSet,
    rules: Vec<Rule>,
    watch: Vec<Vec<usize>>,
}

impl PairSpace {
    pub(crate) fn new(g: &FiniteGroup) -> PairSpace {
        let l = g.lattice();
        let nsub = l.len();
        let mut pair_id = vec![NONE; nsub * nsub];
        let mut pairs = Vec::new();
        for h in 0..nsub {
            for k in l.subgroups_of(h) {
                pair_id[h * nsub + k] = pairs.len() as u32;
                pairs.push((h, k));
            }
        }
        let mut class_of = vec![usize::MAX; pairs.len()];
        let mut classes = Vec::new();
        for (id, &(h, k)) in pairs.iter().enumerate() {
            if class_of[id] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = BTreeSet::new();
            for x in 0..g.order() {
                let other = pair_id[l.conjugate(x, h) * nsub + l.conjugate(x, k)] as usize;
                members.insert(other);
            }
            for &m in &members {
                class_of[m] = c;
            }
            classes.push(members.into_iter().collect::<Vec<_>>());
        }
        let mut diagonal = FixedBitSet::with_capacity(classes.len());
        for (c, m) in classes.iter().enumerate() {
            let (h, k) = pairs[m[0]];
            if h == k {
                diagonal.insert(c);
            }
        }

        let cls = |h: usize, k: usize| class_of[pair_id[h * nsub + k] as usize];
        let mut rules = BTreeSet::new();
        let mut add = |a: usize, b: Option<usize>, c: usize| {
            if diagonal.contains(c) || c == a || Some(c) == b {
                return;
            }
            let b = b.filter(|&b| b != a && !diagonal.contains(b));
            let (a, b) = match b {
                Some(b) if b < a => (b, Some(a)),
                _ => (a, b),
            };
            rules.insert(Rule { a, b, conclusion: c });
        };
        for (c, m) in classes.iter().enumerate() {
            let (h, k) = pairs[m[0]];
            if h == k {
                continue;
            }
            let conjugates_in_h: BTreeSet<usize> = l.members(h).iter().map(|&x| l.conjugate(x, k)).collect();
            for mm in l.subgroups_of(h) {
                for &kk in &conjugates_in_h {
                    add(c, None, cls(mm, l.meet(mm, kk)));
                }
            }
            for m2 in l.subgroups_of(k) {
                add(c, Some(cls(k, m2)), cls(h, m2));
            }
            for m2 in l.subgroups_of(h) {
                add(c, Some(cls(h, m2)), cls(h, l.meet(k, m2)));
            }
        }
        let rules: Vec<Rule> = rules.into_iter().collect();
        let mut watch = vec![Vec::new(); classes.len()];
        for (i, r) in rules.iter().enumerate() {
            watch[r.a].push(i);
            if let Some(b) = r.b {
                watch[b].push(i);
            }
        }
        PairSpace { nsub, pair_id, pairs, class_of, classes, diagonal, rules, watch }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn pair(&self, id: usize) -> (usize, usize) {
        self.pairs[id]
    }

    pub fn pair_id(&self, h: usize, k: usize) -> Option<usize> {
        if h >= self.nsub || k >= self.nsub {
            return None;
        }
        let id = self.pair_id[h * self.nsub + k];
        (id != NONE).then_some(id as usize)
    }

    pub fn class_of_pair(&self, id: usize) -> usize {
        self.class_of[id]
    }

    pub fn class_of(&self, h: usize, k: usize) -> Option<usize> {
        self.pair_id(h, k).map(|id| self.class_of[id])
    }

    pub fn class_pairs(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    /// Least pair of the class; its `H` is class-canonical.
    pub fn class_representative(&self, c: usize) -> (usize, usize) {
        self.pairs[self.classes[c][0]]
    }

    /// Classes of the pairs `(H, H)`.
    pub fn diagonal(&self) -> &FixedBitSet {
        &self.diagonal
    }

    /// Least rule-closed class set containing `set` and the diagonal.
    pub fn close(&self, mut set: FixedBitSet) -> FixedBitSet {
        set.grow(self.classes.len());
        set.union_with(&self.diagonal);
        let mut queue: Vec<usize> = set.ones().collect();
        while let Some(c) = queue.pop() {
            for &r in &self.watch[c] {
                let rule = self.rules[r];
                if set.contains(rule.conclusion) || !set.contains(rule.a) {
                    continue;
                }
                if rule.b.is_some_and(|b| !set.contains(b)) {
                    continue;
                }
                set.insert(rule.conclusion);
                queue.push(rule.conclusion);
            }
        }
        set
    }
}
