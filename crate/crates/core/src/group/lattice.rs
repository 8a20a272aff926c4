use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// All subgroups of a finite group with inclusion, conjugation and
/// intersection tables.
///
/// Subgroups are sorted by (order, sorted member list), so index 0 is the
/// trivial subgroup, the last index is the whole group, and the least index
/// in a conjugacy class is its lexicographically least member.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    members: Vec<Vec<usize>>,
    masks: Vec<FixedBitSet>,
    generators: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    /// `below[h]` holds every `k` with `k ≤ h`.
    below: Vec<FixedBitSet>,
    conj: Vec<u32>,
    meet: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// Element `w` with `w · rep · w⁻¹ = s` where `rep` is the class representative.
    witness: Vec<usize>,
    class_labels: Vec<String>,
}

impl SubgroupLattice {
    pub(crate) fn compute(g: &FiniteGroup) -> SubgroupLattice {
        let n = g.order();
        let closure = |gens: &[usize]| -> FixedBitSet {
            let mut mask = FixedBitSet::with_capacity(n);
            let mut list = vec![FiniteGroup::IDENTITY];
            mask.insert(FiniteGroup::IDENTITY);
            let mut i = 0;
            while i < list.len() {
                let x = list[i];
                for &s in gens {
                    let y = g.mul(s, x);
                    if !mask.contains(y) {
                        mask.insert(y);
                        list.push(y);
                    }
                }
                i += 1;
            }
            mask
        };

        // Cyclic subgroups seed the search; every subgroup is a join of cyclic ones.
        let mut found: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        let mut cyclic: Vec<(FixedBitSet, usize)> = Vec::new();
        for x in 0..n {
            let m = closure(&[x]);
            if seen.insert(m.clone(), ()).is_none() {
                cyclic.push((m.clone(), x));
                found.push((m, if x == 0 { vec![] } else { vec![x] }));
            }
        }
        let mut i = 0;
        while i < found.len() {
            for (cmask, c) in &cyclic {
                if cmask.is_subset(&found[i].0) {
                    continue;
                }
                let mut gens = found[i].1.clone();
                gens.push(*c);
                let m = closure(&gens);
                if seen.insert(m.clone(), ()).is_none() {
                    found.push((m, gens));
                }
            }
            i += 1;
        }

        let mut entries: Vec<(Vec<usize>, FixedBitSet, Vec<usize>)> =
            found.into_iter().map(|(m, gens)| (m.ones().collect(), m, gens)).collect();
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let count = entries.len();
        let mut members = Vec::with_capacity(count);
        let mut masks = Vec::with_capacity(count);
        let mut generators = Vec::with_capacity(count);
        for (m, mask, gens) in entries {
            members.push(m);
            masks.push(mask);
            generators.push(gens);
        }
        let lookup: HashMap<Vec<usize>, usize> =
            members.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

        let mut below = vec![FixedBitSet::with_capacity(count); count];
        for h in 0..count {
            for k in 0..=h {
                if masks[k].is_subset(&masks[h]) {
                    below[h].insert(k);
                }
            }
        }

        let mut conj = vec![0u32; n * count];
        for x in 0..n {
            for s in 0..count {
                let mut m: Vec<usize> = members[s].iter().map(|&a| g.conj(x, a)).collect();
                m.sort_unstable();
                conj[x * count + s] = lookup[&m] as u32;
            }
        }

        let mut meet = vec![0u32; count * count];
        for a in 0..count {
            for b in 0..count {
                let mut m = masks[a].clone();
                m.intersect_with(&masks[b]);
                let v: Vec<usize> = m.ones().collect();
                meet[a * count + b] = lookup[&v] as u32;
            }
        }

        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        let mut witness = vec![0usize; count];
        for s in 0..count {
            if class_of[s] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut cls = Vec::new();
            for x in 0..n {
                let t = conj[x * count + s] as usize;
                if class_of[t] == usize::MAX {
                    class_of[t] = c;
                    witness[t] = x;
                    cls.push(t);
                }
            }
            cls.sort_unstable();
            classes.push(cls);
        }

        let mut lattice = SubgroupLattice {
            members,
            masks,
            generators,
            lookup,
            below,
            conj,
            meet,
            class_of,
            classes,
            witness,
            class_labels: Vec::new(),
        };
        lattice.class_labels = lattice.compute_labels(g);
        lattice
    }

    fn compute_labels(&self, g: &FiniteGroup) -> Vec<String> {
        let bases: Vec<String> = self.classes.iter().map(|c| type_name(g, &self.members[c[0]])).collect();
        let mut labels = bases.clone();
        let mut groups: HashMap<&str, Vec<usize>> = HashMap::new();
        for (i, b) in bases.iter().enumerate() {
            groups.entry(b.as_str()).or_default().push(i);
        }
        for idxs in groups.values() {
            if idxs.len() > 1 {
                for (k, &i) in idxs.iter().enumerate() {
                    labels[i] = format!("{}{}", bases[i], suffix(k));
                }
            }
        }
        labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn members(&self, s: usize) -> &[usize] {
        &self.members[s]
    }

    pub fn order(&self, s: usize) -> usize {
        self.members[s].len()
    }

    pub fn mask(&self, s: usize) -> &FixedBitSet {
        &self.masks[s]
    }

    pub fn generators(&self, s: usize) -> &[usize] {
        &self.generators[s]
    }

    pub fn contains_element(&self, s: usize, g: usize) -> bool {
        self.masks[s].contains(g)
    }

    pub fn index_of_members(&self, members: &[usize]) -> Option<usize> {
        if members.windows(2).all(|w| w[0] < w[1]) {
            self.lookup.get(members).copied()
        } else {
            let mut m = members.to_vec();
            m.sort_unstable();
            m.dedup();
            self.lookup.get(&m).copied()
        }
    }

    /// `k ≤ h`.
    #[inline]
    pub fn le(&self, k: usize, h: usize) -> bool {
        self.below[h].contains(k)
    }

    /// Subgroups of `h` (including `h`), in lattice order.
    pub fn subgroups_of(&self, h: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[h].ones()
    }

    /// Subgroups containing `k` (including `k`).
    pub fn overgroups_of(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (k..self.len()).filter(move |&h| self.le(k, h))
    }

    /// `g S g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, s: usize) -> usize {
        self.conj[g * self.len() + s] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn class_of(&self, s: usize) -> usize {
        self.class_of[s]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    /// Canonical (least) representative of the conjugacy class of `s`.
    pub fn canonical(&self, s: usize) -> usize {
        self.classes[self.class_of[s]][0]
    }

    pub fn is_normal(&self, s: usize) -> bool {
        self.classes[self.class_of[s]].len() == 1
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.is_normal(s)).collect()
    }

    /// An element `w` with `w · canonical(s) · w⁻¹ = s`.
    pub fn witness(&self, s: usize) -> usize {
        self.witness[s]
    }

    /// An element `x` with `x a x⁻¹ = b`, if `a` and `b` are conjugate.
    pub fn conjugator(&self, g: &FiniteGroup, a: usize, b: usize) -> Option<usize> {
        if self.class_of[a] != self.class_of[b] {
            return None;
        }
        Some(g.mul(self.witness[b], g.inv(self.witness[a])))
    }

    pub fn class_label(&self, class: usize) -> &str {
        &self.class_labels[class]
    }

    /// Label of an individual subgroup: the class label for the class
    /// representative, `label#k` for the k-th member of a larger class.
    pub fn label(&self, s: usize) -> String {
        let c = self.class_of[s];
        let pos = self.classes[c].iter().position(|&t| t == s).unwrap();
        if pos == 0 {
            self.class_labels[c].clone()
        } else {
            format!("{}#{}", self.class_labels[c], pos)
        }
    }

    /// Resolves a subgroup label. `G` and the group's own name denote the
    /// whole group; `e` and `1` the trivial subgroup.
    pub fn find(&self, label: &str, group_name: Option<&str>) -> Result<usize> {
        let label = label.trim();
        if label == "G" || Some(label) == group_name {
            return Ok(self.top());
        }
        if label == "e" || label == "1" {
            return Ok(self.bottom());
        }
        let (base, pos) = match label.split_once('#') {
            Some((b, p)) => {
                (b, p.parse::<usize>().map_err(|_| Error::UnknownSubgroup(label.to_string()))?)
            }
            None => (label, 0),
        };
        let c = self
            .class_labels
            .iter()
            .position(|l| l == base)
            .ok_or_else(|| Error::UnknownSubgroup(label.to_string()))?;
        self.classes[c].get(pos).copied().ok_or_else(|| Error::UnknownSubgroup(label.to_string()))
    }
}

fn suffix(k: usize) -> String {
    let mut k = k;
    let mut s = Vec::new();
    loop {
        s.push((b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.iter().rev().collect()
}

/// A short isomorphism-type name from element-order statistics. Only used
/// for labels; ambiguous cases fall back to `H<order>`.
fn type_name(g: &FiniteGroup, members: &[usize]) -> String {
    let n = members.len();
    if n == 1 {
        return "e".into();
    }
    let mut order_count = HashMap::new();
    for &m in members {
        *order_count.entry(g.element_order(m)).or_insert(0usize) += 1;
    }
    if order_count.contains_key(&n) {
        return format!("C{}", n);
    }
    let abelian = members.iter().all(|&a| members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    let invols = order_count.get(&2).copied().unwrap_or(0);
    let has = |o: usize| order_count.contains_key(&o);
    match (n, abelian) {
        (4, _) => "V4".into(),
        (6, false) => "S3".into(),
        (8, true) if invols == 3 => "C2xC4".into(),
        (8, true) if invols == 7 => "C2^3".into(),
        (8, false) if invols == 5 => "D8".into(),
        (8, false) if invols == 1 => "Q8".into(),
        (9, true) => "C3xC3".into(),
        (12, true) => "C2xC6".into(),
        (12, false) if invols == 3 && !has(6) => "A4".into(),
        (12, false) if invols == 1 => "Dic12".into(),
        (24, false) if invols == 9 && has(4) && has(3) && !has(6) => "S4".into(),
        (60, false) if invols == 15 && !has(4) && !has(6) => "A5".into(),
        (_, false) if n % 2 == 0 && has(n / 2) && is_dihedral_count(n, invols) => format!("D{}", n),
        _ => format!("H{}", n),
    }
}

/// Dihedral groups of order 2m have m reflections, plus the central
/// rotation when m is even.
fn is_dihedral_count(n: usize, invols: usize) -> bool {
    let m = n / 2;
    invols == m + usize::from(m % 2 == 0)
}
