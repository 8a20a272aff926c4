//! Indexing systems encoded by their admissible orbits `H/K`.
//!
//! An admissible H-set is a disjoint union of admissible orbits, so a system
//! is a set of pairs `(H, K)` with `K ≤ H`, closed under conjugation. It is
//! stored as a set of pair conjugacy classes.

mod enumerate;
mod family;
mod space;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};

pub use enumerate::{enumerate_all, IndexingLattice};
pub use family::{check_composition_closure, family_sequence, CompositionReport, FamilyMember};
pub use space::PairSpace;

#[derive(Clone)]
pub struct IndexingSystem {
    group: Group,
    space: Arc<PairSpace>,
    classes: FixedBitSet,
}

impl fmt::Debug for IndexingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.nontrivial_representatives().iter().map(|&(h, k)| pair_label(&self.group, h, k)).collect();
        write!(f, "IndexingSystem({}: {{{}}})", self.group.display_name(), pairs.join(", "))
    }
}

impl PartialEq for IndexingSystem {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.classes == other.classes
    }
}

impl Eq for IndexingSystem {}

pub fn pair_label(g: &FiniteGroup, h: usize, k: usize) -> String {
    let l = g.lattice();
    format!("{}/{}", l.label(h), l.label(k))
}

impl IndexingSystem {
    pub(crate) fn from_classes(group: &Group, classes: FixedBitSet) -> IndexingSystem {
        IndexingSystem { group: group.clone(), space: group.pair_space(), classes }
    }

    /// Only the pairs `(H, H)`.
    pub fn trivial(group: &Group) -> IndexingSystem {
        let space = group.pair_space();
        Self::from_classes(group, space.diagonal().clone())
    }

    /// Every pair `K ≤ H`.
    pub fn complete(group: &Group) -> IndexingSystem {
        let space = group.pair_space();
        let mut all = FixedBitSet::with_capacity(space.class_count());
        all.insert_range(..);
        Self::from_classes(group, all)
    }

    /// Least system containing the given pairs.
    pub fn closure(group: &Group, seeds: &[(usize, usize)]) -> Result<IndexingSystem> {
        let space = group.pair_space();
        let mut set = FixedBitSet::with_capacity(space.class_count());
        for &(h, k) in seeds {
            let id = space.pair_id(h, k).ok_or_else(|| Error::NotContained(group.lattice().label(k), group.lattice().label(h)))?;
            set.insert(space.class_of_pair(id));
        }
        Ok(Self::from_classes(group, space.close(set)))
    }

    /// Checks a raw pair set and returns it as a system if it is one.
    pub fn from_pairs(group: &Group, pairs: &BTreeSet<(usize, usize)>) -> Result<IndexingSystem> {
        let report = validate(group, pairs);
        if !report.valid {
            return Err(Error::InvalidSystem(report.summary()));
        }
        let space = group.pair_space();
        let mut set = FixedBitSet::with_capacity(space.class_count());
        for &(h, k) in pairs {
            set.insert(space.class_of_pair(space.pair_id(h, k).expect("validated")));
        }
        Ok(Self::from_classes(group, set))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn space(&self) -> &Arc<PairSpace> {
        &self.space
    }

    /// Pair classes in the system.
    pub fn classes(&self) -> &FixedBitSet {
        &self.classes
    }

    pub fn contains(&self, h: usize, k: usize) -> bool {
        self.space.pair_id(h, k).is_some_and(|id| self.classes.contains(self.space.class_of_pair(id)))
    }

    /// Every pair in the system, sorted.
    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        self.classes.ones().flat_map(|c| self.space.class_pairs(c).iter().map(|&id| self.space.pair(id))).collect()
    }

    /// Class representatives, sorted.
    pub fn representatives(&self) -> Vec<(usize, usize)> {
        self.classes.ones().map(|c| self.space.class_representative(c)).collect()
    }

    /// Class representatives with `K < H`.
    pub fn nontrivial_representatives(&self) -> Vec<(usize, usize)> {
        self.representatives().into_iter().filter(|&(h, k)| h != k).collect()
    }

    /// Number of pair classes, diagonal included.
    pub fn len(&self) -> usize {
        self.classes.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.classes == *self.space.diagonal()
    }

    pub fn is_complete(&self) -> bool {
        self.len() == self.space.class_count()
    }

    pub fn is_subset(&self, other: &IndexingSystem) -> bool {
        self.group == other.group && self.classes.is_subset(&other.classes)
    }

    pub fn meet(&self, other: &IndexingSystem) -> Result<IndexingSystem> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut c = self.classes.clone();
        c.intersect_with(&other.classes);
        Ok(Self::from_classes(&self.group, c))
    }

    pub fn join(&self, other: &IndexingSystem) -> Result<IndexingSystem> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut c = self.classes.clone();
        c.union_with(&other.classes);
        Ok(Self::from_classes(&self.group, self.space.close(c)))
    }

    /// The system over the subgroup with lattice index `h`: a pair of `H`
    /// is present iff it is present here.
    pub fn restrict(&self, h: usize) -> IndexingSystem {
        let sub = self.group.subgroup_group(h);
        let emb = self.group.embedding_of(&sub).expect("own subgroup");
        let space = sub.pair_space();
        let mut set = FixedBitSet::with_capacity(space.class_count());
        for c in 0..space.class_count() {
            let (m, l) = space.class_representative(c);
            if self.contains(emb[m], emb[l]) {
                set.insert(c);
            }
        }
        Self::from_classes(&sub, set)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.group, &self.pairs())
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<[String; 2]> = self
            .representatives()
            .into_iter()
            .map(|(h, k)| [self.group.lattice().label(h), self.group.lattice().label(k)])
            .collect();
        json!({ "group": self.group.display_name(), "pairs": pairs })
    }

    /// Reads `{"pairs": [["H", "K"], ...]}` (the group field is ignored),
    /// closes the listed pairs under conjugation and validates the result.
    pub fn from_json(group: &Group, doc: &Value) -> Result<IndexingSystem> {
        let pairs = pairs_from_json(group, doc)?;
        Self::from_pairs(group, &pairs)
    }
}

/// Pair list of a JSON system document, closed under conjugation.
pub fn pairs_from_json(group: &Group, doc: &Value) -> Result<BTreeSet<(usize, usize)>> {
    let list = doc
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("system document needs a \"pairs\" array".into()))?;
    let mut labels = Vec::new();
    for item in list {
        let pair = item.as_array().filter(|a| a.len() == 2);
        let names: Option<Vec<&str>> = pair.map(|a| a.iter().filter_map(Value::as_str).collect());
        match names {
            Some(n) if n.len() == 2 => labels.push((n[0].to_string(), n[1].to_string())),
            _ => return Err(Error::Parse(format!("bad pair entry {}", item))),
        }
    }
    resolve_pairs(group, labels.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

/// Parses `H/K,H'/K',...` into pairs closed under conjugation.
pub fn parse_pair_list(group: &Group, s: &str) -> Result<BTreeSet<(usize, usize)>> {
    let mut labels = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (h, k) = part.split_once('/').ok_or_else(|| Error::Parse(format!("expected H/K, got `{}`", part)))?;
        labels.push((h.trim(), k.trim()));
    }
    resolve_pairs(group, labels)
}

fn resolve_pairs<'a>(group: &Group, labels: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<BTreeSet<(usize, usize)>> {
    let l = group.lattice();
    let mut out = BTreeSet::new();
    for (hl, kl) in labels {
        let h = l.find(hl, group.name())?;
        let k = l.find(kl, group.name())?;
        if !l.le(k, h) {
            return Err(Error::NotContained(l.label(k), l.label(h)));
        }
        for g in 0..group.order() {
            out.insert((l.conjugate(g, h), l.conjugate(g, k)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Containment,
    Reflexivity,
    Conjugation,
    Restriction,
    Composition,
    Product,
}

/// A violated axiom: the premises are present, `missing` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub premises: Vec<(usize, usize)>,
    pub missing: (usize, usize),
    /// Conjugating element involved, if any.
    pub element: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub group: Group,
    pub valid: bool,
    /// First violation found for each failing axiom.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                let prem: Vec<String> = v.premises.iter().map(|&(h, k)| pair_label(&self.group, h, k)).collect();
                format!(
                    "{:?}: [{}] require {}",
                    v.axiom,
                    prem.join(", "),
                    pair_label(&self.group, v.missing.0, v.missing.1)
                )
            })
            .collect();
        parts.join("; ")
    }

    pub fn to_json(&self) -> Value {
        let vs: Vec<Value> = self
            .violations
            .iter()
            .map(|v| {
                json!({
                    "axiom": v.axiom,
                    "premises": v.premises.iter().map(|&(h, k)| pair_label(&self.group, h, k)).collect::<Vec<_>>(),
                    "missing": pair_label(&self.group, v.missing.0, v.missing.1),
                    "element": v.element.map(|g| self.group.element(g).to_string()),
                })
            })
            .collect();
        json!({ "group": self.group.display_name(), "valid": self.valid, "violations": vs })
    }
}

/// Checks each axiom directly on a raw pair set and reports the first
/// witness of every failure.
pub fn validate(group: &Group, pairs: &BTreeSet<(usize, usize)>) -> ValidationReport {
    let l = group.lattice();
    let mut violations = Vec::new();
    let push = |v: Violation, violations: &mut Vec<Violation>| {
        if !violations.iter().any(|w: &Violation| w.axiom == v.axiom) {
            violations.push(v);
        }
    };
    for &(h, k) in pairs {
        if h >= l.len() || k >= l.len() || !l.le(k, h) {
            push(Violation { axiom: Axiom::Containment, premises: vec![], missing: (h, k), element: None }, &mut violations);
        }
    }
    if !violations.is_empty() {
        return ValidationReport { group: group.clone(), valid: false, violations };
    }
    let has = |h: usize, k: usize| pairs.contains(&(h, k));
    for h in 0..l.len() {
        if !has(h, h) {
            push(Violation { axiom: Axiom::Reflexivity, premises: vec![], missing: (h, h), element: None }, &mut violations);
            break;
        }
    }
    'conj: for &(h, k) in pairs {
        for g in 0..group.order() {
            let (gh, gk) = (l.conjugate(g, h), l.conjugate(g, k));
            if !has(gh, gk) {
                push(Violation { axiom: Axiom::Conjugation, premises: vec![(h, k)], missing: (gh, gk), element: Some(g) }, &mut violations);
                break 'conj;
            }
        }
    }
    'res: for &(h, k) in pairs {
        for m in l.subgroups_of(h) {
            for &g in l.members(h) {
                let r = l.meet(m, l.conjugate(g, k));
                if !has(m, r) {
                    push(Violation { axiom: Axiom::Restriction, premises: vec![(h, k)], missing: (m, r), element: Some(g) }, &mut violations);
                    break 'res;
                }
            }
        }
    }
    'comp: for &(h, k) in pairs {
        for &(k2, m) in pairs.range((k, 0)..(k + 1, 0)) {
            debug_assert_eq!(k2, k);
            if !has(h, m) {
                push(Violation { axiom: Axiom::Composition, premises: vec![(h, k), (k, m)], missing: (h, m), element: None }, &mut violations);
                break 'comp;
            }
        }
    }
    'prod: for &(h, k) in pairs {
        for &(h2, m) in pairs.range((h, 0)..(h + 1, 0)) {
            debug_assert_eq!(h2, h);
            for &x in l.members(h) {
                let r = l.meet(k, l.conjugate(x, m));
                if !has(h, r) {
                    push(Violation { axiom: Axiom::Product, premises: vec![(h, k), (h, m)], missing: (h, r), element: Some(x) }, &mut violations);
                    break 'prod;
                }
            }
        }
    }
    violations.sort_by_key(|v| v.axiom);
    ValidationReport { group: group.clone(), valid: violations.is_empty(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;

    fn c4() -> (Group, usize, usize, usize) {
        let g = construct_group("C4").unwrap();
        let l = g.lattice();
        (g.clone(), l.find("e", None).unwrap(), l.find("C2", None).unwrap(), l.find("C4", None).unwrap())
    }

    #[test]
    fn c4_validate_examples() {
        let (g, e, c2, c4) = c4();
        let diag: BTreeSet<_> = [(e, e), (c2, c2), (c4, c4)].into();
        assert!(validate(&g, &diag).valid);
        let mut bad = diag.clone();
        bad.extend([(c4, c2), (c2, e)]);
        let r = validate(&g, &bad);
        assert!(!r.valid);
        assert_eq!(r.violations[0].axiom, Axiom::Composition);
        assert_eq!(r.violations[0].missing, (c4, e));
        let mut ok = diag.clone();
        ok.extend([(c2, e), (c4, e)]);
        assert!(validate(&g, &ok).valid);
    }

    #[test]
    fn c4_closure_examples() {
        let (g, e, c2, c4) = c4();
        let s = IndexingSystem::closure(&g, &[(c4, e)]).unwrap();
        assert_eq!(s.nontrivial_representatives(), vec![(c2, e), (c4, e)]);
        let s = IndexingSystem::closure(&g, &[(c4, c2), (c2, e)]).unwrap();
        assert!(s.is_complete());
        assert!(IndexingSystem::closure(&g, &[]).unwrap().is_trivial());
    }

    #[test]
    fn restrict_examples() {
        let (g, _e, c2, c4) = c4();
        let s = IndexingSystem::closure(&g, &[(c4, c2)]).unwrap();
        assert!(s.restrict(c2).is_trivial());
        assert!(IndexingSystem::complete(&g).restrict(c2).is_complete());
        assert_eq!(s.restrict(c4), s);
    }

    #[test]
    fn json_round_trip() {
        let g = construct_group("S3").unwrap();
        let s = IndexingSystem::complete(&g);
        let back = IndexingSystem::from_json(&g, &s.to_json()).unwrap();
        assert_eq!(back, s);
    }
}
