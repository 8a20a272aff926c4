//! Universes, recorded by the set of irreducibles they contain. Every
//! constituent is taken with infinite multiplicity, so the set is all there is.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::characters::{permutation_character, CharacterTable, ClassFunction, Provenance};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::GSet;

#[derive(Clone)]
pub struct Universe {
    group: Group,
    table: Arc<CharacterTable>,
    constituents: BTreeSet<usize>,
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe({} over {})", self.spec(), self.group.display_name())
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.constituents == other.constituents
    }
}

impl Eq for Universe {}

/// How a universe is built.
#[derive(Debug, Clone)]
pub enum UniverseKind {
    Complete,
    Trivial,
    /// Irreducibles with the normal subgroup (lattice index) in their kernel.
    Fixed(usize),
    GeneratedBy(Vec<ClassFunction>),
}

pub fn make_universe(group: &Group, kind: UniverseKind) -> Result<Universe> {
    let table = CharacterTable::for_group(group)?;
    Universe::build(group, table, kind)
}

impl Universe {
    fn build(group: &Group, table: Arc<CharacterTable>, kind: UniverseKind) -> Result<Universe> {
        let constituents = match kind {
            UniverseKind::Complete => (0..table.len()).collect(),
            UniverseKind::Trivial => BTreeSet::from([0]),
            UniverseKind::Fixed(n) => {
                let l = group.lattice();
                if !l.is_normal(n) {
                    return Err(Error::NotNormal(l.label(n)));
                }
                (0..table.len()).filter(|&i| table.kernel_contains(i, l.members(n))).collect()
            }
            UniverseKind::GeneratedBy(chars) => {
                let mut set = BTreeSet::new();
                for chi in &chars {
                    if chi.group() != group || chi.prime() != table.prime() {
                        return Err(Error::GroupMismatch);
                    }
                    if chi.provenance() == Provenance::Virtual {
                        return Err(Error::VirtualCharacter(format!("{:?}", chi)));
                    }
                    let mult = table.decompose(chi)?;
                    if mult.iter().any(|&m| m < 0) {
                        return Err(Error::VirtualCharacter(format!("{:?}", chi)));
                    }
                    set.extend((0..mult.len()).filter(|&i| mult[i] > 0));
                }
                if !set.contains(&0) {
                    log::info!("adding the trivial representation to the universe");
                }
                set
            }
        };
        Ok(Self::from_constituents(group, table, constituents))
    }

    /// Adds the trivial constituent and closes under complex conjugation.
    pub fn from_constituents(group: &Group, table: Arc<CharacterTable>, set: BTreeSet<usize>) -> Universe {
        let mut constituents: BTreeSet<usize> = set.iter().map(|&i| table.conjugate_of(i)).collect();
        constituents.extend(set);
        constituents.insert(0);
        Universe { group: group.clone(), table, constituents }
    }

    /// Parses `complete | trivial | fixed:<label> | gen:<rep>,<rep>,...` with
    /// `<rep>` one of `triv`, `reg`, `perm:<label>`, `regbar:<label>`,
    /// `irr:<index>`.
    pub fn parse(group: &Group, spec: &str) -> Result<Universe> {
        let spec = spec.trim();
        let bad = || Error::BadUniverseSpec(spec.to_string());
        let table = CharacterTable::for_group(group)?;
        let kind = match spec {
            "complete" => UniverseKind::Complete,
            "trivial" => UniverseKind::Trivial,
            _ => {
                if let Some(label) = spec.strip_prefix("fixed:") {
                    UniverseKind::Fixed(group.lattice().find(label, group.name())?)
                } else if let Some(list) = spec.strip_prefix("gen:") {
                    let mut chars = Vec::new();
                    for rep in list.split(',').map(str::trim) {
                        chars.push(parse_rep(group, &table, rep).ok_or_else(bad)??);
                    }
                    UniverseKind::GeneratedBy(chars)
                } else {
                    return Err(bad());
                }
            }
        };
        Self::build(group, table, kind)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn constituents(&self) -> &BTreeSet<usize> {
        &self.constituents
    }

    pub fn contains(&self, i: usize) -> bool {
        self.constituents.contains(&i)
    }

    pub fn is_complete(&self) -> bool {
        self.constituents.len() == self.table.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.constituents.len() == 1
    }

    /// `self ⊆ other` as constituent sets.
    pub fn is_subset(&self, other: &Universe) -> bool {
        self.constituents.is_subset(&other.constituents)
    }

    /// Sum of the constituents, each once.
    pub fn character(&self) -> ClassFunction {
        self.table.sum_of(self.constituents.iter().copied())
    }

    /// Constituents of the restriction to a subgroup, over the subgroup's
    /// table for the same prime.
    pub fn restrict(&self, sub: &Group) -> Result<Universe> {
        let table = CharacterTable::for_group_mod(sub, self.table.prime())?;
        let res = self.character().restrict(sub)?;
        let mult = table.decompose(&res)?;
        let set = (0..mult.len()).filter(|&i| mult[i] > 0).collect();
        Ok(Self::from_constituents(sub, table, set))
    }

    /// Restriction to the subgroup with lattice index `idx`.
    pub fn restrict_to(&self, idx: usize) -> Universe {
        self.restrict(&self.group.subgroup_group(idx)).expect("own subgroup")
    }

    /// Canonical spec `gen:irr:i,...` that parses back to this universe.
    pub fn spec(&self) -> String {
        if self.is_complete() {
            return "complete".into();
        }
        if self.is_trivial() {
            return "trivial".into();
        }
        let parts: Vec<String> = self.constituents.iter().map(|i| format!("irr:{}", i)).collect();
        format!("gen:{}", parts.join(","))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.display_name(),
            "spec": self.spec(),
            "constituents": self.constituents,
            "degrees": self.constituents.iter().map(|&i| self.table.degrees()[i]).collect::<Vec<_>>(),
        })
    }
}

fn parse_rep(group: &Group, table: &CharacterTable, rep: &str) -> Option<Result<ClassFunction>> {
    let p = table.prime();
    let find = |label: &str| group.lattice().find(label, group.name());
    Some(match rep {
        "triv" => Ok(ClassFunction::trivial(group, p)),
        "reg" => Ok(ClassFunction::regular(group, p)),
        _ => {
            if let Some(label) = rep.strip_prefix("perm:") {
                find(label).map(|h| permutation_character(&GSet::coset_space(group, h), p))
            } else if let Some(label) = rep.strip_prefix("regbar:") {
                find(label).and_then(|h| reduced_regular_induced(group, h, p))
            } else if let Some(i) = rep.strip_prefix("irr:") {
                let i: usize = i.trim().parse().ok()?;
                if i >= table.len() {
                    return None;
                }
                Ok(table.irreducible(i).clone())
            } else {
                return None;
            }
        }
    })
}

/// `Ind_H^G (ρ_H − 1)` for the subgroup with lattice index `h`.
pub fn reduced_regular_induced(group: &Group, h: usize, prime: u64) -> Result<ClassFunction> {
    let hg = group.subgroup_group(h);
    let rho = ClassFunction::regular(&hg, prime).sub(&ClassFunction::trivial(&hg, prime))?.assume_genuine();
    rho.induce(group)
}

/// Every universe over `group`: the trivial constituent together with any
/// union of conjugation orbits of nontrivial irreducibles, ordered by the
/// bitmask of the chosen orbits.
pub fn all_universes(group: &Group) -> Result<Vec<Universe>> {
    let table = CharacterTable::for_group(group)?;
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 1..table.len() {
        let j = table.conjugate_of(i);
        if j >= i {
            orbits.push(if j == i { vec![i] } else { vec![i, j] });
        }
    }
    let mut out = Vec::with_capacity(1 << orbits.len());
    for mask in 0u64..(1u64 << orbits.len()) {
        let set = (0..orbits.len()).filter(|&b| mask >> b & 1 == 1).flat_map(|b| orbits[b].iter().copied()).collect();
        out.push(Universe::from_constituents(group, table.clone(), set));
    }
    Ok(out)
}
