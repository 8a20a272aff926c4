//! Operad descriptors and their admissible sets, plus the operad-level
//! constructions that act on indexing systems.

use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::characters::{constituents_contained, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{quotient_group, Group, Quotient};
use crate::indexing::{enumerate_all, pair_label, IndexingLattice, IndexingSystem};
use crate::universe::{all_universes, reduced_regular_induced, Universe, UniverseKind};

#[derive(Clone)]
pub enum OperadKind {
    Trivial,
    Complete,
    Disks(Universe),
    /// Same admissibles as the disks operad.
    Steiner(Universe),
    Isometries(Universe),
    Explicit(IndexingSystem),
}

#[derive(Clone)]
pub struct OperadModel {
    group: Group,
    kind: OperadKind,
}

impl fmt::Debug for OperadModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind_name(), self.group.display_name())
    }
}

impl OperadModel {
    pub fn new(group: &Group, kind: OperadKind) -> Result<OperadModel> {
        let ok = match &kind {
            OperadKind::Disks(u) | OperadKind::Steiner(u) | OperadKind::Isometries(u) => u.group() == group,
            OperadKind::Explicit(s) => s.group() == group,
            _ => true,
        };
        if !ok {
            return Err(Error::GroupMismatch);
        }
        Ok(OperadModel { group: group.clone(), kind })
    }

    pub fn trivial(group: &Group) -> OperadModel {
        OperadModel { group: group.clone(), kind: OperadKind::Trivial }
    }

    pub fn complete(group: &Group) -> OperadModel {
        OperadModel { group: group.clone(), kind: OperadKind::Complete }
    }

    pub fn disks(u: &Universe) -> OperadModel {
        OperadModel { group: u.group().clone(), kind: OperadKind::Disks(u.clone()) }
    }

    pub fn steiner(u: &Universe) -> OperadModel {
        OperadModel { group: u.group().clone(), kind: OperadKind::Steiner(u.clone()) }
    }

    pub fn isometries(u: &Universe) -> OperadModel {
        OperadModel { group: u.group().clone(), kind: OperadKind::Isometries(u.clone()) }
    }

    pub fn explicit(s: IndexingSystem) -> OperadModel {
        OperadModel { group: s.group().clone(), kind: OperadKind::Explicit(s) }
    }

    /// `disks`, `steiner` or `isometries` over the universe `spec`.
    pub fn parse(group: &Group, operad: &str, universe: &str) -> Result<OperadModel> {
        match operad {
            "trivial" => Ok(Self::trivial(group)),
            "complete" => Ok(Self::complete(group)),
            "disks" => Ok(Self::disks(&Universe::parse(group, universe)?)),
            "steiner" => Ok(Self::steiner(&Universe::parse(group, universe)?)),
            "isometries" => Ok(Self::isometries(&Universe::parse(group, universe)?)),
            other => Err(Error::Parse(format!("unknown operad `{}`", other))),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kind(&self) -> &OperadKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            OperadKind::Trivial => "trivial",
            OperadKind::Complete => "complete",
            OperadKind::Disks(_) => "disks",
            OperadKind::Steiner(_) => "steiner",
            OperadKind::Isometries(_) => "isometries",
            OperadKind::Explicit(_) => "explicit",
        }
    }

    pub fn admissibles(&self) -> IndexingSystem {
        match &self.kind {
            OperadKind::Trivial => IndexingSystem::trivial(&self.group),
            OperadKind::Complete => IndexingSystem::complete(&self.group),
            OperadKind::Disks(u) | OperadKind::Steiner(u) => disks_system(u, true),
            OperadKind::Isometries(u) => isometries_system(u),
            OperadKind::Explicit(s) => s.clone(),
        }
    }
}

/// Universe restricted to every subgroup, by lattice index.
fn restricted_universes(u: &Universe) -> Vec<Universe> {
    let l = u.group().lattice();
    (0..l.len()).map(|h| u.restrict_to(h)).collect()
}

fn system_from_predicate(group: &Group, mut admissible: impl FnMut(usize, usize) -> bool) -> IndexingSystem {
    let space = group.pair_space();
    let mut set = FixedBitSet::with_capacity(space.class_count());
    for c in 0..space.class_count() {
        let (h, k) = space.class_representative(c);
        if h == k || admissible(h, k) {
            set.insert(c);
        }
    }
    IndexingSystem::from_classes(group, set)
}

/// `H/K` embeds in the universe iff the fixed points of `U_H` drop strictly
/// from `K` to every `K'` with `K < K' ≤ H`. With `pruned`, only the
/// minimal such `K'` are checked, which suffices as fixed dimensions only
/// shrink along inclusions.
pub fn disks_admissible(u: &Universe, restricted: &Universe, h: usize, k: usize, pruned: bool) -> bool {
    let g = u.group();
    let l = g.lattice();
    let hg = restricted.group();
    let w = restricted.character();
    let dim = |s: usize| w.fixed_dim(g.restrict_index(s, hg).expect("inside H")).expect("genuine character");
    let base = dim(k);
    let over: Vec<usize> = l.overgroups_of(k).filter(|&s| s != k && l.le(s, h)).collect();
    over.iter()
        .filter(|&&s| !pruned || !over.iter().any(|&t| t != s && l.le(t, s)))
        .all(|&s| dim(s) < base)
}

/// Indexing system of the disks operad over `u`.
pub fn disks_system(u: &Universe, pruned: bool) -> IndexingSystem {
    let res = restricted_universes(u);
    system_from_predicate(u.group(), |h, k| disks_admissible(u, &res[h], h, k, pruned))
}

/// `H/K` is admissible iff every constituent of `Ind_K^H (U_K)` lies in `U_H`.
pub fn isometries_admissible(res_h: &Universe, res_k: &Universe) -> bool {
    let hg = res_h.group();
    let ind = res_k.character().induce(hg).expect("K ≤ H");
    constituents_contained(&ind, &res_h.character(), res_h.table()).expect("same group")
}

pub fn isometries_system(u: &Universe) -> IndexingSystem {
    let res = restricted_universes(u);
    system_from_predicate(u.group(), |h, k| isometries_admissible(&res[h], &res[k]))
}

/// Product of operads: the meet of their systems.
pub fn operad_product(a: &OperadModel, b: &OperadModel) -> Result<OperadModel> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    Ok(OperadModel::explicit(a.admissibles().meet(&b.admissibles())?))
}

/// Coinduction from `H` (the model's group) to an overgroup `G`: `K/L` is
/// admissible iff for every `g ∈ G` the restriction of `gKg⁻¹/gLg⁻¹` to
/// `H ∩ gKg⁻¹` is admissible for the model.
pub fn operad_coinduce(m: &OperadModel, up_to: &Group) -> Result<OperadModel> {
    let hg = m.group();
    let h = up_to
        .locate_subgroup(hg)
        .ok_or_else(|| Error::NotContained(hg.display_name(), up_to.display_name()))?;
    let inner = m.admissibles();
    let l = up_to.lattice();
    let sys = system_from_predicate(up_to, |k, ll| {
        (0..up_to.order()).all(|g| {
            let (gk, gl) = (l.conjugate(g, k), l.conjugate(g, ll));
            let a = l.meet(h, gk);
            let a_h = up_to.restrict_index(a, hg).expect("inside H");
            l.members(gk).iter().all(|&x| {
                let b = l.meet(a, l.conjugate(x, gl));
                inner.contains(a_h, up_to.restrict_index(b, hg).expect("inside H"))
            })
        })
    });
    Ok(OperadModel::explicit(sys))
}

/// Checks that lattice indices form a family: closed under subgroups and
/// conjugation.
pub fn check_family(group: &Group, family: &[usize]) -> Result<()> {
    let l = group.lattice();
    let mut mask = FixedBitSet::with_capacity(l.len());
    for &a in family {
        if a >= l.len() {
            return Err(Error::NotAFamily(format!("no subgroup {}", a)));
        }
        mask.insert(a);
    }
    for a in mask.ones() {
        if let Some(b) = l.subgroups_of(a).find(|&b| !mask.contains(b)) {
            return Err(Error::NotAFamily(format!("{} is in the family but its subgroup {} is not", l.label(a), l.label(b))));
        }
        if let Some(g) = (0..group.order()).find(|&g| !mask.contains(l.conjugate(g, a))) {
            return Err(Error::NotAFamily(format!("{} is in the family but {} is not", l.label(a), l.label(l.conjugate(g, a)))));
        }
    }
    Ok(())
}

/// Cotensor with the universal space of a family: `H/K` is admissible iff
/// its restriction to `H ∩ A` is admissible for every `A` in the family.
pub fn operad_cotensor(m: &OperadModel, family: &[usize]) -> Result<OperadModel> {
    let group = m.group();
    check_family(group, family)?;
    let inner = m.admissibles();
    let l = group.lattice();
    let sys = system_from_predicate(group, |h, k| {
        family.iter().all(|&a| {
            let b = l.meet(h, a);
            l.members(h).iter().all(|&x| inner.contains(b, l.meet(b, l.conjugate(x, k))))
        })
    });
    Ok(OperadModel::explicit(sys))
}

/// Geometric fixed points for a normal subgroup `N`: a system over `G/N`
/// whose admissible orbits are the admissible `N`-fixed orbits of the model.
pub fn operad_fixed_points(m: &OperadModel, n: usize) -> Result<(Quotient, OperadModel)> {
    let group = m.group();
    let q = quotient_group(&group.subgroup(n))?;
    let inner = m.admissibles();
    let sys = system_from_predicate(&q.group, |h, k| inner.contains(q.preimage(group, h), q.preimage(group, k)));
    let model = OperadModel::explicit(sys);
    Ok((q, model))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationMode {
    /// Disks and isometries over one universe differ.
    Pairwise,
    /// The disks system over the universe is no isometries system at all.
    AllIsometries,
}

#[derive(Debug, Clone)]
pub struct Separation {
    pub universe: Universe,
    /// Spec string that rebuilds the universe.
    pub spec: String,
    /// An orbit admissible for disks but not for isometries.
    pub witness: (usize, usize),
    pub disks: IndexingSystem,
    pub isometries: IndexingSystem,
    /// For the all-isometries mode: number of universes swept.
    pub swept: Option<usize>,
}

impl Separation {
    pub fn to_json(&self) -> Value {
        let g = self.universe.group();
        json!({
            "group": g.display_name(),
            "universe": self.spec,
            "constituents": self.universe.constituents(),
            "witness": pair_label(g, self.witness.0, self.witness.1),
            "disks": self.disks.to_json()["pairs"],
            "isometries": self.isometries.to_json()["pairs"],
            "universes_swept": self.swept,
        })
    }
}

fn is_simple(group: &Group) -> bool {
    let l = group.lattice();
    l.normal_subgroups().len() <= 2
}

/// Candidate universes in search order, with their spec strings.
fn candidates(group: &Group) -> Result<Vec<(String, Universe)>> {
    let l = group.lattice();
    let table = CharacterTable::for_group(group)?;
    let p = table.prime();
    let mut out = Vec::new();
    if !is_simple(group) {
        for n in l.normal_subgroups() {
            if n == l.bottom() || n == l.top() {
                continue;
            }
            let v = reduced_regular_induced(group, n, p)?;
            let one = crate::characters::ClassFunction::trivial(group, p);
            let u = crate::universe::make_universe(group, UniverseKind::GeneratedBy(vec![one, v]))?;
            out.push((format!("gen:triv,regbar:{}", l.label(n)), u));
        }
    } else {
        for i in 1..table.len() {
            let j = table.conjugate_of(i);
            if j < i {
                continue;
            }
            let chars = vec![table.irreducible(0).clone(), table.irreducible(i).clone(), table.irreducible(j).clone()];
            let u = crate::universe::make_universe(group, UniverseKind::GeneratedBy(chars))?;
            let spec = if i == j { format!("gen:triv,irr:{}", i) } else { format!("gen:triv,irr:{},irr:{}", i, j) };
            out.push((spec, u));
        }
    }
    Ok(out)
}

/// Searches for a universe over which the disks and isometries operads
/// differ. Groups of order at most 3 have only the trivial and complete
/// universes and give `None`; the all-isometries mode also gives `None`
/// for simple groups.
pub fn find_separating_universe(group: &Group, mode: SeparationMode) -> Result<Option<Separation>> {
    if group.order() <= 3 {
        return Ok(None);
    }
    if mode == SeparationMode::AllIsometries && is_simple(group) {
        return Ok(None);
    }
    let l = group.lattice();
    let all = match mode {
        SeparationMode::AllIsometries => Some(
            all_universes(group)?.par_iter().map(isometries_system).collect::<Vec<_>>(),
        ),
        SeparationMode::Pairwise => None,
    };
    for (spec, u) in candidates(group)? {
        let disks = disks_system(&u, true);
        let iso = isometries_system(&u);
        let witness = if disks.contains(l.top(), l.bottom()) && !iso.contains(l.top(), l.bottom()) {
            Some((l.top(), l.bottom()))
        } else {
            disks.representatives().into_iter().find(|&(h, k)| !iso.contains(h, k))
        };
        let Some(witness) = witness else { continue };
        if let Some(all) = &all {
            if all.iter().any(|s| *s == disks) {
                continue;
            }
        }
        return Ok(Some(Separation {
            universe: u,
            spec,
            witness,
            disks,
            isometries: iso,
            swept: all.as_ref().map(Vec::len),
        }));
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct CensusRow {
    pub system: usize,
    /// Specs of the universes whose disks operad realizes the system.
    pub disks: Vec<String>,
    pub isometries: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Census {
    pub lattice: IndexingLattice,
    pub rows: Vec<CensusRow>,
    pub universes: usize,
}

/// For every universe, computes the disks and isometries systems and records
/// which enumerated systems they hit.
pub fn realization_census(group: &Group) -> Result<Census> {
    let lattice = enumerate_all(group);
    let universes = all_universes(group)?;
    let computed: Vec<(String, IndexingSystem, IndexingSystem)> = universes
        .par_iter()
        .map(|u| (u.spec(), disks_system(u, true), isometries_system(u)))
        .collect();
    let mut rows: Vec<CensusRow> = (0..lattice.len())
        .map(|i| CensusRow { system: i, disks: Vec::new(), isometries: Vec::new() })
        .collect();
    for (spec, d, i) in computed {
        let di = lattice.position(&d).expect("disks system is enumerated");
        rows[di].disks.push(spec.clone());
        let ii = lattice.position(&i).expect("isometries system is enumerated");
        rows[ii].isometries.push(spec);
    }
    Ok(Census { lattice, rows, universes: universes.len() })
}

impl Census {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "system": r.system,
                    "pairs": self.lattice.systems[r.system].to_json()["pairs"],
                    "disks": r.disks,
                    "isometries": r.isometries,
                })
            })
            .collect();
        let hit = |f: fn(&CensusRow) -> bool| self.rows.iter().filter(|r| f(r)).count();
        json!({
            "group": self.lattice.group.display_name(),
            "systems": self.lattice.len(),
            "universes": self.universes,
            "realized_by_disks": hit(|r| !r.disks.is_empty()),
            "realized_by_isometries": hit(|r| !r.isometries.is_empty()),
            "realized_only_by_disks": hit(|r| !r.disks.is_empty() && r.isometries.is_empty()),
            "unrealized": hit(|r| r.disks.is_empty() && r.isometries.is_empty()),
            "rows": rows,
        })
    }

    /// Hasse diagram with realized systems tagged `D`, `L` or `DL`.
    pub fn to_dot(&self) -> String {
        let tag = |i: usize| -> Option<String> {
            let r = &self.rows[i];
            match (r.disks.is_empty(), r.isometries.is_empty()) {
                (true, true) => None,
                (false, true) => Some("D".into()),
                (true, false) => Some("L".into()),
                (false, false) => Some("DL".into()),
            }
        };
        self.lattice.to_dot(Some(&tag))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;

    #[test]
    fn c4_separation() {
        let g = construct_group("C4").unwrap();
        let s = find_separating_universe(&g, SeparationMode::Pairwise).unwrap().unwrap();
        assert_eq!(s.spec, "gen:triv,regbar:C2");
        assert_eq!(s.witness, (g.lattice().top(), g.lattice().bottom()));
        assert!(find_separating_universe(&construct_group("C2").unwrap(), SeparationMode::Pairwise).unwrap().is_none());
    }

    #[test]
    fn fixed_universe_stabilizers() {
        let g = construct_group("C4").unwrap();
        let u = Universe::parse(&g, "fixed:C2").unwrap();
        let d = OperadModel::disks(&u).admissibles();
        let i = OperadModel::isometries(&u).admissibles();
        assert_eq!(d, i);
        let c2 = g.lattice().find("C2", None).unwrap();
        assert_eq!(d.nontrivial_representatives(), vec![(g.lattice().top(), c2)]);
    }

    #[test]
    fn family_checks() {
        let g = construct_group("S3").unwrap();
        let c2 = g.lattice().find("C2", None).unwrap();
        assert!(check_family(&g, &[0, c2]).is_err());
        assert!(check_family(&g, &[c2]).is_err());
        assert!(check_family(&g, &[0]).is_ok());
    }
}
