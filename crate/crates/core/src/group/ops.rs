use std::sync::Arc;

use super::{FiniteGroup, Group, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// One double coset `H g K` with its least element and `H ∩ gKg⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
    pub intersection: Subgroup,
}

/// Double cosets `H\G/K` of the common parent group, ordered by least element.
pub fn double_cosets(h: &Subgroup, k: &Subgroup) -> Result<Vec<DoubleCoset>> {
    if h.parent() != k.parent() {
        return Err(Error::GroupMismatch);
    }
    let g = h.parent();
    let top = g.lattice().top();
    double_cosets_within(g, top, h.index(), k.index())
        .into_iter()
        .map(|(rep, size)| {
            let inter = g.lattice().meet(h.index(), g.lattice().conjugate(rep, k.index()));
            Ok(DoubleCoset { representative: rep, size, intersection: g.subgroup(inter) })
        })
        .collect()
}

/// Double cosets `H\A/K` inside an ambient subgroup `A` containing both, as
/// (least element, size) pairs, all indices taken in `g`'s lattice.
pub fn double_cosets_within(g: &FiniteGroup, ambient: usize, h: usize, k: usize) -> Vec<(usize, usize)> {
    let l = g.lattice();
    debug_assert!(l.le(h, ambient) && l.le(k, ambient));
    let mut covered = vec![false; g.order()];
    let mut out = Vec::new();
    for &x in l.members(ambient) {
        if covered[x] {
            continue;
        }
        let mut size = 0;
        for &a in l.members(h) {
            let ax = g.mul(a, x);
            for &b in l.members(k) {
                let y = g.mul(ax, b);
                if !covered[y] {
                    covered[y] = true;
                    size += 1;
                }
            }
        }
        out.push((x, size));
    }
    out
}

/// `G/N` as a permutation group on the cosets of `N`, with the projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    /// Element index of `G` to element index of `G/N`.
    pub projection: Vec<usize>,
    /// Coset index (ordered by least element) of each element of `G`.
    pub coset_of: Vec<usize>,
}

pub fn quotient_group(n: &Subgroup) -> Result<Quotient> {
    let g = n.parent();
    if !n.is_normal() {
        return Err(Error::NotNormal(n.label()));
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &m in n.members() {
            coset_of[g.mul(x, m)] = reps.len();
        }
        reps.push(x);
    }
    let degree = reps.len();
    let image = |x: usize| -> Perm {
        let images = reps.iter().map(|&r| coset_of[g.mul(x, r)]).collect();
        Perm::from_images(images).expect("coset action is a permutation")
    };
    let gens: Vec<Perm> = g.generator_indices().into_iter().map(image).collect();
    let name = format!("{}/{}", g.display_name(), n.label());
    let q = FiniteGroup::from_generators(degree, gens, Some(name), usize::MAX)?;
    let projection = (0..order).map(|x| q.index_of(&image(x)).expect("image in quotient")).collect();
    Ok(Quotient { group: q, projection, coset_of })
}

impl Quotient {
    /// Preimage in `G` of a subgroup of the quotient, as a lattice index of `G`.
    pub fn preimage(&self, parent: &Arc<FiniteGroup>, sub: usize) -> usize {
        let ql = self.group.lattice();
        let members: Vec<usize> = (0..parent.order())
            .filter(|&x| ql.contains_element(sub, self.projection[x]))
            .collect();
        parent.lattice().index_of_members(&members).expect("preimage is a subgroup")
    }

    /// Image of a subgroup of `G` in the quotient.
    pub fn image(&self, parent: &Arc<FiniteGroup>, sub: usize) -> usize {
        let mut members: Vec<usize> =
            parent.lattice().members(sub).iter().map(|&x| self.projection[x]).collect();
        members.sort_unstable();
        members.dedup();
        self.group.lattice().index_of_members(&members).expect("image is a subgroup")
    }
}
