use std::collections::HashMap;

use super::GSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// A subgroup of `G × Σ_n` meeting `Σ_n` trivially, i.e. the graph of a
/// homomorphism from a subgroup `H ≤ G` to `Σ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSubgroup {
    ambient: Group,
    subgroup: usize,
    degree: usize,
    /// Image of each member of `H`, in member order.
    images: Vec<Perm>,
}

/// `Γ_T` for an H-set `T`, with `H` located inside `ambient`.
pub fn graph_subgroup(t: &GSet, ambient: &Group) -> Result<GraphSubgroup> {
    let h = t.group();
    let idx = ambient
        .locate_subgroup(h)
        .ok_or_else(|| Error::NotContained(h.display_name(), ambient.display_name()))?;
    let images = (0..h.order()).map(|x| t.permutation(x)).collect();
    Ok(GraphSubgroup { ambient: ambient.clone(), subgroup: idx, degree: t.size(), images })
}

impl GraphSubgroup {
    /// Validates a set of pairs `(g, σ)` with `g` an element index of
    /// `ambient`: it must be a subgroup of `G × Σ_n` and meet `Σ_n` trivially.
    pub fn from_elements(ambient: &Group, degree: usize, pairs: &[(usize, Perm)]) -> Result<GraphSubgroup> {
        let mut by_g: HashMap<usize, &Perm> = HashMap::new();
        for (g, s) in pairs {
            if s.degree() != degree {
                return Err(Error::NotAPermutation(format!("{} is not of degree {}", s, degree)));
            }
            if let Some(prev) = by_g.insert(*g, s) {
                if prev != s {
                    return Err(Error::NotAGraph);
                }
            }
        }
        let id = Perm::identity(degree);
        if by_g.get(&0) != Some(&&id) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for (&a, sa) in &by_g {
            for (&b, sb) in &by_g {
                let ab = ambient.mul(a, b);
                match by_g.get(&ab) {
                    Some(s) if **s == sa.compose(sb) => {}
                    _ => return Err(Error::NotASubgroup("not closed under products".into())),
                }
            }
        }
        let mut members: Vec<usize> = by_g.keys().copied().collect();
        members.sort_unstable();
        let idx = ambient
            .lattice()
            .index_of_members(&members)
            .ok_or_else(|| Error::NotASubgroup("projection is not a subgroup".into()))?;
        let images = members.iter().map(|m| by_g[m].clone()).collect();
        Ok(GraphSubgroup { ambient: ambient.clone(), subgroup: idx, degree, images })
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    /// Lattice index of the projection `H` in the ambient group.
    pub fn subgroup(&self) -> usize {
        self.subgroup
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    /// Pairs `(g, σ)` with `g` an element index of the ambient group.
    pub fn elements(&self) -> Vec<(usize, Perm)> {
        self.ambient.lattice().members(self.subgroup).iter().copied().zip(self.images.iter().cloned()).collect()
    }

    /// Conjugate `(g, σ) Γ (g, σ)⁻¹`.
    pub fn conjugate(&self, g: usize, sigma: &Perm) -> GraphSubgroup {
        let si = sigma.inverse();
        let pairs: Vec<(usize, Perm)> = self
            .elements()
            .into_iter()
            .map(|(h, s)| (self.ambient.conj(g, h), sigma.compose(&s).compose(&si)))
            .collect();
        Self::from_elements(&self.ambient, self.degree, &pairs).expect("conjugate of a graph is a graph")
    }

    /// The H-set whose graph this is.
    pub fn to_gset(&self) -> GSet {
        let h = self.ambient.subgroup_group(self.subgroup);
        let n = self.degree;
        GSet::from_fn(&h, n, |x, p| self.images[x].apply(p)).expect("graph of a homomorphism")
    }

    /// Same as [`GraphSubgroup::to_gset`].
    pub fn from_graph(gamma: &GraphSubgroup) -> GSet {
        gamma.to_gset()
    }
}
