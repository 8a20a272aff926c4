use super::GSet;
use crate::error::{Error, Result};

/// An equivariant map of G-sets given pointwise.
#[derive(Debug, Clone)]
pub struct GSetMap {
    source: GSet,
    target: GSet,
    images: Vec<usize>,
}

impl GSetMap {
    pub fn new(source: GSet, target: GSet, images: Vec<usize>) -> Result<GSetMap> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        if images.len() != source.size() || images.iter().any(|&y| y >= target.size()) {
            return Err(Error::Parse(format!(
                "map needs {} images below {}",
                source.size(),
                target.size()
            )));
        }
        for (gi, &g) in source.group().generator_indices().iter().enumerate() {
            for x in 0..source.size() {
                if images[source.act(g, x)] != target.act(g, images[x]) {
                    return Err(Error::NotEquivariant { point: x, generator: gi });
                }
            }
        }
        Ok(GSetMap { source, target, images })
    }

    pub fn identity(t: &GSet) -> GSetMap {
        GSetMap { source: t.clone(), target: t.clone(), images: (0..t.size()).collect() }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }
}

/// One step of the factorization of a map of G-sets: the map is the
/// inclusion of its image composed with, over each target orbit, a fold of
/// the source orbits landing there after orbit projections `G/H → G/K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorStep {
    /// The image misses some target orbits; `orbits` lists the hit ones.
    Inclusion { orbits: Vec<usize>, target_orbits: usize },
    /// `width` source orbits map onto target orbit `target_orbit`.
    Fold { target_orbit: usize, width: usize },
    /// Source orbit `source_orbit` (stabilizer `from`) projects onto target
    /// orbit `target_orbit` (stabilizer `to`). The conjugator `g` satisfies
    /// `g⁻¹ from g ≤ to`.
    Projection { source_orbit: usize, target_orbit: usize, from: usize, to: usize, conjugator: usize },
}

/// Factors `f` into nontrivial steps; an isomorphism gives no steps.
pub fn factor_surjection(f: &GSetMap) -> Vec<FactorStep> {
    let g = f.source.group();
    let l = g.lattice();
    let t_orbit_of = {
        let mut v = vec![0usize; f.target.size()];
        for (i, o) in f.target.orbits().iter().enumerate() {
            for &p in &o.points {
                v[p] = i;
            }
        }
        v
    };
    let mut landing: Vec<Vec<usize>> = vec![Vec::new(); f.target.orbits().len()];
    for (i, o) in f.source.orbits().iter().enumerate() {
        landing[t_orbit_of[f.images[o.points[0]]]].push(i);
    }

    let mut steps = Vec::new();
    let hit: Vec<usize> = (0..landing.len()).filter(|&j| !landing[j].is_empty()).collect();
    if hit.len() < landing.len() {
        steps.push(FactorStep::Inclusion { orbits: hit.clone(), target_orbits: landing.len() });
    }
    for &j in &hit {
        if landing[j].len() > 1 {
            steps.push(FactorStep::Fold { target_orbit: j, width: landing[j].len() });
        }
    }
    for &j in &hit {
        let to = &f.target.orbits()[j];
        let y0 = to.points[0];
        for &i in &landing[j] {
            let from = &f.source.orbits()[i];
            if l.order(from.stabilizer) == l.order(to.stabilizer) {
                continue;
            }
            let y = f.images[from.points[0]];
            let c = (0..g.order()).find(|&c| f.target.act(c, y0) == y).expect("same orbit");
            steps.push(FactorStep::Projection {
                source_orbit: i,
                target_orbit: j,
                from: from.stabilizer,
                to: to.stabilizer,
                conjugator: c,
            });
        }
    }
    steps
}
