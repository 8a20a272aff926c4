//! Finite G-sets with explicit action tables.

mod graph;
mod map;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::perm::Perm;

pub use graph::{graph_subgroup, GraphSubgroup};
pub use map::{factor_surjection, FactorStep, GSetMap};

/// One orbit: its points (sorted) and the stabilizer of the least point,
/// as a lattice index of the acting group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub stabilizer: usize,
}

#[derive(Clone)]
pub struct GSet {
    group: Group,
    size: usize,
    /// `action[g * size + x]`
    action: Vec<u32>,
    orbits: Vec<Orbit>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} over {})", self.to_literal(), self.group.display_name())
    }
}

/// Element indices of `sub` inside `g`.
pub(crate) fn embed(sub: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<usize>> {
    sub.elements()
        .iter()
        .map(|p| g.index_of(p).ok_or_else(|| Error::NotContained(sub.display_name(), g.display_name())))
        .collect()
}

impl GSet {
    /// Builds a G-set from an action function on element indices, checking
    /// that it is a homomorphism into the permutations of `0..size`.
    pub fn from_fn(group: &Group, size: usize, f: impl Fn(usize, usize) -> usize) -> Result<GSet> {
        let mut action = Vec::with_capacity(group.order() * size);
        for g in 0..group.order() {
            let mut hit = vec![false; size];
            for x in 0..size {
                let y = f(g, x);
                if y >= size || hit[y] {
                    return Err(Error::NotAHomomorphism(format!("element {} is not a bijection", group.element(g))));
                }
                hit[y] = true;
                action.push(y as u32);
            }
        }
        Self::from_table(group, size, action)
    }

    fn from_table(group: &Group, size: usize, action: Vec<u32>) -> Result<GSet> {
        let t = |g: usize, x: usize| action[g * size + x] as usize;
        if (0..size).any(|x| t(FiniteGroup::IDENTITY, x) != x) {
            return Err(Error::NotAHomomorphism("identity acts nontrivially".into()));
        }
        for &s in &group.generator_indices() {
            for b in 0..group.order() {
                let sb = group.mul(s, b);
                if (0..size).any(|x| t(sb, x) != t(s, t(b, x))) {
                    return Err(Error::NotAHomomorphism(format!(
                        "{} * {} disagrees with the action",
                        group.element(s),
                        group.element(b)
                    )));
                }
            }
        }
        Ok(Self::build(group.clone(), size, action))
    }

    /// Trusted constructor, table already known to be an action.
    fn build(group: Group, size: usize, action: Vec<u32>) -> GSet {
        let gens = group.generator_indices();
        let mut seen = vec![false; size];
        let mut orbits = Vec::new();
        for x0 in 0..size {
            if seen[x0] {
                continue;
            }
            seen[x0] = true;
            let mut points = vec![x0];
            let mut i = 0;
            while i < points.len() {
                let x = points[i];
                for &s in &gens {
                    let y = action[s * size + x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        points.push(y);
                    }
                }
                i += 1;
            }
            points.sort_unstable();
            let stab: Vec<usize> = (0..group.order()).filter(|&g| action[g * size + x0] as usize == x0).collect();
            let stabilizer = group.lattice().index_of_members(&stab).expect("stabilizer is a subgroup");
            orbits.push(Orbit { points, stabilizer });
        }
        GSet { group, size, action, orbits }
    }

    /// `n` points, all fixed.
    pub fn trivial(group: &Group, n: usize) -> GSet {
        let action = (0..group.order()).flat_map(|_| 0..n as u32).collect();
        Self::build(group.clone(), n, action)
    }

    /// Left cosets `G/K` of the subgroup with lattice index `k`, ordered by
    /// least element.
    pub fn coset_space(group: &Group, k: usize) -> GSet {
        let members = group.lattice().members(k);
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for x in 0..group.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &m in members {
                coset_of[group.mul(x, m)] = reps.len();
            }
            reps.push(x);
        }
        let size = reps.len();
        let mut action = Vec::with_capacity(group.order() * size);
        for g in 0..group.order() {
            for &r in &reps {
                action.push(coset_of[group.mul(g, r)] as u32);
            }
        }
        Self::build(group.clone(), size, action)
    }

    /// The regular G-set `G/e`.
    pub fn regular(group: &Group) -> GSet {
        Self::coset_space(group, group.lattice().bottom())
    }

    /// Disjoint union of coset spaces, given as (lattice index, multiplicity).
    pub fn from_orbit_types(group: &Group, types: &[(usize, usize)]) -> GSet {
        let mut out = GSet::trivial(group, 0);
        for &(k, m) in types {
            let c = GSet::coset_space(group, k);
            for _ in 0..m {
                out = out.disjoint_union(&c).expect("same group");
            }
        }
        out
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x] as usize
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Permutation of the points induced by element `g`.
    pub fn permutation(&self, g: usize) -> Perm {
        Perm::from_images((0..self.size).map(|x| self.act(g, x)).collect()).expect("action by bijections")
    }

    /// Stabilizer conjugacy classes with multiplicities, each class given
    /// by its canonical lattice index, sorted.
    pub fn orbit_types(&self) -> Vec<(usize, usize)> {
        let l = self.group.lattice();
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for o in &self.orbits {
            *counts.entry(l.canonical(o.stabilizer)).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    pub fn is_isomorphic(&self, other: &GSet) -> bool {
        self.group == other.group && self.orbit_types() == other.orbit_types()
    }

    pub fn is_trivial(&self) -> bool {
        self.orbits.iter().all(|o| o.points.len() == 1)
    }

    /// Restriction to a subgroup given as a group.
    pub fn restrict(&self, sub: &Group) -> Result<GSet> {
        let map = embed(sub, &self.group)?;
        let mut action = Vec::with_capacity(sub.order() * self.size);
        for &g in &map {
            action.extend_from_slice(&self.action[g * self.size..(g + 1) * self.size]);
        }
        Ok(Self::build(sub.clone(), self.size, action))
    }

    /// Restriction to the subgroup with lattice index `idx` of the acting group.
    pub fn restrict_to(&self, idx: usize) -> GSet {
        self.restrict(&self.group.subgroup_group(idx)).expect("own subgroup")
    }

    /// `G ×_H T` for this H-set `T`, with points `(i, t)` numbered
    /// `i * |T| + t` where `i` runs over the left cosets of `H` in `G`.
    pub fn induce(&self, up_to: &Group) -> Result<GSet> {
        let h = &self.group;
        let map = embed(h, up_to)?;
        let mut to_h = vec![usize::MAX; up_to.order()];
        for (i, &g) in map.iter().enumerate() {
            to_h[g] = i;
        }
        let mut coset_of = vec![usize::MAX; up_to.order()];
        let mut reps = Vec::new();
        for x in 0..up_to.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &m in &map {
                coset_of[up_to.mul(x, m)] = reps.len();
            }
            reps.push(x);
        }
        let t = self.size;
        let size = reps.len() * t;
        let mut action = Vec::with_capacity(up_to.order() * size);
        for g in 0..up_to.order() {
            for &r in &reps {
                let gr = up_to.mul(g, r);
                let j = coset_of[gr];
                let hh = to_h[up_to.mul(up_to.inv(reps[j]), gr)];
                for x in 0..t {
                    action.push((j * t + self.act(hh, x)) as u32);
                }
            }
        }
        Ok(Self::build(up_to.clone(), size, action))
    }

    /// `Map_H(G, T)`: H-equivariant maps `f: G → T` (with `f(hx) = h f(x)`)
    /// under `(g f)(x) = f(x g)`. A map is stored by its values on right
    /// coset representatives, encoded in base `|T|`.
    pub fn coinduce(&self, up_to: &Group) -> Result<GSet> {
        let h = &self.group;
        let map = embed(h, up_to)?;
        let mut to_h = vec![usize::MAX; up_to.order()];
        for (i, &g) in map.iter().enumerate() {
            to_h[g] = i;
        }
        let mut coset_of = vec![usize::MAX; up_to.order()];
        let mut reps = Vec::new();
        for x in 0..up_to.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &m in &map {
                coset_of[up_to.mul(m, x)] = reps.len();
            }
            reps.push(x);
        }
        let m = reps.len();
        let t = self.size;
        let size = (t as u64)
            .checked_pow(m as u32)
            .filter(|&s| s <= u32::MAX as u64 / up_to.order().max(1) as u64)
            .ok_or(Error::OrderBoundExceeded { bound: u32::MAX as usize })? as usize;
        // For each g: r_i g = k_i r_{σ(i)}.
        let mut action = Vec::with_capacity(up_to.order() * size);
        let mut digits = vec![0usize; m];
        for g in 0..up_to.order() {
            let moves: Vec<(usize, usize)> = reps
                .iter()
                .map(|&r| {
                    let rg = up_to.mul(r, g);
                    let j = coset_of[rg];
                    (to_h[up_to.mul(rg, up_to.inv(reps[j]))], j)
                })
                .collect();
            for code in 0..size {
                let mut c = code;
                for d in digits.iter_mut() {
                    *d = c % t;
                    c /= t;
                }
                let mut out = 0usize;
                for i in (0..m).rev() {
                    let (k, j) = moves[i];
                    out = out * t + self.act(k, digits[j]);
                }
                action.push(out as u32);
            }
        }
        Ok(Self::build(up_to.clone(), size, action))
    }

    /// Cartesian product with the diagonal action; point `(s, t)` is
    /// numbered `s * |T| + t`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let (a, b) = (self.size, other.size);
        let mut action = Vec::with_capacity(self.group.order() * a * b);
        for g in 0..self.group.order() {
            for x in 0..a {
                let gx = self.act(g, x);
                for y in 0..b {
                    action.push((gx * b + other.act(g, y)) as u32);
                }
            }
        }
        Ok(Self::build(self.group.clone(), a * b, action))
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let (a, b) = (self.size, other.size);
        let mut action = Vec::with_capacity(self.group.order() * (a + b));
        for g in 0..self.group.order() {
            action.extend_from_slice(&self.action[g * a..(g + 1) * a]);
            action.extend((0..b).map(|y| (a + other.act(g, y)) as u32));
        }
        Ok(Self::build(self.group.clone(), a + b, action))
    }

    /// `g·T`: for this H-set with `H ≤ ambient`, the `gHg⁻¹`-set on the same
    /// points with `c·x = (g⁻¹ c g)·x`.
    pub fn conjugate(&self, ambient: &Group, g: usize) -> Result<GSet> {
        let idx = ambient
            .locate_subgroup(&self.group)
            .ok_or_else(|| Error::NotContained(self.group.display_name(), ambient.display_name()))?;
        let target = ambient.subgroup_group(ambient.lattice().conjugate(g, idx));
        let gi = ambient.inv(g);
        let mut action = Vec::with_capacity(target.order() * self.size);
        for c in target.elements() {
            let c = ambient.index_of(c).expect("member of ambient");
            let h = ambient.conj(gi, c);
            let h = self.group.index_of(ambient.element(h)).expect("conjugate lands in H");
            action.extend_from_slice(&self.action[h * self.size..(h + 1) * self.size]);
        }
        Ok(Self::build(target, self.size, action))
    }

    /// Literal form `orbits:[K1*m1, K2*m2]` with canonical class labels.
    pub fn to_literal(&self) -> String {
        let l = self.group.lattice();
        let parts: Vec<String> = self
            .orbit_types()
            .into_iter()
            .map(|(k, m)| if m == 1 { l.label(k) } else { format!("{}*{}", l.label(k), m) })
            .collect();
        format!("orbits:[{}]", parts.join(", "))
    }

    /// Parses `orbits:[K1*m1, K2*m2, ...]`; each `Ki` is a subgroup label and
    /// contributes `mi` copies (default 1) of the coset space `G/Ki`.
    pub fn parse_literal(group: &Group, s: &str) -> Result<GSet> {
        let bad = || Error::BadGSetLiteral(s.to_string());
        let body = s
            .trim()
            .strip_prefix("orbits:")
            .and_then(|r| r.trim().strip_prefix('['))
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut types = Vec::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (label, mult) = match part.split_once('*') {
                Some((l, m)) => (l.trim(), m.trim().parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let k = group.lattice().find(label, group.name())?;
            types.push((k, mult));
        }
        Ok(Self::from_orbit_types(group, &types))
    }

    /// Action table of the generators plus the orbit decomposition.
    pub fn to_json(&self) -> Value {
        let l = self.group.lattice();
        let gens: Vec<Value> = self
            .group
            .generator_indices()
            .into_iter()
            .map(|g| json!({ "generator": self.group.element(g).to_string(), "images": (0..self.size).map(|x| self.act(g, x)).collect::<Vec<_>>() }))
            .collect();
        let orbits: Vec<Value> = self
            .orbits
            .iter()
            .map(|o| json!({ "stabilizer": l.label(o.stabilizer), "points": o.points }))
            .collect();
        json!({
            "group": self.group.display_name(),
            "size": self.size,
            "action": gens,
            "orbits": orbits,
            "literal": self.to_literal(),
        })
    }
}

/// Every H-set of size `n` up to isomorphism, as orbit-type lists over the
/// lattice of `group` (class-canonical indices, sorted).
pub fn sets_of_size(group: &FiniteGroup, n: usize) -> Vec<Vec<(usize, usize)>> {
    let l = group.lattice();
    let classes: Vec<(usize, usize)> = l
        .classes()
        .iter()
        .map(|c| (c[0], group.order() / l.order(c[0])))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        classes: &[(usize, usize)],
        i: usize,
        left: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        if i == classes.len() {
            return;
        }
        let (k, sz) = classes[i];
        let mut m = 0;
        loop {
            if m > 0 {
                current.push((k, m));
            }
            rec(classes, i + 1, left - m * sz, current, out);
            if m > 0 {
                current.pop();
            }
            m += 1;
            if m * sz > left {
                break;
            }
        }
    }
    rec(&classes, 0, n, &mut current, &mut out);
    for v in &mut out {
        v.sort();
    }
    out.sort();
    out
}
