//! Finite permutation groups with a full multiplication table.
//!
//! Every group is held behind an [`Arc`] ([`Group`]) so that subgroups, G-sets
//! and character tables can refer back to it cheaply. Derived data (conjugacy
//! classes, the subgroup lattice, subgroups promoted to groups of their own,
//! character tables) is computed lazily and cached on the group.

mod lattice;
mod ops;
mod presets;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::indexing::PairSpace;
use crate::perm::Perm;

pub use lattice::SubgroupLattice;
pub use ops::{double_cosets, double_cosets_within, quotient_group, DoubleCoset, Quotient};
pub use presets::{construct_group, construct_group_with_bound, DEFAULT_ORDER_BOUND, PRESETS};

pub type Group = Arc<FiniteGroup>;

/// Conjugacy classes of elements, ordered by least element (identity first).
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// Class containing the inverses of the given class.
    pub inverse: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn size(&self, class: usize) -> usize {
        self.members[class].len()
    }
}

pub struct FiniteGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
    lattice: OnceLock<SubgroupLattice>,
    subgroup_groups: OnceLock<Vec<OnceLock<Group>>>,
    tables: Mutex<HashMap<u64, Arc<CharacterTable>>>,
    pairs: OnceLock<Arc<PairSpace>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Closes the generators under composition. Fails if the order would
    /// exceed `bound`.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Perm>,
        name: Option<String>,
        bound: usize,
    ) -> Result<Group> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::NotAPermutation(format!(
                    "generator {} has degree {}, expected {}",
                    g,
                    g.degree(),
                    degree
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = s.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Arc::new(Self::from_sorted_elements(degree, generators, elements, name)))
    }

    /// `elements` must be sorted, duplicate free and closed.
    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
        name: Option<String>,
    ) -> FiniteGroup {
        let n = elements.len();
        let index: HashMap<&Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&elements[i].compose(&elements[j])];
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for (i, o) in orders.iter_mut().enumerate() {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = mul[i * n + x] as usize;
                k += 1;
            }
            *o = k;
        }
        orders[0] = 1;
        FiniteGroup {
            name,
            degree,
            generators,
            elements,
            mul,
            inv,
            orders,
            classes: OnceLock::new(),
            lattice: OnceLock::new(),
            subgroup_groups: OnceLock::new(),
            tables: Mutex::new(HashMap::new()),
            pairs: OnceLock::new(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// A printable name: the preset name when known, otherwise `order-<n>`.
    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("order-{}", self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index_of(g).expect("generator in group")).collect()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// The identity is the lexicographically least permutation.
    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut r = Self::IDENTITY;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut members = Vec::new();
            for x in 0..n {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let c = members.len();
                let mut orbit: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                for &y in &orbit {
                    class_of[y] = c;
                }
                members.push(orbit);
            }
            let inverse = members.iter().map(|m| class_of[self.inv(m[0])]).collect();
            ConjugacyClasses { class_of, members, inverse }
        })
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| SubgroupLattice::compute(self))
    }

    /// The subgroup with lattice index `idx` as a group in its own right,
    /// acting on the same points. Its element order agrees with the member
    /// order of the subgroup.
    pub fn subgroup_group(&self, idx: usize) -> Group {
        let slots = self
            .subgroup_groups
            .get_or_init(|| (0..self.lattice().len()).map(|_| OnceLock::new()).collect());
        slots[idx]
            .get_or_init(|| {
                let members = self.lattice().members(idx);
                let elements: Vec<Perm> =
                    members.iter().map(|&m| self.elements[m].clone()).collect();
                let gens = self.lattice().generators(idx).iter().map(|&g| self.elements[g].clone()).collect();
                let name = self.lattice().label(idx);
                Arc::new(Self::from_sorted_elements(self.degree, gens, elements, Some(name)))
            })
            .clone()
    }

    /// Locates a group whose elements are all in `self` as a subgroup of
    /// `self`. Returns `None` if some element is missing.
    pub fn locate_subgroup(&self, sub: &FiniteGroup) -> Option<usize> {
        if sub.degree != self.degree {
            return None;
        }
        let mut members = Vec::with_capacity(sub.order());
        for p in &sub.elements {
            members.push(self.index_of(p)?);
        }
        self.lattice().index_of_members(&members)
    }

    /// Maps lattice indices of `sub` (a subgroup of `self`) into lattice
    /// indices of `self`.
    pub fn embedding_of(&self, sub: &FiniteGroup) -> Option<Vec<usize>> {
        self.locate_subgroup(sub)?;
        let map: Option<Vec<usize>> = (0..sub.order()).map(|i| self.index_of(&sub.elements[i])).collect();
        let map = map?;
        let sl = sub.lattice();
        (0..sl.len())
            .map(|s| {
                let members: Vec<usize> = sl.members(s).iter().map(|&m| map[m]).collect();
                self.lattice().index_of_members(&members)
            })
            .collect()
    }

    /// Translates a subgroup of `self` into the lattice of `sub`, assuming
    /// it lies inside `sub`.
    pub fn restrict_index(&self, idx: usize, sub: &FiniteGroup) -> Option<usize> {
        let members: Option<Vec<usize>> =
            self.lattice().members(idx).iter().map(|&m| sub.index_of(&self.elements[m])).collect();
        sub.lattice().index_of_members(&members?)
    }

    /// Subgroup pairs `K ≤ H` with their conjugacy classes and closure rules.
    pub fn pair_space(&self) -> Arc<PairSpace> {
        self.pairs.get_or_init(|| Arc::new(PairSpace::new(self))).clone()
    }

    pub(crate) fn table_cache(&self) -> &Mutex<HashMap<u64, Arc<CharacterTable>>> {
        &self.tables
    }

    /// Subgroup value for lattice index `idx`.
    pub fn subgroup(self: &Arc<Self>, idx: usize) -> Subgroup {
        assert!(idx < self.lattice().len());
        Subgroup { parent: self.clone(), index: idx }
    }

    pub fn subgroup_by_label(self: &Arc<Self>, label: &str) -> Result<Subgroup> {
        let idx = self.lattice().find(label, self.name())?;
        Ok(self.subgroup(idx))
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        other.locate_subgroup(self).is_some()
    }
}

/// A subgroup of a specific parent group, identified by its lattice index.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    index: usize,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} in {})", self.label(), self.parent.display_name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.parent == other.parent
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn members(&self) -> &[usize] {
        self.parent.lattice().members(self.index)
    }

    pub fn order(&self) -> usize {
        self.members().len()
    }

    pub fn label(&self) -> String {
        self.parent.lattice().label(self.index)
    }

    pub fn contains_element(&self, g: usize) -> bool {
        self.parent.lattice().contains_element(self.index, g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.parent.lattice().le(self.index, other.index)
    }

    pub fn is_normal(&self) -> bool {
        self.parent.lattice().is_normal(self.index)
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        Subgroup { parent: self.parent.clone(), index: self.parent.lattice().conjugate(g, self.index) }
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.parent != other.parent {
            return Err(Error::GroupMismatch);
        }
        Ok(Subgroup { parent: self.parent.clone(), index: self.parent.lattice().meet(self.index, other.index) })
    }

    /// The subgroup as a group of its own.
    pub fn as_group(&self) -> Group {
        self.parent.subgroup_group(self.index)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
