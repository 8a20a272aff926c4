//! Burnside rings of the subgroups of a group with restrictions,
//! conjugations, admissible transfers and admissible norms, and exhaustive
//! checks of the double coset formulas and Frobenius reciprocity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{double_cosets_within, Group};
use crate::gset::{sets_of_size, GSet};
use crate::indexing::{pair_label, IndexingSystem};

/// Dense integer matrix acting on coefficient columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    fn set_column(&mut self, j: usize, col: &[i64]) {
        for (i, &v) in col.iter().enumerate() {
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    m.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Res(usize, usize),
    Tr(usize, usize),
    Conj(usize, usize),
}

/// Burnside rings `A(H)` for every subgroup `H`, in the basis of orbits
/// `H/L` (one per conjugacy class of `L` in `H`), with their structure maps.
pub struct BurnsideRing {
    group: Group,
    groups: Vec<Group>,
    /// Canonical lattice indices of `groups[h]` forming the basis.
    bases: Vec<Vec<usize>>,
    /// Canonical index of `groups[h]`'s lattice to basis position.
    position: Vec<HashMap<usize, usize>>,
    /// Lattice of `groups[h]` into the lattice of the group.
    embeddings: Vec<Vec<usize>>,
    memo: Mutex<HashMap<Key, Arc<IntMatrix>>>,
    products: Mutex<HashMap<usize, Arc<Vec<Vec<Vec<i64>>>>>>,
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BurnsideRing({})", self.group.display_name())
    }
}

impl BurnsideRing {
    pub fn new(group: &Group) -> BurnsideRing {
        let l = group.lattice();
        let groups: Vec<Group> = (0..l.len()).map(|h| group.subgroup_group(h)).collect();
        let mut bases = Vec::new();
        let mut position = Vec::new();
        let mut embeddings = Vec::new();
        for hg in &groups {
            let basis: Vec<usize> = hg.lattice().classes().iter().map(|c| c[0]).collect();
            position.push(basis.iter().enumerate().map(|(i, &k)| (k, i)).collect());
            bases.push(basis);
            let emb = group.embedding_of(hg).expect("own subgroup");
            embeddings.push((0..hg.lattice().len()).map(|s| emb[s]).collect());
        }
        BurnsideRing {
            group: group.clone(),
            groups,
            bases,
            position,
            embeddings,
            memo: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroup(&self, h: usize) -> &Group {
        &self.groups[h]
    }

    pub fn rank(&self, h: usize) -> usize {
        self.bases[h].len()
    }

    /// Label `H/L` of a basis element, with `L` named in the group's lattice.
    pub fn basis_label(&self, h: usize, i: usize) -> String {
        pair_label(&self.group, h, self.embeddings[h][self.bases[h][i]])
    }

    pub fn basis_set(&self, h: usize, i: usize) -> GSet {
        GSet::coset_space(&self.groups[h], self.bases[h][i])
    }

    pub fn unit(&self, h: usize) -> Vec<i64> {
        self.element_of(h, &GSet::trivial(&self.groups[h], 1))
    }

    /// Coefficients of an `H`-set in the orbit basis.
    pub fn element_of(&self, h: usize, set: &GSet) -> Vec<i64> {
        let mut v = vec![0; self.rank(h)];
        for (k, m) in set.orbit_types() {
            v[self.position[h][&k]] += m as i64;
        }
        v
    }

    /// The `H`-set with the given nonnegative coefficients.
    pub fn set_of(&self, h: usize, x: &[usize]) -> GSet {
        let types: Vec<(usize, usize)> =
            x.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (self.bases[h][i], m)).collect();
        GSet::from_orbit_types(&self.groups[h], &types)
    }

    fn cached(&self, key: Key, build: impl FnOnce() -> IntMatrix) -> Arc<IntMatrix> {
        if let Some(m) = self.memo.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = Arc::new(build());
        self.memo.lock().unwrap().insert(key, m.clone());
        m
    }

    fn matrix_from(&self, from: usize, to: usize, f: impl Fn(GSet) -> GSet) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rank(to), self.rank(from));
        for j in 0..self.rank(from) {
            m.set_column(j, &self.element_of(to, &f(self.basis_set(from, j))));
        }
        m
    }

    fn check_le(&self, k: usize, h: usize) -> Result<()> {
        let l = self.group.lattice();
        if l.le(k, h) {
            Ok(())
        } else {
            Err(Error::NotContained(l.label(k), l.label(h)))
        }
    }

    /// `res^H_K: A(H) → A(K)`.
    pub fn restriction(&self, h: usize, k: usize) -> Result<Arc<IntMatrix>> {
        self.check_le(k, h)?;
        let kg = self.groups[k].clone();
        Ok(self.cached(Key::Res(h, k), || self.matrix_from(h, k, |s| s.restrict(&kg).expect("K ≤ H"))))
    }

    /// `tr_K^H: A(K) → A(H)`, by induction, regardless of admissibility.
    pub fn induction(&self, k: usize, h: usize) -> Result<Arc<IntMatrix>> {
        self.check_le(k, h)?;
        let hg = self.groups[h].clone();
        Ok(self.cached(Key::Tr(k, h), || self.matrix_from(k, h, |s| s.induce(&hg).expect("K ≤ H"))))
    }

    /// `c_g: A(H) → A(gHg⁻¹)`.
    pub fn conjugation(&self, g: usize, h: usize) -> Arc<IntMatrix> {
        let target = self.group.lattice().conjugate(g, h);
        self.cached(Key::Conj(g, h), || {
            self.matrix_from(h, target, |s| s.conjugate(&self.group, g).expect("subgroup of the group"))
        })
    }

    fn product_table(&self, h: usize) -> Arc<Vec<Vec<Vec<i64>>>> {
        if let Some(t) = self.products.lock().unwrap().get(&h) {
            return t.clone();
        }
        let n = self.rank(h);
        let sets: Vec<GSet> = (0..n).map(|i| self.basis_set(h, i)).collect();
        let table: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|i| (0..n).map(|j| self.element_of(h, &sets[i].product(&sets[j]).expect("same group"))).collect())
            .collect();
        let table = Arc::new(table);
        self.products.lock().unwrap().insert(h, table.clone());
        table
    }

    /// Product in `A(H)`, from the cartesian product of sets.
    pub fn product(&self, h: usize, x: &[i64], y: &[i64]) -> Vec<i64> {
        let table = self.product_table(h);
        let mut out = vec![0; self.rank(h)];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                for (o, c) in out.iter_mut().zip(&table[i][j]) {
                    *o += a * b * c;
                }
            }
        }
        out
    }
}

/// The Burnside Mackey functor with transfers and norms restricted to the
/// admissible pairs of an indexing system.
#[derive(Debug, Clone)]
pub struct BurnsideMackey {
    ring: Arc<BurnsideRing>,
    system: IndexingSystem,
}

pub fn build_burnside(group: &Group, system: &IndexingSystem) -> Result<BurnsideMackey> {
    BurnsideMackey::over(Arc::new(BurnsideRing::new(group)), system)
}

impl BurnsideMackey {
    /// Shares the ring data between several systems of one group.
    pub fn over(ring: Arc<BurnsideRing>, system: &IndexingSystem) -> Result<BurnsideMackey> {
        if ring.group() != system.group() {
            return Err(Error::GroupMismatch);
        }
        Ok(BurnsideMackey { ring, system: system.clone() })
    }

    pub fn ring(&self) -> &BurnsideRing {
        &self.ring
    }

    pub fn system(&self) -> &IndexingSystem {
        &self.system
    }

    fn admissible(&self, h: usize, k: usize) -> Result<()> {
        self.ring.check_le(k, h)?;
        if self.system.contains(h, k) {
            Ok(())
        } else {
            Err(Error::NotAdmissible(pair_label(self.ring.group(), h, k)))
        }
    }

    pub fn restriction(&self, h: usize, k: usize) -> Result<Arc<IntMatrix>> {
        self.ring.restriction(h, k)
    }

    /// `tr_K^H`, only for admissible `H/K`.
    pub fn transfer(&self, k: usize, h: usize) -> Result<Arc<IntMatrix>> {
        self.admissible(h, k)?;
        self.ring.induction(k, h)
    }

    /// Every pair `(K, H)` with a transfer, non-identity ones only.
    pub fn transfers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.system.pairs().into_iter().filter(|(h, k)| h != k).map(|(h, k)| (k, h)).collect();
        out.sort();
        out
    }

    /// `n_K^H` of a `K`-set, for admissible `H/K`: coinduction.
    pub fn norm_set(&self, k: usize, h: usize, x: &GSet) -> Result<GSet> {
        self.admissible(h, k)?;
        if x.group() != self.ring.subgroup(k) {
            return Err(Error::GroupMismatch);
        }
        x.coinduce(self.ring.subgroup(h))
    }

    /// `n_K^H` on a genuine element given by nonnegative coefficients.
    pub fn norm(&self, k: usize, h: usize, x: &[usize]) -> Result<Vec<i64>> {
        let set = self.norm_set(k, h, &self.ring.set_of(k, x))?;
        Ok(self.ring.element_of(h, &set))
    }
}

/// Outcome of one verification sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub checked: usize,
    /// Skipped instances, e.g. norms whose coinduced set is too large.
    pub skipped: usize,
    pub witnesses: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "axiom": self.axiom,
            "status": if self.passed() { "pass" } else { "fail" },
            "checked": self.checked,
            "skipped": self.skipped,
            "witnesses": self.witnesses,
        })
    }
}

fn fmt_vec(v: &[i64]) -> String {
    format!("{:?}", v)
}

/// `res^H_{K'} tr^H_K = Σ_{g ∈ K'\H/K} tr^{K'}_{K'∩gKg⁻¹} c_g res^K_{K∩g⁻¹K'g}`
/// as integer matrices, for every admissible `H/K` and every `K' ≤ H`.
pub fn verify_double_coset(m: &BurnsideMackey) -> AxiomReport {
    let r = m.ring();
    let g = r.group();
    let l = g.lattice();
    let mut report = AxiomReport { axiom: "double-coset", checked: 0, skipped: 0, witnesses: Vec::new() };
    for (k, h) in m.transfers() {
        let tr = m.transfer(k, h).expect("admissible");
        for kp in l.subgroups_of(h) {
            report.checked += 1;
            let lhs = r.restriction(h, kp).expect("K' ≤ H").compose(&tr);
            let mut rhs = IntMatrix::zeros(r.rank(kp), r.rank(k));
            for (x, _) in double_cosets_within(g, h, kp, k) {
                let xi = g.inv(x);
                let inner = l.meet(k, l.conjugate(xi, kp));
                let outer = l.conjugate(x, inner);
                let term = match m.transfer(outer, kp) {
                    Ok(t) => t,
                    Err(_) => {
                        report.witnesses.push(format!(
                            "{} not admissible though {} is",
                            pair_label(g, kp, outer),
                            pair_label(g, h, k)
                        ));
                        continue;
                    }
                };
                let piece = term.compose(&r.conjugation(x, inner)).compose(&r.restriction(k, inner).expect("inside K"));
                rhs = rhs.add(&piece);
            }
            if lhs != rhs {
                let j = (0..r.rank(k)).find(|&j| (0..lhs.rows).any(|i| lhs.get(i, j) != rhs.get(i, j))).unwrap_or(0);
                let col = |mm: &IntMatrix| (0..mm.rows).map(|i| mm.get(i, j)).collect::<Vec<_>>();
                report.witnesses.push(format!(
                    "res to {} of tr {} on {}: {} vs {}",
                    l.label(kp),
                    pair_label(g, h, k),
                    r.basis_label(k, j),
                    fmt_vec(&col(&lhs)),
                    fmt_vec(&col(&rhs))
                ));
            }
        }
    }
    report
}

/// Largest coinduced set built during the multiplicative check.
const NORM_SIZE_LIMIT: usize = 50_000;

/// `res^H_{K'} n^H_K X ≅ Π_{g ∈ K'\H/K} n^{K'}_{K'∩gKg⁻¹} c_g res^K_{K∩g⁻¹K'g} X`
/// as `K'`-sets, for every admissible `H/K` (including `H = K`), every
/// `K' ≤ H` and every `K`-set `X` with at most `max_size` points.
pub fn verify_multiplicative_double_coset(m: &BurnsideMackey, max_size: usize) -> AxiomReport {
    let r = m.ring();
    let g = r.group();
    let l = g.lattice();
    let mut report = AxiomReport { axiom: "multiplicative-double-coset", checked: 0, skipped: 0, witnesses: Vec::new() };
    let mut pairs: Vec<(usize, usize)> = m.system().pairs().into_iter().map(|(h, k)| (k, h)).collect();
    pairs.sort();
    for (k, h) in pairs {
        let index = l.order(h) / l.order(k);
        let kg = r.subgroup(k);
        let mut sets = Vec::new();
        for n in 1..=max_size {
            sets.extend(sets_of_size(kg, n).into_iter().map(|t| GSet::from_orbit_types(kg, &t)));
        }
        for x in sets {
            if (x.size() as f64).powi(index as i32) > NORM_SIZE_LIMIT as f64 {
                report.skipped += 1;
                continue;
            }
            let normed = m.norm_set(k, h, &x).expect("admissible");
            for kp in l.subgroups_of(h) {
                report.checked += 1;
                let kpg = r.subgroup(kp);
                let lhs = normed.restrict(kpg).expect("K' ≤ H");
                let mut rhs = GSet::trivial(kpg, 1);
                for (c, _) in double_cosets_within(g, h, kp, k) {
                    let inner = l.meet(k, l.conjugate(g.inv(c), kp));
                    let outer = l.conjugate(c, inner);
                    let piece = x.restrict(r.subgroup(inner)).expect("inside K").conjugate(g, c).expect("inside G");
                    let piece = match m.norm_set(outer, kp, &piece) {
                        Ok(p) => p,
                        Err(e) => {
                            report.witnesses.push(e.to_string());
                            continue;
                        }
                    };
                    rhs = rhs.product(&piece).expect("same group");
                }
                if !lhs.is_isomorphic(&rhs) {
                    report.witnesses.push(format!(
                        "res to {} of n {} on {}: {} vs {}",
                        l.label(kp),
                        pair_label(g, h, k),
                        x.to_literal(),
                        lhs.to_literal(),
                        rhs.to_literal()
                    ));
                }
            }
        }
    }
    report
}

/// `tr(res(a)·b) = a·tr(b)` for every admissible `H/K`, every basis element
/// `a` of `A(H)` and `b` of `A(K)`.
pub fn frobenius_check(m: &BurnsideMackey) -> AxiomReport {
    let r = m.ring();
    let g = r.group();
    let mut report = AxiomReport { axiom: "frobenius", checked: 0, skipped: 0, witnesses: Vec::new() };
    for (k, h) in m.transfers() {
        let tr = m.transfer(k, h).expect("admissible");
        let res = r.restriction(h, k).expect("K ≤ H");
        for i in 0..r.rank(h) {
            let mut a = vec![0; r.rank(h)];
            a[i] = 1;
            let ra = res.apply(&a);
            for j in 0..r.rank(k) {
                report.checked += 1;
                let mut b = vec![0; r.rank(k)];
                b[j] = 1;
                let lhs = tr.apply(&r.product(k, &ra, &b));
                let rhs = r.product(h, &a, &tr.apply(&b));
                if lhs != rhs {
                    report.witnesses.push(format!(
                        "tr {} with a = {}, b = {}: {} vs {}",
                        pair_label(g, h, k),
                        r.basis_label(h, i),
                        r.basis_label(k, j),
                        fmt_vec(&lhs),
                        fmt_vec(&rhs)
                    ));
                }
            }
        }
    }
    report
}

/// All three sweeps, with sets of size at most 3 for the norms.
pub fn verify_all(m: &BurnsideMackey) -> Vec<AxiomReport> {
    vec![verify_double_coset(m), verify_multiplicative_double_coset(m, 3), frobenius_check(m)]
}
