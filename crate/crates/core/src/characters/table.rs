use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::modp::{distinct_roots, find_prime, Fp, Matrix};
use super::{ClassFunction, Provenance};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};

const PRIME_LIMIT: u64 = 1 << 40;
const SEED: u64 = 0x6e69_6e66_7479;
const MAX_ATTEMPTS: usize = 64;
/// Keeps integer values of permutation and universe characters liftable.
const PRIME_FLOOR: u64 = 1 << 20;

/// Least prime `p ≡ 1 (mod exp G)` with `p > max(4|G|², 2^20)`.
pub fn default_prime(g: &FiniteGroup) -> Result<u64> {
    let n = g.order() as u64;
    find_prime(g.exponent() as u64, (4 * n * n).max(PRIME_FLOOR), PRIME_LIMIT).ok_or(Error::NoPrime(PRIME_LIMIT))
}

/// Complex irreducible characters of a group, reduced mod p.
#[derive(Debug)]
pub struct CharacterTable {
    group: Group,
    prime: u64,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<usize>,
    conjugates: Vec<usize>,
}

impl CharacterTable {
    /// Table over the group's default prime, cached on the group.
    pub fn for_group(g: &Group) -> Result<Arc<CharacterTable>> {
        let p = default_prime(g)?;
        Self::for_group_mod(g, p)
    }

    /// Table over a given prime, cached on the group. The prime must be
    /// `≡ 1 (mod exp G)` and larger than `4|G|²`; a prime chosen for an
    /// overgroup always qualifies.
    pub fn for_group_mod(g: &Group, p: u64) -> Result<Arc<CharacterTable>> {
        if let Some(t) = g.table_cache().lock().unwrap().get(&p) {
            return Ok(t.clone());
        }
        let t = Arc::new(Self::compute(g, p)?);
        g.table_cache().lock().unwrap().entry(p).or_insert(t.clone());
        Ok(t)
    }

    /// Dixon's method: the central characters `ω_χ(C) = |C|χ(c)/χ(1)` are the
    /// common eigenvectors of the class multiplication matrices.
    pub fn compute(g: &Group, p: u64) -> Result<CharacterTable> {
        let n = g.order() as u64;
        if (p - 1) % g.exponent() as u64 != 0 || p <= 4 * n * n {
            return Err(Error::NoPrime(p));
        }
        let f = Fp::new(p);
        let classes = g.conjugacy_classes();
        let r = classes.len();

        // mats[j][i][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}
        let mut mats = vec![Matrix::zeros(r); r];
        for k in 0..r {
            let z = classes.representative(k);
            for x in 0..g.order() {
                let i = classes.class_of[x];
                let j = classes.class_of[g.mul(g.inv(x), z)];
                let m = &mut mats[j];
                m.set(i, k, m.get(i, k) + 1);
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut omegas = None;
        for _ in 0..MAX_ATTEMPTS {
            let coeffs: Vec<u64> = (0..r).map(|_| rng.random_range(0..p)).collect();
            let mut m = Matrix::zeros(r);
            for (j, c) in coeffs.iter().enumerate() {
                for (d, s) in m.data.iter_mut().zip(&mats[j].data) {
                    *d = f.add(*d, f.mul(*c, *s % p));
                }
            }
            let Some(roots) = distinct_roots(f, &m.charpoly(f), &mut rng) else { continue };
            if roots.len() != r {
                continue;
            }
            let mut vecs = Vec::with_capacity(r);
            for &lambda in &roots {
                let space = m.eigenspace(f, lambda);
                if space.len() != 1 || space[0][0] == 0 {
                    break;
                }
                let scale = f.inv(space[0][0]);
                vecs.push(space[0].iter().map(|&v| f.mul(v, scale)).collect::<Vec<u64>>());
            }
            if vecs.len() == r {
                omegas = Some(vecs);
                break;
            }
        }
        let omegas = omegas.ok_or(Error::NoPrime(p))?;

        let mut rows = Vec::with_capacity(r);
        for w in omegas {
            let mut s = 0u64;
            for j in 0..r {
                let t = f.mul(w[j], w[classes.inverse[j]]);
                s = f.add(s, f.mul(t, f.inv(classes.size(j) as u64)));
            }
            let d2 = f.lift(f.mul(n % p, f.inv(s)));
            let d = (d2.max(0) as f64).sqrt().round() as i64;
            if d < 1 || d * d != d2 {
                return Err(Error::LiftOutOfRange(d2.rem_euclid(p as i64) as u64));
            }
            let values: Vec<u64> =
                (0..r).map(|j| f.mul(f.mul(w[j], d as u64), f.inv(classes.size(j) as u64))).collect();
            rows.push((d as usize, values));
        }
        rows.sort();

        let degrees: Vec<usize> = rows.iter().map(|(d, _)| *d).collect();
        let irreducibles: Vec<ClassFunction> = rows
            .into_iter()
            .map(|(_, v)| ClassFunction::new(g.clone(), p, v, Provenance::Irreducible))
            .collect();
        let conjugates = irreducibles
            .iter()
            .map(|chi| {
                let c = chi.conjugate();
                irreducibles.iter().position(|x| x.values() == c.values()).expect("table closed under conjugation")
            })
            .collect();
        Ok(CharacterTable { group: g.clone(), prime: p, irreducibles, degrees, conjugates })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Index of the complex conjugate of irreducible `i`.
    pub fn conjugate_of(&self, i: usize) -> usize {
        self.conjugates[i]
    }

    /// Multiplicities of the irreducibles in `chi`.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>> {
        self.irreducibles.iter().map(|x| chi.inner_product(x)).collect()
    }

    /// Sum of the irreducibles with the given indices, each once.
    pub fn sum_of(&self, indices: impl IntoIterator<Item = usize>) -> ClassFunction {
        let mut acc = ClassFunction::zero(&self.group, self.prime);
        for i in indices {
            acc = acc.add(&self.irreducibles[i]).expect("same group");
        }
        acc
    }

    /// True iff the members (element indices) all lie in the kernel of
    /// irreducible `i`.
    pub fn kernel_contains(&self, i: usize, members: &[usize]) -> bool {
        let chi = &self.irreducibles[i];
        members.iter().all(|&x| chi.at(x) == chi.values()[0])
    }

    pub fn row_orthogonality(&self) -> bool {
        let r = self.len();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let v = self.irreducibles[i].inner_product(&self.irreducibles[j]).unwrap();
                v == i64::from(i == j)
            })
        })
    }

    /// `Σ_χ χ(a) χ(b⁻¹) = |C_G(a)| δ_{ab}` on class representatives.
    pub fn column_orthogonality(&self) -> bool {
        let f = Fp::new(self.prime);
        let classes = self.group.conjugacy_classes();
        let r = classes.len();
        let n = self.group.order();
        (0..r).all(|a| {
            (0..r).all(|b| {
                let mut s = 0u64;
                for chi in &self.irreducibles {
                    s = f.add(s, f.mul(chi.values()[a], chi.values()[classes.inverse[b]]));
                }
                let expect = if a == b { n / classes.size(a) } else { 0 };
                f.lift(s) == expect as i64
            })
        })
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// A class is rational when every character is constant on the powers
    /// `g^k` with `k` prime to the order of `g`; only then are values on it
    /// ordinary integers.
    pub fn is_rational_class(&self, c: usize) -> bool {
        let g = &self.group;
        let classes = g.conjugacy_classes();
        let x = classes.representative(c);
        let o = g.element_order(x);
        (1..o.max(1))
            .filter(|&k| crate::group::gcd(k, o) == 1)
            .all(|k| classes.class_of[g.power(x, k)] == c)
    }

    /// JSON export: classes, degrees, and per-class values given as
    /// integers on rational classes and as residues mod p elsewhere.
    pub fn to_json(&self) -> Value {
        let f = Fp::new(self.prime);
        let g = &self.group;
        let classes = g.conjugacy_classes();
        let class_docs: Vec<Value> = (0..classes.len())
            .map(|c| {
                let rep = classes.representative(c);
                json!({
                    "representative": g.element(rep).to_string(),
                    "size": classes.size(c),
                    "order": g.element_order(rep),
                    "rational": self.is_rational_class(c),
                })
            })
            .collect();
        let rows: Vec<Value> = self
            .irreducibles
            .iter()
            .enumerate()
            .map(|(i, chi)| {
                let values: Vec<Value> = (0..classes.len())
                    .map(|c| {
                        let v = chi.values()[c];
                        if self.is_rational_class(c) {
                            json!(f.lift(v))
                        } else {
                            json!({ "residue": v })
                        }
                    })
                    .collect();
                json!({ "degree": self.degrees[i], "conjugate": self.conjugates[i], "values": values })
            })
            .collect();
        json!({
            "group": g.display_name(),
            "prime": self.prime,
            "classes": class_docs,
            "irreducibles": rows,
        })
    }
}
