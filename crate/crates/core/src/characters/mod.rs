//! Complex characters represented over a prime field F_p.
//!
//! With `p ≡ 1 (mod exp G)` every character value is the image of a sum of
//! roots of unity in F_p, and every integer the rest of the crate needs
//! (degrees, multiplicities, fixed-point dimensions) is far below `p/2`, so it
//! can be recovered exactly by a symmetric lift.

pub mod modp;
mod table;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::gset::GSet;
use modp::Fp;

pub use table::{default_prime, CharacterTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Permutation,
    Irreducible,
    /// Induced, restricted or summed from genuine characters.
    Derived,
    Virtual,
}

/// A class function with values in F_p, one value per conjugacy class of
/// its group.
#[derive(Clone)]
pub struct ClassFunction {
    group: Group,
    prime: u64,
    values: Vec<u64>,
    provenance: Provenance,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fp = self.field();
        let lifted: Vec<i64> = self.values.iter().map(|&v| fp.lift(v)).collect();
        write!(f, "ClassFunction({:?} on {}, {:?})", lifted, self.group.display_name(), self.provenance)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.values == other.values && self.group == other.group
    }
}

impl ClassFunction {
    pub fn new(group: Group, prime: u64, values: Vec<u64>, provenance: Provenance) -> ClassFunction {
        assert_eq!(values.len(), group.conjugacy_classes().len());
        ClassFunction { group, prime, values, provenance }
    }

    /// Integer-valued class function from a per-element function.
    pub fn from_element_fn(group: &Group, prime: u64, provenance: Provenance, f: impl Fn(usize) -> i64) -> ClassFunction {
        let fp = Fp::new(prime);
        let classes = group.conjugacy_classes();
        let values = (0..classes.len()).map(|c| fp.from_i64(f(classes.representative(c)))).collect();
        ClassFunction::new(group.clone(), prime, values, provenance)
    }

    pub fn trivial(group: &Group, prime: u64) -> ClassFunction {
        Self::from_element_fn(group, prime, Provenance::Permutation, |_| 1)
    }

    pub fn regular(group: &Group, prime: u64) -> ClassFunction {
        let n = group.order() as i64;
        Self::from_element_fn(group, prime, Provenance::Permutation, |g| if g == FiniteGroup::IDENTITY { n } else { 0 })
    }

    pub fn zero(group: &Group, prime: u64) -> ClassFunction {
        Self::from_element_fn(group, prime, Provenance::Derived, |_| 0)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.prime)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Value at an element (by element index).
    pub fn at(&self, g: usize) -> u64 {
        self.values[self.group.conjugacy_classes().class_of[g]]
    }

    /// Value at the identity, lifted.
    pub fn degree(&self) -> i64 {
        self.field().lift(self.values[0])
    }

    fn check_compatible(&self, other: &ClassFunction) -> Result<()> {
        if self.prime != other.prime || self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_compatible(other)?;
        let fp = self.field();
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| fp.add(a, b)).collect();
        let provenance = if self.provenance == Provenance::Virtual || other.provenance == Provenance::Virtual {
            Provenance::Virtual
        } else {
            Provenance::Derived
        };
        Ok(ClassFunction::new(self.group.clone(), self.prime, values, provenance))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_compatible(other)?;
        let fp = self.field();
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| fp.sub(a, b)).collect();
        Ok(ClassFunction::new(self.group.clone(), self.prime, values, Provenance::Virtual))
    }

    /// Pointwise product (tensor product of representations).
    pub fn product(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_compatible(other)?;
        let fp = self.field();
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| fp.mul(a, b)).collect();
        Ok(ClassFunction::new(self.group.clone(), self.prime, values, Provenance::Derived))
    }

    /// Marks a difference of characters as genuine after the caller has
    /// checked it, e.g. the reduced regular character.
    pub fn assume_genuine(mut self) -> ClassFunction {
        if self.provenance == Provenance::Virtual {
            self.provenance = Provenance::Derived;
        }
        self
    }

    /// Complex conjugate, `χ̄(g) = χ(g⁻¹)`.
    pub fn conjugate(&self) -> ClassFunction {
        let inv = &self.group.conjugacy_classes().inverse;
        let values = (0..self.values.len()).map(|c| self.values[inv[c]]).collect();
        ClassFunction::new(self.group.clone(), self.prime, values, self.provenance)
    }

    /// `⟨α, β⟩ = 1/|G| Σ α(g) β(g⁻¹)` as an element of F_p.
    pub fn inner_product_mod(&self, other: &ClassFunction) -> Result<u64> {
        self.check_compatible(other)?;
        let fp = self.field();
        let classes = self.group.conjugacy_classes();
        let mut acc = 0u64;
        for c in 0..classes.len() {
            let term = fp.mul(self.values[c], other.values[classes.inverse[c]]);
            acc = fp.add(acc, fp.mul(term, classes.size(c) as u64 % fp.p));
        }
        Ok(fp.mul(acc, fp.inv(self.group.order() as u64)))
    }

    /// Inner product lifted to an integer.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<i64> {
        Ok(self.field().lift(self.inner_product_mod(other)?))
    }

    /// Restriction to a subgroup, given as a group whose elements lie in
    /// this function's group.
    pub fn restrict(&self, sub: &Group) -> Result<ClassFunction> {
        let sc = sub.conjugacy_classes();
        let mut values = Vec::with_capacity(sc.len());
        for c in 0..sc.len() {
            let perm = sub.element(sc.representative(c));
            let g = self
                .group
                .index_of(perm)
                .ok_or_else(|| Error::NotContained(sub.display_name(), self.group.display_name()))?;
            values.push(self.at(g));
        }
        let provenance = if self.provenance == Provenance::Virtual { Provenance::Virtual } else { Provenance::Derived };
        Ok(ClassFunction::new(sub.clone(), self.prime, values, provenance))
    }

    /// Restriction to the subgroup with lattice index `idx`.
    pub fn restrict_to(&self, idx: usize) -> ClassFunction {
        self.restrict(&self.group.subgroup_group(idx)).expect("subgroup of own group")
    }

    /// Induction to an overgroup: `Ind χ(g) = 1/|K| Σ_{x : x g x⁻¹ ∈ K} χ(x g x⁻¹)`.
    pub fn induce(&self, up_to: &Group) -> Result<ClassFunction> {
        let k = &self.group;
        let to_k: Vec<Option<usize>> = up_to.elements().iter().map(|p| k.index_of(p)).collect();
        if to_k.iter().filter(|x| x.is_some()).count() != k.order() {
            return Err(Error::NotContained(k.display_name(), up_to.display_name()));
        }
        let fp = self.field();
        let uc = up_to.conjugacy_classes();
        let mut values = Vec::with_capacity(uc.len());
        for c in 0..uc.len() {
            let g = uc.representative(c);
            let mut acc = 0u64;
            for x in 0..up_to.order() {
                if let Some(y) = to_k[up_to.conj(x, g)] {
                    acc = fp.add(acc, self.at(y));
                }
            }
            values.push(fp.mul(acc, fp.inv(k.order() as u64)));
        }
        let provenance = if self.provenance == Provenance::Virtual { Provenance::Virtual } else { Provenance::Derived };
        Ok(ClassFunction::new(up_to.clone(), self.prime, values, provenance))
    }

    /// Dimension of the subspace fixed by the subgroup with lattice index
    /// `h`: `1/|H| Σ_{x∈H} χ(x)`, lifted into `[0, χ(e)]`.
    pub fn fixed_dim(&self, h: usize) -> Result<usize> {
        if self.provenance == Provenance::Virtual {
            return Err(Error::VirtualCharacter(format!("{:?}", self)));
        }
        let fp = self.field();
        let members = self.group.lattice().members(h);
        let mut acc = 0u64;
        for &x in members {
            acc = fp.add(acc, self.at(x));
        }
        let v = fp.mul(acc, fp.inv(members.len() as u64));
        let lifted = fp.lift(v);
        if lifted < 0 || lifted > self.degree() {
            return Err(Error::LiftOutOfRange(v));
        }
        Ok(lifted as usize)
    }
}

/// Character of the permutation representation of a G-set: the number of
/// fixed points of each element.
pub fn permutation_character(t: &GSet, prime: u64) -> ClassFunction {
    ClassFunction::from_element_fn(t.group(), prime, Provenance::Permutation, |g| {
        (0..t.size()).filter(|&x| t.act(g, x) == x).count() as i64
    })
}

/// True iff every irreducible constituent of `alpha` is also a constituent
/// of `beta`.
pub fn constituents_contained(alpha: &ClassFunction, beta: &ClassFunction, table: &CharacterTable) -> Result<bool> {
    alpha.check_compatible(beta)?;
    let a = table.decompose(alpha)?;
    let b = table.decompose(beta)?;
    Ok(a.iter().zip(&b).all(|(&x, &y)| x == 0 || y > 0))
}
