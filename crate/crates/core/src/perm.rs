use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored by images.
///
/// The derived ordering is lexicographic on the image list, which is the
/// canonical element ordering used by [`crate::group::FiniteGroup`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{:?}", images)));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Builds a permutation of `degree` points from disjoint or overlapping
    /// cycles given with 0-based points. Cycles are composed right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut p = Perm::identity(degree);
        for c in cycles.iter().rev() {
            let mut seen = std::collections::HashSet::new();
            for &x in c {
                if x >= degree || !seen.insert(x) {
                    return Err(Error::NotAPermutation(format!("bad cycle {:?}", c)));
                }
            }
            let mut cyc = Perm::identity(degree);
            for i in 0..c.len() {
                cyc.0[c[i]] = c[(i + 1) % c.len()] as u32;
            }
            p = cyc.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.0.len(), other.0.len());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j as usize] = i as u32;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.0.len());
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Perm(v)
    }

    /// Shifts the support up by `offset` inside a permutation of `degree` points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut v: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.0.iter().enumerate() {
            v[i + offset] = j + offset as u32;
        }
        Perm(v)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `(1 2)(3 4)` style cycle notation with 1-based points. Points may
/// be separated by spaces or commas. Returns the cycles 0-based together with
/// the largest point mentioned.
pub fn parse_cycles(s: &str) -> Result<(Vec<Vec<usize>>, usize)> {
    let bad = || Error::NotAPermutation(s.to_string());
    let mut cycles = Vec::new();
    let mut max_point = 0;
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(bad());
    }
    while !rest.is_empty() {
        rest = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = rest.find(')').ok_or_else(bad)?;
        let body = &rest[..end];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok.parse().map_err(|_| bad())?;
            if p == 0 {
                return Err(bad());
            }
            max_point = max_point.max(p);
            cycle.push(p - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[end + 1..].trim_start();
    }
    Ok((cycles, max_point))
}
