use super::{FiniteGroup, Group};
use crate::error::{Error, Result};
use crate::perm::{parse_cycles, Perm};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Named groups used throughout the test suites, in increasing order.
pub const PRESETS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "D8", "Q8", "C9",
    "C3xC3", "C10", "D10", "C12", "C2xC6", "D12", "A4", "S4", "A5",
];

/// Parses a group specification with the default order bound.
///
/// Accepted forms: `C<n>`, `D<2n>`, `S<n>`, `A<n>`, `Q8`, products such as
/// `C<n>xC<m>` (any presets joined by `x`), and `perm:<cycles>,<cycles>,...`
/// with 1-based points.
pub fn construct_group(spec: &str) -> Result<Group> {
    construct_group_with_bound(spec, DEFAULT_ORDER_BOUND)
}

pub fn construct_group_with_bound(spec: &str, bound: usize) -> Result<Group> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("perm:") {
        let mut gens = Vec::new();
        let mut degree = 1;
        for part in split_top_level(rest) {
            let (cycles, max) = parse_cycles(part)?;
            degree = degree.max(max);
            gens.push(cycles);
        }
        let gens: Result<Vec<Perm>> = gens.iter().map(|c| Perm::from_cycles(degree, c)).collect();
        return FiniteGroup::from_generators(degree, gens?, Some(spec.to_string()), bound);
    }
    let factors: Vec<&str> = spec.split('x').collect();
    let mut parts = Vec::new();
    for f in &factors {
        parts.push(preset_generators(f).ok_or_else(|| Error::BadGroupSpec(spec.to_string()))?);
    }
    let degree: usize = parts.iter().map(|(d, _)| d).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for (d, g) in parts {
        for p in g {
            gens.push(p.shifted(offset, degree));
        }
        offset += d;
    }
    FiniteGroup::from_generators(degree, gens, Some(spec.to_string()), bound)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn cycle(points: &[usize], degree: usize) -> Perm {
    Perm::from_cycles(degree, &[points.to_vec()]).expect("valid cycle")
}

/// Degree and generators of a single named group.
fn preset_generators(name: &str) -> Option<(usize, Vec<Perm>)> {
    if name.is_empty() || !name.is_char_boundary(1) {
        return None;
    }
    let (kind, num) = name.split_at(1);
    if name == "Q8" {
        return Some(quaternion());
    }
    let n: usize = num.parse().ok()?;
    match kind {
        "C" if n >= 1 => {
            if n == 1 {
                return Some((1, vec![]));
            }
            Some((n, vec![cycle(&(0..n).collect::<Vec<_>>(), n)]))
        }
        "D" if n >= 2 && n % 2 == 0 => {
            let m = n / 2;
            match m {
                1 => Some((2, vec![cycle(&[0, 1], 2)])),
                2 => Some((4, vec![cycle(&[0, 1], 4), cycle(&[2, 3], 4)])),
                _ => {
                    let rot = cycle(&(0..m).collect::<Vec<_>>(), m);
                    let refl: Vec<Vec<usize>> = (1..m).map(|i| vec![i, m - i]).filter(|c| c[0] < c[1]).collect();
                    Some((m, vec![rot, Perm::from_cycles(m, &refl).ok()?]))
                }
            }
        }
        "S" if n >= 1 => {
            if n == 1 {
                return Some((1, vec![]));
            }
            let mut gens = vec![cycle(&[0, 1], n)];
            if n > 2 {
                gens.push(cycle(&(0..n).collect::<Vec<_>>(), n));
            }
            Some((n, gens))
        }
        "A" if n >= 1 => {
            if n < 3 {
                return Some((n.max(1), vec![]));
            }
            let gens = (2..n).map(|k| cycle(&[0, 1, k], n)).collect();
            Some((n, gens))
        }
        _ => None,
    }
}

/// Q8 in its regular representation on {±1, ±i, ±j, ±k}.
fn quaternion() -> (usize, Vec<Perm>) {
    // Units encoded as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k; index = 2*axis + sign.
    fn mul((s1, a1): (u8, u8), (s2, a2): (u8, u8)) -> (u8, u8) {
        let table: [[(u8, u8); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, a) = table[a1 as usize][a2 as usize];
        ((s1 + s2 + s) % 2, a)
    }
    let idx = |(s, a): (u8, u8)| (2 * a + s) as usize;
    let units: Vec<(u8, u8)> = (0..4).flat_map(|a| (0..2).map(move |s| (s, a))).collect();
    let left = |x: (u8, u8)| {
        let mut images = vec![0; 8];
        for &u in &units {
            images[idx(u)] = idx(mul(x, u));
        }
        Perm::from_images(images).unwrap()
    };
    (8, vec![left((0, 1)), left((0, 2))])
}
