//! Prime-field arithmetic, small dense linear algebra and polynomial root
//! finding over F_p.

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Least prime `p ≡ 1 (mod modulus)` with `p > lower`, searching below `limit`.
pub fn find_prime(modulus: u64, lower: u64, limit: u64) -> Option<u64> {
    let mut k = lower / modulus;
    loop {
        let p = k.checked_mul(modulus)?.checked_add(1)?;
        if p > limit {
            return None;
        }
        if p > lower && is_prime(p) {
            return Some(p);
        }
        k += 1;
    }
}

/// Dense square matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix { n, data: vec![0; n * n] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    /// Characteristic polynomial `det(xI − A)`, coefficients low to high,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self, f: Fp) -> Vec<u64> {
        let n = self.n;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let pivot = (m..n).find(|&i| h.get(i, m - 1) != 0);
            let Some(i) = pivot else { continue };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1));
            for i in (m + 1)..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        // Recurrence on leading principal minors.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = f.add(next[k + 1], c);
                next[k] = f.sub(next[k], f.mul(h.get(m, m), c));
            }
            let mut prod = 1u64;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(h.get(i, m), prod);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[i].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Basis of the null space of `self − λI`.
    pub fn eigenspace(&self, f: Fp, lambda: u64) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut a = self.clone();
        for i in 0..n {
            let v = f.sub(a.get(i, i), lambda);
            a.set(i, i, v);
        }
        null_space(f, n, n, &mut a.data)
    }
}

/// Null space of an `rows × cols` matrix given row-major; the matrix is
/// reduced in place.
pub fn null_space(f: Fp, rows: usize, cols: usize, a: &mut [u64]) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        for j in 0..cols {
            a.swap(pr * cols + j, r * cols + j);
        }
        let inv = f.inv(a[r * cols + c]);
        for j in 0..cols {
            a[r * cols + j] = f.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            if i != r && a[i * cols + c] != 0 {
                let u = a[i * cols + c];
                for j in 0..cols {
                    a[i * cols + j] = f.sub(a[i * cols + j], f.mul(u, a[r * cols + j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[row * cols + fc]);
            }
            v
        })
        .collect()
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_rem(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - db;
        let coef = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(coef, c));
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    trim(&mut r);
    r
}

fn poly_mulmod(f: Fp, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &out, m)
}

fn poly_powmod(f: Fp, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(f, &result, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        e >>= 1;
    }
    result
}

fn is_zero(p: &[u64]) -> bool {
    p.iter().all(|&c| c == 0)
}

fn poly_gcd(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !is_zero(&b) {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    let inv = f.inv(*a.last().unwrap());
    a.iter().map(|&c| f.mul(c, inv)).collect()
}

fn poly_div_exact(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut q = vec![0u64; a.len() - db];
    for shift in (0..q.len()).rev() {
        let coef = f.mul(r[shift + db], lead_inv);
        q[shift] = coef;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(coef, c));
        }
    }
    q
}

/// Roots in F_p of `poly` if it splits into distinct linear factors,
/// otherwise `None`.
pub fn distinct_roots<R: Rng>(f: Fp, poly: &[u64], rng: &mut R) -> Option<Vec<u64>> {
    let mut poly = poly.to_vec();
    trim(&mut poly);
    let deg = poly.len() - 1;
    if deg == 0 {
        return Some(vec![]);
    }
    // gcd(x^p − x, poly) collects the distinct linear factors.
    let xp = poly_powmod(f, &[0, 1], f.p, &poly);
    let mut xp_minus_x = xp.clone();
    xp_minus_x.resize(xp_minus_x.len().max(2), 0);
    xp_minus_x[1] = f.sub(xp_minus_x[1], 1);
    let split = if is_zero(&xp_minus_x) { monic(f, &poly) } else { poly_gcd(f, &poly, &xp_minus_x) };
    if split.len() - 1 != deg {
        return None;
    }
    let mut roots = Vec::new();
    let mut stack = vec![split];
    while let Some(g) = stack.pop() {
        let d = g.len() - 1;
        if d == 0 {
            continue;
        }
        if d == 1 {
            roots.push(f.neg(f.mul(g[0], f.inv(g[1]))));
            continue;
        }
        loop {
            let a = rng.random_range(0..f.p);
            let mut h = poly_powmod(f, &[a, 1], (f.p - 1) / 2, &g);
            h.resize(h.len().max(1), 0);
            h[0] = f.sub(h[0], 1);
            trim(&mut h);
            if is_zero(&h) {
                continue;
            }
            let c = poly_gcd(f, &g, &h);
            let dc = c.len() - 1;
            if dc > 0 && dc < d {
                let other = poly_div_exact(f, &g, &c);
                stack.push(c);
                stack.push(other);
                break;
            }
        }
    }
    roots.sort_unstable();
    Some(roots)
}

fn monic(f: Fp, p: &[u64]) -> Vec<u64> {
    let inv = f.inv(*p.last().unwrap());
    p.iter().map(|&c| f.mul(c, inv)).collect()
}
