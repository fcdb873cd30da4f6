//! The coefficient field F_q, q an odd prime power.
//!
//! Elements are canonical `u32` encodings: an element with base-p digits
//! (d_0, ..., d_{r-1}) relative to the fixed modulus is encoded as
//! Σ d_i p^i. Multiplication and inversion go through exp/log tables built
//! once per field, so element operations are table lookups. Equality of
//! encodings is equality of elements.

use crate::error::{domain, Error, Result};
use std::sync::Arc;

pub type FqElem = u32;

#[derive(Debug)]
pub struct Fq {
    pub p: u64,
    pub r: u32,
    pub q: u64,
    /// Monic irreducible modulus over F_p, low-to-high coefficients, length r+1.
    /// For prime fields this is [0, 1] (the polynomial x), unused.
    pub modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Generator of F_q^× as an encoded element.
    pub generator: FqElem,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}
impl Eq for Fq {}

const Q_CAP: u64 = 1 << 20;

impl Fq {
    pub fn prime(p: u64) -> Result<Arc<Fq>> {
        Fq::extension(p, 1, None)
    }

    /// Build F_{p^r}. If `modulus` is None, the lexicographically smallest
    /// monic irreducible of degree r over F_p is used, so test vectors are
    /// reproducible.
    pub fn extension(p: u64, r: u32, modulus: Option<Vec<u64>>) -> Result<Arc<Fq>> {
        if p < 3 || !is_prime_u64(p) {
            return domain(format!("p = {p} must be an odd prime"));
        }
        let q = p.checked_pow(r).filter(|&q| q <= Q_CAP).ok_or_else(|| {
            Error::Domain(format!("q = {p}^{r} too large"))
        })?;
        if r == 0 {
            return domain("extension degree must be >= 1");
        }
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                if m.len() != r as usize + 1 || m[r as usize] != 1 {
                    return domain("modulus must be monic of degree r");
                }
                if r > 1 && !fp_poly_irreducible(p, &m) {
                    return domain("modulus is not irreducible over F_p");
                }
                m
            }
            None => find_modulus(p, r),
        };
        let mut f = Fq {
            p,
            r,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            generator: 0,
        };
        f.build_tables()?;
        Ok(Arc::new(f))
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.q as usize;
        // seek a generator of the multiplicative group
        'cand: for g in 1..self.q as u32 {
            if self.r == 1 && g == 1 {
                continue;
            }
            let mut exp = vec![0u32; q - 1];
            let mut log = vec![u32::MAX; q];
            let mut acc: u32 = 1;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = acc;
                if log[acc as usize] != u32::MAX {
                    continue 'cand; // order < q-1
                }
                log[acc as usize] = i as u32;
                acc = self.mul_raw(acc, g);
            }
            if acc != 1 {
                continue;
            }
            self.exp = exp;
            self.log = log;
            self.generator = g;
            return Ok(());
        }
        Err(Error::Internal("no multiplicative generator found".into()))
    }

    /// Digit-vector multiplication modulo the modulus; used only to
    /// bootstrap the tables.
    fn mul_raw(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.r == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        let r = self.r as usize;
        let da = digits(self.p, self.r, a);
        let db = digits(self.p, self.r, b);
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by monic modulus
        for i in (r..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mc) in self.modulus.iter().enumerate().take(r) {
                let idx = i - r + k;
                prod[idx] = (prod[idx] + c * (self.p - mc) % self.p) % self.p;
            }
        }
        undigits(self.p, &prod[..r])
    }

    pub fn zero(&self) -> FqElem {
        0
    }
    pub fn one(&self) -> FqElem {
        1
    }
    /// The element representing the integer n.
    pub fn from_int(&self, n: i64) -> FqElem {
        (n.rem_euclid(self.p as i64)) as u32
    }
    pub fn minus_one(&self) -> FqElem {
        (self.p - 1) as u32
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.r == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let da = digits(self.p, self.r, a);
        let db = digits(self.p, self.r, b);
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(self.p, &s)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.r == 1 {
            return if a == 0 { 0 } else { (self.p - a as u64) as u32 };
        }
        let da = digits(self.p, self.r, a);
        let s: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        undigits(self.p, &s)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(a != 0, "division by zero in F_q");
        let n = self.q - 1;
        let e = (n - self.log[a as usize] as u64) % n;
        self.exp[e as usize]
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.q - 1;
        let le = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[le as usize]
    }

    /// Quadratic residue symbol on F_q^×, 0 on 0.
    pub fn legendre(&self, a: FqElem) -> i8 {
        if a == 0 {
            return 0;
        }
        if self.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Canonical square root: the root with the smaller encoding, when one exists.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        if a == 0 {
            return Some(0);
        }
        let l = self.log[a as usize] as u64;
        if !l.is_multiple_of(2) {
            return None;
        }
        let h = self.q - 1;
        let r1 = self.exp[(l / 2) as usize];
        let r2 = self.exp[((l / 2 + h / 2) % h) as usize];
        Some(r1.min(r2))
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        self.legendre(a) >= 0
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q as u32
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> {
        1..self.q as u32
    }

    /// Trace down to the prime field, as an integer in [0, p).
    pub fn trace_to_fp(&self, a: FqElem) -> u64 {
        let mut acc = 0u32;
        let mut x = a;
        for _ in 0..self.r {
            acc = self.add(acc, x);
            x = self.pow(x, self.p);
        }
        debug_assert!((acc as u64) < self.p);
        acc as u64
    }

    /// Render an element; extension-field elements print as polynomials in `g`.
    pub fn elem_str(&self, a: FqElem) -> String {
        if self.r == 1 {
            return format!("{a}");
        }
        let d = digits(self.p, self.r, a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

pub fn digits(p: u64, r: u32, a: FqElem) -> Vec<u64> {
    let mut v = Vec::with_capacity(r as usize);
    let mut a = a as u64;
    for _ in 0..r {
        v.push(a % p);
        a /= p;
    }
    v
}

pub fn undigits(p: u64, d: &[u64]) -> FqElem {
    let mut acc = 0u64;
    for &c in d.iter().rev() {
        acc = acc * p + c;
    }
    acc as u32
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Irreducibility over F_p for the modulus search (small degrees only):
/// f of degree r is irreducible iff it has no factor of degree <= r/2,
/// tested by gcd with x^{p^i} - x.
fn fp_poly_irreducible(p: u64, f: &[u64]) -> bool {
    let r = f.len() - 1;
    if r == 1 {
        return true;
    }
    // derivative zero => p-th power
    let deriv_zero = f
        .iter()
        .enumerate()
        .skip(1)
        .all(|(i, &c)| ((i as u64 % p) * c).is_multiple_of(p));
    if deriv_zero {
        return false;
    }
    let mut x_pow = vec![0u64, 1]; // x
    for i in 1..=r / 2 {
        x_pow = fp_poly_powmod(p, &x_pow, p, f);
        // gcd(f, x_pow - x)
        let mut g = x_pow.clone();
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        trim(&mut g);
        let gc = fp_poly_gcd(p, f.to_vec(), g);
        if gc.len() > 1 {
            return false;
        }
        let _ = i;
    }
    true
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.last() == Some(&0) && v.len() == 1 {
        v.clear();
        v.push(0);
    }
}

fn fp_poly_mulmod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let dm = m.len() - 1;
    for i in (dm..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (k, &mc) in m.iter().enumerate().take(dm) {
            let idx = i - dm + k;
            prod[idx] = (prod[idx] + c * ((p - mc) % p)) % p;
        }
    }
    prod.truncate(dm.max(1));
    trim(&mut prod);
    prod
}

fn fp_poly_powmod(p: u64, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = fp_poly_mulmod(p, &result, &b, m);
        }
        b = fp_poly_mulmod(p, &b, &b, m);
        e >>= 1;
    }
    result
}

fn fp_poly_gcd(p: u64, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = fp_poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn fp_poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = mod_inv(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let c = r[dr] * lb_inv % p;
        if c != 0 {
            for k in 0..=db {
                let idx = dr - db + k;
                r[idx] = (r[idx] + c * ((p - b[k]) % p)) % p;
            }
        }
        trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
        if r.len() - 1 < db {
            break;
        }
    }
    trim(&mut r);
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    result
}

fn find_modulus(p: u64, r: u32) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1];
    }
    // lexicographically smallest by low-to-high digit encoding
    let total = p.pow(r);
    for enc in 0..total {
        let mut f = Vec::with_capacity(r as usize + 1);
        let mut e = enc;
        for _ in 0..r {
            f.push(e % p);
            e /= p;
        }
        f.push(1);
        if fp_poly_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomial of every degree exists")
}
