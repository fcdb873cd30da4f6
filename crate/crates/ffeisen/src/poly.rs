//! Polynomials over F_q and rational functions in t, i.e. elements of
//! A = F_q[t] and k = F_q(t). Coefficients are stored low-to-high with a
//! nonzero leading coefficient (the zero polynomial has an empty vector).

use crate::error::{domain, Result};
use crate::fq::{Fq, FqElem};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    pub c: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: vec![] }
    }
    pub fn one() -> Poly {
        Poly { c: vec![1] }
    }
    pub fn t() -> Poly {
        Poly { c: vec![0, 1] }
    }
    pub fn constant(a: FqElem) -> Poly {
        if a == 0 {
            Poly::zero()
        } else {
            Poly { c: vec![a] }
        }
    }
    pub fn from_coeffs(c: Vec<FqElem>) -> Poly {
        let mut p = Poly { c };
        p.trim();
        p
    }
    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    /// Degree with deg 0 = -1 by convention.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lc(&self) -> FqElem {
        *self.c.last().unwrap_or(&0)
    }
    pub fn coeff(&self, i: usize) -> FqElem {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn add(&self, fq: &Fq, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(fq.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self, fq: &Fq) -> Poly {
        Poly {
            c: self.c.iter().map(|&a| fq.neg(a)).collect(),
        }
    }

    pub fn sub(&self, fq: &Fq, other: &Poly) -> Poly {
        self.add(fq, &other.neg(fq))
    }

    pub fn mul(&self, fq: &Fq, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u32; self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                c[i + j] = fq.add(c[i + j], fq.mul(x, y));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, fq: &Fq, a: FqElem) -> Poly {
        if a == 0 {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|&x| fq.mul(x, a)).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    /// (quotient, remainder) with divisor nonzero.
    pub fn divrem(&self, fq: &Fq, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.deg() < d.deg() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.deg() as usize;
        let lead_inv = fq.inv(d.lc());
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = fq.mul(r[i], lead_inv);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (k, &dc) in d.c.iter().enumerate() {
                r[i - dd + k] = fq.sub(r[i - dd + k], fq.mul(coef, dc));
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, fq: &Fq, d: &Poly) -> Poly {
        self.divrem(fq, d).1
    }

    /// Exact division; None if the remainder is nonzero.
    pub fn div_exact(&self, fq: &Fq, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(fq, d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, fq: &Fq, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(fq, self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, fq: &Fq, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(fq, &b);
            a = b;
            b = r;
        }
        a.monic(fq).0
    }

    /// (monic part, leading unit); zero maps to (0, 1).
    pub fn monic(&self, fq: &Fq) -> (Poly, FqElem) {
        if self.is_zero() {
            return (Poly::zero(), 1);
        }
        let u = self.lc();
        (self.scale(fq, fq.inv(u)), u)
    }

    pub fn eval(&self, fq: &Fq, x: FqElem) -> FqElem {
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = fq.add(fq.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, fq: &Fq) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| fq.mul(fq.from_int(i as i64), a))
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, fq: &Fq, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(fq, &base);
            }
            base = base.mul(fq, &base);
            e >>= 1;
        }
        acc
    }

    pub fn powmod(&self, fq: &Fq, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(fq, m);
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(fq, &base).rem(fq, m);
            }
            base = base.mul(fq, &base).rem(fq, m);
            e >>= 1;
        }
        acc
    }

    /// Multiplicity of the monic irreducible `p` in `self` (self nonzero).
    pub fn ord_at(&self, fq: &Fq, p: &Poly) -> i64 {
        assert!(!self.is_zero());
        let mut n = 0;
        let mut f = self.clone();
        loop {
            match f.div_exact(fq, p) {
                Some(g) => {
                    n += 1;
                    f = g;
                }
                None => return n,
            }
        }
    }

    /// Canonical ordering: by degree, then coefficients from the top.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }

    pub fn render(&self, fq: &Fq) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = fq.elem_str(c);
            let needs_paren = cs.contains('+') || cs.contains('*') || cs.contains('^');
            let cs = if needs_paren { format!("({cs})") } else { cs };
            let term = match i {
                0 => cs,
                1 if cs == "1" => "t".to_string(),
                1 => format!("{cs}*t"),
                _ if cs == "1" => format!("t^{i}"),
                _ => format!("{cs}*t^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

/// Iterate all polynomials of degree exactly `d` (monic only if `monic`).
pub fn polys_of_degree(fq: &Fq, d: usize, monic: bool) -> Vec<Poly> {
    let q = fq.q;
    let mut out = Vec::new();
    let lead_choices: Vec<FqElem> = if monic {
        vec![1]
    } else {
        (1..q as u32).collect()
    };
    let count = q.pow(d as u32);
    for &lead in &lead_choices {
        for enc in 0..count {
            let mut c = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..d {
                c.push((e % q) as u32);
                e /= q;
            }
            c.push(lead);
            out.push(Poly { c });
        }
    }
    out
}

/// All monic polynomials of degree <= d, ascending by degree.
pub fn monic_polys_up_to(fq: &Fq, d: usize) -> Vec<Poly> {
    let mut v = vec![Poly::one()];
    for k in 1..=d {
        v.extend(polys_of_degree(fq, k, true));
    }
    v
}

/// Irreducibility over F_q via gcd with t^{q^i} - t for i <= deg/2.
pub fn is_irreducible(fq: &Fq, f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return domain("irreducibility of the zero polynomial is undefined");
    }
    let d = f.deg();
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    if f.derivative(fq).is_zero() {
        return Ok(false); // p-th power
    }
    if f.gcd(fq, &f.derivative(fq)).deg() > 0 {
        return Ok(false);
    }
    let mut xq = Poly::t();
    for _ in 1..=(d / 2) {
        xq = xq.powmod(fq, fq.q, f);
        let diff = xq.sub(fq, &Poly::t());
        if f.gcd(fq, &diff).deg() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

type IrredKey = (u64, u32, Vec<u64>, usize);
static IRRED_CACHE: OnceLock<Mutex<HashMap<IrredKey, Arc<Vec<Poly>>>>> = OnceLock::new();

/// All monic irreducibles of degree exactly d, cached per field.
pub fn irreducibles(fq: &Fq, d: usize) -> Arc<Vec<Poly>> {
    let key = (fq.p, fq.r, fq.modulus.clone(), d);
    let cache = IRRED_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v: Vec<Poly> = polys_of_degree(fq, d, true)
        .into_iter()
        .filter(|f| is_irreducible(fq, f).unwrap())
        .collect();
    let v = Arc::new(v);
    cache.lock().unwrap().insert(key, v.clone());
    v
}

pub fn irreducibles_up_to(fq: &Fq, d: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for k in 1..=d {
        out.extend(irreducibles(fq, k).iter().cloned());
    }
    out
}

/// Factorization of a nonzero polynomial into (unit, [(monic irreducible, exponent)]),
/// by trial division in canonical order.
pub fn factor(fq: &Fq, f: &Poly) -> (FqElem, Vec<(Poly, u32)>) {
    assert!(!f.is_zero());
    let (mut m, unit) = f.monic(fq);
    let mut out = Vec::new();
    let mut d = 1;
    while m.deg() > 0 {
        if d as i64 * 2 > m.deg() {
            out.push((m.clone(), 1));
            break;
        }
        for p in irreducibles(fq, d).iter() {
            if m.deg() < p.deg() {
                break;
            }
            let mut e = 0;
            while let Some(g) = m.div_exact(fq, p) {
                m = g;
                e += 1;
            }
            if e > 0 {
                out.push((p.clone(), e));
            }
        }
        d += 1;
    }
    (unit, out)
}

pub fn is_squarefree(fq: &Fq, f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.deg() == 0 {
        return true;
    }
    let d = f.derivative(fq);
    if d.is_zero() {
        return false;
    }
    f.gcd(fq, &d).deg() == 0
}

/// Exact square root in F_q[t] when one exists; the leading coefficient of
/// the result is the canonical square root of lc(f).
pub fn poly_sqrt(fq: &Fq, f: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(Poly::zero());
    }
    if f.deg() % 2 != 0 {
        return None;
    }
    let lead_sqrt = fq.sqrt(f.lc())?;
    let (unit, factors) = factor(fq, f);
    debug_assert_eq!(unit, f.lc());
    let mut root = Poly::constant(lead_sqrt);
    for (p, e) in factors {
        if e % 2 != 0 {
            return None;
        }
        root = root.mul(fq, &p.pow(fq, (e / 2) as u64));
    }
    debug_assert_eq!(root.mul(fq, &root), *f);
    Some(root)
}

/// An element of k = F_q(t) in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    pub fn one() -> RatFunc {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
    pub fn from_int(fq: &Fq, n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::constant(fq.from_int(n)))
    }
    pub fn new(fq: &Fq, num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(fq, &den);
        let mut num = num.div_exact(fq, &g).unwrap();
        let mut den = den.div_exact(fq, &g).unwrap();
        let (dm, u) = den.monic(fq);
        den = dm;
        num = num.scale(fq, fq.inv(u));
        RatFunc { num, den }
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }
    pub fn add(&self, fq: &Fq, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            fq,
            self.num
                .mul(fq, &o.den)
                .add(fq, &o.num.mul(fq, &self.den)),
            self.den.mul(fq, &o.den),
        )
    }
    pub fn neg(&self, fq: &Fq) -> RatFunc {
        RatFunc {
            num: self.num.neg(fq),
            den: self.den.clone(),
        }
    }
    pub fn sub(&self, fq: &Fq, o: &RatFunc) -> RatFunc {
        self.add(fq, &o.neg(fq))
    }
    pub fn mul(&self, fq: &Fq, o: &RatFunc) -> RatFunc {
        RatFunc::new(fq, self.num.mul(fq, &o.num), self.den.mul(fq, &o.den))
    }
    pub fn inv(&self, fq: &Fq) -> RatFunc {
        assert!(!self.is_zero(), "inverting zero");
        RatFunc::new(fq, self.den.clone(), self.num.clone())
    }
    pub fn div(&self, fq: &Fq, o: &RatFunc) -> RatFunc {
        self.mul(fq, &o.inv(fq))
    }
    pub fn pow(&self, fq: &Fq, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv(fq) } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(fq, &base);
        }
        acc
    }
    pub fn square(&self, fq: &Fq) -> RatFunc {
        self.mul(fq, self)
    }

    /// deg num - deg den; ord_infinity = -this.
    pub fn total_deg(&self) -> i64 {
        self.num.deg() - self.den.deg()
    }

    /// Reduce modulo a monic irreducible P coprime to the denominator.
    pub fn reduce_mod(&self, fq: &Fq, p: &Poly) -> Option<Poly> {
        let dn = self.den.rem(fq, p);
        if dn.is_zero() {
            return None;
        }
        let inv = poly_inverse_mod(fq, &dn, p)?;
        Some(self.num.rem(fq, p).mul(fq, &inv).rem(fq, p))
    }

    pub fn render(&self, fq: &Fq) -> String {
        if self.is_poly() {
            self.num.render(fq)
        } else {
            format!("({})/({})", self.num.render(fq), self.den.render(fq))
        }
    }
}

/// Inverse of a mod m (monic m, gcd(a,m)=1) by extended Euclid.
pub fn poly_inverse_mod(fq: &Fq, a: &Poly, m: &Poly) -> Option<Poly> {
    let (mut r0, mut r1) = (m.clone(), a.rem(fq, m));
    let (mut s0, mut s1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r2) = r0.divrem(fq, &r1);
        let s2 = s0.sub(fq, &q.mul(fq, &s1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if r0.deg() != 0 {
        return None; // not coprime
    }
    Some(s0.scale(fq, fq.inv(r0.lc())).rem(fq, m))
}
