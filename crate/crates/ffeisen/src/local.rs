//! Local models O_v / π_v^N for the completions of k = F_q(t).
//!
//! Equal characteristic makes the completion a power-series field over the
//! residue field: elements are π-adic digit vectors over F_{q_v} and digit
//! extraction is additive. The additive character of conductor δ_v is
//! ψ_v(x) = ζ_p^{Tr(d_{-δ-1}(x))}, reading the single digit at π^{-δ-1}.
//! Used by the brute-force Whittaker oracle, the Weil index, and the
//! Hilbert-symbol solvability check.

use crate::cyclotomic::Cyc;
use crate::error::{internal, Result};
use crate::fq::{digits, Fq, FqElem};
use crate::places::{ord_at, Place};
use crate::poly::{Poly, RatFunc};
use std::sync::Arc;

/// A Laurent element of k_v known to finite precision: π^{ord} times a unit
/// digit vector (digit 0 nonzero unless the element is 0).
pub type LocalValue = (i64, Vec<FqElem>);

pub struct LocalModel {
    pub fq: Arc<Fq>,
    pub v: Place,
    resf: Arc<Fq>,
    /// F_q -> F_{q_v} embedding table.
    embed_tab: Vec<FqElem>,
    pub n: usize,
    /// Image of t in the ring (finite places only).
    tau: Vec<FqElem>,
    /// The chosen global uniformizer (image = the formal π exactly).
    pub uniformizer: RatFunc,
    /// Scalar c with π = c/t at infinity (unused at finite places).
    inf_scale: FqElem,
}

impl LocalModel {
    /// Build a model of O_v/π^n. If no uniformizer is supplied, use P at a
    /// finite place and 1/t at infinity.
    pub fn new(fq: Arc<Fq>, v: Place, n: usize, uniformizer: Option<RatFunc>) -> Result<LocalModel> {
        match &v {
            Place::Finite(p) => {
                let d = p.deg() as u32;
                let resf = if d == 1 {
                    fq.clone()
                } else {
                    Fq::extension(fq.p, fq.r * d, None)?
                };
                let embed_tab = subfield_embedding(&fq, &resf)?;
                let unif = uniformizer.unwrap_or_else(|| RatFunc::from_poly(p.clone()));
                // check the uniformizer really has valuation 1
                if ord_at(&fq, &v, &unif)? != 1 {
                    return crate::error::domain("uniformizer must have valuation 1");
                }
                let mut m = LocalModel {
                    fq,
                    v: v.clone(),
                    resf,
                    embed_tab,
                    n,
                    tau: vec![],
                    uniformizer: unif,
                    inf_scale: 1,
                };
                m.tau = m.lift_t()?;
                Ok(m)
            }
            Place::Infinity => {
                let unif = uniformizer
                    .unwrap_or_else(|| RatFunc::new(&fq, Poly::one(), Poly::t()));
                if ord_at(&fq, &v, &unif)? != 1 {
                    return crate::error::domain("uniformizer must have valuation 1");
                }
                // accept only c/t so that t = c/π exactly
                let c = if unif.num.is_constant() && unif.den == Poly::t() {
                    unif.num.coeff(0)
                } else {
                    return crate::error::domain("infinity uniformizer must be c/t");
                };
                let embed_tab = (0..fq.q as u32).collect();
                Ok(LocalModel {
                    fq: fq.clone(),
                    v,
                    resf: fq,
                    embed_tab,
                    n,
                    tau: vec![],
                    uniformizer: unif,
                    inf_scale: c,
                })
            }
        }
    }

    pub fn resf(&self) -> &Arc<Fq> {
        &self.resf
    }

    pub fn qv(&self) -> u64 {
        self.resf.q
    }

    fn embed_scalar(&self, a: FqElem) -> FqElem {
        self.embed_tab[a as usize]
    }

    pub fn ring_zero(&self) -> Vec<FqElem> {
        vec![0; self.n]
    }

    pub fn ring_add(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        (0..self.n)
            .map(|i| {
                self.resf.add(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect()
    }

    pub fn ring_mul(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let mut out = vec![0; self.n];
        for i in 0..self.n.min(a.len()) {
            if a[i] == 0 {
                continue;
            }
            for j in 0..(self.n - i).min(b.len()) {
                if b[j] == 0 {
                    continue;
                }
                out[i + j] = self.resf.add(out[i + j], self.resf.mul(a[i], b[j]));
            }
        }
        out
    }

    pub fn ring_neg(&self, a: &[FqElem]) -> Vec<FqElem> {
        (0..self.n)
            .map(|i| self.resf.neg(a.get(i).copied().unwrap_or(0)))
            .collect()
    }

    /// Inverse of a unit (digit 0 nonzero), digit by digit.
    pub fn ring_inv(&self, a: &[FqElem]) -> Vec<FqElem> {
        assert!(a[0] != 0, "inverting a non-unit");
        let inv0 = self.resf.inv(a[0]);
        let mut b = vec![0; self.n];
        b[0] = inv0;
        for k in 1..self.n {
            let mut acc = 0;
            for i in 1..=k.min(a.len() - 1) {
                acc = self.resf.add(acc, self.resf.mul(a[i], b[k - i]));
            }
            b[k] = self.resf.neg(self.resf.mul(inv0, acc));
        }
        b
    }

    /// Evaluate a polynomial with F_q coefficients at a ring element.
    fn eval_poly(&self, g: &Poly, x: &[FqElem]) -> Vec<FqElem> {
        let mut acc = self.ring_zero();
        for &c in g.c.iter().rev() {
            acc = self.ring_mul(&acc, x);
            acc[0] = self.resf.add(acc[0], self.embed_scalar(c));
        }
        acc
    }

    /// Hensel-lift the image of t so that the chosen uniformizer maps to the
    /// formal π exactly: solve unif(τ) = π by Newton from τ ≡ θ mod π, with
    /// θ a root of P in the residue field.
    fn lift_t(&self) -> Result<Vec<FqElem>> {
        let p = match &self.v {
            Place::Finite(p) => p,
            _ => unreachable!(),
        };
        // root of P in the residue field, canonical (smallest encoding)
        let mut theta = None;
        for cand in self.resf.elements() {
            let mut acc = 0;
            for &c in p.c.iter().rev() {
                acc = self.resf.add(self.resf.mul(acc, cand), self.embed_scalar(c));
            }
            if acc == 0 {
                theta = Some(cand);
                break;
            }
        }
        let theta = theta.ok_or_else(|| {
            crate::error::Error::Internal("no root of P in residue field".into())
        })?;
        // F(x) = num(x) - π * den(x) where unif = num/den; F(τ)=0
        let num = &self.uniformizer.num;
        let den = &self.uniformizer.den;
        let mut tau = self.ring_zero();
        tau[0] = theta;
        let pi = {
            let mut z = self.ring_zero();
            if self.n > 1 {
                z[1] = 1;
            }
            z
        };
        let dnum = num.derivative(&self.fq);
        let dden = den.derivative(&self.fq);
        // Newton: τ <- τ - F(τ)/F'(τ)
        let steps = (usize::BITS - self.n.leading_zeros()) as usize + 2;
        for _ in 0..steps {
            let fnum = self.eval_poly(num, &tau);
            let fden = self.eval_poly(den, &tau);
            let fval = self.ring_add(&fnum, &self.ring_neg(&self.ring_mul(&pi, &fden)));
            let d1 = self.eval_poly(&dnum, &tau);
            let d2 = self.ring_mul(&pi, &self.eval_poly(&dden, &tau));
            let fder = self.ring_add(&d1, &self.ring_neg(&d2));
            if fder[0] == 0 {
                return internal("Newton derivative not a unit while lifting t");
            }
            let corr = self.ring_mul(&fval, &self.ring_inv(&fder));
            tau = self.ring_add(&tau, &self.ring_neg(&corr));
        }
        // verify
        let fnum = self.eval_poly(num, &tau);
        let fden = self.eval_poly(den, &tau);
        let err = self.ring_add(&fnum, &self.ring_neg(&self.ring_mul(&pi, &fden)));
        if err.iter().any(|&d| d != 0) {
            return internal("uniformizer lift did not converge");
        }
        Ok(tau)
    }

    /// Expand a nonzero global element: f = π^{ord} * unit.
    pub fn embed(&self, f: &RatFunc) -> Result<LocalValue> {
        assert!(!f.is_zero());
        match &self.v {
            Place::Finite(_) => {
                let j = ord_at(&self.fq, &self.v, f)?;
                let funit = f.mul(&self.fq, &self.uniformizer.pow(&self.fq, -j));
                let nu = self.eval_poly(&funit.num, &self.tau);
                let de = self.eval_poly(&funit.den, &self.tau);
                if nu[0] == 0 || de[0] == 0 {
                    return internal("unit part embedded as a non-unit");
                }
                Ok((j, self.ring_mul(&nu, &self.ring_inv(&de))))
            }
            Place::Infinity => {
                // t = c/π exactly
                let expand = |g: &Poly| -> (i64, Vec<FqElem>) {
                    let d = g.deg();
                    let mut digs = self.ring_zero();
                    for k in 0..self.n {
                        let i = d - k as i64;
                        if i < 0 {
                            break;
                        }
                        let coef = g.coeff(i as usize);
                        let cpow = self.resf.pow(self.inf_scale, i as u64);
                        digs[k] = self.resf.mul(coef, cpow);
                    }
                    (-d, digs)
                };
                let (on, nu) = expand(&f.num);
                let (od, de) = expand(&f.den);
                if nu[0] == 0 || de[0] == 0 {
                    return internal("leading digit vanished at infinity");
                }
                Ok((on - od, self.ring_mul(&nu, &self.ring_inv(&de))))
            }
        }
    }

    /// Multiply two local values.
    pub fn val_mul(&self, a: &LocalValue, b: &LocalValue) -> LocalValue {
        (a.0 + b.0, self.ring_mul(&a.1, &b.1))
    }

    /// ψ_v of π^{ord} * digit-vector, for a character of conductor δ:
    /// the digit at π^{-δ-1}.
    pub fn psi(&self, delta: i64, ord: i64, digits: &[FqElem]) -> Result<Cyc> {
        let p = self.fq.p;
        let idx = (-delta - 1) - ord;
        if idx < 0 {
            return Ok(Cyc::one(p));
        }
        let idx = idx as usize;
        if idx >= self.n {
            return internal("local model precision too small for psi");
        }
        let d = digits.get(idx).copied().unwrap_or(0);
        Ok(Cyc::root(p, self.resf.trace_to_fp(d)))
    }

    /// ψ as a root-of-unity index (exponent of ζ_p), same conventions.
    pub fn psi_index(&self, delta: i64, ord: i64, digits: &[FqElem]) -> Result<u64> {
        let idx = (-delta - 1) - ord;
        if idx < 0 {
            return Ok(0);
        }
        let idx = idx as usize;
        if idx >= self.n {
            return internal("local model precision too small for psi");
        }
        Ok(self.resf.trace_to_fp(digits.get(idx).copied().unwrap_or(0)))
    }

    /// Iterate digit vectors of length m (all residues of O/π^m).
    pub fn residues(&self, m: usize) -> ResidueIter {
        ResidueIter {
            q: self.resf.q as u32,
            m,
            next: Some(vec![0; m]),
        }
    }

    /// χ_{K,v} on a unit for a finite or infinite place ramified in K:
    /// the residue symbol of the leading digit.
    pub fn chi_ram_unit(&self, u: &[FqElem]) -> i8 {
        self.resf.legendre(u[0])
    }

    /// ∫_{π^{-M}O} ψ(c x²) dx in units of vol(O_v): the raw one-dimensional
    /// Gauss integral entering the Weil index. Stabilized in M (asserted).
    pub fn raw_quadratic_integral(&self, delta: i64, c: &LocalValue, mscale: i64) -> Result<Cyc> {
        let value = |m: i64| -> Result<Cyc> {
            let kk = (m - delta - c.0 + 1).max(1);
            let total = (m + kk) as usize;
            if total > self.n {
                return internal("precision too small for raw quadratic integral");
            }
            let p = self.fq.p;
            let mut counts = vec![0i64; p as usize];
            for x in self.residues(total) {
                // x = π^{-m} * X
                let x2 = self.ring_mul(&x, &x);
                let prod = self.ring_mul(&c.1, &x2);
                let j = self.psi_index(delta, c.0 - 2 * m, &prod)?;
                counts[j as usize] += 1;
            }
            let mut acc = Cyc::zero(p);
            let norm = crate::rational::qq_pow(self.resf.q, -kk);
            for (j, &cnt) in counts.iter().enumerate() {
                if cnt != 0 {
                    acc = acc.add(
                        &Cyc::root(p, j as u64).scale(&(crate::rational::qq(cnt) * norm.clone())),
                    );
                }
            }
            Ok(acc)
        };
        let m0 = mscale.max(0) + 1;
        let a = value(m0)?;
        let b = value(m0 + 1)?;
        if a != b {
            return internal("Weil-index integral did not stabilize");
        }
        Ok(a)
    }
}

pub struct ResidueIter {
    q: u32,
    m: usize,
    next: Option<Vec<FqElem>>,
}

impl Iterator for ResidueIter {
    type Item = Vec<FqElem>;
    fn next(&mut self) -> Option<Vec<FqElem>> {
        let cur = self.next.clone()?;
        // increment
        let mut nxt = cur.clone();
        let mut i = 0;
        loop {
            if i == self.m {
                self.next = None;
                break;
            }
            nxt[i] += 1;
            if nxt[i] < self.q {
                self.next = Some(nxt);
                break;
            }
            nxt[i] = 0;
            i += 1;
        }
        Some(cur)
    }
}

/// Table embedding F_q into F_{q_v}: the image of each base element through
/// a fixed root of the base modulus.
fn subfield_embedding(base: &Fq, big: &Fq) -> Result<Vec<FqElem>> {
    if base.q == big.q {
        return Ok((0..base.q as u32).collect());
    }
    assert_eq!(base.p, big.p);
    // find a root of the base modulus inside big
    let modpoly: Vec<FqElem> = base.modulus.iter().map(|&c| c as u32).collect();
    let mut root = None;
    for cand in big.elements() {
        let mut acc = 0;
        for &c in modpoly.iter().rev() {
            acc = big.add(big.mul(acc, cand), c); // coefficients are F_p values
        }
        if acc == 0 {
            root = Some(cand);
            break;
        }
    }
    let root = root.ok_or_else(|| {
        crate::error::Error::Internal("no root of base modulus in residue field".into())
    })?;
    let mut tab = Vec::with_capacity(base.q as usize);
    for a in 0..base.q as u32 {
        let ds = digits(base.p, base.r, a);
        let mut acc = 0;
        for (i, &d) in ds.iter().enumerate() {
            let term = big.mul(d as u32, big.pow(root, i as u64));
            acc = big.add(acc, term);
        }
        tab.push(acc);
    }
    Ok(tab)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_finite_deg1() {
        let fq = Fq::prime(3).unwrap();
        let v = Place::finite(&fq, Poly::t()).unwrap();
        let m = LocalModel::new(fq.clone(), v, 6, None).unwrap();
        // t itself: ord 1, unit 1
        let (o, d) = m.embed(&RatFunc::from_poly(Poly::t())).unwrap();
        assert_eq!(o, 1);
        assert_eq!(d[0], 1);
        // 1/(1-t) = 1 + t + t^2 + ... at the place t
        let f = RatFunc::new(&fq, Poly::one(), Poly::from_coeffs(vec![1, 2]));
        let (o, d) = m.embed(&f).unwrap();
        assert_eq!(o, 0);
        assert_eq!(&d[..4], &[1, 1, 1, 1]);
    }

    #[test]
    fn embed_finite_deg2() {
        let fq = Fq::prime(3).unwrap();
        let p = Poly::from_coeffs(vec![1, 0, 1]); // t^2+1
        let v = Place::finite(&fq, p.clone()).unwrap();
        let m = LocalModel::new(fq.clone(), v, 5, None).unwrap();
        // P itself maps to π
        let (o, d) = m.embed(&RatFunc::from_poly(p)).unwrap();
        assert_eq!(o, 1);
        assert_eq!(d[0], 1);
        assert!(d[1..].iter().all(|&x| x == 0));
        // t^2 = -1 + π, so t^2+2 = 1 + π
        let f = RatFunc::from_poly(Poly::from_coeffs(vec![2, 0, 1]));
        let (o, d) = m.embed(&f).unwrap();
        assert_eq!(o, 0);
        assert_eq!(d[0], 1);
        assert_eq!(d[1], 1);
    }

    #[test]
    fn embed_infinity() {
        let fq = Fq::prime(3).unwrap();
        let m = LocalModel::new(fq.clone(), Place::Infinity, 6, None).unwrap();
        // t = 1/π
        let (o, d) = m.embed(&RatFunc::from_poly(Poly::t())).unwrap();
        assert_eq!(o, -1);
        assert_eq!(d[0], 1);
        // t/(t+1) = 1/(1+π): digits 1, -1, 1, -1, ...
        let f = RatFunc::new(&fq, Poly::t(), Poly::from_coeffs(vec![1, 1]));
        let (o, d) = m.embed(&f).unwrap();
        assert_eq!(o, 0);
        assert_eq!(&d[..4], &[1, 2, 1, 2]);
    }

    #[test]
    fn psi_conductor() {
        let fq = Fq::prime(3).unwrap();
        let v = Place::finite(&fq, Poly::t()).unwrap();
        let m = LocalModel::new(fq.clone(), v, 6, None).unwrap();
        // delta = 0: psi trivial on O, nontrivial on π^{-1}O
        let one = (0i64, {
            let mut z = m.ring_zero();
            z[0] = 1;
            z
        });
        assert_eq!(m.psi(0, one.0, &one.1).unwrap(), Cyc::one(3));
        let pi_inv = (-1i64, one.1.clone());
        assert_eq!(m.psi(0, pi_inv.0, &pi_inv.1).unwrap(), Cyc::root(3, 1));
        // and the sum over all residues of π^{-1}O/O is zero
        let mut s = Cyc::zero(3);
        for r in m.residues(1) {
            s = s.add(&m.psi(0, -1, &r).unwrap());
        }
        assert!(s.is_zero());
    }

    #[test]
    fn residue_iter_counts() {
        let fq = Fq::prime(3).unwrap();
        let v = Place::finite(&fq, Poly::t()).unwrap();
        let m = LocalModel::new(fq.clone(), v, 4, None).unwrap();
        assert_eq!(m.residues(2).count(), 9);
        assert_eq!(m.residues(0).count(), 1);
    }
}
