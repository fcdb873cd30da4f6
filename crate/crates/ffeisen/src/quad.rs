//! The quadratic extension K = k(√D), place splitting, the quadratic
//! character χ_K = (·, D), local Hilbert symbols, Hasse invariants, and the
//! incoherent space C_K^(α) together with its set Diff(β, C).

use crate::error::{domain, internal, Result};
use crate::fq::Fq;
use crate::places::{legendre, legendre_unit, ord_at, support_places, Idele, Place};
use crate::poly::{factor, is_squarefree, Poly, RatFunc};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

/// K = k(√D) for squarefree D of degree >= 1, "imaginary" in the sense that
/// the place at infinity does not split: deg D odd (infinity ramified) or
/// deg D even with non-square leading coefficient (infinity inert).
#[derive(Clone, Debug)]
pub struct QuadExt {
    pub fq: Arc<Fq>,
    pub d: Poly,
    /// Monic irreducible factors of D: the finite ramified places.
    pub ram_primes: Vec<Poly>,
}

impl QuadExt {
    pub fn new(fq: Arc<Fq>, d: Poly) -> Result<QuadExt> {
        if d.deg() < 1 {
            return domain("D must have degree >= 1 (constant-field extensions are excluded)");
        }
        if !is_squarefree(&fq, &d) {
            return domain("D must be squarefree");
        }
        if d.deg() % 2 == 0 && fq.is_square(d.lc()) {
            return domain("infinity splits in k(sqrt D): D has even degree and square leading coefficient");
        }
        let (_, fac) = factor(&fq, &d);
        let ram_primes = fac.into_iter().map(|(p, _)| p).collect();
        Ok(QuadExt { fq, d, ram_primes })
    }

    /// Genus of K: (deg D - 1)/2 for odd degree, deg D/2 - 1 for even.
    pub fn genus(&self) -> i64 {
        let d = self.d.deg();
        if d % 2 == 1 {
            (d - 1) / 2
        } else {
            d / 2 - 1
        }
    }

    /// Residue degree of infinity in K/k: 1 if ramified, 2 if inert.
    pub fn f_inf(&self) -> i64 {
        match self.splitting_type(&Place::Infinity) {
            SplittingType::Ramified => 1,
            SplittingType::Inert => 2,
            SplittingType::Split => unreachable!("imaginary K"),
        }
    }

    pub fn splitting_type(&self, v: &Place) -> SplittingType {
        match v {
            Place::Finite(p) => {
                if self.ram_primes.contains(p) {
                    SplittingType::Ramified
                } else {
                    match legendre(&self.fq, &self.d, v).unwrap() {
                        1 => SplittingType::Split,
                        -1 => SplittingType::Inert,
                        _ => unreachable!("D is a unit away from its support"),
                    }
                }
            }
            Place::Infinity => {
                if self.d.deg() % 2 == 1 {
                    SplittingType::Ramified
                } else {
                    SplittingType::Inert
                }
            }
        }
    }

    /// χ_{K,v}(a) = (a, D)_v for a in k^×.
    pub fn chi_v(&self, v: &Place, a: &RatFunc) -> Result<i8> {
        if a.is_zero() {
            return domain("chi_v of zero");
        }
        hilbert_symbol(&self.fq, a, &RatFunc::from_poly(self.d.clone()), v)
    }

    /// χ_K(y) = prod_v (y_v, D)_v; only the support contributes.
    pub fn chi_global(&self, y: &Idele) -> Result<i8> {
        let mut s = 1i8;
        for v in y.support() {
            let c = y.component(v);
            s *= self.chi_v(v, &c)?;
        }
        Ok(s)
    }

    /// One representative square root of D modulo a split prime P, chosen
    /// canonically (smaller encoding of the two roots).
    pub fn sqrt_d_mod(&self, p: &Poly) -> Result<Poly> {
        let fq = &self.fq;
        let d = self.d.rem(fq, p);
        let r = poly_sqrt_mod(fq, &d, p)?;
        let other = r.neg(fq).rem(fq, p);
        Ok(if r.cmp_canonical(&other) == std::cmp::Ordering::Greater {
            other
        } else {
            r
        })
    }
}

/// Square root in the residue field F_q[t]/(P) by Tonelli–Shanks.
pub fn poly_sqrt_mod(fq: &Fq, a: &Poly, p: &Poly) -> Result<Poly> {
    let a = a.rem(fq, p);
    if a.is_zero() {
        return Ok(Poly::zero());
    }
    let qp = fq.q.pow(p.deg() as u32);
    if legendre(fq, &a, &Place::Finite(p.clone()))? != 1 {
        return domain("not a square in the residue field");
    }
    if qp % 4 == 3 {
        return Ok(a.powmod(fq, (qp + 1) / 4, p));
    }
    // Tonelli–Shanks: q_p - 1 = 2^s * m
    let mut m = qp - 1;
    let mut s = 0u32;
    while m.is_multiple_of(2) {
        m /= 2;
        s += 1;
    }
    // a quadratic non-residue in the residue field
    let mut z = Poly::zero();
    'outer: for d in 0..=p.deg() as usize {
        for cand in crate::poly::polys_of_degree(fq, d, false) {
            if cand.rem(fq, p).is_zero() {
                continue;
            }
            if legendre(fq, &cand, &Place::Finite(p.clone()))? == -1 {
                z = cand;
                break 'outer;
            }
        }
    }
    if z.is_zero() {
        return internal("no quadratic non-residue found");
    }
    let mut c = z.powmod(fq, m, p);
    let mut x = a.powmod(fq, m.div_ceil(2), p);
    let mut tt = a.powmod(fq, m, p);
    let mut r = s;
    while !tt.is_one() {
        // smallest i with tt^{2^i} = 1
        let mut i = 0;
        let mut t2 = tt.clone();
        while !t2.is_one() {
            t2 = t2.mul(fq, &t2).rem(fq, p);
            i += 1;
            if i == r {
                return internal("Tonelli-Shanks failed");
            }
        }
        let mut b = c.clone();
        for _ in 0..(r - i - 1) {
            b = b.mul(fq, &b).rem(fq, p);
        }
        x = x.mul(fq, &b).rem(fq, p);
        c = b.mul(fq, &b).rem(fq, p);
        tt = tt.mul(fq, &c).rem(fq, p);
        r = i;
    }
    Ok(x)
}

/// Local Hilbert quadratic symbol (a, b)_v for odd residue characteristic,
/// by the tame formula: with m = ord_v(a), n = ord_v(b), the symbol is the
/// residue symbol of the unit (-1)^{mn} a^n b^{-m}.
pub fn hilbert_symbol(fq: &Fq, a: &RatFunc, b: &RatFunc, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return domain("Hilbert symbol of zero");
    }
    let m = ord_at(fq, v, a)?;
    let n = ord_at(fq, v, b)?;
    let (ua, ub) = unit_parts(fq, a, b, v, m, n);
    let la = legendre_unit(fq, &ua, v)?;
    let lb = legendre_unit(fq, &ub, v)?;
    // -1 is a square in the residue field iff q_v = 1 mod 4
    let lm1: i8 = if (v.qv(fq) - 1) / 2 % 2 == 1 { -1 } else { 1 };
    let sign_m1 = if (m * n) % 2 != 0 { lm1 } else { 1 };
    let pow = |l: i8, e: i64| if e % 2 == 0 { 1 } else { l };
    Ok(sign_m1 * pow(la, n) * pow(lb, m))
}

fn unit_parts(fq: &Fq, a: &RatFunc, b: &RatFunc, v: &Place, m: i64, n: i64) -> (RatFunc, RatFunc) {
    let pi = match v {
        Place::Finite(p) => RatFunc::from_poly(p.clone()),
        Place::Infinity => RatFunc::new(fq, Poly::one(), Poly::t()),
    };
    (
        a.mul(fq, &pi.pow(fq, -m)),
        b.mul(fq, &pi.pow(fq, -n)),
    )
}

/// Brute-force oracle for the Hilbert symbol: solvability of
/// a X^2 + b Y^2 = Z^2 in primitive triples over O_v/pi_v^3. Only for
/// q_v <= 9.
pub fn hilbert_symbol_brute(fq: &Arc<Fq>, a: &RatFunc, b: &RatFunc, v: &Place) -> Result<i8> {
    if v.qv(fq) > 9 {
        return domain("brute-force Hilbert oracle gated to q_v <= 9");
    }
    let m = ord_at(fq, v, a)?.rem_euclid(2);
    let n = ord_at(fq, v, b)?.rem_euclid(2);
    let oa = ord_at(fq, v, a)?;
    let ob = ord_at(fq, v, b)?;
    let (ua, ub) = unit_parts(fq, a, b, v, oa, ob);

    // model O_v/pi^3 as polynomials in pi of degree < 3 over the residue field
    let model = crate::local::LocalModel::new(fq.clone(), v.clone(), 8, None)?;
    let to3 = |u: &RatFunc, shift: i64| -> Vec<u32> {
        let (ord, digs) = model.embed(u).unwrap();
        assert_eq!(ord, 0);
        let mut d = vec![0u32; 3];
        for i in 0..3usize {
            let j = i as i64 - shift;
            if j >= 0 {
                d[i] = digs.get(j as usize).copied().unwrap_or(0);
            } else {
                d[i] = 0;
            }
        }
        // shifting by pi^shift: multiply series by pi^shift
        d
    };
    let av = to3(&ua, m);
    let bv = to3(&ub, n);
    let rf = model.resf();

    let ring_mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; 3];
        for i in 0..3 {
            for j in 0..3 - i {
                out[i + j] = rf.add(out[i + j], rf.mul(x[i], y[j]));
            }
        }
        out
    };
    let ring_add = |x: &[u32], y: &[u32]| -> Vec<u32> {
        (0..3).map(|i| rf.add(x[i], y[i])).collect()
    };

    // enumerate residues
    let qv = rf.q as u32;
    let residues: Vec<Vec<u32>> = {
        let mut v = Vec::with_capacity((qv as usize).pow(3));
        for c0 in 0..qv {
            for c1 in 0..qv {
                for c2 in 0..qv {
                    v.push(vec![c0, c1, c2]);
                }
            }
        }
        v
    };
    use std::collections::HashSet;
    let mut squares: HashSet<Vec<u32>> = HashSet::new();
    let mut unit_squares: HashSet<Vec<u32>> = HashSet::new();
    for z in &residues {
        let s = ring_mul(z, z);
        squares.insert(s.clone());
        if z[0] != 0 {
            unit_squares.insert(s);
        }
    }
    for x in &residues {
        let ax2 = ring_mul(&av, &ring_mul(x, x));
        for y in &residues {
            let w = ring_add(&ax2, &ring_mul(&bv, &ring_mul(y, y)));
            let primitive_xy = x[0] != 0 || y[0] != 0;
            if primitive_xy {
                if squares.contains(&w) {
                    return Ok(1);
                }
            } else if unit_squares.contains(&w) {
                return Ok(1);
            }
        }
    }
    Ok(-1)
}

/// Hasse invariant of a diagonal quadratic form: prod_{i<j} (c_i, c_j)_v.
pub fn hasse_invariant(fq: &Fq, coeffs: &[RatFunc], v: &Place) -> Result<i8> {
    if coeffs.iter().any(|c| c.is_zero()) {
        return domain("Hasse invariant needs nonzero diagonal coefficients");
    }
    let mut s = 1i8;
    for i in 0..coeffs.len() {
        for j in i + 1..coeffs.len() {
            s *= hilbert_symbol(fq, &coeffs[i], &coeffs[j], v)?;
        }
    }
    Ok(s)
}

/// The incoherent quadratic space C_K^(α): locally (K_v, ε_v α N_{K/k}) with
/// ε_v = 1 at finite places and (ε_∞, D)_∞ = -1.
#[derive(Clone, Debug)]
pub struct IncoherentSpace {
    pub quad: QuadExt,
    pub alpha: RatFunc,
    pub eps_inf: RatFunc,
}

impl IncoherentSpace {
    pub fn new(quad: QuadExt, alpha: RatFunc, eps_override: Option<RatFunc>) -> Result<IncoherentSpace> {
        if alpha.is_zero() {
            return domain("alpha must be nonzero");
        }
        let fq = quad.fq.clone();
        let d = RatFunc::from_poly(quad.d.clone());
        let eps_inf = match eps_override {
            Some(e) => {
                if hilbert_symbol(&fq, &e, &d, &Place::Infinity)? != -1 {
                    return domain("(eps_inf, D)_inf must be -1");
                }
                e
            }
            None => {
                // search a short list of global candidates
                let c0 = RatFunc::from_poly(Poly::constant(fq.generator));
                let t = RatFunc::from_poly(Poly::t());
                let cands = vec![c0.clone(), t.clone(), c0.mul(&fq, &t), t.inv(&fq)];
                cands
                    .into_iter()
                    .find(|e| hilbert_symbol(&fq, e, &d, &Place::Infinity).unwrap() == -1)
                    .ok_or_else(|| {
                        crate::error::Error::Internal(
                            "no candidate eps_inf with (eps_inf, D)_inf = -1".into(),
                        )
                    })?
            }
        };
        let sp = IncoherentSpace {
            quad,
            alpha,
            eps_inf,
        };
        if !sp.is_incoherent()? {
            return internal("constructed space is not incoherent");
        }
        Ok(sp)
    }

    pub fn fq(&self) -> &Arc<Fq> {
        &self.quad.fq
    }

    /// ε_v α as a global element standing in for the local scaling at v.
    pub fn alpha_eps(&self, v: &Place) -> RatFunc {
        match v {
            Place::Infinity => self.alpha.mul(&self.quad.fq, &self.eps_inf),
            Place::Finite(_) => self.alpha.clone(),
        }
    }

    /// Hasse_v(C_v) = (ε_v α, D)_v: the binary space (K_v, cN) diagonalizes
    /// as [c, -cD] and (c, -c)_v = 1.
    pub fn hasse_at(&self, v: &Place) -> Result<i8> {
        let fq = &self.quad.fq;
        hilbert_symbol(
            fq,
            &self.alpha_eps(v),
            &RatFunc::from_poly(self.quad.d.clone()),
            v,
        )
    }

    /// Places where local invariants can differ from the generic +1.
    pub fn relevant_places(&self, extra: &[&RatFunc]) -> Vec<Place> {
        let fq = &self.quad.fq;
        let mut set: BTreeSet<Place> = BTreeSet::new();
        for p in &self.quad.ram_primes {
            set.insert(Place::Finite(p.clone()));
        }
        for f in [&self.alpha, &self.eps_inf].into_iter().chain(extra.iter().copied()) {
            for v in support_places(fq, f) {
                set.insert(v);
            }
        }
        set.insert(Place::Infinity);
        set.into_iter().collect()
    }

    /// Incoherence: prod_v Hasse_v(C_v) = -1 (the product formula fails).
    pub fn is_incoherent(&self) -> Result<bool> {
        let mut s = 1i8;
        for v in self.relevant_places(&[]) {
            s *= self.hasse_at(&v)?;
        }
        Ok(s == -1)
    }

    /// Diff(β, C) = { v : Hasse_v(C_v) != χ_{K,v}(β) }, computed both from
    /// the Hasse-invariant form and from the norm-form characterization
    /// { v : χ_{K,v}(β/(α ε_v)) = -1 }; the two must agree and the
    /// cardinality must be odd.
    pub fn diff_set(&self, beta: &RatFunc) -> Result<BTreeSet<Place>> {
        if beta.is_zero() {
            return domain("diff_set needs beta != 0");
        }
        let fq = &self.quad.fq;
        let mut out = BTreeSet::new();
        for v in self.relevant_places(&[beta]) {
            let hasse = self.hasse_at(&v)?;
            let chib = self.quad.chi_v(&v, beta)?;
            let in_diff = hasse != chib;
            // norm-form route: beta * alpha * eps_v differs from
            // beta/(alpha eps_v) by a square
            let bae = beta.mul(fq, &self.alpha_eps(&v));
            let in_diff2 = self.quad.chi_v(&v, &bae)? == -1;
            if in_diff != in_diff2 {
                return internal("Diff characterizations disagree");
            }
            if in_diff {
                out.insert(v);
            }
        }
        if out.len() % 2 != 1 {
            return internal(format!(
                "Diff(beta, C) has even cardinality {}",
                out.len()
            ));
        }
        Ok(out)
    }
}
