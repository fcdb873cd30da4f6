//! The Dirichlet L-function L(s, χ_K) of the quadratic character attached to
//! K = k(√D), as an exact polynomial in u = q^{-s} of degree 2 g_K, computed
//! by brute-force summation over effective divisors and certified by the
//! functional equation. The completed function is
//! L~(s) = q^{g_K s} L(s): L~(s) = L~(1-s).

use crate::error::{domain, internal, Result};
use crate::fq::Fq;
use crate::lnq::LnQValue;
use crate::places::Place;
use crate::poly::{irreducibles_up_to, monic_polys_up_to, Poly};
use crate::quad::{QuadExt, SplittingType};
use crate::rational::{qq, qq_pow, QQ};
use crate::upoly::{UPoly, URat};
use num::traits::{One, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct LData {
    pub l: UPoly,
    pub g_k: i64,
    pub f_inf: i64,
}

/// Euler factor of L(s, χ_K) at v as a rational function in the global u:
/// 1/(1 - χ(π_v) u^{deg v}) at unramified v, 1 at ramified v.
pub fn euler_factor(k: &QuadExt, v: &Place) -> URat {
    let d = v.deg() as usize;
    match k.splitting_type(v) {
        SplittingType::Ramified => URat::one(),
        SplittingType::Split => URat::new(UPoly::one(), UPoly::one().sub(&UPoly::monomial(d))),
        SplittingType::Inert => URat::new(UPoly::one(), UPoly::one().add(&UPoly::monomial(d))),
    }
}

/// ζ_A(s) = Σ_{monic m} u^{deg m} = 1/(1 - q u).
pub fn zeta_a(fq: &Fq) -> URat {
    URat::new(
        UPoly::one(),
        UPoly::one().sub(&UPoly::monomial(1).scale(&qq(fq.q as i64))),
    )
}

/// ζ_v(s) = 1/(1 - u^{deg v}).
pub fn zeta_v(v: &Place) -> URat {
    URat::new(
        UPoly::one(),
        UPoly::one().sub(&UPoly::monomial(v.deg() as usize)),
    )
}

/// Multiplicative χ_K on monic polynomials, memoized via smallest-prime
/// splitting. χ(m) = 0 when m shares a factor with D.
pub struct ChiTable<'a> {
    k: &'a QuadExt,
    memo: HashMap<Poly, i8>,
    primes: Vec<Poly>,
}

impl<'a> ChiTable<'a> {
    pub fn new(k: &'a QuadExt, max_deg: usize) -> ChiTable<'a> {
        ChiTable {
            k,
            memo: HashMap::new(),
            primes: irreducibles_up_to(&k.fq, max_deg),
        }
    }

    pub fn chi(&mut self, m: &Poly) -> i8 {
        if m.deg() == 0 {
            return 1;
        }
        if let Some(&v) = self.memo.get(m) {
            return v;
        }
        let fq = &self.k.fq;
        let mut val = 0i8;
        for p in &self.primes {
            if p.deg() > m.deg() {
                break;
            }
            if let Some(rest) = m.div_exact(fq, p) {
                let cp = match self.k.splitting_type(&Place::Finite(p.clone())) {
                    SplittingType::Ramified => 0,
                    SplittingType::Split => 1,
                    SplittingType::Inert => -1,
                };
                val = if cp == 0 { 0 } else { cp * self.chi(&rest) };
                break;
            }
        }
        self.memo.insert(m.clone(), val);
        val
    }
}

/// L(s, χ_K) by the divisor sum Σ_m χ(m) u^{deg m} over monic m (times the
/// Euler factor at infinity when infinity is unramified), with stabilization
/// and the functional equation asserted.
pub fn dirichlet_l(k: &QuadExt) -> Result<LData> {
    let fq = &k.fq;
    let g = k.genus();
    let inert_inf = matches!(k.splitting_type(&Place::Infinity), SplittingType::Inert);
    // finite part has degree 2g (+1 if the infinity factor is still to be
    // divided out); compute with a safety margin of 2 to detect drift
    let fin_deg = 2 * g + i64::from(inert_inf);
    let bound = (fin_deg + 2) as usize;
    let mut chi = ChiTable::new(k, bound);
    let mut coeffs = vec![0i64; bound + 1];
    for m in monic_polys_up_to(fq, bound) {
        coeffs[m.deg() as usize] += chi.chi(&m) as i64;
    }
    for (d, &c) in coeffs.iter().enumerate() {
        if (d as i64) > fin_deg && c != 0 {
            return internal(format!(
                "finite L-series fails to stabilize: coefficient {c} at degree {d}"
            ));
        }
    }
    let lfin = UPoly::from_coeffs(coeffs.iter().map(|&c| qq(c)).collect());
    let l = if inert_inf {
        // L = L_fin * L_inf = L_fin / (1 + u)
        lfin.div_exact(&UPoly::one().add(&UPoly::u()))
            .ok_or_else(|| {
                crate::error::Error::Internal("finite L-series not divisible by 1+u".into())
            })?
    } else {
        lfin
    };
    if l.deg() != 2 * g {
        return internal(format!("L has degree {} instead of {}", l.deg(), 2 * g));
    }
    if !l.coeff(0).is_one() {
        return internal("L(u) has constant coefficient != 1");
    }
    // functional equation: c_{2g-j} = q^{g-j} c_j
    for j in 0..=(2 * g) as usize {
        let lhs = l.coeff(2 * g as usize - j);
        let rhs = l.coeff(j) * qq_pow(fq.q, g - j as i64);
        if lhs != rhs {
            return internal("functional equation fails for computed L");
        }
    }
    Ok(LData {
        l,
        g_k: g,
        f_inf: k.f_inf(),
    })
}

impl LData {
    /// L(0, χ_K) = L(u = 1), a positive rational for imaginary K.
    pub fn value0(&self) -> Result<QQ> {
        let v = self.l.eval(&QQ::one());
        if v.is_zero() {
            return domain("L(0) = 0: K is not imaginary");
        }
        Ok(v)
    }

    /// L'(0)/L(0) as a multiple of ln q: d/ds = -ln q * u d/du at u = 1.
    pub fn logderiv0(&self) -> Result<LnQValue> {
        let v = self.value0()?;
        let d = self.l.derivative().eval(&QQ::one());
        Ok(LnQValue::new(-d / v))
    }

    /// L'(0) itself as a multiple of ln q.
    pub fn deriv0(&self) -> LnQValue {
        LnQValue::new(-self.l.derivative().eval(&QQ::one()))
    }

    /// The class number #Pic(O_K) = f_inf * L(0) (an integer).
    pub fn class_number(&self) -> Result<u64> {
        let h = self.value0()? * qq(self.f_inf);
        if !h.denom().is_one() {
            return internal("f_inf * L(0) is not an integer");
        }
        let n: num::BigInt = h.numer().clone();
        let n: i64 = n.try_into().map_err(|_| {
            crate::error::Error::Internal("class number does not fit in i64".into())
        })?;
        if n <= 0 {
            return internal("class number must be positive");
        }
        Ok(n as u64)
    }

    /// L~(s) = q^{g s} L(s) as a function of u: u^{-g} L(u).
    pub fn completed(&self) -> URat {
        URat::from_poly(self.l.clone()).mul(&URat::monomial(-self.g_k))
    }

    /// L~(-s): substitute u -> 1/u.
    pub fn completed_neg_s(&self) -> URat {
        self.completed().subst_inv_scale(&QQ::one())
    }

    /// Check L~(s) = L~(1-s): substitute u -> 1/(qu) in the completed form.
    pub fn functional_equation_holds(&self, q: u64) -> bool {
        let lt = self.completed();
        let sub = lt.subst_inv_scale(&(QQ::one() / qq(q as i64)));
        lt == sub
    }
}
