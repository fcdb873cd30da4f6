//! Places of k = F_q(t): the monic irreducible polynomials and the place at
//! infinity (the place of 1/t), together with valuations, residue symbols,
//! the conductor profile of the additive character, and ideles.

use crate::error::{domain, Result};
use crate::fq::{Fq, FqElem};
use crate::poly::{is_irreducible, irreducibles, Poly, RatFunc};
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp_canonical(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl Place {
    /// A finite place must carry a monic irreducible polynomial.
    pub fn finite(fq: &Fq, p: Poly) -> Result<Place> {
        if p.is_zero() || !p.is_monic() {
            return domain("a finite place needs a monic nonzero polynomial");
        }
        if !is_irreducible(fq, &p)? {
            return domain(format!("{} is not irreducible", p.render(fq)));
        }
        Ok(Place::Finite(p))
    }

    pub fn infinity() -> Place {
        Place::Infinity
    }

    pub fn deg(&self) -> i64 {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinity => 1,
        }
    }

    /// Residue field cardinality q_v = q^{deg v}.
    pub fn qv(&self, fq: &Fq) -> u64 {
        fq.q.pow(self.deg() as u32)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn render(&self, fq: &Fq) -> String {
        match self {
            Place::Finite(p) => format!("({})", p.render(fq)),
            Place::Infinity => "inf".into(),
        }
    }
}

/// Exact valuation of a nonzero rational function at a place.
/// At infinity, ord(f) = deg(den) - deg(num).
pub fn ord_at(fq: &Fq, v: &Place, f: &RatFunc) -> Result<i64> {
    if f.is_zero() {
        return domain("valuation of zero is +infinity");
    }
    Ok(match v {
        Place::Finite(p) => f.num.ord_at(fq, p) - f.den.ord_at(fq, p),
        Place::Infinity => -f.total_deg(),
    })
}

pub fn ord_poly_at(fq: &Fq, v: &Place, f: &Poly) -> i64 {
    assert!(!f.is_zero());
    match v {
        Place::Finite(p) => f.ord_at(fq, p),
        Place::Infinity => -f.deg(),
    }
}

/// Quadratic residue symbol of a polynomial in the residue field at a finite
/// place, by the Euler criterion a^{(q_P-1)/2} mod P.
pub fn legendre(fq: &Fq, a: &Poly, pl: &Place) -> Result<i8> {
    let p = match pl {
        Place::Finite(p) => p,
        Place::Infinity => return domain("legendre symbol needs a finite place"),
    };
    let a = a.rem(fq, p);
    if a.is_zero() {
        return Ok(0);
    }
    let qp = pl.qv(fq);
    let e = a.powmod(fq, (qp - 1) / 2, p);
    if e.is_one() {
        Ok(1)
    } else if e == Poly::constant(fq.minus_one()) {
        Ok(-1)
    } else {
        crate::error::internal("Euler criterion returned a non-unit")
    }
}

/// Residue symbol of the unit part of f at any place: f must have ord_v(f)=0.
/// At infinity the residue of a unit is the ratio of leading coefficients.
pub fn legendre_unit(fq: &Fq, f: &RatFunc, v: &Place) -> Result<i8> {
    match v {
        Place::Finite(p) => {
            let n = legendre(fq, &f.num, &Place::Finite(p.clone()))?;
            let d = legendre(fq, &f.den, &Place::Finite(p.clone()))?;
            if n == 0 || d == 0 {
                return domain("legendre_unit of a non-unit");
            }
            Ok(n * d)
        }
        Place::Infinity => {
            if f.total_deg() != 0 {
                return domain("legendre_unit of a non-unit at infinity");
            }
            let r = fq.div(f.num.lc(), f.den.lc());
            Ok(fq.legendre(r))
        }
    }
}

/// The residue of a unit at v as an element of the residue field is only
/// needed in full at infinity (where the residue field is F_q itself).
pub fn residue_at_infinity(fq: &Fq, f: &RatFunc) -> Result<FqElem> {
    if f.total_deg() != 0 {
        return domain("residue at infinity of a non-unit");
    }
    Ok(fq.div(f.num.lc(), f.den.lc()))
}

/// Conductor profile delta_v of the additive character psi_c = psi_std(c .),
/// where the standard character attached to dt has delta_v = 0 at finite v
/// and delta_inf = -2. Twisting by c shifts delta_v by ord_v(c).
#[derive(Clone, Debug)]
pub struct ConductorProfile {
    pub twist: RatFunc,
    deltas: BTreeMap<Place, i64>,
}

impl ConductorProfile {
    pub fn new(fq: &Fq, twist: RatFunc) -> Result<ConductorProfile> {
        if twist.is_zero() {
            return domain("twist element must be nonzero");
        }
        let mut deltas = BTreeMap::new();
        let mut sum = 0i64;
        for (p, e) in factored_support(fq, &twist) {
            let d = p.deg();
            deltas.insert(Place::Finite(p), e);
            sum += e * d;
        }
        let dinf = -2 - twist.total_deg();
        deltas.insert(Place::Infinity, dinf);
        sum += dinf;
        // sum delta_v deg v = 2 g_k - 2 = -2: the product formula makes this
        // automatic, asserted anyway.
        if sum != -2 {
            return crate::error::internal(format!("conductor profile sums to {sum}, not -2"));
        }
        Ok(ConductorProfile { twist, deltas })
    }

    pub fn standard(fq: &Fq) -> ConductorProfile {
        ConductorProfile::new(fq, RatFunc::one()).unwrap()
    }

    pub fn delta(&self, v: &Place) -> i64 {
        match self.deltas.get(v) {
            Some(&d) => d,
            None => match v {
                Place::Finite(_) => 0,
                Place::Infinity => -2,
            },
        }
    }

    /// Places where delta_v differs from zero.
    pub fn support(&self) -> Vec<Place> {
        self.deltas
            .iter()
            .filter(|(_, &d)| d != 0)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

/// The monic irreducible factors of num and den with signed exponents.
pub fn factored_support(fq: &Fq, f: &RatFunc) -> Vec<(Poly, i64)> {
    let mut map: BTreeMap<Vec<FqElem>, (Poly, i64)> = BTreeMap::new();
    if !f.num.is_constant() {
        let (_, fac) = crate::poly::factor(fq, &f.num);
        for (p, e) in fac {
            map.entry(p.c.clone()).or_insert((p, 0)).1 += e as i64;
        }
    }
    if !f.den.is_constant() {
        let (_, fac) = crate::poly::factor(fq, &f.den);
        for (p, e) in fac {
            map.entry(p.c.clone()).or_insert((p, 0)).1 -= e as i64;
        }
    }
    map.into_values().collect()
}

/// Finite places in the support of f, plus infinity when ord_inf(f) != 0.
pub fn support_places(fq: &Fq, f: &RatFunc) -> Vec<Place> {
    let mut v: Vec<Place> = factored_support(fq, f)
        .into_iter()
        .map(|(p, _)| Place::Finite(p))
        .collect();
    if f.total_deg() != 0 {
        v.push(Place::Infinity);
    }
    v
}

/// An idele: finitely many places carry a component in k^×, all other
/// components are 1.
#[derive(Clone, Debug, Default)]
pub struct Idele {
    pub comp: BTreeMap<Place, RatFunc>,
}

impl Idele {
    pub fn trivial() -> Idele {
        Idele {
            comp: BTreeMap::new(),
        }
    }

    pub fn with(mut self, v: Place, f: RatFunc) -> Result<Idele> {
        if f.is_zero() {
            return domain("idele components must be nonzero");
        }
        self.comp.insert(v, f);
        Ok(self)
    }

    pub fn component(&self, v: &Place) -> RatFunc {
        self.comp.get(v).cloned().unwrap_or_else(RatFunc::one)
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.comp.keys()
    }

    /// deg(y) = sum_v deg v * ord_v(y_v); the idele norm is |y| = q^{-deg y}.
    pub fn norm_deg(&self, fq: &Fq) -> i64 {
        self.comp
            .iter()
            .map(|(v, f)| v.deg() * ord_at(fq, v, f).unwrap())
            .sum()
    }

    /// Componentwise multiplication by a global element. A finitely
    /// supported map cannot literally hold a at every place, so `extra`
    /// must list the places where a unit component still matters (the
    /// places ramified in K and infinity, for χ_K); the support of a and of
    /// self are always included.
    pub fn scale_global(&self, fq: &Fq, a: &RatFunc, extra: &[Place]) -> Idele {
        assert!(!a.is_zero());
        let mut comp = self.comp.clone();
        let mut places: Vec<Place> = support_places(fq, a);
        places.extend(self.comp.keys().cloned());
        places.extend(extra.iter().cloned());
        for v in places {
            let cur = self.component(&v);
            comp.insert(v.clone(), cur.mul(fq, a));
        }
        Idele { comp }
    }
}

/// All places of degree <= d: finite ones in canonical order, then infinity.
pub fn places_up_to(fq: &Fq, d: usize) -> Vec<Place> {
    let mut v: Vec<Place> = Vec::new();
    for k in 1..=d {
        v.extend(irreducibles(fq, k).iter().cloned().map(Place::Finite));
    }
    v.push(Place::Infinity);
    v
}
