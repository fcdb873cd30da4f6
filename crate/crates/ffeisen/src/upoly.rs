//! Polynomials and rational functions in u = q^{-s} with exact rational
//! coefficients. L-functions, Euler factors and Whittaker functions all live
//! here; s-derivatives at the center s = 0 become u-derivatives at u = 1
//! through d/ds = -ln q * u d/du.

use crate::rational::{qq, QQ};
use num::traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly {
    pub c: Vec<QQ>,
}

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly { c: vec![] }
    }
    pub fn one() -> UPoly {
        UPoly { c: vec![QQ::one()] }
    }
    pub fn u() -> UPoly {
        UPoly {
            c: vec![QQ::zero(), QQ::one()],
        }
    }
    pub fn constant(a: QQ) -> UPoly {
        if a.is_zero() {
            UPoly::zero()
        } else {
            UPoly { c: vec![a] }
        }
    }
    pub fn from_coeffs(c: Vec<QQ>) -> UPoly {
        let mut p = UPoly { c };
        p.trim();
        p
    }
    /// u^k
    pub fn monomial(k: usize) -> UPoly {
        let mut c = vec![QQ::zero(); k + 1];
        c[k] = QQ::one();
        UPoly { c }
    }
    fn trim(&mut self) {
        while self.c.last().map(|x| x.is_zero()).unwrap_or(false) {
            self.c.pop();
        }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn coeff(&self, i: usize) -> QQ {
        self.c.get(i).cloned().unwrap_or_else(QQ::zero)
    }
    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
    pub fn neg(&self) -> UPoly {
        UPoly {
            c: self.c.iter().map(|x| -x.clone()).collect(),
        }
    }
    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![QQ::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        UPoly::from_coeffs(c)
    }
    pub fn scale(&self, a: &QQ) -> UPoly {
        UPoly::from_coeffs(self.c.iter().map(|x| x * a).collect())
    }
    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// Substitute u -> u^k (k >= 1).
    pub fn subst_power(&self, k: usize) -> UPoly {
        assert!(k >= 1);
        let mut c = vec![QQ::zero(); self.c.len().saturating_sub(1) * k + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * k] = x.clone();
        }
        UPoly::from_coeffs(c)
    }
    pub fn eval(&self, x: &QQ) -> QQ {
        let mut acc = QQ::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    pub fn derivative(&self) -> UPoly {
        if self.c.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * qq(i as i64))
                .collect(),
        )
    }
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero());
        if self.deg() < d.deg() {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.deg() as usize;
        let lead = d.c[dd].clone();
        let mut q = vec![QQ::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = r[i].clone() / lead.clone();
            if coef.is_zero() {
                continue;
            }
            q[i - dd] = coef.clone();
            for (k, dc) in d.c.iter().enumerate() {
                let v = r[i - dd + k].clone() - coef.clone() * dc;
                r[i - dd + k] = v;
            }
        }
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.c.last().unwrap().clone();
        a.scale(&(QQ::one() / lead))
    }
    /// Coefficients of the Taylor expansion at u = 1+x, up to x^order.
    pub fn taylor_at_one(&self, order: usize) -> Vec<QQ> {
        // binomial shift
        let mut out = vec![QQ::zero(); order + 1];
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (1+x)^i
            let mut binom = QQ::one();
            for k in 0..=order.min(i) {
                out[k] += c.clone() * binom.clone();
                binom = binom * qq((i - k) as i64) / qq(k as i64 + 1);
            }
        }
        out
    }
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = crate::rational::qq_str(c);
            s.push(match i {
                0 => cs,
                1 if cs == "1" => "u".into(),
                1 => format!("{cs}*u"),
                _ if cs == "1" => format!("u^{i}"),
                _ => format!("{cs}*u^{i}"),
            });
        }
        s.join(" + ")
    }
}

/// A rational function in u, kept in lowest terms with monic denominator.
///負 powers of u are expressed by a denominator u^k, so this is the home of
/// Laurent data like |y|^{-s} = u^{-deg y} as well.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct URat {
    pub num: UPoly,
    pub den: UPoly,
}

impl URat {
    pub fn zero() -> URat {
        URat {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }
    pub fn one() -> URat {
        URat {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }
    pub fn from_poly(p: UPoly) -> URat {
        URat {
            num: p,
            den: UPoly::one(),
        }
    }
    pub fn constant(a: QQ) -> URat {
        URat::from_poly(UPoly::constant(a))
    }
    /// u^k for k of either sign.
    pub fn monomial(k: i64) -> URat {
        if k >= 0 {
            URat::from_poly(UPoly::monomial(k as usize))
        } else {
            URat {
                num: UPoly::one(),
                den: UPoly::monomial((-k) as usize),
            }
        }
    }
    pub fn new(num: UPoly, den: UPoly) -> URat {
        assert!(!den.is_zero(), "zero denominator in URat");
        if num.is_zero() {
            return URat::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        let lead = den.c.last().unwrap().clone();
        den = den.scale(&(QQ::one() / lead.clone()));
        num = num.scale(&(QQ::one() / lead));
        URat { num, den }
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn add(&self, o: &URat) -> URat {
        URat::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    pub fn neg(&self) -> URat {
        URat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    pub fn sub(&self, o: &URat) -> URat {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &URat) -> URat {
        URat::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    pub fn inv(&self) -> URat {
        assert!(!self.is_zero());
        URat::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &URat) -> URat {
        self.mul(&o.inv())
    }
    pub fn scale(&self, a: &QQ) -> URat {
        URat::new(self.num.scale(a), self.den.clone())
    }
    pub fn pow(&self, e: i64) -> URat {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = URat::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
    /// Substitute u -> u^k (k >= 1), e.g. converting u_v = q_v^{-s} into the
    /// global variable via u_v = u^{deg v}.
    pub fn subst_power(&self, k: usize) -> URat {
        URat::new(self.num.subst_power(k), self.den.subst_power(k))
    }
    /// Substitute u -> c/u, used by functional-equation identities.
    pub fn subst_inv_scale(&self, c: &QQ) -> URat {
        let rev = |p: &UPoly| -> (UPoly, usize) {
            // p(c/u) = (sum_i a_i c^i u^{d-i}) / u^d
            let d = p.c.len().saturating_sub(1);
            let mut coeffs = vec![QQ::zero(); d + 1];
            let mut cp = QQ::one();
            for (i, a) in p.c.iter().enumerate() {
                coeffs[d - i] = a.clone() * cp.clone();
                cp *= c;
            }
            (UPoly::from_coeffs(coeffs), d)
        };
        let (n, dn) = rev(&self.num);
        let (d, dd) = rev(&self.den);
        // (n/u^dn) / (d/u^dd) = n * u^{dd-dn} / d
        let shift = dd as i64 - dn as i64;
        URat::new(n, d).mul(&URat::monomial(shift))
    }
    pub fn eval(&self, x: &QQ) -> QQ {
        let d = self.den.eval(x);
        assert!(!d.is_zero(), "URat evaluated at a pole");
        self.num.eval(x) / d
    }
    /// d/du evaluated at a (non-pole) point.
    pub fn deriv_at(&self, x: &QQ) -> QQ {
        let n = self.num.eval(x);
        let d = self.den.eval(x);
        assert!(!d.is_zero(), "URat differentiated at a pole");
        let np = self.num.derivative().eval(x);
        let dp = self.den.derivative().eval(x);
        (np * d.clone() - n * dp) / (d.clone() * d)
    }
    /// Power-series coefficients at u = 0 up to order (denominator must not
    /// vanish at 0).
    pub fn taylor_at_zero(&self, order: usize) -> Vec<QQ> {
        assert!(!self.den.coeff(0).is_zero(), "URat has a pole at u = 0");
        let mut out = vec![QQ::zero(); order + 1];
        let d0 = self.den.coeff(0);
        for k in 0..=order {
            let mut acc = self.num.coeff(k);
            for j in 0..k {
                acc -= out[j].clone() * self.den.coeff(k - j);
            }
            out[k] = acc / d0.clone();
        }
        out
    }

    /// Taylor coefficients in x = u - 1 up to x^order (denominator must not
    /// vanish at u = 1).
    pub fn taylor_at_one(&self, order: usize) -> Vec<QQ> {
        let n = self.num.taylor_at_one(order);
        let d = self.den.taylor_at_one(order);
        assert!(!d[0].is_zero(), "URat has a pole at u = 1");
        // series division n/d
        let mut out = vec![QQ::zero(); order + 1];
        for k in 0..=order {
            let mut acc = n[k].clone();
            for j in 0..k {
                acc -= out[j].clone() * d[k - j].clone();
            }
            out[k] = acc / d[0].clone();
        }
        out
    }
    /// Coefficients of the expansion in x = s ln q up to x^order, using
    /// u = e^{-x}. The value at s=0 is coefficient 0, the s-derivative at 0
    /// is (coefficient 1) * ln q.
    pub fn series_in_s(&self, order: usize) -> Vec<QQ> {
        let t = self.taylor_at_one(order);
        // u - 1 = e^{-x} - 1 = sum_{m>=1} (-x)^m / m!
        let mut em = vec![QQ::zero(); order + 1]; // e^{-x}-1
        let mut fact = QQ::one();
        for (m, slot) in em.iter_mut().enumerate().skip(1) {
            fact *= qq(m as i64);
            let sign = if m % 2 == 0 { qq(1) } else { qq(-1) };
            *slot = sign / fact.clone();
        }
        // compose: sum_k t_k (e^{-x}-1)^k
        let mut out = vec![QQ::zero(); order + 1];
        let mut pow = vec![QQ::zero(); order + 1];
        pow[0] = QQ::one(); // (e^{-x}-1)^0
        for (k, tk) in t.iter().enumerate() {
            if k > 0 {
                // pow *= em, truncated
                let mut next = vec![QQ::zero(); order + 1];
                for i in 0..=order {
                    if pow[i].is_zero() {
                        continue;
                    }
                    for j in 0..=order - i {
                        if em[j].is_zero() {
                            continue;
                        }
                        let v = next[i + j].clone() + pow[i].clone() * em[j].clone();
                        next[i + j] = v;
                    }
                }
                pow = next;
            }
            if !tk.is_zero() {
                for i in 0..=order {
                    let v = out[i].clone() + tk.clone() * pow[i].clone();
                    out[i] = v;
                }
            }
        }
        out
    }
    /// Order of vanishing at s = 0, detected up to `max_order` (returns
    /// max_order+1 if all computed coefficients vanish).
    pub fn vanishing_order_at_s0(&self, max_order: usize) -> usize {
        let c = self.series_in_s(max_order);
        for (i, x) in c.iter().enumerate() {
            if !x.is_zero() {
                return i;
            }
        }
        max_order + 1
    }
    pub fn render(&self) -> String {
        if self.den == UPoly::one() {
            self.num.render()
        } else {
            format!("({}) / ({})", self.num.render(), self.den.render())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qq_frac;

    #[test]
    fn poly_ops() {
        let u = UPoly::u();
        let p = u.mul(&u).add(&UPoly::one()); // u^2+1
        assert_eq!(p.eval(&qq(2)), qq(5));
        assert_eq!(p.derivative().eval(&qq(3)), qq(6));
        let q = p.mul(&p);
        assert_eq!(q.div_exact(&p), Some(p.clone()));
    }

    #[test]
    fn rat_ops_and_laurent() {
        let uinv = URat::monomial(-1);
        let u = URat::monomial(1);
        let f = uinv.sub(&u); // 1/u - u
        assert_eq!(f.eval(&qq(1)), qq(0));
        assert_eq!(f.deriv_at(&qq(1)), qq(-2));
        // u -> 1/u flips the sign
        let g = f.subst_inv_scale(&qq(1));
        assert_eq!(g, f.neg());
    }

    #[test]
    fn taylor_and_series() {
        // f(u) = u^2: at u = 1: 1 + 2x + x^2
        let f = URat::from_poly(UPoly::monomial(2));
        assert_eq!(f.taylor_at_one(2), vec![qq(1), qq(2), qq(1)]);
        // series in s: u^2 = e^{-2x}: 1 - 2x + 2x^2 - (4/3)x^3
        let s = f.series_in_s(3);
        assert_eq!(s, vec![qq(1), qq(-2), qq(2), qq_frac(-4, 3)]);
        // vanishing order of (1-u)^2 at s=0 is 2
        let one_minus_u = URat::from_poly(UPoly::one().sub(&UPoly::u()));
        let g = one_minus_u.mul(&one_minus_u);
        assert_eq!(g.vanishing_order_at_s0(3), 2);
    }

    #[test]
    fn subst_power() {
        let f = URat::new(UPoly::one(), UPoly::one().add(&UPoly::u())); // 1/(1+u)
        let g = f.subst_power(2);
        assert_eq!(g.eval(&qq(2)), qq_frac(1, 5));
    }
}
