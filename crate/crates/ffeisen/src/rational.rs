//! Exact rational scalars. Everything downstream of the coefficient level
//! (L-functions, Whittaker values, Fourier coefficients) is computed in `QQ`;
//! no floating point enters any identity that gets asserted.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::traits::{One, Signed, Zero};

pub type QQ = Ratio<BigInt>;

pub fn qq(n: i64) -> QQ {
    QQ::from_integer(BigInt::from(n))
}

pub fn qq_frac(n: i64, d: i64) -> QQ {
    QQ::new(BigInt::from(n), BigInt::from(d))
}

/// q^e for a (possibly negative) integer exponent.
pub fn qq_pow(q: u64, e: i64) -> QQ {
    let b = BigInt::from(q);
    if e >= 0 {
        QQ::from_integer(b.pow(e as u32))
    } else {
        QQ::new(BigInt::one(), b.pow((-e) as u32))
    }
}

pub fn is_zero(x: &QQ) -> bool {
    x.is_zero()
}

/// Lowest-terms decimal-free rendering, e.g. "-3/7" or "12".
pub fn qq_str(x: &QQ) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Approximate double value, for clearly-marked human output only.
pub fn qq_approx(x: &QQ) -> f64 {
    let n = x.numer();
    let d = x.denom();
    let nf = n.to_string().parse::<f64>().unwrap_or(if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    let df = d.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    nf / df
}

pub fn parse_qq(s: &str) -> Option<QQ> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(QQ::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(QQ::from_integer(n))
    }
}
