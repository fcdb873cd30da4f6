//! Values of the form c * ln q with exact rational c. Every derivative at
//! the central point s = 0 in this crate is such a value, so equality of
//! derivatives is equality of rationals.

use crate::rational::{qq_approx, qq_str, QQ};
use num::traits::Zero;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LnQValue {
    pub c: QQ,
}

impl LnQValue {
    pub fn zero() -> LnQValue {
        LnQValue { c: QQ::zero() }
    }
    pub fn new(c: QQ) -> LnQValue {
        LnQValue { c }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }
    pub fn add(&self, o: &LnQValue) -> LnQValue {
        LnQValue {
            c: self.c.clone() + o.c.clone(),
        }
    }
    pub fn sub(&self, o: &LnQValue) -> LnQValue {
        LnQValue {
            c: self.c.clone() - o.c.clone(),
        }
    }
    pub fn scale(&self, a: &QQ) -> LnQValue {
        LnQValue {
            c: self.c.clone() * a.clone(),
        }
    }
    pub fn render(&self) -> String {
        format!("{} * ln q", qq_str(&self.c))
    }
    pub fn render_approx(&self, q: u64) -> String {
        format!(
            "{} * ln q (≈ {:.6})",
            qq_str(&self.c),
            qq_approx(&self.c) * (q as f64).ln()
        )
    }
}
