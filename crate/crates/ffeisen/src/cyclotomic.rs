//! Exact arithmetic in Q(ζ_p) for an odd prime p, the value field of the
//! additive character sums behind the Whittaker oracle and the Weil index.
//! Elements are stored on the power basis 1, ζ, ..., ζ^{p-2} with
//! ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2}).

use crate::rational::{qq_str, QQ};
use num::traits::Zero;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cyc {
    pub p: u64,
    pub c: Vec<QQ>,
}

impl Cyc {
    pub fn zero(p: u64) -> Cyc {
        Cyc {
            p,
            c: vec![QQ::zero(); (p - 1) as usize],
        }
    }
    pub fn one(p: u64) -> Cyc {
        Cyc::rational(p, QQ::from_integer(1.into()))
    }
    pub fn rational(p: u64, a: QQ) -> Cyc {
        let mut z = Cyc::zero(p);
        z.c[0] = a;
        z
    }
    /// ζ_p^j
    pub fn root(p: u64, j: u64) -> Cyc {
        let j = (j % p) as usize;
        let mut z = Cyc::zero(p);
        if j < (p - 1) as usize {
            z.c[j] = QQ::from_integer(1.into());
        } else {
            // ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2})
            for x in z.c.iter_mut() {
                *x = QQ::from_integer((-1).into());
            }
        }
        z
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn add(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.p, o.p);
        Cyc {
            p: self.p,
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
    pub fn neg(&self) -> Cyc {
        Cyc {
            p: self.p,
            c: self.c.iter().map(|a| -a.clone()).collect(),
        }
    }
    pub fn sub(&self, o: &Cyc) -> Cyc {
        self.add(&o.neg())
    }
    pub fn scale(&self, a: &QQ) -> Cyc {
        Cyc {
            p: self.p,
            c: self.c.iter().map(|x| x.clone() * a.clone()).collect(),
        }
    }
    pub fn mul(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.p, o.p);
        let n = (self.p - 1) as usize;
        // multiply as exponent vectors mod ζ^p = 1, then reduce
        let mut acc = vec![QQ::zero(); self.p as usize];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % self.p as usize;
                acc[k] += a.clone() * b.clone();
            }
        }
        // ζ^{p-1} -> -(1 + ... + ζ^{p-2})
        let top = acc[n].clone();
        let mut c = Vec::with_capacity(n);
        for item in acc.into_iter().take(n) {
            c.push(item - top.clone());
        }
        Cyc { p: self.p, c }
    }
    /// Complex conjugation ζ -> ζ^{-1}.
    pub fn conj(&self) -> Cyc {
        let mut out = Cyc::zero(self.p);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let j = (self.p - i as u64) % self.p;
            out = out.add(&Cyc::root(self.p, j).scale(a));
        }
        out
    }
    /// Some(r) if the element is the rational r.
    pub fn as_rational(&self) -> Option<QQ> {
        if self.c.iter().skip(1).all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            s.push(match i {
                0 => qq_str(a),
                1 => format!("{}*z", qq_str(a)),
                _ => format!("{}*z^{i}", qq_str(a)),
            });
        }
        s.join(" + ")
    }
}

/// The quadratic Gauss sum over the residue field F (with q_v = |F| a power
/// of p), relative to the character x -> ζ_p^{Tr(x)}: g = Σ_{x in F} ζ^{Tr(x²)}.
/// Satisfies g * conj(g) = q_v and g² = legendre(-1) q_v.
pub fn gauss_sum(resf: &crate::fq::Fq) -> Cyc {
    let p = resf.p;
    let mut g = Cyc::zero(p);
    for x in resf.elements() {
        let sq = resf.mul(x, x);
        g = g.add(&Cyc::root(p, resf.trace_to_fp(sq)));
    }
    g
}
