//! Canonical text encodings: polynomials like "2*t^3+t+1" (extension-field
//! coefficients as polynomials in g, parenthesized), rational functions
//! "(num)/(den)", places "(t^2+1)" or "inf", and ideles
//! "inf=1/t,(t)=t+1". Parsing canonical output reproduces the value.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::places::{Idele, Place};
use crate::poly::{Poly, RatFunc};

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Split at top-level occurrences of a separator (depth 0 w.r.t. parens).
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            c if c == sep && depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// Split into signed terms at top-level + and -.
fn signed_terms(s: &str) -> Vec<(i8, String)> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut sign = 1i8;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' if depth == 0 && i > 0 => {
                out.push((sign, std::mem::take(&mut cur)));
                sign = 1;
            }
            '-' if depth == 0 => {
                if i > 0 && !cur.is_empty() {
                    out.push((sign, std::mem::take(&mut cur)));
                }
                sign = -1;
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push((sign, cur));
    }
    out
}

/// A coefficient: an integer, g, g^j, or a parenthesized sum of those.
pub fn parse_fq_elem(fq: &Fq, s: &str) -> Result<FqElem> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    let mut acc = 0u32;
    for (sign, term) in signed_terms(s) {
        let mut val = fq.one();
        for factor in split_top(&term, '*') {
            let f = factor.trim();
            if f.is_empty() {
                return parse_err(format!("empty factor in coefficient '{s}'"));
            }
            // 'g' is the residue of the modulus variable, the basis root
            // used by the canonical rendering (encoding p)
            let basis_root = fq.p as u32;
            let fval = if let Some(rest) = f.strip_prefix("g^") {
                let e: u64 = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{f}'")))?;
                fq.pow(basis_root, e)
            } else if f == "g" {
                basis_root
            } else {
                let n: i64 = f
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{f}'")))?;
                fq.from_int(n)
            };
            val = fq.mul(val, fval);
        }
        if sign < 0 {
            val = fq.neg(val);
        }
        acc = fq.add(acc, val);
    }
    Ok(acc)
}

pub fn parse_poly(fq: &Fq, s: &str) -> Result<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return parse_err("empty polynomial");
    }
    let mut coeffs: Vec<FqElem> = Vec::new();
    for (sign, term) in signed_terms(&s) {
        let mut coef = fq.one();
        let mut power = 0usize;
        for factor in split_top(&term, '*') {
            let f = factor.trim();
            if f.is_empty() {
                return parse_err(format!("empty factor in '{term}'"));
            }
            if let Some(rest) = f.strip_prefix("t^") {
                power += rest
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad power in '{f}'")))?;
            } else if f == "t" {
                power += 1;
            } else if let Some(caret) = f.find("t^") {
                let (c, tp) = f.split_at(caret);
                coef = fq.mul(coef, parse_fq_elem(fq, c)?);
                power += tp[2..]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad power in '{f}'")))?;
            } else if let Some(rest) = f.strip_suffix('t') {
                // forms like "2t" or "(g+1)t"
                if rest.is_empty() {
                    power += 1;
                } else {
                    coef = fq.mul(coef, parse_fq_elem(fq, rest)?);
                    power += 1;
                }
            } else {
                coef = fq.mul(coef, parse_fq_elem(fq, f)?);
            }
        }
        if sign < 0 {
            coef = fq.neg(coef);
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = fq.add(coeffs[power], coef);
    }
    Ok(Poly::from_coeffs(coeffs))
}

pub fn parse_ratfunc(fq: &Fq, s: &str) -> Result<RatFunc> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let parts = split_top(&s, '/');
    let strip = |x: &str| -> String {
        let x = x.trim();
        if x.starts_with('(') && x.ends_with(')') && balanced(&x[1..x.len() - 1]) {
            return x[1..x.len() - 1].to_string();
        }
        x.to_string()
    };
    match parts.len() {
        1 => Ok(RatFunc::from_poly(parse_poly(fq, &strip(&parts[0]))?)),
        2 => {
            let num = parse_poly(fq, &strip(&parts[0]))?;
            let den = parse_poly(fq, &strip(&parts[1]))?;
            if den.is_zero() {
                return parse_err("zero denominator");
            }
            Ok(RatFunc::new(fq, num, den))
        }
        _ => parse_err(format!("too many '/' in '{s}'")),
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

pub fn parse_place(fq: &Fq, s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "inf" || s == "infty" || s == "oo" {
        return Ok(Place::Infinity);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    let p = parse_poly(fq, inner)?;
    let (p, _) = p.monic(fq);
    Place::finite(fq, p)
}

/// "v1=f1,v2=f2" with places and values in canonical syntax.
pub fn parse_idele(fq: &Fq, s: &str) -> Result<Idele> {
    let s = s.trim();
    let mut idele = Idele::trivial();
    if s.is_empty() || s == "1" {
        return Ok(idele);
    }
    for item in split_top(s, ',') {
        let Some((vs, fs)) = item.split_once('=') else {
            return parse_err(format!("idele component '{item}' is not place=value"));
        };
        let v = parse_place(fq, vs)?;
        let f = parse_ratfunc(fq, fs)?;
        idele = idele.with(v, f)?;
    }
    Ok(idele)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polys_of_degree;

    #[test]
    fn poly_roundtrip() {
        let fq = Fq::prime(3).unwrap();
        for d in 0..4usize {
            for p in polys_of_degree(&fq, d, false) {
                let s = p.render(&fq);
                let back = parse_poly(&fq, &s).unwrap();
                assert_eq!(back, p, "string was {s}");
                // canonical form is byte-stable under a second round trip
                assert_eq!(back.render(&fq), s);
            }
        }
    }

    #[test]
    fn poly_roundtrip_extension_field() {
        let f9 = Fq::extension(3, 2, None).unwrap();
        for d in 0..3usize {
            for p in polys_of_degree(&f9, d, false).into_iter().step_by(7) {
                let s = p.render(&f9);
                let back = parse_poly(&f9, &s).unwrap();
                assert_eq!(back, p, "string was {s}");
                assert_eq!(back.render(&f9), s);
            }
        }
    }

    #[test]
    fn ratfunc_and_place_roundtrip() {
        let fq = Fq::prime(3).unwrap();
        let f = RatFunc::new(
            &fq,
            parse_poly(&fq, "2*t^3+t+1").unwrap(),
            parse_poly(&fq, "t^2+1").unwrap(),
        );
        let s = f.render(&fq);
        assert_eq!(parse_ratfunc(&fq, &s).unwrap(), f);
        let v = parse_place(&fq, "(t^2+1)").unwrap();
        assert_eq!(v.render(&fq), "(t^2+1)");
        assert_eq!(parse_place(&fq, "inf").unwrap(), Place::Infinity);
        assert!(parse_place(&fq, "(t^2)").is_err());
    }

    #[test]
    fn idele_roundtrip() {
        let fq = Fq::prime(3).unwrap();
        let y = parse_idele(&fq, "inf=1/t,(t)=t+1").unwrap();
        assert_eq!(
            y.component(&Place::Infinity),
            parse_ratfunc(&fq, "1/t").unwrap()
        );
        let vt = parse_place(&fq, "(t)").unwrap();
        assert_eq!(y.component(&vt), parse_ratfunc(&fq, "t+1").unwrap());
        assert!(parse_idele(&fq, "1").unwrap().comp.is_empty());
    }

    #[test]
    fn accepts_star_free_terms() {
        let fq = Fq::prime(5).unwrap();
        assert_eq!(
            parse_poly(&fq, "2t^3+4t+1").unwrap(),
            parse_poly(&fq, "2*t^3+4*t+1").unwrap()
        );
        assert_eq!(
            parse_poly(&fq, "-t+2").unwrap(),
            parse_poly(&fq, "4*t+2").unwrap()
        );
    }
}
