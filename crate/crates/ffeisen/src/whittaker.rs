//! Local Whittaker functions of the rank-one sections on SL_2, normalized by
//! vol(O_v) = q_v^{-δ_v/2}. Two sections per place: the "alpha" new vector
//! attached to the incoherent space (K_v, α ε_v N) and the "tilde" vector
//! attached to the β-scaled coherent space (K_v, β N). The closed forms are
//! polynomials (or (1+q^{-1}u)-denominator rational functions) in
//! u_v = q_v^{-s}; ramified places carry the symbolic unit factor
//! ε_v(V_β) q_v^{-1/2}, resolved exactly through the Weil index. A
//! brute-force character-sum oracle evaluates the same integrals over
//! residue rings.

use crate::cyclotomic::Cyc;
use crate::error::{domain, internal, Result};
use crate::fq::Fq;
use crate::lnq::LnQValue;
use crate::local::LocalModel;
use crate::places::{ord_at, Place};
use crate::poly::{Poly, RatFunc};
use crate::quad::{hilbert_symbol, QuadExt, SplittingType};
use crate::rational::{qq, qq_frac, qq_pow, QQ};
use crate::upoly::{UPoly, URat};
use num::traits::Zero;
use std::sync::Arc;

/// All local data entering a Whittaker computation at one place: the
/// character parameter is ψ_{y²β}, the sections carry α ε_v. Derived
/// quantities are recomputed from the values, never stored.
#[derive(Clone, Debug)]
pub struct LocalCase {
    pub v: Place,
    pub delta: i64,
    pub y_v: RatFunc,
    pub beta: RatFunc,
    pub alpha_eps: RatFunc,
}

impl LocalCase {
    pub fn new(v: Place, delta: i64, y_v: RatFunc, beta: RatFunc, alpha_eps: RatFunc) -> LocalCase {
        LocalCase {
            v,
            delta,
            y_v,
            beta,
            alpha_eps,
        }
    }

    /// m = ord_v(y_v² β) + δ_v.
    pub fn m(&self, fq: &Fq) -> i64 {
        2 * ord_at(fq, &self.v, &self.y_v).unwrap()
            + ord_at(fq, &self.v, &self.beta).unwrap()
            + self.delta
    }
    /// e_v = -δ_v - ord_v(α ε_v).
    pub fn e(&self, fq: &Fq) -> i64 {
        -self.delta - ord_at(fq, &self.v, &self.alpha_eps).unwrap()
    }
    /// e'_v = -δ_v - ord_v(β).
    pub fn e_prime(&self, fq: &Fq) -> i64 {
        -self.delta - ord_at(fq, &self.v, &self.beta).unwrap()
    }
    /// χ_{K,v}(β / (α ε_v)): -1 exactly when v lies in Diff(β, C).
    pub fn diff_sign(&self, k: &QuadExt) -> i8 {
        let ba = self.beta.mul(&k.fq, &self.alpha_eps);
        hilbert_symbol(&k.fq, &ba, &RatFunc::from_poly(k.d.clone()), &self.v).unwrap()
    }
}

/// A normalized local Whittaker function W/vol(O_v) in the local variable
/// u_v; `ram_atom` marks one symbolic factor ε_v(V_β) q_v^{-1/2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerForm {
    pub rat: URat,
    pub ram_atom: bool,
}

impl WhittakerForm {
    fn zero() -> WhittakerForm {
        WhittakerForm {
            rat: URat::zero(),
            ram_atom: false,
        }
    }
    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }
    /// Value at s = 0 (u_v = 1), as (rational, atom?) with the atom factored.
    pub fn value0(&self) -> (QQ, bool) {
        (self.rat.eval(&QQ::from_integer(1.into())), self.ram_atom)
    }
    /// s-derivative at 0 as a multiple of ln q_v (atom factored out):
    /// d/ds = -ln q_v · u_v d/du_v at u_v = 1.
    pub fn sderiv0_lnqv(&self) -> (LnQValue, bool) {
        let d = self.rat.deriv_at(&QQ::from_integer(1.into()));
        (LnQValue::new(-d), self.ram_atom)
    }
}

fn geom_alt_sum(m: i64) -> UPoly {
    // Σ_{r=0}^{m} (-u)^r
    let mut c = Vec::new();
    for r in 0..=m.max(-1) as usize as i64 {
        c.push(if r % 2 == 0 { qq(1) } else { qq(-1) });
    }
    UPoly::from_coeffs(c)
}

/// The good-place formula: v unramified in K, δ_v = 0, unit β-data:
/// W = L_v(s+1, χ_v)^{-1} = 1 - χ(π_v) q_v^{-1} u_v.
pub fn w_good(k: &QuadExt, case: &LocalCase) -> Result<WhittakerForm> {
    let fq = &k.fq;
    let sp = k.splitting_type(&case.v);
    if sp == SplittingType::Ramified {
        return domain("w_good needs a place unramified in K");
    }
    if case.delta != 0 || case.m(fq) != 0 || case.e(fq) % 2 != 0 {
        return domain("w_good needs trivial local data");
    }
    let sign = if sp == SplittingType::Split { 1 } else { -1 };
    let qv = case.v.qv(fq);
    let rat = URat::from_poly(
        UPoly::one().sub(&UPoly::u().scale(&(qq(sign) / qq(qv as i64)))),
    );
    Ok(WhittakerForm {
        rat,
        ram_atom: false,
    })
}

/// Split places (any local data): W/vol = (Σ_{r=0}^m u^r)(1 - q^{-1} u),
/// identical for both sections; zero when m < 0.
pub fn w_split(k: &QuadExt, case: &LocalCase) -> Result<WhittakerForm> {
    let fq = &k.fq;
    if k.splitting_type(&case.v) != SplittingType::Split {
        return domain("w_split needs a split place");
    }
    let m = case.m(fq);
    if m < 0 {
        return Ok(WhittakerForm::zero());
    }
    let qv = case.v.qv(fq);
    let mut sum = vec![qq(1); (m + 1) as usize];
    sum[0] = qq(1);
    let sum = UPoly::from_coeffs(sum);
    let rat = URat::from_poly(sum.mul(&UPoly::one().sub(&UPoly::u().scale(&qq_frac(1, qv as i64)))));
    Ok(WhittakerForm {
        rat,
        ram_atom: false,
    })
}

/// The inert closed form with boundary parity p:
///   p even: (1 - (-u)^{m+1})(1 + q^{-1}u)/(1+u)
///   p odd:  -[ u(1 - (-u)^m) + q^{-1}(1 - (-u)^{m+2}) ] / (1+u),
/// zero when m < 0.
fn w_inert_parity(qv: u64, m: i64, p_even: bool) -> WhittakerForm {
    if m < 0 {
        return WhittakerForm::zero();
    }
    let qinv = qq_frac(1, qv as i64);
    let one_plus_u = UPoly::one().add(&UPoly::u());
    let rat = if p_even {
        // (1+q^{-1}u) Σ_{r=0}^m (-u)^r
        URat::from_poly(
            geom_alt_sum(m).mul(&UPoly::one().add(&UPoly::u().scale(&qinv))),
        )
    } else {
        let minus_u_pow = |j: i64| -> UPoly {
            let mut c = vec![QQ::zero(); j as usize + 1];
            c[j as usize] = if j % 2 == 0 { qq(1) } else { qq(-1) };
            UPoly::from_coeffs(c)
        };
        let num = UPoly::u()
            .mul(&UPoly::one().sub(&minus_u_pow(m)))
            .add(&UPoly::one().sub(&minus_u_pow(m + 2)).scale(&qinv))
            .neg();
        URat::new(num, one_plus_u)
    };
    WhittakerForm {
        rat,
        ram_atom: false,
    }
}

/// Inert place, tilde section: parity branch by e'.
pub fn w_inert_tilde(k: &QuadExt, case: &LocalCase) -> Result<WhittakerForm> {
    let fq = &k.fq;
    if k.splitting_type(&case.v) != SplittingType::Inert {
        return domain("w_inert_tilde needs an inert place");
    }
    Ok(w_inert_parity(
        case.v.qv(fq),
        case.m(fq),
        case.e_prime(fq) % 2 == 0,
    ))
}

/// Inert place, alpha section: parity branch by e.
pub fn w_inert_alpha(k: &QuadExt, case: &LocalCase) -> Result<WhittakerForm> {
    let fq = &k.fq;
    if k.splitting_type(&case.v) != SplittingType::Inert {
        return domain("w_inert_alpha needs an inert place");
    }
    Ok(w_inert_parity(
        case.v.qv(fq),
        case.m(fq),
        case.e(fq) % 2 == 0,
    ))
}

/// Ramified place, tilde section: atom · (1 + u^{m+1}).
pub fn w_ram_tilde(k: &QuadExt, case: &LocalCase) -> Result<WhittakerForm> {
    let fq = &k.fq;
    if k.splitting_type(&case.v) != SplittingType::Ramified {
        return domain("w_ram_tilde needs a ramified place");
    }
    let m = case.m(fq);
    if m < 0 {
        return Ok(WhittakerForm::zero());
    }
    Ok(WhittakerForm {
        rat: URat::from_poly(UPoly::one().add(&UPoly::monomial((m + 1) as usize))),
        ram_atom: true,
    })
}

/// Ramified place, alpha section: atom · (χ_v(β α ε_v) + u^{m+1}); at the
/// Diff place the sign is -1 and the factor vanishes centrally.
pub fn w_ram_alpha(k: &QuadExt, case: &LocalCase) -> Result<WhittakerForm> {
    let fq = &k.fq;
    if k.splitting_type(&case.v) != SplittingType::Ramified {
        return domain("w_ram_alpha needs a ramified place");
    }
    let m = case.m(fq);
    if m < 0 {
        return Ok(WhittakerForm::zero());
    }
    let sign = case.diff_sign(k);
    Ok(WhittakerForm {
        rat: URat::from_poly(
            UPoly::constant(qq(sign as i64)).add(&UPoly::monomial((m + 1) as usize)),
        ),
        ram_atom: true,
    })
}

/// The Weil index ε_v of a diagonal quadratic space, from stabilized
/// character-sum integrals. For an even total conductor shift the index is
/// a sign; for an odd shift (the ramified binary spaces) the combination
/// ε_v · q_v^{-1/2} is returned, exactly, as a cyclotomic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeilIndex {
    Sign(i8),
    /// ε_v(V) · q_v^{-1/2} ∈ Q(ζ_p).
    GaussUnit(Cyc),
}

pub fn weil_index(model: &LocalModel, delta: i64, coeffs: &[RatFunc]) -> Result<WeilIndex> {
    if coeffs.iter().any(|c| c.is_zero()) {
        return domain("Weil index needs nonzero diagonal coefficients");
    }
    let fq = &model.fq;
    let mut raw = Cyc::one(fq.p);
    let mut shift: i64 = 0;
    for c in coeffs {
        let cv = model.embed(c)?;
        let ord = cv.0;
        let mscale = ((delta + ord) as f64 / 2.0).ceil() as i64;
        let r = model.raw_quadratic_integral(delta, &cv, mscale)?;
        raw = raw.mul(&r);
        shift += delta + ord;
    }
    let qv = model.qv();
    if shift % 2 == 0 {
        let val = raw.scale(&qq_pow(qv, -(shift / 2)));
        match val.as_rational() {
            Some(r) if r == qq(1) => Ok(WeilIndex::Sign(1)),
            Some(r) if r == qq(-1) => Ok(WeilIndex::Sign(-1)),
            _ => internal("Weil index with even shift is not ±1"),
        }
    } else {
        Ok(WeilIndex::GaussUnit(raw.scale(&qq_pow(qv, -(shift + 1) / 2))))
    }
}

/// Diagonalization [c, -cD] of the binary space (K_v, c N_{K/k}).
pub fn binary_space_diag(k: &QuadExt, c: &RatFunc) -> [RatFunc; 2] {
    let fq = &k.fq;
    [c.clone(), c.neg(fq).mul(fq, &RatFunc::from_poly(k.d.clone()))]
}

/// A uniformizer that is a local norm from K_v, required at places ramified
/// in K (at split places every unit class is a norm and at inert places no
/// adjustment is meaningful).
pub fn norm_uniformizer(k: &QuadExt, v: &Place) -> Result<RatFunc> {
    let fq = &k.fq;
    let d = RatFunc::from_poly(k.d.clone());
    let base = match v {
        Place::Finite(p) => RatFunc::from_poly(p.clone()),
        Place::Infinity => RatFunc::new(fq, Poly::one(), Poly::t()),
    };
    if k.splitting_type(v) != SplittingType::Ramified {
        return Ok(base);
    }
    // constants first, then low-degree units
    for c in fq.nonzero_elements() {
        let cand = base.mul(fq, &RatFunc::from_poly(Poly::constant(c)));
        if hilbert_symbol(fq, &cand, &d, v)? == 1 {
            return Ok(cand);
        }
    }
    if let Place::Finite(p) = v {
        for deg in 1..p.deg() as usize {
            for u0 in crate::poly::polys_of_degree(fq, deg, false) {
                if u0.rem(fq, p).is_zero() {
                    continue;
                }
                let cand = base.mul(fq, &RatFunc::from_poly(u0));
                if hilbert_symbol(fq, &cand, &d, v)? == 1 {
                    return Ok(cand);
                }
            }
        }
    }
    internal("no norm uniformizer found")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Section {
    /// The new vector of the incoherent space (lattice scale from e_v).
    Alpha,
    /// The matched vector of the β-scaled coherent space (scale from e'_v).
    Tilde,
}

/// A local model sized for the oracle at this case.
pub fn oracle_model(k: &QuadExt, case: &LocalCase) -> Result<LocalModel> {
    let fq = &k.fq;
    if case.v.qv(fq) > 9 {
        return domain("Whittaker oracle gated to q_v <= 9");
    }
    let m = case.m(fq);
    let span = (m.abs() + case.delta.abs() + 10) as usize;
    let unif = norm_uniformizer(k, &case.v)?;
    LocalModel::new(fq.clone(), case.v.clone(), span, Some(unif))
}

/// Brute-force evaluation of W/vol(O_v) at rational samples of u_v, by the
/// boundary-plus-residue-sum decomposition of the Whittaker integral: the
/// boundary term ε_v(V) φ̂(0) ∫_O ψ(-y²β b) db plus the tail
/// Σ_{r≥1} (χ(π) u_v)^r ∫_{O^×} χ(u) ψ(y²β π^{-r} u) d^×u, every integral a
/// finite character sum over a residue ring. The tail is checked to vanish
/// beyond r = m+1.
pub fn oracle_whittaker(
    k: &QuadExt,
    case: &LocalCase,
    section: Section,
    u_samples: &[QQ],
) -> Result<Vec<Cyc>> {
    let fq: &Arc<Fq> = &k.fq;
    let model = oracle_model(k, case)?;
    let p = fq.p;
    let sp = k.splitting_type(&case.v);
    let m = case.m(fq);
    let delta = case.delta;

    // boundary coefficient B = ε_v(space) * φ̂(0)
    let scale = match section {
        Section::Alpha => case.alpha_eps.clone(),
        Section::Tilde => case.beta.clone(),
    };
    let diag = binary_space_diag(k, &scale);
    let e_param = -delta - ord_at(fq, &case.v, &scale)?;
    let boundary = match sp {
        SplittingType::Split => Cyc::one(p),
        SplittingType::Inert => {
            let eps = match weil_index(&model, delta, &diag)? {
                WeilIndex::Sign(s) => s,
                WeilIndex::GaussUnit(_) => {
                    return internal("inert binary space has odd conductor shift")
                }
            };
            // φ̂(0) = q_v^{-(2⌈e/2⌉ - e)}
            let fhat = qq_pow(model.qv(), -(2 * e_param.div_euclid(2) + 2 * (e_param.rem_euclid(2)) - e_param));
            Cyc::rational(p, qq(eps as i64) * fhat)
        }
        SplittingType::Ramified => match weil_index(&model, delta, &diag)? {
            WeilIndex::GaussUnit(g) => g,
            WeilIndex::Sign(_) => {
                return internal("ramified binary space has even conductor shift")
            }
        },
    };

    // unit integrals U_r in vol(O_v)-units
    let c_val = model.embed(&case.y_v.square(fq).mul(fq, &case.beta))?;
    let chi_ram = sp == SplittingType::Ramified;
    let unit_integral = |r: i64| -> Result<Cyc> {
        let mm = (r - m).max(1) as usize;
        let mut signed_counts = vec![0i64; p as usize];
        for u in model.residues(mm) {
            if u[0] == 0 {
                continue;
            }
            let chi = if chi_ram { model.chi_ram_unit(&u) } else { 1 };
            let prod = model.ring_mul(&c_val.1, &u);
            let idx = model.psi_index(delta, c_val.0 - r, &prod)?;
            signed_counts[idx as usize] += chi as i64;
        }
        let mut acc = Cyc::zero(p);
        let norm = qq_pow(model.qv(), -(mm as i64));
        for (j, &cnt) in signed_counts.iter().enumerate() {
            if cnt != 0 {
                acc = acc.add(&Cyc::root(p, j as u64).scale(&(qq(cnt) * norm.clone())));
            }
        }
        Ok(acc)
    };

    let chi_pi: i64 = match sp {
        SplittingType::Split => 1,
        SplittingType::Inert => -1,
        SplittingType::Ramified => 1, // norm uniformizer
    };
    let rmax = (m + 1).max(0);
    let mut terms: Vec<(i64, Cyc)> = Vec::new();
    for r in 1..=rmax + 2 {
        let u = unit_integral(r)?;
        if r > m + 1 && !u.is_zero() {
            return internal("Whittaker tail fails to terminate at r = m+1");
        }
        terms.push((r, u));
    }

    let mut out = Vec::new();
    for s in u_samples {
        let mut acc = if m >= 0 { boundary.clone() } else { Cyc::zero(p) };
        for (r, u) in &terms {
            let w = qq(chi_pi).pow(*r as i32) * s.pow(*r as i32);
            acc = acc.add(&u.scale(&w));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Resolve a closed form at rational u_v samples into Q(ζ_p), instantiating
/// the ramified atom through the Weil index of (K_v, β N).
pub fn resolve_closed_form(
    k: &QuadExt,
    case: &LocalCase,
    form: &WhittakerForm,
    u_samples: &[QQ],
) -> Result<Vec<Cyc>> {
    let p = k.fq.p;
    let atom = if form.ram_atom {
        let model = oracle_model(k, case)?;
        match weil_index(&model, case.delta, &binary_space_diag(k, &case.beta))? {
            WeilIndex::GaussUnit(g) => g,
            WeilIndex::Sign(_) => return internal("expected an odd-shift Weil index"),
        }
    } else {
        Cyc::one(p)
    };
    Ok(u_samples
        .iter()
        .map(|s| atom.scale(&form.rat.eval(s)))
        .collect())
}

/// The per-place factor of the assembled modified Eisenstein coefficient:
/// L_v(s+1, χ_v) · W_v(s, φ_v^{(α)}) / vol(O_v), in the global variable u.
/// Ramified places contribute one symbolic atom each.
#[derive(Clone, Debug)]
pub struct AlphaFactor {
    pub rat: URat,
    pub ram_atom: bool,
}

pub fn alpha_factor(k: &QuadExt, case: &LocalCase) -> Result<AlphaFactor> {
    let fq = &k.fq;
    let degv = case.v.deg() as usize;
    let qv = case.v.qv(fq);
    let m = case.m(fq);
    let sp = k.splitting_type(&case.v);
    if m < 0 {
        return Ok(AlphaFactor {
            rat: URat::zero(),
            ram_atom: false,
        });
    }
    let rat_local = match sp {
        SplittingType::Split => {
            // L_v(s+1) cancels the (1 - q^{-1}u) factor: Σ_{r=0}^m u^r
            URat::from_poly(UPoly::from_coeffs(vec![qq(1); (m + 1) as usize]))
        }
        SplittingType::Inert => {
            let lv1 = URat::new(
                UPoly::one(),
                UPoly::one().add(&UPoly::u().scale(&qq_frac(1, qv as i64))),
            );
            let w = w_inert_alpha(k, case)?;
            if case.e(fq) % 2 == 0 {
                // cancellation leaves Σ (-u)^r
                URat::from_poly(geom_alt_sum(m))
            } else {
                w.rat.mul(&lv1)
            }
        }
        SplittingType::Ramified => w_ram_alpha(k, case)?.rat,
    };
    Ok(AlphaFactor {
        rat: rat_local.subst_power(degv),
        ram_atom: sp == SplittingType::Ramified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::gauss_sum;

    fn k3t() -> QuadExt {
        QuadExt::new(Fq::prime(3).unwrap(), Poly::t()).unwrap()
    }

    fn tpow(fq: &Fq, j: i64) -> RatFunc {
        RatFunc::from_poly(Poly::t()).pow(fq, j)
    }

    #[test]
    fn good_place_values() {
        let k = k3t();
        let fq = &k.fq;
        // split v = (t-1)
        let v = Place::finite(fq, Poly::from_coeffs(vec![2, 1])).unwrap();
        let case = LocalCase::new(v, 0, RatFunc::one(), RatFunc::one(), RatFunc::one());
        let w = w_good(&k, &case).unwrap();
        assert_eq!(
            w.rat,
            URat::from_poly(UPoly::one().sub(&UPoly::u().scale(&qq_frac(1, 3))))
        );
        // value at s=0 is 1 - 1/q != 0
        assert_eq!(w.value0().0, qq_frac(2, 3));
        // inert v = (t+1): sign flip
        let v = Place::finite(fq, Poly::from_coeffs(vec![1, 1])).unwrap();
        let case = LocalCase::new(v, 0, RatFunc::one(), RatFunc::one(), RatFunc::one());
        let w = w_good(&k, &case).unwrap();
        assert_eq!(w.value0().0, qq_frac(4, 3));
        // ramified rejected
        let v = Place::finite(fq, Poly::t()).unwrap();
        let case = LocalCase::new(v, 0, RatFunc::one(), RatFunc::one(), RatFunc::one());
        assert!(w_good(&k, &case).is_err());
    }

    #[test]
    fn inert_values_and_derivatives() {
        let k = k3t();
        let fq = &k.fq;
        let v = Place::finite(fq, Poly::from_coeffs(vec![1, 1])).unwrap();
        let qv = qq(3);
        for ordy in 0..2i64 {
            for ordb in 0..4i64 {
                let case = LocalCase::new(
                    v.clone(),
                    0,
                    tpow(fq, 0).mul(fq, &RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).pow(fq, ordy)),
                    RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).pow(fq, ordb),
                    RatFunc::one(),
                );
                let m = case.m(fq);
                assert_eq!(m, 2 * ordy + ordb);
                // tilde value at 0: (-1)^{e'} (1 + q^{-1})   [W/vol]
                let wt = w_inert_tilde(&k, &case).unwrap();
                let ep = case.e_prime(fq);
                let expected = qq(if ep % 2 == 0 { 1 } else { -1 })
                    * (qq(1) + qq(1) / qv.clone());
                assert_eq!(wt.value0().0, expected);
                // zero iff m < 0 never here; vanishing of alpha at 0 iff in Diff
                let wa = w_inert_alpha(&k, &case).unwrap();
                let in_diff = case.diff_sign(&k) == -1;
                assert_eq!(wa.value0().0.is_zero(), in_diff, "m={m} ordb={ordb}");
                if in_diff {
                    // Lemma display for the derivative, bracket with
                    // σ = (1+(-1)^{e'})/2
                    let sigma = qq((1 + if ep % 2 == 0 { 1 } else { -1 }) / 2);
                    let sign = if (ep - 1) % 2 == 0 { qq(1) } else { qq(-1) };
                    let bracket = (qq(m + 1) - sigma.clone())
                        + (qq(m + 1) + sigma.clone()) / qv.clone();
                    let expect = sign * bracket / qq(2);
                    let (d, atom) = wa.sderiv0_lnqv();
                    assert!(!atom);
                    assert_eq!(d.c, expect, "m={m}");
                }
            }
        }
    }

    #[test]
    fn inert_m_negative_is_zero() {
        let k = k3t();
        let fq = &k.fq;
        let v = Place::finite(fq, Poly::from_coeffs(vec![1, 1])).unwrap();
        let case = LocalCase::new(
            v,
            0,
            RatFunc::one(),
            RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).inv(fq),
            RatFunc::one(),
        );
        assert!(w_inert_tilde(&k, &case).unwrap().is_zero());
        assert!(w_inert_alpha(&k, &case).unwrap().is_zero());
    }

    #[test]
    fn ramified_shapes() {
        let k = k3t();
        let fq = &k.fq;
        let v = Place::finite(fq, Poly::t()).unwrap();
        // beta = t: in Diff at (t)? chi_t(beta*alpha) = (t^2, t) = +1: not.
        // beta = -1: (β α, D)_(t) = (-1, t) = legendre(-1) = -1: in Diff.
        let case = LocalCase::new(
            v.clone(),
            0,
            RatFunc::one(),
            RatFunc::from_int(fq, -1),
            RatFunc::one(),
        );
        assert_eq!(case.diff_sign(&k), -1);
        let wt = w_ram_tilde(&k, &case).unwrap();
        assert!(wt.ram_atom);
        // tilde at 0: 2 * atom
        assert_eq!(wt.value0(), (qq(2), true));
        let wa = w_ram_alpha(&k, &case).unwrap();
        // alpha at 0 vanishes at the Diff place
        assert_eq!(wa.value0(), (qq(0), true));
        // derivative: -(m+1) ln q_v * atom with m = 0
        let (d, atom) = wa.sderiv0_lnqv();
        assert!(atom);
        assert_eq!(d.c, qq(-1));
        // m < 0
        let case2 = LocalCase::new(
            v,
            0,
            RatFunc::one(),
            RatFunc::from_int(fq, -1).mul(fq, &tpow(fq, -1)),
            RatFunc::one(),
        );
        assert!(w_ram_tilde(&k, &case2).unwrap().is_zero());
    }

    #[test]
    fn weil_index_examples() {
        let k = k3t();
        let fq = k.fq.clone();
        let vt = Place::finite(&fq, Poly::t()).unwrap();
        let model = LocalModel::new(fq.clone(), vt.clone(), 12, None).unwrap();
        // hyperbolic plane [1, -1]
        let one = RatFunc::one();
        let none = RatFunc::from_int(&fq, -1);
        assert_eq!(
            weil_index(&model, 0, &[one.clone(), none.clone()]).unwrap(),
            WeilIndex::Sign(1)
        );
        // unit form x² at δ = 0: index 1
        assert_eq!(weil_index(&model, 0, std::slice::from_ref(&one)).unwrap(), WeilIndex::Sign(1));
        // π-scaled form: ε q^{-1/2} equals the normalized residue-field
        // Gauss sum g/q computed independently
        let t = RatFunc::from_poly(Poly::t());
        let w = weil_index(&model, 0, std::slice::from_ref(&t)).unwrap();
        let g = gauss_sum(&fq);
        match w {
            WeilIndex::GaussUnit(c) => {
                assert_eq!(c, g.scale(&qq_frac(1, 3)));
            }
            _ => panic!("expected odd shift"),
        }
        // scaling invariance by squares
        let c2 = RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).square(&fq);
        assert_eq!(
            weil_index(&model, 0, std::slice::from_ref(&t)).unwrap(),
            weil_index(&model, 0, &[t.mul(&fq, &c2)]).unwrap()
        );
    }

    #[test]
    fn oracle_matches_closed_forms_small() {
        // a cheap slice of the acceptance matrix: the full sweep lives in
        // the integration tests
        let k = k3t();
        let fq = &k.fq;
        let samples = [qq(1), qq_frac(1, 3), qq(3)];
        let vi = Place::finite(fq, Poly::from_coeffs(vec![1, 1])).unwrap();
        for ordb in 0..3i64 {
            let case = LocalCase::new(
                vi.clone(),
                0,
                RatFunc::one(),
                RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).pow(fq, ordb),
                RatFunc::one(),
            );
            for (section, form) in [
                (Section::Tilde, w_inert_tilde(&k, &case).unwrap()),
                (Section::Alpha, w_inert_alpha(&k, &case).unwrap()),
            ] {
                let oracle = oracle_whittaker(&k, &case, section, &samples).unwrap();
                let closed = resolve_closed_form(&k, &case, &form, &samples).unwrap();
                assert_eq!(oracle, closed, "inert ordb={ordb} {section:?}");
            }
        }
        let vt = Place::finite(fq, Poly::t()).unwrap();
        for (num, beta) in [
            (1, RatFunc::from_int(fq, -1)),
            (2, RatFunc::from_poly(Poly::t())),
        ] {
            let case = LocalCase::new(vt.clone(), 0, RatFunc::one(), beta, RatFunc::one());
            for (section, form) in [
                (Section::Tilde, w_ram_tilde(&k, &case).unwrap()),
                (Section::Alpha, w_ram_alpha(&k, &case).unwrap()),
            ] {
                let oracle = oracle_whittaker(&k, &case, section, &samples).unwrap();
                let closed = resolve_closed_form(&k, &case, &form, &samples).unwrap();
                assert_eq!(oracle, closed, "ram case {num} {section:?}");
            }
        }
    }
}
