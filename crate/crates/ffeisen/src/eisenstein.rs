//! Fourier coefficients of the central-critical derivative of the modified
//! incoherent Eisenstein series. The β-th coefficient is computed two ways
//! here — the closed form (class-group-weighted representation numbers) and
//! the Whittaker-product assembly — and a third way in `cycles` through
//! special-cycle degrees. All three must agree exactly.

use crate::error::{domain, internal, Result};
use crate::fq::Fq;
use crate::ideals::{class_group, class_sum_count, special_ideals, ClassGroup, SpecialIdeals};
use crate::lfunc::{dirichlet_l, LData};
use crate::lnq::LnQValue;
use crate::places::{ord_at, support_places, Place};
use crate::poly::RatFunc;
use crate::quad::{IncoherentSpace, QuadExt, SplittingType};
use crate::rational::{qq, qq_pow, QQ};
use crate::upoly::{UPoly, URat};
use crate::whittaker::{alpha_factor, LocalCase};
use crate::{ConductorProfile, Idele};
use num::traits::{One, Zero};
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

/// A value prefactor · (c · ln q). The split into prefactor and ln q-part is
/// presentational; equality of EtaValues is equality of the products.
#[derive(Clone, Debug)]
pub struct EtaValue {
    pub prefactor: QQ,
    pub lnq: LnQValue,
}

impl EtaValue {
    pub fn zero() -> EtaValue {
        EtaValue {
            prefactor: QQ::zero(),
            lnq: LnQValue::zero(),
        }
    }
    pub fn total_lnq_coeff(&self) -> QQ {
        self.prefactor.clone() * self.lnq.c.clone()
    }
    pub fn is_zero(&self) -> bool {
        self.total_lnq_coeff().is_zero()
    }
    pub fn same_value(&self, o: &EtaValue) -> bool {
        self.total_lnq_coeff() == o.total_lnq_coeff()
    }
}

/// Everything fixed by (q, D, α, ε_∞, ψ): the incoherent space, the
/// conductor profile, the L-function, and (lazily) the class group.
pub struct Setting {
    pub space: IncoherentSpace,
    pub profile: ConductorProfile,
    pub ldata: LData,
    cg: OnceLock<ClassGroup>,
}

impl Setting {
    /// Builds the setting and enforces the standing parity assumption:
    /// ord_v(α) + δ_v is even at every place inert in K. Rejecting early
    /// keeps the cycle parametrization and the closed form in the same
    /// normalization; retwist ψ (the `twist` of the profile) to fix a
    /// violating α.
    pub fn new(space: IncoherentSpace, profile: ConductorProfile) -> Result<Arc<Setting>> {
        let k = &space.quad;
        let fq = &k.fq;
        let mut check: BTreeSet<Place> = BTreeSet::new();
        for v in support_places(fq, &space.alpha) {
            check.insert(v);
        }
        for v in profile.support() {
            check.insert(v);
        }
        check.insert(Place::Infinity);
        for v in check {
            if k.splitting_type(&v) == SplittingType::Inert {
                let s = ord_at(fq, &v, &space.alpha)? + profile.delta(&v);
                if s % 2 != 0 {
                    return domain(format!(
                        "ord_v(alpha) + delta_v = {s} is odd at the inert place {}; \
                         retwist psi (choose another twist element) or change alpha",
                        v.render(fq)
                    ));
                }
            }
        }
        let ldata = dirichlet_l(k)?;
        Ok(Arc::new(Setting {
            space,
            profile,
            ldata,
            cg: OnceLock::new(),
        }))
    }

    pub fn quad(&self) -> &QuadExt {
        &self.space.quad
    }
    pub fn fq(&self) -> &Arc<Fq> {
        &self.space.quad.fq
    }

    pub fn class_group(&self) -> Result<&ClassGroup> {
        if let Some(cg) = self.cg.get() {
            return Ok(cg);
        }
        let cg = class_group(self.quad(), &self.ldata)?;
        Ok(self.cg.get_or_init(|| cg))
    }

    /// The level divisor 𝔑: ord 1 at ramified places and at inert places
    /// with odd e_v, ord 0 elsewhere. Read-only documentation of the
    /// invariance group of the coefficients.
    pub fn level(&self) -> Vec<Place> {
        let k = self.quad();
        let fq = self.fq();
        let mut out = Vec::new();
        for v in self.space.relevant_places(&[]) {
            match k.splitting_type(&v) {
                SplittingType::Ramified => out.push(v),
                SplittingType::Inert => {
                    let e = -self.profile.delta(&v)
                        - ord_at(fq, &v, &self.space.alpha_eps(&v)).unwrap();
                    if e % 2 != 0 {
                        out.push(v);
                    }
                }
                SplittingType::Split => {}
            }
        }
        out
    }
}

/// One coefficient request: the idele y and β ∈ k (β = 0 for the constant
/// term).
pub struct Request {
    pub setting: Arc<Setting>,
    pub y: Idele,
    pub beta: RatFunc,
}

impl Request {
    pub fn new(setting: Arc<Setting>, y: Idele, beta: RatFunc) -> Request {
        Request { setting, y, beta }
    }

    pub fn fq(&self) -> &Arc<Fq> {
        self.setting.fq()
    }

    /// deg(y); |y| = q^{-deg y}.
    pub fn deg_y(&self) -> i64 {
        self.y.norm_deg(self.fq())
    }

    pub fn chi_y(&self) -> Result<i8> {
        self.setting.quad().chi_global(&self.y)
    }

    /// χ_K(y) |y| as an exact rational.
    pub fn chi_abs_y(&self) -> Result<QQ> {
        Ok(qq(self.chi_y()? as i64) * qq_pow(self.fq().q, -self.deg_y()))
    }

    /// The finite set S of possibly-bad places: ramified places, the
    /// supports of δ, α, ε_∞, y, β, and infinity. Places outside are good
    /// and their Euler factors telescope away.
    pub fn bad_places(&self) -> Result<Vec<Place>> {
        let fq = self.fq();
        let sp = &self.setting.space;
        let mut set: BTreeSet<Place> = BTreeSet::new();
        for p in &sp.quad.ram_primes {
            set.insert(Place::Finite(p.clone()));
        }
        for v in self.setting.profile.support() {
            set.insert(v);
        }
        for f in [&sp.alpha, &sp.eps_inf] {
            for v in support_places(fq, f) {
                set.insert(v);
            }
        }
        if !self.beta.is_zero() {
            for v in support_places(fq, &self.beta) {
                set.insert(v);
            }
        }
        for v in self.y.support() {
            set.insert(v.clone());
        }
        set.insert(Place::Infinity);
        Ok(set.into_iter().collect())
    }

    pub fn local_case(&self, v: &Place) -> LocalCase {
        LocalCase::new(
            v.clone(),
            self.setting.profile.delta(v),
            self.y.component(v),
            self.beta.clone(),
            self.setting.space.alpha_eps(v),
        )
    }

    /// ord_v(y_v² β) + δ_v ≥ 0 at every place (automatic off bad_places).
    pub fn support_ok(&self) -> Result<bool> {
        if self.beta.is_zero() {
            return domain("support condition concerns nonzero beta");
        }
        let fq = self.fq();
        for v in self.bad_places()? {
            if self.local_case(&v).m(fq) < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn diff(&self) -> Result<BTreeSet<Place>> {
        self.setting.space.diff_set(&self.beta)
    }

    pub fn special_ideals(&self) -> Result<SpecialIdeals> {
        special_ideals(
            self.setting.quad(),
            &self.setting.profile,
            &self.y,
            &self.beta,
            &self.setting.space.alpha,
        )
    }

    /// Inert places with odd e_v (the level part driving the twisted
    /// functional equation); empty unless infinity is inert.
    pub fn inert_odd_places(&self) -> Result<Vec<Place>> {
        let k = self.setting.quad();
        let fq = self.fq();
        let mut out = Vec::new();
        for v in self.bad_places()? {
            if k.splitting_type(&v) == SplittingType::Inert {
                let e = -self.setting.profile.delta(&v)
                    - ord_at(fq, &v, &self.setting.space.alpha_eps(&v))?;
                if e % 2 != 0 {
                    out.push(v);
                }
            }
        }
        Ok(out)
    }
}

/// The constant term of the modified series as an exact function of s:
///   χ(y)|y| ( |y|^s L~(-s) - |y|^{-s} L~(s) Π_{v inert, e_v odd}
///             q_v^{-s} L_v(1+s,χ)/L_v(1-s,χ) ),
/// a rational function of u = q^{-s}.
pub fn e0_series(req: &Request) -> Result<URat> {
    if !req.beta.is_zero() {
        return domain("E0_series is the beta = 0 coefficient");
    }
    let ld = &req.setting.ldata;
    let dy = req.deg_y();
    let chi_abs = req.chi_abs_y()?;
    let term1 = URat::monomial(dy).mul(&ld.completed_neg_s());
    let mut twist = URat::one();
    for v in req.inert_odd_places()? {
        let d = v.deg() as usize;
        let qv = v.qv(req.fq());
        // q_v^{-s} L_v(1+s)/L_v(1-s) = (u_v + q_v^{-1}) / (1 + q_v^{-1} u_v)
        let qinv = QQ::one() / qq(qv as i64);
        let num = UPoly::u().add(&UPoly::constant(qinv.clone()));
        let den = UPoly::one().add(&UPoly::u().scale(&qinv));
        let f = URat::new(num, den);
        twist = twist.mul(&f.subst_power(d));
    }
    let term2 = URat::monomial(-dy).mul(&ld.completed()).mul(&twist);
    Ok(term1.sub(&term2).scale(&chi_abs))
}

/// η₀(y): the s-derivative of the constant term at s = 0.
pub fn eta_constant(req: &Request) -> Result<EtaValue> {
    let e0 = e0_series(req)?;
    if !e0.eval(&QQ::one()).is_zero() {
        return internal("constant term does not vanish at the center");
    }
    Ok(EtaValue {
        prefactor: QQ::one(),
        lnq: LnQValue::new(-e0.deriv_at(&QQ::one())),
    })
}

/// The same value from the closed constant-term formula:
/// 2 χ(y)|y| L(0) [ ln|y| - g_K ln q - L'(0)/L(0)
///                  + (1/2) Σ_{v inert, e_v odd} ((q_v-1)/(q_v+1)) ln q_v ].
pub fn eta_constant_formula(req: &Request) -> Result<EtaValue> {
    let ld = &req.setting.ldata;
    let l0 = ld.value0()?;
    let chi_abs = req.chi_abs_y()?;
    let mut bracket = qq(-req.deg_y()) - qq(ld.g_k) - ld.logderiv0()?.c;
    for v in req.inert_odd_places()? {
        let qv = qq(v.qv(req.fq()) as i64);
        bracket += qq(v.deg()) * (qv.clone() - QQ::one())
            / ((qv + QQ::one()) * qq(2));
    }
    Ok(EtaValue {
        prefactor: qq(2) * chi_abs * l0,
        lnq: LnQValue::new(bracket),
    })
}

/// Θ*_β(y): the class-group-averaged representation number,
/// χ(y)|y|/h · Σ_{[𝔄]} #{x ∈ 𝔄 conj(𝔄)^{-1} 𝔶^{-1} 𝔇_β^{-1} : N(x) = 1};
/// zero outside the support condition.
pub fn theta_coeff(req: &Request) -> Result<QQ> {
    if req.beta.is_zero() {
        return domain("theta coefficient needs beta != 0");
    }
    if !req.support_ok()? {
        return Ok(QQ::zero());
    }
    let k = req.setting.quad();
    let cg = req.setting.class_group()?;
    let si = req.special_ideals()?;
    let ideal = si.frak_y.inverse(k).mul(k, &si.d_beta.inverse(k));
    let count = class_sum_count(k, cg, &ideal, &RatFunc::one())?;
    Ok(req.chi_abs_y()? * qq(count as i64) / qq(cg.h() as i64))
}

/// η_β(y) by the closed form: zero when #Diff > 1 or the support condition
/// fails; otherwise the local multiplicity at the unique v₀ times the
/// class-group count.
pub fn eta_coeff_closed(req: &Request) -> Result<EtaValue> {
    if req.beta.is_zero() {
        return domain("eta_coeff_closed needs beta != 0 (see eta_constant)");
    }
    let diff = req.diff()?;
    if diff.len() > 1 || !req.support_ok()? {
        return Ok(EtaValue::zero());
    }
    let v0 = diff.iter().next().unwrap().clone();
    let k = req.setting.quad();
    let fq = req.fq();
    let case = req.local_case(&v0);
    let m0 = case.m(fq);
    let cg = req.setting.class_group()?;
    let si = req.special_ideals()?;
    let ideal = si.frak_y.inverse(k).mul(k, &si.d_beta.inverse(k));
    let count = class_sum_count(k, cg, &ideal, &RatFunc::one())?;
    let f_inf = qq(k.f_inf());
    let prefactor = -req.chi_abs_y()? / f_inf;
    let qv = qq(v0.qv(fq) as i64);
    let mult = match k.splitting_type(&v0) {
        SplittingType::Ramified => qq(m0 + 1),
        SplittingType::Inert => {
            let ep = case.e_prime(fq);
            let sigma = qq((1 + if ep % 2 == 0 { 1 } else { -1 }) / 2);
            ((qv.clone() * (qq(m0 + 1) - sigma.clone())) + (qq(m0 + 1) + sigma))
                / (QQ::one() + qv)
        }
        SplittingType::Split => return internal("Diff contains a split place"),
    };
    Ok(EtaValue {
        prefactor,
        lnq: LnQValue::new(qq(v0.deg()) * mult * qq(count as i64)),
    })
}

/// The fully assembled modified coefficient E~*_β(y, s) as an exact rational
/// function of u: the global L-factor cancels against Λ_1^S, leaving
///   χ(y)|y| q^{g_K} u^{-g_K - deg y} · (vol product) · (atom product)
///   · Π_{v ∈ S} [ L_v(s+1, χ_v) W_v(s, φ_v^{(α)}) / vol(O_v) ].
/// The ramified atoms Π ε_v(V_β) q_v^{-1/2} resolve to the sign
/// (-1)^{Σ_{v inert} e'_v} times an integral power of q.
pub fn assembled_series(req: &Request) -> Result<URat> {
    if req.beta.is_zero() {
        return domain("assembled_series needs beta != 0");
    }
    let k = req.setting.quad();
    let fq = req.fq();
    let places = req.bad_places()?;
    // vol product: Σ_{v in S} δ_v deg v = -2 exactly
    let dsum: i64 = places
        .iter()
        .map(|v| self_delta(req, v) * v.deg())
        .sum();
    if dsum != -2 {
        return internal("bad-place set misses part of the conductor support");
    }
    // atom resolution
    let mut ram_deg_sum: i64 = 0;
    let mut inert_eprime_sum: i64 = 0;
    for v in &places {
        match k.splitting_type(v) {
            SplittingType::Ramified => ram_deg_sum += v.deg(),
            SplittingType::Inert => {
                inert_eprime_sum += req.local_case(v).e_prime(fq);
            }
            SplittingType::Split => {}
        }
    }
    if ram_deg_sum % 2 != 0 {
        return internal("ramified degrees sum to an odd number");
    }
    let atom_sign = if inert_eprime_sum % 2 == 0 { 1 } else { -1 };
    let scale = req.chi_abs_y()?
        * qq_pow(fq.q, req.setting.ldata.g_k)
        * qq_pow(fq.q, 1) // vol product q^{-dsum/2}
        * qq(atom_sign)
        * qq_pow(fq.q, -ram_deg_sum / 2);
    let mut acc = URat::monomial(-req.setting.ldata.g_k - req.deg_y()).scale(&scale);
    for v in &places {
        let f = alpha_factor(k, &req.local_case(v))?;
        acc = acc.mul(&f.rat);
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    Ok(acc)
}

fn self_delta(req: &Request, v: &Place) -> i64 {
    req.setting.profile.delta(v)
}

/// The covariant rescaling (y, β) -> (c^{-1} y, c² β) for a global c. The
/// idele picks up components at every place where χ_K can see the unit part
/// of c, so the pair transforms exactly as the principal action does.
pub fn scale_pair(
    setting: &Setting,
    y: &Idele,
    beta: &RatFunc,
    c: &RatFunc,
) -> (Idele, RatFunc) {
    let fq = setting.fq();
    let extra = setting.space.relevant_places(&[c]);
    let y2 = y.scale_global(fq, &c.inv(fq), &extra);
    let b2 = beta.mul(fq, &c.square(fq));
    (y2, b2)
}

/// η_β(y) along the Whittaker-product path: differentiate the assembled
/// series at s = 0. When #Diff = 1 exactly one local factor vanishes at the
/// center (checked), so the product rule collapses onto that factor.
pub fn eta_coeff_whittaker(req: &Request) -> Result<EtaValue> {
    let series = assembled_series(req)?;
    if series.is_zero() {
        return Ok(EtaValue::zero());
    }
    let diff = req.diff()?;
    // count vanishing local factors
    let k = req.setting.quad();
    let mut vanishing = 0;
    for v in req.bad_places()? {
        let f = alpha_factor(k, &req.local_case(&v))?;
        if !f.rat.is_zero() && f.rat.eval(&QQ::one()).is_zero() {
            vanishing += 1;
        }
    }
    if vanishing != diff.len() {
        return internal(format!(
            "{vanishing} local factors vanish at the center but #Diff = {}",
            diff.len()
        ));
    }
    let center = series.eval(&QQ::one());
    if !center.is_zero() {
        return internal("assembled coefficient does not vanish at the center");
    }
    if diff.len() > 1 {
        // derivative also vanishes: order >= #Diff >= 3
        return Ok(EtaValue::zero());
    }
    Ok(EtaValue {
        prefactor: QQ::one(),
        lnq: LnQValue::new(-series.deriv_at(&QQ::one())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rational::qq_frac;

    fn setting3t() -> Arc<Setting> {
        let fq = Fq::prime(3).unwrap();
        let k = QuadExt::new(fq.clone(), Poly::t()).unwrap();
        let sp = IncoherentSpace::new(k, RatFunc::one(), None).unwrap();
        Setting::new(sp, ConductorProfile::standard(&fq)).unwrap()
    }

    fn y_inf_power(fq: &Arc<Fq>, j: i64) -> Idele {
        Idele::trivial()
            .with(
                Place::Infinity,
                RatFunc::from_poly(Poly::t()).pow(fq, -j),
            )
            .unwrap()
    }

    #[test]
    fn constant_term_pinned_and_dual_path() {
        let s = setting3t();
        let fq = s.fq().clone();
        // trivial y: eta_0 = 0 for D = t (L = 1, g = 0)
        let req = Request::new(s.clone(), Idele::trivial(), RatFunc::zero());
        let v = eta_constant(&req).unwrap();
        assert!(v.is_zero());
        let f = eta_constant_formula(&req).unwrap();
        assert!(f.is_zero());
        // nontrivial y: both routes agree
        for j in 1..4 {
            let req = Request::new(s.clone(), y_inf_power(&fq, j), RatFunc::zero());
            let a = eta_constant(&req).unwrap();
            let b = eta_constant_formula(&req).unwrap();
            assert!(a.same_value(&b), "j = {j}");
        }
    }

    #[test]
    fn constant_term_dual_path_genus1_and_inert() {
        let fq = Fq::prime(3).unwrap();
        for d in [vec![2u32, 2, 0, 1], vec![1, 0, 2]] {
            let k = QuadExt::new(fq.clone(), Poly::from_coeffs(d)).unwrap();
            let sp = IncoherentSpace::new(k, RatFunc::one(), None).unwrap();
            let s = Setting::new(sp, ConductorProfile::standard(&fq)).unwrap();
            for j in 0..3 {
                let req = Request::new(s.clone(), y_inf_power(&fq, j), RatFunc::zero());
                let a = eta_constant(&req).unwrap();
                let b = eta_constant_formula(&req).unwrap();
                assert!(a.same_value(&b));
            }
        }
    }

    #[test]
    fn antisymmetry_of_constant_term() {
        // with no inert-odd places, E0(s) = -E0(-s) exactly
        let s = setting3t();
        let fq = s.fq().clone();
        for j in 0..3 {
            let req = Request::new(s.clone(), y_inf_power(&fq, j), RatFunc::zero());
            assert!(req.inert_odd_places().unwrap().is_empty());
            let e0 = e0_series(&req).unwrap();
            let flipped = e0.subst_inv_scale(&QQ::one());
            assert_eq!(e0, flipped.neg());
        }
    }

    #[test]
    fn constant_term_invariant_under_principal_scaling() {
        let s = setting3t();
        let fq = s.fq().clone();
        let y = y_inf_power(&fq, 2);
        let req = Request::new(s.clone(), y.clone(), RatFunc::zero());
        let base = eta_constant(&req).unwrap();
        for c in [
            RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])),
            RatFunc::from_poly(Poly::from_coeffs(vec![2, 0, 1])),
        ] {
            let (scaled, _) = scale_pair(&s, &y, &RatFunc::one(), &c);
            let req2 = Request::new(s.clone(), scaled, RatFunc::zero());
            let v = eta_constant(&req2).unwrap();
            assert!(v.same_value(&base));
        }
    }

    #[test]
    fn first_instance_three_values() {
        // q=3, D=t, α=1, y_inf = 1/t, β = -1: Diff = {(t)} ramified,
        // worked out by hand: η = (2/3) ln 3
        let s = setting3t();
        let fq = s.fq().clone();
        let req = Request::new(s, y_inf_power(&fq, 1), RatFunc::from_int(&fq, -1));
        let diff = req.diff().unwrap();
        assert_eq!(diff.len(), 1);
        assert!(req.support_ok().unwrap());
        let closed = eta_coeff_closed(&req).unwrap();
        assert_eq!(closed.total_lnq_coeff(), qq_frac(2, 3));
        let whit = eta_coeff_whittaker(&req).unwrap();
        assert_eq!(whit.total_lnq_coeff(), qq_frac(2, 3));
        // theta coefficient: χ(y)|y| (1/h) Σ = -1 * 1/3 * 2
        let th = theta_coeff(&req).unwrap();
        assert_eq!(th, qq_frac(-2, 3));
    }

    #[test]
    fn inert_instance_three_values() {
        // q=3, D=t, α=1, y_inf = 1/t², β = t+1: Diff = {(t+1)} inert,
        // hand value η = -(4/9) ln 3
        let s = setting3t();
        let fq = s.fq().clone();
        let req = Request::new(
            s,
            y_inf_power(&fq, 2),
            RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])),
        );
        let diff = req.diff().unwrap();
        assert_eq!(diff.len(), 1);
        let closed = eta_coeff_closed(&req).unwrap();
        assert_eq!(closed.total_lnq_coeff(), qq_frac(-4, 9));
        let whit = eta_coeff_whittaker(&req).unwrap();
        assert_eq!(whit.total_lnq_coeff(), qq_frac(-4, 9));
    }

    #[test]
    fn vanishing_orders() {
        let s = setting3t();
        let fq = s.fq().clone();
        // #Diff = 1 instance: order exactly 1
        let req = Request::new(
            s.clone(),
            y_inf_power(&fq, 1),
            RatFunc::from_int(&fq, -1),
        );
        let series = assembled_series(&req).unwrap();
        assert_eq!(series.vanishing_order_at_s0(3), 1);
        // a #Diff = 3 instance: β = -(t)(t+1)·? need χ = -1 at three places.
        // β = -(t+1)(t²+1): check Diff and order >= 3 if it comes out 3
        let mut found = false;
        for d in 2..5usize {
            for b in crate::poly::polys_of_degree(&fq, d, false) {
                let beta = RatFunc::from_poly(b);
                let req = Request::new(s.clone(), y_inf_power(&fq, 3), beta);
                let diff = req.diff().unwrap();
                if diff.len() == 3 && req.support_ok().unwrap() {
                    let series = assembled_series(&req).unwrap();
                    assert!(series.vanishing_order_at_s0(3) >= 3);
                    assert!(eta_coeff_whittaker(&req).unwrap().is_zero());
                    assert!(eta_coeff_closed(&req).unwrap().is_zero());
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        assert!(found, "no #Diff = 3 instance in range");
    }

    #[test]
    fn covariance_beta_scaling() {
        let s = setting3t();
        let fq = s.fq().clone();
        let y = y_inf_power(&fq, 2);
        let beta = RatFunc::from_poly(Poly::from_coeffs(vec![1, 1]));
        let req = Request::new(s.clone(), y.clone(), beta.clone());
        let base = eta_coeff_closed(&req).unwrap();
        for c in [
            RatFunc::from_poly(Poly::t()),
            RatFunc::from_poly(Poly::from_coeffs(vec![2, 1])),
            RatFunc::new(&fq, Poly::one(), Poly::from_coeffs(vec![1, 1])),
        ] {
            let (y2, beta2) = scale_pair(&s, &y, &beta, &c);
            let req2 = Request::new(s.clone(), y2, beta2);
            let v = eta_coeff_closed(&req2).unwrap();
            assert!(v.same_value(&base), "c = {}", c.render(&fq));
            let w = eta_coeff_whittaker(&req2).unwrap();
            assert!(w.same_value(&base));
        }
    }

    #[test]
    fn theta_sign_obstruction_and_class_average() {
        use crate::ideals::{class_sum_count, rep_count};
        // theta carries the sign of χ(y); the count part is nonnegative and
        // zero under any local obstruction
        let s = setting3t();
        let fq = s.fq().clone();
        // local obstruction: β = t+1 is a non-norm at the inert place (t+1)
        // and the support fails nowhere, yet the count vanishes for the
        // trivial-class ideal with an extra (t+1)-power
        let req = Request::new(
            s.clone(),
            y_inf_power(&fq, 2),
            RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).mul(
                &fq,
                &RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])).square(&fq),
            ),
        );
        if req.support_ok().unwrap() {
            let th = theta_coeff(&req).unwrap();
            let chi_abs = req.chi_abs_y().unwrap();
            // sign(theta) = sign(χ(y)) when nonzero
            assert!((th.clone() / chi_abs) >= QQ::zero());
        }
        // h > 2: the class average genuinely differs from h times the
        // single-class count (2-torsion classes alone cannot witness this:
        // there 𝔄𝔄̄^{-1} is principal)
        let fq3 = Fq::prime(3).unwrap();
        let mut field = None;
        for d in crate::poly::polys_of_degree(&fq3, 3, false) {
            let Ok(k2) = QuadExt::new(fq3.clone(), d) else {
                continue;
            };
            let ld = crate::lfunc::dirichlet_l(&k2).unwrap();
            if ld.class_number().unwrap() >= 3 {
                field = Some(k2);
                break;
            }
        }
        let k2 = field.expect("a cubic D with h >= 3 exists over F_3");
        let ld = crate::lfunc::dirichlet_l(&k2).unwrap();
        let cg = crate::ideals::class_group(&k2, &ld).unwrap();
        let h = cg.h();
        let mut witnessed = false;
        for d in 0..3usize {
            for b in crate::poly::polys_of_degree(&fq3, d, false) {
                if b.is_zero() {
                    continue;
                }
                let target = RatFunc::from_poly(b);
                let total =
                    class_sum_count(&k2, &cg, &crate::ideals::FracIdeal::one(), &target).unwrap();
                let first =
                    rep_count(&k2, &crate::ideals::FracIdeal::one(), &target).unwrap();
                if total != h * first {
                    witnessed = true;
                    break;
                }
            }
            if witnessed {
                break;
            }
        }
        assert!(witnessed, "class average never differed from a single class");
    }

    #[test]
    fn telescoping_good_places() {
        // enlarging S by a good place leaves the assembled series unchanged:
        // here implicitly tested by adding a split place to the y-support
        // with a unit component
        let s = setting3t();
        let fq = s.fq().clone();
        let beta = RatFunc::from_int(&fq, -1);
        let req = Request::new(s.clone(), y_inf_power(&fq, 1), beta.clone());
        let a = assembled_series(&req).unwrap();
        // same idele plus a trivial unit component at a split place
        let y2 = y_inf_power(&fq, 1)
            .with(
                Place::finite(&fq, Poly::from_coeffs(vec![2, 1])).unwrap(),
                RatFunc::from_int(&fq, 2),
            )
            .unwrap();
        let req2 = Request::new(s, y2, beta);
        let b = assembled_series(&req2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn standing_assumption_enforced() {
        let fq = Fq::prime(3).unwrap();
        let k = QuadExt::new(fq.clone(), Poly::t()).unwrap();
        // alpha = t+1 has odd valuation at the inert place (t+1)
        let sp = IncoherentSpace::new(
            k,
            RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])),
            None,
        )
        .unwrap();
        let err = Setting::new(sp, ConductorProfile::standard(&fq));
        assert!(err.is_err());
    }
}
