//! Degrees of the special 0-cycles Z(𝔦, β) and z(y, β), computed through the
//! counting identities (supersingular endomorphism counts are realized as
//! norm-form lattice counts, multiplicities as valuations of β/(α N𝔦)), and
//! the verifier of the main identity
//!   η_β(y) = -(χ(y)|y| / f_∞) · deg z(y, β).

use crate::eisenstein::{eta_coeff_closed, eta_coeff_whittaker, EtaValue, Request};
use crate::error::{domain, internal, Result};
use crate::ideals::{class_sum_count, d_ideal, special_ideals, FracIdeal};
use crate::lnq::LnQValue;
use crate::places::{ord_at, support_places, Place};
use crate::poly::{Poly, RatFunc};
use crate::quad::SplittingType;
use crate::rational::{qq, QQ};
use num::traits::One;

/// The degree of a special cycle: a finite-place part (multiplicity × count
/// at a unique obstructed place) or an infinity part (λ_∞-shifted rational
/// multiplicity times a count over the cusp classes). Both are rational
/// multiples of ln q.
#[derive(Clone, Debug)]
pub struct CycleDegree {
    pub total: LnQValue,
    pub parts: Vec<CyclePart>,
}

#[derive(Clone, Debug)]
pub struct CyclePart {
    pub place: Place,
    /// (ord + 1) at a finite place; ord_∞(y²β) + δ_∞ + λ_∞ at infinity.
    pub multiplicity: QQ,
    pub count: u64,
}

impl CycleDegree {
    pub fn zero() -> CycleDegree {
        CycleDegree {
            total: LnQValue::zero(),
            parts: vec![],
        }
    }
}

/// λ_∞ = (3 + (-1)^{f_∞} + q_∞ (1 - (-1)^{f_∞})) / (2 (1 + q_∞)), evaluated
/// exactly as displayed: 1 when infinity ramifies, 2/(1+q) when it is inert.
pub fn lambda_inf(f_inf: i64, q_inf: u64) -> QQ {
    let sign = if f_inf % 2 == 0 { qq(1) } else { qq(-1) };
    let q = qq(q_inf as i64);
    (qq(3) + sign.clone() + q.clone() * (qq(1) - sign)) / ((QQ::one() + q) * qq(2))
}

/// deg Z(𝔦, β) for an integral ideal 𝔦 and β ∈ A: zero unless exactly one
/// finite place v₀, non-split in K, has χ_{K,v₀}(β/α) = -1 while every other
/// finite place has +1; then
///   ln q_{v₀} · (ord_{v₀}(β/(α N𝔦)) + 1)
///     · Σ_{[𝔄]} #{x ∈ 𝔄𝔄̄^{-1}·𝔦·𝔇̄_α·𝔇_β^{-1} : N x = 1}.
pub fn deg_z_ideal(req: &Request, ideal: &FracIdeal, beta: &Poly) -> Result<CycleDegree> {
    if !ideal.is_integral() {
        return domain("deg_Z needs an integral ideal");
    }
    if beta.is_zero() {
        return domain("deg_Z needs beta != 0");
    }
    let k = req.setting.quad();
    let fq = req.fq();
    let alpha = &req.setting.space.alpha;
    let beta_rf = RatFunc::from_poly(beta.clone());
    let ratio = beta_rf.div(fq, alpha);
    // scan the finite places where chi could be -1
    let mut candidates: Vec<Place> = support_places(fq, &ratio)
        .into_iter()
        .filter(|v| !v.is_infinite())
        .collect();
    for p in &k.ram_primes {
        candidates.push(Place::Finite(p.clone()));
    }
    candidates.sort();
    candidates.dedup();
    let mut v0 = None;
    for v in candidates {
        if k.chi_v(&v, &ratio)? == -1 {
            if v0.is_some() {
                return Ok(CycleDegree::zero());
            }
            v0 = Some(v);
        }
    }
    let Some(v0) = v0 else {
        return Ok(CycleDegree::zero());
    };
    debug_assert_ne!(k.splitting_type(&v0), SplittingType::Split);
    let n_ideal = ideal.norm_gen(k);
    let mult = ord_at(fq, &v0, &ratio.div(fq, &n_ideal))? + 1;
    if mult <= 0 {
        // no point carries the prescribed torsion depth
        return Ok(CycleDegree::zero());
    }
    // the multiplicity is (local ring length)·(residue degree): it must be
    // divisible by f_{v0} = 2 at inert places
    if k.splitting_type(&v0) == SplittingType::Inert && mult % 2 != 0 {
        return internal("cycle multiplicity not divisible by the residue degree");
    }
    let d_beta = d_ideal(k, &req.setting.profile, &beta_rf)?;
    let d_alpha = d_ideal(k, &req.setting.profile, alpha)?;
    let count_ideal = ideal.mul(k, &d_alpha.conj(k)).mul(k, &d_beta.inverse(k));
    let cg = req.setting.class_group()?;
    let count = class_sum_count(k, cg, &count_ideal, &RatFunc::one())?;
    let total = LnQValue::new(qq(v0.deg()) * qq(mult) * qq(count as i64));
    Ok(CycleDegree {
        total,
        parts: vec![CyclePart {
            place: v0,
            multiplicity: qq(mult),
            count,
        }],
    })
}

/// Rescale (y, β) to (y', β') with β' ∈ A and 𝔦_{y'} integral; the cycle is
/// defined through this reduction and is independent of the choice.
pub fn reduce_pair(req: &Request) -> Result<(crate::Idele, Poly, FracIdeal)> {
    let k = req.setting.quad();
    let fq = req.fq();
    let alpha = &req.setting.space.alpha;
    let extra = req.setting.space.relevant_places(&[]);
    // step 1: clear the denominator of β
    let a1 = RatFunc::from_poly(req.beta.den.clone());
    let y1 = req.y.scale_global(fq, &a1.inv(fq), &extra);
    let b1 = req.beta.mul(fq, &a1.square(fq));
    // step 2: clear the denominator of 𝔦_{y1}
    let si1 = special_ideals(k, &req.setting.profile, &y1, &b1, alpha)?;
    let a2 = RatFunc::from_poly(si1.i_y.den.clone());
    let y2 = y1.scale_global(fq, &a2.inv(fq), &extra);
    let b2 = b1.mul(fq, &a2.square(fq));
    let si2 = special_ideals(k, &req.setting.profile, &y2, &b2, alpha)?;
    if !si2.i_y.is_integral() {
        return internal("pair reduction failed to make the cycle ideal integral");
    }
    let Some(bpoly) = b2.as_poly().cloned() else {
        return internal("pair reduction failed to clear beta");
    };
    Ok((y2, bpoly, si2.i_y))
}

/// z(y, β): zero outside the support condition; otherwise the reduced
/// finite-place cycle plus the infinity divisor
///   f_∞^{-1} (ord_∞(y²β) + δ_∞ + λ_∞)
///     · Σ_{[𝔄]} #{x ∈ 𝔄𝔄̄^{-1} conj(𝔦_y) : N x = β/α} · ∞'_𝔄,
/// whose points all have degree f_∞ · ln q. At most one of the two parts is
/// nonzero: a finite obstruction kills the norm equation at infinity and
/// conversely.
pub fn z_cycle(req: &Request) -> Result<CycleDegree> {
    if req.beta.is_zero() {
        return domain("z_cycle needs beta != 0");
    }
    if !req.support_ok()? {
        return Ok(CycleDegree::zero());
    }
    let k = req.setting.quad();
    let fq = req.fq();
    let (y2, b2, i_y) = reduce_pair(req)?;
    let finite = deg_z_ideal(req, &i_y, &b2)?;

    // infinity part
    let alpha = &req.setting.space.alpha;
    let ratio = RatFunc::from_poly(b2.clone()).div(fq, alpha);
    let cg = req.setting.class_group()?;
    let count = class_sum_count(k, cg, &i_y.conj(k), &ratio)?;
    let mut parts = finite.parts;
    let mut total = finite.total;
    if count > 0 {
        let m_inf = 2 * ord_at(fq, &Place::Infinity, &y2.component(&Place::Infinity))?
            + ord_at(fq, &Place::Infinity, &RatFunc::from_poly(b2.clone()))?
            + req.setting.profile.delta(&Place::Infinity);
        let mult = qq(m_inf) + lambda_inf(k.f_inf(), fq.q);
        if !parts.is_empty() {
            return internal("cycle supported at a finite place and at infinity");
        }
        // deg ∞'_𝔄 = f_∞ ln q cancels the f_∞^{-1} normalization
        total = LnQValue::new(mult.clone() * qq(count as i64));
        parts.push(CyclePart {
            place: Place::Infinity,
            multiplicity: mult,
            count,
        });
    }
    Ok(CycleDegree { total, parts })
}

/// The cycle-path value of the coefficient:
/// -(χ(y)|y| / f_∞) · deg z(y, β) (with #Pic(A) = 1).
pub fn eta_coeff_cycle(req: &Request) -> Result<EtaValue> {
    let z = z_cycle(req)?;
    let f_inf = qq(req.setting.quad().f_inf());
    Ok(EtaValue {
        prefactor: -req.chi_abs_y()? / f_inf,
        lnq: z.total,
    })
}

/// The three-path report for one (y, β).
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub diff_size: usize,
    pub diff_rendered: Vec<String>,
    pub support_ok: bool,
    pub closed: EtaValue,
    pub whittaker: EtaValue,
    pub cycle: EtaValue,
    pub z_degree: LnQValue,
    pub pass_closed_whittaker: bool,
    pub pass_closed_cycle: bool,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.pass_closed_whittaker && self.pass_closed_cycle
    }
}

/// Compute η_β(y) three independent ways and compare exactly. Failures are
/// report entries, not errors.
pub fn verify_main(req: &Request) -> Result<VerifyReport> {
    let fq = req.fq();
    let diff = req.diff()?;
    let closed = eta_coeff_closed(req)?;
    let whittaker = eta_coeff_whittaker(req)?;
    let z = z_cycle(req)?;
    let cycle = EtaValue {
        prefactor: -req.chi_abs_y()? / qq(req.setting.quad().f_inf()),
        lnq: z.total.clone(),
    };
    Ok(VerifyReport {
        diff_size: diff.len(),
        diff_rendered: diff.iter().map(|v| v.render(fq)).collect(),
        support_ok: req.support_ok()?,
        pass_closed_whittaker: closed.same_value(&whittaker),
        pass_closed_cycle: closed.same_value(&cycle),
        closed,
        whittaker,
        cycle,
        z_degree: z.total,
    })
}
