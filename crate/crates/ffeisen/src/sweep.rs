//! Sweep generation for the main-identity verifier: enumerate admissible
//! (D, α, twist, y, β) instances at desk scale, evaluate the three paths on
//! each, and collect a deterministic, canonically ordered report. Instances
//! fan out across worker threads; ordering never depends on scheduling.

use crate::cycles::{verify_main, VerifyReport};
use crate::eisenstein::{Request, Setting};
use crate::error::Result;
use crate::fq::Fq;
use crate::places::{Idele, Place};
use crate::poly::{polys_of_degree, Poly, RatFunc};
use crate::quad::{IncoherentSpace, QuadExt};
use crate::report::{instance_json, InstanceJson};
use crate::ConductorProfile;
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub q: u64,
    pub max_deg_d: usize,
    pub max_deg_beta: usize,
    /// Exponents j for the infinity component y_inf = t^{-j}.
    pub y_inf_range: Vec<i64>,
    /// Include a variant with a finite idele component.
    pub finite_y_components: bool,
    /// Twist elements c for the conductor profile.
    pub twists: Vec<&'static str>,
    /// Keep only instances with #Diff = 1 (the identity is trivially 0=0
    /// otherwise; those are covered by dedicated tests).
    pub only_diff_one: bool,
    /// Stop after this many kept instances (0 = no cap).
    pub cap: usize,
}

impl SweepConfig {
    pub fn desk_scale(q: u64) -> SweepConfig {
        SweepConfig {
            q,
            max_deg_d: 3,
            max_deg_beta: 4,
            y_inf_range: vec![1, 2, 3],
            finite_y_components: true,
            twists: vec!["1"],
            only_diff_one: true,
            cap: 0,
        }
    }
}

pub struct SweepInstance {
    pub setting: Arc<Setting>,
    pub y: Idele,
    pub beta: RatFunc,
    pub labels: (String, String, String, String, String),
}

/// All valid squarefree imaginary D of degree 1..=max over F_q, canonical
/// order.
pub fn d_candidates(fq: &Arc<Fq>, max_deg: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for p in polys_of_degree(fq, d, false) {
            if QuadExt::new(fq.clone(), p.clone()).is_ok() {
                out.push(p);
            }
        }
    }
    out
}

/// α-candidates satisfying the standing parity assumption for the given
/// profile (checked later by Setting::new; the list just avoids obvious
/// rejects like odd-degree α at an inert infinity).
fn alpha_candidates(fq: &Arc<Fq>) -> Vec<RatFunc> {
    vec![
        RatFunc::one(),
        RatFunc::from_poly(Poly::constant(fq.generator)),
        RatFunc::from_poly(Poly::t()),
    ]
}

pub fn generate(cfg: &SweepConfig) -> Result<Vec<SweepInstance>> {
    let fq = field_for(cfg.q)?;
    let mut out = Vec::new();
    'outer: for d in d_candidates(&fq, cfg.max_deg_d) {
        let quad = QuadExt::new(fq.clone(), d.clone())?;
        for alpha in alpha_candidates(&fq) {
            for twist_s in &cfg.twists {
                let twist = crate::textio::parse_ratfunc(&fq, twist_s)?;
                let profile = ConductorProfile::new(&fq, twist)?;
                let Ok(space) = IncoherentSpace::new(quad.clone(), alpha.clone(), None) else {
                    continue;
                };
                let Ok(setting) = Setting::new(space, profile) else {
                    continue; // standing assumption violated; skip
                };
                let mut ys: Vec<(String, Idele)> = Vec::new();
                for &j in &cfg.y_inf_range {
                    let y = Idele::trivial()
                        .with(Place::Infinity, RatFunc::from_poly(Poly::t()).pow(&fq, -j))?;
                    ys.push((format!("inf=1/t^{j}"), y));
                }
                if cfg.finite_y_components {
                    let vt1 = Place::finite(&fq, Poly::from_coeffs(vec![1, 1]))?;
                    let y = Idele::trivial()
                        .with(Place::Infinity, RatFunc::from_poly(Poly::t()).pow(&fq, -3))?
                        .with(vt1, RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])))?;
                    ys.push(("inf=1/t^3,(t+1)=t+1".into(), y));
                }
                for (ylabel, y) in &ys {
                    for bd in 0..=cfg.max_deg_beta {
                        for b in polys_of_degree(&fq, bd, false) {
                            if b.is_zero() {
                                continue;
                            }
                            let beta = RatFunc::from_poly(b);
                            let req = Request::new(setting.clone(), y.clone(), beta.clone());
                            if !req.support_ok()? {
                                continue;
                            }
                            if cfg.only_diff_one && req.diff()?.len() != 1 {
                                continue;
                            }
                            out.push(SweepInstance {
                                setting: setting.clone(),
                                y: y.clone(),
                                beta: beta.clone(),
                                labels: (
                                    d.render(&fq),
                                    alpha.render(&fq),
                                    twist_s.to_string(),
                                    ylabel.clone(),
                                    beta.render(&fq),
                                ),
                            });
                            if cfg.cap > 0 && out.len() >= cfg.cap {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// F_q for a prime power q, with the canonical modulus for extensions.
pub fn field_for(q: u64) -> Result<Arc<Fq>> {
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = 0u32;
    let mut n = q;
    while n.is_multiple_of(p) {
        n /= p;
        r += 1;
    }
    if n != 1 {
        return crate::error::domain(format!("q = {q} is not a prime power"));
    }
    if r == 1 {
        Fq::prime(p)
    } else {
        Fq::extension(p, r, None)
    }
}

/// Evaluate the three paths on every instance, in parallel, and return the
/// reports in the instance order.
pub fn run(instances: &[SweepInstance]) -> Result<Vec<(InstanceJson, VerifyReport)>> {
    // warm the class-group caches sequentially: settings are shared
    for i in instances {
        i.setting.class_group()?;
    }
    let reports: Vec<Result<(InstanceJson, VerifyReport)>> = instances
        .par_iter()
        .map(|inst| {
            let req = Request::new(inst.setting.clone(), inst.y.clone(), inst.beta.clone());
            let rep = verify_main(&req)?;
            let (d, a, tw, yl, bl) = inst.labels.clone();
            let js = instance_json(inst.setting.fq().q, d, a, tw, yl, bl, &rep);
            Ok((js, rep))
        })
        .collect();
    reports.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let mut cfg = SweepConfig::desk_scale(3);
        cfg.max_deg_d = 2;
        cfg.max_deg_beta = 2;
        cfg.cap = 40;
        let instances = generate(&cfg).unwrap();
        assert!(instances.len() >= 20, "got {}", instances.len());
        let reports = run(&instances).unwrap();
        for (js, rep) in &reports {
            assert!(rep.pass(), "{js:?}");
        }
    }
}
