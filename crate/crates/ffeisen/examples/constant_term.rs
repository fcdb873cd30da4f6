//! The constant Fourier coefficient η₀(y): the exact s-function of the
//! constant term (a rational function of u = q^{-s}), its antisymmetry, and
//! the agreement of the series derivative with the closed formula involving
//! L'(0)/L(0).
//!
//!     cargo run --example constant_term

use ffeisen::eisenstein::{e0_series, eta_constant, eta_constant_formula, Request, Setting};
use ffeisen::lnq::LnQValue;
use ffeisen::poly::{Poly, RatFunc};
use ffeisen::quad::{IncoherentSpace, QuadExt};
use ffeisen::rational::QQ;
use ffeisen::{ConductorProfile, Fq, Idele, Place};
use num::traits::{One, Zero};

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    for d in [Poly::t(), Poly::from_coeffs(vec![1, 0, 2])] {
        let k = QuadExt::new(fq.clone(), d)?;
        let space = IncoherentSpace::new(k, RatFunc::one(), None)?;
        let setting = Setting::new(space, ConductorProfile::standard(&fq))?;
        println!("D = {}", setting.quad().d.render(&fq));
        for j in 0..3i64 {
            let y = Idele::trivial().with(
                Place::Infinity,
                RatFunc::from_poly(Poly::t()).pow(&fq, -j),
            )?;
            let req = Request::new(setting.clone(), y, RatFunc::zero());
            let series = e0_series(&req)?;
            assert!(series.eval(&QQ::one()).is_zero(), "central vanishing");
            let a = eta_constant(&req)?;
            let b = eta_constant_formula(&req)?;
            assert!(a.same_value(&b));
            println!(
                "  y_inf = t^-{j}: eta_0 = {}",
                LnQValue::new(a.total_lnq_coeff()).render_approx(fq.q)
            );
        }
        // without inert places of odd level the constant term is odd in s
        let req = Request::new(setting.clone(), Idele::trivial(), RatFunc::zero());
        if req.inert_odd_places()?.is_empty() {
            let e0 = e0_series(&req)?;
            assert_eq!(e0.subst_inv_scale(&QQ::one()).neg(), e0);
            println!("  E0(s) = -E0(-s) holds as a rational-function identity");
        } else {
            println!(
                "  inert place(s) of odd level present: twisted symmetry instead"
            );
        }
    }
    Ok(())
}
