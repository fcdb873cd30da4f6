//! One nonzero Fourier coefficient of the central derivative, computed along
//! all three paths: the closed form (class-group representation counts), the
//! Whittaker-product derivative, and the special-cycle degree.
//!
//!     cargo run --example eta_coefficient

use ffeisen::cycles::{verify_main, z_cycle};
use ffeisen::eisenstein::{Request, Setting};
use ffeisen::lnq::LnQValue;
use ffeisen::poly::{Poly, RatFunc};
use ffeisen::quad::{IncoherentSpace, QuadExt};
use ffeisen::{ConductorProfile, Fq, Idele, Place};

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    let k = QuadExt::new(fq.clone(), Poly::t())?;
    let space = IncoherentSpace::new(k, RatFunc::one(), None)?;
    let setting = Setting::new(space, ConductorProfile::standard(&fq))?;

    // y = 1 except y_inf = 1/t; β = -1: the obstruction sits at the
    // ramified place (t)
    let y = Idele::trivial().with(Place::Infinity, RatFunc::new(&fq, Poly::one(), Poly::t()))?;
    let beta = RatFunc::from_int(&fq, -1);
    let req = Request::new(setting.clone(), y, beta);

    println!(
        "Diff(beta, C) = {:?}",
        req.diff()?
            .iter()
            .map(|v| v.render(&fq))
            .collect::<Vec<_>>()
    );
    let z = z_cycle(&req)?;
    println!("deg z(y, beta) = {}", z.total.render());
    for part in &z.parts {
        println!(
            "  supported at {} with multiplicity {} and count {}",
            part.place.render(&fq),
            ffeisen::rational::qq_str(&part.multiplicity),
            part.count
        );
    }
    let rep = verify_main(&req)?;
    println!(
        "closed    = {}",
        LnQValue::new(rep.closed.total_lnq_coeff()).render_approx(fq.q)
    );
    println!(
        "whittaker = {}",
        LnQValue::new(rep.whittaker.total_lnq_coeff()).render_approx(fq.q)
    );
    println!(
        "cycle     = {}",
        LnQValue::new(rep.cycle.total_lnq_coeff()).render_approx(fq.q)
    );
    assert!(rep.pass());
    println!("all three paths agree exactly");
    Ok(())
}
