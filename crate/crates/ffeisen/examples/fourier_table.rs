//! The Fourier-coefficient table: η_β(y) over all β of bounded degree for a
//! fixed y, with the obstructed place and the exact value as a multiple of
//! ln q.
//!
//!     cargo run --example fourier_table

use ffeisen::cycles::verify_main;
use ffeisen::eisenstein::{Request, Setting};
use ffeisen::poly::{polys_of_degree, Poly, RatFunc};
use ffeisen::quad::{IncoherentSpace, QuadExt};
use ffeisen::rational::qq_str;
use ffeisen::{ConductorProfile, Fq, Idele, Place};

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    let k = QuadExt::new(fq.clone(), Poly::t())?;
    let space = IncoherentSpace::new(k, RatFunc::one(), None)?;
    let setting = Setting::new(space, ConductorProfile::standard(&fq))?;
    let y = Idele::trivial().with(
        Place::Infinity,
        RatFunc::from_poly(Poly::t()).pow(&fq, -2),
    )?;

    println!("{:<14} {:>5} {:<12} {:>14}", "beta", "#Diff", "place", "eta / ln q");
    for deg in 0..=2usize {
        for b in polys_of_degree(&fq, deg, false) {
            if b.is_zero() {
                continue;
            }
            let req = Request::new(setting.clone(), y.clone(), RatFunc::from_poly(b.clone()));
            if !req.support_ok()? {
                continue;
            }
            let rep = verify_main(&req)?;
            assert!(rep.pass());
            println!(
                "{:<14} {:>5} {:<12} {:>14}",
                b.render(&fq),
                rep.diff_size,
                rep.diff_rendered.first().cloned().unwrap_or_default(),
                qq_str(&rep.closed.total_lnq_coeff()),
            );
        }
    }
    Ok(())
}
