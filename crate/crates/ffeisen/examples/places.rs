//! Enumerate the places of k = F_q(t) and how they split in K = k(√D).
//!
//!     cargo run --example places

use ffeisen::poly::Poly;
use ffeisen::quad::{QuadExt, SplittingType};
use ffeisen::{Fq, Place};

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    // K = F_3(t)(sqrt t): infinity ramifies, genus 0
    let k = QuadExt::new(fq.clone(), Poly::t())?;
    println!(
        "K = k(sqrt({})), genus {}, f_inf = {}",
        k.d.render(&fq),
        k.genus(),
        k.f_inf()
    );
    for v in ffeisen::places::places_up_to(&fq, 3) {
        let s = match k.splitting_type(&v) {
            SplittingType::Split => "split",
            SplittingType::Inert => "inert",
            SplittingType::Ramified => "ramified",
        };
        println!("{:<14} deg {}  {}", v.render(&fq), v.deg(), s);
    }
    // valuations: ord works at finite places and at infinity
    let f = ffeisen::poly::RatFunc::new(
        &fq,
        Poly::t().pow(&fq, 2),
        Poly::from_coeffs(vec![1, 1]),
    );
    let vt = Place::finite(&fq, Poly::t())?;
    println!(
        "\nord of t^2/(t+1): at (t): {}, at inf: {}",
        ffeisen::places::ord_at(&fq, &vt, &f)?,
        ffeisen::places::ord_at(&fq, &Place::Infinity, &f)?,
    );
    Ok(())
}
