//! Class groups of O_K in Hermite normal form, certified against the
//! analytic class number f_inf · L(0, χ_K), plus representation numbers of
//! the norm form checked against an unpruned search.
//!
//!     cargo run --example class_group

use ffeisen::ideals::{class_group, prime_above, rep_count, rep_count_oracle, FracIdeal};
use ffeisen::lfunc::dirichlet_l;
use ffeisen::poly::{Poly, RatFunc};
use ffeisen::quad::QuadExt;
use ffeisen::{Fq, Place};

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    // h = 2: the prime above the split place (t) is not principal
    let k = QuadExt::new(fq.clone(), Poly::from_coeffs(vec![1, 0, 2]))?;
    let ld = dirichlet_l(&k)?;
    let cg = class_group(&k, &ld)?;
    println!("D = {}: h = {}", k.d.render(&fq), cg.h());
    for (i, r) in cg.reps.iter().enumerate() {
        println!("  class {}: {}", i, r.render(&k));
    }
    let w = prime_above(&k, &Place::finite(&fq, Poly::t())?)?;
    println!(
        "prime above (t) principal: {}",
        ffeisen::ideals::is_principal(&k, &w)?.is_some()
    );

    // representation numbers, pruned enumerator vs raw double loop
    println!("\nnorm-form representation counts in O_K (D = {}):", k.d.render(&fq));
    for target in [1i64, -1, 2] {
        let t = RatFunc::from_int(&fq, target);
        let fast = rep_count(&k, &FracIdeal::one(), &t)?;
        let slow = rep_count_oracle(&k, &FracIdeal::one(), &t)?;
        assert_eq!(fast, slow);
        println!("  #{{x : N(x) = {target}}} = {fast}");
    }
    Ok(())
}
