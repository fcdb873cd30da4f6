//! Dirichlet L-functions of imaginary quadratic K over F_q(t): the exact
//! polynomial in u = q^{-s}, the functional equation of the completed form,
//! and the class-number formula h = f_inf · L(0).
//!
//!     cargo run --example lfunctions

use ffeisen::lfunc::dirichlet_l;
use ffeisen::poly::{polys_of_degree, Poly};
use ffeisen::quad::QuadExt;
use ffeisen::rational::qq_str;
use ffeisen::Fq;

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    for d in [
        Poly::t(),                          // genus 0, ramified infinity
        Poly::from_coeffs(vec![1, 0, 2]),   // 2t^2+1: genus 0, inert infinity
        Poly::from_coeffs(vec![2, 2, 0, 1]), // t^3+2t+2: genus 1
    ] {
        let k = QuadExt::new(fq.clone(), d)?;
        let ld = dirichlet_l(&k)?;
        println!("D = {}", k.d.render(&fq));
        println!("  L(u) = {}", ld.l.render());
        println!(
            "  L(0) = {}, L'(0)/L(0) = {}",
            qq_str(&ld.value0()?),
            ld.logderiv0()?.render()
        );
        println!("  h = f_inf * L(0) = {}", ld.class_number()?);
        println!(
            "  functional equation L~(s) = L~(1-s): {}",
            ld.functional_equation_holds(fq.q)
        );
    }

    // a batch check across every valid D of degree <= 3
    let mut count = 0;
    for deg in 1..=3usize {
        for d in polys_of_degree(&fq, deg, false) {
            if let Ok(k) = QuadExt::new(fq.clone(), d) {
                let ld = dirichlet_l(&k)?;
                assert!(ld.functional_equation_holds(fq.q));
                count += 1;
            }
        }
    }
    println!("\nfunctional equation verified for {count} fields");
    Ok(())
}
