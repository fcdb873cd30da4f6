//! Local Whittaker functions: closed forms against the brute-force
//! character-sum oracle, exact in Q(ζ_p) including the Weil-index factors.
//!
//!     cargo run --example whittaker_oracle

use ffeisen::poly::{Poly, RatFunc};
use ffeisen::quad::{QuadExt, SplittingType};
use ffeisen::rational::qq;
use ffeisen::whittaker::{
    oracle_whittaker, resolve_closed_form, w_inert_alpha, w_inert_tilde, w_ram_alpha,
    w_ram_tilde, w_split, LocalCase, Section,
};
use ffeisen::{Fq, Place};

fn main() -> ffeisen::Result<()> {
    let fq = Fq::prime(3)?;
    let k = QuadExt::new(fq.clone(), Poly::t())?;
    let samples = [qq(1), qq(1) / qq(3)];

    for v in [
        Place::finite(&fq, Poly::t())?,               // ramified
        Place::finite(&fq, Poly::from_coeffs(vec![1, 1]))?, // inert
        Place::finite(&fq, Poly::from_coeffs(vec![2, 1]))?, // split
        Place::Infinity,                              // ramified for D = t
    ] {
        let sp = k.splitting_type(&v);
        let pi = match &v {
            Place::Finite(p) => RatFunc::from_poly(p.clone()),
            Place::Infinity => RatFunc::from_poly(Poly::t()).inv(&fq),
        };
        for m in 0..=2i64 {
            let beta = pi.pow(&fq, m);
            let case = LocalCase::new(v.clone(), 0, RatFunc::one(), beta, RatFunc::one());
            for (section, form) in [
                (
                    Section::Tilde,
                    match sp {
                        SplittingType::Split => w_split(&k, &case)?,
                        SplittingType::Inert => w_inert_tilde(&k, &case)?,
                        SplittingType::Ramified => w_ram_tilde(&k, &case)?,
                    },
                ),
                (
                    Section::Alpha,
                    match sp {
                        SplittingType::Split => w_split(&k, &case)?,
                        SplittingType::Inert => w_inert_alpha(&k, &case)?,
                        SplittingType::Ramified => w_ram_alpha(&k, &case)?,
                    },
                ),
            ] {
                let oracle = oracle_whittaker(&k, &case, section, &samples)?;
                let closed = resolve_closed_form(&k, &case, &form, &samples)?;
                assert_eq!(oracle, closed);
                println!(
                    "{:<6} {:?} {:<6?} m={}  W/vol = {}  (atom: {})",
                    v.render(&fq),
                    sp,
                    section,
                    case.m(&fq),
                    form.rat.render(),
                    form.ram_atom,
                );
            }
        }
    }
    println!("\nall closed forms match the character-sum oracle exactly");
    Ok(())
}
