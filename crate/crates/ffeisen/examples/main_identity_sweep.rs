//! Sweep the main identity over admissible (D, α, y, β) instances with a
//! unique obstructed place: the closed form, the Whittaker-product
//! derivative, and the cycle degree must agree exactly on every one.
//!
//!     cargo run --release --example main_identity_sweep

use ffeisen::sweep::{generate, run, SweepConfig};

fn main() -> ffeisen::Result<()> {
    let mut total = 0;
    let mut failures = 0;
    for q in [3u64, 5] {
        let mut cfg = SweepConfig::desk_scale(q);
        cfg.max_deg_d = 2;
        cfg.max_deg_beta = 3;
        cfg.cap = 150;
        let instances = generate(&cfg)?;
        let reports = run(&instances)?;
        for (js, rep) in &reports {
            if !rep.pass() {
                failures += 1;
                eprintln!("MISMATCH: {js:?}");
            }
        }
        println!("q = {q}: {} instances verified", reports.len());
        total += reports.len();
    }
    println!("total {total} instances, {failures} failures");
    assert_eq!(failures, 0);
    Ok(())
}
