//! Acceptance suite: every criterion is exact (no tolerances — the values
//! are rationals and rational multiples of ln q) and prints one PASS line;
//! a failed assertion is the FAIL case. Runtime bounds are asserted where
//! the criterion states one.

use ffeisen::cycles::{verify_main, z_cycle};
use ffeisen::eisenstein::{
    assembled_series, e0_series, eta_coeff_closed, eta_coeff_whittaker, eta_constant,
    eta_constant_formula, scale_pair, Request, Setting,
};
use ffeisen::ideals::class_group;
use ffeisen::lfunc::dirichlet_l;
use ffeisen::places::{support_places, places_up_to};
use ffeisen::poly::{polys_of_degree, Poly, RatFunc};
use ffeisen::quad::{hilbert_symbol, IncoherentSpace, QuadExt, SplittingType};
use ffeisen::rational::{qq, QQ};
use ffeisen::sweep::{field_for, generate, run, SweepConfig};
use ffeisen::whittaker::{
    oracle_whittaker, resolve_closed_form, w_inert_alpha, w_inert_tilde, w_ram_alpha,
    w_ram_tilde, w_split, LocalCase, Section,
};
use ffeisen::{ConductorProfile, Fq, Idele, Place};
use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

fn random_poly(rng: &mut ChaCha8Rng, fq: &Arc<Fq>, max_deg: usize) -> Poly {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let pool = polys_of_degree(fq, d, false);
        let p = pool[rng.gen_range(0..pool.len())].clone();
        if !p.is_zero() {
            return p;
        }
    }
}

fn valid_ds(fq: &Arc<Fq>, max_deg: usize) -> Vec<Poly> {
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

fn setting_for(fq: &Arc<Fq>, d: Poly) -> Arc<Setting> {
    let k = QuadExt::new(fq.clone(), d).unwrap();
    let sp = IncoherentSpace::new(k, RatFunc::one(), None).unwrap();
    Setting::new(sp, ConductorProfile::standard(fq)).unwrap()
}

fn y_inf(fq: &Arc<Fq>, j: i64) -> Idele {
    Idele::trivial()
        .with(Place::Infinity, RatFunc::from_poly(Poly::t()).pow(fq, -j))
        .unwrap()
}

/// Criterion 1: Hilbert reciprocity, 200 random pairs per q in {3, 5}.
#[test]
fn criterion_1_hilbert_reciprocity() {
    let start = Instant::now();
    for q in [3u64, 5] {
        let fq = Fq::prime(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        for _ in 0..200 {
            let a = RatFunc::from_poly(random_poly(&mut rng, &fq, 4));
            let b = RatFunc::from_poly(random_poly(&mut rng, &fq, 4));
            let mut places: BTreeSet<Place> = BTreeSet::new();
            for f in [&a, &b] {
                for v in support_places(&fq, f) {
                    places.insert(v);
                }
            }
            places.insert(Place::Infinity);
            let mut prod = 1i8;
            for v in &places {
                prod *= hilbert_symbol(&fq, &a, &b, v).unwrap();
            }
            assert_eq!(prod, 1, "q={q} a={} b={}", a.render(&fq), b.render(&fq));
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "took {dt:?}, budget 5 s");
    println!("PASS criterion 1: Hilbert reciprocity on 400 random pairs ({dt:?})");
}

/// Criterion 2: incoherence of every constructed space in the matrix.
#[test]
fn criterion_2_incoherence() {
    let mut count = 0;
    for q in [3u64, 5, 9] {
        let fq = field_for(q).unwrap();
        let max_deg = if q == 9 { 2 } else { 3 };
        let alphas = [
            RatFunc::one(),
            RatFunc::from_poly(Poly::constant(fq.generator)),
            RatFunc::from_poly(Poly::t()),
        ];
        for d in valid_ds(&fq, max_deg) {
            let k = QuadExt::new(fq.clone(), d).unwrap();
            for alpha in &alphas {
                let sp = IncoherentSpace::new(k.clone(), alpha.clone(), None).unwrap();
                let mut prod = 1i8;
                for v in sp.relevant_places(&[]) {
                    prod *= sp.hasse_at(&v).unwrap();
                }
                assert_eq!(prod, -1);
                count += 1;
            }
        }
    }
    println!("PASS criterion 2: Hasse product = -1 for {count} incoherent spaces");
}

/// Criterion 3: functional equation of the completed L-function.
#[test]
fn criterion_3_functional_equation() {
    let start = Instant::now();
    let mut count = 0;
    for q in [3u64, 5] {
        let fq = Fq::prime(q).unwrap();
        let mut per_q = 0;
        for d in valid_ds(&fq, 3) {
            let k = QuadExt::new(fq.clone(), d).unwrap();
            let ld = dirichlet_l(&k).unwrap();
            assert!(ld.functional_equation_holds(q));
            per_q += 1;
            if per_q >= 15 {
                break;
            }
        }
        assert!(per_q >= 10, "only {per_q} fields for q={q}");
        count += per_q;
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "took {dt:?}, budget 10 s");
    println!("PASS criterion 3: functional equation for {count} fields ({dt:?})");
}

/// Criterion 4: enumerated class number equals f_inf * L(0), including the
/// pinned instance q=3, D=t with h = 1.
#[test]
fn criterion_4_class_number_formula() {
    let start = Instant::now();
    let f3 = Fq::prime(3).unwrap();
    let k = QuadExt::new(f3.clone(), Poly::t()).unwrap();
    let ld = dirichlet_l(&k).unwrap();
    let cg = class_group(&k, &ld).unwrap();
    assert_eq!(cg.h(), 1, "pinned instance q=3, D=t");
    let mut count = 1;
    for q in [3u64, 5, 9] {
        let fq = field_for(q).unwrap();
        let max_deg = if q == 3 { 3 } else { 2 };
        let mut per_q = 0;
        for d in valid_ds(&fq, max_deg) {
            let k = QuadExt::new(fq.clone(), d).unwrap();
            let ld = dirichlet_l(&k).unwrap();
            let cg = class_group(&k, &ld).unwrap();
            assert_eq!(
                cg.h(),
                ld.class_number().unwrap(),
                "q={q} D={}",
                k.d.render(&fq)
            );
            count += 1;
            per_q += 1;
            if per_q >= 12 {
                break;
            }
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "took {dt:?}, budget 60 s");
    println!("PASS criterion 4: class-number formula for {count} fields ({dt:?})");
}

/// Criterion 5: Whittaker closed forms against the character-sum oracle
/// across the case matrix, exact in Q(ζ_p) including Weil-index factors.
#[test]
fn criterion_5_whittaker_oracle() {
    let start = Instant::now();
    let mut cases = 0;
    for q in [3u64, 5] {
        let fq = Fq::prime(q).unwrap();
        let d = Poly::t();
        let k = QuadExt::new(fq.clone(), d).unwrap();
        let samples = [qq(1), QQ::one() / qq(q as i64)];
        // one place of each splitting type of degree 1, plus ramified
        // infinity, plus one degree-2 place (q_v = q²) when within the gate
        let mut matrix_places: Vec<Place> = Vec::new();
        for v in places_up_to(&fq, 1) {
            matrix_places.push(v);
        }
        if q * q <= 9 {
            for p in polys_of_degree(&fq, 2, true) {
                if let Ok(v) = Place::finite(&fq, p) {
                    matrix_places.push(v);
                    break;
                }
            }
        }
        for v in matrix_places {
            let sp = k.splitting_type(&v);
            let pi = match &v {
                Place::Finite(p) => RatFunc::from_poly(p.clone()),
                Place::Infinity => RatFunc::from_poly(Poly::t()).inv(&fq),
            };
            for m in 0..=3i64 {
                for unit in [
                    RatFunc::one(),
                    RatFunc::from_poly(Poly::constant(fq.generator)),
                ] {
                    let beta = unit.mul(&fq, &pi.pow(&fq, m));
                    let case =
                        LocalCase::new(v.clone(), 0, RatFunc::one(), beta, RatFunc::one());
                    for (section, form) in [
                        (
                            Section::Tilde,
                            match sp {
                                SplittingType::Split => w_split(&k, &case).unwrap(),
                                SplittingType::Inert => w_inert_tilde(&k, &case).unwrap(),
                                SplittingType::Ramified => w_ram_tilde(&k, &case).unwrap(),
                            },
                        ),
                        (
                            Section::Alpha,
                            match sp {
                                SplittingType::Split => w_split(&k, &case).unwrap(),
                                SplittingType::Inert => w_inert_alpha(&k, &case).unwrap(),
                                SplittingType::Ramified => w_ram_alpha(&k, &case).unwrap(),
                            },
                        ),
                    ] {
                        let oracle = oracle_whittaker(&k, &case, section, &samples).unwrap();
                        let closed = resolve_closed_form(&k, &case, &form, &samples).unwrap();
                        assert_eq!(
                            oracle,
                            closed,
                            "q={q} v={} m={m} {section:?}",
                            v.render(&fq)
                        );
                        cases += 1;
                    }
                }
            }
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "took {dt:?}, budget 60 s");
    println!("PASS criterion 5: closed forms = oracle on {cases} local cases ({dt:?})");
}

/// Criterion 6: the assembled coefficient vanishes at the center to order
/// >= #Diff, checked by exact series expansion to s-order 3 for
/// > #Diff in {1, 3}.
#[test]
fn criterion_6_vanishing_order() {
    let fq = Fq::prime(3).unwrap();
    let s = setting_for(&fq, Poly::t());
    let mut seen1 = 0;
    let mut seen3 = 0;
    for deg in 0..=4usize {
        for b in polys_of_degree(&fq, deg, false) {
            if b.is_zero() {
                continue;
            }
            let req = Request::new(s.clone(), y_inf(&fq, 3), RatFunc::from_poly(b));
            if !req.support_ok().unwrap() {
                continue;
            }
            let nd = req.diff().unwrap().len();
            if nd == 1 && seen1 < 12 {
                let series = assembled_series(&req).unwrap();
                assert!(series.vanishing_order_at_s0(3) >= 1);
                seen1 += 1;
            } else if nd == 3 && seen3 < 12 {
                let series = assembled_series(&req).unwrap();
                assert!(series.vanishing_order_at_s0(3) >= 3);
                seen3 += 1;
            }
        }
    }
    assert!(seen1 >= 5 && seen3 >= 5, "matrix too thin: {seen1}/{seen3}");
    println!(
        "PASS criterion 6: vanishing order >= #Diff on {} instances ({} with #Diff = 3)",
        seen1 + seen3,
        seen3
    );
}

/// Criterion 7: the main identity. Three independent computations of
/// eta_beta(y) agree exactly on a sweep of >= 200 admissible instances
/// with #Diff = 1.
#[test]
fn criterion_7_main_identity_sweep() {
    let start = Instant::now();
    let mut total = 0;
    let (mut n_ram, mut n_inert, mut n_inf) = (0, 0, 0);
    for (q, dd, db, cap) in [(3u64, 3, 4, 260), (5, 2, 3, 120), (9, 1, 2, 20)] {
        let mut cfg = SweepConfig::desk_scale(q);
        cfg.max_deg_d = dd;
        cfg.max_deg_beta = db;
        cfg.cap = cap;
        let instances = generate(&cfg).unwrap();
        let reports = run(&instances).unwrap();
        for ((js, rep), inst) in reports.iter().zip(&instances) {
            assert!(rep.pass(), "three-path mismatch: {js:?}");
            assert_eq!(js.diff_size, 1);
            let req = Request::new(inst.setting.clone(), inst.y.clone(), inst.beta.clone());
            let v0 = req.diff().unwrap().into_iter().next().unwrap();
            if v0.is_infinite() {
                n_inf += 1;
            } else {
                match inst.setting.quad().splitting_type(&v0) {
                    SplittingType::Ramified => n_ram += 1,
                    SplittingType::Inert => n_inert += 1,
                    SplittingType::Split => unreachable!(),
                }
            }
        }
        total += reports.len();
    }
    let dt = start.elapsed();
    assert!(total >= 200, "only {total} instances");
    // every obstruction geometry must appear in the matrix
    assert!(n_ram > 0 && n_inert > 0 && n_inf > 0);
    assert!(dt.as_secs_f64() < 600.0, "took {dt:?}, budget 10 min");
    println!(
        "PASS criterion 7: main identity on {total} instances across q in {{3,5,9}} \
         ({n_ram} ramified / {n_inert} inert / {n_inf} infinite obstructions) ({dt:?})"
    );
}

/// Criterion 8: the constant term is antisymmetric (twisted by the
/// inert-odd level factors when those exist), and the pinned instance
/// q=3, D=t, trivial y has eta_0 = 0.
#[test]
fn criterion_8_constant_term() {
    let fq = Fq::prime(3).unwrap();
    // pinned instance
    let s = setting_for(&fq, Poly::t());
    let req = Request::new(s.clone(), Idele::trivial(), RatFunc::zero());
    let v = eta_constant(&req).unwrap();
    assert!(v.is_zero(), "eta_0 = 0 for q=3, D=t, trivial y");
    // clean antisymmetry whenever no inert place has odd level; otherwise
    // the twisted identity, which here is checked through the agreement of
    // the series derivative with the closed bracket formula
    let mut clean = 0;
    let mut twisted = 0;
    for q in [3u64, 5] {
        let fq = Fq::prime(q).unwrap();
        for d in valid_ds(&fq, 2).into_iter().take(8) {
            let s = setting_for(&fq, d);
            for j in 0..3 {
                let req = Request::new(s.clone(), y_inf(&fq, j), RatFunc::zero());
                let e0 = e0_series(&req).unwrap();
                assert!(e0.eval(&QQ::one()).is_zero());
                if req.inert_odd_places().unwrap().is_empty() {
                    assert_eq!(e0.subst_inv_scale(&QQ::one()).neg(), e0);
                    clean += 1;
                } else {
                    twisted += 1;
                }
                let a = eta_constant(&req).unwrap();
                let b = eta_constant_formula(&req).unwrap();
                assert!(a.same_value(&b));
            }
        }
    }
    println!(
        "PASS criterion 8: constant-term antisymmetry ({clean} clean, {twisted} twisted) \
         and pinned eta_0 = 0"
    );
}

/// Criterion 9: rescaling covariance, 50 random global elements per
/// instance class: eta_{c²β}(c^{-1}y) = eta_β(y) on two analytic paths and
/// invariance of the cycle degree.
#[test]
fn criterion_9_covariance() {
    let fq = Fq::prime(3).unwrap();
    let s_ram = setting_for(&fq, Poly::t());
    let s_gen1 = setting_for(&fq, Poly::from_coeffs(vec![2, 2, 0, 1]));
    let s_inert_inf = setting_for(&fq, Poly::from_coeffs(vec![1, 0, 2]));
    // instance classes: ramified Diff, inert Diff, infinite Diff, h > 1
    let instances = [
        (s_ram.clone(), y_inf(&fq, 1), RatFunc::from_int(&fq, -1)),
        (
            s_ram.clone(),
            y_inf(&fq, 2),
            RatFunc::from_poly(Poly::from_coeffs(vec![1, 1])),
        ),
        (s_ram, y_inf(&fq, 1), RatFunc::one()),
        (s_gen1, y_inf(&fq, 2), RatFunc::one()),
        (s_inert_inf, y_inf(&fq, 2), RatFunc::from_poly(Poly::t())),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0;
    for (setting, y, beta) in &instances {
        let base_req = Request::new(setting.clone(), y.clone(), beta.clone());
        let base_eta = eta_coeff_closed(&base_req).unwrap();
        let base_z = z_cycle(&base_req).unwrap().total;
        for _ in 0..50 {
            let num = random_poly(&mut rng, &fq, 2);
            let c = if rng.gen_bool(0.3) {
                RatFunc::new(&fq, num, random_poly(&mut rng, &fq, 1))
            } else {
                RatFunc::from_poly(num)
            };
            let (y2, b2) = scale_pair(setting, y, beta, &c);
            let req2 = Request::new(setting.clone(), y2, b2);
            let eta2 = eta_coeff_closed(&req2).unwrap();
            assert!(eta2.same_value(&base_eta), "closed covariance, c = {}", c.render(&fq));
            let w2 = eta_coeff_whittaker(&req2).unwrap();
            assert!(w2.same_value(&base_eta), "whittaker covariance, c = {}", c.render(&fq));
            let z2 = z_cycle(&req2).unwrap().total;
            assert_eq!(z2, base_z, "cycle invariance, c = {}", c.render(&fq));
            checks += 1;
        }
    }
    println!("PASS criterion 9: covariance suite on {checks} rescalings");
}

/// The three-path verifier is also exercised end to end on the full report
/// shape (not a numbered criterion; guards the CLI-facing structure).
#[test]
fn verify_report_shape() {
    let fq = Fq::prime(3).unwrap();
    let s = setting_for(&fq, Poly::t());
    let req = Request::new(s, y_inf(&fq, 1), RatFunc::from_int(&fq, -1));
    let rep = verify_main(&req).unwrap();
    assert!(rep.pass());
    assert_eq!(rep.diff_size, 1);
    assert_eq!(rep.diff_rendered, vec!["(t)".to_string()]);
    assert!(!rep.z_degree.is_zero());
}
