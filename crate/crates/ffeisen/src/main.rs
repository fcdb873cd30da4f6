//! Command-line surface: exact computations over F_q(t) with JSON/CSV/human
//! reports. Exit codes: 0 success, 1 usage error, 2 verification mismatch,
//! 3 internal-consistency failure.

use clap::{Args, Parser, Subcommand};
use ffeisen::cycles::verify_main;
use ffeisen::eisenstein::{eta_constant, eta_constant_formula, Request, Setting};
use ffeisen::error::Error;
use ffeisen::lfunc::dirichlet_l;
use ffeisen::lnq::LnQValue;
use ffeisen::places::places_up_to;
use ffeisen::poly::RatFunc;
use ffeisen::quad::{IncoherentSpace, QuadExt, SplittingType};
use ffeisen::rational::{qq, qq_str};
use ffeisen::report::{csv_header, csv_line, instance_json, EtaValueJson};
use ffeisen::sweep::{field_for, generate, run, SweepConfig};
use ffeisen::textio::{parse_idele, parse_poly, parse_ratfunc};
use ffeisen::whittaker::{
    oracle_whittaker, resolve_closed_form, w_inert_alpha, w_inert_tilde, w_ram_alpha, w_ram_tilde,
    w_split, LocalCase, Section,
};
use ffeisen::{Fq, Idele, Place};
use rand::{Rng, SeedableRng};
use serde_json::json;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "ffeisen",
    about = "Exact arithmetic for imaginary quadratic extensions of F_q(t): \
             L-functions, class groups, Whittaker functions, and the three-way \
             verification of derivative Fourier coefficients against special-cycle degrees",
    version
)]
struct Cli {
    /// Optional key=value config file; keys are long flag names.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field size q (an odd prime power).
    #[arg(long, default_value_t = 3)]
    q: u64,
    /// Modulus for non-prime q as comma-separated F_p digits, low to high
    /// (e.g. "2,2,1" for x^2+2x+2 over F_3). Default: canonical modulus.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn build(&self) -> ffeisen::Result<Arc<Fq>> {
        match &self.modulus {
            None => field_for(self.q),
            Some(m) => {
                let digits: Vec<u64> = m
                    .split(',')
                    .map(|x| x.trim().parse::<u64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Error::Parse("bad --modulus digits".into()))?;
                let mut p = 2;
                while !self.q.is_multiple_of(p) {
                    p += 1;
                }
                Fq::extension(p, digits.len() as u32 - 1, Some(digits))
            }
        }
    }
}

#[derive(Args, Clone)]
struct SpaceArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// The squarefree polynomial D with K = k(sqrt D).
    #[arg(long = "D", visible_alias = "d", allow_hyphen_values = true)]
    d: String,
    /// The scaling alpha of the incoherent space.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    /// Override the choice of eps_inf (must satisfy (eps_inf, D)_inf = -1).
    #[arg(long = "epsilon-inf", allow_hyphen_values = true)]
    epsilon_inf: Option<String>,
    /// Twist element c for the additive character (conductor shifts by
    /// ord_v(c)).
    #[arg(long = "twist-c", default_value = "1", allow_hyphen_values = true)]
    twist_c: String,
}

impl SpaceArgs {
    fn build(&self) -> ffeisen::Result<Arc<Setting>> {
        let fq = self.field.build()?;
        let d = parse_poly(&fq, &self.d)?;
        let quad = QuadExt::new(fq.clone(), d)?;
        let alpha = parse_ratfunc(&fq, &self.alpha)?;
        let eps = match &self.epsilon_inf {
            Some(e) => Some(parse_ratfunc(&fq, e)?),
            None => None,
        };
        let space = IncoherentSpace::new(quad, alpha, eps)?;
        let twist = parse_ratfunc(&fq, &self.twist_c)?;
        let profile = ffeisen::ConductorProfile::new(&fq, twist)?;
        Setting::new(space, profile)
    }
}

#[derive(Clone, Copy, PartialEq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Cmd {
    /// List places of degree <= bound and their splitting in K.
    Places {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "D")]
        d: String,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
    },
    /// The Dirichlet L-function of K: coefficients, L(0), L'(0)/L(0).
    Lfunc {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "D")]
        d: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Class-group representatives, h, and the L-value identity check.
    Classgroup {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "D")]
        d: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Closed-form local Whittaker functions against the character-sum
    /// oracle across the case matrix.
    Whittaker {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 2)]
        max_ord_beta: i64,
    },
    /// The three-path values of one coefficient eta_beta(y).
    Eta {
        #[command(flatten)]
        space: SpaceArgs,
        /// Idele as "place=value,..." ("1" for trivial).
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        y: String,
        /// beta in k ("0" for the constant term).
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sweep the main identity over admissible instances; exit 2 on any
    /// mismatch.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 3)]
        max_deg_d: usize,
        #[arg(long, default_value_t = 4)]
        max_deg_beta: usize,
        /// Cap on kept instances (0 = all).
        #[arg(long, default_value_t = 0)]
        cap: usize,
        /// Also exercise the rescaling covariance on this many random global
        /// elements per instance class.
        #[arg(long, default_value_t = 0)]
        covariance_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Table of eta_beta(y) over beta of bounded degree for a fixed y.
    Table {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value = "1")]
        y: String,
        #[arg(long, default_value_t = 3)]
        max_deg_beta: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let args = expand_config(std::env::args().collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(Error::Internal(m)) => {
            eprintln!("internal-consistency failure: {m}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Expand `--config FILE` (key=value lines, '#' comments) into long flags,
/// keeping explicit command-line flags untouched.
fn expand_config(mut args: Vec<String>) -> Vec<String> {
    let Some(pos) = args.iter().position(|a| a == "--config") else {
        return args;
    };
    if pos + 1 >= args.len() {
        return args;
    }
    let path = args[pos + 1].clone();
    let Ok(body) = std::fs::read_to_string(&path) else {
        return args;
    };
    let mut extra = Vec::new();
    for line in body.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((k, v)) = line.split_once('=') {
            extra.push(format!("--{}", k.trim()));
            extra.push(v.trim().to_string());
        }
    }
    args.extend(extra);
    args
}

fn dispatch(cli: Cli) -> ffeisen::Result<ExitCode> {
    match cli.cmd {
        Cmd::Places { field, d, max_deg } => {
            let fq = field.build()?;
            let d = parse_poly(&fq, &d)?;
            let k = QuadExt::new(fq.clone(), d)?;
            println!("{:<14} {:>4}  splitting", "place", "deg");
            for v in places_up_to(&fq, max_deg) {
                let s = match k.splitting_type(&v) {
                    SplittingType::Split => "split",
                    SplittingType::Inert => "inert",
                    SplittingType::Ramified => "ramified",
                };
                println!("{:<14} {:>4}  {s}", v.render(&fq), v.deg());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lfunc { field, d, format } => {
            let fq = field.build()?;
            let d = parse_poly(&fq, &d)?;
            let k = QuadExt::new(fq.clone(), d)?;
            let ld = dirichlet_l(&k)?;
            let coeffs: Vec<String> = ld.l.c.iter().map(qq_str).collect();
            let l0 = ld.value0()?;
            let logd = ld.logderiv0()?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        json!({
                            "q": fq.q,
                            "D": k.d.render(&fq),
                            "genus": ld.g_k,
                            "f_inf": ld.f_inf,
                            "coefficients": coeffs,
                            "L0": qq_str(&l0),
                            "logderiv0_lnq_coeff": qq_str(&logd.c),
                            "class_number": ld.class_number()?,
                        })
                    );
                }
                _ => {
                    println!("L(u) = {}", ld.l.render());
                    println!("genus g_K = {}, f_inf = {}", ld.g_k, ld.f_inf);
                    println!("L(0) = {}", qq_str(&l0));
                    println!("L'(0)/L(0) = {}", logd.render_approx(fq.q));
                    println!("h = f_inf * L(0) = {}", ld.class_number()?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classgroup { field, d, format } => {
            let fq = field.build()?;
            let d = parse_poly(&fq, &d)?;
            let k = QuadExt::new(fq.clone(), d)?;
            let ld = dirichlet_l(&k)?;
            let cg = ffeisen::ideals::class_group(&k, &ld)?;
            match format {
                Format::Json => {
                    let reps: Vec<serde_json::Value> = cg
                        .reps
                        .iter()
                        .map(|i| {
                            json!({
                                "den": i.den.render(&fq),
                                "a": i.a.render(&fq),
                                "b": i.b.render(&fq),
                                "c": i.c.render(&fq),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "q": fq.q,
                            "D": k.d.render(&fq),
                            "h": cg.h(),
                            "f_inf_times_L0": ld.class_number()?,
                            "identity_holds": cg.h() == ld.class_number()?,
                            "representatives": reps,
                        })
                    );
                }
                _ => {
                    println!("h = {} (f_inf * L(0) = {})", cg.h(), ld.class_number()?);
                    for (i, r) in cg.reps.iter().enumerate() {
                        println!("  [{}] {}", i, r.render(&k));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Whittaker {
            space,
            max_ord_beta,
        } => whittaker_table(space, max_ord_beta),
        Cmd::Eta {
            space,
            y,
            beta,
            format,
        } => eta_one(space, y, beta, format),
        Cmd::Verify {
            field,
            max_deg_d,
            max_deg_beta,
            cap,
            covariance_samples,
            seed,
            format,
        } => verify_sweep(
            field,
            max_deg_d,
            max_deg_beta,
            cap,
            covariance_samples,
            seed,
            format,
        ),
        Cmd::Table {
            space,
            y,
            max_deg_beta,
            format,
        } => table(space, y, max_deg_beta, format),
    }
}

fn whittaker_table(space: SpaceArgs, max_ord_beta: i64) -> ffeisen::Result<ExitCode> {
    let setting = space.build()?;
    let k = setting.quad();
    let fq = setting.fq().clone();
    let samples = [qq(1), qq(1) / qq(fq.q as i64)];
    println!(
        "{:<12} {:<9} {:<6} {:>2}  match",
        "place", "splitting", "section", "m"
    );
    let mut all_ok = true;
    let mut places: Vec<Place> = places_up_to(&fq, 1);
    places.retain(|v| v.qv(&fq) <= 9);
    for v in places {
        let sp = k.splitting_type(&v);
        let pi = match &v {
            Place::Finite(p) => RatFunc::from_poly(p.clone()),
            Place::Infinity => RatFunc::from_poly(ffeisen::Poly::t()).inv(&fq),
        };
        for j in 0..=max_ord_beta {
            for unit in [
                RatFunc::one(),
                RatFunc::from_poly(ffeisen::Poly::constant(fq.generator)),
            ] {
                let beta = unit.mul(&fq, &pi.pow(&fq, j));
                let case = LocalCase::new(
                    v.clone(),
                    setting.profile.delta(&v),
                    RatFunc::one(),
                    beta,
                    setting.space.alpha_eps(&v),
                );
                for (label, section, form) in [
                    (
                        "tilde",
                        Section::Tilde,
                        match sp {
                            SplittingType::Split => w_split(k, &case)?,
                            SplittingType::Inert => w_inert_tilde(k, &case)?,
                            SplittingType::Ramified => w_ram_tilde(k, &case)?,
                        },
                    ),
                    (
                        "alpha",
                        Section::Alpha,
                        match sp {
                            SplittingType::Split => w_split(k, &case)?,
                            SplittingType::Inert => w_inert_alpha(k, &case)?,
                            SplittingType::Ramified => w_ram_alpha(k, &case)?,
                        },
                    ),
                ] {
                    let oracle = oracle_whittaker(k, &case, section, &samples)?;
                    let closed = resolve_closed_form(k, &case, &form, &samples)?;
                    let ok = oracle == closed;
                    all_ok &= ok;
                    println!(
                        "{:<12} {:<9} {:<6} {:>2}  {}",
                        v.render(&fq),
                        match sp {
                            SplittingType::Split => "split",
                            SplittingType::Inert => "inert",
                            SplittingType::Ramified => "ramified",
                        },
                        label,
                        case.m(&fq),
                        if ok { "ok" } else { "MISMATCH" }
                    );
                }
            }
        }
    }
    if all_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Error::Internal(
            "closed form disagrees with the character-sum oracle".into(),
        ))
    }
}

fn eta_one(space: SpaceArgs, y: String, beta: String, format: Format) -> ffeisen::Result<ExitCode> {
    let setting = space.build()?;
    let fq = setting.fq().clone();
    let y_label = y.clone();
    let y: Idele = parse_idele(&fq, &y)?;
    let beta = if beta.trim() == "0" {
        RatFunc::zero()
    } else {
        parse_ratfunc(&fq, &beta)?
    };
    let req = Request::new(setting.clone(), y, beta.clone());
    if beta.is_zero() {
        let v = eta_constant(&req)?;
        let f = eta_constant_formula(&req)?;
        let agree = v.same_value(&f);
        match format {
            Format::Json => println!(
                "{}",
                json!({
                    "beta": "0",
                    "eta0": EtaValueJson::from(&v),
                    "eta0_closed_formula": EtaValueJson::from(&f),
                    "agree": agree,
                })
            ),
            _ => {
                println!(
                    "eta_0(y) = {}",
                    LnQValue::new(v.total_lnq_coeff()).render_approx(fq.q)
                );
                println!("formula route agrees: {agree}");
            }
        }
        return Ok(if agree {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        });
    }
    let rep = verify_main(&req)?;
    match format {
        Format::Json => {
            let js = instance_json(
                fq.q,
                setting.quad().d.render(&fq),
                setting.space.alpha.render(&fq),
                setting.profile.twist.render(&fq),
                y_label,
                beta.render(&fq),
                &rep,
            );
            println!("{}", serde_json::to_string_pretty(&js).unwrap());
        }
        _ => {
            println!("Diff = {:?} (size {})", rep.diff_rendered, rep.diff_size);
            println!("support ok: {}", rep.support_ok);
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
            println!("pass: {}", rep.pass());
        }
    }
    Ok(if rep.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn verify_sweep(
    field: FieldArgs,
    max_deg_d: usize,
    max_deg_beta: usize,
    cap: usize,
    covariance_samples: usize,
    seed: u64,
    format: Format,
) -> ffeisen::Result<ExitCode> {
    let mut cfg = SweepConfig::desk_scale(field.q);
    cfg.max_deg_d = max_deg_d;
    cfg.max_deg_beta = max_deg_beta;
    cfg.cap = cap;
    let instances = generate(&cfg)?;
    let reports = run(&instances)?;
    let mut failures = 0;
    match format {
        Format::Csv => {
            println!("{}", csv_header());
            for (js, _) in &reports {
                println!("{}", csv_line(js));
            }
        }
        Format::Json => {
            let v: Vec<_> = reports.iter().map(|(js, _)| js).collect();
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Human => {
            for (js, _) in &reports {
                println!(
                    "q={} D={} alpha={} y={} beta={} diff={} eta={} pass={}",
                    js.q,
                    js.d,
                    js.alpha,
                    js.y,
                    js.beta,
                    js.diff.join(";"),
                    js.paths.closed.total_lnq_coeff,
                    js.pass
                );
            }
        }
    }
    for (_, rep) in &reports {
        if !rep.pass() {
            failures += 1;
        }
    }
    // optional randomized covariance spot checks
    if covariance_samples > 0 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let fq = field_for(field.q)?;
        for inst in instances.iter().take(5) {
            for _ in 0..covariance_samples {
                let c = loop {
                    let deg = rng.gen_range(0..2usize);
                    let cands = ffeisen::poly::polys_of_degree(&fq, deg, false);
                    let pick = cands[rng.gen_range(0..cands.len())].clone();
                    if !pick.is_zero() {
                        break RatFunc::from_poly(pick);
                    }
                };
                let base = verify_main(&Request::new(
                    inst.setting.clone(),
                    inst.y.clone(),
                    inst.beta.clone(),
                ))?;
                let (y2, b2) =
                    ffeisen::eisenstein::scale_pair(&inst.setting, &inst.y, &inst.beta, &c);
                let moved = verify_main(&Request::new(inst.setting.clone(), y2, b2))?;
                if !base.closed.same_value(&moved.closed) {
                    eprintln!("covariance failure at c = {}", c.render(&fq));
                    failures += 1;
                }
            }
        }
    }
    eprintln!("verified {} instances, {} failures", reports.len(), failures);
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn table(
    space: SpaceArgs,
    y: String,
    max_deg_beta: usize,
    format: Format,
) -> ffeisen::Result<ExitCode> {
    let setting = space.build()?;
    let fq = setting.fq().clone();
    let y: Idele = parse_idele(&fq, &y)?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for d in 0..=max_deg_beta {
        for b in ffeisen::poly::polys_of_degree(&fq, d, false) {
            if b.is_zero() {
                continue;
            }
            let beta = RatFunc::from_poly(b);
            let req = Request::new(setting.clone(), y.clone(), beta.clone());
            if !req.support_ok()? {
                continue;
            }
            let rep = verify_main(&req)?;
            all_ok &= rep.pass();
            rows.push((beta.render(&fq), rep));
        }
    }
    match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(b, rep)| {
                    json!({
                        "beta": b,
                        "diff_size": rep.diff_size,
                        "eta_lnq_coeff": qq_str(&rep.closed.total_lnq_coeff()),
                        "pass": rep.pass(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => {
            println!("{:<18} {:>5}  {:<22} pass", "beta", "#Diff", "eta (x ln q)");
            for (b, rep) in &rows {
                println!(
                    "{:<18} {:>5}  {:<22} {}",
                    b,
                    rep.diff_size,
                    qq_str(&rep.closed.total_lnq_coeff()),
                    rep.pass()
                );
            }
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
