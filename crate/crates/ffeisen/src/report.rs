//! Machine-readable report types. All numeric payloads are exact: rationals
//! render as "p/q" strings and derivative values as their ln q coefficient.

use crate::cycles::VerifyReport;
use crate::eisenstein::EtaValue;
use crate::rational::qq_str;
use serde::Serialize;

#[derive(Serialize, Clone, Debug)]
pub struct EtaValueJson {
    pub prefactor: String,
    pub lnq_coeff: String,
    pub total_lnq_coeff: String,
}

impl EtaValueJson {
    pub fn from(v: &EtaValue) -> EtaValueJson {
        EtaValueJson {
            prefactor: qq_str(&v.prefactor),
            lnq_coeff: qq_str(&v.lnq.c),
            total_lnq_coeff: qq_str(&v.total_lnq_coeff()),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct InstanceJson {
    pub q: u64,
    pub d: String,
    pub alpha: String,
    pub twist: String,
    pub y: String,
    pub beta: String,
    pub diff: Vec<String>,
    pub diff_size: usize,
    pub support_ok: bool,
    pub paths: PathsJson,
    pub pass: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct PathsJson {
    pub closed: EtaValueJson,
    pub whittaker: EtaValueJson,
    pub cycle: EtaValueJson,
}

pub fn instance_json(
    q: u64,
    d: String,
    alpha: String,
    twist: String,
    y: String,
    beta: String,
    rep: &VerifyReport,
) -> InstanceJson {
    InstanceJson {
        q,
        d,
        alpha,
        twist,
        y,
        beta,
        diff: rep.diff_rendered.clone(),
        diff_size: rep.diff_size,
        support_ok: rep.support_ok,
        paths: PathsJson {
            closed: EtaValueJson::from(&rep.closed),
            whittaker: EtaValueJson::from(&rep.whittaker),
            cycle: EtaValueJson::from(&rep.cycle),
        },
        pass: rep.pass(),
    }
}

pub fn csv_header() -> &'static str {
    "q,D,alpha,twist,y,beta,diff,diff_size,support_ok,closed,whittaker,cycle,pass"
}

pub fn csv_line(r: &InstanceJson) -> String {
    format!(
        "{},{},{},{},\"{}\",{},\"{}\",{},{},{},{},{},{}",
        r.q,
        r.d,
        r.alpha,
        r.twist,
        r.y,
        r.beta,
        r.diff.join(";"),
        r.diff_size,
        r.support_ok,
        r.paths.closed.total_lnq_coeff,
        r.paths.whittaker.total_lnq_coeff,
        r.paths.cycle.total_lnq_coeff,
        r.pass
    )
}
