//! The `paramip` command line: problem files in, tables and reports out.
//!
//! Exit codes: 0 success, 1 internal invariant failure, 2 unreadable or
//! invalid input, 3 no quasi-linear law validated, 4 budget exhausted,
//! 5 the two regularity routes disagree.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rat, Rat, SUBDET_BUDGET};
use crate::ideal::{minimalize, newton_polyhedron, MonomialIdeal};
use crate::ip::{kappa, sweep, ParamIP};
use crate::lp::{lp_value_law, OptValue};
use crate::quasilinear::{default_candidates, detect_law, jmax_and_delta, n_star, QuasiLinearLaw};
use crate::regularity::{
    oracle_a_invariants, stability_report, PowerFamily, RegularityEngine, StabilityReport, Variant, CANDIDATE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DETECTION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;

const DEFAULT_IP_RANGE: (u64, u64) = (1, 40);
const DEFAULT_IDEAL_RANGE: (u64, u64) = (1, 8);

#[derive(Parser, Debug)]
#[command(name = "paramip", version, about = "Asymptotics of parametric integer programs and of the regularity of monomial ideal powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze max{d.x : Ax <= n b + c, x in N^r} as n grows.
    IpAnalyze {
        file: PathBuf,
        /// Sweep range `lo:hi`.
        #[arg(long)]
        range: Option<String>,
        /// Search cap for the exact multiples of the homogeneous program.
        #[arg(long)]
        jmax_cap: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Local cohomology and regularity of closures or symbolic powers.
    IdealAnalyze {
        file: PathBuf,
        /// `closure` or `symbolic`.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        range: Option<String>,
        /// Recompute every a-invariant by scanning degrees and compare.
        #[arg(long)]
        oracle: bool,
        /// Degree box `lo:hi` for the scan, applied to every coordinate.
        #[arg(long = "box")]
        bounds: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Facets of the Newton polyhedron.
    Newton { file: PathBuf },
}

/// An integer written as a JSON number or as a string.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn to_big(&self) -> Result<BigInt> {
        match self {
            Num::Int(x) => Ok(BigInt::from(*x)),
            Num::Text(s) => {
                let q = parse_rat(s)?;
                if !q.is_integer() {
                    return Err(Error::Parse(format!("{s:?} is not an integer")));
                }
                Ok(q.to_integer())
            }
        }
    }
}

#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
struct Options {
    range: Option<String>,
    jmax_cap: Option<u64>,
    variant: Option<String>,
    #[serde(rename = "box")]
    bounds: Option<String>,
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ProblemFile {
    ParamIp {
        #[serde(rename = "A")]
        a: Vec<Vec<Num>>,
        b: Vec<Num>,
        #[serde(default)]
        c: Option<Vec<Num>>,
        d: Vec<Num>,
        #[serde(default)]
        options: Options,
    },
    MonomialIdeal {
        vars: usize,
        gens: Vec<Vec<u32>>,
        #[serde(default)]
        options: Options,
    },
    SquareFreeIdeal {
        vars: usize,
        gens: Vec<Vec<u32>>,
        #[serde(default)]
        options: Options,
    },
}

fn read_problem(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn bigs(xs: &[Num]) -> Result<Vec<BigInt>> {
    xs.iter().map(Num::to_big).collect()
}

fn parse_ip(problem: ProblemFile) -> Result<(ParamIP, Options)> {
    let ProblemFile::ParamIp { a, b, c, d, options } = problem else {
        return Err(Error::Parse("expected kind \"param_ip\"".into()));
    };
    let rows: Vec<Vec<BigInt>> = a.iter().map(|row| bigs(row)).collect::<Result<_>>()?;
    let b = bigs(&b)?;
    let c = match c {
        Some(c) => bigs(&c)?,
        None => vec![BigInt::from(0); b.len()],
    };
    let a = crate::exact::IntMat::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))?;
    let pip = ParamIP::new(a, b, c, bigs(&d)?).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((pip, options))
}

fn parse_ideal(problem: ProblemFile) -> Result<(MonomialIdeal, Option<Variant>, Options)> {
    let (vars, gens, options, forced) = match problem {
        ProblemFile::MonomialIdeal { vars, gens, options } => (vars, gens, options, None),
        ProblemFile::SquareFreeIdeal { vars, gens, options } => {
            if let Some(g) = gens.iter().find(|g| g.iter().any(|&x| x > 1)) {
                return Err(Error::Parse(format!("square-free ideal has generator {g:?} with an exponent above 1")));
            }
            (vars, gens, options, Some(Variant::Symbolic))
        }
        ProblemFile::ParamIp { .. } => return Err(Error::Parse("expected an ideal, found kind \"param_ip\"".into())),
    };
    let ideal = minimalize(vars, gens).map_err(|e| Error::Parse(e.to_string()))?;
    if ideal.gens().iter().any(|g| g.iter().all(|&x| x == 0)) {
        return Err(Error::Parse("the unit ideal is not allowed".into()));
    }
    Ok((ideal, forced, options))
}

/// `"lo:hi"` with `1 <= lo <= hi`.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Error::Parse(format!("range {s:?} is not lo:hi")))?;
    let lo: u64 = lo.trim().parse().map_err(|_| Error::Parse(format!("bad range start in {s:?}")))?;
    let hi: u64 = hi.trim().parse().map_err(|_| Error::Parse(format!("bad range end in {s:?}")))?;
    if lo == 0 || hi < lo {
        return Err(Error::Parse(format!("range {s:?} needs 1 <= lo <= hi")));
    }
    Ok((lo, hi))
}

fn parse_box(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Error::Parse(format!("box {s:?} is not lo:hi")))?;
    let lo: i64 = lo.trim().parse().map_err(|_| Error::Parse(format!("bad box start in {s:?}")))?;
    let hi: i64 = hi.trim().parse().map_err(|_| Error::Parse(format!("bad box end in {s:?}")))?;
    if hi < lo {
        return Err(Error::Parse(format!("box {s:?} is empty")));
    }
    Ok((lo, hi))
}

fn value_str(v: &OptValue) -> String {
    v.to_string()
}

fn opt_str(v: Option<i64>) -> String {
    v.map_or_else(|| "-inf".to_string(), |x| x.to_string())
}

/// A quasi-linear law with every number as text.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub slope: String,
    pub period: u64,
    /// `"-inf"` for a residue class that stays infeasible.
    pub intercepts: Vec<String>,
    pub onset: u64,
}

impl From<&QuasiLinearLaw> for LawReport {
    fn from(l: &QuasiLinearLaw) -> Self {
        LawReport {
            slope: l.slope.to_string(),
            period: l.period,
            intercepts: l.intercepts.iter().map(|b| b.as_ref().map_or_else(|| "-inf".into(), Rat::to_string)).collect(),
            onset: l.onset,
        }
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "slope {} period {} onset {} intercepts [{}]",
            self.slope,
            self.period,
            self.onset,
            self.intercepts.join(", ")
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IpRow {
    pub n: u64,
    pub value: String,
    pub predicted: String,
    pub residual: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IpReport {
    pub r: usize,
    pub s: usize,
    pub subdet_d: String,
    pub subdet_d_prime: String,
    pub subdet_delta: String,
    pub subdet_exact: bool,
    pub phi: Option<String>,
    pub lp_intercept: Option<String>,
    pub jmax: Vec<u64>,
    pub jmax_cap: Option<u64>,
    pub delta: Option<u64>,
    pub frobenius_bound: Option<u64>,
    pub kappa: Option<String>,
    pub n_star: String,
    pub law: Option<LawReport>,
    pub residuals: Vec<String>,
    pub rows: Vec<IpRow>,
    pub notes: Vec<String>,
}

/// Runs the full pipeline for one program. A failed detection still
/// returns the report, with `law = None` and the residual table.
pub fn analyze_ip(pip: &ParamIP, range: (u64, u64), jmax_cap: Option<u64>) -> Result<IpReport> {
    let mut notes = Vec::new();
    let st = pip.subdet_stats(SUBDET_BUDGET);
    let lp = match lp_value_law(&pip.polyhedron(), &pip.c_rat(), &pip.d_rat()) {
        Ok(law) => Some(law),
        Err(e) => {
            notes.push(format!("LP value law unavailable: {e}"));
            None
        }
    };
    let jmax = match jmax_and_delta(pip, jmax_cap) {
        Ok(info) => {
            if info.truncated {
                notes.push(format!("J_max cap {} is below (r+1) D'; delta may be a proper multiple", info.cap));
            }
            Some(info)
        }
        Err(e @ Error::Budget(_)) => return Err(e),
        Err(e) => {
            notes.push(format!("J_max unavailable: {e}"));
            None
        }
    };
    let kappa = match kappa(pip) {
        Ok(k) => Some(k.to_string()),
        Err(e) => {
            notes.push(format!("kappa unavailable: {e}"));
            None
        }
    };
    let values = sweep(pip, range.0, range.1)?;
    let max_period = ((range.1 - range.0 + 1) / 3).max(1);
    let candidates = default_candidates(jmax.as_ref().map(|j| j.delta), max_period);
    let slope = lp.as_ref().map(|l| &l.phi);
    let (law, residuals) = match detect_law(&values, &candidates, 6, slope) {
        Ok(law) => (Some(law), Vec::new()),
        Err(Error::Detection { residuals }) => (None, residuals),
        Err(e) => return Err(e),
    };
    let rows = values
        .iter()
        .map(|(n, v)| {
            let predicted = law.as_ref().map(|l| l.predict(n));
            let (predicted, residual) = match (predicted, v.value()) {
                (None, _) => ("-".to_string(), "-".to_string()),
                (Some(None), _) => ("-inf".to_string(), if v.is_feasible() { "inf".into() } else { "0".into() }),
                (Some(Some(p)), Some(x)) => (p.to_string(), (x - &p).to_string()),
                (Some(Some(p)), None) => (p.to_string(), "-inf".into()),
            };
            IpRow { n, value: value_str(v), predicted, residual }
        })
        .collect();
    Ok(IpReport {
        r: pip.r(),
        s: pip.s(),
        subdet_d: st.d.to_string(),
        subdet_d_prime: st.d_prime.to_string(),
        subdet_delta: st.delta_max.to_string(),
        subdet_exact: st.exact,
        phi: lp.as_ref().map(|l| l.phi.to_string()),
        lp_intercept: lp.as_ref().map(|l| l.phi0.to_string()),
        jmax: jmax.as_ref().map(|j| j.members.clone()).unwrap_or_default(),
        jmax_cap: jmax.as_ref().map(|j| j.cap),
        delta: jmax.as_ref().map(|j| j.delta),
        frobenius_bound: jmax.as_ref().map(|j| j.frobenius_bound),
        kappa,
        n_star: n_star(pip).to_string(),
        law: law.as_ref().map(LawReport::from),
        residuals,
        rows,
        notes,
    })
}

fn render_ip(rep: &IpReport) -> String {
    let mut s = String::new();
    let na = |x: &Option<String>| x.clone().unwrap_or_else(|| "n/a".into());
    let _ = writeln!(s, "program: r = {}, s = {}", rep.r, rep.s);
    let _ = writeln!(
        s,
        "subdeterminants: D = {}, D' = {}, Delta = {}{}",
        rep.subdet_d,
        rep.subdet_d_prime,
        rep.subdet_delta,
        if rep.subdet_exact { "" } else { " (Hadamard bounds)" }
    );
    let _ = writeln!(s, "phi = {}", na(&rep.phi));
    let _ = writeln!(s, "LP intercept = {}", na(&rep.lp_intercept));
    let _ = writeln!(s, "J_max = {:?} (cap {})", rep.jmax, rep.jmax_cap.map_or("n/a".into(), |c| c.to_string()));
    let _ = writeln!(s, "delta = {}", rep.delta.map_or("n/a".into(), |d| d.to_string()));
    let _ = writeln!(s, "frobenius bound = {}", rep.frobenius_bound.map_or("n/a".into(), |d| d.to_string()));
    let _ = writeln!(s, "kappa = {}", na(&rep.kappa));
    let _ = writeln!(s, "N* = {}", rep.n_star);
    match &rep.law {
        Some(l) => {
            let _ = writeln!(s, "law: {l}");
        }
        None => {
            let _ = writeln!(s, "law: none validated");
            for line in &rep.residuals {
                let _ = writeln!(s, "  {line}");
            }
        }
    }
    for note in &rep.notes {
        let _ = writeln!(s, "note: {note}");
    }
    let _ = writeln!(s, "{:>6} {:>14} {:>14} {:>10}", "n", "M_n", "law", "residual");
    for row in &rep.rows {
        let _ = writeln!(s, "{:>6} {:>14} {:>14} {:>10}", row.n, row.value, row.predicted, row.residual);
    }
    s
}

fn ip_csv(rep: &IpReport) -> String {
    let mut s = String::from("n,value,law,residual\n");
    for row in &rep.rows {
        let _ = writeln!(s, "{},{},{},{}", row.n, row.value, row.predicted, row.residual);
    }
    s
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IdealRow {
    pub n: u64,
    /// `a_0 .. a_dim` of `R/J_n`.
    pub a: Vec<String>,
    pub reg_quotient: String,
    pub reg: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n_dagger: String,
    pub regst_bound: String,
    pub sym_bound: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub holds: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OracleDiff {
    pub n: u64,
    pub i: usize,
    pub programs: String,
    pub scan: String,
    pub degree: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IdealReport {
    pub variant: String,
    pub ideal: String,
    pub r: usize,
    pub max_degree: u32,
    pub complex: String,
    pub dim: usize,
    /// Newton facets for closures, minimal primes for symbolic powers.
    pub facets: Vec<String>,
    pub primes: Vec<String>,
    pub candidates: usize,
    pub candidates_with_homology: usize,
    pub rows: Vec<IdealRow>,
    pub a_laws: Vec<LawReport>,
    pub reg_law: LawReport,
    pub reg_linear: Option<(String, String)>,
    pub empirical_onset: u64,
    pub period_lcm: u64,
    pub shared_slope: bool,
    pub bounds: Option<BoundsReport>,
    pub instance_onset_bound: String,
    pub checks: Vec<CheckReport>,
    pub oracle_checked: bool,
    pub oracle_inconclusive: Vec<u64>,
    pub oracle_diffs: Vec<OracleDiff>,
}

fn ideal_report(family: &PowerFamily, engine: &RegularityEngine, st: &StabilityReport) -> IdealReport {
    let (total, active) = engine.candidate_counts();
    IdealReport {
        variant: match st.variant {
            Variant::Closure => "closure".into(),
            Variant::Symbolic => "symbolic".into(),
        },
        ideal: family.ideal().to_string(),
        r: family.r(),
        max_degree: family.ideal().max_degree(),
        complex: family.complex().to_string(),
        dim: st.dim,
        facets: family.newton().map(|np| np.facets().iter().map(ToString::to_string).collect()).unwrap_or_default(),
        primes: family.square_free().map(|sf| sf.primes().iter().map(ToString::to_string).collect()).unwrap_or_default(),
        candidates: total,
        candidates_with_homology: active,
        rows: st
            .rows
            .iter()
            .map(|row| IdealRow {
                n: row.n,
                a: row.a.iter().map(|&v| opt_str(v)).collect(),
                reg_quotient: opt_str(row.reg),
                reg: opt_str(row.reg_ideal()),
            })
            .collect(),
        a_laws: st.a_laws.iter().map(LawReport::from).collect(),
        reg_law: LawReport::from(&st.reg_law),
        reg_linear: st.reg_linear.as_ref().map(|(p, e)| (p.to_string(), e.to_string())),
        empirical_onset: st.empirical_onset,
        period_lcm: st.period_lcm,
        shared_slope: st.shared_slope,
        bounds: st.bounds.as_ref().map(|b| BoundsReport {
            n_dagger: b.n_dagger.to_string(),
            regst_bound: b.regst_bound.to_string(),
            sym_bound: b.sym_bound.to_string(),
        }),
        instance_onset_bound: st.instance_onset_bound.to_string(),
        checks: st.checks.iter().map(|c| CheckReport { name: c.name.clone(), holds: c.holds }).collect(),
        oracle_checked: false,
        oracle_inconclusive: Vec::new(),
        oracle_diffs: Vec::new(),
    }
}

/// Runs the regularity pipeline, and the degree scan when `oracle` is set.
pub fn analyze_ideal(
    ideal: MonomialIdeal,
    variant: Variant,
    range: (u64, u64),
    oracle: bool,
    bounds: Option<(i64, i64)>,
) -> Result<IdealReport> {
    let family = PowerFamily::new(ideal, variant)?;
    let engine = RegularityEngine::new(family.clone(), CANDIDATE_CAP)?;
    let st = stability_report(&engine, range.0, range.1)?;
    let mut rep = ideal_report(&family, &engine, &st);
    if oracle {
        rep.oracle_checked = true;
        for row in &st.rows {
            let scan = oracle_a_invariants(&family, row.n, bounds)?;
            if scan.inconclusive {
                rep.oracle_inconclusive.push(row.n);
            }
            for i in 0..row.a.len() {
                if row.a[i] != scan.report.a[i] {
                    rep.oracle_diffs.push(OracleDiff {
                        n: row.n,
                        i,
                        programs: opt_str(row.a[i]),
                        scan: opt_str(scan.report.a[i]),
                        degree: scan.maximizers[i].clone(),
                    });
                }
            }
        }
    }
    Ok(rep)
}

fn render_ideal(rep: &IdealReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ideal {} in {} variables, d(I) = {}", rep.ideal, rep.r, rep.max_degree);
    let _ = writeln!(s, "variant: {}", rep.variant);
    let _ = writeln!(s, "complex of I: {}, dim R/I = {}", rep.complex, rep.dim);
    for f in &rep.facets {
        let _ = writeln!(s, "facet: {f}");
    }
    for p in &rep.primes {
        let _ = writeln!(s, "minimal prime on variables {p}");
    }
    let _ = writeln!(s, "programs: {} groups, {} with homology", rep.candidates, rep.candidates_with_homology);
    let mut header = format!("{:>4}", "n");
    for i in 0..=rep.dim {
        let _ = write!(header, " {:>8}", format!("a_{i}"));
    }
    let _ = writeln!(s, "{header} {:>8} {:>8}", "reg(R/J)", "reg(J)");
    for row in &rep.rows {
        let mut line = format!("{:>4}", row.n);
        for a in &row.a {
            let _ = write!(line, " {a:>8}");
        }
        let _ = writeln!(s, "{line} {:>8} {:>8}", row.reg_quotient, row.reg);
    }
    for (i, law) in rep.a_laws.iter().enumerate() {
        let _ = writeln!(s, "a_{i} law: {law}");
    }
    let _ = writeln!(s, "reg(J) law: {}", rep.reg_law);
    if let Some((p, e)) = &rep.reg_linear {
        let _ = writeln!(s, "reg(J_n) = {p} n + {e} from n = {}", rep.reg_law.onset);
    }
    let _ = writeln!(s, "empirical onset = {}, period lcm = {}", rep.empirical_onset, rep.period_lcm);
    let _ = writeln!(s, "a_i slopes shared: {}", rep.shared_slope);
    match &rep.bounds {
        Some(b) => {
            let _ = writeln!(s, "certified N_dagger = {}", b.n_dagger);
            let _ = writeln!(s, "certified regst bound = {}", b.regst_bound);
            let _ = writeln!(s, "certified symbolic bound = {}", b.sym_bound);
        }
        None => {
            let _ = writeln!(s, "certified bounds: n/a (need r >= 2 and d(I) >= 2)");
        }
    }
    let _ = writeln!(s, "instance onset bound = {}", rep.instance_onset_bound);
    for c in &rep.checks {
        let _ = writeln!(s, "check {}: {}", if c.holds { "ok" } else { "FAILED" }, c.name);
    }
    if rep.oracle_checked {
        if rep.oracle_diffs.is_empty() {
            let _ = writeln!(s, "degree scan: agrees at every n");
        } else {
            for d in &rep.oracle_diffs {
                let _ = writeln!(
                    s,
                    "degree scan: n = {} a_{} programs {} scan {} at {:?}",
                    d.n, d.i, d.programs, d.scan, d.degree
                );
            }
        }
        if !rep.oracle_inconclusive.is_empty() {
            let _ = writeln!(s, "degree scan inconclusive at n = {:?}; enlarge --box", rep.oracle_inconclusive);
        }
    }
    s
}

fn ideal_csv(rep: &IdealReport) -> String {
    let mut s = String::from("n");
    for i in 0..=rep.dim {
        let _ = write!(s, ",a_{i}");
    }
    s.push_str(",reg_quotient,reg,law,residual\n");
    let slope = parse_rat(&rep.reg_law.slope).ok();
    for row in &rep.rows {
        let predicted = slope.as_ref().and_then(|p| {
            let b = &rep.reg_law.intercepts[(row.n % rep.reg_law.period) as usize];
            parse_rat(b).ok().map(|b| p * Rat::from_integer(row.n.into()) + b)
        });
        let (law, residual) = match (&predicted, row.reg.parse::<i64>()) {
            (Some(p), Ok(x)) => (p.to_string(), (Rat::from_integer(x.into()) - p).to_string()),
            (Some(p), Err(_)) => (p.to_string(), "-inf".into()),
            (None, _) => ("-inf".into(), "-".into()),
        };
        let _ = writeln!(s, "{},{},{},{},{},{}", row.n, row.a.join(","), row.reg_quotient, row.reg, law, residual);
    }
    s
}

fn render_newton(ideal: &MonomialIdeal) -> String {
    let np = newton_polyhedron(ideal);
    let mut s = String::new();
    let _ = writeln!(s, "ideal {} in {} variables, d(I) = {}", ideal, ideal.r(), ideal.max_degree());
    let _ = writeln!(s, "{:>4}  {:<32} {:>7}  bound", "#", "facet", "support");
    for (k, (f, ok)) in np.facets().iter().zip(np.coefficient_bound_ok()).enumerate() {
        let _ = writeln!(
            s,
            "{:>4}  {:<32} {:>7}  {}",
            k + 1,
            f.to_string(),
            f.support().len(),
            if ok { "ok" } else { "violated" }
        );
    }
    s
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Dimension(_) | Error::Domain(_) => EXIT_PARSE,
        Error::Detection { .. } => EXIT_DETECTION,
        Error::Budget(_) => EXIT_BUDGET,
        Error::Degenerate(_) | Error::Invariant(_) => EXIT_INTERNAL,
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("report types serialize") + "\n"
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes()).map_err(|e| Error::Parse(format!("cannot write output: {e}")))
    };
    match cmd {
        Command::IpAnalyze { file, range, jmax_cap, json, csv } => {
            let (pip, opts) = parse_ip(read_problem(&file)?)?;
            let range = match range.or(opts.range) {
                Some(r) => parse_range(&r)?,
                None => DEFAULT_IP_RANGE,
            };
            let rep = analyze_ip(&pip, range, jmax_cap.or(opts.jmax_cap))?;
            emit(out, &render_ip(&rep))?;
            if let Some(p) = json {
                write_file(&p, &to_json(&rep))?;
            }
            if let Some(p) = csv {
                write_file(&p, &ip_csv(&rep))?;
            }
            if rep.law.is_none() {
                let _ = writeln!(err, "error: no quasi-linear law validated over {}:{}", range.0, range.1);
                return Ok(EXIT_DETECTION);
            }
            Ok(EXIT_OK)
        }
        Command::IdealAnalyze { file, variant, range, oracle, bounds, json, csv } => {
            let (ideal, forced, opts) = parse_ideal(read_problem(&file)?)?;
            let variant = match variant.or(opts.variant) {
                Some(v) => v.parse::<Variant>()?,
                None => forced.unwrap_or(Variant::Closure),
            };
            if forced == Some(Variant::Symbolic) && variant != Variant::Symbolic {
                return Err(Error::Parse("square-free ideal files only support the symbolic variant".into()));
            }
            let range = match range.or(opts.range) {
                Some(r) => parse_range(&r)?,
                None => DEFAULT_IDEAL_RANGE,
            };
            let bounds = bounds.or(opts.bounds).map(|b| parse_box(&b)).transpose()?;
            let rep = analyze_ideal(ideal, variant, range, oracle, bounds)?;
            emit(out, &render_ideal(&rep))?;
            if let Some(p) = json {
                write_file(&p, &to_json(&rep))?;
            }
            if let Some(p) = csv {
                write_file(&p, &ideal_csv(&rep))?;
            }
            if let Some(d) = rep.oracle_diffs.first() {
                let _ = writeln!(
                    err,
                    "error: routes disagree at n = {}, i = {}: programs {}, scan {} (degree {:?})",
                    d.n, d.i, d.programs, d.scan, d.degree
                );
                return Ok(EXIT_ORACLE);
            }
            if rep.checks.iter().any(|c| !c.holds) {
                let _ = writeln!(err, "error: a structural check failed");
                return Ok(EXIT_INTERNAL);
            }
            Ok(EXIT_OK)
        }
        Command::Newton { file } => {
            let (ideal, _, _) = parse_ideal(read_problem(&file)?)?;
            emit(out, &render_newton(&ideal))?;
            Ok(EXIT_OK)
        }
    }
}
