//! Number-theoretic side of the asymptotics: the set of exact multiples
//! `J_max`, its gcd `delta`, the stability threshold `N*`, and detection of
//! the eventual quasi-linear law of an optimum sequence.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{gcd_list, Rat, SUBDET_BUDGET};
use crate::ip::{solve_ip, IpSweep, ParamIP};
use crate::lp::{solve_lp, OptValue};
use crate::polyhedra::{enumerate_vrep, full_dimensional_witness};

/// `f(n) = slope * n + intercepts[n mod period]` for `n >= onset`. A `None`
/// intercept marks a residue class that stays infeasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiLinearLaw {
    pub slope: Rat,
    pub period: u64,
    pub intercepts: Vec<Option<Rat>>,
    pub onset: u64,
}

impl QuasiLinearLaw {
    pub fn predict(&self, n: u64) -> Option<Rat> {
        let beta = self.intercepts[(n % self.period) as usize].as_ref()?;
        Some(&self.slope * Rat::from_integer(BigInt::from(n)) + beta)
    }

    fn matches(&self, n: u64, v: &OptValue) -> bool {
        match (self.predict(n), v) {
            (None, OptValue::NegInfinity) => true,
            (Some(p), OptValue::Finite { value, .. }) => p == *value,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JMaxInfo {
    /// Every `n < cap` where the homogeneous program is feasible with `m_n = phi * n`.
    pub members: Vec<u64>,
    pub cap: u64,
    pub delta: u64,
    /// Every multiple of `delta` from here on lies in the semigroup spanned by `members`.
    pub frobenius_bound: u64,
    pub phi: Rat,
    /// True when `cap` is below `(r+1) D'`; `delta` is then only a multiple of the true value.
    pub truncated: bool,
}

fn require_full_dim_finite(pip: &ParamIP) -> Result<Rat> {
    let p = pip.polyhedron();
    let v = enumerate_vrep(&p);
    if full_dimensional_witness(&p, &v, None).is_none() {
        return Err(Error::Domain("the polyhedron {Ax <= b, x >= 0} is not full-dimensional".into()));
    }
    match solve_lp(&p, &pip.d_rat()) {
        OptValue::Finite { value, .. } => Ok(value),
        other => Err(Error::Domain(format!("the LP relaxation must have a finite optimum, got {other}"))),
    }
}

/// Default search cap `(r+1) D'`, with `D'` the largest subdeterminant of `[A b]`.
pub fn default_jmax_cap(pip: &ParamIP) -> u64 {
    let st = pip.subdet_stats(SUBDET_BUDGET);
    (BigInt::from(pip.r() + 1) * st.d_prime).to_u64().unwrap_or(u64::MAX)
}

pub fn jmax_and_delta(pip: &ParamIP, cap_override: Option<u64>) -> Result<JMaxInfo> {
    let phi = require_full_dim_finite(pip)?;
    let default_cap = default_jmax_cap(pip);
    let cap = cap_override.unwrap_or(default_cap);
    let h = pip.homogeneous();
    let members: Vec<u64> = (1..cap)
        .filter(|&n| match solve_ip(&h, n) {
            OptValue::Finite { value, .. } => value == &phi * Rat::from_integer(BigInt::from(n)),
            _ => false,
        })
        .collect();
    let Some(&j1) = members.first() else {
        return Err(Error::Budget(format!(
            "no n < {cap} attains m_n = {phi} n; raise the cap (default {default_cap})"
        )));
    };
    let d = pip.subdet_stats(SUBDET_BUDGET).d;
    if BigInt::from(j1) > d {
        return Err(Error::Invariant(format!("smallest exact multiple {j1} exceeds D = {d}")));
    }
    let jp = *members.last().expect("nonempty");
    Ok(JMaxInfo {
        delta: gcd_list(&members)?,
        frobenius_bound: ((j1 - 1) * (jp - 1)).max(j1),
        phi,
        truncated: cap < default_cap,
        cap,
        members,
    })
}

/// `N* = (r+1) D' (D-1) + (r+2) Delta - D`, past which `M_n` is quasi-linear
/// with period `delta`.
pub fn n_star(pip: &ParamIP) -> BigInt {
    let st = pip.subdet_stats(SUBDET_BUDGET);
    let r = BigInt::from(pip.r());
    (&r + 1) * &st.d_prime * (&st.d - 1) + (&r + 2) * &st.delta_max - &st.d
}

/// `member[k]` is true iff `k` is a sum of elements of `gens` (0 included).
pub fn semigroup_members(gens: &[u64], limit: u64) -> Vec<bool> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for k in 1..=limit as usize {
        member[k] = gens.iter().any(|&g| g as usize <= k && g > 0 && member[k - g as usize]);
    }
    member
}

/// Period candidates: the divisors of `delta` in increasing order, then its
/// multiples up to `cap`; without `delta`, simply `1..=cap`.
pub fn default_candidates(delta: Option<u64>, cap: u64) -> Vec<u64> {
    match delta {
        Some(delta) => {
            let mut out: Vec<u64> = (1..=delta).filter(|t| delta % t == 0).collect();
            out.extend((2..).map(|k| k * delta).take_while(|&t| t <= cap));
            out
        }
        None => (1..=cap.max(1)).collect(),
    }
}

/// Tries to fit one period; returns the law or a one-line reason.
fn fit_period(sweep: &IpSweep, t: u64, window: usize) -> std::result::Result<QuasiLinearLaw, String> {
    let mut slope: Option<Rat> = None;
    let mut intercepts = Vec::with_capacity(t as usize);
    let tr = Rat::from_integer(BigInt::from(t));
    for rho in 0..t {
        let class: Vec<(u64, &OptValue)> = sweep.iter().filter(|(n, _)| n % t == rho).collect();
        let Some(&(n_last, v_last)) = class.last() else {
            return Err(format!("period {t}: residue {rho} has no sample"));
        };
        match v_last {
            OptValue::NegInfinity => intercepts.push(None),
            OptValue::PosInfinity => return Err(format!("period {t}: residue {rho} ends unbounded")),
            OptValue::Finite { value, .. } => {
                if class.len() >= 2 {
                    if let OptValue::Finite { value: prev, .. } = class[class.len() - 2].1 {
                        let s = (value - prev) / &tr;
                        match &slope {
                            Some(s0) if *s0 != s => {
                                return Err(format!("period {t}: residue {rho} has slope {s}, others {s0}"));
                            }
                            _ => slope = Some(s),
                        }
                    }
                }
                intercepts.push(Some((n_last, value.clone())));
            }
        }
    }
    let slope = slope.unwrap_or_else(|| Rat::from_integer(BigInt::from(0)));
    let intercepts: Vec<Option<Rat>> = intercepts
        .into_iter()
        .map(|x| x.map(|(n, v)| v - &slope * Rat::from_integer(BigInt::from(n))))
        .collect();
    let mut law = QuasiLinearLaw { slope, period: t, intercepts, onset: sweep.n_lo };
    if let Some((last_bad, _)) = sweep.iter().filter(|(n, v)| !law.matches(*n, v)).last() {
        law.onset = last_bad + 1;
    }
    let trailing = (sweep.n_hi + 1).saturating_sub(law.onset);
    let need = (window as u64).max(3 * t);
    if trailing < need {
        return Err(format!("period {t}: agrees from n = {} on, only {trailing} trailing points (need {need})", law.onset));
    }
    Ok(law)
}

/// Finds the smallest candidate period whose law reproduces the tail of the
/// sweep exactly over at least `max(validation_window, 3 t)` points.
pub fn detect_law(
    sweep: &IpSweep,
    candidates: &[u64],
    validation_window: usize,
    lp_slope: Option<&Rat>,
) -> Result<QuasiLinearLaw> {
    let mut residuals = Vec::new();
    let mut sorted: Vec<u64> = candidates.iter().copied().filter(|&t| t > 0).collect();
    sorted.sort_unstable();
    sorted.dedup();
    for t in sorted {
        match fit_period(sweep, t, validation_window) {
            Ok(law) => {
                if let Some(phi) = lp_slope {
                    let all_undefined = law.intercepts.iter().all(Option::is_none);
                    if !all_undefined && law.slope != *phi {
                        return Err(Error::Invariant(format!(
                            "validated slope {} differs from the LP slope {phi}",
                            law.slope
                        )));
                    }
                }
                return Ok(law);
            }
            Err(line) => residuals.push(line),
        }
    }
    Err(Error::Detection { residuals })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearity {
    pub delta: u64,
    /// `m_n` is eventually linear exactly when `delta = 1`.
    pub m_linear: bool,
    /// `delta = 1` forces `M_n` to be eventually linear; the converse fails.
    pub big_m_linear_guaranteed: bool,
}

pub fn linearity_criterion(pip: &ParamIP, cap_override: Option<u64>) -> Result<Linearity> {
    let info = jmax_and_delta(pip, cap_override)?;
    Ok(Linearity { delta: info.delta, m_linear: info.delta == 1, big_m_linear_guaranteed: info.delta == 1 })
}

/// The sequence `n -> sum_i floor(n / a^i)` for `i = 1..=r`.
pub fn floor_sum(n: u64, a: u64, r: u32) -> u64 {
    (1..=r).map(|i| n / a.pow(i)).sum()
}
