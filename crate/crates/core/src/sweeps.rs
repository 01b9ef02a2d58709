//! Exhaustive sweeps over normalized sets, reproducing the reference tables.
//!
//! A normalized set of diameter `s >= 1` is `{0} union M union {s}` with
//! `M` a subset of `{1, .., s-1}`, encoded as an `s-1`-bit mask. Since every
//! covering quantity here is invariant under reflection `x -> s - x`, each
//! reflection pair is enumerated once (the member whose mask is numerically
//! at most its bit-reversal).
//!
//! Three sweeps:
//! * [`sweep_period`]: for each diameter `s`, the largest minimal period
//!   `ell(S)` over all sets of diameter at most `s` (a running maximum), with
//!   a witness set whenever the value is a new record;
//! * [`sweep_period_k`]: the same restricted to sets of a fixed size `k`; when
//!   the maximum over diameter exactly `s` falls short of the running maximum,
//!   that smaller value is reported and flagged as bracketed;
//! * [`alpha_upper`]: the minimum covering efficiency over sets of size `k`
//!   and diameter at most `d_max` — an upper bound on the least efficiency
//!   achievable by any `k`-element set.

use crate::debruijn::{covering_density, minimal_period, GraphVariant};
use crate::error::Error;
use crate::limits::Limits;
use crate::rat::Rat;
use crate::sets::ZSet;
use crate::Result;

/// Work splitting for long sweeps: shard `shard` of `shards` processes a
/// contiguous slice of each diameter's mask space. Rows from different shards
/// are merged by taking, per diameter, the maximum value (and recomputing
/// record/bracket flags); with the default single shard the rows are final.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub shards: u64,
    pub shard: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { shards: 1, shard: 0 }
    }
}

impl SweepOptions {
    fn validate(&self) -> Result<()> {
        if self.shards == 0 || self.shard >= self.shards {
            return Err(Error::InvalidParameter(format!(
                "need shard < shards, got shard {} of {}",
                self.shard, self.shards
            )));
        }
        Ok(())
    }
}

/// One row of a period sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodRow {
    pub s: u64,
    /// Set size restriction, if any.
    pub k: Option<u64>,
    /// Reported maximum minimal period.
    pub ell: u64,
    /// A set attaining the reported value; in the unrestricted sweep only
    /// rows that set a new record carry a witness.
    pub witness: Option<ZSet>,
    /// True when the diameter-exactly-`s` maximum fell short of the running
    /// maximum over diameters up to `s`, so `ell` is that smaller value.
    pub bracketed: bool,
}

/// Visit every normalized set of diameter exactly `s` (optionally of size
/// `k`), one representative per reflection pair, restricted to this shard's
/// slice of the mask space.
fn enumerate_diameter(
    s: u64,
    k: Option<u64>,
    opts: SweepOptions,
    f: &mut impl FnMut(&ZSet),
) {
    if s == 0 {
        if opts.shard == 0 && k.map_or(true, |k| k == 1) {
            f(&ZSet::normalize(&[0]).unwrap());
        }
        return;
    }
    if k == Some(1) {
        return; // a 1-element set has diameter 0
    }
    let bits = (s - 1) as u32;
    let total: u64 = 1 << bits;
    let lo = opts.shard * total / opts.shards;
    let hi = (opts.shard + 1) * total / opts.shards;
    for mask in lo..hi {
        if let Some(k) = k {
            if mask.count_ones() as u64 + 2 != k {
                continue;
            }
        }
        // Reflection x -> s - x reverses the interior mask.
        let reflected = if bits == 0 { 0 } else { mask.reverse_bits() >> (64 - bits) };
        if mask > reflected {
            continue;
        }
        let mut elems: Vec<i64> = vec![0];
        for bit in 0..bits {
            if mask >> bit & 1 == 1 {
                elems.push(bit as i64 + 1);
            }
        }
        elems.push(s as i64);
        f(&ZSet::normalize(&elems).unwrap());
    }
}

/// Largest minimal period over each diameter of a set in the shard's slice,
/// with the first set attaining it.
fn diameter_max_period(
    s: u64,
    k: Option<u64>,
    opts: SweepOptions,
    limits: &Limits,
) -> Result<Option<(u64, ZSet)>> {
    let mut best: Option<(u64, ZSet)> = None;
    let mut first_err: Option<Error> = None;
    enumerate_diameter(s, k, opts, &mut |set| {
        if first_err.is_some() {
            return;
        }
        match minimal_period(set, GraphVariant::Reduced, limits) {
            Ok(analysis) => {
                if best.as_ref().map_or(true, |(ell, _)| analysis.ell > *ell) {
                    best = Some((analysis.ell, set.clone()));
                }
            }
            Err(e) => first_err = Some(e),
        }
    });
    match first_err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// Running maximum of the minimal period over all sets of diameter at most
/// `s`, for `s` up to `s_max`. Bounded by `Limits::sweep_all_sets`.
pub fn sweep_period(s_max: u64, opts: SweepOptions, limits: &Limits) -> Result<Vec<PeriodRow>> {
    opts.validate()?;
    if s_max > limits.sweep_all_sets {
        return Err(Error::SweepLimit { requested: s_max, limit: limits.sweep_all_sets });
    }
    let mut rows = Vec::new();
    let mut running = 0u64;
    for s in 0..=s_max {
        let local = diameter_max_period(s, None, opts, limits)?;
        match local {
            Some((ell, witness)) if ell > running => {
                running = ell;
                rows.push(PeriodRow { s, k: None, ell, witness: Some(witness), bracketed: false });
            }
            Some(_) | None => {
                rows.push(PeriodRow { s, k: None, ell: running, witness: None, bracketed: false });
            }
        }
    }
    Ok(rows)
}

/// Maximum minimal period over sets of size `k`, by diameter up to `s_max`.
/// Reports the running maximum; where the diameter-exactly-`s` maximum is
/// smaller, reports that value flagged `bracketed`. Bounded by
/// `Limits::sweep_fixed_size`.
pub fn sweep_period_k(
    s_max: u64,
    k: u64,
    opts: SweepOptions,
    limits: &Limits,
) -> Result<Vec<PeriodRow>> {
    opts.validate()?;
    if k == 0 {
        return Err(Error::InvalidParameter("set size k must be >= 1".into()));
    }
    if s_max > limits.sweep_fixed_size {
        return Err(Error::SweepLimit { requested: s_max, limit: limits.sweep_fixed_size });
    }
    let first_s = if k == 1 { 0 } else { k - 1 };
    let mut rows = Vec::new();
    let mut running = 0u64;
    for s in first_s..=s_max.max(first_s) {
        if s > s_max {
            break;
        }
        let local = diameter_max_period(s, Some(k), opts, limits)?;
        let Some((ell, witness)) = local else {
            continue; // this shard's slice has no size-k set of diameter s
        };
        let bracketed = ell < running;
        running = running.max(ell);
        rows.push(PeriodRow { s, k: Some(k), ell, witness: Some(witness), bracketed });
    }
    Ok(rows)
}

/// One row of the minimum-efficiency sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaRow {
    pub k: u64,
    pub d_max: u64,
    /// Minimum covering efficiency over the swept sets.
    pub efficiency: Rat,
    /// First set attaining the minimum (smallest diameter, then enumeration
    /// order).
    pub witness: ZSet,
}

fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Minimum covering efficiency over all sets of size `k` and diameter at most
/// `d_max`: an upper bound on the least efficiency of any `k`-element set.
/// The candidate count is checked against `Limits::enumeration_budget` before
/// any work starts.
pub fn alpha_upper(k: u64, d_max: u64, limits: &Limits) -> Result<AlphaRow> {
    if k == 0 {
        return Err(Error::InvalidParameter("set size k must be >= 1".into()));
    }
    let first_d = if k == 1 { 0 } else { k - 1 };
    if d_max < first_d {
        return Err(Error::InvalidParameter(format!(
            "no set of size {k} has diameter at most {d_max}"
        )));
    }
    let candidates: u128 =
        (first_d..=d_max).map(|d| binomial(d.saturating_sub(1), k.saturating_sub(2))).sum();
    if candidates > limits.enumeration_budget as u128 {
        return Err(Error::EnumerationLimit { candidates, budget: limits.enumeration_budget });
    }

    let mut best: Option<(Rat, ZSet)> = None;
    let mut first_err: Option<Error> = None;
    for d in first_d..=d_max {
        enumerate_diameter(d, Some(k), SweepOptions::default(), &mut |set| {
            if first_err.is_some() {
                return;
            }
            match covering_density(set, GraphVariant::Reduced, limits) {
                Ok(density) => {
                    if best.as_ref().map_or(true, |(e, _)| density.efficiency < *e) {
                        best = Some((density.efficiency, set.clone()));
                    }
                }
                Err(e) => first_err = Some(e),
            }
        });
        if let Some(e) = first_err.take() {
            return Err(e);
        }
    }
    let (efficiency, witness) = best.expect("non-empty enumeration");
    Ok(AlphaRow { k, d_max, efficiency, witness })
}
