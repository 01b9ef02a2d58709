//! Covering-efficiency bounds for unions of rational closed intervals in `R`.
//!
//! For `S` a union of `k` disjoint closed intervals with rational endpoints,
//! the covering efficiency is `e(S) = 1 / (nu(S) * lambda(S))`, where `nu(S)`
//! is the smallest asymptotic density of a translate set covering `R`. The
//! module produces certified lower bounds: each bound comes with an explicit
//! periodic covering whose offsets are verified to cover one period exactly.
//!
//! Bound sources:
//! * the single-interval bound: tile `R` with the largest interval alone;
//! * for `k = 2`, four closed-form constructions (methods I-IV) whose best
//!   value always exceeds `2/3`, and `3/4` for equal lengths;
//! * a grid bound: discretize to the set `U` of `delta`-cells inside `S`,
//!   compute the exact covering multiplicity `kappa(U)` over `Z`, and scale
//!   the extracted periodic covering back to `R`, giving
//!   `e(S) >= lambda(S') / (lambda(S) * kappa(U))`.
//!
//! The matching upper bounds `(2 + eps) / 3` and `(3 + eps) / 4` for the two
//! canonical near-worst examples are available from [`example_upper_bound`].

use num::{One, Signed, Zero};

use crate::debruijn::{covering_density, extract_covering, GraphVariant};
use crate::error::Error;
use crate::limits::Limits;
use crate::rat::{parse_rat, rat, rat_int, rat_to_string, rat_uint, Rat};
use crate::sets::ZSet;
use crate::Result;

/// A union of disjoint closed intervals with rational endpoints, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    intervals: Vec<(Rat, Rat)>,
}

impl IntervalUnion {
    /// Build from endpoint pairs. The intervals may be given in any order but
    /// must be non-degenerate and pairwise disjoint (touching endpoints count
    /// as overlap: write the merged interval instead).
    pub fn new(raw: &[(Rat, Rat)]) -> Result<IntervalUnion> {
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut intervals = raw.to_vec();
        for (lo, hi) in &intervals {
            if lo >= hi {
                return Err(Error::InvalidParameter(format!(
                    "interval [{}, {}] is empty or reversed",
                    rat_to_string(lo),
                    rat_to_string(hi)
                )));
            }
        }
        intervals.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in intervals.windows(2) {
            if pair[1].0 <= pair[0].1 {
                return Err(Error::InvalidParameter(format!(
                    "intervals [{}, {}] and [{}, {}] are not disjoint",
                    rat_to_string(&pair[0].0),
                    rat_to_string(&pair[0].1),
                    rat_to_string(&pair[1].0),
                    rat_to_string(&pair[1].1)
                )));
            }
        }
        Ok(IntervalUnion { intervals })
    }

    /// Parse `"lo,hi;lo,hi"` with rational tokens like `31/10`.
    pub fn parse(text: &str) -> Result<IntervalUnion> {
        let mut raw = Vec::new();
        for piece in text.split(';') {
            let (lo, hi) = piece
                .split_once(',')
                .ok_or_else(|| Error::Parse { what: "interval", input: piece.to_string() })?;
            raw.push((parse_rat(lo)?, parse_rat(hi)?));
        }
        IntervalUnion::new(&raw)
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn k(&self) -> usize {
        self.intervals.len()
    }

    /// Total measure `lambda(S)`.
    pub fn measure(&self) -> Rat {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }
}

impl std::fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{}", rat_to_string(lo), rat_to_string(hi))?;
        }
        Ok(())
    }
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    I,
    II,
    III,
    IV,
    Grid,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::I => write!(f, "I"),
            Method::II => write!(f, "II"),
            Method::III => write!(f, "III"),
            Method::IV => write!(f, "IV"),
            Method::Grid => write!(f, "grid"),
        }
    }
}

/// A periodic covering of `R` by translates of a fixed interval union:
/// translate positions are `offsets + period * Z`. Its efficiency is
/// `period / (|offsets| * lambda(S))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealCoveringCert {
    pub period: Rat,
    /// Translate positions within one period, in `[0, period)`, sorted.
    pub offsets: Vec<Rat>,
    pub efficiency: Rat,
    pub method: Method,
}

/// Check that the translates `S + o + period * Z`, over the certificate's
/// offsets, cover `[0, period)`. Exact sweep over the rational endpoints.
pub fn verify_interval_covering(s: &IntervalUnion, cert: &RealCoveringCert) -> bool {
    let p = &cert.period;
    if !p.is_positive() || cert.offsets.is_empty() {
        return false;
    }
    // Reduce every translated interval modulo the period; longer-than-period
    // pieces cover everything on their own.
    let mut pieces: Vec<(Rat, Rat)> = Vec::new();
    for o in &cert.offsets {
        for (lo, hi) in &s.intervals {
            if &(hi - lo) >= p {
                return true;
            }
            let start = mod_rat(&(lo + o), p);
            let end = &start + (hi - lo);
            if end > *p {
                pieces.push((start, p.clone()));
                pieces.push((Rat::zero(), end - p));
            } else {
                pieces.push((start, end));
            }
        }
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut reach = Rat::zero();
    for (lo, hi) in pieces {
        if lo > reach {
            return false; // the open gap (reach, lo) is uncovered
        }
        if hi > reach {
            reach = hi;
        }
        if reach >= *p {
            return true;
        }
    }
    reach >= *p
}

fn mod_rat(x: &Rat, p: &Rat) -> Rat {
    let q = (x / p).floor();
    x - q * p
}

fn ceil_to_u64(x: &Rat) -> u64 {
    use num::ToPrimitive;
    x.ceil().to_integer().to_u64().expect("ceiling does not fit u64")
}

fn cert(
    s: &IntervalUnion,
    method: Method,
    period: Rat,
    offsets: Vec<Rat>,
    efficiency: Rat,
) -> RealCoveringCert {
    let mut offsets = offsets;
    offsets.sort();
    let cert = RealCoveringCert { period, offsets, efficiency, method };
    // Every certificate must verify, and its closed-form efficiency must
    // match the period/offsets recomputation.
    assert!(verify_interval_covering(s, &cert), "method {method} produced a non-covering");
    let recomputed = &cert.period / (rat_uint(cert.offsets.len() as u64) * s.measure());
    assert_eq!(cert.efficiency, recomputed, "method {method} efficiency mismatch");
    cert
}

/// The two-interval union `[0, a] union [a+c, a+c+b]` the method
/// constructions are phrased for.
fn canonical_pair(a: &Rat, b: &Rat, c: &Rat) -> IntervalUnion {
    IntervalUnion::new(&[
        (Rat::zero(), a.clone()),
        (a + c, a + c + b),
    ])
    .expect("canonical two-interval union")
}

/// The four closed-form periodic coverings for `S = [0,a] union [a+c,a+c+b]`
/// with `a >= b > 0` and gap `c > 0`, each verified before being returned:
///
/// * I: tile with the long interval alone; efficiency `a / (a+b)`.
/// * II (needs `c <= b`): `S union (S+b)` is one interval; efficiency
///   `(a+2b+c) / (2(a+b))`.
/// * III: end-to-end translates at spacing `a+b+c` leave gaps of length `c`,
///   filled by `m = ceil(c/(a+b))` staggered copies; with `y = c/(a+b)`,
///   efficiency `(y+1) / (m+1)`.
/// * IV (needs `a = b`): `m+1` translates at spacing `a` with `m = ceil(c/a)`
///   form one long interval; with `z = c/a`, efficiency `(m+2+z) / (2m+2)`.
pub fn two_interval_methods(a: &Rat, b: &Rat, c: &Rat) -> Result<Vec<RealCoveringCert>> {
    if !b.is_positive() || !c.is_positive() || a < b {
        return Err(Error::InvalidParameter(
            "two-interval methods need a >= b > 0 and gap c > 0".into(),
        ));
    }
    let s = canonical_pair(a, b, c);
    let lambda = a + b;
    let mut certs = Vec::new();

    certs.push(cert(
        &s,
        Method::I,
        a.clone(),
        vec![Rat::zero()],
        a / &lambda,
    ));

    if c <= b {
        let period = a + b + b + c;
        let eff = &period / (rat(2, 1) * &lambda);
        certs.push(cert(&s, Method::II, period, vec![Rat::zero(), b.clone()], eff));
    }

    {
        let y = c / &lambda;
        let m = ceil_to_u64(&y);
        let period = &lambda + c;
        let offsets: Vec<Rat> = (0..=m).map(|j| rat_uint(j) * &lambda).collect();
        let eff = (y + Rat::one()) / rat_uint(m + 1);
        certs.push(cert(&s, Method::III, period, offsets, eff));
    }

    if a == b {
        let z = c / a;
        let m = ceil_to_u64(&z);
        let period = rat_uint(m + 2) * a + c;
        let offsets: Vec<Rat> = (0..=m).map(|i| rat_uint(i) * a).collect();
        let eff = (rat_uint(m + 2) + z) / rat_uint(2 * m + 2);
        certs.push(cert(&s, Method::IV, period, offsets, eff));
    }

    Ok(certs)
}

/// Result of discretizing an interval union to a `delta`-grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridResult {
    /// Indices `j` with cell `[j*delta, (j+1)*delta]` inside `S`, normalized
    /// to start at 0; `None` when no cell fits.
    pub u: Option<ZSet>,
    /// The actual smallest cell index before normalization.
    pub first_index: i64,
    pub delta: Rat,
    /// Measure of the kept cells: `|U| * delta`.
    pub lambda_prime: Rat,
}

/// The grid set `U = { j : [j*delta, (j+1)*delta] inside S }`. Always
/// succeeds; an empty `U` is signalled through the result, and
/// `lambda(S') >= lambda(S) - 2 k delta` bounds the loss.
pub fn grid_discretize(s: &IntervalUnion, delta: &Rat) -> Result<GridResult> {
    if !delta.is_positive() {
        return Err(Error::InvalidParameter("grid spacing delta must be positive".into()));
    }
    use num::ToPrimitive;
    let mut indices: Vec<i64> = Vec::new();
    for (lo, hi) in &s.intervals {
        // j*delta >= lo and (j+1)*delta <= hi.
        let j_min = (lo / delta).ceil().to_integer();
        let j_max = ((hi - delta) / delta).floor().to_integer();
        let (Some(j_min), Some(j_max)) = (j_min.to_i64(), j_max.to_i64()) else {
            return Err(Error::InvalidParameter("grid index does not fit i64".into()));
        };
        for j in j_min..=j_max {
            indices.push(j);
        }
    }
    if indices.is_empty() {
        return Ok(GridResult {
            u: None,
            first_index: 0,
            delta: delta.clone(),
            lambda_prime: Rat::zero(),
        });
    }
    let first_index = indices[0];
    let lambda_prime = rat_uint(indices.len() as u64) * delta;
    Ok(GridResult {
        u: Some(ZSet::normalize(&indices)?),
        first_index,
        delta: delta.clone(),
        lambda_prime,
    })
}

/// The near-optimal default grid spacing `lambda(S) / (2k (ceil(ln k) + 1))`.
pub fn default_delta(s: &IntervalUnion) -> Rat {
    let k = s.k() as u64;
    let ceil_ln_k = if k <= 1 {
        0
    } else {
        // Smallest c >= 1 with e^c >= k; k is small, so f64 is exact enough,
        // but verify against the neighbouring integers to be safe.
        let mut c = (k as f64).ln().ceil() as u64;
        while c > 1 && ((c - 1) as f64).exp() >= k as f64 {
            c -= 1;
        }
        while (c as f64).exp() < k as f64 {
            c += 1;
        }
        c
    };
    s.measure() / rat_uint(2 * k * (ceil_ln_k + 1))
}

/// A certified lower bound on the covering efficiency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub efficiency: Rat,
    pub certificate: RealCoveringCert,
    /// Human-readable remarks, e.g. why the grid bound was skipped.
    pub notes: Vec<String>,
}

/// The single-interval certificate: tile `R` with the largest interval of
/// `S` alone; efficiency `a_max / lambda(S)`. Works for any `k`.
pub fn single_interval_cert(s: &IntervalUnion) -> RealCoveringCert {
    let (lo_max, hi_max) = s
        .intervals
        .iter()
        .max_by(|x, y| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)))
        .expect("non-empty union")
        .clone();
    let a_max = &hi_max - &lo_max;
    let eff = &a_max / s.measure();
    cert(s, Method::I, a_max, vec![Rat::zero()], eff)
}

/// The closed-form two-interval certificates (methods II, III, IV when their
/// preconditions hold), mapped from the canonical `[0,a] union [a+c,a+c+b]`
/// form back to the coordinates of `s`. Needs `k = 2`.
pub fn two_interval_certs(s: &IntervalUnion) -> Result<Vec<RealCoveringCert>> {
    if s.k() != 2 {
        return Err(Error::InvalidParameter(format!(
            "two-interval methods need exactly 2 intervals, got {}",
            s.k()
        )));
    }
    let (lo1, hi1) = s.intervals[0].clone();
    let (lo2, hi2) = s.intervals[1].clone();
    let (l1, l2) = (&hi1 - &lo1, &hi2 - &lo2);
    let c = &lo2 - &hi1;
    let mut certs = Vec::new();
    if l1 >= l2 {
        // S = canonical + lo1, so canonical offsets shift by -lo1.
        for m in two_interval_methods(&l1, &l2, &c)? {
            if m.method == Method::I {
                continue; // covered by the single-interval bound
            }
            let offsets = m.offsets.iter().map(|o| mod_rat(&(o - &lo1), &m.period)).collect();
            certs.push(cert(s, m.method, m.period, offsets, m.efficiency));
        }
    } else {
        // Reflect: hi2 - S is canonical with a = l2 >= b = l1; a covering
        // of R by (hi2 - S) + o is one by S - hi2 - o.
        for m in two_interval_methods(&l2, &l1, &c)? {
            if m.method == Method::I {
                continue;
            }
            let offsets =
                m.offsets.iter().map(|o| mod_rat(&(-(&hi2 + o)), &m.period)).collect();
            certs.push(cert(s, m.method, m.period, offsets, m.efficiency));
        }
    }
    Ok(certs)
}

/// Best certified lower bound on `e(S)`: the maximum of the single-interval
/// bound, the two-interval methods when `k = 2`, and the grid bound at
/// spacing `delta`. The winning certificate is returned; ties go to the
/// earlier source in that order. The result is always at least `1/k`.
pub fn best_lower_bound(s: &IntervalUnion, delta: &Rat, limits: &Limits) -> Result<BoundResult> {
    let mut notes: Vec<String> = Vec::new();
    let mut candidates: Vec<RealCoveringCert> = vec![single_interval_cert(s)];

    if s.k() == 2 {
        candidates.extend(two_interval_certs(s)?);
    }

    match grid_lower_bound(s, delta, limits) {
        Ok(Some(grid_cert)) => candidates.push(grid_cert),
        Ok(None) => notes.push(format!(
            "grid bound skipped: no delta-cell of width {} fits inside S; decrease delta",
            rat_to_string(delta)
        )),
        Err(e) if e.is_resource_limit() => {
            notes.push(format!("grid bound skipped: {e}"));
        }
        Err(e) => return Err(e),
    }

    // Keep the first candidate on ties so the winning source is stable.
    let best = candidates
        .into_iter()
        .reduce(|best, cand| if cand.efficiency > best.efficiency { cand } else { best })
        .expect("at least the single-interval candidate");
    debug_assert!(best.efficiency >= rat(1, s.k() as i64));
    Ok(BoundResult { efficiency: best.efficiency.clone(), certificate: best, notes })
}

/// The grid certificate: cover `Z` optimally by the cell-index set `U`, then
/// scale that periodic covering back by `delta`. Its efficiency is exactly
/// `lambda(S') / (lambda(S) * kappa(U))`. `None` when no grid cell fits
/// inside `S`.
pub fn grid_lower_bound(
    s: &IntervalUnion,
    delta: &Rat,
    limits: &Limits,
) -> Result<Option<RealCoveringCert>> {
    let lambda = s.measure();
    let lambda = &lambda;
    let grid = grid_discretize(s, delta)?;
    let Some(u) = grid.u else {
        return Ok(None);
    };
    let covering = extract_covering(&u, limits)?;
    let density = covering_density(&u, GraphVariant::Reduced, limits)?;
    let ell = covering.period;
    let eff = &grid.lambda_prime / (lambda * &density.kappa);
    let offsets: Vec<Rat> = covering
        .offsets
        .iter()
        .map(|&o| {
            let shifted = (o as i64 - grid.first_index).rem_euclid(ell as i64);
            rat_int(shifted) * delta
        })
        .collect();
    let period = rat_uint(ell) * delta;
    Ok(Some(cert(s, Method::Grid, period, offsets, eff)))
}

/// The two canonical near-worst two-interval examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// `[0,2] union [3+eps, 4+eps]`: lengths 2 and 1, gap `1+eps`.
    ER1,
    /// `[0,1] union [1+eps, 2+eps]`: unit lengths, gap `eps`.
    ER2,
}

pub fn er1_set(eps: &Rat) -> Result<IntervalUnion> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("ER1 needs eps > 0".into()));
    }
    IntervalUnion::new(&[
        (Rat::zero(), rat(2, 1)),
        (rat(3, 1) + eps, rat(4, 1) + eps),
    ])
}

pub fn er2_set(eps: &Rat) -> Result<IntervalUnion> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("ER2 needs eps > 0".into()));
    }
    IntervalUnion::new(&[
        (Rat::zero(), Rat::one()),
        (Rat::one() + eps, rat(2, 1) + eps),
    ])
}

/// The matching upper bounds: `(2+eps)/3` for [`Example::ER1`] and
/// `(3+eps)/4` for [`Example::ER2`]. `eps = 0` is allowed and returns the
/// infimum, which no finite construction attains.
pub fn example_upper_bound(which: Example, eps: &Rat) -> Result<Rat> {
    if eps.is_negative() {
        return Err(Error::InvalidParameter("eps must be non-negative".into()));
    }
    Ok(match which {
        Example::ER1 => (rat(2, 1) + eps) / rat(3, 1),
        Example::ER2 => (rat(3, 1) + eps) / rat(4, 1),
    })
}
