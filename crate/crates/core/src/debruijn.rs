//! Covering density and minimal period over `Z`, via frontier graphs.
//!
//! Fix a normalized set `S` with diameter `s`. Scanning `Z` left to right and
//! deciding at each position `m` whether `m` is a translate position, the only
//! information that matters for the future is a width-`s` window:
//!
//! * **Full variant** (`G_S`, a de Bruijn-style graph): the window records
//!   which of the last `s` positions are translate positions. Stepping to
//!   `m+1` shifts the window; choosing `m+1` as a translate position sets the
//!   newest slot (edge weight 1), not choosing it leaves the slot empty (edge
//!   weight 0) and is allowed only if `m+1` is already covered by a translate
//!   in the window.
//! * **Reduced variant** (`G_S'`): the window records which of the next `s`
//!   positions are already covered by translates chosen so far. Weight-0 edges
//!   require the next position to be covered; weight-1 edges are always
//!   allowed (the set is normalized, so a translate covers its own position)
//!   and paint the covered pattern of `S` onto the window.
//!
//! Both windows are exact functions of the last `s` decisions, so bi-infinite
//! walks correspond exactly to coverings of `Z` by translates of `S`, with
//! edge-weight density equal to translate density. Hence:
//!
//! * the covering density `nu(S)` is the minimum cycle mean, computed exactly
//!   by Karp's algorithm on the subgraph reachable from the all-ones window
//!   (every cycle is reachable from it: replaying a cycle's edge labels from
//!   the all-ones state reproduces the cycle state within `s` steps, because
//!   a window depends only on the last `s` labels and shrinks monotonically);
//! * with `nu = p/q`, reweighting edges by `w' = q*w - p` makes every cycle
//!   non-negative and optimal cycles zero. Shortest-path potentials under `w'`
//!   expose the tight subgraph (reduced cost 0), whose directed girth is the
//!   minimal period `ell(S)` of an optimal periodic covering; any shortest
//!   tight cycle yields an explicit witness covering.

use num::{One, Signed};

use crate::error::Error;
use crate::limits::Limits;
use crate::rat::{rat_uint, Rat};
use crate::sets::ZSet;
use crate::Result;

/// Which frontier graph to run on. `Reduced` is the default everywhere; the
/// full variant exists for cross-validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphVariant {
    Full,
    Reduced,
}

/// Exact covering density of `S` in `Z` with its derived quantities:
/// `kappa = nu * |S|` and `efficiency = 1 / kappa`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityResult {
    pub nu: Rat,
    pub kappa: Rat,
    pub efficiency: Rat,
}

/// A periodic set of translate positions: `T = offsets + period * Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCovering {
    pub period: u64,
    /// Distinct offsets in `[0, period)`, sorted.
    pub offsets: Vec<u64>,
}

impl PeriodicCovering {
    /// Translate density `|offsets| / period`.
    pub fn density(&self) -> Rat {
        rat_uint(self.offsets.len() as u64) / rat_uint(self.period)
    }

    /// Rotate the offsets to the lexicographically smallest equivalent form.
    /// Rotations describe the same covering up to translation.
    pub fn canonicalize(&mut self) {
        let p = self.period;
        let mut best: Option<Vec<u64>> = None;
        for r in 0..p {
            let mut rotated: Vec<u64> =
                self.offsets.iter().map(|&o| (o + p - r) % p).collect();
            rotated.sort_unstable();
            if best.as_ref().map_or(true, |b| rotated < *b) {
                best = Some(rotated);
            }
        }
        if let Some(b) = best {
            self.offsets = b;
        }
    }
}

/// Density plus minimal-period data for one set.
#[derive(Debug, Clone)]
pub struct PeriodAnalysis {
    pub nu: Rat,
    pub kappa: Rat,
    pub efficiency: Rat,
    /// Minimal period of an optimal periodic covering.
    pub ell: u64,
    /// A witness covering with `period == ell` and density exactly `nu`.
    pub covering: PeriodicCovering,
}

/// Outcome of checking a claimed periodic covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub covers: bool,
    /// `|offsets| * |S| / period`: the average cover count of the claimed
    /// covering (meaningful whether or not it actually covers).
    pub multiplicity: Rat,
}

const NONE: u32 = u32::MAX;

/// Explicit frontier graph over the states reachable from the all-ones window.
/// `states[i]` is the bitmask of state `i`; `succ0`/`succ1` are successor
/// state indices (`NONE` when the weight-0 edge is inadmissible).
struct FrontierGraph {
    len: usize,
    succ0: Vec<u32>,
    succ1: Vec<u32>,
}

fn build_graph(s: &ZSet, variant: GraphVariant) -> FrontierGraph {
    let width = s.diameter() as u32;
    // Interior-coverage mask used by the weight-1 edge of the reduced graph:
    // bit (sigma - 1) for each sigma in S with 1 <= sigma <= width.
    // Admissibility mask for the full graph's weight-0 edge: position m+1 is
    // covered by the translate in window slot j iff width+1-j lies in S, i.e.
    // bit (width - sigma) for each such sigma.
    let mut srel: u32 = 0;
    let mut cover: u32 = 0;
    for &sigma in s.elements() {
        if sigma >= 1 {
            srel |= 1u32 << (sigma as u32 - 1);
            cover |= 1u32 << (width - sigma as u32);
        }
    }
    let top: u32 = if width == 0 { 0 } else { 1 << (width - 1) };

    let start: u32 = if width == 0 { 0 } else { (1u32 << width) - 1 };
    let mut index_of: Vec<u32> = vec![NONE; 1usize << width];
    let mut states: Vec<u32> = Vec::new();
    index_of[start as usize] = 0;
    states.push(start);

    let mut succ0: Vec<u32> = Vec::new();
    let mut succ1: Vec<u32> = Vec::new();
    let mut head = 0usize;
    while head < states.len() {
        let a = states[head];
        head += 1;
        let (s0, s1) = match variant {
            GraphVariant::Full => {
                let s0 = if a & cover != 0 { Some(a >> 1) } else { None };
                (s0, (a >> 1) | top)
            }
            GraphVariant::Reduced => {
                let s0 = if a & 1 != 0 { Some(a >> 1) } else { None };
                (s0, (a >> 1) | srel)
            }
        };
        let mut intern = |state: u32| -> u32 {
            let slot = &mut index_of[state as usize];
            if *slot == NONE {
                *slot = states.len() as u32;
                states.push(state);
            }
            *slot
        };
        succ1.push(intern(s1));
        succ0.push(match s0 {
            Some(state) => intern(state),
            None => NONE,
        });
    }
    FrontierGraph { len: states.len(), succ0, succ1 }
}

const INF: i32 = i32::MAX / 2;

/// Karp's minimum cycle mean, exactly, as a reduced fraction `p/q`.
///
/// `D_k(v)` is the minimum weight of a length-`k` walk from the start state
/// to `v`; the minimum cycle mean is `min_v max_k (D_n(v) - D_k(v)) / (n-k)`.
/// Runs in two passes with rolling rows to keep memory at `O(n)`.
fn karp_min_cycle_mean(g: &FrontierGraph) -> (i64, i64) {
    let n = g.len;
    let relax_row = |cur: &[i32], next: &mut [i32]| {
        next.fill(INF);
        for u in 0..n {
            let d = cur[u];
            if d >= INF {
                continue;
            }
            let v1 = g.succ1[u] as usize;
            if d + 1 < next[v1] {
                next[v1] = d + 1;
            }
            let v0 = g.succ0[u];
            if v0 != NONE {
                let v0 = v0 as usize;
                if d < next[v0] {
                    next[v0] = d;
                }
            }
        }
    };

    // Pass 1: D_n.
    let mut cur = vec![INF; n];
    let mut next = vec![INF; n];
    cur[0] = 0;
    for _ in 0..n {
        relax_row(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    let dn = cur.clone();

    // Pass 2: recompute D_0..D_{n-1}, folding max_k per vertex on the fly.
    let mut best_num = vec![0i64; n];
    let mut best_den = vec![0i64; n]; // 0 = no finite k seen yet
    cur.fill(INF);
    cur[0] = 0;
    for k in 0..n {
        for v in 0..n {
            if dn[v] >= INF || cur[v] >= INF {
                continue;
            }
            let num = (dn[v] - cur[v]) as i64;
            let den = (n - k) as i64;
            if best_den[v] == 0 || num * best_den[v] > best_num[v] * den {
                best_num[v] = num;
                best_den[v] = den;
            }
        }
        relax_row(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }

    let mut min_num = 0i64;
    let mut min_den = 0i64;
    for v in 0..n {
        if dn[v] >= INF || best_den[v] == 0 {
            continue;
        }
        if min_den == 0 || best_num[v] * min_den < min_num * best_den[v] {
            min_num = best_num[v];
            min_den = best_den[v];
        }
    }
    // Every state has a weight-1 out-edge, so walks of every length exist and
    // at least one vertex qualifies.
    assert!(min_den > 0, "no cycle found (impossible: weight-1 edges always exist)");
    let g_ = gcd(min_num, min_den);
    (min_num / g_, min_den / g_)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Shortest tight cycle after reweighting by `w' = q*w - p`.
/// Returns the cycle length and the per-edge weights (0/1) around the cycle.
fn tight_girth(g: &FrontierGraph, p: i64, q: i64) -> (u64, Vec<u8>) {
    let n = g.len;
    let w0: i64 = -p;
    let w1: i64 = q - p;

    // Shortest-path potentials from the start state under w'. No negative
    // cycles exist (every cycle mean is >= p/q), so in-place relaxation
    // reaches the unique fixpoint; BFS discovery order makes it converge in
    // few sweeps.
    const BIG: i64 = i64::MAX / 4;
    let mut dist = vec![BIG; n];
    dist[0] = 0;
    let mut sweeps = 0usize;
    loop {
        let mut changed = false;
        for u in 0..n {
            let d = dist[u];
            if d >= BIG {
                continue;
            }
            let v1 = g.succ1[u] as usize;
            if d + w1 < dist[v1] {
                dist[v1] = d + w1;
                changed = true;
            }
            let v0 = g.succ0[u];
            if v0 != NONE {
                let v0 = v0 as usize;
                if d + w0 < dist[v0] {
                    dist[v0] = d + w0;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        sweeps += 1;
        assert!(sweeps <= n + 1, "negative cycle under reduced weights (bug)");
    }

    // Tight edges: reduced cost w' + dist[u] - dist[v] == 0. A cycle has mean
    // p/q iff all its edges are tight.
    let tight0: Vec<bool> = (0..n)
        .map(|u| g.succ0[u] != NONE && dist[u] + w0 == dist[g.succ0[u] as usize])
        .collect();
    let tight1: Vec<bool> =
        (0..n).map(|u| dist[u] + w1 == dist[g.succ1[u] as usize]).collect();

    // Directed girth of the tight subgraph by BFS from every vertex, pruned
    // by the best length found so far. Ties resolve to the first (smallest
    // BFS-index) witness, keeping the result deterministic.
    let mut best_len = u32::MAX;
    let mut best_cycle: Vec<u32> = Vec::new();
    let mut seen = vec![u32::MAX; n];
    let mut dist_b = vec![0u32; n];
    let mut parent = vec![NONE; n];
    let mut queue: Vec<u32> = Vec::new();

    for v in 0..n as u32 {
        let vu = v as usize;
        if !tight0[vu] && !tight1[vu] {
            continue;
        }
        queue.clear();
        queue.push(v);
        seen[vu] = v;
        dist_b[vu] = 0;
        parent[vu] = NONE;
        let mut head = 0usize;
        'bfs: while head < queue.len() {
            let u = queue[head];
            head += 1;
            let uu = u as usize;
            let du = dist_b[uu];
            for (w, is_tight) in [(g.succ0[uu], tight0[uu]), (g.succ1[uu], tight1[uu])] {
                if !is_tight || w == NONE {
                    continue;
                }
                if w == v {
                    // Closing edge: cycle of length du + 1.
                    if du + 1 < best_len {
                        best_len = du + 1;
                        let mut path = Vec::with_capacity((du + 1) as usize);
                        let mut x = u;
                        while x != NONE {
                            path.push(x);
                            x = parent[x as usize];
                        }
                        path.reverse(); // v .. u
                        best_cycle = path;
                    }
                    break 'bfs; // BFS order: no shorter cycle through v remains
                }
                let wu = w as usize;
                if seen[wu] != v && du + 2 < best_len {
                    seen[wu] = v;
                    dist_b[wu] = du + 1;
                    parent[wu] = u;
                    queue.push(w);
                }
            }
        }
    }
    assert!(best_len != u32::MAX, "tight subgraph has no cycle (bug)");

    // Edge weights around the cycle. Only one of two parallel tight edges can
    // exist (-p != q-p since q >= 1), so the choice is unambiguous.
    let len = best_cycle.len();
    let mut weights = Vec::with_capacity(len);
    for i in 0..len {
        let x = best_cycle[i] as usize;
        let y = best_cycle[(i + 1) % len];
        if tight0[x] && g.succ0[x] == y {
            weights.push(0u8);
        } else if tight1[x] && g.succ1[x] == y {
            weights.push(1u8);
        } else {
            unreachable!("cycle edge is not tight (bug)");
        }
    }
    (len as u64, weights)
}

fn check_width(s: &ZSet, limits: &Limits) -> Result<()> {
    let diam = s.diameter();
    if diam > limits.state_width || diam >= 31 {
        return Err(Error::StateWidthLimit { diam, limit: limits.state_width.min(30) });
    }
    Ok(())
}

fn density_from_fraction(s: &ZSet, p: i64, q: i64) -> DensityResult {
    let nu = Rat::new(p.into(), q.into());
    let kappa = &nu * rat_uint(s.size());
    let efficiency = kappa.recip();
    debug_assert!(nu <= Rat::one() && nu.is_positive());
    debug_assert!(kappa >= Rat::one());
    DensityResult { nu, kappa, efficiency }
}

/// Exact covering density `nu(S)` of `Z` by translates of `S`, with
/// `kappa(S) = nu * |S|` and `e(S) = 1/kappa`.
pub fn covering_density(
    s: &ZSet,
    variant: GraphVariant,
    limits: &Limits,
) -> Result<DensityResult> {
    check_width(s, limits)?;
    let graph = build_graph(s, variant);
    let (p, q) = karp_min_cycle_mean(&graph);
    Ok(density_from_fraction(s, p, q))
}

/// Density plus the minimal period `ell(S)` of an optimal periodic covering
/// and an explicit witness covering of that period.
pub fn minimal_period(
    s: &ZSet,
    variant: GraphVariant,
    limits: &Limits,
) -> Result<PeriodAnalysis> {
    check_width(s, limits)?;
    let graph = build_graph(s, variant);
    let (p, q) = karp_min_cycle_mean(&graph);
    let (ell, weights) = tight_girth(&graph, p, q);

    // Around the witness cycle, weight-1 edges are exactly the translate
    // positions of one period.
    let offsets: Vec<u64> = weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w == 1)
        .map(|(i, _)| i as u64)
        .collect();
    let covering = PeriodicCovering { period: ell, offsets };

    // Internal consistency: the cycle is tight, so its density is exactly nu.
    assert_eq!(
        covering.offsets.len() as i64 * q,
        p * ell as i64,
        "witness cycle density disagrees with nu (bug)"
    );
    let outcome = verify_covering(s, covering.period, &covering.offsets)?;
    assert!(outcome.covers, "extracted covering fails verification (bug)");

    let density = density_from_fraction(s, p, q);
    Ok(PeriodAnalysis {
        nu: density.nu,
        kappa: density.kappa,
        efficiency: density.efficiency,
        ell,
        covering,
    })
}

/// Optimal periodic covering witness (reduced variant), offsets canonicalized
/// to the lexicographically least rotation.
pub fn extract_covering(s: &ZSet, limits: &Limits) -> Result<PeriodicCovering> {
    let mut covering = minimal_period(s, GraphVariant::Reduced, limits)?.covering;
    covering.canonicalize();
    Ok(covering)
}

/// Check whether `offsets + period*Z + S = Z`, and report the multiplicity
/// `|offsets| * |S| / period`. Offsets are reduced mod `period` and
/// deduplicated first.
pub fn verify_covering(s: &ZSet, period: u64, offsets: &[u64]) -> Result<VerifyOutcome> {
    if period == 0 {
        return Err(Error::InvalidParameter("period must be >= 1".into()));
    }
    if offsets.is_empty() {
        return Err(Error::InvalidParameter("offsets must be non-empty".into()));
    }
    let mut reduced: Vec<u64> = offsets.iter().map(|&o| o % period).collect();
    reduced.sort_unstable();
    reduced.dedup();

    let mut counts = vec![0u64; period as usize];
    for &o in &reduced {
        for &sigma in s.elements() {
            counts[((o + sigma) % period) as usize] += 1;
        }
    }
    let covers = counts.iter().all(|&c| c > 0);
    let multiplicity =
        rat_uint(reduced.len() as u64 * s.size()) / rat_uint(period);
    Ok(VerifyOutcome { covers, multiplicity })
}

/// Reduced-graph step masks shared with the frontier DP over intervals:
/// (width, interior coverage mask).
pub(crate) fn reduced_masks(s: &ZSet) -> (u32, u32) {
    let width = s.diameter() as u32;
    let mut srel = 0u32;
    for &sigma in s.elements() {
        if sigma >= 1 {
            srel |= 1 << (sigma - 1);
        }
    }
    (width, srel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn zset(text: &str) -> ZSet {
        ZSet::parse(text).unwrap()
    }

    fn density(text: &str) -> DensityResult {
        covering_density(&zset(text), GraphVariant::Reduced, &Limits::default()).unwrap()
    }

    fn analysis(text: &str) -> PeriodAnalysis {
        minimal_period(&zset(text), GraphVariant::Reduced, &Limits::default()).unwrap()
    }

    #[test]
    fn density_examples() {
        let d = density("0,1,3");
        assert_eq!(d.nu, rat(2, 5));
        assert_eq!(d.kappa, rat(6, 5));
        assert_eq!(d.efficiency, rat(5, 6));

        let d = density("0,1");
        assert_eq!(d.nu, rat(1, 2));
        assert_eq!(d.kappa, rat(1, 1));
        assert_eq!(d.efficiency, rat(1, 1));

        // kappa = 4 * 1/3, so e = 3/4.
        let d = density("0,1,2,4");
        assert_eq!(d.nu, rat(1, 3));
        assert_eq!(d.efficiency, rat(3, 4));
    }

    #[test]
    fn singleton_is_trivial() {
        let a = analysis("0");
        assert_eq!(a.nu, rat(1, 1));
        assert_eq!(a.ell, 1);
        assert_eq!(a.covering.offsets, vec![0]);
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(analysis("0,1,3").ell, 5);
        assert_eq!(analysis("0,2").ell, 4);
        assert_eq!(analysis("0,1,4,6").ell, 13);
        assert_eq!(analysis("0,1").ell, 2);
    }

    #[test]
    fn extract_covering_examples() {
        let c = extract_covering(&zset("0,2"), &Limits::default()).unwrap();
        assert_eq!(c.period, 4);
        assert_eq!(c.offsets, vec![0, 1]);
        assert_eq!(c.density(), rat(1, 2));

        let c = extract_covering(&zset("0,1,3"), &Limits::default()).unwrap();
        assert_eq!(c.period, 5);
        assert_eq!(c.density(), rat(2, 5));
        assert!(verify_covering(&zset("0,1,3"), c.period, &c.offsets).unwrap().covers);
    }

    #[test]
    fn verify_covering_examples() {
        let good = verify_covering(&zset("0,1,3"), 5, &[0, 1]).unwrap();
        assert!(good.covers);
        assert_eq!(good.multiplicity, rat(6, 5));

        // 0+{0,1,3} and 2+{0,1,3} miss residue 4 mod 5.
        let bad = verify_covering(&zset("0,1,3"), 5, &[0, 2]).unwrap();
        assert!(!bad.covers);

        assert!(verify_covering(&zset("0,1"), 0, &[0]).is_err());
        assert!(verify_covering(&zset("0,1"), 3, &[]).is_err());
    }

    #[test]
    fn two_element_sets_tile() {
        // {0, a} tiles Z for every a, so the efficiency is 1.
        for a in 1..=8 {
            let s = ZSet::from_normalized(vec![0, a]);
            let d = covering_density(&s, GraphVariant::Reduced, &Limits::default()).unwrap();
            assert_eq!(d.efficiency, rat(1, 1), "a = {a}");
        }
    }

    #[test]
    fn variants_agree_small() {
        // Exhaustive agreement for diameters <= 8 (the acceptance suite goes
        // to 12); checks nu and ell.
        let limits = Limits::default();
        for diam in 0u64..=8 {
            let interior = if diam == 0 { 0 } else { diam - 1 };
            for mask in 0u64..(1 << interior) {
                let mut elems = vec![0u64];
                for b in 0..interior {
                    if mask & (1 << b) != 0 {
                        elems.push(b + 1);
                    }
                }
                if diam > 0 {
                    elems.push(diam);
                }
                let s = ZSet::from_normalized(elems);
                let full = minimal_period(&s, GraphVariant::Full, &limits).unwrap();
                let red = minimal_period(&s, GraphVariant::Reduced, &limits).unwrap();
                assert_eq!(full.nu, red.nu, "nu mismatch for {s}");
                assert_eq!(full.ell, red.ell, "ell mismatch for {s}");
            }
        }
    }

    #[test]
    fn reflection_and_dilation_invariance() {
        for text in ["0,1,3", "0,2,7,10", "0,1,4,6", "0,1,2,4"] {
            let s = zset(text);
            let d = covering_density(&s, GraphVariant::Reduced, &Limits::default()).unwrap();
            let r =
                covering_density(&s.reflect(), GraphVariant::Reduced, &Limits::default())
                    .unwrap();
            assert_eq!(d.nu, r.nu, "reflection changed nu of {s}");
            for c in [2u64, 3] {
                if s.diameter() * c > Limits::default().state_width {
                    continue;
                }
                let dd = covering_density(
                    &s.dilate(c).unwrap(),
                    GraphVariant::Reduced,
                    &Limits::default(),
                )
                .unwrap();
                assert_eq!(d.nu, dd.nu, "dilation by {c} changed nu of {s}");
            }
        }
    }

    #[test]
    fn width_limit_enforced() {
        let s = ZSet::from_normalized(vec![0, 30]);
        let err = covering_density(&s, GraphVariant::Reduced, &Limits::default());
        assert!(matches!(err, Err(Error::StateWidthLimit { .. })));
        assert!(err.err().unwrap().is_resource_limit());
    }

    #[test]
    fn witness_matches_reported_density() {
        for text in ["0,1,3", "0,2", "0,1,4,6", "0,1,3,8", "0,4"] {
            let a = analysis(text);
            assert_eq!(a.covering.period, a.ell);
            assert_eq!(a.covering.density(), a.nu, "density mismatch for {text}");
            let check =
                verify_covering(&zset(text), a.covering.period, &a.covering.offsets)
                    .unwrap();
            assert!(check.covers);
            assert_eq!(check.multiplicity, a.kappa);
        }
    }
}
