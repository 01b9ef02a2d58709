//! Covering numbers for finite groups and discrete intervals.
//!
//! `tau(S, G)` is the fewest translates of `S` whose union is all of `G`,
//! for `G` a cyclic group `Z_n` or a small product of cyclic groups.
//! `tau(S, n)` is the fewest translates of `S` (placed anywhere in `Z`)
//! covering the window `{1, .., n}`. Derived quantities are exact rationals:
//! `kappa = tau * |S| / |G|` and `efficiency = 1 / kappa`.
//!
//! Three engines:
//! * greedy choice (largest fresh coverage, smallest canonical index on ties),
//!   plus the closed-form greedy recursion bound `n_{j+1} = floor(n_j (n-k)/n)`;
//! * exhaustive branch-and-bound over 128-bit coverage masks for exact `tau`
//!   in groups (bounded by `Limits::exact_group_order`);
//! * a frontier dynamic program for exact `tau(S, n)` over intervals, sharing
//!   its state encoding with the reduced frontier graph of [`crate::debruijn`].

use num::integer::Integer;
use num::{BigInt, One, ToPrimitive, Zero};

use crate::debruijn::reduced_masks;
use crate::error::Error;
use crate::limits::Limits;
use crate::rat::{rat_uint, Rat};
use crate::sets::{CyclicSet, ZSet};
use crate::Result;

/// A finite abelian group `Z_{f1} x .. x Z_{fr}`, elements addressed by a
/// canonical index: the mixed-radix encoding of the coordinate tuple with the
/// first factor most significant, so index order is lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    factors: Vec<u64>,
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Result<GroupSpec> {
        GroupSpec::product(&[n])
    }

    pub fn product(factors: &[u64]) -> Result<GroupSpec> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::InvalidParameter(
                "group factors must be a non-empty list of moduli >= 1".into(),
            ));
        }
        let mut order: u64 = 1;
        for &f in factors {
            order = order.checked_mul(f).ok_or_else(|| {
                Error::InvalidParameter("group order overflows u64".into())
            })?;
        }
        Ok(GroupSpec { factors: factors.to_vec() })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn index_to_coords(&self, mut index: u64) -> Vec<u64> {
        let mut coords = vec![0u64; self.factors.len()];
        for (i, &f) in self.factors.iter().enumerate().rev() {
            coords[i] = index % f;
            index /= f;
        }
        coords
    }

    pub fn coords_to_index(&self, coords: &[u64]) -> u64 {
        let mut index = 0u64;
        for (i, &f) in self.factors.iter().enumerate() {
            index = index * f + coords[i] % f;
        }
        index
    }

    /// Componentwise sum of two canonical indices.
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let ca = self.index_to_coords(a);
        let cb = self.index_to_coords(b);
        let sum: Vec<u64> =
            ca.iter().zip(&cb).zip(&self.factors).map(|((x, y), f)| (x + y) % f).collect();
        self.coords_to_index(&sum)
    }

    /// Componentwise difference `a - b` of two canonical indices.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let ca = self.index_to_coords(a);
        let cb = self.index_to_coords(b);
        let diff: Vec<u64> =
            ca.iter().zip(&cb).zip(&self.factors).map(|((x, y), f)| (x + f - y) % f).collect();
        self.coords_to_index(&diff)
    }
}

/// Result of a cover computation in a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub tau: u64,
    /// Translate positions as canonical indices, sorted.
    pub witness: Vec<u64>,
    /// `tau * |S| / |G|`.
    pub kappa: Rat,
    /// `1 / kappa`.
    pub efficiency: Rat,
    /// True when produced by exhaustive search, false for greedy.
    pub exact: bool,
}

/// Check `witness + S = G` by membership count.
pub fn verify_group_cover(group: &GroupSpec, s: &[u64], witness: &[u64]) -> bool {
    let order = group.order() as usize;
    let mut hit = vec![false; order];
    let mut covered = 0usize;
    for &t in witness {
        for &x in s {
            let idx = group.add(t, x) as usize;
            if !hit[idx] {
                hit[idx] = true;
                covered += 1;
            }
        }
    }
    covered == order
}

fn validate_subset(group: &GroupSpec, s: &[u64]) -> Result<Vec<u64>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let order = group.order();
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&x| x >= order) {
        return Err(Error::InvalidParameter(format!(
            "element index {bad} outside group of order {order}"
        )));
    }
    Ok(sorted)
}

fn cover_result(group: &GroupSpec, s_len: u64, tau: u64, witness: Vec<u64>, exact: bool) -> CoverResult {
    let kappa = rat_uint(tau * s_len) / rat_uint(group.order());
    let efficiency = kappa.recip();
    CoverResult { tau, witness, kappa, efficiency, exact }
}

/// Greedy covering: repeatedly pick the translate covering the most fresh
/// elements, breaking ties towards the smallest canonical index.
///
/// Fresh counts are maintained incrementally (when element `e` gets covered,
/// only the translates `e - s` lose a fresh element), so the whole run costs
/// `O((tau + k) * n)` group operations.
pub fn greedy_cover(group: &GroupSpec, s: &[u64]) -> Result<CoverResult> {
    let s = validate_subset(group, s)?;
    let order = group.order() as usize;
    let k = s.len();

    let mut covered = vec![false; order];
    let mut fresh = vec![k as u32; order];
    let mut remaining = order;
    let mut witness = Vec::new();
    while remaining > 0 {
        let (best_t, best_fresh) = fresh
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(t, &f)| (t as u64, f))
            .unwrap();
        debug_assert!(best_fresh > 0);
        for &x in &s {
            let e = group.add(best_t, x);
            if !covered[e as usize] {
                covered[e as usize] = true;
                remaining -= 1;
                for &y in &s {
                    fresh[group.sub(e, y) as usize] -= 1;
                }
            }
        }
        witness.push(best_t);
    }
    witness.sort_unstable();
    let tau = witness.len() as u64;
    Ok(cover_result(group, s.len() as u64, tau, witness, false))
}

pub fn greedy_cover_cyclic(s: &CyclicSet) -> Result<CoverResult> {
    greedy_cover(&GroupSpec::cyclic(s.modulus())?, s.residues())
}

/// Closed-form bound on the greedy covering number of any `k`-element subset
/// of a group of order `n`: iterate `n_{j+1} = floor(n_j * (n-k) / n)` from
/// `n_0 = n` and return the first `j` with `n_j = 0`. Always at most
/// `(n/k) * H_k`.
pub fn greedy_bound(n: u64, k: u64) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let mut remaining = n as u128;
    let mut steps = 0u64;
    while remaining > 0 {
        remaining = remaining * (n - k) as u128 / n as u128;
        steps += 1;
    }
    Ok(steps)
}

/// Logarithmic estimates that bound the greedy recursion: with
/// `r = |ln(1 - k/n)|`, the recursion terminates within `ln(n)/r + 1` steps,
/// and within `ln(k)/r + n/k + 1` steps. Returned as `(by_n, by_k)` floats
/// for display; the exact recursion is [`greedy_bound`].
pub fn greedy_bound_estimates(n: u64, k: u64) -> Result<(f64, f64)> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let (nf, kf) = (n as f64, k as f64);
    let rate = (1.0 - kf / nf).ln().abs(); // +inf when k == n
    let by_n = nf.ln() / rate + 1.0;
    let by_k = kf.ln() / rate + nf / kf + 1.0;
    Ok((by_n, by_k))
}

/// Exact `tau(S, G)` by branch-and-bound on 128-bit coverage masks.
///
/// Branches on the lowest uncovered element; candidate translates covering it
/// are tried in order of decreasing fresh coverage (ties towards the smaller
/// index), after dropping candidates whose fresh coverage is contained in an
/// earlier candidate's. Prunes with `chosen + bound >= best` where the bound
/// is the larger of the counting bound `ceil(uncovered / k)` and a greedy
/// packing bound: uncovered elements whose candidate translates are pairwise
/// disjoint each force a distinct translate. A configured node budget turns
/// exhaustion into [`Error::NodeBudgetExhausted`].
pub fn exact_cover(group: &GroupSpec, s: &[u64], limits: &Limits) -> Result<CoverResult> {
    let s = validate_subset(group, s)?;
    let order = group.order();
    let cap = limits.exact_group_order.min(128);
    if order > cap {
        return Err(Error::ExactSearchLimit { order, limit: cap });
    }
    let order = order as usize;
    let k = s.len() as u64;

    let mut masks = vec![0u128; order];
    for t in 0..order as u64 {
        let mut m = 0u128;
        for &x in &s {
            m |= 1u128 << group.add(t, x);
        }
        masks[t as usize] = m;
    }
    let full: u128 = if order == 128 { !0 } else { (1u128 << order) - 1 };
    // cand_masks[e]: translate indices whose mask contains element e.
    let mut cand_masks = vec![0u128; order];
    for (t, &m) in masks.iter().enumerate() {
        let mut rest = m;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            cand_masks[e] |= 1u128 << t;
            rest &= rest - 1;
        }
    }

    struct Search<'a> {
        masks: &'a [u128],
        cand_masks: &'a [u128],
        k: u64,
        full: u128,
        best: u64,
        best_witness: Vec<u32>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn lower_bound(&self, covered: u128) -> u64 {
            let uncovered = self.full & !covered;
            let count = (uncovered.count_ones() as u64 + self.k - 1) / self.k;
            let mut taken = 0u128;
            let mut packing = 0u64;
            let mut rest = uncovered;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let cands = self.cand_masks[e];
                if cands & taken == 0 {
                    packing += 1;
                    taken |= cands;
                }
            }
            count.max(packing)
        }

        fn dfs(&mut self, covered: u128, chosen: &mut Vec<u32>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::NodeBudgetExhausted { budget: self.budget });
            }
            if covered == self.full {
                if (chosen.len() as u64) < self.best {
                    self.best = chosen.len() as u64;
                    self.best_witness = chosen.clone();
                }
                return Ok(());
            }
            if chosen.len() as u64 + self.lower_bound(covered) >= self.best {
                return Ok(());
            }
            let pivot = (self.full & !covered).trailing_zeros() as usize;
            let mut candidates: Vec<(u128, u32)> = Vec::new();
            let mut rest = self.cand_masks[pivot];
            while rest != 0 {
                let t = rest.trailing_zeros();
                rest &= rest - 1;
                candidates.push((self.masks[t as usize] & !covered, t));
            }
            candidates
                .sort_unstable_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.1.cmp(&b.1)));
            // Drop candidates dominated by an earlier one: completing through
            // the dominating translate covers at least as much.
            let mut kept: Vec<(u128, u32)> = Vec::with_capacity(candidates.len());
            'cand: for (fresh, t) in candidates {
                for &(earlier, _) in &kept {
                    if fresh & !earlier == 0 {
                        continue 'cand;
                    }
                }
                kept.push((fresh, t));
            }
            for (fresh, t) in kept {
                chosen.push(t);
                let result = self.dfs(covered | fresh, chosen);
                chosen.pop();
                result?;
            }
            Ok(())
        }
    }

    let greedy = greedy_cover(group, &s)?;
    let mut search = Search {
        masks: &masks,
        cand_masks: &cand_masks,
        k,
        full,
        best: greedy.tau,
        best_witness: greedy.witness.iter().map(|&t| t as u32).collect(),
        nodes: 0,
        budget: limits.node_budget.unwrap_or(u64::MAX),
    };
    if greedy.tau == search.lower_bound(0) {
        // Greedy met a lower bound, so it is optimal.
        return Ok(cover_result(group, k, greedy.tau, greedy.witness, true));
    }
    search.dfs(0, &mut Vec::new())?;

    let mut witness: Vec<u64> = search.best_witness.iter().map(|&t| t as u64).collect();
    witness.sort_unstable();
    debug_assert!(verify_group_cover(group, &s, &witness));
    Ok(cover_result(group, k, search.best, witness, true))
}

pub fn exact_cover_cyclic(s: &CyclicSet, limits: &Limits) -> Result<CoverResult> {
    exact_cover(&GroupSpec::cyclic(s.modulus())?, s.residues(), limits)
}

/// Result of covering the discrete window `{1, .., n}` with translates of a
/// normalized set placed anywhere in `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCoverResult {
    pub tau: u64,
    /// Translate positions (possibly negative), sorted.
    pub witness: Vec<i64>,
    /// `tau * |S| / n`.
    pub kappa: Rat,
    pub efficiency: Rat,
}

/// Exact `tau(S, n)`: fewest translates of `S` covering `{1, .., n}`.
///
/// Frontier DP over positions `1 - diam(S) .. n`. The state is the covered
/// pattern of the next `diam(S)` positions (same encoding as the reduced
/// frontier graph); a step either places a translate at the current position
/// (cost 1) or skips it, which inside `[1, n]` requires the position to be
/// covered already.
pub fn exact_cover_interval(s: &ZSet, n: u64, limits: &Limits) -> Result<IntervalCoverResult> {
    if n == 0 {
        return Err(Error::InvalidParameter("window length n must be >= 1".into()));
    }
    let diam = s.diameter();
    if diam > limits.state_width || diam >= 31 {
        return Err(Error::StateWidthLimit { diam, limit: limits.state_width.min(30) });
    }
    let (width, srel) = reduced_masks(s);

    #[derive(Clone, Copy)]
    struct Node {
        cost: u32,
        parent: u32,
        placed: bool,
    }

    use std::collections::BTreeMap;
    let first_pos = 1 - width as i64;
    let mut layers: Vec<BTreeMap<u32, Node>> = Vec::with_capacity((n as usize) + width as usize + 1);
    let mut start = BTreeMap::new();
    start.insert(0u32, Node { cost: 0, parent: 0, placed: false });
    layers.push(start);

    for pos in first_pos..=(n as i64) {
        let prev = layers.last().unwrap();
        let mut next: BTreeMap<u32, Node> = BTreeMap::new();
        let mut offer = |state: u32, node: Node| {
            // First writer wins on equal cost; states are visited in
            // ascending order and skip-edges before place-edges, so the
            // choice is deterministic.
            match next.get(&state) {
                Some(existing) if existing.cost <= node.cost => {}
                _ => {
                    next.insert(state, node);
                }
            }
        };
        for (&b, node) in prev.iter() {
            let in_window = pos >= 1; // pos <= n always holds here
            if !in_window || b & 1 != 0 {
                offer(b >> 1, Node { cost: node.cost, parent: b, placed: false });
            }
            offer((b >> 1) | srel, Node { cost: node.cost + 1, parent: b, placed: true });
        }
        layers.push(next);
    }

    let last = layers.last().unwrap();
    let final_state = *last
        .iter()
        .min_by_key(|entry| (entry.1.cost, *entry.0))
        .expect("frontier DP lost all states (bug)")
        .0;

    // Backtrack through the layers, collecting placed positions. Layer
    // `i + 1` holds the states after deciding position `first_pos + i`.
    let mut witness = Vec::new();
    let mut state = final_state;
    for layer_idx in (1..layers.len()).rev() {
        let node = layers[layer_idx][&state];
        if node.placed {
            witness.push(first_pos + (layer_idx as i64 - 1));
        }
        state = node.parent;
    }
    witness.reverse();

    let tau = last[&final_state].cost as u64;
    debug_assert_eq!(tau, witness.len() as u64);
    let kappa = rat_uint(tau * s.size()) / rat_uint(n);
    let efficiency = kappa.recip();
    Ok(IntervalCoverResult { tau, witness, kappa, efficiency })
}

/// Check that the translates at `witness` cover every integer in `{1, .., n}`.
pub fn verify_interval_cover(s: &ZSet, n: u64, witness: &[i64]) -> bool {
    let mut covered = vec![false; n as usize];
    for &t in witness {
        for &e in s.elements() {
            let p = t + e as i64;
            if (1..=n as i64).contains(&p) {
                covered[(p - 1) as usize] = true;
            }
        }
    }
    covered.iter().all(|&c| c)
}

/// Exact product cover with the bounds that sandwich it: componentwise exact
/// covers give `tau <= tau_1 * tau_2`, and the multiplicity inequality
/// `kappa(S1 x S2) >= max(kappa_1, kappa_2)` gives the lower bound.
#[derive(Debug, Clone)]
pub struct ProductCoverResult {
    pub group: GroupSpec,
    pub result: CoverResult,
    pub factor1: CoverResult,
    pub factor2: CoverResult,
    pub tau_lower: u64,
    pub tau_upper: u64,
}

pub fn product_cover(
    s1: &CyclicSet,
    s2: &CyclicSet,
    limits: &Limits,
) -> Result<ProductCoverResult> {
    let (n1, n2) = (s1.modulus(), s2.modulus());
    let group = GroupSpec::product(&[n1, n2])?;
    let indices: Vec<u64> = s1
        .residues()
        .iter()
        .flat_map(|&a| s2.residues().iter().map(move |&b| a * n2 + b))
        .collect();

    let factor1 = exact_cover_cyclic(s1, limits)?;
    let factor2 = exact_cover_cyclic(s2, limits)?;
    let result = exact_cover(&group, &indices, limits)?;

    let kappa_low = factor1.kappa.clone().max(factor2.kappa.clone());
    let order = rat_uint(group.order());
    let size = rat_uint(indices.len() as u64);
    let tau_lower = ceil_rat(&(kappa_low * order / size));
    let tau_upper = factor1.tau * factor2.tau;
    debug_assert!(tau_lower <= result.tau && result.tau <= tau_upper);

    Ok(ProductCoverResult { group, result, factor1, factor2, tau_lower, tau_upper })
}

fn ceil_rat(r: &Rat) -> u64 {
    let (num, den) = (r.numer(), r.denom());
    let (q, rem) = num.div_rem(den);
    let q = if rem.is_zero() { q } else { q + BigInt::one() };
    q.to_u64().expect("bound does not fit u64")
}
