/// Resource caps for the exact algorithms.
///
/// The defaults are sized for interactive desk-scale runs; every cap is
/// configuration, not a hard-wired constant, and the CLI lets the
/// `COVER_EXACT_LIMIT` environment variable override the exact-search cap.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest group order accepted by the exhaustive branch-and-bound cover
    /// search (bitsets are machine words, so this may not exceed 128).
    pub exact_group_order: u64,
    /// Largest set diameter accepted by the frontier graph / frontier DP
    /// constructions (states are diameter-wide bitmasks).
    pub state_width: u64,
    /// Node budget for a single branch-and-bound search; `None` means
    /// unbounded. The random lab sets this to censor runaway trials.
    pub node_budget: Option<u64>,
    /// Largest `s_max` accepted by the all-subsets period sweep.
    pub sweep_all_sets: u64,
    /// Largest `s_max` accepted by the fixed-size period sweep (for k <= 4).
    pub sweep_fixed_size: u64,
    /// Largest number of candidate sets an efficiency sweep may enumerate.
    pub enumeration_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact_group_order: 128,
            state_width: 24,
            node_budget: None,
            sweep_all_sets: 10,
            sweep_fixed_size: 13,
            enumeration_budget: 2_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with `COVER_EXACT_LIMIT` (if set and parseable) overriding
    /// the exact-search cap. Values above 128 are clamped to 128: the search
    /// uses 128-bit masks.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(text) = std::env::var("COVER_EXACT_LIMIT") {
            if let Ok(value) = text.trim().parse::<u64>() {
                limits.exact_group_order = value.min(128);
            }
        }
        limits
    }
}
