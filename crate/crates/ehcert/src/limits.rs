//! Declared budgets for the exponential searches. All ceilings are
//! configuration, not hard-coded into the algorithms.

#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Exact alpha/omega solvers refuse graphs larger than this.
    pub alpha_omega_ceiling: usize,
    /// `ind_count` refuses patterns with more vertices than this.
    pub count_pattern_ceiling: usize,
    /// `ind_count` refuses hosts with more vertices than this.
    pub count_host_ceiling: usize,
    /// `find_copy` node budget; exceeding it yields a distinguished
    /// "unknown" error, never a false negative.
    pub find_copy_budget: u64,
    /// `rainbow_find` host ceiling.
    pub rainbow_host_ceiling: usize,
    /// `rainbow_find` forest-size ceiling.
    pub rainbow_forest_ceiling: usize,
    /// Node budget for rainbow backtracking below the ceilings.
    pub rainbow_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            alpha_omega_ceiling: 4096,
            count_pattern_ceiling: 6,
            count_host_ceiling: 400,
            find_copy_budget: 80_000_000,
            rainbow_host_ceiling: 2000,
            rainbow_forest_ceiling: 12,
            rainbow_budget: 80_000_000,
        }
    }
}

impl SearchLimits {
    /// Permissive limits for acceptance fixtures that embed large patterns.
    pub fn generous() -> Self {
        SearchLimits {
            count_pattern_ceiling: 8,
            count_host_ceiling: 2000,
            ..Default::default()
        }
    }
}
