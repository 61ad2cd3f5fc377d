//! Run configuration: budgets, tolerances, dimension caps, seeds.

/// Knobs shared by every operation. Identical configs and inputs produce
/// byte-identical outputs, including heuristic modes (seeded randomness).
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Enumeration node cap; exceeding raises BudgetExceeded rather than
    /// returning unverified output.
    pub node_budget: u64,
    /// Tolerance for float comparisons of irrational-power quantities.
    pub tol: f64,
    /// Largest dimension for exact Voronoi vertex enumeration.
    pub exact_voronoi_dim: usize,
    /// Largest dimension for shortest-vector enumeration.
    pub svp_dim_cap: usize,
    /// Seed for randomized heuristics (deep-hole search, sampling checks).
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            node_budget: 100_000_000,
            tol: 1e-9,
            exact_voronoi_dim: 6,
            svp_dim_cap: 12,
            seed: 0,
        }
    }
}
