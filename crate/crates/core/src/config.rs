//! Tunable bounds and defaults. Every knob the computation depends on is an
//! explicit configuration value rather than a hard-coded constant.

#[derive(Clone, Debug)]
pub struct Config {
    /// Maximum group order for stabilizer-chain based operations.
    pub chain_order_bound: u64,
    /// Maximum group order for full element listing (conjugacy class tables).
    pub class_enumeration_bound: u64,
    /// Maximum degree for brute-force normalizer computation in S_n.
    pub normalizer_degree_bound: usize,
    /// Maximum number of stored representatives per braid orbit before the
    /// closure aborts with a checkpoint.
    pub orbit_cap: usize,
    /// Random tuples collected per round of the main loop.
    pub batch_size: usize,
    /// Subgroups of order up to this are registered for assisted sampling.
    pub subgroup_order_cutoff: u64,
    /// Enumeration inside a registered subgroup is skipped in favour of
    /// sampling when the candidate-tuple count exceeds this.
    pub subgroup_enum_cap: u64,
    /// In `unlimited` mode, stop after this many consecutive rounds without a
    /// new orbit.
    pub idle_rounds: usize,
    /// Hard cap on main-loop rounds (safety valve; exceeding it is an error).
    pub max_rounds: usize,
    /// Conjugation-orbit size cap for canonicalization tables in the tuple
    /// store; larger orbits fall back to pairwise conjugacy testing.
    pub canon_orbit_cap: usize,
    /// RNG seed; fixed seeds make runs byte-reproducible.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            chain_order_bound: 1_000_000_000,
            class_enumeration_bound: 10_000_000,
            normalizer_degree_bound: 8,
            orbit_cap: 1_000_000,
            batch_size: 20,
            subgroup_order_cutoff: 200,
            subgroup_enum_cap: 1_000_000,
            idle_rounds: 20,
            max_rounds: 100_000,
            canon_orbit_cap: 2_000_000,
            seed: 0,
        }
    }
}

impl Config {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}
