/// Resource bounds for the exhaustive searches.
///
/// Every search that would exceed its bound fails with [`crate::Error::Budget`]
/// or, for the subset compactness check only, switches to seeded sampling and
/// marks its report as not exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Branch choices allowed in one homomorphism or space-morphism search.
    pub hom_candidates: usize,
    /// Closed sets allowed in one `B(X)` enumeration.
    pub closed_sets: usize,
    /// Largest `|L|` for which all subsets are enumerated in the compactness check.
    pub subset_exhaustive_max: usize,
    pub sample_pairs: usize,
    pub seed: u64,
}

pub const BUDGET_ENV: &str = "ORTHO_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget {
            hom_candidates: 4096,
            closed_sets: 1 << 16,
            subset_exhaustive_max: 16,
            sample_pairs: 10_000,
            seed: 0,
        }
    }
}

impl Budget {
    /// Defaults with `hom_candidates` taken from `ORTHO_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(n) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            b.hom_candidates = n;
        }
        b
    }

    pub fn with_hom_candidates(mut self, n: usize) -> Self {
        self.hom_candidates = n;
        self
    }
}
