//! Module-level numeric tolerances and enumeration budgets.
//!
//! A single knob for reproducibility: every solver and invariant check reads
//! its threshold from [`Tolerances`], every enumeration cap from [`Budget`].

/// Numeric tolerances used across the crate.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative tolerance for per-component spectral radii.
    pub spectral_rel: f64,
    /// Residual |P| required of Manhattan-curve and delta_r root solves.
    pub root_residual: f64,
    /// Stationarity defect allowed in equilibrium edge measures.
    pub stationarity: f64,
    /// Defect allowed in the variational identity h + ∫φ dμ = P(φ).
    pub variational: f64,
    /// Duality residual for Legendre suprema and curve duality checks.
    pub duality: f64,
    /// Agreement between analytic derivatives and central differences.
    pub derivative_fd: f64,
    /// Step used for central finite differences.
    pub fd_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            spectral_rel: 1e-12,
            root_residual: 1e-12,
            stationarity: 1e-10,
            variational: 1e-8,
            duality: 1e-8,
            derivative_fd: 1e-6,
            fd_step: 1e-5,
        }
    }
}

/// Enumeration and search caps.
///
/// `MANCURVE_BUDGET` in the environment scales every cap by a positive
/// factor (e.g. `MANCURVE_BUDGET=2` doubles them).
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Cap on n for explicit cycle enumeration.
    pub enumerate_n: usize,
    /// Cap on the number of cycles materialized by enumeration.
    pub enumerate_items: u64,
    /// Cap on n for the integer window-count dynamic program.
    pub count_n: usize,
    /// Power-iteration iteration cap.
    pub power_iter: usize,
    /// |t| cap for Legendre supremum brackets.
    pub legendre_t: f64,
    /// Node cap for word-length searches in free groups.
    pub word_nodes: usize,
    /// Largest power used when stabilizing translation lengths.
    pub translation_powers: usize,
    /// Cap on necklace length for enumeration (rank 2 default).
    pub necklace_len: usize,
    /// Cap on states when building geodesic automata.
    pub automaton_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        let b = Budget {
            enumerate_n: 24,
            enumerate_items: 20_000_000,
            count_n: 40,
            power_iter: 1_000_000,
            legendre_t: 1e3,
            word_nodes: 4_000_000,
            translation_powers: 16,
            necklace_len: 16,
            automaton_states: 100_000,
        };
        b.scaled_from_env()
    }
}

impl Budget {
    fn scaled_from_env(self) -> Self {
        match std::env::var("MANCURVE_BUDGET")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
        {
            Some(f) if f > 0.0 => self.scale(f),
            _ => self,
        }
    }

    /// Scale every cap by `f` (saturating).
    pub fn scale(mut self, f: f64) -> Self {
        let mul = |v: usize| ((v as f64 * f) as usize).max(1);
        self.enumerate_n = mul(self.enumerate_n);
        self.enumerate_items = (self.enumerate_items as f64 * f) as u64;
        self.count_n = mul(self.count_n);
        self.power_iter = mul(self.power_iter);
        self.legendre_t *= f;
        self.word_nodes = mul(self.word_nodes);
        self.translation_powers = mul(self.translation_powers);
        self.necklace_len = mul(self.necklace_len);
        self.automaton_states = mul(self.automaton_states);
        self
    }
}
