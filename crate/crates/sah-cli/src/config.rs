use serde::Serialize;

/// Shared knobs for every subcommand. Reports echo the config so that a
/// report is reproducible from its own text.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub seed: u64,
    pub precision_bits: usize,
    pub relation_height: u64,
    pub max_dim: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            seed: 0,
            precision_bits: 256,
            relation_height: 1_000_000,
            max_dim: 4,
        }
    }
}
