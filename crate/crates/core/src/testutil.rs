use proptest::test_runner::{Config, RngSeed};

/// Property-test configuration with a fixed seed so runs are reproducible.
pub(crate) fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}
