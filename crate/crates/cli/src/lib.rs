//! Command-line layer over `cubint-core`: seeded sampling, verification
//! reports, trajectory files and the `cubint` commands.

pub mod app;
pub mod config;
pub mod io;
pub mod sampling;
pub mod verify;

/// Caps rayon's global pool at `CUBINT_THREADS` when set.
pub fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CUBINT_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("CUBINT_THREADS must be a count, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}
