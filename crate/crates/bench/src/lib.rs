//! Benchmark-only crate; see the `spectra` bench target.
