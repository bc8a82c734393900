//! Finite-radius stand-ins for the hull: patch catalogs, frequencies,
//! periodization and ergodic averages.

mod patch;
mod periodize;

pub use patch::{
    flc_patches, patch_inclusion_violations, transversal_stats, Patch, PatchCatalog,
    PatchFrequency, PatchStats,
};
pub use periodize::{
    ergodic_average, periodize, unimodularity_inequality_check, AverageWindow, Bump,
    InequalityViolation, Profile, TestFunction, UnimodularityReport,
};
