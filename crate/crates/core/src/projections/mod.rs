//! Weighted Bergman projections, the Szego projection on the torus and the
//! L^p theory around them.

pub mod bergman;
pub mod lp;
pub mod szego;

pub use bergman::{d_nu, project_bergman, projection_coefficient, self_test};
pub use lp::{
    blowup_scan, classical_estimate_check, critical_range, critical_range_unified, schur_feasible, BlowupRegime,
    BlowupScan, ClassicalEstimate, CriticalRange, RatioStats, SchurParams,
};
pub use szego::{lp_norm_torus, project_szego, project_szego_grid, szego_multiplier, TorusGrid};
