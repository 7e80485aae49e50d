//! Doubling and shell constants, the sphere-decay bound and its relatives.

pub mod bound;
pub mod counter;
pub mod doubling;
pub mod dyadic;
pub mod fit;
pub mod shell;

pub use bound::{abelian_isop_check, verify_sphere_bound, AbelianReport, BoundReport, BoundRow, TREND_TOLERANCE};
pub use counter::{annulus_ratio, witness_constant, witness_spheres, AnnulusRatio, WitnessRow};
pub use doubling::{doubling_constant, DoublingReport};
pub use dyadic::{dyadic_subsequence, DyadicEntry, DyadicSelection};
pub use fit::{growth_exponent_fit, log_trend_slope, ls_line, FitWindow, GrowthFit};
pub use shell::{
    delta_from_alpha, lemma_recursion_audit, shell_alpha, shell_alpha_all, AuditRecord, AuditTerm,
    ShellRecord, ShellReport,
};
