//! Bessel moments, theorem terms, series assembly and the identity
//! evaluators.

pub mod adjudicate;
pub mod classic;
pub mod identity;
pub mod moments;
pub mod series;

pub use adjudicate::{adjudicate_interpretations, AdjudicationRow, AdjudicationTable};
pub use classic::{evaluate_wilton_classic, sine_tail, WILTON_CLASSIC};
pub use identity::{
    evaluate_identity, evaluate_identity_diagonal, printed_term, residue_part, theorem_term, EvalOptions,
    IdentityInstance, IdentityReport, PrintedForm, SeriesSide, TailDiagnostics, Verdict,
};
pub use moments::{
    bessel_x, mellin_barnes_moment, moment, moment_classical, moment_derivative_closed_form, moment_mellin_barnes,
    moment_regularized, moment_regularized_upto, moment_tail, MomentMode, Precision,
};
pub use series::{series_sum, series_sum_fn, SeriesSum, SumStrategy};
