//! Enumeration of histogram tuples, EMD-value histograms, and the
//! grade-table pipeline (CSV ingestion, common-mass rescaling, report).

mod compositions;
mod grades;
mod histogram;

pub use compositions::{enumerate_compositions, Compositions};
pub use grades::{grade_report, rescale_common_mass, EmdReport, GradeTable};
pub use histogram::{
    emd_histogram, histogram_from_genfunc, skewness, EmdHistogram, Skewness,
    DEFAULT_ENUMERATION_BUDGET,
};
