//! Model documents (`.ahp.json`), reports, and the bundled NHS fixture.

mod document;
mod fixture;
mod report;

pub use document::{
    load_model, parse_document, render_document, save_model, Metadata, ModelDocument, Pair,
    FORMAT_VERSION,
};
pub use fixture::{nhs_document, nhs_model, NHS_DOCUMENT};
pub use report::{render_report, ReportFormat};
