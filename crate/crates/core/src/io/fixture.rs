use crate::hierarchy::DecisionModel;

use super::document::{parse_document, ModelDocument};

/// NHS cloud-service selection model: 11 criteria (six service qualities
/// and the five V's of big data) over SaaS, PaaS and IaaS. Raw judgments
/// only; every derived number is recomputed.
pub const NHS_DOCUMENT: &str = include_str!("../../fixtures/nhs.ahp.json");

pub fn nhs_document() -> ModelDocument {
    parse_document(NHS_DOCUMENT.as_bytes()).expect("bundled NHS fixture parses")
}

pub fn nhs_model() -> DecisionModel {
    nhs_document()
        .into_model()
        .expect("bundled NHS fixture is complete")
}
