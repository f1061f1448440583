//! Manifest-driven front end for the blow-up characteristic class engine:
//! JSON manifests describing rings, bundles, embeddings and nilmanifolds,
//! an infix polynomial literal parser, and task execution with JSON-line
//! reports.

pub mod manifest;
pub mod polyparse;
pub mod tasks;
