pub mod cli;
pub mod higgs;
pub mod linalg;
pub mod matrix;
pub mod numerology;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod spectral;
pub mod suites;
