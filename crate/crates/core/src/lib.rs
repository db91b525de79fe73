pub mod cover;
pub mod domination;
pub mod field;
pub mod graph;
pub mod hamming;
pub mod linalg;
pub mod partition;
pub mod search;
pub mod spectral;
