pub mod graph;
pub mod minor;
pub mod moves;
pub mod spatial;
