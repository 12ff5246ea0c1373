pub mod bounds;
pub mod construct;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod labelling;
pub mod matching;
pub mod search;
pub mod tree;
