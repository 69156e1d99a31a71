pub mod arrangement;
pub mod canon;
pub mod classifier;
pub mod enumerate;
pub mod fixtures;
pub mod flips;
pub mod geom;
pub mod map;
pub mod pipeline;
pub mod realizer;
pub mod seq;
pub mod store;
pub mod wiring;
