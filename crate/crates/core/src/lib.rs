pub mod completion;
pub mod crystal;
pub mod decomp;
pub mod linalg;
pub mod qq;
pub mod rep;
