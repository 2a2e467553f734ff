pub mod gf;
pub mod keyed;
pub mod mpoly;
pub mod oracle;
pub mod variety;
pub mod ldt;
pub mod sampler;
pub mod zerotest;
pub mod pcp;
pub mod harness;
