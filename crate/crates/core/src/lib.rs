pub mod algebra;
pub mod coverings;
pub mod kempf;
pub mod kempf_eval;
pub mod oracle;
pub mod random;
pub mod selftest;
pub mod tensor;
pub mod wire;
