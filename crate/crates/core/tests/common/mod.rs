pub mod appendix;
pub mod oracles;
