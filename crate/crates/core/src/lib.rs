pub mod cli;
pub mod eig;
pub mod exact;
pub mod model;
pub mod oscillator;
pub mod pt;
pub mod rrm;
pub mod specfun;
