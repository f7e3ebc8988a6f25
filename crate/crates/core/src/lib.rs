pub mod algpcom;
pub mod exactla;
pub mod findimcat;
pub mod globalization;
pub mod gpc;
pub mod hopfpc;
pub mod parmod;
pub mod random;
pub mod structures;
