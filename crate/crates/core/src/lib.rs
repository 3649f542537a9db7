pub mod bigraded_core;
pub mod coeff_rings;
pub mod poly;
pub mod ideals;
pub mod maps;
pub mod chow;
pub mod group_cohom;
pub mod quadric;
pub mod cli;
