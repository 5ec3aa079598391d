pub mod cli;
pub mod congruence;
pub mod grid;
pub mod intpoly;
pub mod landau;
pub mod numbers;
pub mod qcombinatorics;
pub mod relations;
pub mod series;
