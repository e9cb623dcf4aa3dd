pub mod algebra;
pub mod fpalgo;
pub mod planes;
pub mod pquotient;
pub mod presentations;
pub mod ramification;
pub mod repcheck;
pub mod scenarios;
pub mod surfaces;
