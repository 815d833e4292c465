pub mod abgroup;
pub mod c2cohomology;
pub mod cli;
pub mod gradedring;
pub mod picard;
pub mod scenarios;
pub mod specseq;
