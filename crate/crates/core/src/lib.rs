//! Cayley graphs on finite groups: exact group arithmetic, hamiltonian cycle
//! search and verification, Factor Group Lemma lifting, and a case-driven
//! certificate producer for groups of order 150.

pub mod group;
pub mod cayley;
pub mod hamilton;
pub mod certificate;
pub mod quotient;
pub mod corpus;
pub mod catalog;
pub mod strategies;
