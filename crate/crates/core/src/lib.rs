//! Petri nets, their square complexes, and the event structures read off
//! the universal-cover unfolding of those complexes.

pub mod analyze;
pub mod cli;
pub mod complex;
pub mod data;
pub mod events;
pub mod net;
pub mod oracle;
pub mod parse;
pub mod selftest;
pub mod trace;
mod uf;
pub mod unfold;
