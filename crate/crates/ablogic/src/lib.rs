//! Decision procedures for abelian logic and Lukasiewicz infinite-valued
//! logic: hypersequent, terminating, labelled and single-sequent calculi over
//! an exact-rational linear-arithmetic kernel.

pub mod hyper;
pub mod labelled;
pub mod lp;
pub mod proof;
pub mod semantics;
pub mod single_seq;
pub mod structures;
pub mod syntax;
pub mod terminating;
pub mod translate;
