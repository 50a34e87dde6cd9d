//! Finitely presented groups: coset enumeration, word equality in finite
//! groups, abelianization and cheap Tietze eliminations.

mod abelian;
mod tietze;
mod todd_coxeter;

pub use abelian::{abelianization, Abelianization};
pub use tietze::{eliminate_short_relators, Reduced};
pub use todd_coxeter::{todd_coxeter, word_equal, CosetTable, DEFAULT_MAX_COSETS};
