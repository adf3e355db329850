//! Combinatorics of multiplicity functions over finite meet-semilattices.
//!
//! The crate models configurations of labeled divisors on an abstract curve
//! through their per-point depth functions, computes the saturation closure
//! that turns a depth function into a chain, enumerates covers and essential
//! elements above a chain, and stratifies configurations by combinatorial
//! type. On top of that sit exact integral (co)homology of order complexes
//! via Smith normal form, Mobius/Euler cross checks, census records with
//! kappa bookkeeping, explicit stability-range constants, and the Picard
//! lattice of the degree-5 del Pezzo surface with its Weyl group action.
//!
//! Everything is exact integer arithmetic; there are no floating point
//! values anywhere. All set-valued results come back in a canonical order so
//! repeated runs produce identical output. The crate is `no_std` (with
//! `alloc`) so the machinery can be embedded anywhere; the companion CLI
//! crate carries IO and report formats.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chains;
pub mod divisors;
pub mod homalg;
pub mod lattice;
pub mod stability;
pub mod types;
