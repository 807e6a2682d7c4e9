//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use ringlab_core::catalog::CatalogRing;
use ringlab_core::expr::{elem_from_str, ring_from_str};
use ringlab_core::{Elem, FiniteRing, Ring};

pub fn finite(expr: &str) -> Arc<FiniteRing> {
    CatalogRing::parse(expr).expect("fixture parses").ring()
}

pub fn ring(expr: &str) -> Ring {
    Ring::new(&ring_from_str(expr).expect("fixture parses")).expect("fixture builds")
}

pub fn elem(ring: &Ring, src: &str) -> Elem {
    elem_from_str(ring, src).expect("fixture element")
}

/// Index of an element given in the expression grammar.
pub fn index(ring: &Ring, src: &str) -> usize {
    ring.index(&elem(ring, src)).expect("finite ring element")
}

/// A full-rank 3x3 presentation over `Z/8` with mixed elementary divisors.
pub fn z8_matrix(r: &FiniteRing) -> Vec<Vec<usize>> {
    let e = |n: u64| r.index_of(&Elem::Int(n)).unwrap();
    vec![vec![e(2), e(4), e(6)], vec![e(0), e(4), e(2)], vec![e(6), e(0), e(4)]]
}
