//! Affine-semilinear automorphisms `γ ↦ a·γ^{p^e} + b` with `a` an `m`-th power.

use super::{GpGraph, GraphError};
use crate::ffield::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Automorphism {
    a: Elem,
    b: Elem,
    e: u32,
}

impl Automorphism {
    pub fn new(g: &GpGraph, a: Elem, b: Elem, e: u32) -> Result<Automorphism, GraphError> {
        if !g.is_connection(a) {
            return Err(GraphError::NotConnectionScalar(a));
        }
        let degree = g.field().degree();
        if e >= degree {
            return Err(GraphError::BadFrobeniusExponent { e, degree });
        }
        Ok(Automorphism { a, b, e })
    }

    pub fn identity() -> Automorphism {
        Automorphism {
            a: Elem::ONE,
            b: Elem::ZERO,
            e: 0,
        }
    }

    pub fn apply(&self, g: &GpGraph, v: Elem) -> Elem {
        let f = g.field();
        f.add(f.mul(self.a, f.frobenius_pow(v, self.e)), self.b)
    }
}

/// Exhaustively checks that the map is a bijection sending every edge to an edge.
pub fn verify_automorphism(g: &GpGraph, map: &Automorphism) -> bool {
    let f = g.field();
    let n = g.order() as usize;
    let images: Vec<Elem> = g.vertices().map(|v| map.apply(g, v)).collect();
    let mut seen = vec![false; n];
    for &img in &images {
        if std::mem::replace(&mut seen[img.index() as usize], true) {
            return false;
        }
    }
    let s = g.connection_set();
    g.vertices().all(|u| {
        let iu = images[u.index() as usize];
        s.iter().all(|&c| g.adjacent(iu, images[f.add(u, c).index() as usize]))
    })
}
