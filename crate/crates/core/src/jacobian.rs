//! The Jacobian group `Jac(G) = Div^0(G) / Prin(G)` and the Abel–Jacobi map.
//!
//! Group structure comes from the Smith normal form of the reduced
//! Laplacian. Group *elements* are never handled in Smith coordinates:
//! a class is identified by its reduced representative.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::divisor::Divisor;
use crate::enumerate::{check_cap, EffectiveDivisors};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduce::Reducer;
use crate::snf::{self, Matrix, SmithForm};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone)]
pub struct JacobianStructure {
    /// Invariant factors `d_1 | d_2 | ...`, each greater than one.
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
    pub base_vertex: usize,
    /// Unimodular `left`, `right` with `left · L_q · right` diagonal.
    pub snf: SmithForm,
    /// The reduced Laplacian the decomposition was computed from.
    pub reduced_laplacian: Matrix,
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

impl JacobianStructure {
    /// `{factors: [...], order, base_vertex}`; integers beyond `u64` are
    /// written as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "factors": self.invariant_factors.iter().map(big_to_json).collect::<Vec<_>>(),
            "order": big_to_json(&self.order),
            "base_vertex": self.base_vertex,
        })
    }

    pub fn transforms_verified(&self) -> bool {
        self.snf.verify(&self.reduced_laplacian)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

impl Serialize for JacobianStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Invariant factors of the cokernel of the Laplacian with row and column
/// `q` deleted.
pub fn jacobian(g: &Graph, q: usize) -> Result<JacobianStructure> {
    g.check_vertex(q)?;
    g.require_connected()?;
    let reduced = snf::to_big(&g.laplacian().reduced(q));
    let form = snf::smith_normal_form(&reduced);
    if form.diagonal.len() != reduced.len() {
        // a connected graph has a nonsingular reduced Laplacian
        return Err(Error::DisconnectedGraph);
    }
    let order = form.diagonal.iter().fold(BigInt::one(), |acc, d| acc * d);
    let invariant_factors = form.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(JacobianStructure {
        invariant_factors,
        order,
        base_vertex: q,
        snf: form,
        reduced_laplacian: reduced,
    })
}

/// Determinant of the reduced Laplacian (matrix-tree count).
pub fn reduced_laplacian_determinant(g: &Graph, q: usize) -> Result<BigInt> {
    g.check_vertex(q)?;
    Ok(snf::determinant(&snf::to_big(&g.laplacian().reduced(q))))
}

/// A class in `Jac(G)`, named by its reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JacClassId(Divisor);

impl JacClassId {
    pub fn representative(&self) -> &Divisor {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }
}

/// Class of a degree-zero divisor, reduced against `reducer`'s base.
pub fn class_of(reducer: &Reducer<'_>, d: &Divisor) -> Result<JacClassId> {
    if d.degree() != 0 {
        return Err(Error::BadDegree {
            expected: 0,
            found: d.degree(),
        });
    }
    Ok(JacClassId(reducer.reduce(d)?.reduced))
}

/// `[D - kP]` for effective `D` of degree `k`.
pub fn abel_jacobi(g: &Graph, p: usize, k: u32, d: &Divisor) -> Result<JacClassId> {
    g.check_vertex(p)?;
    abel_jacobi_with(&Reducer::new(g, 0)?, p, k, d)
}

fn abel_jacobi_with(reducer: &Reducer<'_>, p: usize, k: u32, d: &Divisor) -> Result<JacClassId> {
    let n = reducer.graph().vertex_count();
    if d.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: d.len(),
        });
    }
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    if d.degree() != k as i64 {
        return Err(Error::BadDegree {
            expected: k as i64,
            found: d.degree(),
        });
    }
    let mut shifted = d.clone();
    shifted[p] -= k as i64;
    class_of(reducer, &shifted)
}

/// Exhaustively decides whether `D -> [D - kP]` is injective on
/// `Div_+^k(G)`. On failure the colliding pair is available through
/// [`abel_jacobi_collision`].
pub fn abel_jacobi_injective(g: &Graph, p: usize, k: u32, cap: u64) -> Result<bool> {
    Ok(abel_jacobi_collision(g, p, k, cap)?.is_none())
}

/// First pair of distinct effective degree-`k` divisors (in enumeration
/// order) with the same Abel–Jacobi image.
pub fn abel_jacobi_collision(
    g: &Graph,
    p: usize,
    k: u32,
    cap: u64,
) -> Result<Option<(Divisor, Divisor)>> {
    g.check_vertex(p)?;
    if k == 0 {
        return Err(Error::BadParameter("Abel–Jacobi degree must be positive".into()));
    }
    let reducer = Reducer::new(g, 0)?;
    let all = EffectiveDivisors::new(g.vertex_count(), k as usize);
    check_cap("Abel–Jacobi injectivity", all.count_total(), cap)?;
    let mut seen: HashMap<JacClassId, Divisor> = HashMap::new();
    for d in all {
        let class = abel_jacobi_with(&reducer, p, k, &d)?;
        if let Some(prev) = seen.get(&class) {
            return Ok(Some((prev.clone(), d)));
        }
        seen.insert(class, d);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cycle_jacobian_is_cyclic_of_order_k() {
        for k in 3..9 {
            let (g, _) = families::cycle(k).unwrap();
            let jac = jacobian(&g, 0).unwrap();
            assert_eq!(jac.invariant_factors, vec![BigInt::from(k)]);
            assert!(jac.transforms_verified());
        }
    }

    #[test]
    fn tree_jacobian_is_trivial() {
        let (g, _) = families::random_tree(9, 3).unwrap();
        let jac = jacobian(&g, 4).unwrap();
        assert!(jac.invariant_factors.is_empty());
        assert_eq!(jac.order, BigInt::one());
    }

    #[test]
    fn k4_jacobian() {
        let (g, _) = families::complete(4).unwrap();
        let jac = jacobian(&g, 0).unwrap();
        assert_eq!(jac.order, BigInt::from(16));
        assert_eq!(jac.invariant_factors, vec![BigInt::from(4), BigInt::from(4)]);
        assert_eq!(reduced_laplacian_determinant(&g, 2).unwrap(), BigInt::from(16));
        assert_eq!(
            serde_json::to_string(&jac).unwrap(),
            r#"{"base_vertex":0,"factors":[4,4],"order":16}"#
        );
    }

    #[test]
    fn abel_jacobi_examples() {
        let (c3, _) = families::cycle(3).unwrap();
        let kp = Divisor::point(3, 0, 2);
        assert!(abel_jacobi(&c3, 0, 2, &kp).unwrap().is_identity());
        assert!(!abel_jacobi(&c3, 0, 1, &Divisor::point(3, 1, 1)).unwrap().is_identity());

        let (k4, _) = families::complete(4).unwrap();
        assert!(!abel_jacobi(&k4, 0, 1, &Divisor::point(4, 2, 1)).unwrap().is_identity());

        assert_eq!(
            abel_jacobi(&c3, 0, 1, &Divisor::new(vec![2, -1, 0])),
            Err(Error::NotEffective)
        );
        assert!(matches!(
            abel_jacobi(&c3, 0, 2, &Divisor::point(3, 1, 1)),
            Err(Error::BadDegree { .. })
        ));
    }

    #[test]
    fn injectivity_examples() {
        let cap = DEFAULT_ENUMERATION_CAP;
        let (k4, _) = families::complete(4).unwrap();
        assert!(abel_jacobi_injective(&k4, 0, 2, cap).unwrap());
        let (p3, _) = families::path(3).unwrap();
        assert!(!abel_jacobi_injective(&p3, 0, 1, cap).unwrap());
        let (c4, _) = families::cycle(4).unwrap();
        assert!(abel_jacobi_injective(&c4, 0, 1, cap).unwrap());
        assert!(!abel_jacobi_injective(&c4, 0, 2, cap).unwrap());
        assert!(matches!(
            abel_jacobi_injective(&c4, 0, 30, 10),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }
}
