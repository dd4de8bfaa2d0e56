use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MonomialOrder;

/// Shared handle to a ring descriptor.
pub type Ring = Arc<RingDescriptor>;

/// A graded polynomial ring `F_p[x_0, ..., x_{n-1}]` with a monomial order.
///
/// Variables carry positive-or-zero integer weights (all 1 unless set);
/// weights only steer pair selection in the Gröbner engine and the notion of
/// homogeneity for elimination rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDescriptor {
    var_names: Vec<String>,
    field: PrimeField,
    order: MonomialOrder,
    weights: Vec<u32>,
}

impl RingDescriptor {
    pub fn new(var_names: Vec<String>, prime: u32, order: MonomialOrder) -> Result<Ring> {
        if var_names.is_empty() {
            return Err(Error::Structural("a ring needs at least one variable".into()));
        }
        let distinct: HashSet<&String> = var_names.iter().collect();
        if distinct.len() != var_names.len() {
            return Err(Error::Structural("variable names must be distinct".into()));
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > var_names.len() {
                return Err(Error::Structural("elimination block larger than the ring".into()));
            }
        }
        let n = var_names.len();
        Ok(Arc::new(Self { var_names, field: PrimeField::new(prime)?, order, weights: vec![1; n] }))
    }

    /// Ring with variables `{prefix}0 .. {prefix}{n-1}`.
    pub fn standard(prefix: &str, n: usize, prime: u32, order: MonomialOrder) -> Result<Ring> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")).collect(), prime, order)
    }

    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(Self { order, ..self.clone() })
    }

    pub fn with_weights(&self, weights: Vec<u32>) -> Ring {
        assert_eq!(weights.len(), self.n_vars());
        Arc::new(Self { weights, ..self.clone() })
    }

    pub fn with_prime(&self, prime: u32) -> Result<Ring> {
        Ok(Arc::new(Self { field: PrimeField::new(prime)?, ..self.clone() }))
    }

    /// Same variables, unit weights, and a standard grevlex order.
    pub fn graded(&self) -> Ring {
        let n = self.n_vars();
        Arc::new(Self { order: MonomialOrder::Grevlex, weights: vec![1; n], ..self.clone() })
    }

    /// Header line of the ideal file format.
    pub fn header(&self) -> String {
        format!(
            "ring: p={} vars=[{}] order={}",
            self.prime(),
            self.var_names.join(","),
            self.order.name()
        )
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
