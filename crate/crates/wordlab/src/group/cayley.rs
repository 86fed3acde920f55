//! Cayley-table group engine and its JSON document format.
//!
//! A table is accepted only after validation: Latin-square rows and columns,
//! identity at index 0, two-sided inverses, and associativity. Associativity
//! is exhaustive up to order 64; above that a deterministic random sample of
//! 10^5 triples is used unless the caller forces the full check.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exhaustive-associativity cutoff for table loads.
const EXHAUSTIVE_ASSOC_ORDER: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

/// How thoroughly to validate associativity on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssocCheck {
    /// Exhaustive up to order 64, sampled above.
    #[default]
    Auto,
    /// Always exhaustive, whatever the order.
    Full,
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    name: String,
    order: usize,
    /// Row-major: `table[i * order + j]` = index of `g_i * g_j`.
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl CayleyGroup {
    /// Validates and wraps a multiplication table. Index 0 must be the
    /// identity.
    pub fn from_table(
        name: impl Into<String>,
        rows: &[Vec<u32>],
        check: AssocCheck,
    ) -> Result<Self> {
        let name = name.into();
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {} but order is {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {v} out of range in row {i}"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] {
                    return Err(Error::InvalidGroup(format!(
                        "row {i} is not a permutation (duplicate {v})"
                    )));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] {
                    return Err(Error::InvalidGroup(format!(
                        "column {j} is not a permutation (duplicate {v})"
                    )));
                }
                seen[v] = true;
            }
        }
        // Identity at index 0.
        for j in 0..n {
            if table[j] != j as u32 || table[j * n] != j as u32 {
                return Err(Error::InvalidGroup(
                    "index 0 is not a two-sided identity".into(),
                ));
            }
        }
        // Inverses: for each i the unique j with i*j = 0 must satisfy j*i = 0.
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("row is a permutation");
            if table[j * n + i] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "element {i} has no two-sided inverse"
                )));
            }
            inverse[i] = j as u32;
        }
        // Associativity.
        let check_triple = |a: usize, b: usize, c: usize| -> bool {
            let ab = table[a * n + b] as usize;
            let bc = table[b * n + c] as usize;
            table[ab * n + c] == table[a * n + bc]
        };
        let exhaustive = n <= EXHAUSTIVE_ASSOC_ORDER || check == AssocCheck::Full;
        if exhaustive {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check_triple(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_ca11e7);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                if !check_triple(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(CayleyGroup {
            name,
            order: n,
            table,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub(crate) fn table(&self) -> &[u32] {
        &self.table
    }

    /// Serializes to the `cayley-v1` document.
    pub fn to_document(&self) -> CayleyDocument {
        CayleyDocument {
            format: "cayley-v1".into(),
            name: self.name.clone(),
            order: self.order,
            table: (0..self.order)
                .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("document serializes")
    }
}

/// The `cayley-v1` JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CayleyDocument {
    pub format: String,
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<u32>>,
}

/// Parses and validates a `cayley-v1` document.
pub fn load_cayley(json: &str, check: AssocCheck) -> Result<CayleyGroup> {
    let doc: CayleyDocument = serde_json::from_str(json)?;
    load_cayley_document(&doc, check)
}

pub fn load_cayley_document(doc: &CayleyDocument, check: AssocCheck) -> Result<CayleyGroup> {
    if doc.format != "cayley-v1" {
        return Err(Error::InvalidGroup(format!(
            "unexpected format `{}` (want cayley-v1)",
            doc.format
        )));
    }
    if doc.table.len() != doc.order {
        return Err(Error::InvalidGroup(format!(
            "declared order {} but table has {} rows",
            doc.order,
            doc.table.len()
        )));
    }
    CayleyGroup::from_table(doc.name.clone(), &doc.table, check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_xor_table() {
        let g = CayleyGroup::from_table("z2", &[vec![0, 1], vec![1, 0]], AssocCheck::Auto).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn latin_square_violation() {
        let err = CayleyGroup::from_table("bad", &[vec![0, 1], vec![1, 1]], AssocCheck::Auto)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)), "{err}");
    }

    #[test]
    fn missing_identity() {
        // Latin square but no identity at index 0 (shifted Z3 table).
        let err = CayleyGroup::from_table(
            "bad",
            &[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]],
            AssocCheck::Auto,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)), "{err}");
    }

    #[test]
    fn non_associative_loop_rejected() {
        // An order-5 loop with identity and two-sided inverses: every check
        // before associativity passes, associativity itself fails.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = CayleyGroup::from_table("loop5", &rows, AssocCheck::Auto).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn document_round_trip() {
        let g = CayleyGroup::from_table("z2", &[vec![0, 1], vec![1, 0]], AssocCheck::Auto).unwrap();
        let j = g.to_json();
        let g2 = load_cayley(&j, AssocCheck::Full).unwrap();
        assert_eq!(g2.order(), 2);
        assert_eq!(g2.name(), "z2");
    }

    #[test]
    fn rejects_wrong_format() {
        let doc = r#"{"format":"pc2-v1","name":"x","order":1,"table":[[0]]}"#;
        assert!(load_cayley(doc, AssocCheck::Auto).is_err());
    }
}
