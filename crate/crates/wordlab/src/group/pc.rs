//! Polycyclic class-2 group engine: collection-based multiplication.
//!
//! Elements are normal forms `g_1^{e_1} ... g_n^{e_n}` with
//! `0 <= e_i < r_i`, stored as the mixed-radix integer
//! `sum_i e_i * prod_{j<i} r_j`, so every element has exactly one handle.
//!
//! A product is collected in one pass: exponent vectors add, transposing
//! `g_j^{a_j}` past `g_i^{b_i}` (i < j) contributes the central correction
//! `[g_i,g_j]^(-a_j b_i)`, and carries are resolved by the power relations.
//! Soundness requires every commutator relation and every power relation to
//! land on central generators, which is validated up front.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_PC_ORDER: u128 = 1_000_000;
const EXHAUSTIVE_ASSOC_ORDER: u64 = 512;
const SAMPLED_ASSOC_TRIPLES: usize = 10_000;

/// A finite group of nilpotency class <= 2 given by a polycyclic
/// presentation with central relations.
#[derive(Debug, Clone)]
pub struct PcGroup {
    name: String,
    orders: Vec<u64>,
    /// `powers[i]` = normal-form vector of `g_i^{r_i}` (all zero if trivial).
    powers: Vec<Vec<u64>>,
    /// `commutators[i][j]` (i < j) = normal-form vector of `[g_i, g_j]`.
    commutators: Vec<Vec<Vec<u64>>>,
    /// Mixed-radix place values.
    prefix: Vec<u64>,
    order: u64,
}

impl PcGroup {
    /// Builds and validates the group. `powers` and `commutators` may omit
    /// trivial entries (empty maps).
    pub fn new(
        name: impl Into<String>,
        orders: Vec<u64>,
        power_map: &BTreeMap<usize, Vec<u64>>,
        commutator_map: &BTreeMap<(usize, usize), Vec<u64>>,
    ) -> Result<Self> {
        let name = name.into();
        let n = orders.len();
        if orders.iter().any(|&r| r == 0) {
            return Err(Error::InvalidGroup("relative orders must be >= 1".into()));
        }
        let mut order: u128 = 1;
        for &r in &orders {
            order *= r as u128;
            if order > MAX_PC_ORDER {
                return Err(Error::ScaleLimit(format!(
                    "presentation order exceeds {MAX_PC_ORDER}"
                )));
            }
        }
        let order = order as u64;
        let mut prefix = vec![1u64; n];
        for i in 1..n {
            prefix[i] = prefix[i - 1] * orders[i - 1];
        }

        let check_vec = |v: &[u64], what: &str| -> Result<()> {
            if v.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "{what} vector has length {} but there are {n} generators",
                    v.len()
                )));
            }
            for (j, &e) in v.iter().enumerate() {
                if e >= orders[j].max(1) && !(orders[j] == 1 && e == 0) {
                    return Err(Error::InvalidGroup(format!(
                        "{what} vector entry {e} at generator {} exceeds relative order {}",
                        j + 1,
                        orders[j]
                    )));
                }
            }
            Ok(())
        };

        let mut commutators = vec![vec![vec![0u64; n]; n]; n.max(1)];
        for (&(i, j), v) in commutator_map {
            if i >= j || j >= n {
                return Err(Error::InvalidGroup(format!(
                    "commutator key ({}, {}) must satisfy 1 <= i < j <= {n}",
                    i + 1,
                    j + 1
                )));
            }
            check_vec(v, "commutator")?;
            commutators[i][j] = v.clone();
        }
        let mut powers = vec![vec![0u64; n]; n];
        for (&i, v) in power_map {
            if i >= n {
                return Err(Error::InvalidGroup(format!(
                    "power key {} out of range",
                    i + 1
                )));
            }
            check_vec(v, "power")?;
            powers[i] = v.clone();
        }

        // Central generators: trivial commutator row and column.
        let central: Vec<bool> = (0..n)
            .map(|g| {
                (0..n).all(|other| {
                    let (i, j) = if g < other { (g, other) } else { (other, g) };
                    i == j || commutators[i][j].iter().all(|&e| e == 0)
                })
            })
            .collect();

        // Every commutator relation must be supported on central generators.
        for i in 0..n {
            for j in (i + 1)..n {
                for (t, &e) in commutators[i][j].iter().enumerate() {
                    if e != 0 && !central[t] {
                        return Err(Error::NonCentralRelation {
                            relation: format!(
                                "[g{}, g{}] involves non-central generator g{}",
                                i + 1,
                                j + 1,
                                t + 1
                            ),
                        });
                    }
                }
            }
        }
        // Power relations must point at strictly later, central generators;
        // this is what makes single-pass carry reduction valid.
        for i in 0..n {
            for (t, &e) in powers[i].iter().enumerate() {
                if e != 0 {
                    if t <= i {
                        return Err(Error::InvalidGroup(format!(
                            "power relation g{}^{} must involve only later generators",
                            i + 1,
                            orders[i]
                        )));
                    }
                    if !central[t] {
                        return Err(Error::NonCentralRelation {
                            relation: format!(
                                "g{}^{} involves non-central generator g{}",
                                i + 1,
                                orders[i],
                                t + 1
                            ),
                        });
                    }
                }
            }
        }

        let g = PcGroup {
            name,
            orders,
            powers,
            commutators,
            prefix,
            order,
        };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |a: u64, b: u64, c: u64| -> bool {
            self.mul(self.mul(a as usize, b as usize), c as usize) as u64
                == self.mul(a as usize, self.mul(b as usize, c as usize)) as u64
        };
        if n <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "collection is not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_9c);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                if !check(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "collection is not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn relative_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Decodes an element handle into its exponent vector.
    pub fn exponents(&self, idx: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.orders.len()];
        let mut rest = idx as u64;
        for i in 0..self.orders.len() {
            v[i] = rest % self.orders[i];
            rest /= self.orders[i];
        }
        v
    }

    /// Encodes a reduced exponent vector as the canonical handle.
    pub fn index(&self, v: &[u64]) -> usize {
        v.iter()
            .zip(&self.prefix)
            .map(|(&e, &p)| e * p)
            .sum::<u64>() as usize
    }

    /// Handle of the generator `g_{i+1}`. A generator of relative order 1 is
    /// the identity.
    pub fn generator(&self, i: usize) -> usize {
        if self.orders[i] == 1 {
            0
        } else {
            self.prefix[i] as usize
        }
    }

    /// Reduces an unbounded exponent vector to normal form, resolving
    /// carries through the power relations (ascending pass).
    fn reduce(&self, mut v: Vec<i128>) -> Vec<u64> {
        let n = self.orders.len();
        let mut out = vec![0u64; n];
        for i in 0..n {
            let r = self.orders[i] as i128;
            let q = v[i].div_euclid(r);
            out[i] = v[i].rem_euclid(r) as u64;
            if q != 0 {
                for (t, &p) in self.powers[i].iter().enumerate() {
                    if p != 0 {
                        v[t] += q * p as i128;
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let av = self.exponents(a);
        let bv = self.exponents(b);
        let n = self.orders.len();
        let mut acc: Vec<i128> = (0..n).map(|t| (av[t] + bv[t]) as i128).collect();
        for i in 0..n {
            if bv[i] == 0 {
                continue;
            }
            for j in (i + 1)..n {
                if av[j] == 0 {
                    continue;
                }
                let com = &self.commutators[i][j];
                let coef = (av[j] as i128) * (bv[i] as i128);
                for (t, &e) in com.iter().enumerate() {
                    if e != 0 {
                        acc[t] -= coef * e as i128;
                    }
                }
            }
        }
        self.index(&self.reduce(acc))
    }

    /// Serializes to the `pc2-v1` document (1-based keys, trivial entries
    /// omitted).
    pub fn to_document(&self) -> PcDocument {
        let n = self.orders.len();
        let mut powers = BTreeMap::new();
        for i in 0..n {
            if self.powers[i].iter().any(|&e| e != 0) {
                powers.insert((i + 1).to_string(), self.powers[i].clone());
            }
        }
        let mut commutators = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.commutators[i][j].iter().any(|&e| e != 0) {
                    commutators.insert(
                        format!("{},{}", i + 1, j + 1),
                        self.commutators[i][j].clone(),
                    );
                }
            }
        }
        PcDocument {
            format: "pc2-v1".into(),
            name: self.name.clone(),
            orders: self.orders.clone(),
            powers,
            commutators,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("document serializes")
    }
}

/// The `pc2-v1` JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcDocument {
    pub format: String,
    pub name: String,
    pub orders: Vec<u64>,
    #[serde(default)]
    pub powers: BTreeMap<String, Vec<u64>>,
    #[serde(default)]
    pub commutators: BTreeMap<String, Vec<u64>>,
}

/// Parses and validates a `pc2-v1` document.
pub fn build_pc_class2(json: &str) -> Result<PcGroup> {
    let doc: PcDocument = serde_json::from_str(json)?;
    build_pc_document(&doc)
}

pub fn build_pc_document(doc: &PcDocument) -> Result<PcGroup> {
    if doc.format != "pc2-v1" {
        return Err(Error::InvalidGroup(format!(
            "unexpected format `{}` (want pc2-v1)",
            doc.format
        )));
    }
    let mut power_map = BTreeMap::new();
    for (k, v) in &doc.powers {
        let i: usize = k
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("bad power key `{k}`")))?;
        if i == 0 {
            return Err(Error::InvalidGroup("power keys are 1-based".into()));
        }
        power_map.insert(i - 1, v.clone());
    }
    let mut commutator_map = BTreeMap::new();
    for (k, v) in &doc.commutators {
        let parts: Vec<&str> = k.split(',').collect();
        let parse = |s: &str| -> Result<usize> {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidGroup(format!("bad commutator key `{k}`")))
        };
        if parts.len() != 2 {
            return Err(Error::InvalidGroup(format!("bad commutator key `{k}`")));
        }
        let (i, j) = (parse(parts[0])?, parse(parts[1])?);
        if i == 0 || j == 0 || i >= j {
            return Err(Error::InvalidGroup(format!(
                "commutator key `{k}` must satisfy 1 <= i < j"
            )));
        }
        commutator_map.insert((i - 1, j - 1), v.clone());
    }
    PcGroup::new(
        doc.name.clone(),
        doc.orders.clone(),
        &power_map,
        &commutator_map,
    )
}
