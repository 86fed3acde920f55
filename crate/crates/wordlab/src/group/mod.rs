//! Finite groups behind a uniform handle-based interface.
//!
//! Two engines back the same API: a validated Cayley table (an oracle for
//! any group at desk scale) and a polycyclic class-2 presentation whose
//! collection multiplication scales to order ~10^6 without a table. Element
//! handles are canonical integers; the polycyclic engine identifies a handle
//! with the mixed-radix encoding of its reduced exponent vector, so the two
//! views are in bijection.

pub mod catalog;
pub mod cayley;
pub mod pc;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::word::Word;
pub use cayley::{load_cayley, AssocCheck, CayleyDocument, CayleyGroup};
pub use pc::{build_pc_class2, PcDocument, PcGroup};

/// Largest order for which a flat multiplication table is cached.
const TABLE_CAP: u64 = 2048;
/// Largest order that can be materialized as a Cayley engine.
const MATERIALIZE_CAP: u64 = 2048;
/// Largest order for which whole-group structure scans (conjugacy classes,
/// exponent, per-element orders) are attempted.
const STRUCTURE_CAP: u64 = 1 << 17;

/// Opaque element handle, valid only for the group that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
pub enum Engine {
    Cayley(CayleyGroup),
    Pc(PcGroup),
}

/// A sorted set of elements forming a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, e: Element) -> bool {
        self.elements.binary_search(&e.0).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements.iter().map(|&i| Element(i))
    }

    pub fn element_indices(&self) -> &[u32] {
        &self.elements
    }

    /// Checks closure under product and inverse, and identity membership.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if !self.contains(g.identity()) {
            return Err(Error::InvalidGroup("subgroup misses identity".into()));
        }
        for &a in &self.elements {
            if !self.contains(g.inv(Element(a))) {
                return Err(Error::InvalidGroup(
                    "subgroup not closed under inverse".into(),
                ));
            }
            for &b in &self.elements {
                if !self.contains(g.mul(Element(a), Element(b))) {
                    return Err(Error::InvalidGroup(
                        "subgroup not closed under product".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Conjugacy class partition: representatives are the minimal handles.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    reps: Vec<u32>,
    sizes: Vec<u64>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, e: Element) -> usize {
        self.class_of[e.index()] as usize
    }

    pub fn representative(&self, class: usize) -> Element {
        Element(self.reps[class])
    }

    pub fn size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }
}

#[derive(Debug, Default)]
struct Caches {
    center: OnceLock<Subgroup>,
    derived: OnceLock<Subgroup>,
    classes: OnceLock<ConjugacyClasses>,
    exponent: OnceLock<u64>,
    table: OnceLock<Option<Vec<u32>>>,
    generators: OnceLock<Vec<Element>>,
    element_orders: OnceLock<Vec<u32>>,
}

/// A finite group with one of the two engines and memoized structure data.
/// Immutable after construction; all queries are read-only and the caches
/// are single-initialization, so sharing across threads is safe.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    engine: Engine,
    caches: Caches,
}

impl FiniteGroup {
    pub fn from_cayley(g: CayleyGroup) -> Self {
        FiniteGroup {
            name: g.name().to_string(),
            engine: Engine::Cayley(g),
            caches: Caches::default(),
        }
    }

    pub fn from_pc(g: PcGroup) -> Self {
        FiniteGroup {
            name: g.name().to_string(),
            engine: Engine::Pc(g),
            caches: Caches::default(),
        }
    }

    /// Loads either document format, dispatching on the `format` field.
    pub fn from_json(json: &str, check: AssocCheck) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(json)?;
        match value.get("format").and_then(|f| f.as_str()) {
            Some("cayley-v1") => Ok(Self::from_cayley(load_cayley(json, check)?)),
            Some("pc2-v1") => Ok(Self::from_pc(build_pc_class2(json)?)),
            Some(other) => Err(Error::InvalidGroup(format!("unknown format `{other}`"))),
            None => Err(Error::InvalidGroup("missing `format` field".into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn order(&self) -> u64 {
        match &self.engine {
            Engine::Cayley(g) => g.order() as u64,
            Engine::Pc(g) => g.order(),
        }
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    /// Validated handle from a raw index.
    pub fn element(&self, idx: usize) -> Result<Element> {
        if (idx as u64) < self.order() {
            Ok(Element(idx as u32))
        } else {
            Err(Error::ForeignElement {
                handle: idx,
                order: self.order(),
                group: self.name.clone(),
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order() as u32).map(Element)
    }

    fn check(&self, e: Element) -> Result<Element> {
        self.element(e.index())
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if let Some(t) = self.mul_table() {
            let n = self.order() as usize;
            return Element(t[a.index() * n + b.index()]);
        }
        match &self.engine {
            Engine::Cayley(g) => Element(g.mul(a.index(), b.index()) as u32),
            Engine::Pc(g) => Element(g.mul(a.index(), b.index()) as u32),
        }
    }

    pub fn inv(&self, a: Element) -> Element {
        match &self.engine {
            Engine::Cayley(g) => Element(g.inv(a.index()) as u32),
            // x^(|G|-1) = x^-1; collection has no closed-form inverse.
            Engine::Pc(_) => self.pow_u64(a, self.order() - 1),
        }
    }

    pub fn pow_u64(&self, a: Element, mut e: u64) -> Element {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, a: Element, e: i64) -> Element {
        let m = self.order() as i64;
        self.pow_u64(a, e.rem_euclid(m) as u64)
    }

    /// `a^e` for an arbitrary-precision exponent, reduced by Lagrange.
    pub fn pow_bigint(&self, a: Element, e: &BigInt) -> Element {
        let m = BigInt::from(self.order());
        let r = e.mod_floor(&m).to_u64().expect("reduced exponent fits");
        self.pow_u64(a, r)
    }

    /// Order of an element, via the prime factorization of |G|.
    pub fn element_order(&self, a: Element) -> u64 {
        let mut m = self.order();
        for (p, _) in factorize(self.order()) {
            while m % p == 0 && self.pow_u64(a, m / p) == self.identity() {
                m /= p;
            }
        }
        m
    }

    fn element_orders(&self) -> &[u32] {
        self.caches.element_orders.get_or_init(|| {
            assert!(
                self.order() <= STRUCTURE_CAP,
                "per-element order scan beyond structure cap"
            );
            self.elements()
                .map(|e| self.element_order(e) as u32)
                .collect()
        })
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> u64 {
        *self.caches.exponent.get_or_init(|| {
            self.element_orders()
                .iter()
                .fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
        })
    }

    /// A generating set: the defining generators for the polycyclic engine,
    /// a greedy chain for a Cayley table.
    pub fn generators(&self) -> &[Element] {
        self.caches.generators.get_or_init(|| match &self.engine {
            Engine::Pc(g) => (0..g.generator_count())
                .map(|i| Element(g.generator(i) as u32))
                .collect(),
            Engine::Cayley(_) => {
                let n = self.order() as usize;
                let mut gens = Vec::new();
                let mut known = vec![false; n];
                known[0] = true;
                let mut known_count = 1usize;
                for idx in 1..n {
                    if known[idx] {
                        continue;
                    }
                    gens.push(Element(idx as u32));
                    // Close the generated subgroup.
                    let mut stack: Vec<u32> =
                        (0..n as u32).filter(|&x| known[x as usize]).collect();
                    while let Some(x) = stack.pop() {
                        for g in &gens {
                            let y = self.mul(Element(x), *g);
                            if !known[y.index()] {
                                known[y.index()] = true;
                                known_count += 1;
                                stack.push(y.0);
                            }
                        }
                    }
                    if known_count == n {
                        break;
                    }
                }
                gens
            }
        })
    }

    /// Human-readable element label; PC elements print their normal form.
    pub fn label(&self, e: Element) -> String {
        if e == self.identity() {
            return "1".into();
        }
        match &self.engine {
            Engine::Cayley(_) => format!("e{}", e.index()),
            Engine::Pc(g) => {
                let v = g.exponents(e.index());
                let mut parts = Vec::new();
                for (i, &exp) in v.iter().enumerate() {
                    if exp == 1 {
                        parts.push(format!("g{}", i + 1));
                    } else if exp > 1 {
                        parts.push(format!("g{}^{}", i + 1, exp));
                    }
                }
                parts.join("*")
            }
        }
    }

    fn mul_table(&self) -> Option<&[u32]> {
        match &self.engine {
            Engine::Cayley(g) => Some(g.table()),
            Engine::Pc(g) => self
                .caches
                .table
                .get_or_init(|| {
                    let n = g.order();
                    if n > TABLE_CAP {
                        return None;
                    }
                    let n = n as usize;
                    let mut t = vec![0u32; n * n];
                    for a in 0..n {
                        for b in 0..n {
                            t[a * n + b] = g.mul(a, b) as u32;
                        }
                    }
                    Some(t)
                })
                .as_deref(),
        }
    }

    /// Subgroup generated by a seed set (identity always included).
    fn closure(&self, seeds: &[Element]) -> Subgroup {
        let n = self.order() as usize;
        let mut member = vec![false; n];
        member[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for s in seeds {
                let y = self.mul(Element(x), *s);
                if !member[y.index()] {
                    member[y.index()] = true;
                    stack.push(y.0);
                }
            }
        }
        Subgroup {
            elements: (0..n as u32).filter(|&i| member[i as usize]).collect(),
        }
    }

    /// The center `{z : zg = gz for all g}`.
    pub fn center(&self) -> &Subgroup {
        self.caches.center.get_or_init(|| {
            let gens = self.generators().to_vec();
            let elements = self
                .elements()
                .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
                .map(|e| e.0)
                .collect();
            Subgroup { elements }
        })
    }

    /// The derived subgroup, generated by all commutators.
    pub fn derived_subgroup(&self) -> &Subgroup {
        self.caches.derived.get_or_init(|| {
            let seeds: Vec<Element> = match &self.engine {
                // Commutator targets are central, so generator commutators
                // already generate the full derived subgroup.
                Engine::Pc(_) => {
                    let gens = self.generators();
                    let mut seeds = Vec::new();
                    for (i, &a) in gens.iter().enumerate() {
                        for &b in gens.iter().skip(i + 1) {
                            seeds.push(self.commutator(a, b));
                        }
                    }
                    seeds
                }
                Engine::Cayley(_) => {
                    let mut seeds = Vec::new();
                    for a in self.elements() {
                        for b in self.elements() {
                            seeds.push(self.commutator(a, b));
                        }
                    }
                    seeds.sort_unstable();
                    seeds.dedup();
                    seeds
                }
            };
            // Normal closure: conjugates of seeds by the generators.
            let gens = self.generators().to_vec();
            let mut all = seeds;
            let mut i = 0;
            let mut seen: std::collections::BTreeSet<Element> = all.iter().copied().collect();
            while i < all.len() {
                let x = all[i];
                i += 1;
                for &g in &gens {
                    let y = self.mul(self.mul(self.inv(g), x), g);
                    if seen.insert(y) {
                        all.push(y);
                    }
                }
            }
            self.closure(&all)
        })
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        self.center().order() == self.order()
    }

    /// Nilpotency class at most 2: derived subgroup inside the center.
    pub fn is_class_le2(&self) -> bool {
        let z = self.center();
        self.derived_subgroup().iter().all(|e| z.contains(e))
    }

    /// Conjugacy classes via generator-conjugation orbits.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.caches.classes.get_or_init(|| {
            let n = self.order() as usize;
            assert!(
                (n as u64) <= STRUCTURE_CAP,
                "conjugacy scan beyond structure cap"
            );
            let gens: Vec<(Element, Element)> = self
                .generators()
                .iter()
                .map(|&g| (g, self.inv(g)))
                .collect();
            let mut class_of = vec![u32::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let class = reps.len() as u32;
                reps.push(start);
                let mut orbit = vec![start];
                class_of[start as usize] = class;
                let mut i = 0;
                while i < orbit.len() {
                    let x = Element(orbit[i]);
                    i += 1;
                    for (g, ginv) in &gens {
                        let y = self.mul(self.mul(*ginv, x), *g);
                        if class_of[y.index()] == u32::MAX {
                            class_of[y.index()] = class;
                            orbit.push(y.0);
                        }
                    }
                }
                sizes.push(orbit.len() as u64);
            }
            ConjugacyClasses {
                class_of,
                reps,
                sizes,
            }
        })
    }

    /// `g -> g^e` over the whole group. The map is a bijection whenever
    /// `gcd(e, |G|) = 1`, which is asserted.
    pub fn power_map(&self, e: i64) -> Vec<Element> {
        let n = self.order();
        let r = e.rem_euclid(n as i64) as u64;
        let map: Vec<Element> = self.elements().map(|g| self.pow_u64(g, r)).collect();
        if (e.unsigned_abs()).gcd(&n) == 1 || r.gcd(&n) == 1 {
            let mut seen = vec![false; n as usize];
            for m in &map {
                assert!(!seen[m.index()], "coprime power map must be a bijection");
                seen[m.index()] = true;
            }
        }
        map
    }

    /// Sylow decomposition of a nilpotent group: for each prime the set of
    /// p-power-order elements, verified to be a subgroup.
    pub fn sylow_decomposition(&self) -> Result<Vec<(u64, Subgroup)>> {
        let n = self.order();
        let orders = self.element_orders();
        let mut out = Vec::new();
        for (p, k) in factorize(n) {
            let expected = p.pow(k);
            let members: Vec<u32> = (0..n as u32)
                .filter(|&i| {
                    let mut o = orders[i as usize] as u64;
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .collect();
            if members.len() as u64 != expected {
                return Err(Error::NotNilpotent(
                    self.name.clone(),
                    format!(
                        "{}-power-order elements number {}, expected {expected}",
                        p,
                        members.len()
                    ),
                ));
            }
            let sub = Subgroup { elements: members };
            // Closure under product; exhaustive at desk scale, sampled above.
            let m = sub.element_indices().len();
            let closed = if m * m <= 4_000_000 {
                sub.element_indices().iter().all(|&a| {
                    sub.element_indices()
                        .iter()
                        .all(|&b| sub.contains(self.mul(Element(a), Element(b))))
                })
            } else {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x51_10_77);
                (0..10_000).all(|_| {
                    let a = sub.element_indices()[rng.random_range(0..m)];
                    let b = sub.element_indices()[rng.random_range(0..m)];
                    sub.contains(self.mul(Element(a), Element(b)))
                })
            };
            if !closed {
                return Err(Error::NotNilpotent(
                    self.name.clone(),
                    format!("{p}-elements not closed under product"),
                ));
            }
            out.push((p, sub));
        }
        Ok(out)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.sylow_decomposition().is_ok()
    }

    /// Direct product; polycyclic factors stay polycyclic, anything else is
    /// materialized. Element handles compose as `h + |H| * k`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let combined = (self.order() as u128) * (other.order() as u128);
        if combined > 1_000_000 {
            return Err(Error::ScaleLimit(format!(
                "direct product order {combined} exceeds 10^6"
            )));
        }
        let name = format!("{} x {}", self.name, other.name);
        match (&self.engine, &other.engine) {
            (Engine::Pc(h), Engine::Pc(k)) => {
                let nh = h.generator_count();
                let nk = k.generator_count();
                let n = nh + nk;
                let mut orders = h.relative_orders().to_vec();
                orders.extend_from_slice(k.relative_orders());
                let extend = |v: &[u64], offset: usize| -> Vec<u64> {
                    let mut out = vec![0u64; n];
                    out[offset..offset + v.len()].copy_from_slice(v);
                    out
                };
                let hdoc = h.to_document();
                let kdoc = k.to_document();
                let mut powers = BTreeMap::new();
                for (key, v) in &hdoc.powers {
                    let i: usize = key.parse().unwrap();
                    powers.insert(i - 1, extend(v, 0));
                }
                for (key, v) in &kdoc.powers {
                    let i: usize = key.parse().unwrap();
                    powers.insert(nh + i - 1, extend(v, nh));
                }
                let mut commutators = BTreeMap::new();
                for (key, v) in &hdoc.commutators {
                    let (i, j) = parse_pair(key);
                    commutators.insert((i - 1, j - 1), extend(v, 0));
                }
                for (key, v) in &kdoc.commutators {
                    let (i, j) = parse_pair(key);
                    commutators.insert((nh + i - 1, nh + j - 1), extend(v, nh));
                }
                Ok(FiniteGroup::from_pc(PcGroup::new(
                    name,
                    orders,
                    &powers,
                    &commutators,
                )?))
            }
            _ => {
                let h = self.materialize_cayley()?;
                let k = other.materialize_cayley()?;
                let (nh, nk) = (h.order(), k.order());
                let n = nh * nk;
                let mut rows = vec![vec![0u32; n]; n];
                for h1 in 0..nh {
                    for k1 in 0..nk {
                        for h2 in 0..nh {
                            for k2 in 0..nk {
                                let a = h1 + nh * k1;
                                let b = h2 + nh * k2;
                                rows[a][b] = (h.mul(h1, h2) + nh * k.mul(k1, k2)) as u32;
                            }
                        }
                    }
                }
                Ok(FiniteGroup::from_cayley(CayleyGroup::from_table(
                    name,
                    &rows,
                    AssocCheck::Auto,
                )?))
            }
        }
    }

    /// Emits the group as a validated Cayley table, preserving handles.
    pub fn materialize_cayley(&self) -> Result<CayleyGroup> {
        if let Engine::Cayley(g) = &self.engine {
            return Ok(g.clone());
        }
        let n = self.order();
        if n > MATERIALIZE_CAP {
            return Err(Error::ScaleLimit(format!(
                "cannot materialize order {n} as a table (cap {MATERIALIZE_CAP})"
            )));
        }
        let n = n as usize;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.mul(Element(a as u32), Element(b as u32)).0)
                    .collect()
            })
            .collect();
        CayleyGroup::from_table(self.name.clone(), &rows, AssocCheck::Auto)
    }

    /// Left-to-right evaluation of a word at a tuple of group elements.
    pub fn evaluate_word(&self, w: &Word, tuple: &[Element]) -> Result<Element> {
        if tuple.len() != w.arity() {
            return Err(Error::ArityMismatch {
                expected: w.arity(),
                got: tuple.len(),
            });
        }
        for &e in tuple {
            self.check(e)?;
        }
        let mut acc = self.identity();
        for l in w.letters() {
            acc = self.mul(acc, self.pow_bigint(tuple[l.var], &l.exp));
        }
        Ok(acc)
    }

    /// Sorted multiset of (element order, class size): a cheap isomorphism
    /// profile for cross-engine checks.
    pub fn order_class_profile(&self) -> Vec<(u64, u64)> {
        let classes = self.conjugacy_classes();
        let orders = self.element_orders();
        let mut profile: Vec<(u64, u64)> = self
            .elements()
            .map(|e| (orders[e.index()] as u64, classes.size(classes.class_of(e))))
            .collect();
        profile.sort_unstable();
        profile
    }
}

fn parse_pair(key: &str) -> (usize, usize) {
    let mut it = key.split(',');
    let i = it.next().unwrap().trim().parse().unwrap();
    let j = it.next().unwrap().trim().parse().unwrap();
    (i, j)
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
