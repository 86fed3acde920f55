//! Exact fiber distributions `N_w` of word maps.
//!
//! Three independent routes produce identical maps:
//!
//! * brute force over all `|G|^k` tuples (the oracle, budget-guarded);
//! * central-quotient acceleration for class-<=2 groups: the commutator
//!   part of a word only depends on cosets modulo the center, and the
//!   central coordinates enter through one abelian power-product equation;
//! * convolution for words whose variable blocks are disjoint.
//!
//! Counts are arbitrary-precision integers; `|G|^k` overflows 64 bits at
//! sizes this crate is expected to handle.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{pow_biguint, Error, Result};
use crate::group::{Element, FiniteGroup, Subgroup};
use crate::signature::class2_signature;
use crate::word::Word;
use crate::DEFAULT_BUDGET;

/// Budget and parallelism knobs for counting runs.
#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    /// Maximum number of word evaluations a run may require.
    pub budget: u64,
    /// Worker threads for partitioned enumeration.
    pub workers: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Which algorithm produced a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    BruteForce,
    CentralQuotient,
    Convolution,
    FrobeniusSum,
    Direct,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::BruteForce => "brute-force",
            CountMethod::CentralQuotient => "central-quotient",
            CountMethod::Convolution => "convolution",
            CountMethod::FrobeniusSum => "frobenius-sum",
            CountMethod::Direct => "direct",
        }
    }
}

/// The exact map `g -> N_w(g)` for one group and word.
#[derive(Debug, Clone)]
pub struct FiberDistribution {
    group_name: String,
    group_order: u64,
    arity: usize,
    counts: Vec<BigUint>,
    method: CountMethod,
    evaluations: u64,
}

impl PartialEq for FiberDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.group_name == other.group_name
            && self.group_order == other.group_order
            && self.arity == other.arity
            && self.counts == other.counts
    }
}

impl FiberDistribution {
    pub(crate) fn new(
        group: &FiniteGroup,
        arity: usize,
        counts: Vec<BigUint>,
        method: CountMethod,
        evaluations: u64,
    ) -> Self {
        debug_assert_eq!(counts.len() as u64, group.order());
        FiberDistribution {
            group_name: group.name().to_string(),
            group_order: group.order(),
            arity,
            counts,
            method,
            evaluations,
        }
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn method(&self) -> CountMethod {
        self.method
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn count(&self, e: Element) -> &BigUint {
        &self.counts[e.index()]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// The word image `G_w`: elements with nonzero fiber.
    pub fn support(&self) -> Vec<Element> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| Element(i as u32))
            .collect()
    }

    /// `P_w(g) = N_w(g) / |G|^k` as an exact rational (numerator, denominator).
    pub fn probability(&self, e: Element) -> (BigUint, BigUint) {
        (
            self.counts[e.index()].clone(),
            pow_biguint(self.group_order, self.arity),
        )
    }

    /// Mass conservation and class-constancy; used by tests and the CLI.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let total: BigUint = self.counts.iter().sum();
        let expected = pow_biguint(self.group_order, self.arity);
        if total != expected {
            return Err(Error::theorem(
                "mass-conservation",
                format!("sum of counts {total} != |G|^k = {expected}"),
            ));
        }
        let classes = group.conjugacy_classes();
        for e in group.elements() {
            let rep = classes.representative(classes.class_of(e));
            if self.counts[e.index()] != self.counts[rep.index()] {
                return Err(Error::theorem(
                    "class-function",
                    format!(
                        "count differs inside a conjugacy class at {}",
                        group.label(e)
                    ),
                ));
            }
        }
        if self.support().is_empty() {
            return Err(Error::theorem("support", "empty support"));
        }
        Ok(())
    }

    /// Multiplies every count by `|G|^extra` and raises the arity: a word
    /// with unused trailing variables has each fiber scaled by `|G|` per
    /// unused variable.
    pub(crate) fn scaled(mut self, group: &FiniteGroup, extra: usize) -> Self {
        if extra > 0 {
            let f = pow_biguint(group.order(), extra);
            for c in &mut self.counts {
                *c *= &f;
            }
            self.arity += extra;
        }
        self
    }

    /// Serializable export with decimal-string counts (zero fibers omitted).
    pub fn to_export(&self, group: &FiniteGroup, word_text: &str) -> DistributionExport {
        let counts = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (group.label(Element(i as u32)), c.to_string()))
            .collect();
        DistributionExport {
            group: self.group_name.clone(),
            word: word_text.to_string(),
            arity: self.arity,
            counts,
        }
    }
}

/// JSON export shape: `{"group":..,"word":..,"arity":..,"counts":{label:"n"}}`.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionExport {
    pub group: String,
    pub word: String,
    pub arity: usize,
    pub counts: BTreeMap<String, String>,
}

impl DistributionExport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("export serializes")
    }
}

fn checked_pow_u128(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
        if acc > u128::MAX / 2 {
            return None;
        }
    }
    Some(acc)
}

fn budget_check(base: u64, exp: usize, budget: u64) -> Result<u64> {
    let required = checked_pow_u128(base, exp).ok_or(Error::budget(u128::MAX, budget))?;
    if required > budget as u128 {
        return Err(Error::budget(required, budget));
    }
    Ok(required as u64)
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

/// Exact counts by full enumeration of `G^(k)`, partitioned by the first
/// coordinate. Partial count maps are merged by addition, so the result is
/// independent of the worker count.
pub fn count_brute_force(
    group: &FiniteGroup,
    w: &Word,
    opts: &CountOptions,
) -> Result<FiberDistribution> {
    let n = group.order() as usize;
    let k = w.arity();
    let evaluations = budget_check(group.order(), k, opts.budget)?;
    if k == 0 {
        let mut counts = vec![BigUint::zero(); n];
        counts[0] = BigUint::one();
        return Ok(FiberDistribution::new(
            group,
            0,
            counts,
            CountMethod::BruteForce,
            1,
        ));
    }

    // Per-letter power maps: g -> g^e, computed once.
    let letters: Vec<(usize, Vec<u32>)> = w
        .letters()
        .iter()
        .map(|l| {
            let map: Vec<u32> = group
                .elements()
                .map(|g| group.pow_bigint(g, &l.exp).0)
                .collect();
            (l.var, map)
        })
        .collect();

    let workers = opts.workers.max(1).min(n);
    let chunk = n.div_ceil(workers);
    let mut partials: Vec<Vec<u64>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for wi in 0..workers {
            let lo = wi * chunk;
            let hi = ((wi + 1) * chunk).min(n);
            let letters = &letters;
            handles.push(scope.spawn(move || {
                let mut counts = vec![0u64; n];
                if lo >= hi {
                    return counts;
                }
                let mut tuple = vec![0usize; k];
                tuple[0] = lo;
                loop {
                    let mut acc = 0usize;
                    for (var, map) in letters {
                        acc = group
                            .mul(Element(acc as u32), Element(map[tuple[*var]]))
                            .index();
                    }
                    counts[acc] += 1;
                    // Odometer: last coordinate fastest, first bounded to
                    // this worker's range.
                    let mut d = k;
                    loop {
                        if d == 0 {
                            return counts;
                        }
                        d -= 1;
                        tuple[d] += 1;
                        let limit = if d == 0 { hi } else { n };
                        if tuple[d] < limit {
                            break;
                        }
                        tuple[d] = if d == 0 { hi } else { 0 };
                        if d == 0 {
                            return counts;
                        }
                    }
                }
            }));
        }
        for h in handles {
            partials.push(h.join().expect("worker panicked"));
        }
    });
    let mut counts = vec![BigUint::zero(); n];
    for part in partials {
        for (i, c) in part.into_iter().enumerate() {
            if c > 0 {
                counts[i] += c;
            }
        }
    }
    Ok(FiberDistribution::new(
        group,
        k,
        counts,
        CountMethod::BruteForce,
        evaluations,
    ))
}

// ---------------------------------------------------------------------------
// Abelian power-product solver
// ---------------------------------------------------------------------------

/// Counts solutions of `sum_i a_i z_i = c` in `Z_{m_1} x ... x Z_{m_t}`.
///
/// Per cyclic factor the linear congruence `sum a_i z_i = c (mod m)` has
/// `m^(k-1) * gcd(a_1,...,a_k,m)` solutions when that gcd divides `c`, and
/// none otherwise; factors multiply.
pub fn count_abelian_power_product(
    invariants: &[u64],
    a: &[BigInt],
    target: &[u64],
) -> Result<BigUint> {
    if target.len() != invariants.len() {
        return Err(Error::Domain(format!(
            "target has {} coordinates for {} cyclic factors",
            target.len(),
            invariants.len()
        )));
    }
    for (m, c) in invariants.iter().zip(target) {
        if *m == 0 {
            return Err(Error::Domain("cyclic order 0".into()));
        }
        if c >= m {
            return Err(Error::Domain(format!(
                "target coordinate {c} outside Z_{m}"
            )));
        }
    }
    let k = a.len();
    let d = crate::arith::gcd_all(a);
    let mut total = BigUint::one();
    for (&m, &c) in invariants.iter().zip(target) {
        if k == 0 {
            if c != 0 {
                return Ok(BigUint::zero());
            }
            continue;
        }
        let g = if d.is_zero() {
            m
        } else {
            d.mod_floor(&BigInt::from(m))
                .to_u64()
                .expect("reduced gcd fits")
                .gcd(&m)
        };
        let g = if g == 0 { m } else { g };
        if c % g != 0 {
            return Ok(BigUint::zero());
        }
        total *= pow_biguint(m, k - 1) * BigUint::from(g);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Central-quotient acceleration
// ---------------------------------------------------------------------------

/// Exact counts for class-<=2 groups in `O(|G/Z|^k)` outer iterations.
///
/// Writing each variable as `t_i z_i` with `t_i` a fixed coset
/// representative and `z_i` central gives `w(t z) = w(t) * prod z_i^{a_i}`
/// with `a_i` the exponent sums, so each coset tuple contributes the
/// solution count of one central power-product equation. That inner count
/// is `|Z|^k / |Z^d|` (d = gcd of the exponent sums) when the required
/// central value lies in `Z^d`, and 0 otherwise — the subgroup-image form
/// of `count_abelian_power_product` on Z.
pub fn count_central_quotient(
    group: &FiniteGroup,
    w: &Word,
    opts: &CountOptions,
) -> Result<FiberDistribution> {
    if !group.is_class_le2() {
        return Err(Error::NotClass2(group.name().to_string()));
    }
    let n = group.order() as usize;
    let k = w.arity();
    let center = group.center();
    let zsize = center.order();
    let quotient = group.order() / zsize;
    let evaluations = budget_check(quotient, k, opts.budget)?;

    // Minimal element handle per coset, fixed once.
    let mut coset_rep_of = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(quotient as usize);
    for g in group.elements() {
        if coset_rep_of[g.index()] != u32::MAX {
            continue;
        }
        reps.push(g);
        for z in center.iter() {
            let gz = group.mul(g, z);
            if coset_rep_of[gz.index()] == u32::MAX {
                coset_rep_of[gz.index()] = g.0;
            }
        }
    }

    // Image subgroup Z^d and the per-hit multiplicity |Z|^k / |Z^d|.
    let a = class2_signature(w).exponent_sums().to_vec();
    let d = crate::arith::gcd_all(&a);
    let d_red = d
        .mod_floor(&BigInt::from(group.order()))
        .to_u64()
        .expect("reduced gcd fits");
    let mut image = vec![false; n];
    let mut image_size = 0u64;
    for z in center.iter() {
        let zp = group.pow_u64(z, d_red);
        if !image[zp.index()] {
            image[zp.index()] = true;
            image_size += 1;
        }
    }
    let multiplicity = pow_biguint(zsize, k) / BigUint::from(image_size);

    // Per-letter power maps, as in the brute-force path.
    let letters: Vec<(usize, Vec<u32>)> = w
        .letters()
        .iter()
        .map(|l| {
            let map: Vec<u32> = group
                .elements()
                .map(|g| group.pow_bigint(g, &l.exp).0)
                .collect();
            (l.var, map)
        })
        .collect();

    // Outer loop over coset-representative tuples.
    let mut hits = vec![0u64; n];
    if k == 0 {
        hits[group.evaluate_word(w, &[])?.index()] = 1;
    } else {
        let q = reps.len();
        let mut tuple = vec![0usize; k];
        'outer: loop {
            let mut v = group.identity();
            for (var, map) in &letters {
                v = group.mul(v, Element(map[reps[tuple[*var]].index()]));
            }
            // w(t z) ranges over v * Z^d with equal multiplicity.
            for (idx, &inz) in image.iter().enumerate() {
                if inz {
                    let g = group.mul(v, Element(idx as u32));
                    hits[g.index()] += 1;
                }
            }
            let mut dpos = k;
            loop {
                if dpos == 0 {
                    break 'outer;
                }
                dpos -= 1;
                tuple[dpos] += 1;
                if tuple[dpos] < q {
                    break;
                }
                tuple[dpos] = 0;
                if dpos == 0 {
                    break 'outer;
                }
            }
        }
    }
    let counts: Vec<BigUint> = hits
        .into_iter()
        .map(|h| {
            if h == 0 {
                BigUint::zero()
            } else {
                &multiplicity * BigUint::from(h)
            }
        })
        .collect();
    Ok(FiberDistribution::new(
        group,
        k,
        counts,
        CountMethod::CentralQuotient,
        evaluations,
    ))
}

// ---------------------------------------------------------------------------
// Convolution
// ---------------------------------------------------------------------------

/// For words on disjoint variable sets, `N_{uv}(g) = sum_h N_u(h) N_v(h^-1 g)`.
pub fn convolve_disjoint(
    group: &FiniteGroup,
    d1: &FiberDistribution,
    d2: &FiberDistribution,
) -> Result<FiberDistribution> {
    for d in [d1, d2] {
        if d.group_name != group.name() || d.group_order != group.order() {
            return Err(Error::GroupMismatch(format!(
                "distribution over `{}` (order {}) does not match `{}` (order {})",
                d.group_name,
                d.group_order,
                group.name(),
                group.order()
            )));
        }
    }
    let n = group.order() as usize;
    let mut counts = vec![BigUint::zero(); n];
    for h in 0..n {
        if d1.counts[h].is_zero() {
            continue;
        }
        for g in 0..n {
            if d2.counts[g].is_zero() {
                continue;
            }
            let target = group.mul(Element(h as u32), Element(g as u32));
            counts[target.index()] += &d1.counts[h] * &d2.counts[g];
        }
    }
    Ok(FiberDistribution::new(
        group,
        d1.arity + d2.arity,
        counts,
        CountMethod::Convolution,
        d1.evaluations.saturating_add(d2.evaluations),
    ))
}

// ---------------------------------------------------------------------------
// Defined word maps
// ---------------------------------------------------------------------------

/// A word map with a subset of arguments frozen at fixed group elements.
#[derive(Debug, Clone)]
pub struct DefinedWordMap<'g> {
    group: &'g FiniteGroup,
    word: Word,
    fixed: BTreeMap<usize, Element>,
    free: Vec<usize>,
}

/// Outcome of the exhaustive homomorphism test.
#[derive(Debug, Clone)]
pub struct HomomorphismReport {
    pub homomorphism: bool,
    pub image_in_center: bool,
    /// A violating pair of free tuples, if any.
    pub witness: Option<(Vec<Element>, Vec<Element>)>,
}

impl<'g> DefinedWordMap<'g> {
    /// `fixed` maps 0-based argument positions to group elements.
    pub fn new(
        group: &'g FiniteGroup,
        word: Word,
        fixed: BTreeMap<usize, Element>,
    ) -> Result<Self> {
        for (&pos, &val) in &fixed {
            if pos >= word.arity() {
                return Err(Error::Domain(format!(
                    "fixed position {} exceeds arity {}",
                    pos + 1,
                    word.arity()
                )));
            }
            group.element(val.index())?;
        }
        let free = (0..word.arity())
            .filter(|p| !fixed.contains_key(p))
            .collect();
        Ok(DefinedWordMap {
            group,
            word,
            fixed,
            free,
        })
    }

    pub fn free_positions(&self) -> &[usize] {
        &self.free
    }

    /// Evaluates on a tuple for the free positions (in ascending order).
    pub fn evaluate(&self, free_tuple: &[Element]) -> Result<Element> {
        if free_tuple.len() != self.free.len() {
            return Err(Error::ArityMismatch {
                expected: self.free.len(),
                got: free_tuple.len(),
            });
        }
        let mut args = vec![self.group.identity(); self.word.arity()];
        for (&pos, &val) in &self.fixed {
            args[pos] = val;
        }
        for (&pos, &val) in self.free.iter().zip(free_tuple) {
            args[pos] = val;
        }
        self.group.evaluate_word(&self.word, &args)
    }

    /// Exhaustively tests `f(uv) = f(u) f(v)` over all pairs of free tuples
    /// and whether the image lies in the center.
    pub fn is_homomorphism(&self, opts: &CountOptions) -> Result<HomomorphismReport> {
        let n = self.group.order() as usize;
        let f = self.free.len();
        budget_check(self.group.order(), 2 * f, opts.budget)?;
        let total = n.pow(f as u32);
        // Memoize values over all free tuples (mixed-radix index).
        let mut values = vec![0u32; total.max(1)];
        let mut tuple = vec![Element(0); f];
        for (idx, value) in values.iter_mut().enumerate() {
            let mut rest = idx;
            for t in 0..f {
                tuple[t] = Element((rest % n) as u32);
                rest /= n;
            }
            *value = self.evaluate(&tuple)?.0;
        }
        let center = self.group.center();
        let image_in_center = values.iter().all(|&v| center.contains(Element(v)));
        let decode = |mut idx: usize| -> Vec<Element> {
            let mut t = vec![Element(0); f];
            for slot in t.iter_mut() {
                *slot = Element((idx % n) as u32);
                idx /= n;
            }
            t
        };
        for u in 0..total {
            let ut = decode(u);
            for v in 0..total {
                let vt = decode(v);
                // Pointwise product tuple uv.
                let mut uv_idx = 0usize;
                for t in (0..f).rev() {
                    let prod = self.group.mul(ut[t], vt[t]).index();
                    uv_idx = uv_idx * n + prod;
                }
                let lhs = values[uv_idx];
                let rhs = self.group.mul(Element(values[u]), Element(values[v])).0;
                if lhs != rhs {
                    return Ok(HomomorphismReport {
                        homomorphism: false,
                        image_in_center,
                        witness: Some((ut, vt)),
                    });
                }
            }
        }
        Ok(HomomorphismReport {
            homomorphism: true,
            image_in_center,
            witness: None,
        })
    }
}

// ---------------------------------------------------------------------------
// Strategy dispatch
// ---------------------------------------------------------------------------

/// Splits a word into maximal chunks over pairwise disjoint variable sets,
/// each relabeled onto a compact arity. Returns the parts and the number of
/// declared variables that never occur.
fn split_disjoint(w: &Word) -> (Vec<Word>, usize) {
    let used = w.used_vars();
    let unused = w.arity() - used.len();
    let letters = w.letters();
    let mut parts = Vec::new();
    let mut start = 0;
    while start < letters.len() {
        // Grow the chunk until its variable set is disjoint from the rest.
        let mut seen = vec![false; w.arity()];
        let mut end = start;
        let mut pending = 0usize;
        loop {
            let l = &letters[end];
            if !seen[l.var] {
                seen[l.var] = true;
                pending += 1;
            }
            end += 1;
            if end == letters.len() {
                break;
            }
            // Disjoint cut: none of the remaining letters reuse a seen var.
            if letters[end..].iter().all(|r| !seen[r.var]) {
                break;
            }
        }
        let _ = pending;
        // Relabel the chunk's variables compactly.
        let vars: Vec<usize> = (0..w.arity()).filter(|&v| seen[v]).collect();
        let remap: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let part = Word::from_letters(
            vars.len(),
            letters[start..end]
                .iter()
                .map(|l| (remap[&l.var], l.exp.clone())),
        )
        .expect("relabeled chunk is valid");
        parts.push(part);
        start = end;
    }
    (parts, unused)
}

/// Forces the convolution route: errors when the word has no disjoint
/// variable blocks to split on.
pub fn count_convolve(
    group: &FiniteGroup,
    w: &Word,
    opts: &CountOptions,
) -> Result<FiberDistribution> {
    if w.is_identity() {
        return count_auto(group, w, opts);
    }
    let (parts, unused) = split_disjoint(w);
    if parts.len() < 2 {
        return Err(Error::Domain(
            "word has no disjoint variable blocks to convolve".into(),
        ));
    }
    let mut acc = count_auto(group, &parts[0], opts)?;
    for part in &parts[1..] {
        let d = count_auto(group, part, opts)?;
        acc = convolve_disjoint(group, &acc, &d)?;
    }
    Ok(acc.scaled(group, unused))
}

/// Strategy dispatch: disjoint variable blocks route through convolution,
/// class-<=2 groups through the central quotient, everything else through
/// brute force. All routes agree exactly whenever they apply.
pub fn count_auto(group: &FiniteGroup, w: &Word, opts: &CountOptions) -> Result<FiberDistribution> {
    let k = w.arity();
    if w.is_identity() {
        let n = group.order() as usize;
        let mut counts = vec![BigUint::zero(); n];
        counts[0] = pow_biguint(group.order(), k);
        return Ok(FiberDistribution::new(
            group,
            k,
            counts,
            CountMethod::Direct,
            0,
        ));
    }
    let (parts, unused) = split_disjoint(w);
    if parts.len() >= 2 {
        let mut acc = count_auto(group, &parts[0], opts)?;
        for part in &parts[1..] {
            let d = count_auto(group, part, opts)?;
            acc = convolve_disjoint(group, &acc, &d)?;
        }
        return Ok(acc.scaled(group, unused));
    }
    let compact = &parts[0];
    let dist = if group.is_class_le2() {
        count_central_quotient(group, compact, opts)?
    } else {
        count_brute_force(group, compact, opts)?
    };
    Ok(dist.scaled(group, unused))
}

/// Restricts a distribution's support to a subgroup check helper.
pub fn support_equals(dist: &FiberDistribution, subgroup: &Subgroup) -> bool {
    let support = dist.support();
    support.len() as u64 == subgroup.order() && support.iter().all(|&e| subgroup.contains(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::testsupport::count_abelian_exhaustive;
    use crate::word::parse_word;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn q8() -> FiniteGroup {
        catalog("q8").unwrap()
    }

    /// The central involution of the catalog q8/d4 presentations is g3.
    fn central_involution(g: &FiniteGroup) -> Element {
        let z = g
            .center()
            .iter()
            .find(|&e| e != g.identity())
            .expect("nontrivial center");
        z
    }

    #[test]
    fn q8_commutator_counts() {
        let g = q8();
        let w = parse_word("[x1,x2]", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        let minus_one = central_involution(&g);
        assert_eq!(*d.count(g.identity()), big(40));
        assert_eq!(*d.count(minus_one), big(24));
        let support = d.support();
        assert_eq!(support.len(), 2);
        d.validate(&g).unwrap();
    }

    #[test]
    fn q8_squares() {
        let g = q8();
        let w = parse_word("x1^2", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(*d.count(g.identity()), big(2));
        assert_eq!(*d.count(central_involution(&g)), big(6));
    }

    #[test]
    fn identity_word_map_on_z2() {
        let g = catalog("cyclic(2)").unwrap();
        let w = parse_word("x1", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert!(d.counts().iter().all(|c| *c == big(1)));
    }

    #[test]
    fn budget_exceeded_reports_requirement() {
        let g = q8();
        let w = parse_word("[x1,x2]", None).unwrap();
        let err = count_brute_force(
            &g,
            &w,
            &CountOptions {
                budget: 10,
                workers: 1,
            },
        )
        .unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget } => {
                assert_eq!(required, 64);
                assert_eq!(budget, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn determinism_across_worker_counts() {
        let g = catalog("heisenberg(3)").unwrap();
        let w = parse_word("x1^2 [x1,x2]", None).unwrap();
        let base = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        for workers in [2, 8, 64] {
            let d = count_brute_force(
                &g,
                &w,
                &CountOptions {
                    budget: DEFAULT_BUDGET,
                    workers,
                },
            )
            .unwrap();
            assert_eq!(d, base);
        }
    }

    #[test]
    fn central_quotient_heisenberg_commutator() {
        let g = catalog("heisenberg(3)").unwrap();
        let w = parse_word("[x1,x2]", None).unwrap();
        let d = count_central_quotient(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(*d.count(g.identity()), big(297));
        let derived = g.derived_subgroup();
        for z in derived.iter() {
            if z != g.identity() {
                assert_eq!(*d.count(z), big(216));
            }
        }
        assert_eq!(d.evaluations(), 81);
        // Oracle agreement.
        let brute = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(d, brute);
    }

    #[test]
    fn central_quotient_matches_brute_on_mixed_word() {
        let g = q8();
        let w = parse_word("x1^2 [x1,x2]", None).unwrap();
        let a = count_central_quotient(&g, &w, &CountOptions::default()).unwrap();
        let b = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn central_quotient_rejects_higher_class() {
        // S3 via a Cayley table is not class <= 2.
        let s3 = crate::testsupport::s3();
        let w = parse_word("[x1,x2]", None).unwrap();
        assert!(matches!(
            count_central_quotient(&s3, &w, &CountOptions::default()),
            Err(Error::NotClass2(_))
        ));
    }

    #[test]
    fn abelian_solver_examples() {
        let a2 = [BigInt::from(2), BigInt::from(2)];
        assert_eq!(
            count_abelian_power_product(&[4], &a2, &[0]).unwrap(),
            big(8)
        );
        assert_eq!(
            count_abelian_power_product(&[4], &a2, &[1]).unwrap(),
            big(0)
        );
        assert_eq!(
            count_abelian_power_product(&[5], &[BigInt::from(1)], &[3]).unwrap(),
            big(1)
        );
    }

    #[test]
    fn convolution_q8_self() {
        let g = q8();
        let w = parse_word("[x1,x2]", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        let c = convolve_disjoint(&g, &d, &d).unwrap();
        assert_eq!(c.arity(), 4);
        assert_eq!(*c.count(g.identity()), big(2176));
        assert_eq!(*c.count(central_involution(&g)), big(1920));
        // Equals brute force on the shifted concatenation.
        let w2 = parse_word("[x1,x2] [x3,x4]", None).unwrap();
        let b = count_brute_force(&g, &w2, &CountOptions::default()).unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn convolution_identity_element() {
        let g = q8();
        let w = parse_word("x1^2", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        let point = count_brute_force(
            &g,
            &parse_word("1", None).unwrap(),
            &CountOptions::default(),
        )
        .unwrap();
        let c = convolve_disjoint(&g, &d, &point).unwrap();
        assert_eq!(c.counts(), d.counts());
    }

    #[test]
    fn convolution_uniform_on_z3() {
        let g = catalog("cyclic(3)").unwrap();
        let d1 = count_brute_force(
            &g,
            &parse_word("x1", None).unwrap(),
            &CountOptions::default(),
        )
        .unwrap();
        let c = convolve_disjoint(&g, &d1, &d1).unwrap();
        assert!(c.counts().iter().all(|x| *x == big(3)));
        assert_eq!(c.arity(), 2);
    }

    #[test]
    fn convolution_group_mismatch() {
        let g = q8();
        let h = catalog("cyclic(3)").unwrap();
        let d1 = count_brute_force(
            &g,
            &parse_word("x1", None).unwrap(),
            &CountOptions::default(),
        )
        .unwrap();
        let d2 = count_brute_force(
            &h,
            &parse_word("x1", None).unwrap(),
            &CountOptions::default(),
        )
        .unwrap();
        assert!(matches!(
            convolve_disjoint(&g, &d1, &d2),
            Err(Error::GroupMismatch(_))
        ));
    }

    #[test]
    fn defined_word_map_heisenberg_is_homomorphism() {
        let g = catalog("heisenberg(3)").unwrap();
        let w = parse_word("[x1,x2]", None).unwrap();
        let fixed = BTreeMap::from([(1usize, g.element(g.order() as usize / 3).unwrap())]);
        let dwm = DefinedWordMap::new(&g, w, fixed).unwrap();
        let rep = dwm.is_homomorphism(&CountOptions::default()).unwrap();
        assert!(rep.homomorphism);
        assert!(rep.image_in_center);
    }

    #[test]
    fn defined_word_map_q8_squaring_is_not() {
        let g = q8();
        let w = parse_word("x1^2", None).unwrap();
        let dwm = DefinedWordMap::new(&g, w, BTreeMap::new()).unwrap();
        let rep = dwm.is_homomorphism(&CountOptions::default()).unwrap();
        assert!(!rep.homomorphism);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn defined_word_map_abelian_always_homomorphism() {
        let g = catalog("cyclic(6)").unwrap();
        for text in ["x1^2", "x1 x2", "[x1,x2] x1^3"] {
            let w = parse_word(text, None).unwrap();
            let dwm = DefinedWordMap::new(&g, w, BTreeMap::new()).unwrap();
            assert!(
                dwm.is_homomorphism(&CountOptions::default())
                    .unwrap()
                    .homomorphism
            );
        }
    }

    #[test]
    fn auto_dispatch_convolution_path() {
        let g = catalog("heisenberg(3)").unwrap();
        let w = crate::word::build_named_word(crate::word::NamedWord::Wk, 2).unwrap();
        let d = count_auto(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(d.method(), CountMethod::Convolution);
        let b = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(d, b);
    }

    #[test]
    fn auto_dispatch_brute_path_for_s3() {
        let s3 = crate::testsupport::s3();
        let w = parse_word("[x1,x2]", None).unwrap();
        let d = count_auto(&s3, &w, &CountOptions::default()).unwrap();
        assert_eq!(d.method(), CountMethod::BruteForce);
    }

    #[test]
    fn auto_q8_fourth_powers() {
        let g = q8();
        let w = parse_word("x1^4", None).unwrap();
        let d = count_auto(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(*d.count(g.identity()), big(8));
        assert_eq!(d.support().len(), 1);
        // P_w(1) = 8 / 8^1.
        assert_eq!(d.probability(g.identity()), (big(8), big(8)));
    }

    #[test]
    fn unused_variables_scale_counts() {
        let g = q8();
        let w = parse_word("x1^2", Some(2)).unwrap();
        let d = count_auto(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(d.arity(), 2);
        assert_eq!(*d.count(g.identity()), big(16));
        let b = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(d, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn prop_abelian_solver_matches_exhaustive(
            ms in prop::collection::vec(1u64..8, 1..3),
            a in prop::collection::vec(-6i64..=6, 0..4),
            seed in 0u64..1000,
        ) {
            let target: Vec<u64> = ms.iter().enumerate().map(|(i, &m)| (seed + i as u64) % m).collect();
            let abig: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
            let fast = count_abelian_power_product(&ms, &abig, &target).unwrap();
            let slow = count_abelian_exhaustive(&ms, &a, &target);
            prop_assert_eq!(fast, BigUint::from(slow));
        }
    }
}
