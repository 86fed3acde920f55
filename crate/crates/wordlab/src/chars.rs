//! Complex irreducible character tables and Fourier analysis of fiber
//! distributions.
//!
//! The table is computed from the class algebra: convolution by a class sum
//! is a normal operator on class functions and the irreducible characters
//! are the common eigenvectors, so a random Hermitian combination of the
//! (orthonormally rescaled) class matrices separates them. The Hermitian
//! eigenproblem is solved through the standard real symmetric embedding.
//!
//! Values stay numeric (complex doubles); exact integers and rationals are
//! recovered by rounding only where a theorem guarantees the target is
//! rational, always with a residual check.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{pow_biguint, Error, Result};
use crate::fiber::{CountMethod, FiberDistribution};
use crate::group::{Element, FiniteGroup};

const MAX_TABLE_ORDER: u64 = 2000;
const MAX_CLASSES: usize = 200;
const ORTHOGONALITY_TOL: f64 = 1e-9;
const ROUNDING_TOL: f64 = 1e-6;
const SEPARATION_ATTEMPTS: u32 = 10;

/// Exact rational with a big-integer numerator.
pub type BigRational = Ratio<BigInt>;

/// Irreducible character values on conjugacy class representatives.
///
/// Classes are ordered by representative handle (identity first); rows are
/// ordered by ascending degree and then by descending lexicographic value
/// vector, so the trivial character is always row 0.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group_name: String,
    group_order: u64,
    class_reps: Vec<Element>,
    class_sizes: Vec<u64>,
    degrees: Vec<u32>,
    values: Vec<Vec<Complex64>>,
    m: Option<u32>,
}

impl CharacterTable {
    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_representatives(&self) -> &[Element] {
        &self.class_reps
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    /// Character degrees, ascending.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Distinct degrees (the set cd(G)), ascending.
    pub fn degree_set(&self) -> Vec<u32> {
        let mut ds = self.degrees.clone();
        ds.dedup();
        ds
    }

    /// Largest degree when there are exactly two distinct degrees.
    pub fn two_degree_m(&self) -> Option<u32> {
        self.m
    }

    pub fn value(&self, character: usize, class: usize) -> Complex64 {
        self.values[character][class]
    }

    pub fn row(&self, character: usize) -> &[Complex64] {
        &self.values[character]
    }

    /// Maximum deviation from row orthonormality.
    pub fn orthogonality_residual(&self) -> f64 {
        let r = self.class_count();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let mut ip = Complex64::new(0.0, 0.0);
                for k in 0..r {
                    ip +=
                        self.values[i][k] * self.values[j][k].conj() * (self.class_sizes[k] as f64);
                }
                ip /= self.group_order as f64;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Serializable export, values row-major as [re, im] pairs rounded to a
    /// 1e-10 grid for stable output.
    pub fn to_export(&self, group: &FiniteGroup) -> CharacterTableExport {
        let snap = |x: f64| -> f64 {
            let v = (x * 1e10).round() / 1e10;
            if v == 0.0 {
                0.0
            } else {
                v
            }
        };
        CharacterTableExport {
            group: self.group_name.clone(),
            classes: self.class_reps.iter().map(|&e| group.label(e)).collect(),
            sizes: self.class_sizes.clone(),
            degrees: self.degrees.clone(),
            values: self
                .values
                .iter()
                .flat_map(|row| row.iter().map(|v| [snap(v.re), snap(v.im)]))
                .collect(),
        }
    }
}

/// JSON export shape for `chartable`.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTableExport {
    pub group: String,
    pub classes: Vec<String>,
    pub sizes: Vec<u64>,
    pub degrees: Vec<u32>,
    pub values: Vec<[f64; 2]>,
}

impl CharacterTableExport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("export serializes")
    }
}

/// Computes the full irreducible character table of a group at desk scale.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let n = group.order();
    if n > MAX_TABLE_ORDER {
        return Err(Error::ScaleLimit(format!(
            "character table limited to order {MAX_TABLE_ORDER}, group has {n}"
        )));
    }
    let classes = group.conjugacy_classes();
    let r = classes.count();
    if r > MAX_CLASSES {
        return Err(Error::ScaleLimit(format!(
            "character table limited to {MAX_CLASSES} classes, group has {r}"
        )));
    }
    let sizes: Vec<u64> = classes.sizes().to_vec();
    let reps: Vec<Element> = (0..r).map(|c| classes.representative(c)).collect();

    // Scaled class matrices: (B_i)[k][j] = a_ijk * sqrt(|C_k| / |C_j|).
    // In this basis each matrix is normal and its transpose belongs to the
    // same family, so characters are common eigenvectors of any Hermitian
    // combination.
    let mut class_elements: Vec<Vec<u32>> = vec![Vec::new(); r];
    for e in group.elements() {
        class_elements[classes.class_of(e)].push(e.0);
    }
    let mut scaled: Vec<DMatrix<f64>> = Vec::with_capacity(r);
    for ci in 0..r {
        let mut pair_counts = vec![vec![0u64; r]; r]; // [k][j]
        for &x in &class_elements[ci] {
            for y in group.elements() {
                let j = classes.class_of(y);
                let k = classes.class_of(group.mul(Element(x), y));
                pair_counts[k][j] += 1;
            }
        }
        let mut b = DMatrix::<f64>::zeros(r, r);
        for k in 0..r {
            for j in 0..r {
                if pair_counts[k][j] == 0 {
                    continue;
                }
                debug_assert_eq!(pair_counts[k][j] % sizes[k], 0);
                let a_ijk = (pair_counts[k][j] / sizes[k]) as f64;
                b[(k, j)] = a_ijk * (sizes[k] as f64 / sizes[j] as f64).sqrt();
            }
        }
        scaled.push(b);
    }

    let mut last_err = Error::SeparationFailure {
        attempts: SEPARATION_ATTEMPTS,
    };
    for attempt in 0..SEPARATION_ATTEMPTS {
        match try_extract(group, &scaled, &sizes, &reps, attempt) {
            Ok(table) => return Ok(table),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn try_extract(
    group: &FiniteGroup,
    scaled: &[DMatrix<f64>],
    sizes: &[u64],
    reps: &[Element],
    attempt: u32,
) -> Result<CharacterTable> {
    let r = scaled.len();
    let n = group.order();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC4A2_7AB1 + attempt as u64);
    // Hermitian combination H = S + iA with S symmetric, A antisymmetric.
    let mut s = DMatrix::<f64>::zeros(r, r);
    let mut a = DMatrix::<f64>::zeros(r, r);
    for b in scaled {
        let ws: f64 = rng.random_range(-1.0..1.0);
        let wa: f64 = rng.random_range(-1.0..1.0);
        s += (b + b.transpose()) * ws;
        a += (b - b.transpose()) * wa;
    }
    // Real symmetric embedding [[S, -A], [A, S]].
    let mut emb = DMatrix::<f64>::zeros(2 * r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            emb[(i, j)] = s[(i, j)];
            emb[(r + i, r + j)] = s[(i, j)];
            emb[(i, r + j)] = -a[(i, j)];
            emb[(r + i, j)] = a[(i, j)];
        }
    }
    let eig = SymmetricEigen::new(emb);
    // Cluster eigenvalues; each complex eigenline appears as a 2-dim real
    // eigenspace, so every cluster must have size exactly 2.
    let mut order: Vec<usize> = (0..2 * r).collect();
    order.sort_by(|&x, &y| {
        eig.eigenvalues[x]
            .partial_cmp(&eig.eigenvalues[y])
            .expect("finite eigenvalues")
    });
    let spread = (eig.eigenvalues.amax()).max(1.0);
    let tol = 1e-8 * spread;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match clusters.last_mut() {
            Some(c)
                if (eig.eigenvalues[idx] - eig.eigenvalues[*c.last().unwrap()]).abs() <= tol =>
            {
                c.push(idx)
            }
            _ => clusters.push(vec![idx]),
        }
    }
    if clusters.len() != r || clusters.iter().any(|c| c.len() != 2) {
        return Err(Error::SeparationFailure {
            attempts: attempt + 1,
        });
    }

    let mut rows: Vec<(u32, Vec<Complex64>)> = Vec::with_capacity(r);
    for cluster in clusters {
        let col = eig.eigenvectors.column(cluster[0]);
        let v: Vec<Complex64> = (0..r).map(|k| Complex64::new(col[k], col[r + k])).collect();
        // Class function f(g_k) = v_k * sqrt(|G| / |C_k|); unit norm since
        // the basis is orthonormal.
        let f: Vec<Complex64> = v
            .iter()
            .zip(sizes)
            .map(|(vk, &ck)| vk * (n as f64 / ck as f64).sqrt())
            .collect();
        let at_one = f[0];
        if at_one.norm() < 1e-8 {
            return Err(Error::SeparationFailure {
                attempts: attempt + 1,
            });
        }
        let phase = at_one.conj() / at_one.norm();
        let chi: Vec<Complex64> = f.iter().map(|x| x * phase).collect();
        let degree_f = chi[0].re;
        let degree = degree_f.round();
        if (degree_f - degree).abs() > ROUNDING_TOL || degree < 1.0 {
            return Err(Error::Residual {
                residual: (degree_f - degree).abs(),
                threshold: ROUNDING_TOL,
                context: format!("character degree {degree_f} is not an integer"),
            });
        }
        rows.push((degree as u32, chi));
    }

    // Canonical order: ascending degree, then descending lexicographic
    // value vector (on a rounding grid), which puts the trivial character
    // first.
    let key = |row: &[Complex64]| -> Vec<(i64, i64)> {
        row.iter()
            .map(|v| (-(v.re * 1e8).round() as i64, -(v.im * 1e8).round() as i64))
            .collect()
    };
    rows.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| key(&x.1).cmp(&key(&y.1))));

    let degrees: Vec<u32> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<Complex64>> = rows.into_iter().map(|(_, v)| v).collect();
    let mut distinct = degrees.clone();
    distinct.dedup();
    let m = if distinct.len() == 2 {
        Some(distinct[1])
    } else {
        None
    };
    let table = CharacterTable {
        group_name: group.name().to_string(),
        group_order: n,
        class_reps: reps.to_vec(),
        class_sizes: sizes.to_vec(),
        degrees,
        values,
        m,
    };

    // Type invariants: sum of squared degrees, orthogonality, trivial row.
    let sum_sq: u64 = table.degrees.iter().map(|&d| (d as u64) * (d as u64)).sum();
    if sum_sq != n {
        return Err(Error::Residual {
            residual: sum_sq as f64 - n as f64,
            threshold: 0.0,
            context: "degree squares do not sum to |G|".into(),
        });
    }
    let res = table.orthogonality_residual();
    if res > ORTHOGONALITY_TOL {
        return Err(Error::Residual {
            residual: res,
            threshold: ORTHOGONALITY_TOL,
            context: "row orthogonality".into(),
        });
    }
    if table.values[0]
        .iter()
        .any(|v| (v - Complex64::new(1.0, 0.0)).norm() > 1e-7)
    {
        return Err(Error::Residual {
            residual: 1.0,
            threshold: 1e-7,
            context: "first row is not the trivial character".into(),
        });
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Fourier decomposition
// ---------------------------------------------------------------------------

/// Exact rational Fourier coefficients of an integer class function, with
/// the numeric residual of the recovery.
#[derive(Debug, Clone)]
pub struct FourierDecomposition {
    coefficients: Vec<BigRational>,
    /// Integer class-function values per class (input being decomposed).
    class_values: Vec<BigInt>,
    residual: f64,
}

impl FourierDecomposition {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn class_values(&self) -> &[BigInt] {
        &self.class_values
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn all_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.denom().is_one())
    }

    pub fn all_non_negative(&self) -> bool {
        self.coefficients.iter().all(|c| !c.numer().is_negative())
    }
}

/// Rounding check shared by the exact-recovery paths: the absolute 1e-6
/// threshold is the contract at desk scale; for magnitudes beyond exact f64
/// integers only a relative check is meaningful.
fn rounding_ok(residual: f64, magnitude: f64) -> bool {
    residual <= ROUNDING_TOL || residual <= 1e-9 * magnitude.abs().max(1.0)
}

fn round_to_bigint(x: f64) -> BigInt {
    BigInt::from_f64(x.round()).expect("finite value")
}

/// Inner products of a fiber distribution against every irreducible
/// character: `N_w^chi = (1/|G|) sum_g N_w(g) conj(chi(g))`, recovered as
/// exact rationals with denominator dividing `|G|`.
pub fn fourier_coefficients(
    dist: &FiberDistribution,
    table: &CharacterTable,
) -> Result<FourierDecomposition> {
    if dist.group_name() != table.group_name || dist.group_order() != table.group_order {
        return Err(Error::GroupMismatch(format!(
            "distribution over `{}`, table over `{}`",
            dist.group_name(),
            table.group_name
        )));
    }
    let class_values: Vec<BigInt> = table
        .class_reps
        .iter()
        .map(|&rep| BigInt::from(dist.count(rep).clone()))
        .collect();
    decompose(table, &class_values, Some(dist.arity()))
}

/// Fourier decomposition of an arbitrary integer class function given by
/// its values on the class representatives (in table class order).
pub fn fourier_of_class_function(
    table: &CharacterTable,
    class_values: &[BigInt],
) -> Result<FourierDecomposition> {
    if class_values.len() != table.class_count() {
        return Err(Error::Domain(format!(
            "class function has {} values for {} classes",
            class_values.len(),
            table.class_count()
        )));
    }
    decompose(table, class_values, None)
}

fn decompose(
    table: &CharacterTable,
    class_values: &[BigInt],
    arity: Option<usize>,
) -> Result<FourierDecomposition> {
    let n = table.group_order;
    let r = table.class_count();
    let vals_f64: Vec<f64> = class_values
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let mut coefficients = Vec::with_capacity(r);
    let mut residual: f64 = 0.0;
    for chi in 0..r {
        // |G| * coefficient = sum_k |C_k| N(rep_k) conj(chi(rep_k)).
        let mut scaled = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0f64;
        for k in 0..r {
            let term = table.values[chi][k].conj() * vals_f64[k] * (table.class_sizes[k] as f64);
            scaled += term;
            magnitude += term.norm();
        }
        let numer = round_to_bigint(scaled.re);
        let err = (scaled - Complex64::new(scaled.re.round(), 0.0)).norm();
        if !rounding_ok(err, magnitude) {
            return Err(Error::Residual {
                residual: err,
                threshold: ROUNDING_TOL,
                context: format!(
                    "Fourier coefficient of character {chi} is not rational with denominator |G|"
                ),
            });
        }
        residual = residual.max(err);
        coefficients.push(Ratio::new(numer, BigInt::from(n)));
    }
    // Reconstruction check: sum_chi c_chi chi(g) must reproduce the class
    // function within 1e-6 relative to the |G|^k mass scale.
    let scale = arity
        .map(|k| (n as f64).powi(k as i32))
        .unwrap_or_else(|| vals_f64.iter().fold(1.0f64, |m, v| m.max(v.abs())));
    for k in 0..r {
        let mut recon = Complex64::new(0.0, 0.0);
        for chi in 0..r {
            let c = coefficients[chi].numer().to_f64().unwrap_or(f64::INFINITY)
                / coefficients[chi].denom().to_f64().unwrap_or(1.0);
            recon += table.values[chi][k] * c;
        }
        let err = (recon - Complex64::new(vals_f64[k], 0.0)).norm();
        if err > 1e-6 * scale.max(1.0) {
            return Err(Error::Residual {
                residual: err,
                threshold: 1e-6 * scale.max(1.0),
                context: format!("Fourier reconstruction mismatch at class {k}"),
            });
        }
        residual = residual.max(err / scale.max(1.0));
    }
    Ok(FourierDecomposition {
        coefficients,
        class_values: class_values.to_vec(),
        residual,
    })
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Verdict of `classify_class_function`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Character,
    GeneralizedCharacter,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Character => "character",
            Classification::GeneralizedCharacter => "generalized_character",
            Classification::Neither => "neither",
        }
    }
}

/// Where a class function came from; word fibers carry the guarantee that
/// integrality of coefficients and invariance under coprime power maps
/// coincide, so disagreement is a hard error for them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFunctionSource {
    WordFiber,
    Synthetic,
}

/// Classifies a decomposed class function as a character (all coefficients
/// non-negative integers, not all zero), a generalized character (all
/// integers), or neither — and cross-validates against the power-map test
/// `N(g) = N(g^e)` for all `e` coprime to `|G|`.
pub fn classify_class_function(
    group: &FiniteGroup,
    table: &CharacterTable,
    f: &FourierDecomposition,
    source: ClassFunctionSource,
) -> Result<Classification> {
    let integral = f.all_integral();
    let non_negative = f.all_non_negative();
    let nonzero = f.coefficients.iter().any(|c| !c.numer().is_zero());
    let class = if integral && non_negative && nonzero {
        Classification::Character
    } else if integral {
        Classification::GeneralizedCharacter
    } else {
        Classification::Neither
    };

    let power_invariant = power_map_invariant(group, table, f.class_values());
    if integral && !power_invariant {
        return Err(Error::CriteriaDisagreement(
            "integral Fourier coefficients but N(g) != N(g^e) for some coprime e".into(),
        ));
    }
    if !integral && power_invariant && source == ClassFunctionSource::WordFiber {
        return Err(Error::CriteriaDisagreement(
            "word fiber invariant under coprime powers but coefficients are not integral".into(),
        ));
    }
    Ok(class)
}

/// True when the class function takes equal values at `g` and `g^e` for all
/// `e` coprime to `|G|` (enumerated modulo the exponent of the group).
pub fn power_map_invariant(
    group: &FiniteGroup,
    table: &CharacterTable,
    class_values: &[BigInt],
) -> bool {
    let classes = group.conjugacy_classes();
    let n = group.order();
    let exponent = group.exponent();
    for e in 2..=exponent {
        if num_integer::Integer::gcd(&e, &n) != 1 {
            continue;
        }
        for (ci, &rep) in table.class_reps.iter().enumerate() {
            let image = group.pow_u64(rep, e);
            let cj = classes.class_of(image);
            // The table's class order is by representative handle, matching
            // the group's class indices.
            if class_values[ci] != class_values[cj] {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Closed forms for products of commutators
// ---------------------------------------------------------------------------

/// For a p-group with exactly two character degrees {1, m}, the word
/// `w_k = [x1,y1]...[xk,yk]` has
/// `N(g) = |G|^2k / |G'| * (1 - 1/m^2k)` for every nontrivial g in G', and
/// `N(1) = |G|^2k - (|G'| - 1) * N(g)` by mass conservation over G'.
pub fn closed_form_wk_two_degree(
    order: u64,
    derived_order: u64,
    m: u64,
    k: usize,
) -> Result<(BigUint, BigUint)> {
    if m < 2 {
        return Err(Error::Domain("m must be at least 2".into()));
    }
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if derived_order < 2 || order % derived_order != 0 {
        return Err(Error::Domain(
            "derived subgroup order must be > 1 and divide |G|".into(),
        ));
    }
    let g2k = pow_biguint(order, 2 * k);
    let m2k = pow_biguint(m, 2 * k);
    let numer = &g2k * (&m2k - BigUint::one());
    let denom = BigUint::from(derived_order) * &m2k;
    if (&numer % &denom) != BigUint::zero() {
        return Err(Error::Domain(
            "parameters do not produce an integer fiber size".into(),
        ));
    }
    let non_identity = numer / denom;
    let identity = &g2k - BigUint::from(derived_order - 1) * &non_identity;
    Ok((identity, non_identity))
}

/// `N_{w_k}(g) = sum_chi (|G|/chi(1))^(2k-1) chi(g)`, rounded exactly.
///
/// Defined for every finite group with a computed table; the result is a
/// full fiber distribution and must conserve mass, which doubles as the
/// integrality check.
pub fn frobenius_count_wk(
    group: &FiniteGroup,
    table: &CharacterTable,
    k: usize,
) -> Result<FiberDistribution> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if group.name() != table.group_name || group.order() != table.group_order {
        return Err(Error::GroupMismatch(format!(
            "table over `{}` does not match group `{}`",
            table.group_name,
            group.name()
        )));
    }
    let n = group.order();
    let r = table.class_count();
    let mut class_counts: Vec<BigUint> = Vec::with_capacity(r);
    for class in 0..r {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0f64;
        for chi in 0..r {
            let weight = (n as f64 / table.degrees[chi] as f64).powi(2 * k as i32 - 1);
            let term = table.values[chi][class] * weight;
            acc += term;
            magnitude += term.norm();
        }
        let rounded = acc.re.round();
        let err = (acc - Complex64::new(rounded, 0.0)).norm();
        if !rounding_ok(err, magnitude) || rounded < 0.0 {
            return Err(Error::Residual {
                residual: err,
                threshold: ROUNDING_TOL,
                context: format!("Frobenius sum at class {class} does not round to a count"),
            });
        }
        class_counts.push(
            round_to_bigint(rounded)
                .to_biguint()
                .expect("non-negative count"),
        );
    }
    let classes = group.conjugacy_classes();
    let counts: Vec<BigUint> = group
        .elements()
        .map(|e| class_counts[classes.class_of(e)].clone())
        .collect();
    let dist = FiberDistribution::new(group, 2 * k, counts, CountMethod::FrobeniusSum, 0);
    // Mass conservation is exact; failure means the rounding went wrong.
    let total: BigUint = dist.counts().iter().sum();
    if total != pow_biguint(n, 2 * k) {
        return Err(Error::Residual {
            residual: 0.0,
            threshold: 0.0,
            context: "Frobenius counts do not sum to |G|^2k".into(),
        });
    }
    Ok(dist)
}

/// Coefficient map for reporting: character index -> exact rational as a
/// `(numerator, denominator)` string pair.
pub fn coefficient_strings(f: &FourierDecomposition) -> BTreeMap<usize, String> {
    f.coefficients()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            (i, s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::{count_brute_force, CountOptions};
    use crate::group::catalog::catalog;
    use crate::word::parse_word;

    fn table_of(name: &str) -> (FiniteGroup, CharacterTable) {
        let g = catalog(name).unwrap();
        let t = character_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn q8_degrees() {
        let (_, t) = table_of("q8");
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert!(t.orthogonality_residual() < 1e-9);
        assert_eq!(t.two_degree_m(), Some(2));
    }

    #[test]
    fn d4_degrees() {
        let (_, t) = table_of("d4");
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn z4_is_dual_group() {
        let (_, t) = table_of("cyclic(4)");
        assert_eq!(t.degrees(), &[1, 1, 1, 1]);
        // Every value is a 4th root of unity.
        for chi in 0..4 {
            for k in 0..4 {
                let v = t.value(chi, k);
                assert!((v.norm() - 1.0).abs() < 1e-9);
                let fourth = v.powu(4);
                assert!((fourth - Complex64::new(1.0, 0.0)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn heisenberg3_degrees() {
        let (_, t) = table_of("heisenberg(3)");
        let ones = t.degrees().iter().filter(|&&d| d == 1).count();
        let threes = t.degrees().iter().filter(|&&d| d == 3).count();
        assert_eq!((ones, threes), (9, 2));
        assert_eq!(t.class_count(), 11);
    }

    #[test]
    fn s3_table() {
        let g = crate::testsupport::s3();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
    }

    #[test]
    fn first_row_trivial() {
        for name in ["q8", "heisenberg(3)", "cyclic(6)", "modular16"] {
            let (_, t) = table_of(name);
            for k in 0..t.class_count() {
                assert!((t.value(0, k) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn q8_commutator_coefficients() {
        let (g, t) = table_of("q8");
        let w = parse_word("[x1,x2]", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        let f = fourier_coefficients(&d, &t).unwrap();
        let coeffs: Vec<String> = f.coefficients().iter().map(|c| c.to_string()).collect();
        assert_eq!(coeffs, vec!["8", "8", "8", "8", "4"]);
        assert_eq!(
            classify_class_function(&g, &t, &f, ClassFunctionSource::WordFiber).unwrap(),
            Classification::Character
        );
    }

    #[test]
    fn q8_square_is_generalized_but_not_character() {
        let (g, t) = table_of("q8");
        let w = parse_word("x1^2", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        let f = fourier_coefficients(&d, &t).unwrap();
        // Linear characters contribute 1 each; the degree-2 character -1.
        let coeffs: Vec<String> = f.coefficients().iter().map(|c| c.to_string()).collect();
        assert_eq!(coeffs, vec!["1", "1", "1", "1", "-1"]);
        assert_eq!(
            classify_class_function(&g, &t, &f, ClassFunctionSource::WordFiber).unwrap(),
            Classification::GeneralizedCharacter
        );
    }

    #[test]
    fn delta_identity_on_z2_is_neither() {
        let (g, t) = table_of("cyclic(2)");
        let delta = vec![BigInt::one(), BigInt::zero()];
        let f = fourier_of_class_function(&t, &delta).unwrap();
        assert_eq!(
            f.coefficients()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            vec!["1/2", "1/2"]
        );
        assert_eq!(
            classify_class_function(&g, &t, &f, ClassFunctionSource::Synthetic).unwrap(),
            Classification::Neither
        );
    }

    #[test]
    fn trivial_group_coefficient_is_count() {
        let g = catalog("cyclic(1)").unwrap();
        let t = character_table(&g).unwrap();
        let w = parse_word("x1", None).unwrap();
        let d = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        let f = fourier_coefficients(&d, &t).unwrap();
        assert_eq!(f.coefficients()[0].to_string(), "1");
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_wk_two_degree(8, 2, 2, 1).unwrap(),
            (BigUint::from(40u32), BigUint::from(24u32))
        );
        assert_eq!(
            closed_form_wk_two_degree(27, 3, 3, 1).unwrap(),
            (BigUint::from(297u32), BigUint::from(216u32))
        );
        assert_eq!(
            closed_form_wk_two_degree(8, 2, 2, 2).unwrap(),
            (BigUint::from(2176u32), BigUint::from(1920u32))
        );
        assert!(closed_form_wk_two_degree(8, 2, 1, 1).is_err());
        assert!(closed_form_wk_two_degree(8, 3, 2, 1).is_err());
    }

    #[test]
    fn frobenius_matches_brute_force() {
        let (g, t) = table_of("q8");
        let d = frobenius_count_wk(&g, &t, 1).unwrap();
        let w = parse_word("[x1,x2]", Some(2)).unwrap();
        let b = count_brute_force(&g, &w, &CountOptions::default()).unwrap();
        assert_eq!(d, b);
    }

    #[test]
    fn frobenius_heisenberg_identity_count() {
        let (g, t) = table_of("heisenberg(3)");
        let d = frobenius_count_wk(&g, &t, 1).unwrap();
        assert_eq!(*d.count(g.identity()), BigUint::from(297u32));
    }

    #[test]
    fn frobenius_abelian_point_mass() {
        let (g, t) = table_of("cyclic(6)");
        let d = frobenius_count_wk(&g, &t, 1).unwrap();
        assert_eq!(*d.count(g.identity()), BigUint::from(36u32));
        assert_eq!(d.support().len(), 1);
    }
}
