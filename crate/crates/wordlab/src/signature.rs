//! Class-2 signatures and canonical word representatives.
//!
//! In a group of nilpotency class at most 2, commutators are central and
//! bilinear, so collecting the generators of a word `w` into sorted order
//! shows that `w` evaluates like
//!
//! ```text
//!     x1^a1 ... xk^ak * prod_{i<j} [xi,xj]^{b_ij}
//! ```
//!
//! The pair `(a, B)` is the class-2 signature. Commutator-only signatures
//! (`a = 0`) are reduced to a canonical block form under unimodular
//! congruence of the antisymmetric completion of `B`; signatures with
//! `a != 0` get their exponent vector reduced to `(gcd, 0, ..., 0)`, which
//! is a partial normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd_all, is_prime, valuation};
use crate::error::{Error, Result};
use crate::word::{parse_word, Word};

/// Square integer matrix used for congruence witnesses.
pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Multiplies two square `IntMatrix` values.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn mat_transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].clone()).collect())
        .collect()
}

/// `U * M * U^T` for square matrices.
pub fn congruence(u: &IntMatrix, m: &IntMatrix) -> IntMatrix {
    mat_mul(&mat_mul(u, m), &mat_transpose(u))
}

/// The image of a word in the free class-2 group: exponent sums `a` and the
/// strict upper-triangular commutator matrix `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2Signature {
    arity: usize,
    a: Vec<BigInt>,
    b: IntMatrix,
}

impl Class2Signature {
    /// Zero signature (identity word).
    pub fn zero(arity: usize) -> Self {
        Class2Signature {
            arity,
            a: vec![BigInt::zero(); arity],
            b: vec![vec![BigInt::zero(); arity]; arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Exponent sums, one per generator.
    pub fn exponent_sums(&self) -> &[BigInt] {
        &self.a
    }

    /// Commutator exponent of `[x_{i+1}, x_{j+1}]` for `i < j` (0-based).
    pub fn commutator_exponent(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < j && j < self.arity);
        &self.b[i][j]
    }

    /// The strict upper-triangular commutator matrix.
    pub fn commutator_matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn has_zero_exponent_sums(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn has_zero_commutators(&self) -> bool {
        self.b.iter().all(|row| row.iter().all(|x| x.is_zero()))
    }

    /// Antisymmetric completion `B - B^T`.
    pub fn antisymmetric(&self) -> IntMatrix {
        let k = self.arity;
        let mut m = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            for j in (i + 1)..k {
                m[i][j] = self.b[i][j].clone();
                m[j][i] = -self.b[i][j].clone();
            }
        }
        m
    }

    /// The word `x1^a1 ... xk^ak [x1,x2]^b12 ...` realizing this signature.
    pub fn signature_word(&self) -> Result<Word> {
        let mut w = Word::identity(self.arity);
        for (i, ai) in self.a.iter().enumerate() {
            if !ai.is_zero() {
                w = w.concat(&Word::from_letters(self.arity, [(i, ai.clone())])?)?;
            }
        }
        for i in 0..self.arity {
            for j in (i + 1)..self.arity {
                if self.b[i][j].is_zero() {
                    continue;
                }
                let xi = Word::from_letters(self.arity, [(i, BigInt::one())])?;
                let xj = Word::from_letters(self.arity, [(j, BigInt::one())])?;
                let c = xi.commutator(&xj)?.repeat(&self.b[i][j])?;
                w = w.concat(&c)?;
            }
        }
        w.with_arity(self.arity)
    }

    /// Signature of the concatenation of two words with these signatures.
    pub fn concat(&self, other: &Class2Signature) -> Class2Signature {
        assert_eq!(self.arity, other.arity, "signature arity mismatch");
        let mut out = self.clone();
        for i in 0..self.arity {
            out.a[i] += &other.a[i];
            for j in (i + 1)..self.arity {
                // Moving the second word's xi past the first word's xj
                // (j > i) contributes [xi,xj]^(-a1[j] * a2[i]).
                out.b[i][j] += &other.b[i][j];
                out.b[i][j] -= &self.a[j] * &other.a[i];
            }
        }
        out
    }

    /// Applies the change of variables `x_i -> prod_j x_j^(U[j][i])` induced
    /// by a unimodular matrix `U`; the result is the signature of the
    /// substituted word. Exponent sums transform as `a -> U a`.
    pub fn substitute(&self, u: &IntMatrix) -> Class2Signature {
        let k = self.arity;
        assert_eq!(u.len(), k, "witness dimension mismatch");
        // Power part: collect y_1^{a_1} ... y_k^{a_k} where y_i has exponent
        // vector equal to column i of U.
        let mut acc = vec![BigInt::zero(); k];
        let mut b = vec![vec![BigInt::zero(); k]; k];
        for (i, e) in self.a.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let col: Vec<BigInt> = (0..k).map(|r| u[r][i].clone()).collect();
            // y_i^e alone contributes e(e-1)/2 internal transpositions.
            let c2 = (e * (e - BigInt::one())) / BigInt::from(2);
            for s in 0..k {
                for t in (s + 1)..k {
                    b[s][t] -= &c2 * (&col[t] * &col[s]);
                    // Collecting past the accumulated prefix.
                    b[s][t] -= &acc[t] * (e * &col[s]);
                }
            }
            for r in 0..k {
                acc[r] += e * &col[r];
            }
        }
        // Commutator part transforms by congruence of the antisymmetric form.
        let m = congruence(u, &self.antisymmetric());
        for s in 0..k {
            for t in (s + 1)..k {
                b[s][t] += &m[s][t];
            }
        }
        Class2Signature {
            arity: k,
            a: acc,
            b,
        }
    }
}

/// Computes the class-2 signature of a word by the collection process.
///
/// For every class-2 group and tuple, evaluating the word equals evaluating
/// `signature_word()` of its signature; the test suite checks this
/// exhaustively over the catalog.
pub fn class2_signature(w: &Word) -> Class2Signature {
    let k = w.arity();
    let mut sig = Class2Signature::zero(k);
    // running[j] = exponent sum of x_j in the prefix scanned so far.
    let mut running = vec![BigInt::zero(); k];
    for l in w.letters() {
        for j in (l.var + 1)..k {
            if !running[j].is_zero() {
                sig.b[l.var][j] -= &running[j] * &l.exp;
            }
        }
        running[l.var] += &l.exp;
    }
    sig.a = running;
    sig
}

/// Canonical or partially canonical form of a signature, together with the
/// unimodular change-of-variables witness that produces it.
#[derive(Debug, Clone)]
pub enum NormalForm {
    /// Fully reduced commutator-only form
    /// `[x1,x2]^(p^s1) [x3,x4]^(p^s2) ...` with `s1 <= s2 <= ...`.
    Type1 {
        prime: u64,
        /// p-adic valuations of the paired elementary divisors.
        exponents: Vec<u32>,
        /// The positive block divisors `d1 | d2 | ...` themselves.
        divisors: Vec<BigInt>,
        witness: IntMatrix,
    },
    /// Exponent vector reduced to `(d, 0, ..., 0)`; the commutator part is
    /// carried along untouched beyond the change of variables. This is not
    /// claimed to be a full canonical form.
    Type2Partial {
        prime: u64,
        s1: u32,
        residual: Class2Signature,
        witness: IntMatrix,
    },
}

impl NormalForm {
    pub fn witness(&self) -> &IntMatrix {
        match self {
            NormalForm::Type1 { witness, .. } => witness,
            NormalForm::Type2Partial { witness, .. } => witness,
        }
    }

    /// The word this normal form stands for, with the original arity.
    pub fn canonical_word(&self) -> Result<Word> {
        match self {
            NormalForm::Type1 {
                prime,
                exponents,
                witness,
                ..
            } => {
                let arity = witness.len();
                let mut w = Word::identity(arity);
                for (t, s) in exponents.iter().enumerate() {
                    let e = BigInt::from(*prime).pow(*s);
                    let xi = Word::from_letters(arity, [(2 * t, BigInt::one())])?;
                    let xj = Word::from_letters(arity, [(2 * t + 1, BigInt::one())])?;
                    w = w.concat(&xi.commutator(&xj)?.repeat(&e)?)?;
                }
                w.with_arity(arity)
            }
            NormalForm::Type2Partial { residual, .. } => residual.signature_word(),
        }
    }

    /// Exponent list: `s_i` for type 1, `[s_1]` for the partial type 2.
    pub fn exponents(&self) -> Vec<u32> {
        match self {
            NormalForm::Type1 { exponents, .. } => exponents.clone(),
            NormalForm::Type2Partial { s1, .. } => vec![*s1],
        }
    }

    /// The canonical word in bracketed text, e.g. `[x1,x2]^2 [x3,x4]^4`;
    /// parses back to `canonical_word()`.
    pub fn canonical_text(&self) -> String {
        let commutator = |i: usize, j: usize, e: &BigInt| -> String {
            if e.is_one() {
                format!("[x{},x{}]", i + 1, j + 1)
            } else {
                format!("[x{},x{}]^{}", i + 1, j + 1, e)
            }
        };
        match self {
            NormalForm::Type1 {
                prime, exponents, ..
            } => exponents
                .iter()
                .enumerate()
                .map(|(t, s)| commutator(2 * t, 2 * t + 1, &BigInt::from(*prime).pow(*s)))
                .collect::<Vec<_>>()
                .join(" "),
            NormalForm::Type2Partial { residual, .. } => {
                let mut parts = Vec::new();
                for (i, a) in residual.exponent_sums().iter().enumerate() {
                    if !a.is_zero() {
                        if a.is_one() {
                            parts.push(format!("x{}", i + 1));
                        } else {
                            parts.push(format!("x{}^{}", i + 1, a));
                        }
                    }
                }
                for i in 0..residual.arity() {
                    for j in (i + 1)..residual.arity() {
                        let e = residual.commutator_exponent(i, j);
                        if !e.is_zero() {
                            parts.push(commutator(i, j, e));
                        }
                    }
                }
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join(" ")
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Skew normal form under unimodular congruence
// ---------------------------------------------------------------------------

/// Working state: antisymmetric `m` and accumulated witness `u` with
/// `m = u * m_orig * u^T` at every step. All operations are paired
/// row/column operations, so `u` stays unimodular and `m` antisymmetric.
struct Skew {
    n: usize,
    m: IntMatrix,
    u: IntMatrix,
}

impl Skew {
    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        for row in &mut self.m {
            row.swap(i, j);
        }
        self.u.swap(i, j);
    }

    fn negate(&mut self, i: usize) {
        for v in &mut self.m[i] {
            *v = -std::mem::take(v);
        }
        for row in &mut self.m {
            row[i] = -std::mem::take(&mut row[i]);
        }
        for v in &mut self.u[i] {
            *v = -std::mem::take(v);
        }
    }

    /// row_j += c * row_i paired with col_j += c * col_i.
    fn add(&mut self, i: usize, j: usize, c: &BigInt) {
        assert_ne!(i, j);
        if c.is_zero() {
            return;
        }
        for t in 0..self.n {
            let v = &self.m[i][t] * c;
            self.m[j][t] += v;
        }
        for t in 0..self.n {
            let v = &self.m[t][i] * c;
            self.m[t][j] += v;
        }
        for t in 0..self.u[i].len() {
            let v = &self.u[i][t] * c;
            self.u[j][t] += v;
        }
    }
}

/// Reduces an antisymmetric integer matrix to block form
/// `diag([[0, d1], [-d1, 0]], [[0, d2], [-d2, 0]], ...)` with
/// `0 < d1 | d2 | ...` under unimodular congruence. Returns the block
/// divisors and the witness `U` with `U M U^T` in block form.
pub fn skew_normal_form(m_in: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let n = m_in.len();
    let mut st = Skew {
        n,
        m: m_in.clone(),
        u: identity_matrix(n),
    };
    let mut blocks = Vec::new();
    let mut k = 0;
    'blocks: while k + 1 < n {
        // Pick the minimal-magnitude nonzero entry as pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..n {
            for j in (i + 1)..n {
                if !st.m[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| st.m[i][j].abs() < st.m[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((mut i, mut j)) = pivot else {
            break 'blocks;
        };
        if i != k {
            st.swap(i, k);
            if j == k {
                j = i;
            }
            i = k;
        }
        let _ = i;
        st.swap(j, k + 1);
        if st.m[k][k + 1].is_negative() {
            st.negate(k + 1);
        }
        'clear: loop {
            let d = st.m[k][k + 1].clone();
            debug_assert!(d.is_positive());
            for t in (k + 2)..n {
                // Clear M[t][k+1] with row k (M[k][k+1] = d).
                let v = st.m[t][k + 1].clone();
                if !v.is_zero() {
                    let (q, r) = v.div_mod_floor(&d);
                    st.add(k, t, &-q);
                    if !r.is_zero() {
                        // Remainder becomes a strictly smaller pivot.
                        st.swap(t, k);
                        if st.m[k][k + 1].is_negative() {
                            st.negate(k + 1);
                        }
                        continue 'clear;
                    }
                }
                // Clear M[t][k] with row k+1 (M[k+1][k] = -d).
                let v = st.m[t][k].clone();
                if !v.is_zero() {
                    let (q, r) = v.div_mod_floor(&d);
                    st.add(k + 1, t, &q);
                    if !r.is_zero() {
                        st.swap(t, k + 1);
                        if st.m[k][k + 1].is_negative() {
                            st.negate(k + 1);
                        }
                        continue 'clear;
                    }
                }
            }
            // Rows k, k+1 are clean; enforce the divisibility chain.
            for s in (k + 2)..n {
                for t in (s + 1)..n {
                    if !(&st.m[s][t] % &d).is_zero() {
                        // Fold the offending row into row k and re-clear.
                        st.add(s, k, &BigInt::one());
                        continue 'clear;
                    }
                }
            }
            break 'clear;
        }
        blocks.push(st.m[k][k + 1].clone());
        k += 2;
    }
    debug_assert!(
        blocks.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
        "divisor chain violated"
    );
    (blocks, st.u)
}

/// Reduces a commutator-only signature (`a = 0`) to its canonical type-1
/// form at the prime `p`.
///
/// The canonical word `[x1,x2]^(p^s1) [x3,x4]^(p^s2) ...` has the same fiber
/// distribution as the input on every finite p-group of nilpotency class at
/// most 2; prime-to-p parts of the elementary divisors are discarded.
pub fn reduce_type1(sig: &Class2Signature, p: u64) -> Result<NormalForm> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    if !sig.has_zero_exponent_sums() {
        return Err(Error::Domain(
            "type-1 reduction requires zero exponent sums".into(),
        ));
    }
    if sig.has_zero_commutators() {
        return Err(Error::Domain(
            "type-1 reduction requires a nonzero commutator matrix".into(),
        ));
    }
    let (divisors, witness) = skew_normal_form(&sig.antisymmetric());
    let exponents: Vec<u32> = divisors.iter().map(|d| valuation(d, p)).collect();
    debug_assert!(exponents.windows(2).all(|w| w[0] <= w[1]));
    Ok(NormalForm::Type1 {
        prime: p,
        exponents,
        divisors,
        witness,
    })
}

/// Reduces the exponent vector of a signature with `a != 0` to
/// `(d, 0, ..., 0)` where `d = gcd(a)`, reporting `s1 = v_p(d)` and the
/// transformed commutator part. This is deliberately partial: the residual
/// commutator matrix is not canonicalized further.
pub fn normalize_type2_partial(sig: &Class2Signature, p: u64) -> Result<NormalForm> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    if sig.has_zero_exponent_sums() {
        return Err(Error::Domain(
            "type-2 normalization requires a nonzero exponent vector".into(),
        ));
    }
    let k = sig.arity();
    let mut a: Vec<BigInt> = sig.exponent_sums().to_vec();
    let mut u = identity_matrix(k);
    // Row-reduce a to (d, 0, ..., 0) by unimodular row operations.
    let row_add = |u: &mut IntMatrix, a: &mut Vec<BigInt>, i: usize, j: usize, c: &BigInt| {
        for t in 0..k {
            let v = &u[i][t] * c;
            u[j][t] += v;
        }
        let v = &a[i] * c;
        a[j] += v;
    };
    for i in 1..k {
        while !a[i].is_zero() {
            if a[0].is_zero() {
                u.swap(0, i);
                a.swap(0, i);
                continue;
            }
            let q = a[i].div_floor(&a[0]);
            row_add(&mut u, &mut a, 0, i, &-q);
            if !a[i].is_zero() {
                u.swap(0, i);
                a.swap(0, i);
            }
        }
    }
    if a[0].is_negative() {
        for t in 0..k {
            u[0][t] = -std::mem::take(&mut u[0][t]);
        }
        a[0] = -std::mem::take(&mut a[0]);
    }
    let d = a[0].clone();
    let residual = sig.substitute(&u);
    debug_assert_eq!(residual.exponent_sums()[0], d);
    debug_assert!(residual.exponent_sums()[1..].iter().all(|x| x.is_zero()));
    Ok(NormalForm::Type2Partial {
        prime: p,
        s1: valuation(&d, p),
        residual,
        witness: u,
    })
}

/// gcd of all exponent sums of a signature (0 when all are zero).
pub fn exponent_gcd(sig: &Class2Signature) -> BigInt {
    gcd_all(sig.exponent_sums())
}

/// Parses a word and computes its signature in one step.
pub fn signature_of(text: &str) -> Result<Class2Signature> {
    Ok(class2_signature(&parse_word(text, None)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testsupport::{bareiss_det, smith_normal_form};
    use crate::word::parse_word;
    use proptest::prelude::*;

    fn sig(text: &str) -> Class2Signature {
        signature_of(text).unwrap()
    }

    fn i(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn commutator_signature() {
        let s = sig("[x1,x2]");
        assert!(s.has_zero_exponent_sums());
        assert_eq!(*s.commutator_exponent(0, 1), i(1));
    }

    #[test]
    fn v2_equals_commutator_in_class_2() {
        let s = sig("x1 x2 x1^-1 x2^-1");
        assert_eq!(s.exponent_sums(), &[i(0), i(0)]);
        assert_eq!(*s.commutator_exponent(0, 1), i(1));
    }

    #[test]
    fn signature_form_word_is_fixed_point() {
        let s = sig("[x1,x2]^3 x1^2");
        assert_eq!(s.exponent_sums(), &[i(2), i(0)]);
        assert_eq!(*s.commutator_exponent(0, 1), i(3));
        // The signature word of the signature reproduces the signature.
        let w = s.signature_word().unwrap();
        assert_eq!(class2_signature(&w), s);
    }

    #[test]
    fn identity_signature() {
        let w = parse_word("1", Some(2)).unwrap();
        let s = class2_signature(&w);
        assert!(s.has_zero_exponent_sums());
        assert!(s.has_zero_commutators());
    }

    #[test]
    fn inversion_inverts_signature() {
        for text in crate::corpus::WORDS {
            let w = parse_word(text, None).unwrap();
            let s = class2_signature(&w);
            let si = class2_signature(&w.invert());
            let k = w.arity();
            for t in 0..k {
                assert_eq!(s.exponent_sums()[t], -si.exponent_sums()[t].clone());
            }
            // The signature of the inverse is the class-2 group inverse.
            let prod = s.concat(&si);
            assert!(prod.has_zero_exponent_sums(), "word {text}");
            assert!(prod.has_zero_commutators(), "word {text}");
            // For commutator-only words the B-matrix negates exactly; this
            // is what identifies invert([x1,x2]) with [x2,x1].
            if s.has_zero_exponent_sums() {
                let m = s.antisymmetric();
                let mi = si.antisymmetric();
                for r in 0..k {
                    for c in 0..k {
                        assert_eq!(m[r][c], -mi[r][c].clone(), "word {text}");
                    }
                }
            }
        }
    }

    #[test]
    fn type1_single_blocks() {
        let nf = reduce_type1(&sig("[x1,x2]^2"), 2).unwrap();
        assert_eq!(nf.exponents(), vec![1]);
        let nf = reduce_type1(&sig("[x1,x2]^3"), 2).unwrap();
        assert_eq!(nf.exponents(), vec![0]);
        assert_eq!(
            nf.canonical_word().unwrap(),
            parse_word("[x1,x2]", None).unwrap()
        );
    }

    #[test]
    fn type1_paired_divisors() {
        let nf = reduce_type1(&sig("[x1,x2]^6 [x3,x4]^4"), 2).unwrap();
        match &nf {
            NormalForm::Type1 {
                divisors, witness, ..
            } => {
                assert_eq!(divisors, &[i(2), i(12)]);
                assert_eq!(nf.exponents(), vec![1, 2]);
                // The witness is unimodular and reproduces the block form.
                assert_eq!(bareiss_det(witness).abs(), i(1));
                let s = sig("[x1,x2]^6 [x3,x4]^4");
                let c = congruence(witness, &s.antisymmetric());
                for r in 0..4 {
                    for t in 0..4 {
                        let expected = match (r, t) {
                            (0, 1) => i(2),
                            (1, 0) => i(-2),
                            (2, 3) => i(12),
                            (3, 2) => i(-12),
                            _ => i(0),
                        };
                        assert_eq!(c[r][t], expected);
                    }
                }
                // Independent oracle: plain Smith normal form of B - B^T has
                // the paired elementary divisors (2, 2, 12, 12).
                let snf = smith_normal_form(&s.antisymmetric());
                assert_eq!(snf, vec![i(2), i(2), i(12), i(12)]);
            }
            _ => panic!("expected type-1 form"),
        }
    }

    #[test]
    fn type1_rejects_bad_input() {
        assert!(reduce_type1(&sig("x1^2"), 2).is_err());
        assert!(reduce_type1(&sig("1"), 2).is_err());
        assert!(reduce_type1(&sig("[x1,x2]"), 4).is_err());
    }

    #[test]
    fn type2_examples() {
        // a = (2, 0), B = 0 at p = 2.
        let s2 = class2_signature(&parse_word("x1^2", Some(2)).unwrap());
        let nf = normalize_type2_partial(&s2, 2).unwrap();
        match &nf {
            NormalForm::Type2Partial { s1, residual, .. } => {
                assert_eq!(*s1, 1);
                assert!(residual.has_zero_commutators());
                assert_eq!(residual.exponent_sums(), &[i(2), i(0)]);
            }
            _ => panic!(),
        }
        // a = (4, 6): gcd 2, s1 = 1 at p = 2.
        let s = sig("x1^4 x2^6");
        let nf = normalize_type2_partial(&s, 2).unwrap();
        match &nf {
            NormalForm::Type2Partial {
                s1,
                residual,
                witness,
                ..
            } => {
                assert_eq!(*s1, 1);
                assert_eq!(residual.exponent_sums()[0], i(2));
                assert!(residual.exponent_sums()[1].is_zero());
                assert_eq!(bareiss_det(witness).abs(), i(1));
            }
            _ => panic!(),
        }
        // a = (3, 0) with b12 = 1 at p = 3 keeps its commutator residual.
        let s = sig("x1^3 [x1,x2]");
        let nf = normalize_type2_partial(&s, 3).unwrap();
        match &nf {
            NormalForm::Type2Partial { s1, residual, .. } => {
                assert_eq!(*s1, 1);
                assert_eq!(*residual.commutator_exponent(0, 1), i(1));
            }
            _ => panic!(),
        }
        assert!(normalize_type2_partial(&sig("[x1,x2]"), 2).is_err());
    }

    #[test]
    fn substitution_matches_word_substitution() {
        // Substituting x1 -> x1 x2^2, x2 -> x2 into the word directly must
        // agree with the algebraic signature substitution.
        let w = parse_word("x1^2 [x1,x2] x2^-1", None).unwrap();
        let s = class2_signature(&w);
        // U columns: phi(x1) = x1, phi(x2) = x1^2 x2  (example unimodular U)
        let u = vec![vec![i(1), i(2)], vec![i(0), i(1)]];
        let transformed = s.substitute(&u);
        // Build the substituted word textually: x1 -> x1, x2 -> x1^2 x2.
        let y1 = parse_word("x1", Some(2)).unwrap();
        let y2 = parse_word("x1^2 x2", None).unwrap();
        let mut out = Word::identity(2);
        for l in w.letters() {
            let base = if l.var == 0 { &y1 } else { &y2 };
            out = out.concat(&base.repeat(&l.exp).unwrap()).unwrap();
        }
        assert_eq!(class2_signature(&out), transformed);
    }

    proptest! {
        #[test]
        fn prop_signature_concat_is_homomorphic(
            raw1 in prop::collection::vec((0usize..3, -3i64..=3), 0..8),
            raw2 in prop::collection::vec((0usize..3, -3i64..=3), 0..8),
        ) {
            let u = Word::from_letters(3, raw1.into_iter().map(|(v, e)| (v, i(e)))).unwrap();
            let v = Word::from_letters(3, raw2.into_iter().map(|(v, e)| (v, i(e)))).unwrap();
            let su = class2_signature(&u);
            let sv = class2_signature(&v);
            let sw = class2_signature(&u.concat(&v).unwrap());
            prop_assert_eq!(su.concat(&sv), sw);
        }

        #[test]
        fn prop_skew_normal_form_is_sound(
            entries in prop::collection::vec(-9i64..=9, 15),
            dim in 2usize..=6,
        ) {
            // Random antisymmetric matrix from the upper-triangle entries.
            let mut m = vec![vec![BigInt::zero(); dim]; dim];
            let mut it = entries.into_iter().cycle();
            for r in 0..dim {
                for c in (r + 1)..dim {
                    let v = i(it.next().unwrap());
                    m[r][c] = v.clone();
                    m[c][r] = -v;
                }
            }
            let (blocks, u) = skew_normal_form(&m);
            prop_assert_eq!(bareiss_det(&u).abs(), i(1));
            // Divisor chain.
            for w in blocks.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            // Congruence reproduces the block diagonal.
            let c = congruence(&u, &m);
            for r in 0..dim {
                for t in 0..dim {
                    let expected = if r + 1 == t && r % 2 == 0 && r / 2 < blocks.len() {
                        blocks[r / 2].clone()
                    } else if t + 1 == r && t % 2 == 0 && t / 2 < blocks.len() {
                        -blocks[t / 2].clone()
                    } else {
                        BigInt::zero()
                    };
                    prop_assert_eq!(&c[r][t], &expected);
                }
            }
            // Pairing against the independent Smith normal form oracle.
            let snf = smith_normal_form(&m);
            let mut paired = Vec::new();
            for b in &blocks {
                paired.push(b.clone());
                paired.push(b.clone());
            }
            let nonzero: Vec<BigInt> = snf.into_iter().filter(|x| !x.is_zero()).collect();
            prop_assert_eq!(paired, nonzero);
        }
    }
}
