//! Exact Smith normal form over the integers and what it says about finitely
//! generated abelian groups `Z^r / <rows>`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::group::named::factorize;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix with `cols` columns from its rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::InputParse(format!(
                    "matrix row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.at(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            *self.at(dst, j) += v;
        }
    }

    /// `col[dst] += q * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(self.at(i, j));
            *self.at(i, j) = v;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Integers that fit in `i64` serialize as JSON numbers, larger ones as
/// decimal strings.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonRow<'a>(&'a [BigInt]);

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&JsonInt(x))?;
        }
        seq.end()
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&JsonRow(self.row(i)))?;
        }
        seq.end()
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero part of the diagonal, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// Rechecks every defining property against the input matrix.
    pub fn verify(&self, a: &IntegerMatrix) -> std::result::Result<(), String> {
        if self.u.mul(a).mul(&self.v) != self.d {
            return Err("U·A·V differs from D".into());
        }
        if !self.d.is_diagonal() {
            return Err("D is not diagonal".into());
        }
        for (name, m) in [("U", &self.u), ("V", &self.v)] {
            if m.determinant().abs() != BigInt::one() {
                return Err(format!("{name} is not unimodular"));
            }
        }
        let diag = self.d.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return Err("negative diagonal entry".into());
        }
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !ok {
                return Err(format!("divisibility chain broken at {} | {}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Smallest nonzero |entry| in the block `[t.., t..]`, ties broken by (row, col).
fn pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with the result rechecked; a failed recheck is an
/// internal error and panics.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    match checked_smith_normal_form(a) {
        Ok(snf) => snf,
        Err(e) => panic!("Smith normal form self-check failed: {e}"),
    }
}

/// Smith normal form, or the first defining property the result violates.
pub fn checked_smith_normal_form(a: &IntegerMatrix) -> std::result::Result<SmithDecomposition, String> {
    let (m, n) = (a.rows, a.cols);
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut d = a.clone();
    for t in 0..m.min(n) {
        while let Some((pi, pj)) = pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = -d.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = -d.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &p).is_zero()));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let snf = SmithDecomposition { u, d, v };
    snf.verify(a)?;
    Ok(snf)
}

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | ... | tk`, each `ti > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianType {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianType {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl Serialize for FgAbelianType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FgAbelianType", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &JsonRow(&self.torsion))?;
        st.end()
    }
}

/// Invariants of `Z^ambient_rank / <rows of generators>`.
pub fn quotient_invariants(ambient_rank: usize, generators: &IntegerMatrix) -> Result<FgAbelianType> {
    if generators.cols() != ambient_rank {
        return Err(Error::InputParse(format!(
            "generators have {} columns, ambient rank is {ambient_rank}",
            generators.cols()
        )));
    }
    let snf = smith_normal_form(generators);
    let factors = snf.invariant_factors();
    Ok(FgAbelianType {
        free_rank: ambient_rank - factors.len(),
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    })
}

/// A subgroup `I` of `Z^r` is prime when `Z^r / I` is `Z`, `Z/p^n`, or trivial.
pub fn is_prime_subgroup_fg_abelian(ambient_rank: usize, generators: &IntegerMatrix) -> Result<bool> {
    let t = quotient_invariants(ambient_rank, generators)?;
    Ok(match (t.free_rank, t.torsion.as_slice()) {
        (1, []) | (0, []) => true,
        (0, [n]) => prime_power(n).is_some(),
        _ => false,
    })
}

const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases; exact below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigInt::from(w);
        if n == &w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &w in &WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `(p, k)` with `n = p^k`, `k >= 1`, when `n` is a prime power.
pub fn prime_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if n <= &BigInt::one() {
        return None;
    }
    if let Some(small) = n.to_u64() {
        return match factorize(small)[..] {
            [(p, k)] => Some((p.into(), k)),
            _ => None,
        };
    }
    let bits = n.bits() as u32;
    for k in (1..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && r.pow(k) == *n && is_probable_prime(&r) {
            return Some((r, k));
        }
    }
    None
}

/// Prime ideals `(p^a)` of `Z` containing `(n)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegerSpec {
    /// `n = 0`: every prime-power ideal contains `(0)`.
    All,
    Ideals(Vec<(u64, u32)>),
}

/// The `(p, a)` with `p^a | n`, sorted by `(p, a)`.
pub fn spec_of_integers(n: u64) -> IntegerSpec {
    if n == 0 {
        return IntegerSpec::All;
    }
    IntegerSpec::Ideals(
        factorize(n)
            .into_iter()
            .flat_map(|(p, e)| (1..=e).map(move |a| (p, a)))
            .collect(),
    )
}
