//! Integer matrices and Smith normal form with transformation witnesses.
//!
//! The reduction runs over machine integers with checked arithmetic; an
//! overflow aborts the run and the caller retries over arbitrary-precision
//! integers. Pivots are chosen by minimal absolute value.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("integer overflow during matrix reduction")]
pub struct Overflow;

/// The ring operations the reduction needs, checked so that a fixed-width
/// run can escalate.
pub trait SnfRing: Clone + Eq + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn c_add(&self, other: &Self) -> Result<Self, Overflow>;
    fn c_sub(&self, other: &Self) -> Result<Self, Overflow>;
    fn c_mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn c_neg(&self) -> Result<Self, Overflow>;
    fn c_abs(&self) -> Result<Self, Overflow>;
    /// Truncated quotient; only called with a nonzero divisor.
    fn c_div_trunc(&self, other: &Self) -> Result<Self, Overflow>;
    fn rem_by(&self, other: &Self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl SnfRing for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn c_add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn c_sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*other).ok_or(Overflow)
    }
    fn c_mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn c_neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn c_abs(&self) -> Result<Self, Overflow> {
        self.checked_abs().ok_or(Overflow)
    }
    fn c_div_trunc(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_div(*other).ok_or(Overflow)
    }
    fn rem_by(&self, other: &Self) -> Self {
        self % other
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn c_add(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self + other)
    }
    fn c_sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }
    fn c_mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn c_neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn c_abs(&self) -> Result<Self, Overflow> {
        Ok(self.abs())
    }
    fn c_div_trunc(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self / other)
    }
    fn rem_by(&self, other: &Self) -> Self {
        self % other
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: SnfRing> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>, Overflow> {
        assert_eq!(self.cols, other.rows);
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.c_mul(b)?;
                    let cur = out.get(i, j).c_add(&prod)?;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn hstack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_bigint(&self) -> Matrix<BigInt> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.to_bigint()).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += c * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, c: &T) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let delta = self.get(b, j).c_mul(c)?;
            let v = self.get(a, j).c_add(&delta)?;
            self.set(a, j, v);
        }
        Ok(())
    }

    /// col_a += c * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, c: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let delta = self.get(i, b).c_mul(c)?;
            let v = self.get(i, a).c_add(&delta)?;
            self.set(i, a, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, a: usize) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let v = self.get(a, j).c_neg()?;
            self.set(a, j, v);
        }
        Ok(())
    }
}

/// `p * input * q = d`, with `d` diagonal and each diagonal entry dividing
/// the next.
#[derive(Debug, Clone)]
pub struct Snf<T> {
    pub d: Matrix<T>,
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    pub rank: usize,
}

impl<T: SnfRing> Snf<T> {
    pub fn invariants(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form<T: SnfRing>(input: &Matrix<T>) -> Result<Snf<T>, Overflow> {
    let mut d = input.clone();
    let mut p = Matrix::identity(input.rows);
    let mut q = Matrix::identity(input.cols);
    let steps = input.rows.min(input.cols);
    let mut rank = 0;
    for k in 0..steps {
        if !move_min_pivot(&mut d, &mut p, &mut q, k)? {
            break;
        }
        loop {
            clear_column(&mut d, &mut p, k)?;
            clear_row(&mut d, &mut q, k)?;
            if !column_clean(&d, k) || !row_clean(&d, k) {
                // clearing one side disturbed the other; re-pivot
                move_min_pivot(&mut d, &mut p, &mut q, k)?;
                continue;
            }
            if let Some((i, j)) = not_divisible(&d, k) {
                // fold the offending row in and start over at this pivot
                let _ = j;
                d.add_row_multiple(k, i, &T::one())?;
                p.add_row_multiple(k, i, &T::one())?;
                move_min_pivot(&mut d, &mut p, &mut q, k)?;
                continue;
            }
            break;
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k)?;
            p.negate_row(k)?;
        }
        rank = k + 1;
    }
    Ok(Snf { d, p, q, rank })
}

/// Smith normal form over machine integers, escalating to big integers on
/// overflow.
pub fn smith_normal_form_escalating(input: &Matrix<i128>) -> Snf<BigInt> {
    match smith_normal_form(input) {
        Ok(snf) => Snf {
            d: snf.d.to_bigint(),
            p: snf.p.to_bigint(),
            q: snf.q.to_bigint(),
            rank: snf.rank,
        },
        Err(Overflow) => {
            smith_normal_form(&input.to_bigint()).expect("big integers do not overflow")
        }
    }
}

/// Moves a minimal-absolute-value nonzero entry of the lower-right block to
/// the pivot position; false when the block is zero.
fn move_min_pivot<T: SnfRing>(
    d: &mut Matrix<T>,
    p: &mut Matrix<T>,
    q: &mut Matrix<T>,
    k: usize,
) -> Result<bool, Overflow> {
    let mut best: Option<(T, usize, usize)> = None;
    for i in k..d.rows {
        for j in k..d.cols {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.c_abs()?;
            match &best {
                Some((m, _, _)) if *m <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    match best {
        None => Ok(false),
        Some((_, i, j)) => {
            d.swap_rows(k, i);
            p.swap_rows(k, i);
            d.swap_cols(k, j);
            q.swap_cols(k, j);
            Ok(true)
        }
    }
}

fn clear_column<T: SnfRing>(d: &mut Matrix<T>, p: &mut Matrix<T>, k: usize) -> Result<(), Overflow> {
    loop {
        let mut changed = false;
        for i in (k + 1)..d.rows {
            if d.get(i, k).is_zero() {
                continue;
            }
            let quot = d.get(i, k).c_div_trunc(d.get(k, k))?;
            let coeff = quot.c_neg()?;
            if !coeff.is_zero() {
                d.add_row_multiple(i, k, &coeff)?;
                p.add_row_multiple(i, k, &coeff)?;
            }
            if !d.get(i, k).is_zero() {
                // remainder became the smaller pivot
                d.swap_rows(i, k);
                p.swap_rows(i, k);
                changed = true;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

fn clear_row<T: SnfRing>(d: &mut Matrix<T>, q: &mut Matrix<T>, k: usize) -> Result<(), Overflow> {
    loop {
        let mut changed = false;
        for j in (k + 1)..d.cols {
            if d.get(k, j).is_zero() {
                continue;
            }
            let quot = d.get(k, j).c_div_trunc(d.get(k, k))?;
            let coeff = quot.c_neg()?;
            if !coeff.is_zero() {
                d.add_col_multiple(j, k, &coeff)?;
                q.add_col_multiple(j, k, &coeff)?;
            }
            if !d.get(k, j).is_zero() {
                d.swap_cols(j, k);
                q.swap_cols(j, k);
                changed = true;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

fn column_clean<T: SnfRing>(d: &Matrix<T>, k: usize) -> bool {
    ((k + 1)..d.rows).all(|i| d.get(i, k).is_zero())
}

fn row_clean<T: SnfRing>(d: &Matrix<T>, k: usize) -> bool {
    ((k + 1)..d.cols).all(|j| d.get(k, j).is_zero())
}

fn not_divisible<T: SnfRing>(d: &Matrix<T>, k: usize) -> Option<(usize, usize)> {
    let pivot = d.get(k, k);
    for i in (k + 1)..d.rows {
        for j in (k + 1)..d.cols {
            if !d.get(i, j).rem_by(pivot).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Integer solution of `m * y = c` through a precomputed decomposition,
/// when one exists.
pub fn solve_exact<T: SnfRing>(snf: &Snf<T>, c: &[T]) -> Option<Vec<T>> {
    let rows = snf.d.rows;
    let cols = snf.d.cols;
    assert_eq!(c.len(), rows);
    // z solves d z = p c, then y = q z
    let mut pc = vec![T::zero(); rows];
    for i in 0..rows {
        let mut acc = T::zero();
        for j in 0..rows {
            let v = snf.p.get(i, j);
            if v.is_zero() || c[j].is_zero() {
                continue;
            }
            acc = acc.c_add(&v.c_mul(&c[j]).ok()?).ok()?;
        }
        pc[i] = acc;
    }
    let mut z = vec![T::zero(); cols];
    for i in 0..rows {
        if i < snf.rank {
            let pivot = snf.d.get(i, i);
            if !pc[i].rem_by(pivot).is_zero() {
                return None;
            }
            z[i] = pc[i].c_div_trunc(pivot).ok()?;
        } else if !pc[i].is_zero() {
            return None;
        }
    }
    let mut y = vec![T::zero(); cols];
    for i in 0..cols {
        let mut acc = T::zero();
        for j in 0..cols {
            let v = snf.q.get(i, j);
            if v.is_zero() || z[j].is_zero() {
                continue;
            }
            acc = acc.c_add(&v.c_mul(&z[j]).ok()?).ok()?;
        }
        y[i] = acc;
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_witnesses(input: &Matrix<i128>, snf: &Snf<i128>) {
        let pmq = snf.p.mul(input).unwrap().mul(&snf.q).unwrap();
        assert_eq!(pmq, snf.d, "witnesses do not re-multiply to the diagonal");
        for i in 0..snf.d.rows {
            for j in 0..snf.d.cols {
                if i != j {
                    assert_eq!(*snf.d.get(i, j), 0);
                }
            }
        }
        let inv = snf.invariants();
        for w in inv.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {inv:?}");
        }
    }

    #[test]
    fn identity_matrix() {
        let m = Matrix::<i128>::identity(3);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.invariants(), vec![1, 1, 1]);
        check_witnesses(&m, &snf);
    }

    #[test]
    fn diagonal_needs_divisibility_fix() {
        let m = Matrix::from_rows(vec![vec![2i128, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.invariants(), vec![1, 6]);
        check_witnesses(&m, &snf);
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::<i128>::zero(2, 3);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.invariants().is_empty());
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn known_reduction() {
        let m = Matrix::from_rows(vec![
            vec![-6i128, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.invariants(), vec![1, 3, 21]);
        check_witnesses(&m, &snf);
    }

    #[test]
    fn escalates_on_overflow() {
        // alternating huge entries force checked multiplication failures
        let h = i128::MAX / 2;
        let m = Matrix::from_rows(vec![vec![h, h - 1], vec![h - 2, h - 5]]);
        let snf = smith_normal_form_escalating(&m);
        let big = m.to_bigint();
        let pmq = snf.p.mul(&big).unwrap().mul(&snf.q).unwrap();
        assert_eq!(pmq, snf.d);
    }

    #[test]
    fn solve_roundtrip() {
        let m = Matrix::from_rows(vec![vec![2i128, 0], vec![0, 4], vec![2, 4]]);
        let snf = smith_normal_form(&m).unwrap();
        // c = m * (3, 5)
        let c = vec![6i128, 20, 26];
        let y = solve_exact(&snf, &c).unwrap();
        assert_eq!(y, vec![3, 5]);
        assert_eq!(solve_exact(&snf, &[1, 0, 0]), None);
    }

    #[test]
    fn random_witness_roundtrips() {
        use rand::Rng;
        let mut rng = rand::rng();
        for _ in 0..25 {
            let rows = rng.random_range(1..=5);
            let cols = rng.random_range(1..=5);
            let m = Matrix::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rng.random_range(-9i128..=9)).collect())
                    .collect(),
            );
            let snf = smith_normal_form(&m).unwrap();
            check_witnesses(&m, &snf);
        }
    }
}
