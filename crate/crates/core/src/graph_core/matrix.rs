use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense square matrix over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(n: usize) -> Self {
        IntegerMatrix { n, entries: vec![BigInt::zero(); n * n] }
    }

    /// Row-major construction. Panics if `rows` is not square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, x) in row.iter().enumerate() {
                m.entries[i * n + j] = x.clone().into();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Fraction-free Gaussian elimination (Bareiss). The empty matrix has determinant 1.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Coefficients of det(xI - A), leading coefficient first (Berkowitz).
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut c: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            // v = [1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S]
            let mut v = Vec::with_capacity(r + 2);
            v.push(BigInt::one());
            v.push(-self.get(r, r).clone());
            let mut s: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rs: BigInt = (0..r).map(|j| self.get(r, j) * &s[j]).sum();
                v.push(-rs);
                s = (0..r)
                    .map(|i| (0..r).map(|j| self.get(i, j) * &s[j]).sum())
                    .collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate().take(i + 1) {
                    *slot += &v[i - j] * cj;
                }
            }
            c = next;
        }
        c
    }

    /// Signature of a symmetric matrix: Descartes' rule is exact on the
    /// real-rooted characteristic polynomial.
    pub fn signature(&self) -> i64 {
        let (pos, neg, _) = self.inertia();
        pos as i64 - neg as i64
    }

    /// (positive, negative, zero) eigenvalue counts of a symmetric matrix.
    pub fn inertia(&self) -> (usize, usize, usize) {
        debug_assert!(self.is_symmetric());
        let mut cp = self.characteristic_polynomial();
        let mut zero = 0;
        while cp.len() > 1 && cp.last().is_some_and(|c| c.is_zero()) {
            cp.pop();
            zero += 1;
        }
        let pos = sign_changes(cp.iter().map(|c| c.signum()));
        let deg = cp.len() - 1;
        // p(-x): flip odd powers relative to the leading term
        let neg = sign_changes(cp.iter().enumerate().map(|(i, c)| {
            if (deg - i) % 2 == 1 {
                -c.signum()
            } else {
                c.signum()
            }
        }));
        debug_assert_eq!(pos + neg + zero, self.n);
        (pos, neg, zero)
    }

    /// Exact solution of A x = b, or None if A is singular.
    pub fn solve_rational(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..n).map(|j| BigRational::from_integer(self.get(i, j).clone())).collect();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = &a[i][k] / &a[k][k];
                    for j in k..=n {
                        let t = &f * &a[k][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        Some((0..n).map(|i| &a[i][n] / &a[i][i]).collect())
    }
}

fn sign_changes<I: Iterator<Item = BigInt>>(signs: I) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for s in signs {
        if s.is_zero() {
            continue;
        }
        let p = s.is_positive();
        if last.is_some_and(|l| l != p) {
            changes += 1;
        }
        last = Some(p);
    }
    changes
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<_> = (0..self.n).map(|j| self.get(i, j)).collect();
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
