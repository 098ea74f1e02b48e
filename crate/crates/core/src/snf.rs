//! Exact integer linear algebra on dense matrices: Smith normal form with
//! optional transform tracking, fraction-free rank, kernel lattice bases and
//! exact linear solves over Z and Q.
//!
//! Arbitrary-precision integers throughout; pivoting always picks a
//! minimal-absolute-value nonzero entry to keep intermediate growth down.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    if !add.is_zero() {
                        let cur = out.get(i, j) + add;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
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

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal with
/// `d_1 | d_2 | …`. Transforms are only tracked when requested.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMat,
    pub u: Option<IntMat>,
    pub v: Option<IntMat>,
    pub rank: usize,
    /// The nonzero diagonal entries, positive, in divisibility order.
    pub divisors: Vec<BigInt>,
}

pub fn smith_normal_form(a: &IntMat, with_transforms: bool) -> SmithForm {
    let mut d = a.clone();
    let (rows, cols) = (d.rows, d.cols);
    let mut u = if with_transforms {
        Some(IntMat::identity(rows))
    } else {
        None
    };
    let mut v = if with_transforms {
        Some(IntMat::identity(cols))
    } else {
        None
    };
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        // minimal-absolute-value pivot in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d.get(i, j).abs() < d.get(pi, pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        d.swap_cols(t, pj);
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        // clear row and column t by Euclidean steps
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &q);
                }
                if !d.get(i, t).is_zero() {
                    // remainder smaller than pivot: swap up and restart
                    d.swap_rows(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap_rows(t, i);
                    }
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col(j, t, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, &q);
                }
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    if let Some(v) = v.as_mut() {
                        v.swap_cols(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // pivot must divide the rest of the submatrix
        let mut divides_all = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(d.get(i, j) % d.get(t, t)).is_zero() {
                    // fold the offending row into row t and redo step t
                    d.add_row(t, i, &BigInt::one());
                    if let Some(u) = u.as_mut() {
                        u.add_row(t, i, &BigInt::one());
                    }
                    divides_all = false;
                    break 'scan;
                }
            }
        }
        if divides_all {
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                if let Some(u) = u.as_mut() {
                    u.negate_row(t);
                }
            }
            t += 1;
        }
    }
    let rank = (0..steps).take_while(|&i| !d.get(i, i).is_zero()).count();
    let divisors: Vec<BigInt> = (0..rank).map(|i| d.get(i, i).clone()).collect();
    debug_assert!(divisors
        .windows(2)
        .all(|w| (&w[1] % &w[0]).is_zero()));
    SmithForm {
        d,
        u,
        v,
        rank,
        divisors,
    }
}

/// Rank over Q via fraction-free (Bareiss) elimination — an independent
/// route from the Smith form.
pub fn rank_over_q(a: &IntMat) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = m.get(r, c) * m.get(i, j) - m.get(i, c) * m.get(r, j);
                debug_assert!((&num % &prev).is_zero());
                m.set(i, j, num / &prev);
            }
            m.set(i, c, BigInt::zero());
        }
        prev = m.get(r, c).clone();
        r += 1;
    }
    r
}

/// Integral basis of the kernel lattice of `a` (columns of `v` matching zero
/// diagonal entries of the Smith form).
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a, true);
    let v = snf.v.expect("transforms requested");
    (snf.rank..a.cols)
        .map(|j| (0..a.cols).map(|i| v.get(i, j).clone()).collect())
        .collect()
}

/// Solves `a x = b` exactly over Z, returning a witness when solvable.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a, true);
    let u = snf.u.as_ref().expect("transforms requested");
    let v = snf.v.as_ref().expect("transforms requested");
    let ub = u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < snf.rank {
            let di = snf.d.get(i, i);
            if !(ubi % di).is_zero() {
                return None;
            }
            if i < a.cols {
                y[i] = ubi / di;
            }
        } else if !ubi.is_zero() {
            return None;
        }
    }
    let x = v.mul_vec(&y);
    debug_assert_eq!(a.mul_vec(&x), b.to_vec());
    Some(x)
}

/// Solves `a x = b` exactly over Q.
pub fn solve_rational(a: &IntMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a, true);
    let u = snf.u.as_ref().expect("transforms requested");
    let v = snf.v.as_ref().expect("transforms requested");
    let ub: Vec<BigRational> = (0..a.rows)
        .map(|i| {
            (0..a.rows)
                .map(|j| BigRational::from(u.get(i, j).clone()) * &b[j])
                .sum::<BigRational>()
        })
        .collect();
    let mut y = vec![BigRational::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < snf.rank {
            y[i] = ubi / BigRational::from(snf.d.get(i, i).clone());
        } else if !ubi.is_zero() {
            return None;
        }
    }
    let x: Vec<BigRational> = (0..a.cols)
        .map(|i| {
            (0..a.cols)
                .map(|j| BigRational::from(v.get(i, j).clone()) * &y[j])
                .sum::<BigRational>()
        })
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_minors_gcd_check(a: &IntMat, divisors: &[BigInt]) {
        // spot check: product of first k divisors equals the gcd of k×k minors
        // for small matrices (k = 1 only here, to keep it cheap)
        if a.rows == 0 || a.cols == 0 {
            return;
        }
        let g1 = (0..a.rows)
            .flat_map(|i| (0..a.cols).map(move |j| (i, j)))
            .fold(BigInt::zero(), |acc, (i, j)| num_integer::gcd(acc, a.get(i, j).clone()));
        if !g1.is_zero() {
            assert_eq!(divisors[0], g1);
        }
    }

    #[test]
    fn snf_of_known_matrix() {
        let a = IntMat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a, true);
        assert_eq!(
            snf.divisors,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        let u = snf.u.unwrap();
        let v = snf.v.unwrap();
        assert_eq!(u.mul(&a).mul(&v), snf.d);
    }

    #[test]
    fn snf_transforms_multiply_out() {
        let a = IntMat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        let snf = smith_normal_form(&a, true);
        let u = snf.u.clone().unwrap();
        let v = snf.v.clone().unwrap();
        assert_eq!(u.mul(&a).mul(&v), snf.d);
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.divisors, vec![BigInt::from(1), BigInt::from(3)]);
        all_minors_gcd_check(&a, &snf.divisors);
    }

    #[test]
    fn rank_routes_agree() {
        let mats = vec![
            IntMat::from_rows(vec![vec![1, 2], vec![2, 4]]),
            IntMat::from_rows(vec![vec![0, 0], vec![0, 0]]),
            IntMat::from_rows(vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]),
            IntMat::from_rows(vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5], vec![3, 5, 8]]),
        ];
        for m in mats {
            assert_eq!(rank_over_q(&m), smith_normal_form(&m, false).rank);
        }
    }

    #[test]
    fn kernel_vectors_are_in_the_kernel() {
        let a = IntMat::from_rows(vec![vec![1, 1, 1], vec![0, 1, 1]]);
        let basis = kernel_basis(&a);
        assert_eq!(basis.len(), 1);
        for k in &basis {
            assert!(a.mul_vec(k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn integer_solve_and_unsolvable() {
        let a = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // 2x = 3 has no integer solution
        let b2 = vec![BigInt::from(3), BigInt::from(0)];
        assert!(solve_integer(&a, &b2).is_none());
        // …but a rational one
        let b2q: Vec<BigRational> = b2.iter().cloned().map(BigRational::from).collect();
        let xq = solve_rational(&a, &b2q).unwrap();
        assert_eq!(xq[0], BigRational::new(BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn snf_divisor_chain_divides() {
        let a = IntMat::from_rows(vec![
            vec![6, 4, 2, 8],
            vec![4, 8, 6, 2],
            vec![2, 6, 8, 4],
        ]);
        let snf = smith_normal_form(&a, true);
        for w in snf.divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        let u = snf.u.unwrap();
        let v = snf.v.unwrap();
        assert_eq!(u.mul(&a).mul(&v), snf.d);
    }
}
