//! Integer lattice helpers: exact determinants and saturated kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Bareiss fraction-free determinant.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Basis of `{x ∈ Z^n : Cx = 0}` (columns of the returned list are the basis
/// vectors). The result is saturated: it spans every integer point of the
/// rational kernel.
pub fn integer_kernel(c: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // columns of `u` track the unimodular column operations applied to `c`
    let mut a: Vec<Vec<BigInt>> = c.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut piv = 0;
    for row in 0..a.len() {
        if piv == n {
            break;
        }
        // gcd-reduce entries a[row][piv..] into column `piv`
        loop {
            let nz: Vec<usize> = (piv..n).filter(|&j| !a[row][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &m = nz.iter().min_by_key(|&&j| a[row][j].abs()).unwrap();
            swap_cols(&mut a, &mut u, piv, m);
            let mut done = true;
            for j in piv + 1..n {
                if a[row][j].is_zero() {
                    continue;
                }
                let q = a[row][j].div_floor(&a[row][piv]);
                add_col_multiple(&mut a, &mut u, j, piv, &(-q));
                if !a[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[row][piv].is_zero() {
            piv += 1;
        }
    }
    (piv..n).map(|j| (0..n).map(|i| u[i][j].clone()).collect()).collect()
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(x, y);
    }
}

/// col_dst += f · col_src
fn add_col_multiple(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        let t = &row[src] * f;
        row[dst] += t;
    }
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(det_bareiss(&big(&[vec![1, 2], vec![3, 4]])), BigInt::from(-2));
        assert_eq!(det_bareiss(&big(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]])), BigInt::from(-5));
        assert_eq!(det_bareiss(&big(&[vec![1, 2], vec![2, 4]])), BigInt::from(0));
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0 has a rank-2 integer kernel of covolume √14
        let k = integer_kernel(&big(&[vec![1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        let gram: Vec<Vec<BigInt>> = (0..2)
            .map(|i| (0..2).map(|j| k[i].iter().zip(&k[j]).map(|(a, b)| a * b).sum()).collect())
            .collect();
        assert_eq!(det_bareiss(&gram), BigInt::from(14));
        // 2x - 4y = 0 in Z^2 → (2, 1)
        let k = integer_kernel(&big(&[vec![2, -4]]), 2);
        assert_eq!(k.len(), 1);
        assert_eq!(gcd_all(&k[0]), BigInt::from(1));
    }
}
