use num_complex::Complex;

use crate::matrix::CMatrix;
use crate::{Error, Real, Result};

/// Permanent via Glynn's formula with Gray-code row-sign updates, `O(2^n n)`.
///
/// The empty matrix has permanent 1.
pub fn permanent<T: Real>(m: &CMatrix<T>) -> Result<Complex<T>> {
    let n = square_dim(m)?;
    let zero = Complex::new(T::zero(), T::zero());
    match n {
        0 => return Ok(Complex::new(T::one(), T::zero())),
        1 => return Ok(m[(0, 0)]),
        _ => {}
    }

    // Column sums of δ_i a_ij with every δ_i = +1 to start.
    let mut sums: Vec<Complex<T>> = (0..n)
        .map(|j| (0..n).fold(zero, |acc, i| acc + m[(i, j)]))
        .collect();
    let mut signs = vec![true; n];
    let mut total = sums.iter().fold(Complex::new(T::one(), T::zero()), |p, s| p * s);
    let mut parity_negative = false;
    let two = T::lit(2.0);

    // δ_0 stays fixed; Gray code walks δ_1..δ_{n-1}.
    for k in 1u64..(1u64 << (n - 1)) {
        let row = k.trailing_zeros() as usize + 1;
        let sign = if signs[row] { -two } else { two };
        signs[row] = !signs[row];
        for (j, s) in sums.iter_mut().enumerate() {
            *s = *s + m[(row, j)] * sign;
        }
        parity_negative = !parity_negative;
        let prod = sums.iter().fold(Complex::new(T::one(), T::zero()), |p, s| p * s);
        total = if parity_negative { total - prod } else { total + prod };
    }

    let scale = T::lit(2.0).powi(n as i32 - 1);
    Ok(total / scale)
}

/// Permanent by direct Laplace expansion along the first row, `O(n!)`.
///
/// Kept as an independent reference for [`permanent`].
pub fn permanent_naive<T: Real>(m: &CMatrix<T>) -> Result<Complex<T>> {
    let n = square_dim(m)?;
    let mut used = vec![false; n];
    Ok(expand(m, 0, &mut used))
}

fn expand<T: Real>(m: &CMatrix<T>, row: usize, used: &mut [bool]) -> Complex<T> {
    if row == used.len() {
        return Complex::new(T::one(), T::zero());
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for col in 0..used.len() {
        if used[col] {
            continue;
        }
        used[col] = true;
        acc = acc + m[(row, col)] * expand(m, row + 1, used);
        used[col] = false;
    }
    acc
}

fn square_dim<T: Real>(m: &CMatrix<T>) -> Result<usize> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn two_by_two_closed_form() {
        let (a, b, cc, d) = (c(1.0, 2.0), c(-0.5, 0.3), c(0.7, -1.1), c(2.0, 0.0));
        let m = CMatrix::from_rows(&[vec![a, b], vec![cc, d]]).unwrap();
        let expected = a * d + b * cc;
        assert!((permanent(&m).unwrap() - expected).norm() < 1e-14);
        assert!((permanent_naive(&m).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn identity_and_ones() {
        assert_eq!(permanent(&CMatrix::<f64>::identity(4)).unwrap(), c(1.0, 0.0));
        let mut fact = 1.0;
        for n in 1..=6 {
            fact *= n as f64;
            let ones = CMatrix::from_fn(n, n, |_, _| c(1.0, 0.0));
            assert_eq!(permanent_naive(&ones).unwrap(), c(fact, 0.0));
            assert_relative_eq!(permanent(&ones).unwrap().re, fact, max_relative = 1e-14);
        }
    }

    #[test]
    fn empty_is_one() {
        let m = CMatrix::<f64>::zeros(0, 0);
        assert_eq!(permanent(&m).unwrap(), c(1.0, 0.0));
        assert_eq!(permanent_naive(&m).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn non_square_rejected() {
        let m = CMatrix::<f64>::zeros(2, 3);
        assert!(matches!(permanent(&m), Err(Error::NotSquare { .. })));
        assert!(permanent_naive(&m).is_err());
    }

    #[test]
    fn three_by_three_integer() {
        // perm [[1,2,3],[4,5,6],[7,8,9]] = 450
        let m = CMatrix::from_real_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
        ])
        .unwrap();
        assert_eq!(permanent_naive(&m).unwrap(), c(450.0, 0.0));
        assert_relative_eq!(permanent(&m).unwrap().re, 450.0, max_relative = 1e-14);
    }

    #[test]
    fn works_in_single_precision() {
        let ones = CMatrix::<f32>::from_fn(5, 5, |_, _| Complex::new(1.0, 0.0));
        assert!((permanent(&ones).unwrap().re - 120.0).abs() < 1e-3);
    }
}
