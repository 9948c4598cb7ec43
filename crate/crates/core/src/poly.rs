//! Dense univariate integer polynomials, stored low degree first with no
//! trailing zeros.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Drops trailing zero coefficients.
pub fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Sum of two polynomials.
pub fn add(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let n = p.len().max(q.len());
    let mut out: Vec<BigInt> = (0..n)
        .map(|i| {
            let x = p.get(i).cloned().unwrap_or_default();
            let y = q.get(i).cloned().unwrap_or_default();
            x + y
        })
        .collect();
    trim(&mut out);
    out
}

/// Product of two polynomials.
pub fn mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// `p * c` for an integer `c`.
pub fn scale(p: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = p.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Value at an integer point.
pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Quotient of `p` by the monic linear polynomial `(x - r)`; the caller
/// guarantees `p(r) = 0`.
pub fn div_linear(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    q[n - 1] = p[n].clone();
    for i in (1..n).rev() {
        q[i - 1] = &p[i] + r * &q[i];
    }
    q
}

/// `(1 - x)^m (1 + x)^e`.
pub fn denominator(m: u32, e: u32) -> Vec<BigInt> {
    let one_minus = vec![BigInt::one(), -BigInt::one()];
    let one_plus = vec![BigInt::one(), BigInt::one()];
    let mut acc = vec![BigInt::one()];
    for _ in 0..m {
        acc = mul(&acc, &one_minus);
    }
    for _ in 0..e {
        acc = mul(&acc, &one_plus);
    }
    acc
}

/// Power series coefficients `0..=upto` of `1 / q` for `q(0) = 1`.
pub fn inverse_series(q: &[BigInt], upto: usize) -> Vec<BigInt> {
    debug_assert!(q.first().is_some_and(One::is_one));
    let mut s = vec![BigInt::zero(); upto + 1];
    s[0] = BigInt::one();
    for m in 1..=upto {
        let mut acc = BigInt::zero();
        for j in 1..q.len().min(m + 1) {
            acc += &q[j] * &s[m - j];
        }
        s[m] = -acc;
    }
    s
}

/// Human-readable form in the variable `var`, e.g. `1+2*b-b^3`.
pub fn to_string(p: &[BigInt], var: char) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let abs = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

/// Whether the trimmed polynomial has more than one nonzero coefficient.
pub fn has_several_terms(p: &[BigInt]) -> bool {
    p.iter().filter(|c| !c.is_zero()).count() > 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn arithmetic() {
        assert_eq!(add(&p(&[1, 2]), &p(&[-1, -2])), p(&[]));
        assert_eq!(mul(&p(&[1, 1]), &p(&[1, -1])), p(&[1, 0, -1]));
        assert_eq!(eval(&p(&[1, 2, 3]), &BigInt::from(2)), BigInt::from(17));
    }

    #[test]
    fn linear_division() {
        let q = div_linear(&p(&[-1, 0, 1]), &BigInt::from(1));
        assert_eq!(q, p(&[1, 1]));
    }

    #[test]
    fn inverse_of_one_minus_x_squared() {
        let s = inverse_series(&denominator(2, 0), 4);
        assert_eq!(s, p(&[1, 2, 3, 4, 5]));
        let s = inverse_series(&denominator(0, 1), 3);
        assert_eq!(s, p(&[1, -1, 1, -1]));
    }

    #[test]
    fn printing() {
        assert_eq!(to_string(&p(&[1, 2, 0, -1]), 'b'), "1+2*b-b^3");
        assert_eq!(to_string(&p(&[0, -1]), 't'), "-t");
        assert_eq!(to_string(&p(&[]), 'b'), "0");
    }
}
