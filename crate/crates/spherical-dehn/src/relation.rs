use astro_float::BigFloat;
use exact_linalg::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ctx::{scaled_int, Ctx};
use crate::{DehnError, Result};

/// Search for a nonzero integer vector c with |Σ cᵢ xᵢ| < 2^{−bits/2} and
/// |cᵢ| ≤ height, by LLL reduction of the scaled-integer relation lattice.
/// `None` means no relation was found within the bounds — evidence, not a
/// proof of independence.
pub fn integer_relation(
    xs: &[BigFloat],
    height: u64,
    ctx: &mut Ctx,
) -> Result<Option<Vec<BigInt>>> {
    let bits = ctx.bits();
    if bits < 128 {
        return Err(DehnError::Precision(format!(
            "integer-relation detection needs at least 128 bits, got {}",
            bits
        )));
    }
    let needed = 4 * (64 - height.leading_zeros() as usize);
    if bits < needed {
        return Err(DehnError::Precision(format!(
            "height {} needs at least {} bits of precision, got {}",
            height, needed, bits
        )));
    }
    let n = xs.len();
    if n == 0 {
        return Ok(None);
    }
    // lattice rows (e_i, round(x_i · 2^bits)); a short vector with small
    // last coordinate is an integer relation among the x_i
    let shift = bits as i64;
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::from(1);
            row[n] = scaled_int(&xs[i], shift);
            row
        })
        .collect();
    lll(&mut basis);
    let bound = BigInt::from(height);
    let mut rows: Vec<&Vec<BigInt>> = basis.iter().collect();
    rows.sort_by_key(|r| r[n].abs());
    for row in rows {
        let coeffs = &row[..n];
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        if coeffs.iter().any(|c| c.abs() > bound) {
            continue;
        }
        // verify the residual numerically at full precision
        let mut acc = ctx.int(0);
        for (c, x) in coeffs.iter().zip(xs) {
            let cf = ctx.from_rat(&Rat::from_integer(c.clone()));
            acc = ctx.add(&acc, &ctx.mul(&cf, x));
        }
        if ctx.below_pow2(&acc, -((bits / 2) as i32)) {
            return Ok(Some(coeffs.to_vec()));
        }
    }
    Ok(None)
}

/// Textbook LLL with δ = 3/4 over exact rationals.
fn lll(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let delta = Rat::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let (mut bstar, mut mu, mut norms) = gram_schmidt(basis);
    while k < n {
        // size-reduce b_k against b_{k-1}, …, b_0
        for j in (0..k).rev() {
            let q = round_rat(&mu[k][j]);
            if !q.is_zero() {
                for idx in 0..basis[k].len() {
                    let s = &basis[j][idx] * &q;
                    basis[k][idx] -= s;
                }
                let (nb, nm, nn) = gram_schmidt(basis);
                bstar = nb;
                mu = nm;
                norms = nn;
            }
        }
        // Lovász condition
        let lhs = norms[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            let (nb, nm, nn) = gram_schmidt(basis);
            bstar = nb;
            mu = nm;
            norms = nn;
            k = k.max(2) - 1;
        }
    }
    let _ = bstar;
}

type Gs = (Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Rat>);

fn gram_schmidt(basis: &[Vec<BigInt>]) -> Gs {
    let n = basis.len();
    let dim = basis[0].len();
    let rat = |v: &BigInt| Rat::from_integer(v.clone());
    let mut bstar: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<Rat> = basis[i].iter().map(rat).collect();
        for j in 0..i {
            let num: Rat = (0..dim).map(|d| rat(&basis[i][d]) * &bstar[j][d]).sum();
            let m = if norms[j] == Rat::zero() {
                Rat::zero()
            } else {
                num / &norms[j]
            };
            mu[i][j] = m.clone();
            for d in 0..dim {
                let s = &bstar[j][d] * &m;
                v[d] -= s;
            }
        }
        let norm: Rat = v.iter().map(|x| x * x).sum();
        norms.push(norm);
        bstar.push(v);
    }
    (bstar, mu, norms)
}

fn round_rat(r: &Rat) -> BigInt {
    let two = BigInt::from(2);
    let num = r.numer() * &two + r.denom();
    let den = r.denom() * &two;
    num.div_floor(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_rational_pi_multiple() {
        let mut ctx = Ctx::new(256).unwrap();
        let pi = ctx.pi();
        let third = ctx.div(&pi, &ctx.int(3));
        let rel = integer_relation(&[pi, third], 100, &mut ctx)
            .unwrap()
            .expect("relation");
        // proportional to (1, −3)
        assert_eq!(&rel[1], &(&rel[0] * BigInt::from(-3)));
        assert!(!rel[0].is_zero());
    }

    #[test]
    fn finds_relation_among_rationals() {
        let mut ctx = Ctx::new(256).unwrap();
        let one = ctx.int(1);
        let half = ctx.div(&one, &ctx.int(2));
        let third = ctx.div(&one, &ctx.int(3));
        let rel = integer_relation(&[one.clone(), half, third], 100, &mut ctx)
            .unwrap()
            .expect("relation");
        // verify 6·(c₀ + c₁/2 + c₂/3) = 0 exactly
        let total: BigInt = &rel[0] * 6 + &rel[1] * 3 + &rel[2] * 2;
        assert!(total.is_zero(), "{:?}", rel);
    }

    #[test]
    fn no_relation_between_one_and_pi() {
        let mut ctx = Ctx::new(256).unwrap();
        let pi = ctx.pi();
        let one = ctx.int(1);
        assert_eq!(
            integer_relation(&[one, pi], 1_000_000, &mut ctx).unwrap(),
            None
        );
    }

    #[test]
    fn precision_guard() {
        let mut ctx = Ctx::new(96).unwrap();
        let one = ctx.int(1);
        let two = ctx.int(2);
        assert!(matches!(
            integer_relation(&[one, two], 10, &mut ctx),
            Err(DehnError::Precision(_))
        ));
    }

    #[test]
    fn round_rat_is_nearest() {
        let r = |a: i64, b: i64| Rat::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(round_rat(&r(7, 2)), BigInt::from(4));
        assert_eq!(round_rat(&r(-7, 2)), BigInt::from(-3));
        assert_eq!(round_rat(&r(1, 3)), BigInt::from(0));
        assert_eq!(round_rat(&r(-1, 3)), BigInt::from(0));
    }
}
