use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix as rows.
pub type Mat = Vec<Vec<BigInt>>;

pub fn zero_mat(rows: usize, cols: usize) -> Mat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zero_mat(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zero_mat(rows, cols);
    for (i, oi) in out.iter_mut().enumerate() {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for (j, o) in oi.iter_mut().enumerate() {
                *o += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Smith normal form: unimodular `u`, `v` with `u · a · v = d`, `d` diagonal
/// with nonnegative entries each dividing the next.
pub struct Smith {
    pub d: Mat,
    pub u: Mat,
    pub v: Mat,
    pub rank: usize,
}

pub fn smith(a: &Mat) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    'position: while t < rows.min(cols) {
        loop {
            // pivot of minimal absolute value in the remaining block; each
            // pass through this loop either finishes the position or plants
            // a smaller nonzero entry, so the minimum strictly decreases
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && pivot
                            .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'position };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            // one reduction pass over row and column t; leftover remainders
            // are smaller than the pivot, so re-picking shrinks it
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&d[i][t], &d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&d[t][j], &d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold any non-multiple of the pivot into row t,
            // where the next reduction pass turns it into a smaller pivot
            let mut violation = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        violation = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = violation {
                for k in 0..cols {
                    let add = d[i][k].clone();
                    d[t][k] += add;
                }
                for k in 0..rows {
                    let add = u[i][k].clone();
                    u[t][k] += add;
                }
                continue;
            }
            break;
        }
        if d[t][t].is_negative() {
            for j in 0..cols {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !d[i][i].is_zero()).count();
    Smith { d, u, v, rank }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn row_sub(m: &mut Mat, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let cols = m[0].len();
    for k in 0..cols {
        let s = &m[t][k] * q;
        m[i][k] -= s;
    }
}

fn col_sub(m: &mut Mat, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = &row[t] * q;
        row[j] -= s;
    }
}

// rounded division so remainders shrink below |b|/2
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Elementary divisors greater than one: the torsion coefficients of the
/// cokernel.
pub fn torsion(s: &Smith) -> Vec<BigInt> {
    (0..s.rank)
        .map(|i| s.d[i][i].clone())
        .filter(|d| d > &BigInt::one())
        .collect()
}

/// Integer solution `x` of `a · x = c`, if one exists.
pub fn solve_integer(a: &Mat, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        // 0 = c must hold; any x works (here: none needed)
        return c.iter().all(|v| v.is_zero()).then(|| vec![BigInt::zero(); cols]);
    }
    if c.len() != rows {
        return None;
    }
    let s = smith(a);
    // u·a·v = d, so a·x = c  ⟺  d·y = u·c with x = v·y
    let uc: Vec<BigInt> = s
        .u
        .iter()
        .map(|row| row.iter().zip(c).map(|(m, v)| m * v).sum())
        .collect();
    let mut y = vec![BigInt::zero(); cols];
    for (i, val) in uc.iter().enumerate() {
        if i < s.rank {
            let (q, r) = val.div_rem(&s.d[i][i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    let x: Vec<BigInt> = (0..cols)
        .map(|i| (0..cols).map(|j| &s.v[i][j] * &y[j]).sum())
        .collect();
    Some(x)
}
