use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Rational;

/// Primes tried in order by the modular rank computations.
pub const PRIMES: [u64; 5] = [
    2_305_843_009_213_693_951,
    2_147_483_647,
    1_000_000_007,
    998_244_353,
    1_000_000_009,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0)
}

/// Image of a rational in Z/p, or `None` when `p` divides the denominator.
pub fn reduce(q: &Rational, p: u64) -> Option<u64> {
    let d = bigint_mod(q.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulmod(bigint_mod(q.numer(), p), invmod(d, p), p))
}

/// Column rank profile of a rational matrix modulo `p`.
///
/// Scans columns left to right and keeps each column that is independent of
/// the ones kept before it. Returns `(pivot_rows, pivot_cols)` of equal
/// length, or `None` when `p` divides some denominator.
pub fn rank_profile(rows: &[Vec<Rational>], ncols: usize, p: u64) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|q| reduce(q, p)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let nrows = m.len();
    let mut used = alloc::vec![false; nrows];
    let mut prow = Vec::new();
    let mut pcol = Vec::new();
    for c in 0..ncols {
        let Some(r) = (0..nrows).find(|&r| !used[r] && m[r][c] != 0) else {
            continue;
        };
        used[r] = true;
        prow.push(r);
        pcol.push(c);
        let inv = invmod(m[r][c], p);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if used[i] || row[c] == 0 {
                continue;
            }
            let f = mulmod(row[c], inv, p);
            for j in c..ncols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mulmod(f, pivot_row[j], p)) % p;
                }
            }
        }
    }
    Some((prow, pcol))
}
