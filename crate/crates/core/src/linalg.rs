//! Exact elimination over the integers.
//!
//! [`fraction_free_rref`] is the Gauss-Jordan form of Bareiss' algorithm:
//! every intermediate entry is a minor of the input, so all divisions are
//! exact and no rationals appear. [`rank_mod_p`] works over `F_p` with
//! `p = 2^61 - 1`; since a minor that is nonzero mod `p` is nonzero over `Z`,
//! its result is an exact lower bound for the rational rank.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced row-echelon form scaled by `denominator`: pivot row `r` has
/// `denominator` in column `pivot_cols[r]` and zeros in the other pivot
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionFreeRref {
    pub cols: usize,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub denominator: BigInt,
    pub rows: Vec<Vec<BigInt>>,
}

fn nonzeros(row: &[BigInt]) -> usize {
    row.iter().filter(|x| !x.is_zero()).count()
}

/// Picks the candidate with the fewest nonzeros, then the smallest pivot.
fn choose_pivot(a: &[Vec<BigInt>], from: usize, col: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&i| !a[i][col].is_zero())
        .min_by_key(|&i| (nonzeros(&a[i]), a[i][col].bits()))
}

pub fn fraction_free_rref(mut a: Vec<Vec<BigInt>>, cols: usize) -> FractionFreeRref {
    debug_assert!(a.iter().all(|row| row.len() == cols));
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = choose_pivot(&a, r, c) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = std::mem::take(&mut a[r]);
        let piv = pivot_row[c].clone();
        let same = piv == prev;
        let negated = -&piv == prev;
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = std::mem::take(&mut row[c]);
            if factor.is_zero() {
                if same {
                    continue;
                }
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x = if negated { -&*x } else { &piv * &*x / &prev };
                }
                continue;
            }
            for (j, x) in row.iter_mut().enumerate() {
                let other = &pivot_row[j];
                if j == c {
                    continue;
                }
                if other.is_zero() {
                    if x.is_zero() || same {
                        continue;
                    }
                    *x = if negated { -&*x } else { &piv * &*x / &prev };
                } else {
                    let value = &piv * &*x - &factor * other;
                    *x = if prev.is_one() { value } else { value / &prev };
                }
            }
        }
        a[r] = pivot_row;
        prev = piv;
        pivot_cols.push(c);
        r += 1;
    }
    a.truncate(r);
    // Pivots of earlier rows were rescaled along the way; normalise the sign
    // so the common pivot is positive.
    if prev.is_negative() {
        prev = -prev;
        for row in &mut a {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    FractionFreeRref {
        cols,
        rank: r,
        pivot_cols,
        denominator: prev,
        rows: a,
    }
}

impl FractionFreeRref {
    /// Primitive integer kernel vectors, one per free column, each with its
    /// first nonzero entry positive.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let pivots: BTreeMap<usize, usize> =
            self.pivot_cols.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains_key(c))
            .map(|free| {
                let mut v = vec![BigInt::zero(); self.cols];
                v[free] = self.denominator.clone();
                for (r, &pc) in self.pivot_cols.iter().enumerate() {
                    v[pc] = -&self.rows[r][free];
                }
                make_primitive(v)
            })
            .collect()
    }
}

pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.sign() == Sign::Minus);
    for x in &mut v {
        *x /= &g;
        if flip {
            *x = -&*x;
        }
    }
    v
}

pub fn rank(a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    echelon(a, cols).0
}

/// Exact determinant by Bareiss elimination.
pub fn determinant(a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let (rank, last, swaps) = echelon(a, n);
    if rank < n {
        return BigInt::zero();
    }
    if swaps % 2 == 1 {
        -last
    } else {
        last
    }
}

/// Forward Bareiss elimination: `(rank, last pivot, row swaps)`.
fn echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, usize) {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = choose_pivot(&a, r, c) else {
            continue;
        };
        if p != r {
            a.swap(r, p);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        let same = *piv == prev;
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let other = &pivot_row[j];
                let x = &mut row[j];
                if factor.is_zero() || other.is_zero() {
                    if x.is_zero() || same {
                        continue;
                    }
                    *x = piv * &*x / &prev;
                } else {
                    let value = piv * &*x - &factor * other;
                    *x = if prev.is_one() { value } else { value / &prev };
                }
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    (r, prev, swaps)
}

pub const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

pub fn reduce_mod(x: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    x.mod_floor(&m).to_u64().expect("residue fits in u64")
}

/// Rank over `F_p` of a sparse matrix given as rows of `(column, value)`.
///
/// Rows are bucketed by leading column; each bucket is reduced against its
/// shortest row, so sparse inputs stay sparse for longer.
pub fn rank_mod_p(rows: &[Vec<(usize, BigInt)>], cols: usize) -> usize {
    let mut buckets: Vec<Vec<Vec<(usize, u64)>>> = vec![Vec::new(); cols];
    for row in rows {
        let mut reduced: Vec<(usize, u64)> = row
            .iter()
            .map(|(c, v)| (*c, reduce_mod(v)))
            .filter(|&(_, v)| v != 0)
            .collect();
        reduced.sort_unstable_by_key(|&(c, _)| c);
        if let Some(&(lead, _)) = reduced.first() {
            buckets[lead].push(reduced);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let best = (0..bucket.len()).min_by_key(|&i| bucket[i].len()).unwrap();
        let pivot = bucket.swap_remove(best);
        rank += 1;
        let inv = inv_mod(pivot[0].1);
        for row in bucket {
            let factor = mul_mod(row[0].1, inv);
            let merged = subtract_scaled(&row, &pivot, factor);
            if let Some(&(lead, _)) = merged.first() {
                buckets[lead].push(merged);
            }
        }
    }
    rank
}

/// `row - factor * pivot` over `F_p`, both sorted by column.
fn subtract_scaled(row: &[(usize, u64)], pivot: &[(usize, u64)], factor: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, value) = if take_row {
            i += 1;
            row[i - 1]
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, (MODULUS - mul_mod(factor, pivot[j - 1].1)) % MODULUS)
        } else {
            i += 1;
            j += 1;
            let sub = mul_mod(factor, pivot[j - 1].1);
            (row[i - 1].0, (row[i - 1].1 + MODULUS - sub) % MODULUS)
        };
        if value != 0 {
            out.push((col, value));
        }
    }
    out
}
