//! Exact linear algebra over the rationals.
//!
//! Everything here works fraction-free: rational rows are scaled to integer
//! rows, and elimination uses Bareiss-style cross-multiplication with exact
//! divisions, so no floating point and no uncontrolled denominator growth
//! enter the picture. Pivots are chosen by largest absolute value (then
//! lowest row index), which keeps every computation deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scales a rational row to an integer row by the least common multiple of
/// the denominators.
fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(c.denom());
    }
    row.iter()
        .map(|c| {
            let v = c * &lcm;
            debug_assert!(v.denom().is_one());
            v.numer().clone()
        })
        .collect()
}

/// Divides an integer row by the gcd of its entries and normalizes the sign
/// of the first nonzero entry to positive. The zero row is returned as-is.
fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut gcd = BigInt::zero();
    for v in &row {
        gcd = gcd.gcd(v);
        if gcd.is_one() {
            break;
        }
    }
    if gcd.is_zero() {
        return row;
    }
    let lead_negative = row
        .iter()
        .find(|v| !v.is_zero())
        .map(|v| v.is_negative())
        .unwrap_or(false);
    if lead_negative {
        gcd = -gcd;
    }
    if !gcd.is_one() {
        for v in &mut row {
            let q = &*v / &gcd;
            *v = q;
        }
    }
    row
}

/// Rank of a rational matrix given as rows, via Bareiss fraction-free
/// Gaussian elimination with pivoting by largest absolute entry.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    rank_integer(&mut m)
}

fn rank_integer(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev_pivot = BigInt::one();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        // pivot: largest |entry| in this column at or below `rank`
        let mut best: Option<(usize, BigInt)> = None;
        for (i, row) in m.iter().enumerate().skip(rank) {
            let v = row[col].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((_, b)) if *b >= v => {}
                _ => best = Some((i, v)),
            }
        }
        let Some((pivot_row, _)) = best else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for i in (rank + 1)..nrows {
            for j in (col + 1)..ncols {
                let num = &pivot * &m[i][j] - &m[i][col] * &m[rank][j];
                let (q, r) = num.div_rem(&prev_pivot);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
        col += 1;
    }
    rank
}

/// Solves the square system `A x = b` exactly. Returns `None` when `A` is
/// singular. Forward elimination is Bareiss fraction-free on the augmented
/// integer matrix; back-substitution happens over the rationals.
pub fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length mismatch");
    if n == 0 {
        return Some(Vec::new());
    }
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            clear_denominators(&row)
        })
        .collect();

    let mut prev_pivot = BigInt::one();
    for col in 0..n {
        let mut best: Option<(usize, BigInt)> = None;
        for (i, row) in m.iter().enumerate().skip(col) {
            let v = row[col].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((_, bv)) if *bv >= v => {}
                _ => best = Some((i, v)),
            }
        }
        let Some((pivot_row, _)) = best else {
            return None; // singular
        };
        m.swap(col, pivot_row);
        let pivot = m[col][col].clone();
        for i in (col + 1)..n {
            for j in (col + 1)..=n {
                let num = &pivot * &m[i][j] - &m[i][col] * &m[col][j];
                let (q, r) = num.div_rem(&prev_pivot);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev_pivot = pivot;
    }

    // back-substitution over Q
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in (i + 1)..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Some(x)
}

/// Incremental detector of linear independence.
///
/// Holds a set of primitive integer rows in echelon form. [`Sieve::insert`]
/// reduces a candidate against the stored rows with fraction-free
/// cross-multiplication; a nonzero remainder means the candidate is
/// independent of everything seen so far, and the remainder joins the
/// echelon set. Insertion order fully determines which candidates are kept,
/// so greedy basis selection over a deterministic candidate stream is
/// reproducible.
#[derive(Debug, Clone, Default)]
pub struct Sieve {
    /// Echelon rows, each primitive, keyed by pivot column (ascending).
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Sieve {
    pub fn new() -> Self {
        Sieve::default()
    }

    /// Number of independent rows inserted so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `candidate` against the stored rows. Returns `true` (and
    /// stores the remainder) when the candidate extends the span.
    pub fn insert(&mut self, candidate: &[BigRational]) -> bool {
        let row = clear_denominators(candidate);
        self.insert_integer(row)
    }

    fn insert_integer(&mut self, mut row: Vec<BigInt>) -> bool {
        for (pivot_col, pivot_row) in &self.rows {
            let c = row[*pivot_col].clone();
            if c.is_zero() {
                continue;
            }
            let p = pivot_row[*pivot_col].clone();
            for (v, pv) in row.iter_mut().zip(pivot_row) {
                let combined = &*v * &p - pv * &c;
                *v = combined;
            }
            row = make_primitive(row);
        }
        let Some(pivot_col) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let row = make_primitive(row);
        let at = self
            .rows
            .binary_search_by_key(&pivot_col, |(c, _)| *c)
            .expect_err("pivot column already eliminated");
        self.rows.insert(at, (pivot_col, row));
        true
    }
}
