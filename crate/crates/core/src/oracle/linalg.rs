//! Dense Gaussian elimination over `Q` and over prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalars::Rational;

pub trait ScalarField {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational, or `None` when its denominator vanishes.
    fn embed(&self, r: &Rational) -> Option<Self::Elem>;
}

pub struct RationalField;

impl ScalarField for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn sub_mul(&self, a: &Rational, b: &Rational, c: &Rational) -> Rational {
        a - b * c
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }

    fn embed(&self, r: &Rational) -> Option<Rational> {
        Some(r.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    fn reduce_int(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = x.mod_floor(&p);
        r.to_u64().expect("reduced")
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a, self.p);
            }
            a = mulmod(a, a, self.p);
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl ScalarField for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = mulmod(*b, *c, self.p);
        (*a + self.p - bc) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }

    fn embed(&self, r: &Rational) -> Option<u64> {
        let d = self.reduce_int(r.denom());
        if d == 0 {
            return None;
        }
        Some(mulmod(self.reduce_int(r.numer()), self.inv(&d), self.p))
    }
}

/// Row-echelon form built incrementally; returns the rank.
pub fn rank<F: ScalarField>(field: &F, rows: Vec<Vec<F::Elem>>) -> usize {
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for mut row in rows {
        for (pc, prow) in &basis {
            let f = row[*pc].clone();
            if field.is_zero(&f) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(prow.iter()).skip(*pc) {
                if !field.is_zero(y) {
                    *x = field.sub_mul(x, &f, y);
                }
            }
        }
        if let Some(pc) = row.iter().position(|x| !field.is_zero(x)) {
            let inv = field.inv(&row[pc]);
            for x in row.iter_mut().skip(pc) {
                *x = field.mul(x, &inv);
            }
            basis.push((pc, row));
        }
    }
    basis.len()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows (`ncols` unknowns).
pub fn nullspace_rational(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][fc].clone();
            }
            v
        })
        .collect()
}

fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let f = PrimeField { p: n };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `(2^30, 2^31)`.
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if is_probable_prime(c) {
            return c;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    ExactRational,
    Modular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystemRank {
    pub method: RankMethod,
    pub primes: Vec<u64>,
    pub unknowns: usize,
    pub rank: usize,
    /// Dimension of the solution space over `Q`.
    pub nullity: usize,
    /// Modular ranks disagreed and exact elimination decided.
    pub escalated: bool,
}

/// A linear system over `Q` stored by sparse columns, one per unknown.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    pub nrows: usize,
    pub columns: Vec<Vec<(usize, Rational)>>,
}

impl SparseSystem {
    pub fn new(nrows: usize) -> Self {
        SparseSystem { nrows, columns: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.columns.len()
    }

    fn dense_columns<F: ScalarField>(&self, field: &F) -> Option<Vec<Vec<F::Elem>>> {
        let mut out = Vec::with_capacity(self.columns.len());
        for col in &self.columns {
            let mut v = vec![field.zero(); self.nrows];
            for (i, x) in col {
                v[*i] = field.embed(x)?;
            }
            out.push(v);
        }
        Some(out)
    }

    pub fn rank_over<F: ScalarField>(&self, field: &F) -> Option<usize> {
        Some(rank(field, self.dense_columns(field)?))
    }

    pub fn exact_rank(&self) -> usize {
        self.rank_over(&RationalField).expect("rationals")
    }

    fn modular_rank<R: Rng>(&self, rng: &mut R) -> (u64, usize) {
        loop {
            let p = random_prime(rng);
            if let Some(r) = self.rank_over(&PrimeField { p }) {
                return (p, r);
            }
        }
    }

    /// Rank modulo two random primes; exact elimination on disagreement or
    /// when `exact` is set.
    pub fn solve<R: Rng>(&self, exact: bool, rng: &mut R) -> LinearSystemRank {
        let unknowns = self.unknowns();
        let done = |method, primes, rank, escalated| LinearSystemRank {
            method,
            primes,
            unknowns,
            rank,
            nullity: unknowns - rank,
            escalated,
        };
        if exact {
            return done(RankMethod::ExactRational, vec![], self.exact_rank(), false);
        }
        let (p1, r1) = self.modular_rank(rng);
        let (mut p2, mut r2) = self.modular_rank(rng);
        while p2 == p1 {
            (p2, r2) = self.modular_rank(rng);
        }
        if r1 == r2 {
            done(RankMethod::Modular, vec![p1, p2], r1, false)
        } else {
            done(RankMethod::ExactRational, vec![p1, p2], self.exact_rank(), true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primes_are_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let p = random_prime(&mut rng);
            assert!(p > 1 << 30 && p < 1 << 31);
            assert!(is_probable_prime(p));
        }
        assert!(!is_probable_prime(1 << 30));
        assert!(is_probable_prime(2147483647));
    }

    #[test]
    fn modular_and_exact_rank_agree() {
        let mut sys = SparseSystem::new(3);
        sys.columns.push(vec![(0, rat(1, 2)), (1, rat_int(3))]);
        sys.columns.push(vec![(0, rat_int(1)), (1, rat_int(6))]);
        sys.columns.push(vec![(2, rat(2, 7))]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = sys.solve(false, &mut rng);
        let e = sys.solve(true, &mut rng);
        assert_eq!((m.rank, e.rank), (2, 2));
        assert_eq!(m.nullity, 1);
    }

    #[test]
    fn nullspace_of_a_rank_one_matrix() {
        let rows = vec![vec![rat_int(1), rat_int(2), rat_int(3)], vec![rat_int(2), rat_int(4), rat_int(6)]];
        let ns = nullspace_rational(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rational = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }
}
