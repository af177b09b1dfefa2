use super::linear::LinearChange;
use super::poly::{Poly, Rational};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default half-width of the integer range generic coefficients come from.
pub const DEFAULT_COEFF_BOUND: i64 = 101;

/// Seeded, platform-independent stream of integer draws.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    draws: u64,
    rng: ChaCha8Rng,
    bound: i64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            draws: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: DEFAULT_COEFF_BOUND,
        }
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1);
        RandomSource {
            bound,
            ..Self::new(seed)
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Uniform integer in `[-B, B]`.
    pub fn coefficient(&mut self) -> i64 {
        self.coefficient_in(self.bound)
    }

    pub fn coefficient_in(&mut self, bound: i64) -> i64 {
        self.draws += 1;
        self.rng.gen_range(-bound..=bound)
    }

    pub fn nonzero_coefficient(&mut self) -> i64 {
        loop {
            let c = self.coefficient();
            if c != 0 {
                return c;
            }
        }
    }

    /// Uniform integer in `[0, n)`.
    pub fn index(&mut self, n: usize) -> usize {
        self.draws += 1;
        self.rng.gen_range(0..n)
    }

    pub fn rational(&mut self) -> Rational {
        Rational::from_integer(self.coefficient().into())
    }

    /// Random invertible integer matrix with entries in `[-B, B]`.
    pub fn linear_change(&mut self, n: usize) -> LinearChange {
        loop {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| self.coefficient()).collect())
                .collect();
            if let Ok(l) = LinearChange::from_integers(&rows) {
                return l;
            }
        }
    }

    /// Random `rows × cols` integer matrix.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| self.rational()).collect())
            .collect()
    }
}

/// `Σ_j c_j f_j` for explicit coefficients.
pub fn linear_combination(fs: &[Poly], coeffs: &[Rational]) -> Result<Poly> {
    if fs.len() != coeffs.len() {
        return Err(Error::Count {
            expected: fs.len(),
            got: coeffs.len(),
        });
    }
    let n = fs.first().ok_or(Error::Empty("linear combination"))?.nvars();
    let mut acc = Poly::zero(n);
    for (f, c) in fs.iter().zip(coeffs) {
        acc = acc.checked_add(&f.scale(c))?;
    }
    Ok(acc)
}

/// `count` random nonzero combinations of `fs`, with coefficient rows
/// returned alongside the polynomials.
pub fn random_linear_combinations_with_coeffs(
    fs: &[Poly],
    count: usize,
    rng: &mut RandomSource,
) -> Result<(Vec<Poly>, Vec<Vec<Rational>>)> {
    if fs.is_empty() {
        return Err(Error::Empty("random linear combinations of an empty list"));
    }
    let mut polys = Vec::with_capacity(count);
    let mut rows = Vec::with_capacity(count);
    while polys.len() < count {
        let row: Vec<Rational> = (0..fs.len()).map(|_| rng.rational()).collect();
        let p = linear_combination(fs, &row)?;
        if p.is_zero() {
            continue;
        }
        polys.push(p);
        rows.push(row);
    }
    Ok((polys, rows))
}

pub fn random_linear_combinations(
    fs: &[Poly],
    count: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Poly>> {
    Ok(random_linear_combinations_with_coeffs(fs, count, rng)?.0)
}
