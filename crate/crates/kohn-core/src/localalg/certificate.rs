use crate::error::{Error, Result};
use crate::polyring::Poly;
use serde::{Deserialize, Serialize};

/// Exact witness of `unit·target = Σ cofactors_i · generators_i` with
/// `unit(0) ≠ 0`, i.e. membership of `target` in the ideal of the local ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
    pub target: Poly,
    pub generators: Vec<Poly>,
}

impl MembershipCertificate {
    /// `unit·target - Σ cofactor_i·generator_i`, zero for a valid certificate.
    pub fn residual(&self) -> Result<Poly> {
        if self.cofactors.len() != self.generators.len() {
            return Err(Error::Count {
                expected: self.generators.len(),
                got: self.cofactors.len(),
            });
        }
        let mut r = self.unit.checked_mul(&self.target)?;
        for (a, g) in self.cofactors.iter().zip(&self.generators) {
            r = r.checked_sub(&a.checked_mul(g)?)?;
        }
        Ok(r)
    }

    pub fn verify(&self) -> bool {
        !self.unit.constant_term().eq(&num_traits::Zero::zero())
            && self.residual().map(|r| r.is_zero()).unwrap_or(false)
    }
}

/// Nested ideals `I_1 ⊆ … ⊆ I_k` given by generator prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration {
    stages: Vec<Vec<Poly>>,
}

impl Filtration {
    pub fn new(stages: Vec<Vec<Poly>>) -> Result<Self> {
        for w in stages.windows(2) {
            if w[1].len() < w[0].len() || w[1][..w[0].len()] != w[0][..] {
                return Err(Error::domain("filtration", "stage does not extend the previous one"));
            }
        }
        Ok(Filtration { stages })
    }

    /// `I_j = (f_1, …, f_j)` for `j = 1..=k`.
    pub fn from_prefixes(fs: &[Poly]) -> Self {
        Filtration {
            stages: (1..=fs.len()).map(|j| fs[..j].to_vec()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Generators of stage `j` (1-based, like the ideals it names).
    pub fn stage(&self, j: usize) -> Option<&[Poly]> {
        j.checked_sub(1).and_then(|i| self.stages.get(i)).map(|s| s.as_slice())
    }
}
