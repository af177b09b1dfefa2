use super::monomial::Monomial;
use super::poly::{Poly, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

pub fn rational_to_string(c: &Rational) -> String {
    c.to_string()
}

pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars(),
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    exp: m.exponents().to_vec(),
                    coef: rational_to_string(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        if repr.nvars == 0 {
            return Err(D::Error::custom("nvars must be positive"));
        }
        let mut map = BTreeMap::new();
        for t in repr.terms {
            if t.exp.len() != repr.nvars {
                return Err(D::Error::custom(format!(
                    "exponent vector of length {} in a ring of {} variables",
                    t.exp.len(),
                    repr.nvars
                )));
            }
            let c = rational_from_str(&t.coef)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {:?}", t.coef)))?;
            let m = Monomial::from_exponents(&t.exp);
            let e: &mut Rational = map.entry(m).or_default();
            *e += c;
        }
        map.retain(|_, c: &mut Rational| !num_traits::Zero::is_zero(c));
        Ok(Poly::from_map(repr.nvars, map))
    }
}

/// Serde adapter for exact rationals as `"p/q"` strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        rational_from_str(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}
