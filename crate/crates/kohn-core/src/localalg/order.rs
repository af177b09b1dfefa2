use crate::polyring::Monomial;
use std::cmp::Ordering;
use std::fmt;

/// Monomial orders used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Negative degree reverse lexicographic (`ds`): lower degree is larger,
    /// so `1 > z_i`. Computes in the local ring at the origin.
    Local,
    /// Degree reverse lexicographic (`dp`).
    Degrevlex,
    /// Product of two degrevlex blocks; the first `split` variables are
    /// eliminated first.
    Block(usize),
}

fn revlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| revlex_tie(a, b))
}

impl MonomialOrder {
    /// `Greater` means `a` is bigger than `b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Local => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                db.cmp(&da).then_with(|| revlex_tie(a, b))
            }
            MonomialOrder::Degrevlex => degrevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, MonomialOrder::Local)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Local => "local-ds".into(),
            MonomialOrder::Degrevlex => "global-dp".into(),
            MonomialOrder::Block(k) => format!("block-dp-{k}"),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "local-ds" => Some(MonomialOrder::Local),
            "global-dp" => Some(MonomialOrder::Degrevlex),
            _ => s
                .strip_prefix("block-dp-")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::Block),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
