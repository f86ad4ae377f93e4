//! Weakly decreasing tuples of nonnegative integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::DegenerateInput(format!(
                "signature {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Signature(parts))
    }

    /// Pads `parts` with zeros to length `n`.
    pub fn padded(parts: &[u32], n: usize) -> Result<Self> {
        let trimmed: Vec<u32> = {
            let mut v = parts.to_vec();
            while v.len() > n && v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        if trimmed.len() > n {
            return Err(Error::DegenerateInput(format!(
                "signature {parts:?} has more than {n} nonzero parts"
            )));
        }
        let mut v = trimmed;
        v.resize(n, 0);
        Signature::new(v)
    }

    /// The zero signature of length `n`.
    pub fn empty(n: usize) -> Self {
        Signature(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Shifted coordinates `nu_i + N - i`, strictly decreasing.
    pub fn shifted(&self) -> Vec<i64> {
        let n = self.len() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 + n - 1 - i as i64)
            .collect()
    }

    /// Componentwise containment of Young diagrams, `self ⊆ other`.
    pub fn contained_in(&self, other: &Signature) -> bool {
        (0..self.len().max(other.len())).all(|i| {
            self.0.get(i).copied().unwrap_or(0) <= other.0.get(i).copied().unwrap_or(0)
        })
    }

    /// All signatures of length `k` with first part at most `bound`, in
    /// lexicographic order.
    pub fn enumerate(k: usize, bound: u32) -> Vec<Signature> {
        fn rec(k: usize, bound: u32, prefix: &mut Vec<u32>, out: &mut Vec<Signature>) {
            if prefix.len() == k {
                out.push(Signature(prefix.clone()));
                return;
            }
            for p in 0..=bound {
                prefix.push(p);
                rec(k, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, bound, &mut Vec::with_capacity(k), &mut out);
        out
    }

    /// All signatures of length `k` contained in `self` (padded or truncated
    /// to `k` parts).
    pub fn subdiagrams(&self, k: usize) -> Vec<Signature> {
        let outer: Vec<u32> = (0..k).map(|i| self.0.get(i).copied().unwrap_or(0)).collect();
        Signature::enumerate(k, self.first())
            .into_iter()
            .filter(|s| s.0.iter().zip(&outer).all(|(a, b)| a <= b))
            .collect()
    }
}

impl From<Signature> for Vec<u32> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

impl TryFrom<Vec<u32>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Signature::new(v)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma list such as `2,1,0`; surrounding parentheses are allowed.
impl FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Signature(Vec::new()));
        }
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::DegenerateInput(format!("bad signature part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(parts)
    }
}
