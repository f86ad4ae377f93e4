//! Jacobi parameters, the three distinguished series, and the basis context.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;

/// Jacobi parameters stored as `(a, eps)` with `b = 2 eps - 1 - a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JacobiParams {
    a: Rat,
    eps: Rat,
}

impl JacobiParams {
    pub fn new(a: Rat, eps: Rat) -> Result<Self> {
        let p = JacobiParams { a, eps };
        p.validate()?;
        Ok(p)
    }

    pub fn from_ab(a: Rat, b: Rat) -> Result<Self> {
        let eps = (&a + &b + Rat::one()) / Rat::int(2);
        JacobiParams::new(a, eps)
    }

    fn validate(&self) -> Result<()> {
        if self.a <= Rat::int(-1) {
            return Err(Error::InvalidParams(format!("a = {} must exceed -1", self.a)));
        }
        if self.b() <= Rat::int(-1) {
            return Err(Error::InvalidParams(format!("b = {} must exceed -1", self.b())));
        }
        if self.eps.is_negative() {
            return Err(Error::InvalidParams(format!("eps = {} must be >= 0", self.eps)));
        }
        Ok(())
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn eps(&self) -> &Rat {
        &self.eps
    }

    pub fn b(&self) -> Rat {
        &self.eps * Rat::int(2) - Rat::one() - &self.a
    }

    pub fn series(&self) -> Option<SeriesTag> {
        SeriesTag::ALL.into_iter().find(|s| s.params() == *self)
    }
}

impl From<SeriesTag> for JacobiParams {
    fn from(s: SeriesTag) -> Self {
        s.params()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesTag {
    C,
    B,
    D,
}

impl SeriesTag {
    pub const ALL: [SeriesTag; 3] = [SeriesTag::C, SeriesTag::B, SeriesTag::D];

    pub fn params(self) -> JacobiParams {
        let (a, eps) = match self {
            SeriesTag::C => (Rat::half(), Rat::one()),
            SeriesTag::B => (Rat::half(), Rat::half()),
            SeriesTag::D => (-Rat::half(), Rat::zero()),
        };
        JacobiParams { a, eps }
    }

    pub fn eps(self) -> Rat {
        self.params().eps
    }

    /// Degree of the K = 1 row as a piecewise polynomial in k.
    pub fn spline_degree(self, n: usize) -> usize {
        match self {
            SeriesTag::C | SeriesTag::B => 2 * n - 2,
            SeriesTag::D => 2 * n - 3,
        }
    }
}

impl fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesTag::C => "C",
            SeriesTag::B => "B",
            SeriesTag::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for SeriesTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "C" => Ok(SeriesTag::C),
            "B" => Ok(SeriesTag::B),
            "D" => Ok(SeriesTag::D),
            other => Err(Error::InvalidParams(format!("unknown series {other:?}"))),
        }
    }
}

/// Parameters `(a, eps)` together with the rank gap `L >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisCtx {
    pub params: JacobiParams,
    pub l: usize,
}

impl BasisCtx {
    pub fn new(params: JacobiParams, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidParams("L must be at least 1".into()));
        }
        Ok(BasisCtx { params, l })
    }

    pub fn series(s: SeriesTag, l: usize) -> Self {
        BasisCtx::new(s.params(), l).expect("series parameters are valid")
    }

    pub fn a(&self) -> &Rat {
        self.params.a()
    }

    pub fn eps(&self) -> &Rat {
        self.params.eps()
    }

    pub fn l_rat(&self) -> Rat {
        Rat::from(self.l)
    }

    /// Grid point `A_m = L + eps + m - 1`.
    pub fn grid(&self, m: usize) -> Rat {
        assert!(m >= 1, "grid index starts at 1");
        self.l_rat() + self.eps() + Rat::from(m - 1)
    }

    /// If `u` equals `A_m^2` for some `m >= 1`, returns `m`.
    pub fn grid_index(&self, u: &Rat) -> Option<usize> {
        let a = u.sqrt_exact()?;
        let m = &a - self.l_rat() - self.eps() + Rat::one();
        if m.is_integer() && m >= 1 {
            m.to_i64().map(|v| v as usize)
        } else {
            None
        }
    }
}
