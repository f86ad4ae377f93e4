use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::params::{JacobiParams, SeriesTag};
use crate::signature::Signature;

/// Which parameter family a row was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowParams {
    Series(SeriesTag),
    General(JacobiParams),
}

impl RowParams {
    pub fn jacobi(&self) -> JacobiParams {
        match self {
            RowParams::Series(s) => s.params(),
            RowParams::General(p) => p.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RowParams::Series(s) => s.to_string(),
            RowParams::General(_) => "general".into(),
        }
    }
}

impl From<SeriesTag> for RowParams {
    fn from(s: SeriesTag) -> Self {
        RowParams::Series(s)
    }
}

impl From<JacobiParams> for RowParams {
    fn from(p: JacobiParams) -> Self {
        RowParams::General(p)
    }
}

/// The distribution `kappa -> Lambda(nu, kappa)` on length-`K` signatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaRow {
    pub nu: Signature,
    pub n: usize,
    pub k: usize,
    pub params: RowParams,
    pub weights: BTreeMap<Signature, Rat>,
}

impl LambdaRow {
    pub fn get(&self, kappa: &Signature) -> Rat {
        self.weights.get(kappa).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total(&self) -> Rat {
        self.weights.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.values().all(|w| !w.is_negative())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Wire::from(self)).expect("row serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: Wire = serde_json::from_str(s).map_err(|e| Error::DegenerateInput(e.to_string()))?;
        w.try_into()
    }

    /// CSV with header `kappa,p`; signatures are written as `2 1 0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kappa,p\n");
        for (kappa, p) in &self.weights {
            let parts: Vec<String> = kappa.parts().iter().map(u32::to_string).collect();
            out.push_str(&format!("{},{}\n", parts.join(" "), p));
        }
        out
    }
}

impl fmt::Display for LambdaRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lambda^{}_{}({}, .) [{}]:", self.n, self.k, self.nu, self.params.label())?;
        for (kappa, p) in &self.weights {
            write!(f, " {kappa}:{p}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WireWeight {
    kappa: Signature,
    p: Rat,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    nu: Signature,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    series: String,
    a: Rat,
    eps: Rat,
    weights: Vec<WireWeight>,
}

impl From<&LambdaRow> for Wire {
    fn from(r: &LambdaRow) -> Self {
        let p = r.params.jacobi();
        Wire {
            nu: r.nu.clone(),
            n: r.n,
            k: r.k,
            series: r.params.label(),
            a: p.a().clone(),
            eps: p.eps().clone(),
            weights: r
                .weights
                .iter()
                .map(|(kappa, p)| WireWeight {
                    kappa: kappa.clone(),
                    p: p.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<Wire> for LambdaRow {
    type Error = Error;
    fn try_from(w: Wire) -> Result<Self> {
        let params = if w.series == "general" {
            RowParams::General(JacobiParams::new(w.a, w.eps)?)
        } else {
            RowParams::Series(w.series.parse()?)
        };
        Ok(LambdaRow {
            nu: w.nu,
            n: w.n,
            k: w.k,
            params,
            weights: w.weights.into_iter().map(|x| (x.kappa, x.p)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> LambdaRow {
        let mut weights = BTreeMap::new();
        weights.insert(Signature::new(vec![0]).unwrap(), Rat::new(1, 3));
        weights.insert(Signature::new(vec![1]).unwrap(), Rat::new(2, 3));
        LambdaRow {
            nu: Signature::new(vec![1, 0]).unwrap(),
            n: 2,
            k: 1,
            params: RowParams::Series(SeriesTag::D),
            weights,
        }
    }

    #[test]
    fn json_shape_and_roundtrip() {
        let row = sample();
        let s = row.to_json();
        assert_eq!(
            s,
            r#"{"nu":[1,0],"N":2,"K":1,"series":"D","a":"-1/2","eps":"0","weights":[{"kappa":[0],"p":"1/3"},{"kappa":[1],"p":"2/3"}]}"#
        );
        assert_eq!(LambdaRow::from_json(&s).unwrap(), row);

        let mut g = sample();
        g.params = RowParams::General(JacobiParams::new(Rat::zero(), Rat::half()).unwrap());
        assert_eq!(LambdaRow::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn csv_shape() {
        assert_eq!(sample().to_csv(), "kappa,p\n0,1/3\n1,2/3\n");
    }
}
