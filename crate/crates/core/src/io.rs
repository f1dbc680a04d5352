//! Text file format shared by states and operators:
//! `{"kind": "ket" | "dm" | "op", "d": 2, "n": 3, "data": [[re, im], ...]}`
//! with matrix entries in row-major order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::QuantumOperator;
use crate::state::{DensityMatrix, RegisterShape, StateLike, StateVector};
use crate::{CMatrix, CVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ket,
    Dm,
    Op,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: Kind,
    d: usize,
    n: usize,
    data: Vec<[f64; 2]>,
}

/// A parsed file.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Ket(StateVector),
    Dm(DensityMatrix),
    Op(QuantumOperator),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Ket(_) => Kind::Ket,
            Document::Dm(_) => Kind::Dm,
            Document::Op(_) => Kind::Op,
        }
    }

    pub fn shape(&self) -> RegisterShape {
        match self {
            Document::Ket(v) => v.shape(),
            Document::Dm(m) => m.shape(),
            Document::Op(o) => o.shape(),
        }
    }

    /// The state, if this is a ket or a density matrix.
    pub fn into_state(self) -> Result<StateLike> {
        match self {
            Document::Ket(v) => Ok(StateLike::Pure(v)),
            Document::Dm(m) => Ok(StateLike::Mixed(m)),
            Document::Op(_) => Err(Error::Format("expected a state, found an operator".into())),
        }
    }

    /// Any document as an operator; a ket becomes its projector.
    pub fn into_operator(self) -> Result<QuantumOperator> {
        match self {
            Document::Op(o) => Ok(o),
            Document::Dm(m) => {
                let shape = m.shape();
                QuantumOperator::from_dense(m.into_matrix(), shape)
            }
            Document::Ket(v) => {
                let p = v.projector()?;
                let shape = p.shape();
                QuantumOperator::from_dense(p.into_matrix(), shape)
            }
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let shape = self.shape();
        let data: Vec<[f64; 2]> = match self {
            Document::Ket(v) => v.amplitudes().iter().map(pair).collect(),
            Document::Dm(m) => row_major(m.matrix()),
            Document::Op(o) => row_major(&*o.dense()?),
        };
        let raw = Raw { kind: self.kind(), d: shape.dim(), n: shape.n_qudits(), data };
        serde_json::to_string(&raw).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let shape = RegisterShape::new(raw.n, raw.d)?;
        let side = shape.total_dim();
        let expected = match raw.kind {
            Kind::Ket => side,
            Kind::Dm | Kind::Op => side.checked_mul(side).ok_or_else(|| Error::Format("register too large".into()))?,
        };
        if raw.data.len() != expected {
            return Err(Error::Format(format!("{:?} with d={} n={} needs {expected} entries, found {}", raw.kind, raw.d, raw.n, raw.data.len())));
        }
        if raw.data.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Format("non-finite entry".into()));
        }
        let entries: Vec<C64> = raw.data.iter().map(|p| C64::new(p[0], p[1])).collect();
        Ok(match raw.kind {
            Kind::Ket => {
                let v = StateVector::from_amplitudes(CVector::from_vec(entries), shape)?;
                if v.norm() == 0.0 {
                    return Err(Error::ZeroNorm("ket"));
                }
                Document::Ket(v)
            }
            Kind::Dm => Document::Dm(DensityMatrix::new(CMatrix::from_row_slice(side, side, &entries), shape)?),
            Kind::Op => Document::Op(QuantumOperator::from_dense(CMatrix::from_row_slice(side, side, &entries), shape)?),
        })
    }
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

fn row_major(m: &CMatrix) -> Vec<[f64; 2]> {
    (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| pair(&m[(r, c)]))).collect()
}

impl From<StateVector> for Document {
    fn from(v: StateVector) -> Self {
        Document::Ket(v)
    }
}

impl From<DensityMatrix> for Document {
    fn from(m: DensityMatrix) -> Self {
        Document::Dm(m)
    }
}

impl From<QuantumOperator> for Document {
    fn from(o: QuantumOperator) -> Self {
        Document::Op(o)
    }
}

impl From<StateLike> for Document {
    fn from(s: StateLike) -> Self {
        match s {
            StateLike::Pure(v) => Document::Ket(v),
            StateLike::Mixed(m) => Document::Dm(m),
        }
    }
}
