//! JSON and CSV forms of representations, matrices and certificates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::{CorankResult, IrreducibilityCertificate};
use crate::error::Error;
use crate::monomial::{DenseMatrix, MonomialMatrix};
use crate::orbit::ValueTuple;
use crate::rep::{QTable, Representation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub perm: Vec<usize>,
    pub scale: Vec<String>,
}

impl From<&MonomialMatrix> for GeneratorJson {
    fn from(g: &MonomialMatrix) -> Self {
        Self {
            perm: g.perm().to_vec(),
            scale: g.scale().iter().map(Scalar::to_string).collect(),
        }
    }
}

impl GeneratorJson {
    pub fn to_matrix(&self) -> Result<MonomialMatrix, Error> {
        let scale = self
            .scale
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Scalar>, _>>()?;
        MonomialMatrix::new(self.perm.clone(), scale)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub n: usize,
    pub seed: ValueTuple,
    pub basis: Vec<ValueTuple>,
    pub q_table: BTreeMap<String, String>,
    pub generators: Vec<GeneratorJson>,
}

impl From<&Representation> for RepresentationJson {
    fn from(rep: &Representation) -> Self {
        Self {
            n: rep.strands(),
            seed: rep.seed().clone(),
            basis: rep.orbit().basis().to_vec(),
            q_table: rep.q_table().to_string_map(),
            generators: rep.generators().iter().map(GeneratorJson::from).collect(),
        }
    }
}

impl RepresentationJson {
    /// Rebuilds the representation with the stored generators, after checking
    /// that the stored basis is the orbit of the seed in ascending order.
    pub fn to_representation(&self) -> Result<Representation, Error> {
        if self.seed.len() != self.n {
            return Err(Error::DimMismatch(self.n, self.seed.len()));
        }
        let q = QTable::from_string_map(&self.q_table)?;
        let generators = self
            .generators
            .iter()
            .map(GeneratorJson::to_matrix)
            .collect::<Result<Vec<_>, _>>()?;
        let rep = Representation::from_parts(self.seed.clone(), q, generators)?;
        if rep.orbit().basis() != self.basis.as_slice() {
            return Err(Error::Invalid(
                "stored basis is not the sorted orbit of the seed".into(),
            ));
        }
        Ok(rep)
    }
}

pub fn representation_to_json(rep: &Representation) -> String {
    serde_json::to_string_pretty(&RepresentationJson::from(rep)).expect("serializable")
}

pub fn representation_from_json(text: &str) -> Result<Representation, Error> {
    let doc: RepresentationJson = serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("representation JSON: {e}")))?;
    doc.to_representation()
}

pub fn dense_to_json(m: &DenseMatrix) -> serde_json::Value {
    serde_json::to_value(m.to_strings()).expect("serializable")
}

#[derive(Clone, Debug, Serialize)]
pub struct CorankJson {
    pub per_k: Vec<usize>,
    pub closed_form: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    InvariantLine {
        vector: Vec<String>,
        eigenvalues: Vec<String>,
    },
    /// `v_x ↦ v_x̄` commutes with every generator; `span{v_x ± v_x̄}` are invariant.
    ComplementSymmetry {
        pairs: Vec<[ValueTuple; 2]>,
        eigenspace_dims: [usize; 2],
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementPairJson {
    pub x: ValueTuple,
    pub y: ValueTuple,
    pub k: usize,
    pub image: [ValueTuple; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub verdict: &'static str,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation_point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutant_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<[ValueTuple; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    /// Single-pair spans shown not to be invariant (the `n = 2m` branch).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pair_refutations: Vec<ComplementPairJson>,
    pub corank: CorankJson,
}

impl CertificateJson {
    /// `basis` is the orbit the certificate's indices refer to.
    pub fn new(
        cert: &IrreducibilityCertificate,
        corank: &CorankResult,
        basis: &[ValueTuple],
    ) -> Self {
        let witness = if let Some(line) = &cert.witness {
            Some(WitnessJson::InvariantLine {
                vector: line.vector.iter().map(Scalar::to_string).collect(),
                eigenvalues: line.eigenvalues.iter().map(Scalar::to_string).collect(),
            })
        } else {
            cert.symmetry
                .as_ref()
                .map(|sym| WitnessJson::ComplementSymmetry {
                    pairs: sym
                        .pairs
                        .iter()
                        .map(|&(x, y)| [basis[x].clone(), basis[y].clone()])
                        .collect(),
                    eigenspace_dims: [sym.eigenspace_dims.0, sym.eigenspace_dims.1],
                })
        };
        let pair_refutations = cert
            .refutations
            .iter()
            .map(|r| ComplementPairJson {
                x: r.x.clone(),
                y: r.y.clone(),
                k: r.k,
                image: [r.image_support.0.clone(), r.image_support.1.clone()],
            })
            .collect();
        Self {
            verdict: cert.verdict.as_str(),
            method: cert.method.as_str(),
            evaluation_point: cert.evaluation_point.as_ref().map(ToString::to_string),
            commutant_dim: cert.commutant_dim,
            failing_pair: cert.failing_pair.clone().map(|(x, y)| [x, y]),
            witness,
            pair_refutations,
            corank: CorankJson {
                per_k: corank.per_k.clone(),
                closed_form: corank.closed_form,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::verify_braid_relations;

    #[test]
    fn representation_round_trip() {
        let rep = Representation::build_phi_m(5, 3).unwrap();
        let text = representation_to_json(&rep);
        let back = representation_from_json(&text).unwrap();
        assert_eq!(back.generators(), rep.generators());
        assert_eq!(back.q_table(), rep.q_table());
        assert!(verify_braid_relations(&back).all_passed());
        assert_eq!(representation_to_json(&back), text);
    }

    #[test]
    fn rejects_wrong_basis() {
        let rep = Representation::build_phi_m(3, 1).unwrap();
        let mut doc = RepresentationJson::from(&rep);
        doc.basis.reverse();
        assert!(doc.to_representation().is_err());
    }

    #[test]
    fn json_shape() {
        let rep = Representation::build_phi_m(3, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&representation_to_json(&rep)).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["seed"], "(1,0,0)");
        assert_eq!(v["basis"][0], "(0,0,1)");
        assert_eq!(v["q_table"]["0,1"], "t");
        assert_eq!(v["generators"][0]["perm"], serde_json::json!([0, 2, 1]));
        assert_eq!(
            v["generators"][0]["scale"],
            serde_json::json!(["1", "t", "t"])
        );
    }
}
