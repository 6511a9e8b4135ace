//! JSON manifold documents. Rationals travel as strings (`"p/q"`) so nothing is
//! lost; frame indices are 1-based as in `e_1, …, e_n`.

use std::collections::BTreeSet;
use std::fmt;

use ndarray::{Array1, Array2, Array3};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::contact::AlmostContactStructure;
use crate::error::{Error, Result};
use crate::frame::{Endomorphism, FrameVector, LieFrameManifold};
use crate::rational::{format_rational, parse_rational, Rational};

/// A rational serialized as its canonical string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(Exact).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: i64,
    pub coef: Exact,
}

/// `[e_i, e_j] = Σ coef · e_k`, listed once per pair with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: i64,
    pub j: i64,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "MetricRepr", into = "MetricRepr")]
pub enum MetricSpec {
    Identity,
    Matrix(Vec<Vec<Exact>>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MetricRepr {
    Named(MetricName),
    Matrix(Vec<Vec<Exact>>),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum MetricName {
    Identity,
}

impl From<MetricRepr> for MetricSpec {
    fn from(r: MetricRepr) -> Self {
        match r {
            MetricRepr::Named(MetricName::Identity) => MetricSpec::Identity,
            MetricRepr::Matrix(m) => MetricSpec::Matrix(m),
        }
    }
}

impl From<MetricSpec> for MetricRepr {
    fn from(m: MetricSpec) -> Self {
        match m {
            MetricSpec::Identity => MetricRepr::Named(MetricName::Identity),
            MetricSpec::Matrix(m) => MetricRepr::Matrix(m),
        }
    }
}

/// `phi` uses the column-action convention `φ(e_j) = Σ_i phi[i][j] e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactSpec {
    pub phi: Vec<Vec<Exact>>,
    pub xi: Vec<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDocument {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    pub metric: MetricSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact: Option<ContactSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_tag: Option<String>,
}

/// The model a document describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedModel {
    pub name: String,
    pub manifold: LieFrameManifold,
    pub contact: Option<AlmostContactStructure>,
}

pub fn parse_manifold(text: &str) -> Result<ManifoldDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse { path, message: e.into_inner().to_string() }
    })
}

/// Pretty JSON with fixed field order and a trailing newline.
pub fn emit_manifold(doc: &ManifoldDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization is infallible");
    s.push('\n');
    s
}

fn check_index(path: String, index: i64, dim: usize) -> Result<usize> {
    if index < 1 || index as u64 > dim as u64 {
        return Err(Error::IndexOutOfRange { path, index, dim });
    }
    Ok(index as usize - 1)
}

fn square(what: &'static str, rows: &[Vec<Exact>], dim: usize) -> Result<Array2<Rational>> {
    if rows.len() != dim {
        return Err(Error::Malformed { what, detail: format!("expected {dim} rows, found {}", rows.len()) });
    }
    let mut out = Array2::from_elem((dim, dim), Rational::zero());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Malformed {
                what,
                detail: format!("row {} has {} entries, expected {dim}", i + 1, row.len()),
            });
        }
        for (j, x) in row.iter().enumerate() {
            out[[i, j]] = x.0.clone();
        }
    }
    Ok(out)
}

fn rows_of(a: &Array2<Rational>) -> Vec<Vec<Exact>> {
    a.rows().into_iter().map(|r| r.iter().cloned().map(Exact).collect()).collect()
}

impl ManifoldDocument {
    /// Builds the frame model, checking indices, shapes and metric symmetry.
    pub fn to_model(&self) -> Result<LoadedModel> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::Malformed { what: "document", detail: "dim must be positive".into() });
        }
        let mut c = Array3::from_elem((d, d, d), Rational::zero());
        let mut seen = BTreeSet::new();
        for (n, entry) in self.brackets.iter().enumerate() {
            let i = check_index(format!("brackets[{n}].i"), entry.i, d)?;
            let j = check_index(format!("brackets[{n}].j"), entry.j, d)?;
            if i >= j {
                return Err(Error::Malformed {
                    what: "bracket entry",
                    detail: format!("brackets[{n}] needs i < j, found i = {}, j = {}", entry.i, entry.j),
                });
            }
            if !seen.insert((i, j)) {
                return Err(Error::Malformed {
                    what: "bracket entry",
                    detail: format!("pair ({}, {}) listed twice", entry.i, entry.j),
                });
            }
            for (t, term) in entry.terms.iter().enumerate() {
                let k = check_index(format!("brackets[{n}].terms[{t}].k"), term.k, d)?;
                c[[i, j, k]] += &term.coef.0;
                c[[j, i, k]] -= &term.coef.0;
            }
        }
        let metric = match &self.metric {
            MetricSpec::Identity => crate::linalg::identity(d),
            MetricSpec::Matrix(rows) => {
                let g = square("metric", rows, d)?;
                for i in 0..d {
                    for j in (i + 1)..d {
                        if g[[i, j]] != g[[j, i]] {
                            return Err(Error::AsymmetricMetricInput { i: i + 1, j: j + 1 });
                        }
                    }
                }
                g
            }
        };
        let manifold = LieFrameManifold::new(c, metric)?;
        let contact = match &self.contact {
            None => None,
            Some(spec) => {
                let phi = Endomorphism(square("contact.phi", &spec.phi, d)?);
                if spec.xi.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: spec.xi.len() });
                }
                let xi = FrameVector(Array1::from_iter(spec.xi.iter().map(|x| x.0.clone())));
                Some(AlmostContactStructure::new(&manifold, phi, xi)?)
            }
        };
        Ok(LoadedModel { name: self.name.clone(), manifold, contact })
    }

    /// Canonical document for a model: brackets sorted by `(i, j)`, terms by `k`,
    /// zero coefficients dropped, `"identity"` used when it applies.
    pub fn from_model(
        name: impl Into<String>,
        m: &LieFrameManifold,
        contact: Option<&AlmostContactStructure>,
        catalog_tag: Option<String>,
    ) -> Self {
        let d = m.dim();
        let c = m.structure_constants();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                let terms: Vec<Term> = (0..d)
                    .filter(|&k| !c[[i, j, k]].is_zero())
                    .map(|k| Term { k: k as i64 + 1, coef: Exact(c[[i, j, k]].clone()) })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketEntry { i: i as i64 + 1, j: j as i64 + 1, terms });
                }
            }
        }
        let g = m.metric();
        let is_identity = g.indexed_iter().all(|((i, j), x)| if i == j { x.is_one() } else { x.is_zero() });
        let metric = if is_identity { MetricSpec::Identity } else { MetricSpec::Matrix(rows_of(g)) };
        let contact = contact
            .map(|acs| ContactSpec { phi: rows_of(&acs.phi().0), xi: acs.xi().0.iter().cloned().map(Exact).collect() });
        ManifoldDocument { name: name.into(), dim: d, brackets, metric, contact, catalog_tag }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::validate_frame;

    #[test]
    fn flat_identity_document() {
        let doc = parse_manifold(r#"{"name":"plane","dim":2,"brackets":[],"metric":"identity"}"#).unwrap();
        let model = doc.to_model().unwrap();
        assert_eq!(model.manifold, LieFrameManifold::abelian(2));
        assert!(model.contact.is_none());
    }

    #[test]
    fn index_out_of_range() {
        let text =
            r#"{"name":"x","dim":5,"brackets":[{"i":1,"j":7,"terms":[{"k":1,"coef":"1"}]}],"metric":"identity"}"#;
        let err = parse_manifold(text).unwrap().to_model().unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { path: "brackets[0].j".into(), index: 7, dim: 5 });
    }

    #[test]
    fn asymmetric_metric_rejected() {
        let text = r#"{"name":"x","dim":2,"metric":[["1","1/2"],["0","1"]]}"#;
        let err = parse_manifold(text).unwrap().to_model().unwrap_err();
        assert_eq!(err, Error::AsymmetricMetricInput { i: 1, j: 2 });
    }

    #[test]
    fn unknown_fields_and_bad_rationals_carry_paths() {
        let err = parse_manifold(r#"{"name":"x","dim":1,"metric":"identity","extra":1}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_manifold(r#"{"name":"x","dim":1,"metric":[["1/0"]]}"#).unwrap_err();
        match err {
            Error::Parse { path, .. } => assert_eq!(path, "metric"),
            other => panic!("{other:?}"),
        }
        let err = parse_manifold(
            r#"{"name":"x","dim":2,"brackets":[{"i":1,"j":2,"terms":[{"k":1,"coef":"x"}]}],"metric":"identity"}"#,
        )
        .unwrap_err();
        match err {
            Error::Parse { path, .. } => assert_eq!(path, "brackets[0].terms[0].coef"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn model_round_trip() {
        let text = r#"{
            "name": "h3", "dim": 3,
            "brackets": [{"i":1,"j":3,"terms":[{"k":1,"coef":"1"}]},{"i":2,"j":3,"terms":[{"k":2,"coef":"1"}]}],
            "metric": "identity",
            "contact": {"phi": [["0","-1","0"],["1","0","0"],["0","0","0"]], "xi": ["0","0","1"]}
        }"#;
        let doc = parse_manifold(text).unwrap();
        let model = doc.to_model().unwrap();
        assert!(validate_frame(&model.manifold).passed());
        let back = ManifoldDocument::from_model("h3", &model.manifold, model.contact.as_ref(), None);
        assert_eq!(back, doc);
        assert_eq!(parse_manifold(&emit_manifold(&back)).unwrap(), back);
    }
}
