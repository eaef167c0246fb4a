//! Self-describing text format for models and moment data: one JSON
//! object per file with a `kind` tag and kind-specific arrays. Numbers
//! round-trip exactly (shortest decimal that re-parses to the same
//! f64), complex values are written as `[re, im]` pairs.

use super::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("expected a {expected} document, found kind `{found}`")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
}

/// One artifact file. The `kind` tag selects the payload shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    Polynomial {
        coefficients: Vec<f64>,
    },
    Rational {
        numerator: Vec<f64>,
        denominator: Vec<f64>,
    },
    Spikes {
        nodes: Vec<f64>,
        weights: Vec<f64>,
    },
    Piecewise {
        breakpoints: Vec<f64>,
        pieces: Vec<Vec<f64>>,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Curve {
        p: Vec<f64>,
        q: Vec<f64>,
        interval: [f64; 2],
    },
    Moments {
        values: Vec<f64>,
        interval: [f64; 2],
    },
    ComplexMoments {
        values: Vec<[f64; 2]>,
    },
    DoubleMoments {
        entries: Vec<Vec<[f64; 2]>>,
    },
    /// Output artifact of quadrature-domain inversion.
    QuadratureDomain {
        nodes: Vec<[f64; 2]>,
        multiplicities: Vec<usize>,
        coefficients: Vec<Vec<[f64; 2]>>,
        node_polynomial: Vec<[f64; 2]>,
        defining_polynomial: Vec<Vec<[f64; 2]>>,
    },
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Polynomial { .. } => "polynomial",
            Document::Rational { .. } => "rational",
            Document::Spikes { .. } => "spikes",
            Document::Piecewise { .. } => "piecewise",
            Document::Polygon { .. } => "polygon",
            Document::Curve { .. } => "curve",
            Document::Moments { .. } => "moments",
            Document::ComplexMoments { .. } => "complex-moments",
            Document::DoubleMoments { .. } => "double-moments",
            Document::QuadratureDomain { .. } => "quadrature-domain",
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialization");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Document, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Document, DocumentError> {
        let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Document::from_text(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), DocumentError> {
        std::fs::write(path, self.to_text()).map_err(|source| DocumentError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

// ---- model -> document ----

impl From<&PolynomialModel> for Document {
    fn from(m: &PolynomialModel) -> Self {
        Document::Polynomial {
            coefficients: m.coefficients.clone(),
        }
    }
}

impl From<&RationalModel> for Document {
    fn from(m: &RationalModel) -> Self {
        Document::Rational {
            numerator: m.numerator.clone(),
            denominator: m.denominator.clone(),
        }
    }
}

impl From<&SpikeTrain> for Document {
    fn from(m: &SpikeTrain) -> Self {
        Document::Spikes {
            nodes: m.nodes.clone(),
            weights: m.weights.clone(),
        }
    }
}

impl From<&PiecewisePoly> for Document {
    fn from(m: &PiecewisePoly) -> Self {
        Document::Piecewise {
            breakpoints: m.breakpoints.clone(),
            pieces: m.pieces.clone(),
        }
    }
}

impl From<&Polygon> for Document {
    fn from(m: &Polygon) -> Self {
        Document::Polygon {
            vertices: m.vertices.iter().copied().map(pair).collect(),
        }
    }
}

impl From<&ParamCurve> for Document {
    fn from(m: &ParamCurve) -> Self {
        Document::Curve {
            p: m.p.clone(),
            q: m.q.clone(),
            interval: [m.interval.0, m.interval.1],
        }
    }
}

impl From<&MomentSequence> for Document {
    fn from(m: &MomentSequence) -> Self {
        Document::Moments {
            values: m.values.clone(),
            interval: [m.interval.0, m.interval.1],
        }
    }
}

impl From<&ComplexMomentSequence> for Document {
    fn from(m: &ComplexMomentSequence) -> Self {
        Document::ComplexMoments {
            values: m.values.iter().copied().map(pair).collect(),
        }
    }
}

impl From<&DoubleMomentTable> for Document {
    fn from(m: &DoubleMomentTable) -> Self {
        Document::DoubleMoments {
            entries: m
                .entries
                .iter()
                .map(|row| row.iter().copied().map(pair).collect())
                .collect(),
        }
    }
}

// ---- document -> model (validating) ----

macro_rules! extract {
    ($fn_name:ident, $ty:ty, $expected:literal, $pat:pat => $build:expr) => {
        impl Document {
            pub fn $fn_name(&self) -> Result<$ty, DocumentError> {
                match self {
                    $pat => Ok($build?),
                    other => Err(DocumentError::KindMismatch {
                        expected: $expected,
                        found: other.kind(),
                    }),
                }
            }
        }
    };
}

extract!(as_polynomial, PolynomialModel, "polynomial",
    Document::Polynomial { coefficients } => PolynomialModel::new(coefficients.clone()));
extract!(as_rational, RationalModel, "rational",
    Document::Rational { numerator, denominator } =>
        RationalModel::new(numerator.clone(), denominator.clone()));
extract!(as_spikes, SpikeTrain, "spikes",
    Document::Spikes { nodes, weights } => SpikeTrain::new(nodes.clone(), weights.clone()));
extract!(as_piecewise, PiecewisePoly, "piecewise",
    Document::Piecewise { breakpoints, pieces } =>
        PiecewisePoly::new(breakpoints.clone(), pieces.clone()));
extract!(as_polygon, Polygon, "polygon",
    Document::Polygon { vertices } =>
        Polygon::new(vertices.iter().copied().map(unpair).collect()));
extract!(as_moments, MomentSequence, "moments",
    Document::Moments { values, interval } => {
        let mut m = MomentSequence::new(values.clone());
        if let Ok(seq) = m.as_mut() {
            seq.interval = (interval[0], interval[1]);
        }
        m
    });
extract!(as_complex_moments, ComplexMomentSequence, "complex-moments",
    Document::ComplexMoments { values } =>
        ComplexMomentSequence::new(values.iter().copied().map(unpair).collect()));
extract!(as_double_moments, DoubleMomentTable, "double-moments",
    Document::DoubleMoments { entries } => DoubleMomentTable::new(
        entries.iter().map(|row| row.iter().copied().map(unpair).collect()).collect()));

impl Document {
    pub fn as_curve(&self) -> Result<ParamCurve, DocumentError> {
        match self {
            Document::Curve { p, q, interval } => {
                let mut curve = ParamCurve::new(p.clone(), q.clone())?;
                curve.interval = (interval[0], interval[1]);
                Ok(curve)
            }
            other => Err(DocumentError::KindMismatch {
                expected: "curve",
                found: other.kind(),
            }),
        }
    }

    pub fn from_quadrature_domain(data: &QuadratureData, q: &DefiningPolynomial) -> Document {
        Document::QuadratureDomain {
            nodes: data.nodes.iter().copied().map(pair).collect(),
            multiplicities: data.multiplicities.clone(),
            coefficients: data
                .coefficients
                .iter()
                .map(|row| row.iter().copied().map(pair).collect())
                .collect(),
            node_polynomial: q.node_polynomial.iter().copied().map(pair).collect(),
            defining_polynomial: q
                .coefficients
                .iter()
                .map(|row| row.iter().copied().map(pair).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spike_round_trip_is_exact() {
        let s = SpikeTrain::new(vec![0.5], vec![1.0]).unwrap();
        let doc = Document::from(&s);
        let text = doc.to_text();
        let back = Document::from_text(&text).unwrap();
        assert_eq!(back.as_spikes().unwrap(), s);
    }

    #[test]
    fn awkward_floats_round_trip_exactly() {
        let m = MomentSequence::new(vec![
            std::f64::consts::LN_2,
            1.0 / 3.0,
            6.02e23,
            -5e-324,
            0.1 + 0.2,
        ])
        .unwrap();
        let back = Document::from_text(&Document::from(&m).to_text())
            .unwrap()
            .as_moments()
            .unwrap();
        assert_eq!(back.values, m.values);
    }

    #[test]
    fn missing_weights_field_is_a_parse_error() {
        let text = r#"{"kind": "spikes", "nodes": [0.5]}"#;
        match Document::from_text(text) {
            Err(DocumentError::Parse { message, .. }) => {
                assert!(message.contains("weights"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn double_moment_table_round_trip() {
        let t = DoubleMomentTable::new(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.25, -0.5)],
            vec![Complex64::new(0.25, 0.5), Complex64::new(0.125, 0.0)],
        ])
        .unwrap();
        let back = Document::from_text(&Document::from(&t).to_text())
            .unwrap()
            .as_double_moments()
            .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let doc = Document::Moments {
            values: vec![1.0],
            interval: [0.0, 1.0],
        };
        match doc.as_spikes() {
            Err(DocumentError::KindMismatch { expected, found }) => {
                assert_eq!(expected, "spikes");
                assert_eq!(found, "moments");
            }
            other => panic!("expected kind mismatch, got {other:?}"),
        }
    }

    #[test]
    fn invalid_payload_is_rejected_on_extraction() {
        let text = r#"{"kind": "spikes", "nodes": [0.5, 0.5], "weights": [1.0, 1.0]}"#;
        let doc = Document::from_text(text).unwrap();
        assert!(matches!(doc.as_spikes(), Err(DocumentError::Model(_))));
    }
}
