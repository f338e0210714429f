use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{GluingSpec, Interval, ModelStripSpec, Orientation, Side, StripedSurface, SurfaceError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl IoError {
    pub fn rule(&self) -> &'static str {
        match self {
            IoError::Parse { .. } => "ParseError",
            IoError::Surface(e) => e.rule(),
        }
    }
}

/// An endpoint: a finite number or one of the tokens `-inf`, `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Endpoint(f64);

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            x if x == f64::INFINITY => s.serialize_str("+inf"),
            x if x == f64::NEG_INFINITY => s.serialize_str("-inf"),
            x => s.serialize_f64(x),
        }
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Tok(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Endpoint(x)),
            Raw::Tok(t) if t == "-inf" => Ok(Endpoint(f64::NEG_INFINITY)),
            Raw::Tok(t) if t == "+inf" || t == "inf" => Ok(Endpoint(f64::INFINITY)),
            Raw::Tok(t) => Err(de::Error::custom(format!(
                "endpoint must be a number, \"-inf\" or \"+inf\", got {t:?}"
            ))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalDoc {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    endpoints: Option<[Endpoint; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StripDoc {
    id: String,
    #[serde(default)]
    lower: Vec<IntervalDoc>,
    #[serde(default)]
    upper: Vec<IntervalDoc>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OrientationDoc {
    Preserving,
    Reversing,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GluingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    a: String,
    b: String,
    orientation: OrientationDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    strips: Vec<StripDoc>,
    #[serde(default)]
    gluings: Vec<GluingDoc>,
}

fn side_from_doc(list: Vec<IntervalDoc>, side: Side) -> Vec<Interval> {
    list.into_iter()
        .enumerate()
        .map(|(k, iv)| Interval {
            id: iv.id,
            side,
            index: k,
            endpoints: iv.endpoints.map(|[a, b]| (a.0, b.0)),
        })
        .collect()
}

fn side_to_doc(list: &[Interval]) -> Vec<IntervalDoc> {
    list.iter()
        .map(|iv| IntervalDoc {
            id: iv.id.clone(),
            endpoints: iv.endpoints.map(|(a, b)| [Endpoint(a), Endpoint(b)]),
        })
        .collect()
}

/// Reads a surface document and validates it.
pub fn parse(text: &str) -> Result<StripedSurface, IoError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let strips = doc
        .strips
        .into_iter()
        .map(|s| ModelStripSpec {
            id: s.id,
            lower: side_from_doc(s.lower, Side::Lower),
            upper: side_from_doc(s.upper, Side::Upper),
        })
        .collect();
    let gluings = doc
        .gluings
        .into_iter()
        .map(|g| GluingSpec {
            id: g.id,
            first: g.a,
            second: g.b,
            orientation: match g.orientation {
                OrientationDoc::Preserving => Orientation::Preserving,
                OrientationDoc::Reversing => Orientation::Reversing,
            },
        })
        .collect();
    Ok(StripedSurface::new(strips, gluings)?)
}

/// Pretty JSON with a fixed field order and a trailing newline.
pub fn serialize(surface: &StripedSurface) -> String {
    let doc = Document {
        strips: surface
            .strips()
            .iter()
            .map(|s| StripDoc {
                id: s.id.clone(),
                lower: side_to_doc(&s.lower),
                upper: side_to_doc(&s.upper),
            })
            .collect(),
        gluings: surface
            .gluings()
            .iter()
            .map(|g| GluingDoc {
                id: g.id.clone(),
                a: g.first.clone(),
                b: g.second.clone(),
                orientation: match g.orientation {
                    Orientation::Preserving => OrientationDoc::Preserving,
                    Orientation::Reversing => OrientationDoc::Reversing,
                },
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}
