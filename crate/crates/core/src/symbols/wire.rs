//! JSON symbol documents.
//!
//! ```json
//! {"kind": "moebius", "a": [1, 0], "b": 0, "c": 0, "d": 2}
//! {"kind": "blaschke", "rotation": 0.0, "zeros": [[0.5, 0.0]]}
//! {"kind": "polynomial", "coeffs": [0, 0.5, 0.5]}
//! {"kind": "taylor", "terms": [[1, [0.5, 0]]], "truncation": 4096, "abs_sum_bound": 0.5}
//! ```
//!
//! Complex numbers are written as `[re, im]`; a bare number is read as a
//! real value. Serialization always emits `[re, im]` and round-trips bit
//! for bit.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Blaschke, Moebius, Polynomial, Symbol, SymbolError, TaylorSeries, DEFAULT_TRUNCATION};
use crate::Complex;

/// Complex number on the wire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireComplex(pub Complex);

impl Serialize for WireComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for WireComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Real(f64),
            Pair([f64; 2]),
        }
        Ok(
            match Repr::deserialize(d).map_err(|_| serde::de::Error::custom("expected a number or a [re, im] pair"))? {
                Repr::Real(re) => WireComplex(Complex::new(re, 0.0)),
                Repr::Pair([re, im]) => WireComplex(Complex::new(re, im)),
            },
        )
    }
}

fn default_truncation() -> u64 {
    DEFAULT_TRUNCATION
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SymbolDoc {
    Moebius {
        a: WireComplex,
        b: WireComplex,
        c: WireComplex,
        d: WireComplex,
    },
    Blaschke {
        rotation: f64,
        zeros: Vec<WireComplex>,
    },
    Polynomial {
        coeffs: Vec<WireComplex>,
    },
    Taylor {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coeffs: Option<Vec<WireComplex>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        terms: Option<Vec<(u64, WireComplex)>>,
        #[serde(default = "default_truncation")]
        truncation: u64,
        abs_sum_bound: f64,
    },
}

fn unwrap_all(v: Vec<WireComplex>) -> Vec<Complex> {
    v.into_iter().map(|w| w.0).collect()
}

pub(super) fn parse(doc: &str) -> Result<Symbol, SymbolError> {
    let parsed: SymbolDoc = serde_json::from_str(doc).map_err(|e| SymbolError::Schema {
        path: "$".into(),
        message: e.to_string(),
    })?;
    from_doc(parsed)
}

fn from_doc(doc: SymbolDoc) -> Result<Symbol, SymbolError> {
    Ok(match doc {
        SymbolDoc::Moebius { a, b, c, d } => Moebius::new(a.0, b.0, c.0, d.0)?.into(),
        SymbolDoc::Blaschke { rotation, zeros } => Blaschke::new(rotation, unwrap_all(zeros))?.into(),
        SymbolDoc::Polynomial { coeffs } => Polynomial::new(unwrap_all(coeffs))?.into(),
        SymbolDoc::Taylor {
            coeffs,
            terms,
            truncation,
            abs_sum_bound,
        } => {
            let terms = match (coeffs, terms) {
                (Some(c), None) => unwrap_all(c)
                    .into_iter()
                    .enumerate()
                    .map(|(n, a)| (n as u64, a))
                    .collect(),
                (None, Some(t)) => t.into_iter().map(|(n, a)| (n, a.0)).collect(),
                _ => {
                    return Err(SymbolError::Schema {
                        path: "taylor".into(),
                        message: "exactly one of `coeffs` or `terms` is required".into(),
                    })
                }
            };
            TaylorSeries::new(terms, truncation, abs_sum_bound)?.into()
        }
    })
}

fn to_doc(s: &Symbol) -> SymbolDoc {
    let wrap = |v: &[Complex]| v.iter().map(|&z| WireComplex(z)).collect();
    match s {
        Symbol::Moebius(m) => SymbolDoc::Moebius {
            a: WireComplex(m.a),
            b: WireComplex(m.b),
            c: WireComplex(m.c),
            d: WireComplex(m.d),
        },
        Symbol::Blaschke(b) => SymbolDoc::Blaschke {
            rotation: b.rotation(),
            zeros: wrap(b.zeros()),
        },
        Symbol::Polynomial(p) => SymbolDoc::Polynomial {
            coeffs: wrap(p.coeffs()),
        },
        Symbol::Taylor(t) => SymbolDoc::Taylor {
            coeffs: None,
            terms: Some(t.terms().iter().map(|&(n, a)| (n, WireComplex(a))).collect()),
            truncation: t.truncation(),
            abs_sum_bound: t.abs_sum_bound(),
        },
    }
}

pub(super) fn serialize(s: &Symbol) -> String {
    serde_json::to_string(&to_doc(s)).expect("symbol documents always serialize")
}
