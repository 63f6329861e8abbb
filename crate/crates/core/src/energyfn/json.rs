//! JSON wire form of energy functions. Rationals travel as strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Cut, EnergyFn, Piece};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireBottom {
    boundary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bottom_at_boundary: Option<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireTop {
    boundary: String,
    top_at_boundary: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WirePiece {
    start: String,
    intercept: String,
    slope: String,
}

#[derive(Serialize)]
struct WireFn {
    bottom: WireBottom,
    pieces: Vec<WirePiece>,
    top: Option<WireTop>,
}

#[derive(Serialize)]
struct WireBottomOnly {
    bottom: WireBottom,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireIn {
    bottom: WireBottom,
    #[serde(default)]
    pieces: Option<Vec<WirePiece>>,
    #[serde(default)]
    top: Option<WireTop>,
}

impl<T: Scalar> Serialize for EnergyFn<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let Some(floor) = &self.floor else {
            return WireBottomOnly {
                bottom: WireBottom { boundary: "inf".into(), bottom_at_boundary: None },
            }
            .serialize(serializer);
        };
        WireFn {
            bottom: WireBottom {
                boundary: floor.at.to_string(),
                bottom_at_boundary: Some(floor.inclusive),
            },
            pieces: self
                .pieces
                .iter()
                .map(|p| WirePiece {
                    start: p.start.to_string(),
                    intercept: p.intercept.to_string(),
                    slope: p.slope.to_string(),
                })
                .collect(),
            top: self.ceiling.as_ref().map(|c| WireTop {
                boundary: c.at.to_string(),
                top_at_boundary: c.inclusive,
            }),
        }
        .serialize(serializer)
    }
}

fn num<T: Scalar, E: serde::de::Error>(field: &str, s: &str) -> Result<T, E> {
    T::parse_exact(s).ok_or_else(|| E::custom(format!("{field}: `{s}` is not a rational")))
}

impl<'de, T: Scalar> Deserialize<'de> for EnergyFn<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = WireIn::deserialize(deserializer)?;
        if w.bottom.boundary.trim() == "inf" {
            let has_pieces = w.pieces.as_ref().is_some_and(|p| !p.is_empty());
            if has_pieces || w.top.is_some() || w.bottom.bottom_at_boundary.is_some() {
                return Err(D::Error::custom(
                    "constant-bottom function must be encoded as {\"bottom\":{\"boundary\":\"inf\"}}",
                ));
            }
            return Ok(EnergyFn::bottom());
        }
        let floor = Cut::new(
            num("bottom.boundary", &w.bottom.boundary)?,
            w.bottom.bottom_at_boundary.unwrap_or(false),
        );
        let pieces = w
            .pieces
            .unwrap_or_default()
            .iter()
            .map(|p| {
                Ok(Piece::new(
                    num("pieces.start", &p.start)?,
                    num("pieces.intercept", &p.intercept)?,
                    num("pieces.slope", &p.slope)?,
                ))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        let ceiling = match w.top {
            None => None,
            Some(t) => Some(Cut::new(num("top.boundary", &t.boundary)?, t.top_at_boundary)),
        };
        EnergyFn::new(Some(floor), pieces, ceiling).map_err(D::Error::custom)
    }
}
