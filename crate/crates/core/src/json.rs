//! JSON forms of curves, function-field elements and towers.
//!
//! Curve: `{"r_num": "x^3+x", "r_den": "1"}`. Element: `{"u": .., "v": .., "den": ..}`.
//! Tower: `{"base": curve, "covers": [element, ...]}` with an optional `"name"`.
//! A bare curve is read as a tower without covers.

use serde::{Deserialize, Serialize};

use crate::astower::Tower;
use crate::error::{Error, Result};
use crate::ffield::{BaseCurve, FFElem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub r_num: String,
    pub r_den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub u: String,
    pub v: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: CurveJson,
    #[serde(default)]
    pub covers: Vec<ElemJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyJson {
    Tower(TowerJson),
    Curve(CurveJson),
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

impl CurveJson {
    pub fn from_curve(c: &BaseCurve) -> CurveJson {
        CurveJson { r_num: c.r_num().to_string(), r_den: c.r_den().to_string() }
    }

    pub fn to_curve(&self) -> Result<BaseCurve> {
        BaseCurve::parse(&self.r_num, &self.r_den)
    }
}

impl ElemJson {
    pub fn from_elem(f: &FFElem) -> ElemJson {
        ElemJson { u: f.u().to_string(), v: f.v().to_string(), den: f.den().to_string() }
    }

    pub fn to_elem(&self) -> Result<FFElem> {
        FFElem::parse(&self.u, &self.v, &self.den)
    }
}

impl TowerJson {
    pub fn from_tower(t: &Tower) -> TowerJson {
        TowerJson {
            name: None,
            base: CurveJson::from_curve(t.base()),
            covers: t.covers().iter().map(ElemJson::from_elem).collect(),
        }
    }

    pub fn to_tower(&self) -> Result<Tower> {
        let covers = self.covers.iter().map(ElemJson::to_elem).collect::<Result<Vec<_>>>()?;
        Ok(Tower::new(self.base.to_curve()?, covers))
    }
}

pub fn tower_from_json(text: &str) -> Result<Tower> {
    match serde_json::from_str::<AnyJson>(text) {
        Ok(AnyJson::Tower(t)) => t.to_tower(),
        Ok(AnyJson::Curve(c)) => Ok(Tower::new(c.to_curve()?, Vec::new())),
        Err(_) => {
            // re-parse strictly for a useful message
            serde_json::from_str::<TowerJson>(text).map_err(json_err)?.to_tower()
        }
    }
}

pub fn curve_from_json(text: &str) -> Result<BaseCurve> {
    Ok(tower_from_json(text)?.base().clone())
}

pub fn tower_to_json(t: &Tower) -> String {
    serde_json::to_string_pretty(&TowerJson::from_tower(t)).unwrap()
}

pub fn elem_from_json(text: &str) -> Result<FFElem> {
    serde_json::from_str::<ElemJson>(text).map_err(json_err)?.to_elem()
}

pub fn elem_to_json(f: &FFElem) -> String {
    serde_json::to_string(&ElemJson::from_elem(f)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let t = crate::fixtures::serre();
        let back = tower_from_json(&tower_to_json(&t)).unwrap();
        assert_eq!(back, t);
        let f = &t.covers()[0];
        assert_eq!(&elem_from_json(&elem_to_json(f)).unwrap(), f);
        let c = tower_from_json(r#"{"r_num": "x^3+x", "r_den": "1"}"#).unwrap();
        assert_eq!(c.k(), 0);
        assert!(matches!(tower_from_json("{\"base\": 3}"), Err(Error::Json(_))));
        assert!(matches!(
            tower_from_json(r#"{"r_num": "x^3+", "r_den": "1"}"#),
            Err(Error::Parse { .. })
        ));
    }
}
