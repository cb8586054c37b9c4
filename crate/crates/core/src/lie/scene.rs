//! The JSON scene format shared by the CLI subcommands.

use serde::{Deserialize, Serialize};

use super::LieCycle;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CycleJson {
    Circle { m: [f64; 2], r: f64 },
    Point { m: [f64; 2] },
    Spear { point: [f64; 2], dir: [f64; 2] },
    Infinity,
}

impl CycleJson {
    pub fn to_cycle(&self) -> Result<LieCycle> {
        match *self {
            CycleJson::Circle { m, r } => LieCycle::circle(m, r),
            CycleJson::Point { m } => LieCycle::point(m),
            CycleJson::Spear { point, dir } => LieCycle::spear_through(point, dir),
            CycleJson::Infinity => Ok(LieCycle::Infinity),
        }
    }
}

impl From<&LieCycle> for CycleJson {
    fn from(c: &LieCycle) -> Self {
        match c {
            LieCycle::Circle(c) => CycleJson::Circle {
                m: c.center(),
                r: c.radius(),
            },
            LieCycle::Point(m) => CycleJson::Point { m: *m },
            LieCycle::Spear(s) => CycleJson::Spear {
                point: s.foot(),
                dir: s.direction(),
            },
            LieCycle::Infinity => CycleJson::Infinity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub cycles: Vec<CycleJson>,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Scene(e.to_string()))
    }

    pub fn from_cycles(cycles: &[LieCycle]) -> Self {
        Scene {
            cycles: cycles.iter().map(CycleJson::from).collect(),
        }
    }

    pub fn cycles(&self) -> Result<Vec<LieCycle>> {
        self.cycles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.to_cycle()
                    .map_err(|e| Error::Scene(format!("cycle {i}: {e}")))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{to_pentacyclic, QuadricPoint};

    #[test]
    fn parses_every_kind() {
        let text = r#"{"cycles":[
            {"type":"circle","m":[1,2],"r":-3},
            {"type":"point","m":[0,0]},
            {"type":"spear","point":[0,1],"dir":[2,0]},
            {"type":"infinity"}]}"#;
        let cycles = Scene::from_json(text).unwrap().cycles().unwrap();
        let kinds: Vec<_> = cycles.iter().map(LieCycle::kind).collect();
        assert_eq!(kinds, ["circle", "point", "spear", "infinity"]);
    }

    #[test]
    fn round_trips_through_text() {
        let cycles = vec![
            LieCycle::circle([0.5, -1.0], 2.0).unwrap(),
            LieCycle::spear_through([3.0, 4.0], [-1.0, 1.0]).unwrap(),
            LieCycle::Infinity,
        ];
        let back = Scene::from_json(&Scene::from_cycles(&cycles).to_json())
            .unwrap()
            .cycles()
            .unwrap();
        for (a, b) in cycles.iter().zip(&back) {
            let (p, q): (QuadricPoint, QuadricPoint) = (to_pentacyclic(a), to_pentacyclic(b));
            assert!(p.approx_eq(&q, 1e-12));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Scene::from_json(r#"{"cycles":[{"type":"ellipse"}]}"#).is_err());
        assert!(Scene::from_json(r#"{"cycles":[], "extra": 1}"#).is_err());
        let zero = Scene::from_json(r#"{"cycles":[{"type":"circle","m":[0,0],"r":0}]}"#).unwrap();
        assert!(matches!(zero.cycles(), Err(Error::Scene(_))));
    }
}
