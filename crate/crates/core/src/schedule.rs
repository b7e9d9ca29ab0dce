use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weave::{CheckColor, CheckKind, InteractionDiagram};

/// One measurement round: every check whose color is selected gets measured,
/// with its operator type optionally replaced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub colors: Vec<CheckColor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op_override: Option<CheckKind>,
}

impl Round {
    pub fn new(colors: &[CheckColor]) -> Self {
        Round {
            colors: colors.to_vec(),
            op_override: None,
        }
    }

    pub fn with_override(colors: &[CheckColor], kind: CheckKind) -> Self {
        Round {
            colors: colors.to_vec(),
            op_override: Some(kind),
        }
    }

    pub fn selects(&self, color: CheckColor) -> bool {
        self.colors.contains(&color)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub name: String,
    pub rounds: Vec<Round>,
}

pub const BUILTIN_SCHEDULES: [&str; 6] = ["toric2d-3step", "toric-nd-6step", "xcube-6step", "css-6step", "baconshor-2step", "naive-3step"];

impl Schedule {
    pub fn new(name: impl Into<String>, rounds: Vec<Round>) -> Result<Self> {
        let s = Schedule {
            name: name.into(),
            rounds,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn period(&self) -> usize {
        self.rounds.len()
    }

    /// Round in effect at absolute round index `t`.
    pub fn round(&self, t: usize) -> &Round {
        &self.rounds[t % self.rounds.len()]
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds.is_empty() {
            return Err(Error::InvalidSchedule("schedule has no rounds".into()));
        }
        if let Some(k) = self.rounds.iter().position(|r| r.colors.is_empty()) {
            return Err(Error::InvalidSchedule(format!("round {k} selects no colors")));
        }
        Ok(())
    }

    /// Every color present in `diagram` must be measured at least once per
    /// period.
    pub fn check_covers(&self, diagram: &InteractionDiagram) -> Result<()> {
        for color in CheckColor::ALL {
            if diagram.count_color(color) > 0 && !self.rounds.iter().any(|r| r.selects(color)) {
                return Err(Error::InvalidSchedule(format!(
                    "schedule `{}` never measures {color:?} checks",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let s: Schedule = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        s.validate()?;
        Ok(s)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

pub fn builtin_schedule(name: &str) -> Result<Schedule> {
    use CheckColor::*;
    use CheckKind::*;
    let rounds = match name {
        "toric2d-3step" => vec![Round::new(&[Red]), Round::new(&[Blue]), Round::new(&[Green])],
        "toric-nd-6step" | "xcube-6step" => vec![
            Round::new(&[Red, Black]),
            Round::new(&[Green]),
            Round::new(&[Blue]),
            Round::new(&[Red]),
            Round::new(&[Green]),
            Round::new(&[Blue]),
        ],
        "css-6step" => vec![
            Round::with_override(&[Blue, Red], XX),
            Round::with_override(&[Green], ZZ),
            Round::with_override(&[Red], XX),
            Round::with_override(&[Blue], ZZ),
            Round::with_override(&[Green], XX),
            Round::with_override(&[Red, Black], ZZ),
        ],
        "baconshor-2step" => vec![Round::new(&[Red]), Round::new(&[Green])],
        // Each color once: black checks then scramble the line logicals.
        "naive-3step" => vec![Round::new(&[Red, Black]), Round::new(&[Green]), Round::new(&[Blue])],
        other => return Err(Error::UnknownSchedule(other.to_string())),
    };
    Schedule::new(name, rounds)
}

/// A built-in name, or else a path to a schedule file.
pub fn resolve_schedule(name_or_path: &str) -> Result<Schedule> {
    match builtin_schedule(name_or_path) {
        Err(Error::UnknownSchedule(_)) if Path::new(name_or_path).exists() => Schedule::load(name_or_path),
        other => other,
    }
}
