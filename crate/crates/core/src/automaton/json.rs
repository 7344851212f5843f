//! JSON file format:
//! `{"rank", "states", "initial", "finals", "transitions": [{"from", "label", "to"}]}`
//! with labels `x1`, `X1`, ... or `eps`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Arrow, Automaton, AutomatonError};
use crate::freegroup::{Alphabet, Letter};

#[derive(Debug, Serialize, Deserialize)]
struct Transition {
    from: String,
    label: String,
    to: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonFile {
    rank: u32,
    states: Vec<String>,
    initial: Vec<String>,
    finals: Vec<String>,
    transitions: Vec<Transition>,
}

impl Automaton {
    pub fn to_json(&self) -> String {
        let name = |s: usize| self.names()[s].clone();
        let file = AutomatonFile {
            rank: self.rank(),
            states: self.names().to_vec(),
            initial: self.initial_states().iter().map(|&s| name(s)).collect(),
            finals: self.final_states().iter().map(|&s| name(s)).collect(),
            transitions: self
                .arrows()
                .iter()
                .map(|a| Transition {
                    from: name(a.from),
                    label: a.label.map_or_else(|| "eps".to_string(), |l| l.to_string()),
                    to: name(a.to),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("automaton serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, AutomatonError> {
        let file: AutomatonFile = serde_json::from_str(text).map_err(|e| AutomatonError::Json(e.to_string()))?;
        let alphabet = Alphabet::new(file.rank)?;
        let ids: HashMap<&str, usize> = file.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let id = |s: &str| ids.get(s).copied().ok_or_else(|| AutomatonError::Json(format!("unknown state `{s}`")));
        let mut arrows = Vec::with_capacity(file.transitions.len());
        for t in &file.transitions {
            let label = match t.label.as_str() {
                "eps" => None,
                tok => Some(Letter::parse_token(tok)?),
            };
            arrows.push(Arrow { from: id(&t.from)?, label, to: id(&t.to)? });
        }
        let initial = file.initial.iter().map(|s| id(s)).collect::<Result<Vec<_>, _>>()?;
        let finals = file.finals.iter().map(|s| id(s)).collect::<Result<Vec<_>, _>>()?;
        Automaton::from_parts(alphabet, file.states.clone(), arrows, initial, finals)
    }
}
