use serde::Serialize;

use super::Scenario;
use crate::error::{Error, Result};

macro_rules! builtin_table {
    ($($name:literal),* $(,)?) => {
        const BUILTINS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../scenarios/", $name, ".json")))),*
        ];
    };
}

builtin_table!(
    "vacuum",
    "single_e_q1",
    "single_e_q2",
    "single_e_q3",
    "single_e_q4",
    "string_z1z2",
    "string_z1z3",
    "string_z1z4",
    "populated_string_z2z4",
    "populated_string_z3z4",
    "populated_string_z1z4",
    "loop_empty",
    "loop_populated",
    "interference_q1",
    "interference_q2",
    "interference_q3",
    "interference_q4",
    "alt_path",
    "braiding_minimal",
    "braiding_grid_inside",
    "braiding_grid_outside",
    "fusion_grid",
    "vacuum_calibrated",
    "source_chain",
    "source_chain_emission",
);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuiltinInfo {
    pub name: String,
    pub description: String,
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Result<Scenario> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Scenario(format!("no built-in scenario named {name:?}")))?;
    Scenario::from_json(text)
}

pub fn builtins() -> Vec<Scenario> {
    BUILTINS
        .iter()
        .map(|(_, t)| Scenario::from_json(t).expect("built-in scenarios parse"))
        .collect()
}

pub fn list_builtins() -> Vec<BuiltinInfo> {
    builtins()
        .into_iter()
        .map(|s| BuiltinInfo {
            name: s.name,
            description: s.description,
        })
        .collect()
}
