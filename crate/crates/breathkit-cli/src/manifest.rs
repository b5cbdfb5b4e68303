//! Validated run description: which command, its parameters after
//! validation, and where output goes. The manifest's parameter map is
//! ordered, so config echoes are byte-stable.

use crate::format::json_string;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Eval,
    Sweep,
    Verify,
    Limits,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Eval => "eval",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
            Command::Limits => "limits",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: Command,
    pub parameters: BTreeMap<String, String>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunManifest {
    pub fn new(command: Command, output_format: OutputFormat, output_path: Option<PathBuf>) -> Self {
        RunManifest { command, parameters: BTreeMap::new(), output_format, output_path }
    }

    pub fn set(&mut self, key: &str, value: String) {
        self.parameters.insert(key.to_string(), value);
    }

    /// The manifest as a JSON object; numeric-looking parameters are emitted
    /// verbatim (they were serialized with the 17-digit formatter), the rest
    /// as strings.
    pub fn config_json(&self) -> String {
        let mut fields = vec![format!("\"command\":{}", json_string(self.command.as_str()))];
        for (key, value) in &self.parameters {
            let looks_numeric = !value.is_empty()
                && value
                    .chars()
                    .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e'))
                && value.parse::<f64>().is_ok();
            let rendered = if looks_numeric { value.clone() } else { json_string(value) };
            fields.push(format!("{}:{}", json_string(key), rendered));
        }
        fields.push(format!("\"format\":{}", json_string(self.output_format.as_str())));
        format!("{{{}}}", fields.join(","))
    }
}
