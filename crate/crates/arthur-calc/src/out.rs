//! Report assembly and rendering: every command produces the same envelope
//! (inputs echo, results payload, violation list) rendered as text or JSON.

use arthur_core::{Sign, SignCharacter};
use serde_json::{json, Value};

/// A failed identity check, with a reproducer in the input DSL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub reproducer: String,
    pub detail: String,
}

/// The envelope a command handler fills in.
pub struct CommandOutput {
    pub text: String,
    pub inputs: Value,
    pub results: Value,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn sign_json(s: Sign) -> Value {
    json!(s.as_i8() as i64)
}

/// Positional character form: values in canonical summand order, "+,-,+".
pub fn char_positional(eps: &SignCharacter) -> String {
    let toks: Vec<&str> = eps
        .values()
        .iter()
        .map(|v| if v.is_plus() { "+" } else { "-" })
        .collect();
    toks.join(",")
}

/// JSON form of a character: an array of {summand, sign}.
pub fn char_json(eps: &SignCharacter) -> Value {
    Value::Array(
        eps.entries()
            .iter()
            .map(|(k, v)| json!({"summand": k.to_string(), "sign": v.as_i8() as i64}))
            .collect(),
    )
}

pub fn violations_json(violations: &[Violation]) -> Value {
    Value::Array(
        violations
            .iter()
            .map(|v| {
                json!({
                    "identity": v.identity,
                    "reproducer": v.reproducer,
                    "detail": v.detail,
                })
            })
            .collect(),
    )
}

/// Render the envelope; the exit code is 1 exactly when violations remain.
pub fn render(format: Format, command: &str, mut out: CommandOutput) -> (i32, String) {
    out.violations
        .sort_by(|a, b| (&a.reproducer, &a.identity).cmp(&(&b.reproducer, &b.identity)));
    let code = if out.violations.is_empty() { 0 } else { 1 };
    match format {
        Format::Json => {
            let doc = json!({
                "schema": 1,
                "command": command,
                "inputs": out.inputs,
                "results": out.results,
                "violations": violations_json(&out.violations),
            });
            (code, serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        Format::Text => {
            let mut text = out.text.trim_end().to_string();
            for v in &out.violations {
                text.push_str(&format!(
                    "\nVIOLATION [{}] {} — {}",
                    v.identity, v.reproducer, v.detail
                ));
            }
            if !out.violations.is_empty() {
                text.push_str(&format!("\n{} violation(s)", out.violations.len()));
            }
            (code, text)
        }
    }
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(violations: Vec<Violation>) -> CommandOutput {
        CommandOutput {
            text: "headline".into(),
            inputs: json!({"input": "x"}),
            results: json!({"value": 1}),
            violations,
        }
    }

    #[test]
    fn violations_flip_the_exit_code_and_are_sorted() {
        let (code, text) = render(Format::Text, "demo", sample(vec![]));
        assert_eq!(code, 0);
        assert_eq!(text, "headline");

        let vs = vec![
            Violation {
                identity: "b".into(),
                reproducer: "z".into(),
                detail: "late".into(),
            },
            Violation {
                identity: "a".into(),
                reproducer: "m".into(),
                detail: "early".into(),
            },
        ];
        let (code, text) = render(Format::Text, "demo", sample(vs.clone()));
        assert_eq!(code, 1);
        let m = text.find("[a] m").unwrap();
        let z = text.find("[b] z").unwrap();
        assert!(m < z, "{}", text);
        assert!(text.ends_with("2 violation(s)"), "{}", text);

        let (code, text) = render(Format::Json, "demo", sample(vs));
        assert_eq!(code, 1);
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["command"], "demo");
        assert_eq!(doc["violations"][0]["reproducer"], "m");
        assert_eq!(doc["violations"][1]["reproducer"], "z");
    }
}
