use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    Unknown,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::Unknown => "unknown-at-precision",
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub input: Vec<String>,
    pub window: Value,
}

impl Report {
    /// A library error; truncation-limited errors report as unknown.
    pub fn from_error(
        command: String,
        e: &pseudodiff::Error,
        input: Vec<String>,
        window: Value,
    ) -> Self {
        let status = if e.is_precision_limited() {
            Status::Unknown
        } else {
            Status::Error
        };
        let mut payload = json!({ "error": { "code": e.code(), "message": e.to_string() } });
        if let pseudodiff::Error::NoRelationWithinBudget { growth } = e {
            payload["error"]["growth"] = json!(growth);
        }
        Report {
            command,
            status,
            payload,
            input,
            window,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Unknown => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status.as_str(),
            "payload": self.payload,
            "provenance": { "input": self.input, "window": self.window },
        })
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(&self.to_json()).expect("serializable report")
            );
            return;
        }
        println!("{}: {}", self.command, self.status.as_str());
        match &self.payload {
            Value::Object(map) => print_fields(map),
            other => println!("{}", text(other)),
        }
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn print_fields(map: &Map<String, Value>) {
    for (k, v) in map {
        match v {
            Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
                println!("{k}:");
                for item in items {
                    println!("  {}", text(item));
                }
            }
            _ => println!("{k}: {}", text(v)),
        }
    }
}
