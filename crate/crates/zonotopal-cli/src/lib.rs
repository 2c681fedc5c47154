//! Command line front end for the zonotopal-core library: text input
//! parsing, JSON rendering, and one function per subcommand.
//!
//! Output is deterministic byte for byte: object keys are sorted, exact
//! rationals print as strings, and nothing varies run to run unless timings
//! are explicitly requested.

pub mod commands;
pub mod input;
pub mod render;
pub mod verify;

use serde_json::{json, Value};

/// Wraps a command's result payload in the common output envelope.
pub fn envelope(command: &str, input: Value, result: Value, elapsed_ms: Option<f64>) -> Value {
    let mut v = json!({
        "command": command,
        "input": input,
        "result": result,
    });
    if let Some(ms) = elapsed_ms {
        // round to whole milliseconds; sub-millisecond noise is meaningless
        v["timings"] = json!({ "total_ms": ms.round() as u64 });
    }
    v
}
