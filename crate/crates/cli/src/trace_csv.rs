//! Trace CSV export.
//!
//! The column layout and the number rendering are a contract: two runs of
//! the same scenario must produce byte-identical files, and downstream
//! tooling parses the columns positionally. Numbers are written with 12
//! significant digits, plain decimal notation whenever the magnitude allows
//! it, `0` for zero. The writer is deliberately hand-rolled; byte
//! stability matters more here than CSV generality (no field ever needs
//! quoting).

use rdv_core::{Trace, TraceRecord};

/// First line of every trace file.
pub const TRACE_HEADER: &str = "interaction,agent_id,x,y,t,inc_x,inc_y,inc_t,event,error_m";

/// Render a float with 12 significant digits.
///
/// Decimal notation is used while the leading digit sits between 1e-5 and
/// 1e11; outside that band the output falls back to exponent form. Zero
/// (either sign) renders as `0`.
pub fn format_sig12(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    // Rounding to 12 digits can carry into the next decade (0.99999999999951
    // becomes 1.00000000000), so the exponent must be read off the rounded
    // form, not computed from the raw magnitude.
    let sci = format!("{:.11e}", value);
    let e_at = sci.find('e').expect("exponential form");
    let exp: i32 = sci[e_at + 1..].parse().expect("exponent parses");
    if (-5..=11).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, value)
    } else {
        sci
    }
}

fn push_record(out: &mut String, r: &TraceRecord) {
    out.push_str(&r.interaction.to_string());
    out.push(',');
    out.push_str(&r.agent_id.to_string());
    for v in [
        r.sent.x,
        r.sent.y,
        r.sent.t,
        r.increment.x,
        r.increment.y,
        r.increment.t,
    ] {
        out.push(',');
        out.push_str(&format_sig12(v));
    }
    out.push(',');
    out.push_str(r.event.as_str());
    out.push(',');
    out.push_str(&format_sig12(r.error_to_reference));
    out.push('\n');
}

/// Render a full trace, header line included, one line per activation.
pub fn render_trace(trace: &Trace) -> String {
    // Rough per-line budget keeps reallocation out of the hot loop.
    let mut out = String::with_capacity(64 + trace.records.len() * 110);
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in &trace.records {
        push_record(&mut out, r);
    }
    out
}
