//! Exact-angle literals: `p/q` and `cos(pi*p/q)`.

use gegenbad::diophantine::RationalAngle;

/// Parses `p/q` into a rational angle.
pub fn parse_angle(s: &str) -> Result<RationalAngle, String> {
    let (p, q) = s
        .trim()
        .split_once('/')
        .ok_or_else(|| format!("malformed angle '{s}': expected p/q"))?;
    let p: i64 = p.trim().parse().map_err(|_| format!("malformed angle numerator in '{s}'"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("malformed angle denominator in '{s}'"))?;
    RationalAngle::new(p, q).map_err(|e| e.to_string())
}

/// A real number given as a decimal or as `cos(pi*p/q)`.
#[derive(Debug, Clone, Copy)]
pub struct RealLiteral {
    pub value: f64,
    pub angle: Option<RationalAngle>,
}

pub fn parse_real(s: &str) -> Result<RealLiteral, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = compact.strip_prefix("cos(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("malformed angle literal '{s}': missing ')'"))?;
        let ratio = inner
            .strip_prefix("pi*")
            .or_else(|| inner.strip_prefix("π*"))
            .ok_or_else(|| format!("malformed angle literal '{s}': expected cos(pi*p/q)"))?;
        let angle = parse_angle(ratio)?;
        return Ok(RealLiteral {
            value: angle.x(),
            angle: Some(angle),
        });
    }
    let value: f64 = compact
        .parse()
        .map_err(|_| format!("malformed number '{s}': expected a decimal or cos(pi*p/q)"))?;
    if !value.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(RealLiteral { value, angle: None })
}
