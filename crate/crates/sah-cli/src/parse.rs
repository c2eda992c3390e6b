use exact_linalg::{parse_rat, Vector};

/// Parse a semicolon-separated list of rational tuples, e.g.
/// `"(1,0);(1/2,-3)"`. All tuples must have the same length.
pub fn parse_vectors(input: &str) -> Result<Vec<Vector>, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty vector list".into());
    }
    let mut out = Vec::new();
    for part in s.split(';') {
        out.push(parse_vector(part)?);
    }
    let dim = out[0].dim();
    if out.iter().any(|v| v.dim() != dim) {
        return Err("all vectors must have the same number of coordinates".into());
    }
    Ok(out)
}

/// Parse one tuple of rationals, e.g. `"(1,0)"` or `"(2/3,-1,0)"`.
pub fn parse_vector(input: &str) -> Result<Vector, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected a parenthesized tuple, got {:?}", input))?;
    if inner.is_empty() {
        return Err("empty tuple".into());
    }
    let coords = inner
        .split(',')
        .map(|c| parse_rat(c).map_err(|_| format!("not a rational number: {:?}", c)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::new(coords))
}
