use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Parses disjoint-cycle notation such as `(2, 3, 5)(4,7,10)` or `()`.
pub fn parse_permutation(degree: usize, text: &str) -> Result<Permutation> {
    parse_cycles_line(degree, text, 0)
}

fn parse_cycles_line(degree: usize, text: &str, line: usize) -> Result<Permutation> {
    let err = |message: String| Error::Parse { line, message };
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty permutation".into()));
    }
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| err(format!("expected `(` at `{rest}`")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| err("unclosed cycle".into()))?;
        let body = body_start[..close].trim();
        if !body.is_empty() {
            let cycle = body
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| err(format!("bad point `{}`", s.trim())))
                })
                .collect::<Result<Vec<u32>>>()?;
            cycles.push(cycle);
        }
        rest = body_start[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => err(other.to_string()),
    })
}

/// Reads the group text format: a `degree n` line, then one generator per
/// line. Blank lines and `#` comments are skipped.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: format!("expected `degree n`, found `{line}`"),
                    })?;
                degree = Some(n);
            }
            Some(n) => gens.push(parse_cycles_line(n, line, line_no)?),
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing `degree n` line".into(),
    })?;
    PermGroup::new(degree, gens)
}

/// Canonical text form; `parse_group(write_group(g))` has the same generators.
pub fn write_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let text = "# Example\ndegree 10\n\n(3,6,8,5,7,10,9,4)\n(1,8,2)(3,4,5)(6,10,7)\n(3,7)(4,6)(5,10)\n";
        let g = parse_group(text).unwrap();
        let canonical = write_group(&g);
        assert_eq!(canonical, "degree 10\n(3,6,8,5,7,10,9,4)\n(1,8,2)(3,4,5)(6,10,7)\n(3,7)(4,6)(5,10)\n");
        assert_eq!(write_group(&parse_group(&canonical).unwrap()), canonical);
    }

    #[test]
    fn accepts_spaces_and_reorders_cycles() {
        let p = parse_permutation(10, "(6, 9, 8)( 3,5 ,2)").unwrap();
        assert_eq!(p.to_string(), "(2,3,5)(6,9,8)");
        assert!(parse_permutation(4, "()").unwrap().is_identity());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_group("degree 4\n(1,2)\n(1,5)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_group("(1,2)\n").is_err());
        assert!(parse_group("degree 3\n(1,2\n").is_err());
        assert!(parse_group("").is_err());
    }
}
