//! Parameter ranges on the command line: `7`, `2,4,6`, `1..11` (inclusive),
//! `2..=24:2` (inclusive with a step), or any comma-separated mix.

pub fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (body, step) = match part.split_once(':') {
            Some((b, st)) => (b, st.parse::<usize>().map_err(|e| format!("bad step in `{part}`: {e}"))?),
            None => (part, 1),
        };
        if step == 0 {
            return Err(format!("zero step in `{part}`"));
        }
        let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad number `{x}` in `{part}`: {e}"));
        match body.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend((a..=b).step_by(step));
            }
            None => out.push(num(body)?),
        }
    }
    if out.is_empty() {
        return Err("empty range".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Grid rows as a comma-separated list; `-` or an empty string is the empty
/// set.
pub fn parse_rows(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() || s.trim() == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad row `{x}`: {e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("2..=10:4,3").unwrap(), vec![2, 3, 6, 10]);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("").is_err());
        assert!(parse_range("1..x").is_err());
        assert_eq!(parse_rows("-").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_rows("2,3,6").unwrap(), vec![2, 3, 6]);
    }
}
