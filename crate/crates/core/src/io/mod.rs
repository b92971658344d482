//! Text input, JSON documents and SVG pictures.

pub mod json;
pub mod svg;

use crate::error::{Error, Result};
use crate::group::{Generator, GroupSpec};

/// Parses `1/r(a,b,c)` or several such generators joined by `;`. The word
/// `trivial` (or an empty string) gives the trivial group. The result is
/// validated.
pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() || text == "trivial" {
        return Ok(GroupSpec::trivial());
    }
    let generators = text.split(';').map(parse_generator).collect::<Result<Vec<_>>>()?;
    let spec = GroupSpec { generators };
    spec.validate()?;
    Ok(spec)
}

fn parse_generator(s: &str) -> Result<Generator> {
    let bad = || Error::Input(format!("cannot parse `{s}`; expected 1/r(a,b,c)"));
    let rest = s.strip_prefix("1/").ok_or_else(bad)?;
    let (order, weights) = rest.split_once('(').ok_or_else(bad)?;
    let weights = weights.strip_suffix(')').ok_or_else(bad)?;
    let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
    let w: Vec<u64> = weights.split(',').map(num).collect::<Result<_>>()?;
    let [a, b, c] = w[..] else { return Err(bad()) };
    Ok(Generator::new(num(order)?, [a, b, c]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_group("1/11(1,2,8)").unwrap(), GroupSpec::cyclic(11, [1, 2, 8]));
        assert_eq!(parse_group(" 1/2(1,1,0) ; 1/2(0,1,1) ").unwrap().generators.len(), 2);
        assert_eq!(parse_group("trivial").unwrap(), GroupSpec::trivial());
        for bad in ["1/11(1,2,9)", "1/0(0,0,0)", "2/11(1,2,8)", "1/11(1,2)", "1/11(1,2,8", "1/x(1,1,1)", "1/3(1,1,1);"] {
            assert!(parse_group(bad).unwrap_err().is_usage(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["1/11(1,2,8)", "1/2(1,1,0);1/2(0,1,1)", "trivial"] {
            assert_eq!(parse_group(s).unwrap().to_string(), s);
        }
    }
}
