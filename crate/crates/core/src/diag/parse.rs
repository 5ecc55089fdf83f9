//! Text grammar for diagrams:
//! `updot@1 ; upcross@1 ; capccw@2 | lambda=3, src=E E F`.

use super::{Gen, Object, Path, Slice, Word};
use crate::error::ParseError;

pub fn parse_diagram(s: &str) -> Result<Path, ParseError> {
    let (slice_part, ctx) = s
        .split_once('|')
        .ok_or_else(|| ParseError::at(0, "missing `| lambda=.., src=..` context"))?;
    let mut lambda: Option<i64> = None;
    let mut src: Option<Word> = None;
    for item in ctx.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| ParseError::at(0, format!("bad context item `{item}`")))?;
        match k.trim() {
            "lambda" => {
                lambda = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| ParseError::at(0, "bad lambda"))?,
                )
            }
            "src" => {
                src =
                    Some(Word::parse(v.trim()).ok_or_else(|| ParseError::at(0, "bad src word"))?)
            }
            other => return Err(ParseError::at(0, format!("unknown context key `{other}`"))),
        }
    }
    let lambda = lambda.ok_or_else(|| ParseError::at(0, "missing lambda"))?;
    let src = src.ok_or_else(|| ParseError::at(0, "missing src"))?;
    let mut slices = Vec::new();
    for tok in slice_part.split(';') {
        let tok = tok.trim();
        if tok.is_empty() || tok == "id" {
            continue;
        }
        slices.push(parse_slice(tok)?);
    }
    Ok(Path {
        src: Object::new(src, lambda),
        slices,
    })
}

fn parse_slice(tok: &str) -> Result<Slice, ParseError> {
    let (name, pos) = tok
        .split_once('@')
        .ok_or_else(|| ParseError::at(0, format!("missing @position in `{tok}`")))?;
    let pos: usize = pos
        .trim()
        .parse()
        .map_err(|_| ParseError::at(0, format!("bad position in `{tok}`")))?;
    if pos == 0 {
        return Err(ParseError::at(0, "positions are 1-based"));
    }
    let name = name.trim();
    let gen = match name {
        "updot" => Gen::Dot,
        "downdot" => Gen::FDot,
        "upcross" => Gen::Cross,
        "downcross" => Gen::FCross,
        "sideef" => Gen::SideEfFe,
        "sidefe" => Gen::SideFeEf,
        "capccw" => Gen::CapCcw,
        "capcw" => Gen::CapCw,
        "cupccw" => Gen::CupCcw,
        "cupcw" => Gen::CupCw,
        _ => {
            if let Some(rest) = name.strip_prefix("bubccw(").and_then(|r| r.strip_suffix(')')) {
                Gen::Bub {
                    ccw: true,
                    j: rest
                        .parse()
                        .map_err(|_| ParseError::at(0, "bad bubble label"))?,
                }
            } else if let Some(rest) = name.strip_prefix("bubcw(").and_then(|r| r.strip_suffix(')'))
            {
                Gen::Bub {
                    ccw: false,
                    j: rest
                        .parse()
                        .map_err(|_| ParseError::at(0, "bad bubble label"))?,
                }
            } else {
                return Err(ParseError::at(0, format!("unknown generator `{name}`")));
            }
        }
    };
    Ok(Slice::new(gen, pos - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = parse_diagram("updot@1 ; upcross@1 | lambda=3, src=E E").unwrap();
        assert_eq!(p.slices.len(), 2);
        let printed = p.to_string();
        let again = parse_diagram(&printed).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rejects_unknown_generator() {
        assert!(parse_diagram("wiggle@1 | lambda=0, src=E").is_err());
    }
}
