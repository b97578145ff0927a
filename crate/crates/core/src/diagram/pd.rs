//! Text form: one `X(a,b,c,d)` line per crossing, then `T(nw,ne,sw,se)` for
//! a tangle and `O(k)` when there are `k` crossingless loops.

use std::fmt;
use std::str::FromStr;

use super::{Crossing, EdgeId, PlanarDiagram};
use crate::error::{Error, Result};

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            let [a, b, cc, d] = c.slots;
            writeln!(f, "X({a},{b},{cc},{d})")?;
        }
        if let Some([nw, ne, sw, se]) = self.endpoints {
            writeln!(f, "T({nw},{ne},{sw},{se})")?;
        }
        if self.free_loops > 0 {
            writeln!(f, "O({})", self.free_loops)?;
        }
        Ok(())
    }
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses `K(n1,...,nk)` starting at byte `base`; returns the tag and the
/// integers.
fn parse_record(line: &str, base: usize) -> Result<(char, Vec<u64>)> {
    let tag = line
        .chars()
        .next()
        .ok_or_else(|| err(base, "empty record"))?;
    let rest = line[tag.len_utf8()..].trim_start();
    let open = base + line.len() - rest.len();
    let inner = rest
        .strip_prefix('(')
        .ok_or_else(|| err(open, "expected '('"))?;
    let close = inner
        .rfind(')')
        .ok_or_else(|| err(base + line.len(), "expected ')'"))?;
    if !inner[close + 1..].trim().is_empty() {
        return Err(err(open + 1 + close + 1, "trailing characters after ')'"));
    }
    let mut pos = open + 1;
    let mut values = Vec::new();
    for field in inner[..close].split(',') {
        let t = field.trim();
        let at = pos + (field.len() - field.trim_start().len());
        let v = t
            .parse::<u64>()
            .map_err(|_| err(at, format!("expected a non-negative integer, found {t:?}")))?;
        values.push(v);
        pos += field.len() + 1;
    }
    Ok((tag, values))
}

impl FromStr for PlanarDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut endpoints = None;
        let mut free_loops = 0usize;
        let mut offset = 0;
        for raw in s.split_inclusive('\n') {
            let base = offset;
            offset += raw.len();
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let start = base + (line.len() - line.trim_start().len());
            let (tag, v) = parse_record(trimmed, start)?;
            let ids = |n: usize| -> Result<Vec<EdgeId>> {
                if v.len() != n {
                    return Err(err(
                        start,
                        format!("{tag} takes {n} values, got {}", v.len()),
                    ));
                }
                v.iter()
                    .map(|&x| EdgeId::try_from(x).map_err(|_| err(start, "edge id too large")))
                    .collect()
            };
            match tag {
                'X' => {
                    let e = ids(4)?;
                    crossings.push(Crossing::new(e[0], e[1], e[2], e[3]));
                }
                'T' => {
                    if endpoints.is_some() {
                        return Err(err(start, "second T record"));
                    }
                    let e = ids(4)?;
                    endpoints = Some([e[0], e[1], e[2], e[3]]);
                }
                'O' => {
                    if v.len() != 1 {
                        return Err(err(start, "O takes 1 value"));
                    }
                    free_loops += v[0] as usize;
                }
                other => return Err(err(start, format!("unknown record {other:?}"))),
            }
        }
        PlanarDiagram::from_parts(crossings, endpoints, free_loops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_standard;

    #[test]
    fn round_trip() {
        for s in ["[2,3,4]", "[0]", "[1,-2]", "[2,2,3]"] {
            let d = build_standard(&s.parse().unwrap()).unwrap();
            assert_eq!(d.to_string().parse::<PlanarDiagram>().unwrap(), d);
            let n = d.numerator().unwrap();
            assert_eq!(n.to_string().parse::<PlanarDiagram>().unwrap(), n);
        }
        let u = PlanarDiagram::unlink(2);
        assert_eq!(u.to_string(), "O(2)\n");
        assert_eq!("O(2)".parse::<PlanarDiagram>().unwrap(), u);
    }

    #[test]
    fn one_crossing_text() {
        let d = build_standard(&"[1]".parse().unwrap()).unwrap();
        assert_eq!(d.to_string(), "X(1,2,3,4)\nT(4,3,1,2)\n");
    }

    #[test]
    fn errors_have_offsets() {
        let e = "X(1,1,2,2)\nY(3)".parse::<PlanarDiagram>().unwrap_err();
        assert_eq!(e, err(11, "unknown record 'Y'"));
        let e = "X(1, a,2,2)".parse::<PlanarDiagram>().unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 5, .. }), "{e:?}");
        assert!(matches!(
            "X(1,2,3,4)".parse::<PlanarDiagram>(),
            Err(Error::MalformedDiagram(_))
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let d: PlanarDiagram = "# curl\n\n  X(1,1,2,2)  # positive\n".parse().unwrap();
        assert_eq!(d, PlanarDiagram::curl(true));
    }
}
