//! Cycle-notation text: `(1 2 7)(3 4 5 6)`, identity as `()`.

use std::fmt;

use super::Permutation;
use crate::error::{Error, Result};

impl Permutation {
    /// Parses cycle notation. Fixed points may be written or omitted; the
    /// degree is supplied separately.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation> {
        let text = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let entries = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if !entries.is_empty() {
                cycles.push(entries);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.nontrivial_cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["(1 2 7)(3 4 5 6)", "()", "(2 6)(7 8 11 12)(9 10)"] {
            assert_eq!(Permutation::parse(s, 12).unwrap().to_string(), s);
        }
    }

    #[test]
    fn fixed_points_and_rotation_accepted() {
        let w = Permutation::parse("(1)(3 4 2)(5)", 5).unwrap();
        assert_eq!(w.to_string(), "(2 3 4)");
        assert_eq!(Permutation::parse("", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("1 2)", 3).is_err());
        assert!(Permutation::parse("(1 x)", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
    }
}
