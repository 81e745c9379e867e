use std::str::FromStr;

use super::Matroid;
use crate::closure::ElementSet;
use crate::Error;

/// Order in which the `r`-subsets of `[n]` are listed in a census line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CensusOrder {
    /// `01, 02, 03, 12, 13, 23`
    #[default]
    Lex,
    /// Compared from the largest element down: `01, 02, 12, 03, 13, 23`.
    Revlex,
}

impl FromStr for CensusOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lex" => Ok(Self::Lex),
            "revlex" => Ok(Self::Revlex),
            _ => Err(Error::Parse(format!("unknown census order {s:?}, expected lex or revlex"))),
        }
    }
}

impl CensusOrder {
    /// All `r`-subsets of `[n]` in this order.
    pub fn subsets(self, n: usize, r: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for x in start..n {
                if n - x < r - cur.len() {
                    break;
                }
                cur.push(x);
                rec(x + 1, n, r, cur, out);
                cur.pop();
            }
        }
        rec(0, n, r, &mut cur, &mut out);
        if self == Self::Revlex {
            out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        }
        out
    }
}

/// Decodes one census line of `C(n, r)` characters from `{0, 1, *}`
/// (`*` counts as a basis) and validates the result.
pub fn parse_census(line: &str, n: usize, r: usize, order: CensusOrder) -> Result<Matroid, Error> {
    if r > n {
        return Err(Error::Invalid(format!("rank {r} exceeds ground set size {n}")));
    }
    let line = line.trim();
    let subsets = order.subsets(n, r);
    let chars: Vec<char> = line.chars().collect();
    if chars.len() != subsets.len() {
        return Err(Error::Parse(format!(
            "census line has {} characters, expected C({n},{r}) = {}",
            chars.len(),
            subsets.len()
        )));
    }
    let mut bases = Vec::new();
    for (c, s) in chars.iter().zip(&subsets) {
        match c {
            '1' | '*' => bases.push(ElementSet::from_indices(n, s.iter().copied())),
            '0' => {}
            other => return Err(Error::Parse(format!("unexpected character {other:?} in census line"))),
        }
    }
    if bases.is_empty() {
        return Err(Error::Invalid("census line has no bases".into()));
    }
    let m = Matroid::new(n, bases)?;
    if n > super::EXCHANGE_CHECK_LIMIT {
        m.check_polytope_edges()?;
    }
    Ok(m)
}

impl Matroid {
    /// Inverse of [`parse_census`].
    pub fn to_census(&self, order: CensusOrder) -> String {
        order
            .subsets(self.n, self.r)
            .iter()
            .map(|s| if self.is_basis(&ElementSet::from_indices(self.n, s.iter().copied())) { '1' } else { '0' })
            .collect()
    }
}
