//! Frame shapes `prod i^{a_i}` and the built-in M23, M24 and S24 tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::eta::EtaExponentMap;
use crate::rational::{frac, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameShape {
    cycles: BTreeMap<u32, i64>,
}

impl FrameShape {
    /// A permutation shape: positive multiplicities with `sum i a_i = 24`.
    pub fn permutation<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Result<Self> {
        let shape = Self::quotient(pairs)?;
        if shape.cycles.values().any(|&a| a < 0) {
            return Err(Error::Parse(format!("negative multiplicity in `{shape}`")));
        }
        if shape.degree() != 24 {
            return Err(Error::SumNot24 { shape: shape.to_string(), degree: shape.degree() });
        }
        Ok(shape)
    }

    /// An eta-quotient shape: any non-zero integer multiplicities.
    pub fn quotient<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Result<Self> {
        let mut cycles = BTreeMap::new();
        for (i, a) in pairs {
            if i == 0 {
                return Err(Error::Parse("cycle length 0".into()));
            }
            *cycles.entry(i).or_insert(0) += a;
        }
        cycles.retain(|_, a| *a != 0);
        if cycles.is_empty() {
            return Err(Error::Parse("empty frame shape".into()));
        }
        Ok(FrameShape { cycles })
    }

    pub fn cycles(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.cycles.iter().map(|(&i, &a)| (i, a))
    }

    pub fn multiplicity(&self, i: u32) -> i64 {
        self.cycles.get(&i).copied().unwrap_or(0)
    }

    /// `sum i a_i`.
    pub fn degree(&self) -> i64 {
        self.cycles().map(|(i, a)| i as i64 * a).sum()
    }

    /// Least common multiple of the cycle lengths present.
    pub fn order(&self) -> u64 {
        self.cycles.keys().fold(1u64, |acc, &i| acc.lcm(&(i as u64)))
    }

    pub fn fixed_points(&self) -> i64 {
        self.multiplicity(1)
    }

    /// `(sum a_i) / 2`.
    pub fn weight(&self) -> Rational {
        frac(self.cycles.values().sum(), 2)
    }

    /// The weight when it is an integer.
    pub fn integer_weight(&self) -> Option<i64> {
        let total: i64 = self.cycles.values().sum();
        (total % 2 == 0).then_some(total / 2)
    }

    /// gcd times lcm of the cycle lengths present.
    pub fn level(&self) -> u64 {
        let g = self.cycles.keys().fold(0u64, |acc, &i| acc.gcd(&(i as u64)));
        g * self.order()
    }

    pub fn eta_exponents(&self) -> EtaExponentMap {
        EtaExponentMap::new(self.cycles()).expect("cycle lengths are positive")
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cycles().map(|(i, a)| format!("{i}^{a}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for FrameShape {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_tokens(text: &str) -> Result<Vec<(u32, i64)>> {
    let bad = |token: &str| Error::Parse(format!("bad frame-shape token `{token}` in `{text}`"));
    text.split_whitespace()
        .map(|token| {
            let (base, exp) = token.split_once('^').unwrap_or((token, "1"));
            let i: u32 = base.parse().map_err(|_| bad(token))?;
            let a: i64 = exp.trim_matches(|c| c == '{' || c == '}').parse().map_err(|_| bad(token))?;
            Ok((i, a))
        })
        .collect()
}

/// Parses `"1^2 2^1 4^1 8^2"`; a bare `i` means `i^1`.
pub fn parse_frame_shape(text: &str) -> Result<FrameShape> {
    FrameShape::permutation(parse_tokens(text)?)
}

/// Like [`parse_frame_shape`] but allows negative exponents and any degree.
pub fn parse_eta_quotient(text: &str) -> Result<FrameShape> {
    FrameShape::quotient(parse_tokens(text)?)
}

impl FromStr for FrameShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_frame_shape(s)
    }
}

/// A table entry with its printed order, level and weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub shape: FrameShape,
    pub order: u64,
    pub level: u64,
    pub weight: i64,
}

fn entries(rows: &[(&str, u64, u64, i64)]) -> Vec<TableEntry> {
    rows.iter()
        .map(|&(text, order, level, weight)| TableEntry {
            shape: parse_frame_shape(text).expect("built-in shapes are valid"),
            order,
            level,
            weight,
        })
        .collect()
}

/// The 12 Frame shapes of M23 (order, level, weight).
pub fn m23_shapes() -> Vec<TableEntry> {
    entries(&[
        ("1^24", 1, 1, 12),
        ("1^8 2^8", 2, 2, 8),
        ("1^6 3^6", 3, 3, 6),
        ("1^4 2^2 4^4", 4, 4, 5),
        ("1^4 5^4", 5, 5, 4),
        ("1^2 2^2 3^2 6^2", 6, 6, 4),
        ("1^3 7^3", 7, 7, 3),
        ("1^2 2^1 4^1 8^2", 8, 8, 3),
        ("1^2 11^2", 11, 11, 2),
        ("1 2 7 14", 14, 14, 2),
        ("1 3 5 15", 15, 15, 2),
        ("1 23", 23, 23, 1),
    ])
}

/// The 9 Frame shapes of M24 without fixed points.
pub fn m24_extra_shapes() -> Vec<TableEntry> {
    entries(&[
        ("2^12", 2, 4, 6),
        ("3^8", 3, 9, 4),
        ("2^4 4^4", 4, 8, 4),
        ("4^6", 4, 16, 3),
        ("6^4", 6, 36, 2),
        ("2^2 10^2", 10, 20, 2),
        ("2 4 6 12", 12, 24, 2),
        ("12^2", 12, 144, 1),
        ("3 21", 21, 63, 1),
    ])
}

/// The 7 integer-weight S24 shapes outside M24 whose eta-products are
/// Hecke eigenforms.
pub fn s24_extra_shapes() -> Vec<TableEntry> {
    entries(&[
        ("3^2 9^2", 9, 27, 2),
        ("4^2 8^2", 8, 32, 2),
        ("2^3 6^3", 6, 12, 3),
        ("2 22", 22, 44, 1),
        ("4 20", 20, 80, 1),
        ("6 18", 18, 108, 1),
        ("8 16", 16, 128, 1),
    ])
}

/// All 21 Frame shapes of M24.
pub fn m24_shapes() -> Vec<TableEntry> {
    let mut all = m23_shapes();
    all.extend(m24_extra_shapes());
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parse_examples() {
        let g = parse_frame_shape("1^24").unwrap();
        assert_eq!((g.fixed_points(), g.order(), g.weight()), (24, 1, rat(12)));
        let g = parse_frame_shape("1^2 2^1 4^1 8^2").unwrap();
        assert_eq!((g.order(), g.weight(), g.fixed_points()), (8, rat(3), 2));
        assert_eq!(parse_frame_shape("2^2 10^2").unwrap().level(), 20);
        assert_eq!(parse_frame_shape("1 23").unwrap().to_string(), "1^1 23^1");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_frame_shape("1^23"), Err(Error::SumNot24 { degree: 23, .. })));
        assert!(matches!(parse_frame_shape("1^x"), Err(Error::Parse(_))));
        assert!(matches!(parse_frame_shape("0^3"), Err(Error::Parse(_))));
        assert!(matches!(parse_frame_shape(""), Err(Error::Parse(_))));
        assert!(matches!(parse_frame_shape("1^26 2^-1"), Err(Error::Parse(_))));
        let q = parse_eta_quotient("2^4 6^4 1^-1 3^-1 4^-1 12^-1").unwrap();
        assert_eq!((q.degree(), q.weight()), (12, rat(2)));
    }

    #[test]
    fn table_sizes_and_printed_columns() {
        assert_eq!(m23_shapes().len(), 12);
        assert_eq!(m24_extra_shapes().len(), 9);
        assert_eq!(s24_extra_shapes().len(), 7);
        let all = m24_shapes().into_iter().chain(s24_extra_shapes());
        for e in all {
            assert_eq!(e.shape.degree(), 24, "{}", e.shape);
            assert_eq!(e.shape.order(), e.order, "{}", e.shape);
            assert_eq!(e.shape.level(), e.level, "{}", e.shape);
            assert_eq!(e.shape.integer_weight(), Some(e.weight), "{}", e.shape);
        }
    }

    #[test]
    fn m23_is_exactly_the_shapes_with_fixed_points() {
        assert!(m23_shapes().iter().all(|e| e.shape.fixed_points() >= 1));
        assert!(m24_extra_shapes().iter().all(|e| e.shape.fixed_points() == 0));
    }
}
