//! Shared text grammars for quadratic values, matrices, curves and skew
//! parameters. The CLI and the library parse the same forms:
//!
//! * quadratic values: `quad:a,b,c,d` meaning `(a + b*sqrt(d))/c`, with
//!   shorthands `sqrt:d` and `int:n`;
//! * integer matrices: rows separated by `;`, entries by `,` (`1,1;2,1`);
//! * curves: `a4,a6`;
//! * skew matrices: upper-triangle entries row by row, `;`-separated rows;
//! * value lists (Jacobi–Perron input): `;`-separated entries, each a quad
//!   form, `root:m,k` (the k-th root of m) or a decimal literal `dec:x.y`.

use crate::exact::QuadInt;
use crate::elliptic::CurveModel;
use crate::real::{Ball, BigFloat};
use crate::torus::SkewMatrix;
use crate::zlinalg::{IntMatrix, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;

/// Grammar violations; distinct from domain errors so callers can map them
/// to usage failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

fn bigint(s: &str) -> ParseResult<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| ParseError(format!("expected an integer, got `{s}`")))
}

/// `quad:a,b,c,d` | `sqrt:d` | `int:n`.
pub fn parse_quad(spec: &str) -> ParseResult<QuadInt> {
    let spec = spec.trim();
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| ParseError(format!("expected `quad:`, `sqrt:` or `int:` form, got `{spec}`")))?;
    match kind {
        "quad" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 4 {
                return Err(ParseError(format!(
                    "quad form needs 4 comma-separated integers, got `{rest}`"
                )));
            }
            QuadInt::new(
                bigint(parts[0])?,
                bigint(parts[1])?,
                bigint(parts[2])?,
                bigint(parts[3])?,
            )
            .map_err(|e| ParseError(e.to_string()))
        }
        "sqrt" => QuadInt::sqrt(bigint(rest)?).map_err(|e| ParseError(e.to_string())),
        "int" => Ok(QuadInt::from_bigint(bigint(rest)?)),
        other => Err(ParseError(format!("unknown value form `{other}:`"))),
    }
}

/// Rows `;`-separated, entries `,`-separated: `1,1;2,1`.
pub fn parse_matrix(spec: &str) -> ParseResult<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = spec
        .trim()
        .split(';')
        .map(|row| row.split(',').map(bigint).collect::<ParseResult<Vec<_>>>())
        .collect::<ParseResult<Vec<_>>>()?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(ParseError("empty matrix".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(ParseError("ragged matrix rows".into()));
    }
    Ok(Matrix::from_rows(rows))
}

/// `a4,a6`.
pub fn parse_curve(spec: &str) -> ParseResult<(BigInt, BigInt)> {
    let parts: Vec<&str> = spec.trim().split(',').collect();
    if parts.len() != 2 {
        return Err(ParseError(format!(
            "curve form is `a4,a6`, got `{spec}`"
        )));
    }
    Ok((bigint(parts[0])?, bigint(parts[1])?))
}

/// Curve with the singularity check applied.
pub fn parse_curve_model(spec: &str) -> ParseResult<CurveModel> {
    let (a4, a6) = parse_curve(spec)?;
    // Singularity is a domain error, reported separately by the caller.
    CurveModel::new(a4, a6).map_err(|e| ParseError(e.to_string()))
}

/// Exact decimal literal to a rational: `-12.375` -> -99/8.
pub fn parse_decimal(s: &str) -> ParseResult<BigRational> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseError(format!("expected a decimal number, got `{s}`")));
    }
    let digits = format!("{}{}", int_part, frac_part);
    let num = BigInt::from_str(&digits)
        .map_err(|_| ParseError(format!("expected a decimal number, got `{s}`")))?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(BigInt::from(sign) * num, den))
}

/// One entry of a high-precision value list.
pub fn parse_value_entry(spec: &str, prec: u32) -> ParseResult<Ball> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("root:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(ParseError(format!(
                "root form is `root:m,k`, got `{spec}`"
            )));
        }
        let m = bigint(parts[0])?;
        let k: u32 = parts[1]
            .trim()
            .parse()
            .map_err(|_| ParseError(format!("bad root degree `{}`", parts[1])))?;
        return Ball::nth_root_of_bigint(&m, k, prec).map_err(|e| ParseError(e.to_string()));
    }
    if let Some(rest) = spec.strip_prefix("dec:") {
        let r = parse_decimal(rest)?;
        return Ok(Ball::from_ratio(r.numer(), r.denom(), prec));
    }
    let q = parse_quad(spec)?;
    Ok(q.to_ball(prec))
}

/// `;`-separated list of value entries.
pub fn parse_value_list(spec: &str, prec: u32) -> ParseResult<Vec<Ball>> {
    spec.trim()
        .split(';')
        .map(|e| parse_value_entry(e, prec))
        .collect()
}

/// Skew matrix from upper-triangle entries, row by row (`;` rows, `,`
/// entries): for a 4x4 the rows are `t12,t13,t14; t23,t24; t34`, and a 2x2
/// is the single entry `t12`. Entries may be quad forms or decimal
/// literals; any decimal entry makes the whole matrix numeric.
pub fn parse_skew(spec: &str, prec: u32) -> ParseResult<SkewMatrix> {
    #[derive(Clone)]
    enum Entry {
        Exact(QuadInt),
        Numeric(BigRational),
    }
    let rows: Vec<Vec<Entry>> = spec
        .trim()
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    let e = e.trim();
                    if let Some(rest) = e.strip_prefix("dec:") {
                        parse_decimal(rest).map(Entry::Numeric)
                    } else if e.contains(':') {
                        parse_quad(e).map(Entry::Exact)
                    } else {
                        parse_decimal(e).map(Entry::Numeric)
                    }
                })
                .collect::<ParseResult<Vec<_>>>()
        })
        .collect::<ParseResult<Vec<_>>>()?;
    let dim = rows.len() + 1;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim - 1 - i {
            return Err(ParseError(format!(
                "upper-triangle row {} must have {} entries, found {}",
                i + 1,
                dim - 1 - i,
                row.len()
            )));
        }
    }
    let all_exact = rows.iter().flatten().all(|e| matches!(e, Entry::Exact(_)));
    if all_exact {
        let mut m = Matrix::new(dim, dim, vec![QuadInt::zero(); dim * dim]);
        for (i, row) in rows.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                let j = i + 1 + k;
                if let Entry::Exact(q) = e {
                    m.set(i, j, q.clone());
                    m.set(j, i, q.neg());
                }
            }
        }
        SkewMatrix::exact(m).map_err(|e| ParseError(e.to_string()))
    } else {
        let mut m = Matrix::new(dim, dim, vec![BigFloat::zero(); dim * dim]);
        for (i, row) in rows.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                let j = i + 1 + k;
                let v = match e {
                    Entry::Exact(q) => q.to_ball(prec).mid().clone(),
                    Entry::Numeric(r) => BigFloat::from_ratio(r.numer(), r.denom(), prec),
                };
                m.set(i, j, v.clone());
                m.set(j, i, v.neg());
            }
        }
        SkewMatrix::numeric(m).map_err(|e| ParseError(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn quad_forms() {
        assert_eq!(parse_quad("sqrt:2").unwrap(), parse_quad("quad:0,1,1,2").unwrap());
        assert_eq!(parse_quad("int:7").unwrap(), QuadInt::from_i64(7));
        assert_eq!(
            parse_quad("quad:1,1,2,5").unwrap().spec_string(),
            "quad:1,1,2,5"
        );
        assert!(parse_quad("nope:1").is_err());
        assert!(parse_quad("quad:1,2").is_err());
        assert!(parse_quad("sqrt:-2").is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("1,1;2,1").unwrap();
        assert_eq!(m.grammar_string(), "1,1;2,1");
        assert!(parse_matrix("1,1;2").is_err());
        assert!(parse_matrix("x,y").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(
            parse_decimal("-12.375").unwrap(),
            BigRational::new(BigInt::from(-99), BigInt::from(8))
        );
        assert_eq!(parse_decimal("3").unwrap(), BigRational::from(BigInt::from(3)));
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn curves() {
        assert_eq!(
            parse_curve("-1,0").unwrap(),
            (BigInt::from(-1), BigInt::zero())
        );
        assert!(parse_curve("1").is_err());
        assert!(parse_curve_model("0,0").is_err());
    }

    #[test]
    fn skew_exact_2x2() {
        let sk = parse_skew("sqrt:2", 128).unwrap();
        match sk {
            SkewMatrix::Exact(m) => {
                assert_eq!(*m.at(0, 1), parse_quad("sqrt:2").unwrap());
                assert!(m.at(0, 0).is_zero());
            }
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn skew_numeric_4x4() {
        let sk = parse_skew("2,0,0;0,0;1", 96).unwrap();
        match sk {
            SkewMatrix::Numeric(m) => {
                assert_eq!(m.rows(), 4);
                assert_eq!(*m.at(0, 1), BigFloat::from_i64(2));
                assert_eq!(*m.at(3, 2), BigFloat::from_i64(-1));
            }
            _ => panic!("expected numeric"),
        }
        // explicit dec: prefix is accepted too
        let sk2 = parse_skew("dec:2.5,0,0;0,0;dec:0.75", 96).unwrap();
        match sk2 {
            SkewMatrix::Numeric(m) => {
                assert_eq!(
                    *m.at(0, 1),
                    BigFloat::from_ratio(&BigInt::from(5), &BigInt::from(2), 96)
                );
            }
            _ => panic!("expected numeric"),
        }
        // wrong triangle shape
        assert!(parse_skew("1,2,3;4", 96).is_err());
    }

    #[test]
    fn value_lists() {
        let v = parse_value_list("root:2,3;root:4,3", 128).unwrap();
        assert_eq!(v.len(), 2);
        let cube = v[0].mul(&v[0], 128).mul(&v[0], 128);
        let err = cube.mid().sub(&BigFloat::from_i64(2)).abs();
        assert!(err.cmp_value(&BigFloat::power_of_two(-100)) == std::cmp::Ordering::Less);
        let w = parse_value_list("sqrt:2;dec:0.5", 128).unwrap();
        assert_eq!(*w[1].mid(), BigFloat::from_ratio(&BigInt::one(), &BigInt::from(2), 64));
    }
}
