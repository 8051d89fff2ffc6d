//! Laurent polynomials in `v` with integer coefficients, `Z[v, v^{-1}]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::cyclotomic::CycNumber;
use crate::poly::SparsePoly;

pub type LaurentInt = SparsePoly<i32, BigInt>;

/// Laurent polynomials in `v` over `Q(ζ_d)`.
pub type CycLaurent = SparsePoly<i32, CycNumber>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed Laurent polynomial {0:?}")]
pub struct LaurentParseError(pub String);

pub fn v_pow(e: i32) -> LaurentInt {
    LaurentInt::term(e, BigInt::one())
}

pub fn int(c: i64) -> LaurentInt {
    LaurentInt::constant(BigInt::from(c))
}

/// `v + v^{-1}`.
pub fn v_plus_v_inv() -> LaurentInt {
    LaurentInt::from_terms([(-1, BigInt::one()), (1, BigInt::one())])
}

/// Quantum integer `[v]_j = v^{-j} + v^{-j+2} + … + v^j`.
pub fn quantum_integer(j: u32) -> LaurentInt {
    let j = j as i32;
    LaurentInt::from_terms((0..=j).map(|t| (-j + 2 * t, BigInt::one())))
}

/// `1 + v^2 + … + v^{2(len-1)}`.
pub fn even_series(len: usize) -> LaurentInt {
    LaurentInt::from_terms((0..len as i32).map(|t| (2 * t, BigInt::one())))
}

pub fn to_cyc(p: &LaurentInt, ctx: &std::sync::Arc<crate::cyclotomic::CycContext>) -> CycLaurent {
    p.map_coeffs(|c| {
        CycNumber::from_rational(ctx, num_rational::BigRational::from_integer(c.clone()))
    })
}

/// Evaluates at a complex `v`.
pub fn eval_complex(p: &LaurentInt, v: num_complex::Complex64) -> num_complex::Complex64 {
    p.terms()
        .map(|(e, c)| v.powi(*e) * crate::cyclotomic::rational_to_f64(&num_rational::BigRational::from_integer(c.clone())))
        .sum()
}

fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i32, bool, String)>,
{
    let mut first = true;
    for (e, negative, magnitude) in terms {
        let sep = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        let var = match e {
            0 => String::new(),
            1 => "v".to_string(),
            _ => format!("v^{e}"),
        };
        match (magnitude.as_str(), e) {
            (m, 0) => write!(f, "{sep}{m}")?,
            ("1", _) => write!(f, "{sep}{var}")?,
            (m, _) => write!(f, "{sep}{m}{var}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Ascending powers, e.g. `v^-2 + 2 + v^2` or `v^-1 - v`.
impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms()
                .map(|(e, c)| (*e, c.is_negative(), c.abs().to_string())),
        )
    }
}

impl fmt::Display for CycLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (*e, false, c.to_string())))
    }
}

impl std::str::FromStr for LaurentInt {
    type Err = LaurentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LaurentParseError(s.to_string());
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut out = LaurentInt::zero();
        let mut pos = 0;
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < compact.len() && compact[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| compact[start..*pos].iter().collect::<String>().parse().unwrap())
        };
        while pos < compact.len() {
            let mut negative = false;
            match compact[pos] {
                '+' => pos += 1,
                '-' => {
                    negative = true;
                    pos += 1
                }
                _ if pos != 0 => return Err(err()),
                _ => {}
            }
            let coeff = read_int(&mut pos);
            let mut exp = 0i32;
            if pos < compact.len() && compact[pos] == 'v' {
                pos += 1;
                exp = 1;
                if pos < compact.len() && compact[pos] == '^' {
                    pos += 1;
                    let neg_exp = pos < compact.len() && compact[pos] == '-';
                    if neg_exp {
                        pos += 1;
                    }
                    let e = read_int(&mut pos).ok_or_else(err)?;
                    let e: i32 = e.try_into().map_err(|_| err())?;
                    exp = if neg_exp { -e } else { e };
                }
            } else if coeff.is_none() {
                return Err(err());
            }
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_format() {
        let p = &v_plus_v_inv() * &v_plus_v_inv();
        assert_eq!(p.to_string(), "v^-2 + 2 + v^2");
        let q = &v_pow(-1) - &v_pow(1);
        assert_eq!(q.to_string(), "v^-1 - v");
        assert_eq!(LaurentInt::zero().to_string(), "0");
        let r = &int(-3) + &LaurentInt::term(3, BigInt::from(2));
        assert_eq!(r.to_string(), "-3 + 2v^3");
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(0), int(1));
        assert_eq!(quantum_integer(1), v_plus_v_inv());
        // (v+v^-1)[v]_j - [v]_{j-1} = [v]_{j+1}
        for j in 1..6 {
            let lhs = &(&v_plus_v_inv() * &quantum_integer(j)) - &quantum_integer(j - 1);
            assert_eq!(lhs, quantum_integer(j + 1));
        }
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LaurentInt>().is_err());
        assert!("v^".parse::<LaurentInt>().is_err());
        assert!("2 x".parse::<LaurentInt>().is_err());
        assert_eq!("0".parse::<LaurentInt>().unwrap(), LaurentInt::zero());
    }

    fn laurent() -> impl Strategy<Value = LaurentInt> {
        proptest::collection::vec((-6i32..=6, -20i64..=20), 0..6).prop_map(|v| {
            LaurentInt::from_terms(v.into_iter().map(|(e, c)| (e, BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(p in laurent()) {
            let s = p.to_string();
            prop_assert_eq!(s.parse::<LaurentInt>().unwrap(), p);
        }
    }
}
