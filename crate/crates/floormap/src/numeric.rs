//! Exact scalar arithmetic: arbitrary-precision rationals, integers extended
//! with the two infinities, and the parameter classification the rest of the
//! crate keys its case analysis on.
//!
//! Everything here is exact — no floats anywhere. A parameter `lambda` and a
//! starting coordinate are rationals; one application of the scalar map
//! `x -> floor(lambda * x)` lands on the integers and stays there.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exact signed fraction. Backed by [`num::BigRational`], which maintains the
/// canonical form this crate relies on: always reduced, denominator positive.
pub type Rational = BigRational;

/// An integer extended with `-inf` and `+inf`.
///
/// The derived order is the intended one: `MinusInf < Finite(a) < PlusInf`,
/// finite values ordered by value. Keep the variants in this order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    MinusInf,
    Finite(BigInt),
    PlusInf,
}

impl ExtInt {
    pub fn finite(n: impl Into<BigInt>) -> Self {
        ExtInt::Finite(n.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Finite(n.into())
    }
}

impl From<i32> for ExtInt {
    fn from(n: i32) -> Self {
        ExtInt::Finite(n.into())
    }
}

impl From<BigInt> for ExtInt {
    fn from(n: BigInt) -> Self {
        ExtInt::Finite(n)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::MinusInf => f.write_str("-inf"),
            ExtInt::Finite(n) => write!(f, "{n}"),
            ExtInt::PlusInf => f.write_str("+inf"),
        }
    }
}

/// Parameter regime of `lambda`. The sign and steepness of the parameter
/// decide the long-run behaviour of every orbit, so the whole crate branches
/// on this value.
///
/// The two open regimes between the integer parameters carry an index `m`:
///
/// * `PosShallow(m)`: `0 < lambda < 1` with `(m-1)/m < lambda <= m/(m+1)`.
///   The scalar map then fixes exactly `{0, -1, ..., -m}`.
/// * `PosSteep(m)`: `lambda > 1` with `(m+1)/m <= lambda < m/(m-1)`
///   (unbounded above when `m = 1`). The scalar map then fixes exactly
///   `{0, 1, ..., m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParamClass {
    /// `lambda < -1`
    NegSteep,
    /// `lambda = -1`
    NegOne,
    /// `-1 < lambda < 0`
    NegShallow,
    /// `lambda = 0`
    Zero,
    /// `0 < lambda < 1`, with ladder index `m >= 1`
    PosShallow(BigInt),
    /// `lambda = 1`
    One,
    /// `lambda > 1`, with ladder index `m >= 1`
    PosSteep(BigInt),
}

impl fmt::Display for ParamClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamClass::NegSteep => f.write_str("lambda < -1"),
            ParamClass::NegOne => f.write_str("lambda = -1"),
            ParamClass::NegShallow => f.write_str("-1 < lambda < 0"),
            ParamClass::Zero => f.write_str("lambda = 0"),
            ParamClass::PosShallow(m) => write!(f, "0 < lambda < 1 (m = {m})"),
            ParamClass::One => f.write_str("lambda = 1"),
            ParamClass::PosSteep(m) => write!(f, "lambda > 1 (m = {m})"),
        }
    }
}

/// `floor(lambda * x)`, computed exactly. This is the scalar map that every
/// orbit in the crate iterates.
pub fn floor_scale(lambda: &Rational, x: &Rational) -> BigInt {
    // floor(p/q * a/b) = (p*a) div_floor (q*b); both denominators are positive,
    // so no sign fixups are needed beyond what div_floor already does.
    (lambda.numer() * x.numer()).div_floor(&(lambda.denom() * x.denom()))
}

/// `floor(lambda * n)` for integer `n` — the hot path once an orbit has
/// reached the lattice (after one step it always has).
pub fn floor_scale_int(lambda: &Rational, n: &BigInt) -> BigInt {
    (lambda.numer() * n).div_floor(lambda.denom())
}

/// Classifies `lambda` into its parameter regime.
///
/// The ladder index for the two open positive regimes has a closed form:
/// `m = ceil(1/(1-lambda)) - 1` below 1 and `m = ceil(1/(lambda-1))` above.
/// Both are checked against the defining bracket inequalities on every call
/// in debug builds (and against a linear scan in the tests).
pub fn classify_lambda(lambda: &Rational) -> ParamClass {
    if lambda.is_zero() {
        return ParamClass::Zero;
    }
    if lambda.is_one() {
        return ParamClass::One;
    }
    if lambda.is_negative() {
        let minus_one = -Rational::one();
        return if *lambda == minus_one {
            ParamClass::NegOne
        } else if *lambda < minus_one {
            ParamClass::NegSteep
        } else {
            ParamClass::NegShallow
        };
    }
    let (p, q) = (lambda.numer(), lambda.denom());
    if *lambda < Rational::one() {
        // (m-1)/m < lambda <= m/(m+1)  <=>  m + 1 = ceil(1 / (1 - lambda))
        let m = q.div_ceil(&(q - p)) - BigInt::one();
        debug_assert!(pos_shallow_bracket(lambda, &m));
        ParamClass::PosShallow(m)
    } else {
        // (m+1)/m <= lambda < m/(m-1)  <=>  m = ceil(1 / (lambda - 1))
        let m = q.div_ceil(&(p - q));
        debug_assert!(pos_steep_bracket(lambda, &m));
        ParamClass::PosSteep(m)
    }
}

/// `(m-1)/m < lambda <= m/(m+1)`, evaluated without constructing rationals.
pub(crate) fn pos_shallow_bracket(lambda: &Rational, m: &BigInt) -> bool {
    let (p, q) = (lambda.numer(), lambda.denom());
    if !m.is_positive() {
        return false;
    }
    (m - 1u8) * q < p * m && p * (m + 1u8) <= q * m
}

/// `(m+1)/m <= lambda`, and `lambda < m/(m-1)` when `m > 1`.
pub(crate) fn pos_steep_bracket(lambda: &Rational, m: &BigInt) -> bool {
    let (p, q) = (lambda.numer(), lambda.denom());
    if !m.is_positive() {
        return false;
    }
    (m + 1u8) * q <= p * m && (m.is_one() || p * (m - 1u8) < q * m)
}

/// Why a piece of text failed to parse as a rational. Positions are byte
/// offsets into the original input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {found:?} at position {position}")]
    UnexpectedChar { found: char, position: usize },
    #[error("expected digits at position {position}")]
    MissingDigits { position: usize },
    #[error("denominator is zero at position {position}")]
    ZeroDenominator { position: usize },
}

/// Parses `"p/q"`, a plain integer, or a finite decimal into an exact
/// [`Rational`]. Surrounding whitespace is ignored; an optional leading sign
/// applies to the whole value. `"7.3"` becomes `73/10`, `"-1/2"` stays
/// `-1/2`, and `"3/0"` is rejected.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0;
    let mut end = chars.len();
    while i < end && chars[i].1.is_whitespace() {
        i += 1;
    }
    while end > i && chars[end - 1].1.is_whitespace() {
        end -= 1;
    }
    if i == end {
        return Err(ParseRationalError::Empty);
    }

    let byte_pos = |idx: usize| {
        if idx < end {
            chars[idx].0
        } else {
            // one past the last significant character
            chars[end - 1].0 + chars[end - 1].1.len_utf8()
        }
    };

    let mut negative = false;
    if chars[i].1 == '+' || chars[i].1 == '-' {
        negative = chars[i].1 == '-';
        i += 1;
    }

    let take_digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < end && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().map(|&(_, c)| c).collect()
    };

    let int_digits = take_digits(&mut i);

    let value = if i < end && chars[i].1 == '/' {
        if int_digits.is_empty() {
            return Err(ParseRationalError::MissingDigits { position: byte_pos(i) });
        }
        i += 1; // consume '/'
        let den_pos = byte_pos(i);
        let den_digits = take_digits(&mut i);
        if den_digits.is_empty() {
            return Err(ParseRationalError::MissingDigits { position: den_pos });
        }
        let numer: BigInt = int_digits.parse().expect("digit string");
        let denom: BigInt = den_digits.parse().expect("digit string");
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator { position: den_pos });
        }
        Rational::new(numer, denom)
    } else if i < end && chars[i].1 == '.' {
        let dot_pos = byte_pos(i);
        i += 1; // consume '.'
        let frac_digits = take_digits(&mut i);
        if int_digits.is_empty() && frac_digits.is_empty() {
            return Err(ParseRationalError::MissingDigits { position: dot_pos });
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().expect("digit string")
        };
        let frac: BigInt = if frac_digits.is_empty() {
            BigInt::zero()
        } else {
            frac_digits.parse().expect("digit string")
        };
        let scale = BigInt::from(10u8).pow(frac_digits.len() as u32);
        Rational::new(whole * &scale + frac, scale)
    } else {
        if int_digits.is_empty() {
            return Err(ParseRationalError::MissingDigits { position: byte_pos(i) });
        }
        Rational::from_integer(int_digits.parse().expect("digit string"))
    };

    if i < end {
        return Err(ParseRationalError::UnexpectedChar {
            found: chars[i].1,
            position: byte_pos(i),
        });
    }

    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn floor_scale_matches_worked_values() {
        assert_eq!(floor_scale(&rat(3, 4), &int(-10)), BigInt::from(-8));
        assert_eq!(floor_scale(&int(-1), &rat(5, 2)), BigInt::from(-3));
        assert_eq!(floor_scale(&rat(3, 4), &int(-3)), BigInt::from(-3));
        assert_eq!(floor_scale(&rat(-1, 2), &rat(73, 10)), BigInt::from(-4));
        assert_eq!(floor_scale(&int(-1), &int(-3)), BigInt::from(3));
        assert_eq!(floor_scale(&rat(1, 2), &int(-1)), BigInt::from(-1));
    }

    #[test]
    fn floor_scale_int_agrees_with_rational_path() {
        for lam in [rat(-5, 2), int(-1), rat(-1, 3), int(0), rat(3, 4), int(2)] {
            for n in -20i64..=20 {
                assert_eq!(
                    floor_scale_int(&lam, &BigInt::from(n)),
                    floor_scale(&lam, &int(n)),
                    "lambda = {lam}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn classify_hits_all_regimes() {
        assert_eq!(classify_lambda(&int(-3)), ParamClass::NegSteep);
        assert_eq!(classify_lambda(&int(-1)), ParamClass::NegOne);
        assert_eq!(classify_lambda(&rat(-1, 2)), ParamClass::NegShallow);
        assert_eq!(classify_lambda(&int(0)), ParamClass::Zero);
        assert_eq!(classify_lambda(&rat(3, 4)), ParamClass::PosShallow(3.into()));
        assert_eq!(classify_lambda(&int(1)), ParamClass::One);
        assert_eq!(classify_lambda(&rat(5, 4)), ParamClass::PosSteep(4.into()));
        assert_eq!(classify_lambda(&int(2)), ParamClass::PosSteep(1.into()));
    }

    #[test]
    fn classify_boundary_parameters() {
        // Upper endpoints of the shallow brackets are included: m/(m+1).
        assert_eq!(classify_lambda(&rat(1, 2)), ParamClass::PosShallow(1.into()));
        assert_eq!(classify_lambda(&rat(2, 3)), ParamClass::PosShallow(2.into()));
        // Lower endpoints of the steep brackets are included: (m+1)/m.
        assert_eq!(classify_lambda(&rat(3, 2)), ParamClass::PosSteep(2.into()));
        assert_eq!(classify_lambda(&int(3)), ParamClass::PosSteep(1.into()));
    }

    /// Linear-scan oracle for the ladder index: try m = 1, 2, 3, ... until the
    /// defining bracket holds. Terminates because the brackets tile (0,1) and
    /// (1,oo) respectively.
    fn scan_index(lambda: &Rational, steep: bool) -> BigInt {
        let mut m = BigInt::one();
        loop {
            let hit = if steep {
                pos_steep_bracket(lambda, &m)
            } else {
                pos_shallow_bracket(lambda, &m)
            };
            if hit {
                return m;
            }
            m += 1u8;
        }
    }

    #[test]
    fn closed_form_index_matches_scan_on_a_dense_grid() {
        // Every reduced fraction p/q with q <= 40 on both sides of 1.
        for q in 1i64..=40 {
            for p in 1..=(4 * q) {
                if num::integer::gcd(p, q) != 1 || p == q {
                    continue;
                }
                let lam = rat(p, q);
                let expected = scan_index(&lam, p > q);
                match classify_lambda(&lam) {
                    ParamClass::PosShallow(m) | ParamClass::PosSteep(m) => {
                        assert_eq!(m, expected, "lambda = {p}/{q}")
                    }
                    other => panic!("lambda = {p}/{q} classified as {other:?}"),
                }
            }
        }
    }

    #[test]
    fn parse_accepts_the_three_forms() {
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7.3").unwrap(), rat(73, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("42").unwrap(), int(42));
        assert_eq!(parse_rational("+5/10").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("  3/4 ").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0").unwrap(), int(0));
    }

    #[test]
    fn parse_rejects_malformed_input_with_positions() {
        assert_eq!(
            parse_rational("3/0"),
            Err(ParseRationalError::ZeroDenominator { position: 2 })
        );
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert_eq!(parse_rational("   "), Err(ParseRationalError::Empty));
        assert_eq!(
            parse_rational("-"),
            Err(ParseRationalError::MissingDigits { position: 1 })
        );
        assert_eq!(
            parse_rational("1/2/3"),
            Err(ParseRationalError::UnexpectedChar { found: '/', position: 3 })
        );
        assert_eq!(
            parse_rational("1e5"),
            Err(ParseRationalError::UnexpectedChar { found: 'e', position: 1 })
        );
        assert_eq!(
            parse_rational("/3"),
            Err(ParseRationalError::MissingDigits { position: 0 })
        );
        assert_eq!(
            parse_rational("2/"),
            Err(ParseRationalError::MissingDigits { position: 2 })
        );
    }

    #[test]
    fn ext_int_orders_and_displays() {
        let neg = ExtInt::MinusInf;
        let pos = ExtInt::PlusInf;
        let a = ExtInt::finite(-3);
        let b = ExtInt::finite(7);
        assert!(neg < a && a < b && b < pos);
        assert_eq!(neg.to_string(), "-inf");
        assert_eq!(pos.to_string(), "+inf");
        assert_eq!(a.to_string(), "-3");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        /// Defining property of the floor: n <= lambda*x < n+1.
        #[test]
        fn floor_scale_brackets_the_product(lam in arb_rational(), x in arb_rational()) {
            let n = floor_scale(&lam, &x);
            let product = &lam * &x;
            let lo = Rational::from_integer(n.clone());
            prop_assert!(lo <= product && product < lo + Rational::one());
        }

        /// The seven regimes partition the rationals: exactly one matches, and
        /// the positive ones carry an index satisfying its bracket.
        #[test]
        fn classification_is_consistent(lam in arb_rational()) {
            match classify_lambda(&lam) {
                ParamClass::Zero => prop_assert!(lam.is_zero()),
                ParamClass::One => prop_assert!(lam.is_one()),
                ParamClass::NegOne => prop_assert_eq!(lam, -Rational::one()),
                ParamClass::NegSteep => prop_assert!(lam < -Rational::one()),
                ParamClass::NegShallow => {
                    prop_assert!(lam.is_negative() && lam > -Rational::one())
                }
                ParamClass::PosShallow(m) => prop_assert!(pos_shallow_bracket(&lam, &m)),
                ParamClass::PosSteep(m) => prop_assert!(pos_steep_bracket(&lam, &m)),
            }
        }

        /// Anything the printer emits must round-trip through the parser.
        #[test]
        fn display_round_trips_through_parse(x in arb_rational()) {
            prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
        }
    }
}
