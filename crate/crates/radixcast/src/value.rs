//! Exact rational semantics: weighted-sum evaluation of numerals and digit
//! extraction by repeated division (integers) and repeated multiplication
//! (fractions), with cycle detection for repetends.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numeral::{Digit, Numeral, Radix, Sign};
use crate::trace::TraceStep;

/// An exact rational value in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Rational {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(numer: i64, denom: i64) -> Rational {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Splits a non-negative rational into whole part and fractional rest.
    pub(crate) fn split_nonneg(&self) -> (BigInt, Rational) {
        debug_assert!(!self.is_negative());
        let (q, r) = self.numer().div_rem(self.denom());
        (q, Rational::new(r, self.denom().clone()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

pub const DEFAULT_CYCLE_CAP: usize = 4096;

/// How non-terminating fractions are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionPolicy {
    /// Detect the repetend exactly; error out past `cycle_cap` emitted
    /// digits (pre-period plus period).
    Exact { cycle_cap: usize },
    /// Emit exactly `max_digits` digits with plain truncation, no rounding.
    Truncate { max_digits: usize },
}

impl FractionPolicy {
    pub fn exact() -> FractionPolicy {
        FractionPolicy::Exact {
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }

    pub fn exact_with_cap(cycle_cap: usize) -> FractionPolicy {
        assert!(cycle_cap >= 1);
        FractionPolicy::Exact { cycle_cap }
    }

    pub fn truncate(max_digits: usize) -> FractionPolicy {
        assert!(max_digits >= 1);
        FractionPolicy::Truncate { max_digits }
    }
}

impl Default for FractionPolicy {
    fn default() -> FractionPolicy {
        FractionPolicy::exact()
    }
}

/// Fraction digits produced by [`frac_to_digits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracExpansion {
    /// Finite pre-period digits.
    pub digits: Vec<Digit>,
    /// Primitive repeating block, if the expansion does not terminate.
    pub repetend: Option<Vec<Digit>>,
    /// True when truncation cut off a nonzero remainder.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fraction expansion exceeded the cycle cap of {cap} digits")]
pub struct CycleCapError {
    pub cap: usize,
    /// Digits emitted before giving up.
    pub partial: Vec<Digit>,
}

/// Value of `radix^index` as an exact rational.
pub fn weight(radix: Radix, index: i32) -> Rational {
    let b = BigInt::from(radix.value());
    if index >= 0 {
        Rational::new(b.pow(index as u32), BigInt::one())
    } else {
        Rational::new(BigInt::one(), b.pow(index.unsigned_abs()))
    }
}

fn horner(digits: &[Digit], base: &BigInt) -> BigInt {
    digits
        .iter()
        .fold(BigInt::zero(), |acc, d| acc * base + d.value())
}

/// Evaluates a canonical numeral to its exact rational value.
pub fn to_rational(n: &Numeral) -> Rational {
    let b = BigInt::from(n.radix().value());
    let int_val = horner(n.int_digits(), &b);
    let p = n.frac_digits().len() as u32;
    let scale = b.pow(p);
    let frac_val = horner(n.frac_digits(), &b);

    let value = match n.repetend() {
        None => {
            Rational::new(int_val * &scale + frac_val, scale)
        }
        Some(rep) => {
            // repetend v over q digits after p finite digits contributes
            // v / (B^p (B^q - 1))
            let q = rep.len() as u32;
            let rep_val = horner(rep, &b);
            let cycle = b.pow(q) - BigInt::one();
            let denom = &scale * &cycle;
            Rational::new((int_val * scale + frac_val) * &cycle + rep_val, denom)
        }
    };
    if n.sign().is_negative() {
        -value
    } else {
        value
    }
}

/// Weighted-sum evaluation with one `Weight` step per digit. Repetend
/// digits get the closed-form weight of their whole geometric series, so
/// the step contributions still sum to the numeral's absolute value.
pub fn to_rational_traced(n: &Numeral) -> (Rational, Vec<TraceStep>) {
    let r = n.radix();
    let mut steps = Vec::new();
    let mut total = Rational::zero();

    let int_len = n.int_digits().len() as i32;
    for (k, &d) in n.int_digits().iter().enumerate() {
        let position = int_len - 1 - k as i32;
        push_weight(&mut steps, position, weight(r, position), d, &mut total);
    }
    for (k, &d) in n.frac_digits().iter().enumerate() {
        let position = -(k as i32) - 1;
        push_weight(&mut steps, position, weight(r, position), d, &mut total);
    }
    if let Some(rep) = n.repetend() {
        let p = n.frac_digits().len() as i32;
        let q = rep.len() as u32;
        let b = BigInt::from(r.value());
        let cycle_factor = Rational::new(b.pow(q), b.pow(q) - BigInt::one());
        for (j, &d) in rep.iter().enumerate() {
            let position = -(p + j as i32) - 1;
            let w = &weight(r, position) * &cycle_factor;
            push_weight(&mut steps, position, w, d, &mut total);
        }
    }

    let value = if n.sign().is_negative() { -total } else { total };
    (value, steps)
}

fn push_weight(
    steps: &mut Vec<TraceStep>,
    position: i32,
    w: Rational,
    d: Digit,
    total: &mut Rational,
) {
    let contribution = &w * &Rational::from_integer(d.value());
    *total = &*total + &contribution;
    steps.push(TraceStep::Weight {
        position,
        weight: w,
        digit: d,
        contribution,
        crossed_out: d.is_zero(),
    });
}

/// Digits of a non-negative integer by repeated division, MSD first.
pub fn int_to_digits(v: &BigInt, r: Radix) -> Vec<Digit> {
    int_digits_impl(v, r, None)
}

/// Same as [`int_to_digits`], recording one `Division` step per division.
pub fn int_to_digits_traced(v: &BigInt, r: Radix) -> (Vec<Digit>, Vec<TraceStep>) {
    let mut steps = Vec::new();
    let digits = int_digits_impl(v, r, Some(&mut steps));
    (digits, steps)
}

fn int_digits_impl(v: &BigInt, r: Radix, mut trace: Option<&mut Vec<TraceStep>>) -> Vec<Digit> {
    assert!(!v.is_negative(), "int_to_digits needs a non-negative value");
    let divisor = BigInt::from(r.value());
    let mut digits = Vec::new();
    let mut dividend = v.clone();
    loop {
        let (quotient, remainder) = dividend.div_rem(&divisor);
        digits.push(Digit::new_unchecked(remainder.to_u32().unwrap()));
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(TraceStep::Division {
                dividend: dividend.clone(),
                divisor: divisor.clone(),
                quotient: quotient.clone(),
                remainder,
            });
        }
        dividend = quotient;
        if dividend.is_zero() {
            break;
        }
    }
    digits.reverse();
    digits
}

/// Fraction digits of `0 <= f < 1` by repeated multiplication.
pub fn frac_to_digits(
    f: &Rational,
    r: Radix,
    policy: FractionPolicy,
) -> Result<FracExpansion, CycleCapError> {
    frac_digits_impl(f, r, policy, None)
}

/// Same as [`frac_to_digits`], recording one `Multiplication` step per
/// emitted digit.
pub fn frac_to_digits_traced(
    f: &Rational,
    r: Radix,
    policy: FractionPolicy,
) -> Result<(FracExpansion, Vec<TraceStep>), CycleCapError> {
    let mut steps = Vec::new();
    let exp = frac_digits_impl(f, r, policy, Some(&mut steps))?;
    Ok((exp, steps))
}

fn frac_digits_impl(
    f: &Rational,
    r: Radix,
    policy: FractionPolicy,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> Result<FracExpansion, CycleCapError> {
    assert!(
        !f.is_negative() && f < &Rational::one(),
        "frac_to_digits needs 0 <= f < 1"
    );
    if f.is_zero() {
        return Ok(FracExpansion {
            digits: Vec::new(),
            repetend: None,
            truncated: false,
        });
    }

    let radix = BigInt::from(r.value());
    let denom = f.denom().clone();

    let emit = |rem: &BigInt, trace: &mut Option<&mut Vec<TraceStep>>| -> (BigInt, Digit) {
        let product = rem * &radix;
        let (digit_val, next) = product.div_rem(&denom);
        let digit = Digit::new_unchecked(digit_val.to_u32().unwrap());
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(TraceStep::Multiplication {
                fraction_in: Rational::new(rem.clone(), denom.clone()),
                product: Rational::new(product, denom.clone()),
                digit,
            });
        }
        (next, digit)
    };

    match policy {
        FractionPolicy::Truncate { max_digits } => {
            assert!(max_digits >= 1);
            let mut digits = Vec::with_capacity(max_digits);
            let mut rem = f.numer().clone();
            for _ in 0..max_digits {
                if rem.is_zero() {
                    break;
                }
                let (next, d) = emit(&rem, &mut trace);
                digits.push(d);
                rem = next;
            }
            Ok(FracExpansion {
                digits,
                repetend: None,
                truncated: !rem.is_zero(),
            })
        }
        FractionPolicy::Exact { cycle_cap } => {
            assert!(cycle_cap >= 1);
            if trace.is_none() {
                if let Some(fast) = frac_digits_u64(f, r, cycle_cap) {
                    return fast;
                }
            }
            let mut digits: Vec<Digit> = Vec::new();
            let mut seen: HashMap<BigInt, usize> = HashMap::new();
            let mut rem = f.numer().clone();
            loop {
                if rem.is_zero() {
                    return Ok(FracExpansion {
                        digits,
                        repetend: None,
                        truncated: false,
                    });
                }
                if let Some(&start) = seen.get(&rem) {
                    let repetend = digits.split_off(start);
                    return Ok(FracExpansion {
                        digits,
                        repetend: Some(repetend),
                        truncated: false,
                    });
                }
                if digits.len() >= cycle_cap {
                    return Err(CycleCapError {
                        cap: cycle_cap,
                        partial: digits,
                    });
                }
                seen.insert(rem.clone(), digits.len());
                let (next, d) = emit(&rem, &mut trace);
                digits.push(d);
                rem = next;
            }
        }
    }
}

/// Machine-word path for exact expansion; bit-identical to the `BigInt`
/// loop above. Remainders are bounded by the denominator, so a flat table
/// of first-seen positions replaces the hash map.
fn frac_digits_u64(
    f: &Rational,
    r: Radix,
    cycle_cap: usize,
) -> Option<Result<FracExpansion, CycleCapError>> {
    const MAX_DENOM: u64 = 1 << 22;
    let denom = f.denom().to_u64().filter(|&d| d <= MAX_DENOM)?;
    let numer = f.numer().to_u64()?;
    let radix = r.value() as u64;

    let mut seen = vec![u32::MAX; denom as usize];
    let mut digits: Vec<Digit> = Vec::new();
    let mut rem = numer;
    loop {
        if rem == 0 {
            return Some(Ok(FracExpansion {
                digits,
                repetend: None,
                truncated: false,
            }));
        }
        let start = seen[rem as usize];
        if start != u32::MAX {
            let repetend = digits.split_off(start as usize);
            return Some(Ok(FracExpansion {
                digits,
                repetend: Some(repetend),
                truncated: false,
            }));
        }
        if digits.len() >= cycle_cap {
            return Some(Err(CycleCapError {
                cap: cycle_cap,
                partial: digits,
            }));
        }
        seen[rem as usize] = digits.len() as u32;
        let product = rem * radix;
        digits.push(Digit::new_unchecked((product / denom) as u32));
        rem = product % denom;
    }
}

/// Renders an exact rational as a canonical numeral in radix `r`.
pub fn from_rational(
    v: &Rational,
    r: Radix,
    policy: FractionPolicy,
) -> Result<Numeral, CycleCapError> {
    from_rational_impl(v, r, policy, None)
}

/// Same as [`from_rational`], returning the division and multiplication
/// ladder that produced the digits.
pub fn from_rational_traced(
    v: &Rational,
    r: Radix,
    policy: FractionPolicy,
) -> Result<(Numeral, Vec<TraceStep>), CycleCapError> {
    let mut steps = Vec::new();
    let n = from_rational_impl(v, r, policy, Some(&mut steps))?;
    Ok((n, steps))
}

fn from_rational_impl(
    v: &Rational,
    r: Radix,
    policy: FractionPolicy,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> Result<Numeral, CycleCapError> {
    let sign = if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Positive
    };
    let magnitude = v.abs();
    let (whole, frac) = magnitude.split_nonneg();

    let int_digits = int_digits_impl(&whole, r, trace.as_deref_mut());
    let expansion = frac_digits_impl(&frac, r, policy, trace.as_deref_mut())?;

    Ok(Numeral::from_parts(
        sign,
        r,
        int_digits,
        expansion.digits,
        expansion.repetend,
    ))
}
