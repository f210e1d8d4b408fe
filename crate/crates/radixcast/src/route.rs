//! The three-step conversion scheme: decimal routes by repeated division
//! or weighted sum, binary grouping routes for octal and hexadecimal, the
//! binary bridge between octal and hexadecimal, and a rational fallback
//! for every other radix.

use std::fmt;

use num::integer::lcm;
use thiserror::Error;

use crate::numeral::{Digit, Numeral, Radix};
use crate::trace::{LegTrace, Trace, TraceStep};
use crate::value::{
    from_rational_traced, to_rational, to_rational_traced, CycleCapError, FractionPolicy,
};

/// Width of a binary digit group: 3 bits per octal digit, 4 per hex digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSize(u8);

impl GroupSize {
    pub const OCTAL: GroupSize = GroupSize(3);
    pub const HEXADECIMAL: GroupSize = GroupSize(4);

    pub fn new(width: u32) -> Option<GroupSize> {
        match width {
            3 => Some(GroupSize::OCTAL),
            4 => Some(GroupSize::HEXADECIMAL),
            _ => None,
        }
    }

    pub fn for_target(radix: Radix) -> Option<GroupSize> {
        match radix.value() {
            8 => Some(GroupSize::OCTAL),
            16 => Some(GroupSize::HEXADECIMAL),
            _ => None,
        }
    }

    pub fn width(self) -> usize {
        self.0 as usize
    }

    pub fn target_radix(self) -> Radix {
        match self.0 {
            3 => Radix::OCTAL,
            _ => Radix::HEXADECIMAL,
        }
    }
}

/// How one leg of a route is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Weighted sum of digit contributions into a rational, then rendered
    /// in the target radix.
    Weighted,
    /// Repeated division (integer part) and multiplication (fraction).
    Division,
    /// Replace binary digit groups by single octal/hex digits.
    Group(GroupSize),
    /// Expand each octal/hex digit to its fixed-width binary form.
    Ungroup,
    /// Source to rational to target in one hop.
    Rational,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Weighted => "weighted",
            Method::Division => "division",
            Method::Group(_) => "group",
            Method::Ungroup => "ungroup",
            Method::Rational => "rational",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub from: Radix,
    pub to: Radix,
    pub method: Method,
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {}", self.from, self.to, self.method)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RouteKind {
    Identity,
    WeightedToDecimal,
    DivisionFromDecimal,
    GroupBinaryUp,
    UngroupToBinary,
    BinaryBridge,
    RationalFallback,
}

/// A conversion path: which of the three steps applies and the legs to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub kind: RouteKind,
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("expected a binary numeral, found radix {found}")]
    NotBinary { found: Radix },
    #[error("expected an octal or hexadecimal numeral, found radix {found}")]
    NotGrouped { found: Radix },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    CycleCap(#[from] CycleCapError),
}

/// Chooses the conversion path for a radix pair.
pub fn plan_route(from: Radix, to: Radix) -> Route {
    let leg = |method| Leg { from, to, method };
    if from == to {
        return Route {
            kind: RouteKind::Identity,
            legs: Vec::new(),
        };
    }
    if to == Radix::DECIMAL {
        return Route {
            kind: RouteKind::WeightedToDecimal,
            legs: vec![leg(Method::Weighted)],
        };
    }
    if from == Radix::DECIMAL {
        return Route {
            kind: RouteKind::DivisionFromDecimal,
            legs: vec![leg(Method::Division)],
        };
    }
    if from == Radix::BINARY {
        if let Some(g) = GroupSize::for_target(to) {
            return Route {
                kind: RouteKind::GroupBinaryUp,
                legs: vec![leg(Method::Group(g))],
            };
        }
    }
    if to == Radix::BINARY && GroupSize::for_target(from).is_some() {
        return Route {
            kind: RouteKind::UngroupToBinary,
            legs: vec![leg(Method::Ungroup)],
        };
    }
    if GroupSize::for_target(from).is_some() {
        if let Some(g) = GroupSize::for_target(to) {
            return Route {
                kind: RouteKind::BinaryBridge,
                legs: vec![
                    Leg {
                        from,
                        to: Radix::BINARY,
                        method: Method::Ungroup,
                    },
                    Leg {
                        from: Radix::BINARY,
                        to,
                        method: Method::Group(g),
                    },
                ],
            };
        }
    }
    Route {
        kind: RouteKind::RationalFallback,
        legs: vec![leg(Method::Rational)],
    }
}

fn group_value(bits: &[Digit]) -> u32 {
    bits.iter().fold(0, |acc, b| (acc << 1) | b.value())
}

/// Replaces groups of 3 or 4 binary digits, measured outward from the
/// radix point, by single octal or hexadecimal digits.
pub fn group_binary(
    n: &Numeral,
    g: GroupSize,
) -> Result<(Numeral, Vec<TraceStep>), RouteError> {
    if n.radix() != Radix::BINARY {
        return Err(RouteError::NotBinary { found: n.radix() });
    }
    let w = g.width();
    let target = g.target_radix();
    let mut steps = Vec::new();

    let mut map_group = |bits: Vec<Digit>, padded: usize| -> Digit {
        let digit = Digit::new(group_value(&bits), target).unwrap();
        steps.push(TraceStep::Grouping {
            bits,
            padded,
            digit,
        });
        digit
    };

    // Integer digits: group right-to-left, pad the leftmost group.
    let int = n.int_digits();
    let pad = (w - int.len() % w) % w;
    let padded_int: Vec<Digit> = std::iter::repeat(Digit::ZERO)
        .take(pad)
        .chain(int.iter().copied())
        .collect();
    let out_int: Vec<Digit> = padded_int
        .chunks(w)
        .enumerate()
        .map(|(k, chunk)| map_group(chunk.to_vec(), if k == 0 { pad } else { 0 }))
        .collect();

    let mut frac: Vec<Digit> = n.frac_digits().to_vec();
    let out_rep = match n.repetend() {
        None => {
            // Fraction digits: group left-to-right, pad the last group.
            let pad = (w - frac.len() % w) % w;
            frac.extend(std::iter::repeat(Digit::ZERO).take(pad));
            None
        }
        Some(rep) => {
            // Align the repetend start to a group boundary by borrowing
            // digits from the cycle, then unroll to lcm(period, w) so the
            // unrolled block maps to whole target digits.
            let mut rep: Vec<Digit> = rep.to_vec();
            let shift = (w - frac.len() % w) % w;
            for _ in 0..shift {
                frac.push(rep[0]);
                rep.rotate_left(1);
            }
            let unrolled_len = lcm(rep.len(), w);
            let unrolled: Vec<Digit> = rep.iter().copied().cycle().take(unrolled_len).collect();
            Some(unrolled)
        }
    };
    let frac_groups = frac.len() / w;
    let out_frac: Vec<Digit> = frac
        .chunks(w)
        .enumerate()
        .map(|(k, chunk)| {
            let padded = if n.repetend().is_none() && k + 1 == frac_groups {
                n.frac_digits().len() % w
            } else {
                0
            };
            let padded = if padded == 0 { 0 } else { w - padded };
            map_group(chunk.to_vec(), padded)
        })
        .collect();
    let out_rep: Option<Vec<Digit>> =
        out_rep.map(|bits| bits.chunks(w).map(|c| map_group(c.to_vec(), 0)).collect());

    let out = Numeral::from_parts(n.sign(), target, out_int, out_frac, out_rep);
    debug_assert_eq!(to_rational(&out), to_rational(n));
    Ok((out, steps))
}

/// Expands each octal or hexadecimal digit to its fixed-width binary form.
pub fn ungroup_binary(n: &Numeral) -> Result<(Numeral, Vec<TraceStep>), RouteError> {
    let g = GroupSize::for_target(n.radix()).ok_or(RouteError::NotGrouped { found: n.radix() })?;
    let w = g.width();
    let mut steps = Vec::new();

    let mut expand = |digits: &[Digit]| -> Vec<Digit> {
        let mut bits = Vec::with_capacity(digits.len() * w);
        for &d in digits {
            let group: Vec<Digit> = (0..w)
                .map(|j| Digit::new_unchecked((d.value() >> (w - 1 - j)) & 1))
                .collect();
            steps.push(TraceStep::Grouping {
                bits: group.clone(),
                padded: 0,
                digit: d,
            });
            bits.extend(group);
        }
        bits
    };

    let int = expand(n.int_digits());
    let frac = expand(n.frac_digits());
    let rep = n.repetend().map(&mut expand);

    let out = Numeral::from_parts(n.sign(), Radix::BINARY, int, frac, rep);
    debug_assert_eq!(to_rational(&out), to_rational(n));
    Ok((out, steps))
}

/// Converts a numeral to the target radix along the planned route.
pub fn convert(
    n: &Numeral,
    to: Radix,
    policy: FractionPolicy,
) -> Result<(Numeral, Route, Trace), ConvertError> {
    let route = plan_route(n.radix(), to);
    let mut current = n.clone();
    let mut legs = Vec::with_capacity(route.legs.len());
    for &leg in &route.legs {
        let (next, steps) = match leg.method {
            Method::Group(g) => group_binary(&current, g)?,
            Method::Ungroup => ungroup_binary(&current)?,
            Method::Weighted | Method::Rational => {
                let (v, mut steps) = to_rational_traced(&current);
                let (out, render_steps) = from_rational_traced(&v, leg.to, policy)?;
                steps.extend(render_steps);
                (out, steps)
            }
            Method::Division => {
                let v = to_rational(&current);
                from_rational_traced(&v, leg.to, policy)?
            }
        };
        legs.push(LegTrace { leg, steps });
        current = next;
    }
    let trace = Trace {
        route: route.clone(),
        legs,
    };
    Ok((current, route, trace))
}
