//! Property tests over the public surface: parser round-trips,
//! canonicalization, exact value preservation, grouping laws, and trace
//! replay.

use num::{BigInt, Integer};
use proptest::prelude::*;

use radixcast::numeral::{FormatStyle, Numeral, Radix, Sign};
use radixcast::route::{convert, group_binary, ungroup_binary, ConvertError, GroupSize, Method};
use radixcast::trace::TraceStep;
use radixcast::value::{
    frac_to_digits, from_rational, to_rational, weight, FractionPolicy, Rational,
};

fn quartet() -> impl Strategy<Value = Radix> {
    prop_oneof![Just(2u32), Just(8), Just(10), Just(16)].prop_map(|v| Radix::new(v).unwrap())
}

fn any_radix() -> impl Strategy<Value = Radix> {
    (2u32..=36).prop_map(|v| Radix::new(v).unwrap())
}

fn arb_numeral(radix: impl Strategy<Value = Radix>) -> impl Strategy<Value = Numeral> {
    radix.prop_flat_map(|r| {
        let v = r.value();
        (
            any::<bool>(),
            prop::collection::vec(0..v, 0..8),
            prop::collection::vec(0..v, 0..6),
            prop::option::of(prop::collection::vec(0..v, 1..5)),
        )
            .prop_map(move |(neg, int, frac, rep)| {
                let sign = if neg { Sign::Negative } else { Sign::Positive };
                Numeral::new(sign, r, &int, &frac, rep.as_deref()).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn parse_format_round_trip(n in arb_numeral(any_radix())) {
        let text = n.format(FormatStyle::Tagged);
        prop_assert_eq!(Numeral::parse(&text).unwrap(), n);
    }

    /// Non-canonical spellings parse to the same numeral as the canonical
    /// spelling.
    #[test]
    fn canonicalization_idempotence(
        n in arb_numeral(any_radix()),
        lead in 0usize..3,
        trail in 0usize..3,
        double_rep in any::<bool>(),
    ) {
        let canonical = n.format(FormatStyle::Tagged);
        // rebuild a noisy spelling around the canonical digit runs
        let mut int: String = "0".repeat(lead);
        for d in n.int_digits() { int.push(d.glyph()); }
        let mut frac = String::new();
        for d in n.frac_digits() { frac.push(d.glyph()); }
        let mut noisy = String::new();
        if n.sign() == Sign::Negative { noisy.push('-'); }
        noisy.push_str(&int);
        match n.repetend() {
            Some(rep) => {
                let mut cycle = String::new();
                for d in rep { cycle.push(d.glyph()); }
                if double_rep { cycle = cycle.repeat(2); }
                noisy.push('.');
                noisy.push_str(&frac);
                noisy.push('(');
                noisy.push_str(&cycle);
                noisy.push(')');
            }
            None => {
                noisy.push('.');
                noisy.push_str(&frac);
                noisy.push_str(&"0".repeat(trail));
            }
        }
        noisy.push('_');
        noisy.push_str(&n.radix().value().to_string());
        prop_assert_eq!(
            Numeral::parse(&noisy).unwrap(),
            Numeral::parse(&canonical).unwrap()
        );
    }

    #[test]
    fn digit_bound_after_parse(n in arb_numeral(any_radix())) {
        let parsed = Numeral::parse(&n.format(FormatStyle::Tagged)).unwrap();
        let r = parsed.radix().value();
        let all = parsed
            .int_digits()
            .iter()
            .chain(parsed.frac_digits())
            .chain(parsed.repetend().into_iter().flatten());
        for d in all {
            prop_assert!(d.value() < r);
        }
    }

    /// Incrementing the MSD moves the value strictly more than
    /// incrementing the LSD, whenever the positions differ and both
    /// increments are legal.
    #[test]
    fn msd_dominance(n in arb_numeral(any_radix())) {
        let r = n.radix();
        prop_assume!(n.repetend().is_none() && !n.is_zero());
        let int_only_zero = n.int_digits().len() == 1 && n.int_digits()[0].is_zero();
        let msd_pos = if int_only_zero {
            -1
        } else {
            n.int_digits().len() as i32 - 1
        };
        let lsd_pos = if n.frac_digits().is_empty() {
            0
        } else {
            -(n.frac_digits().len() as i32)
        };
        prop_assume!(msd_pos != lsd_pos);
        prop_assume!(n.msd().value() + 1 < r.value() && n.lsd().value() + 1 < r.value());

        let bump = |int_digit: Option<usize>, frac_digit: Option<usize>| {
            let mut int: Vec<u32> = n.int_digits().iter().map(|d| d.value()).collect();
            let mut frac: Vec<u32> = n.frac_digits().iter().map(|d| d.value()).collect();
            if let Some(i) = int_digit { int[i] += 1; }
            if let Some(i) = frac_digit { frac[i] += 1; }
            to_rational(&Numeral::new(Sign::Positive, r, &int, &frac, None).unwrap())
        };
        let base = bump(None, None);
        let msd_bumped = if int_only_zero { bump(None, Some(0)) } else { bump(Some(0), None) };
        let lsd_bumped = if n.frac_digits().is_empty() {
            bump(Some(n.int_digits().len() - 1), None)
        } else {
            bump(None, Some(n.frac_digits().len() - 1))
        };
        let msd_delta = &msd_bumped - &base;
        let lsd_delta = &lsd_bumped - &base;
        prop_assert!(msd_delta > lsd_delta);
    }

    /// Truncation yields exactly the first k digits of the exact
    /// expansion.
    #[test]
    fn truncation_prefix(
        numer in 0i64..5000,
        denom in 1i64..=5000,
        k in 1usize..40,
        r in quartet(),
    ) {
        let f = Rational::ratio(numer % denom, denom);
        let exact = frac_to_digits(&f, r, FractionPolicy::exact_with_cap(20_000)).unwrap();
        let truncated = frac_to_digits(&f, r, FractionPolicy::truncate(k)).unwrap();

        let mut unrolled = exact.digits.clone();
        if let Some(rep) = &exact.repetend {
            while unrolled.len() < k {
                unrolled.extend(rep.iter().copied());
            }
        }
        unrolled.truncate(k);
        prop_assert_eq!(&truncated.digits, &unrolled);
        let cut_short = exact.repetend.is_some() || exact.digits.len() > k;
        prop_assert_eq!(truncated.truncated, cut_short);
    }

    /// Grouping preserves the exact value, repetends included.
    #[test]
    fn grouping_value_preservation(n in arb_numeral(Just(Radix::BINARY))) {
        for g in [GroupSize::OCTAL, GroupSize::HEXADECIMAL] {
            let (grouped, _) = group_binary(&n, g).unwrap();
            prop_assert_eq!(to_rational(&grouped), to_rational(&n));
        }
    }

    /// Ungrouping then regrouping is the identity on canonical numerals,
    /// in both directions.
    #[test]
    fn grouping_involution(
        bin in arb_numeral(Just(Radix::BINARY)),
        packed in arb_numeral(prop_oneof![Just(Radix::OCTAL), Just(Radix::HEXADECIMAL)]),
    ) {
        for g in [GroupSize::OCTAL, GroupSize::HEXADECIMAL] {
            let (grouped, _) = group_binary(&bin, g).unwrap();
            let (back, _) = ungroup_binary(&grouped).unwrap();
            prop_assert_eq!(back, bin.clone());
        }
        let g = GroupSize::for_target(packed.radix()).unwrap();
        let (unpacked, _) = ungroup_binary(&packed).unwrap();
        let (back, _) = group_binary(&unpacked, g).unwrap();
        prop_assert_eq!(back, packed);
    }

    /// The octal/hex bridge equals ungrouping plus regrouping and keeps
    /// the value.
    #[test]
    fn bridge_correctness(n in arb_numeral(prop_oneof![Just(Radix::OCTAL), Just(Radix::HEXADECIMAL)])) {
        let target = if n.radix() == Radix::OCTAL {
            Radix::HEXADECIMAL
        } else {
            Radix::OCTAL
        };
        let (bridged, _, _) = convert(&n, target, FractionPolicy::exact()).unwrap();
        let (unpacked, _) = ungroup_binary(&n).unwrap();
        let (regrouped, _) =
            group_binary(&unpacked, GroupSize::for_target(target).unwrap()).unwrap();
        prop_assert_eq!(&bridged, &regrouped);
        prop_assert_eq!(to_rational(&bridged), to_rational(&n));
    }

    /// Each recorded step satisfies its defining arithmetic identity.
    #[test]
    fn trace_replay(n in arb_numeral(quartet()), to in quartet()) {
        // A 5^k denominator factor (decimal pre-period digits) can push the
        // binary period into the millions; those conversions rightly hit the
        // cap and teach us nothing about replay.
        let (_, _, trace) = match convert(&n, to, FractionPolicy::exact_with_cap(20_000)) {
            Ok(out) => out,
            Err(ConvertError::CycleCap(_)) => return Ok(()),
            Err(e) => panic!("unexpected route error: {e}"),
        };
        for leg_trace in &trace.legs {
            let leg = leg_trace.leg;
            for step in &leg_trace.steps {
                match step {
                    TraceStep::Division { dividend, divisor, quotient, remainder } => {
                        prop_assert_eq!(dividend, &(divisor * quotient + remainder));
                        prop_assert!(remainder >= &BigInt::from(0) && remainder < divisor);
                    }
                    TraceStep::Multiplication { fraction_in, product, digit } => {
                        let radix = Rational::from_integer(leg.to.value());
                        prop_assert_eq!(product, &(fraction_in * &radix));
                        let whole = product.numer().div_floor(product.denom());
                        prop_assert_eq!(BigInt::from(digit.value()), whole);
                    }
                    TraceStep::Weight { weight: w, digit, contribution, crossed_out, .. } => {
                        prop_assert_eq!(
                            contribution,
                            &(w * &Rational::from_integer(digit.value()))
                        );
                        prop_assert_eq!(*crossed_out, digit.is_zero());
                    }
                    TraceStep::Grouping { bits, padded, digit } => {
                        let width = match leg.method {
                            Method::Group(g) => g.width(),
                            Method::Ungroup => bits.len(),
                            _ => bits.len(),
                        };
                        prop_assert!(*padded < width);
                        let value = bits.iter().fold(0u32, |acc, b| (acc << 1) | b.value());
                        prop_assert_eq!(value, digit.value());
                    }
                }
            }
        }
    }
}

proptest! {
    // Denominators up to 10^6 can carry six-figure periods; a few dozen
    // cases keep the runtime sane without shrinking the range.
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Exact-mode round trip preserves the rational bit for bit.
    #[test]
    fn exact_round_trip(
        numer in -1_000_000i64..=1_000_000,
        denom in 1i64..=1_000_000,
        r in quartet(),
    ) {
        let v = Rational::ratio(numer, denom);
        match from_rational(&v, r, FractionPolicy::exact_with_cap(60_000)) {
            Ok(n) => prop_assert_eq!(to_rational(&n), v),
            Err(e) => prop_assert!(e.cap == 60_000 && e.partial.len() == 60_000),
        }
    }
}

/// A fraction terminates in radix r exactly when its reduced denominator
/// has no prime factor outside r's primes.
#[test]
fn terminating_criterion() {
    let factors = |mut v: u64| {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= v {
            while v % p == 0 {
                out.push(p);
                v /= p;
            }
            p += 1;
        }
        if v > 1 {
            out.push(v);
        }
        out
    };
    for radix in [2u64, 8, 10, 16] {
        let r = Radix::new(radix as u32).unwrap();
        let radix_primes = {
            let mut ps = factors(radix);
            ps.dedup();
            ps
        };
        for denom in 2..10_000u64 {
            let f = Rational::new(BigInt::from(1), BigInt::from(denom));
            let expansion =
                frac_to_digits(&f, r, FractionPolicy::exact_with_cap(20_000)).unwrap();
            let smooth = factors(denom).iter().all(|p| radix_primes.contains(p));
            assert_eq!(
                expansion.repetend.is_none(),
                smooth,
                "1/{denom} base {radix}"
            );
        }
    }
}

/// A numeral with a single nonzero digit evaluates to digit * radix^i.
#[test]
fn weighted_sum_linearity() {
    for radix in [2u32, 8, 10, 16] {
        let r = Radix::new(radix).unwrap();
        for i in -6i32..=6 {
            for d in 1..radix {
                let numeral = if i >= 0 {
                    let mut int = vec![d];
                    int.extend(std::iter::repeat(0).take(i as usize));
                    Numeral::new(Sign::Positive, r, &int, &[], None).unwrap()
                } else {
                    let mut frac = vec![0u32; (-i - 1) as usize];
                    frac.push(d);
                    Numeral::new(Sign::Positive, r, &[0], &frac, None).unwrap()
                };
                let expected = &Rational::from_integer(d) * &weight(r, i);
                assert_eq!(to_rational(&numeral), expected, "d={d} r={radix} i={i}");
            }
        }
    }
}
