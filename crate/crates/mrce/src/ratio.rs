//! Exact nonnegative rationals for expansion ratios.

use std::cmp::Ordering;
use std::fmt;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A nonnegative rational stored in lowest terms.
///
/// Comparisons cross-multiply in 128-bit arithmetic and are therefore exact
/// for any value this crate produces (numerators and denominators are vertex
/// counts). Decimal output is presentation only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// Reduces `num/den` to lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio denominator must be positive");
        if num == 0 {
            return Ratio { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact test of `self / base >= threshold`; requires `base > 0`.
    pub fn quotient_at_least(self, base: Ratio, threshold: Ratio) -> bool {
        assert!(base.num > 0, "quotient base must be positive");
        let lhs = self.num as u128 * base.den as u128 * threshold.den as u128;
        let rhs = threshold.num as u128 * self.den as u128 * base.num as u128;
        lhs >= rhs
    }

    /// Decimal rendering with the given number of significant digits,
    /// computed by long division so it never round-trips through `f64`.
    pub fn to_decimal(self, significant: usize) -> String {
        assert!(significant > 0);
        if self.num == 0 {
            return "0".to_string();
        }
        let int_part = self.num / self.den;
        let mut rem = self.num % self.den;
        let int_str = int_part.to_string();
        let int_digits = if int_part == 0 { 0 } else { int_str.len() };
        let frac_digits = significant.saturating_sub(int_digits);
        if frac_digits == 0 || rem == 0 && int_digits >= significant {
            return int_str;
        }
        // One extra digit for rounding.
        let mut digits = Vec::with_capacity(frac_digits + 1);
        for _ in 0..frac_digits + 1 {
            rem *= 10;
            digits.push((rem / self.den) as u8);
            rem %= self.den;
        }
        let round_up = digits.pop().unwrap() >= 5;
        let mut frac: Vec<u8> = digits;
        if round_up {
            let mut i = frac.len();
            loop {
                if i == 0 {
                    // Carry into the integer part.
                    let mut s = (int_part + 1).to_string();
                    s.push('.');
                    s.extend(frac.iter().map(|d| char::from(b'0' + d)));
                    return s;
                }
                i -= 1;
                if frac[i] == 9 {
                    frac[i] = 0;
                } else {
                    frac[i] += 1;
                    break;
                }
            }
        }
        let mut s = int_str;
        s.push('.');
        s.extend(frac.iter().map(|d| char::from(b'0' + d)));
        s
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = Ratio::new(9, 6);
        assert_eq!((r.num(), r.den()), (3, 2));
        assert_eq!(Ratio::new(0, 7), Ratio::new(0, 1));
        assert_eq!(Ratio::new(4, 4), Ratio::new(1, 1));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Ratio::new(1, 3) > Ratio::new(333_333_333, 1_000_000_000));
        assert!(Ratio::new(2, 3) < Ratio::new(666_666_667, 1_000_000_000));
        assert_eq!(Ratio::new(10, 4), Ratio::new(5, 2));
        assert!(Ratio::new(9, 2) > Ratio::new(4, 1));
    }

    #[test]
    fn quotient_threshold() {
        // (3/2) / (9/2) = 1/3 >= 1/3
        assert!(Ratio::new(3, 2).quotient_at_least(Ratio::new(9, 2), Ratio::new(1, 3)));
        // (3/2) / (9/2) < 1/2
        assert!(!Ratio::new(3, 2).quotient_at_least(Ratio::new(9, 2), Ratio::new(1, 2)));
        assert!(Ratio::new(9, 2).quotient_at_least(Ratio::new(9, 2), Ratio::new(1, 1)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Ratio::new(9, 2).to_decimal(10), "4.500000000");
        assert_eq!(Ratio::new(23, 3).to_decimal(10), "7.666666667");
        assert_eq!(Ratio::new(1, 1).to_decimal(10), "1.000000000");
        assert_eq!(Ratio::new(0, 1).to_decimal(10), "0");
        // Rounding carries across digits.
        assert_eq!(Ratio::new(2999, 1000).to_decimal(3), "3.00");
    }

    #[test]
    fn display() {
        assert_eq!(Ratio::new(9, 2).to_string(), "9/2");
    }
}
