use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::Rational;

/// The real number `sign · √square`, kept exact. Kempf-type values are
/// quotients by a Euclidean norm and so are irrational in general.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedSquare {
    sign: i8,
    square: Rational,
}

impl SignedSquare {
    pub fn zero() -> Self {
        SignedSquare {
            sign: 0,
            square: Rational::zero(),
        }
    }

    /// `sign` is clamped to {-1, 0, 1}; a zero square forces sign 0.
    pub fn new(sign: i8, square: Rational) -> Self {
        assert!(!square.is_negative(), "square must be nonnegative");
        if sign == 0 || square.is_zero() {
            return Self::zero();
        }
        SignedSquare {
            sign: sign.signum(),
            square,
        }
    }

    /// `num / √den` for `den > 0`.
    pub fn from_ratio_over_root(num: &Rational, den: &Rational) -> Self {
        assert!(den.is_positive(), "norm must be positive");
        let sign = if num.is_zero() {
            0
        } else if num.is_positive() {
            1
        } else {
            -1
        };
        Self::new(sign, num * num / den)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    /// Multiplies the underlying real number by `√factor` (factor ≥ 0).
    pub fn scale_by_root(&self, factor: &Rational) -> Self {
        Self::new(self.sign, &self.square * factor)
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }
}

impl Ord for SignedSquare {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                1 => self.square.cmp(&other.square),
                -1 => other.square.cmp(&self.square),
                _ => Ordering::Equal,
            },
            ord => ord,
        }
    }
}

impl PartialOrd for SignedSquare {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "sqrt({})", self.square),
            _ => write!(f, "-sqrt({})", self.square),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn ordering_is_numeric() {
        let mut xs = [
            SignedSquare::new(1, rat(4)),
            SignedSquare::new(-1, rat(9)),
            SignedSquare::zero(),
            SignedSquare::new(-1, ratio(1, 4)),
            SignedSquare::new(1, ratio(1, 2)),
        ];
        xs.sort();
        let shown: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["-sqrt(9)", "-sqrt(1/4)", "0", "sqrt(1/2)", "sqrt(4)"]);
    }

    #[test]
    fn zero_square_normalizes_sign() {
        assert_eq!(SignedSquare::new(-1, rat(0)), SignedSquare::zero());
        assert_eq!(SignedSquare::from_ratio_over_root(&rat(-3), &rat(2)), SignedSquare::new(-1, ratio(9, 2)));
    }
}
