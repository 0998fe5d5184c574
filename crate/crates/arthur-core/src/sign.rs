//! The two-element sign group {+1, -1}, used everywhere in the crate.

/// A sign, written multiplicatively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k` for any integer `k` (negative exponents allowed: only the
    /// parity matters).
    pub fn from_parity<T: Into<i64>>(k: T) -> Sign {
        if k.into() % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self^k`.
    pub fn pow<T: Into<i64>>(self, k: T) -> Sign {
        if k.into() % 2 == 0 {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    /// Product over an iterator of signs.
    pub fn product<I: IntoIterator<Item = Sign>>(it: I) -> Sign {
        it.into_iter().fold(Sign::Plus, |acc, s| acc * s)
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl core::ops::MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl core::fmt::Display for Sign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_products() {
        assert_eq!(Sign::from_parity(0), Sign::Plus);
        assert_eq!(Sign::from_parity(3), Sign::Minus);
        assert_eq!(Sign::from_parity(-1), Sign::Minus);
        assert_eq!(Sign::from_parity(-4), Sign::Plus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Minus.pow(5), Sign::Minus);
        assert_eq!(Sign::Minus.pow(0), Sign::Plus);
        assert_eq!(
            Sign::product([Sign::Minus, Sign::Minus, Sign::Minus]),
            Sign::Minus
        );
    }
}
