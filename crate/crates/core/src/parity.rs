//! The three parity classes of the rationals and their addition and
//! multiplication tables.

use std::fmt;

/// Parity of a reduced fraction `m/n`: even (`m` even, `n` odd), odd (both
/// odd) or none (`m` odd, `n` even).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    pub const ALL: [Parity; 3] = [Parity::Even, Parity::Odd, Parity::None];

    /// One-letter symbol used in parity strings: `e`, `o` or `n`.
    pub fn symbol(self) -> char {
        match self {
            Parity::Even => 'e',
            Parity::Odd => 'o',
            Parity::None => 'n',
        }
    }

    pub fn from_symbol(c: char) -> Option<Parity> {
        match c {
            'e' => Some(Parity::Even),
            'o' => Some(Parity::Odd),
            'n' => Some(Parity::None),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::None => "none",
        }
    }

    /// Parity of an ordinary integer.
    pub fn of_integer(z: i128) -> Parity {
        if z % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Position in [`Parity::ALL`]; handy for count arrays.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cell of the parity tables. `Any` means the result can land in any of
/// the three classes depending on the operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityOutcome {
    Even,
    Odd,
    None,
    Any,
}

impl ParityOutcome {
    /// The concrete parity, if this cell has one.
    pub fn concrete(self) -> Option<Parity> {
        match self {
            ParityOutcome::Even => Some(Parity::Even),
            ParityOutcome::Odd => Some(Parity::Odd),
            ParityOutcome::None => Some(Parity::None),
            ParityOutcome::Any => Option::None,
        }
    }
}

impl From<Parity> for ParityOutcome {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => ParityOutcome::Even,
            Parity::Odd => ParityOutcome::Odd,
            Parity::None => ParityOutcome::None,
        }
    }
}

impl fmt::Display for ParityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.concrete() {
            Some(p) => p.fmt(f),
            Option::None => f.write_str("any"),
        }
    }
}

/// Parity of `a + b` given the parities of `a` and `b`.
pub fn parity_add(a: Parity, b: Parity) -> ParityOutcome {
    use Parity::*;
    match (a, b) {
        (Even, Even) | (Odd, Odd) => ParityOutcome::Even,
        (Even, Odd) | (Odd, Even) => ParityOutcome::Odd,
        (None, None) => ParityOutcome::Any,
        (None, _) | (_, None) => ParityOutcome::None,
    }
}

/// Parity of `a * b` given the parities of `a` and `b`.
pub fn parity_mul(a: Parity, b: Parity) -> ParityOutcome {
    use Parity::*;
    match (a, b) {
        (Even, Even) | (Even, Odd) | (Odd, Even) => ParityOutcome::Even,
        (Odd, Odd) => ParityOutcome::Odd,
        (Even, None) | (None, Even) => ParityOutcome::Any,
        (Odd, None) | (None, Odd) | (None, None) => ParityOutcome::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_cells() {
        assert_eq!(parity_add(Parity::Odd, Parity::Odd), ParityOutcome::Even);
        assert_eq!(parity_mul(Parity::Odd, Parity::None), ParityOutcome::None);
        assert_eq!(parity_add(Parity::None, Parity::None), ParityOutcome::Any);
        assert_eq!(parity_mul(Parity::Even, Parity::None), ParityOutcome::Any);
        assert_eq!(parity_add(Parity::Even, Parity::None), ParityOutcome::None);
        assert_eq!(parity_mul(Parity::None, Parity::None), ParityOutcome::None);
    }

    #[test]
    fn tables_are_symmetric() {
        for a in Parity::ALL {
            for b in Parity::ALL {
                assert_eq!(parity_add(a, b), parity_add(b, a));
                assert_eq!(parity_mul(a, b), parity_mul(b, a));
            }
        }
    }

    #[test]
    fn only_two_any_cells() {
        let mut any = 0;
        for a in Parity::ALL {
            for b in Parity::ALL {
                any += (parity_add(a, b) == ParityOutcome::Any) as u32;
                any += (parity_mul(a, b) == ParityOutcome::Any) as u32;
            }
        }
        // (none + none), (even * none), (none * even)
        assert_eq!(any, 3);
    }

    #[test]
    fn restricted_to_integers_matches_z() {
        for x in -6i128..6 {
            for y in -6i128..6 {
                let (px, py) = (Parity::of_integer(x), Parity::of_integer(y));
                assert_eq!(
                    parity_add(px, py).concrete(),
                    Some(Parity::of_integer(x + y))
                );
                assert_eq!(
                    parity_mul(px, py).concrete(),
                    Some(Parity::of_integer(x * y))
                );
            }
        }
    }

    #[test]
    fn symbols_round_trip() {
        for p in Parity::ALL {
            assert_eq!(Parity::from_symbol(p.symbol()), Some(p));
        }
        assert_eq!(Parity::from_symbol('x'), Option::None);
    }
}
