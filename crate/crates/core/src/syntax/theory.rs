use std::fmt;
use std::str::FromStr;

/// The eleven structure/signature pairs the engine decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    DloQ,
    DloR,
    OrderZ,
    OrderN,
    OagQ,
    OagR,
    PresburgerZ,
    PresburgerN,
    MulR,
    MulQ,
    MulQPos,
}

/// Which term language a theory speaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Order,
    Additive,
    Multiplicative,
}

/// The universe of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    Naturals,
    Integers,
    Rationals,
    PositiveRationals,
    Reals,
}

impl Theory {
    pub const ALL: [Theory; 11] = [
        Theory::DloQ,
        Theory::DloR,
        Theory::OrderZ,
        Theory::OrderN,
        Theory::OagQ,
        Theory::OagR,
        Theory::PresburgerZ,
        Theory::PresburgerN,
        Theory::MulR,
        Theory::MulQ,
        Theory::MulQPos,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theory::DloQ => "dlo-q",
            Theory::DloR => "dlo-r",
            Theory::OrderZ => "order-z",
            Theory::OrderN => "order-n",
            Theory::OagQ => "oag-q",
            Theory::OagR => "oag-r",
            Theory::PresburgerZ => "presburger-z",
            Theory::PresburgerN => "presburger-n",
            Theory::MulR => "mul-r",
            Theory::MulQ => "mul-q",
            Theory::MulQPos => "mul-q-pos",
        }
    }

    pub fn sort(self) -> Sort {
        match self {
            Theory::DloQ | Theory::DloR | Theory::OrderZ | Theory::OrderN => Sort::Order,
            Theory::OagQ | Theory::OagR | Theory::PresburgerZ | Theory::PresburgerN => Sort::Additive,
            Theory::MulR | Theory::MulQ | Theory::MulQPos => Sort::Multiplicative,
        }
    }

    pub fn carrier(self) -> Carrier {
        match self {
            Theory::OrderN | Theory::PresburgerN => Carrier::Naturals,
            Theory::OrderZ | Theory::PresburgerZ => Carrier::Integers,
            Theory::DloQ | Theory::OagQ | Theory::MulQ => Carrier::Rationals,
            Theory::MulQPos => Carrier::PositiveRationals,
            Theory::DloR | Theory::OagR | Theory::MulR => Carrier::Reals,
        }
    }

    /// Integer-valued universes.
    pub fn is_discrete(self) -> bool {
        matches!(self.carrier(), Carrier::Naturals | Carrier::Integers)
    }

    pub fn is_presburger(self) -> bool {
        matches!(self, Theory::PresburgerZ | Theory::PresburgerN)
    }

    /// Theories whose signature contains the power predicates.
    pub fn has_powers(self) -> bool {
        matches!(self, Theory::MulQ | Theory::MulQPos)
    }

    /// Multiplicative theories with 0 and -1 in the universe.
    pub fn has_zero_product(self) -> bool {
        matches!(self, Theory::MulQ | Theory::MulR)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown theory `{0}` (expected one of dlo-q, dlo-r, order-z, order-n, oag-q, oag-r, presburger-z, presburger-n, mul-r, mul-q, mul-q-pos)")]
pub struct UnknownTheory(pub String);

impl FromStr for Theory {
    type Err = UnknownTheory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theory::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| UnknownTheory(s.to_string()))
    }
}
