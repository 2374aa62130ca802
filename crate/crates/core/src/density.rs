//! Edge-density bounds of the form `m <= a*n + b`, kept as exact rationals.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::graph::SimpleGraph;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityClass {
    Planar,
    OnePlanar,
    IcPlanar,
    OuterOnePlanar,
    MaximalIcFamily,
}

impl DensityClass {
    pub const ALL: [DensityClass; 5] = [
        DensityClass::Planar,
        DensityClass::OnePlanar,
        DensityClass::IcPlanar,
        DensityClass::OuterOnePlanar,
        DensityClass::MaximalIcFamily,
    ];

    /// Coefficients `(a, b)` of the bound `a*n + b`.
    pub fn coefficients(self) -> (Rational, Rational) {
        let r = Rational::new;
        match self {
            DensityClass::Planar => (r(3, 1), r(-6, 1)),
            DensityClass::OnePlanar => (r(4, 1), r(-8, 1)),
            DensityClass::IcPlanar => (r(13, 4), r(-6, 1)),
            DensityClass::OuterOnePlanar => (r(5, 2), r(-4, 1)),
            DensityClass::MaximalIcFamily => (r(3, 1), r(-5, 1)),
        }
    }

    pub fn bound(self, n: usize) -> Rational {
        let (a, b) = self.coefficients();
        a * Rational::from_integer(n as i64) + b
    }

    pub fn name(self) -> &'static str {
        match self {
            DensityClass::Planar => "planar",
            DensityClass::OnePlanar => "one-planar",
            DensityClass::IcPlanar => "ic-planar",
            DensityClass::OuterOnePlanar => "outer-one-planar",
            DensityClass::MaximalIcFamily => "maximal-ic-family",
        }
    }
}

impl fmt::Display for DensityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DensityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DensityClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown density class `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityCheck {
    pub class: DensityClass,
    pub bound: Rational,
    /// `m - bound`; non-positive iff the bound holds.
    pub slack: Rational,
}

impl DensityCheck {
    pub fn passes(&self) -> bool {
        self.slack <= Rational::from_integer(0)
    }

    pub fn is_tight(&self) -> bool {
        self.slack == Rational::from_integer(0)
    }
}

pub fn check_density(g: &SimpleGraph, class: DensityClass) -> DensityCheck {
    let bound = class.bound(g.n());
    DensityCheck {
        class,
        bound,
        slack: Rational::from_integer(g.m() as i64) - bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k7_violates_one_planar() {
        let c = check_density(&SimpleGraph::complete(7), DensityClass::OnePlanar);
        assert_eq!(c.bound, Rational::from_integer(20));
        assert_eq!(c.slack, Rational::from_integer(1));
        assert!(!c.passes());
    }

    #[test]
    fn k6_passes_one_planar() {
        let c = check_density(&SimpleGraph::complete(6), DensityClass::OnePlanar);
        assert_eq!(c.bound, Rational::from_integer(16));
        assert_eq!(c.slack, Rational::from_integer(-1));
        assert!(c.passes());
    }

    #[test]
    fn k4_tight_for_outer() {
        let c = check_density(&SimpleGraph::complete(4), DensityClass::OuterOnePlanar);
        assert!(c.is_tight());
        assert!(c.passes());
    }

    #[test]
    fn ic_bound_is_fractional() {
        // 13/4 * 5 - 6 = 41/4
        let c = check_density(&SimpleGraph::complete(5), DensityClass::IcPlanar);
        assert_eq!(c.bound, Rational::new(41, 4));
        assert_eq!(c.slack, Rational::new(-1, 4));
        assert_eq!(*c.slack.denom(), 4);
    }

    #[test]
    fn names_roundtrip() {
        for c in DensityClass::ALL {
            assert_eq!(c.name().parse::<DensityClass>().unwrap(), c);
        }
    }
}
