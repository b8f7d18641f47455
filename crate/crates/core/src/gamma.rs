//! Exact values of the Gamma function at half-integers and the ball/sphere
//! measures built from them. Values are carried as `q * pi^(h/2)` with `q`
//! rational so that inequalities between them can be decided exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{int, to_f64, Rational};

/// Rational enclosure of pi, 29 decimal places.
fn pi_bounds() -> (Rational, Rational) {
    let den: BigInt = num_traits::pow(BigInt::from(10), 29);
    let lo: BigInt = "314159265358979323846264338327".parse().unwrap();
    let hi = &lo + 1;
    (Rational::new(lo, den.clone()), Rational::new(hi, den))
}

/// `coef * pi^(half_pow / 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMultiple {
    pub coef: Rational,
    pub half_pow: i32,
}

impl PiMultiple {
    pub fn rational(coef: Rational) -> Self {
        Self { coef, half_pow: 0 }
    }

    pub fn sqrt_pi() -> Self {
        Self { coef: Rational::one(), half_pow: 1 }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coef) * std::f64::consts::PI.powf(self.half_pow as f64 / 2.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { coef: &self.coef * &other.coef, half_pow: self.half_pow + other.half_pow }
    }

    pub fn div(&self, other: &Self) -> Self {
        Self { coef: &self.coef / &other.coef, half_pow: self.half_pow - other.half_pow }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { coef: &self.coef * q, half_pow: self.half_pow }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Exact comparison; `None` only if the pi enclosure is too coarse to
    /// separate the two values.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        let (sa, sb) = (self.coef.signum(), other.coef.signum());
        if sa != sb || sa.is_zero() {
            return Some(sa.cmp(&sb));
        }
        if self.half_pow % 2 != other.half_pow % 2 {
            let ord = self.square().compare(&other.square())?;
            return Some(if sa.is_negative() { ord.reverse() } else { ord });
        }
        // a pi^(p/2) vs b pi^(q/2)  <=>  a vs b pi^k
        let k = (other.half_pow - self.half_pow) / 2;
        let (lo, hi) = pi_bounds();
        let (lo_k, hi_k) = if k >= 0 {
            (num_traits::pow(lo, k as usize), num_traits::pow(hi, k as usize))
        } else {
            let n = (-k) as usize;
            (num_traits::pow(hi.recip(), n), num_traits::pow(lo.recip(), n))
        };
        let (b_lo, b_hi) = if other.coef.is_positive() {
            (&other.coef * lo_k, &other.coef * hi_k)
        } else {
            (&other.coef * hi_k, &other.coef * lo_k)
        };
        if self.coef < b_lo {
            Some(Ordering::Less)
        } else if self.coef > b_hi {
            Some(Ordering::Greater)
        } else if k == 0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.half_pow {
            0 => write!(f, "{}", self.coef),
            2 => write!(f, "{}*pi", self.coef),
            1 => write!(f, "{}*sqrt(pi)", self.coef),
            h => write!(f, "{}*pi^({h}/2)", self.coef),
        }
    }
}

fn factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `Gamma(twice / 2)` for a positive half-integer argument.
pub fn gamma_half(twice: u32) -> Result<PiMultiple> {
    if twice == 0 {
        return Err(Error::param("Gamma is undefined at 0"));
    }
    if twice % 2 == 0 {
        return Ok(PiMultiple::rational(Rational::from_integer(factorial(twice as u64 / 2 - 1))));
    }
    // Gamma(j + 1/2) = (2j)! / (4^j j!) sqrt(pi)
    let j = (twice as u64 - 1) / 2;
    let num = factorial(2 * j);
    let den = num_traits::pow(BigInt::from(4), j as usize) * factorial(j);
    Ok(PiMultiple { coef: Rational::new(num, den), half_pow: 1 })
}

/// `Gamma(x)` for `x` in {1/2, 1, 3/2, ...}.
pub fn gamma_half_f64(x: f64) -> Result<PiMultiple> {
    let twice = 2.0 * x;
    if !(twice >= 1.0 && twice.fract() == 0.0 && twice <= u32::MAX as f64) {
        return Err(Error::param(format!("{x} is not a positive half-integer")));
    }
    gamma_half(twice as u32)
}

/// Volume of the unit ball in `R^k`, `pi^(k/2) / Gamma(k/2 + 1)`.
pub fn ball_volume(k: usize) -> PiMultiple {
    let g = gamma_half(k as u32 + 2).expect("positive argument");
    PiMultiple { coef: Rational::one(), half_pow: k as i32 }.div(&g)
}

pub fn ball_volume_f64(k: usize) -> f64 {
    ball_volume(k).to_f64()
}

/// Area of the unit sphere `S^(k-1)` bounding the ball in `R^k`.
pub fn sphere_area(k: usize) -> PiMultiple {
    ball_volume(k).scale(&int(k as i64))
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfballRatio {
    /// Length of the relative boundary of the base.
    pub l: f64,
    /// Area of the base (a half sphere).
    pub b: f64,
    pub ratio: f64,
    #[serde(skip)]
    pub exact_l: PiMultiple,
    #[serde(skip)]
    pub exact_b: PiMultiple,
}

/// Base area and boundary length of the unit half-ball in `R^n`.
pub fn halfball_ratio(n: usize) -> Result<HalfballRatio> {
    if n < 2 {
        return Err(Error::param("half-ball ratio needs n >= 2"));
    }
    let exact_b = ball_volume(n).scale(&Rational::new(BigInt::from(n), BigInt::from(2)));
    let exact_l = ball_volume(n - 1).scale(&int(n as i64 - 1));
    let ratio = exact_l.div(&exact_b);
    Ok(HalfballRatio {
        l: exact_l.to_f64(),
        b: exact_b.to_f64(),
        ratio: ratio.to_f64(),
        exact_l,
        exact_b,
    })
}

/// Exact check of `L/B >= sqrt(2/pi) (n-1)/sqrt(n)` for the half-ball,
/// compared as squares.
pub fn halfball_bound_holds(n: usize) -> Result<bool> {
    let h = halfball_ratio(n)?;
    let lhs = h.exact_l.div(&h.exact_b).square();
    let k = n as i64;
    let rhs = PiMultiple {
        coef: Rational::new(BigInt::from(2 * (k - 1) * (k - 1)), BigInt::from(k)),
        half_pow: -2,
    };
    Ok(matches!(lhs.compare(&rhs), Some(Ordering::Greater | Ordering::Equal)))
}

/// Exact check of `Gamma(n/2 + 1) >= sqrt(n/2) Gamma((n-1)/2 + 1)`.
pub fn gamma_inequality_check(n: usize) -> Result<bool> {
    if n < 1 {
        return Err(Error::param("n must be positive"));
    }
    let lhs = gamma_half(n as u32 + 2)?.square();
    let rhs = gamma_half(n as u32 + 1)?
        .square()
        .scale(&Rational::new(BigInt::from(n), BigInt::from(2)));
    Ok(matches!(lhs.compare(&rhs), Some(Ordering::Greater | Ordering::Equal)))
}
