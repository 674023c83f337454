//! Exact rational arithmetic, symbolic powers of `pi`, and the special
//! constants (Bernoulli numbers, `zeta` values, the `frak_z` sequence).

mod pi;
mod rational;
mod zeta;

pub use pi::{pi_rational, PiScalar, PiSum, PI_DIGITS};
pub use rational::{
    binomial, decimal_string, double_factorial_odd, factorial, fraction_string, int,
    parse_rational, rat, Rational,
};
pub use zeta::{bernoulli, frak_z, zeta_even_over_pi, zeta_neg};
