use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rational::{frac, int, mod_inverse};
use crate::model::FixedPointDatum;
use crate::Rational;

/// Age of `h` at a point: the sum of the representatives in `(0, 1)` of its
/// tangent weights.
pub fn age_f(point: &FixedPointDatum, h: usize) -> Rational {
    point
        .weights
        .iter()
        .map(|w| frac(&w.chi[h]))
        .fold(int(0), |acc, x| acc + x)
}

/// `breve(s/r) = d·s mod N` with `d·r ≡ 1 (mod N)`, in `[0, N)`.
pub fn breve_lift(f: &Rational, n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("level {n} must be positive")));
    }
    let not_coprime = || Error::NonCoprimeDenominator {
        value: f.to_string(),
        level: n,
    };
    let r = f.denom().mod_floor(&n.into()).to_i64().expect("reduced mod n");
    let s = f.numer().mod_floor(&n.into()).to_i64().expect("reduced mod n");
    if f.denom().gcd(&n.into()) != 1.into() {
        return Err(not_coprime());
    }
    if f.is_zero() || n == 1 {
        return Ok(0);
    }
    let d = mod_inverse(r, n).ok_or_else(not_coprime)?;
    Ok(((d as i128 * s as i128) % n as i128) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::model::fixtures;

    #[test]
    fn breve_examples() {
        assert_eq!(breve_lift(&int(7), 5), Ok(2));
        assert_eq!(breve_lift(&int(-1), 5), Ok(4));
        assert_eq!(breve_lift(&rat(2, 3), 5), Ok(4));
        assert!(matches!(
            breve_lift(&rat(1, 2), 2),
            Err(Error::NonCoprimeDenominator { level: 2, .. })
        ));
    }

    #[test]
    fn ages_on_p113() {
        let m = fixtures::p113();
        let p = &m.fixed_points[2];
        assert_eq!(age_f(p, 0), int(0));
        assert_eq!(age_f(p, 1), rat(2, 3));
        assert_eq!(age_f(p, 2), rat(4, 3));
    }
}
