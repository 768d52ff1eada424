//! Exact coefficient arithmetic in the field Q(s), s = q^{1/2}, together with
//! a Gaussian extension (formal `i`) and numeric evaluation at a chosen 0 < q < 1.
//!
//! A [`ScalarQ`] is a pair of reduced fractions of integer Laurent polynomials
//! in s (real and imaginary part). Fractions are kept in a canonical form so
//! that equality is plain representation equality:
//!
//! * the denominator is an ordinary polynomial with nonzero constant term
//!   (all powers of s are pushed into the numerator),
//! * numerator and denominator are coprime and have coprime contents,
//! * the denominator's leading coefficient is positive.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::QslabError;

// ---------------------------------------------------------------------------
// integer polynomials: Vec<BigInt>, index = exponent, last entry nonzero
// ---------------------------------------------------------------------------

type Poly = Vec<BigInt>;

fn ptrim(mut p: Poly) -> Poly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn pzero() -> Poly {
    Vec::new()
}

fn pone() -> Poly {
    vec![BigInt::from(1)]
}

fn pis_zero(p: &Poly) -> bool {
    p.is_empty()
}

fn pneg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    if pis_zero(a) || pis_zero(b) {
        return pzero();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    ptrim(out)
}

fn pcontent(a: &Poly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    g
}

fn pscale_div(a: &Poly, d: &BigInt) -> Poly {
    a.iter().map(|c| c / d).collect()
}

fn pprimitive(a: &Poly) -> Poly {
    if pis_zero(a) {
        return pzero();
    }
    let c = pcontent(a);
    pscale_div(a, &c)
}

/// Pseudo-remainder of a by b (deg a >= deg b, b nonzero).
fn pprem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while !pis_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r := lb*r - lr*x^{dr-db}*b
        let mut nr = vec![BigInt::zero(); dr + 1];
        for (i, c) in r.iter().enumerate() {
            nr[i] = c * &lb;
        }
        for (i, c) in b.iter().enumerate() {
            nr[i + dr - db] -= c * &lr;
        }
        r = ptrim(nr);
    }
    r
}

/// Gcd in Z[x] including content, normalized to positive leading coefficient.
fn pgcd(a: &Poly, b: &Poly) -> Poly {
    if pis_zero(a) {
        return psign_norm(b.clone());
    }
    if pis_zero(b) {
        return psign_norm(a.clone());
    }
    let cg = pcontent(a).gcd(&pcontent(b));
    let mut x = pprimitive(a);
    let mut y = pprimitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = pprem(&x, &y);
        if pis_zero(&r) {
            break;
        }
        x = y;
        y = pprimitive(&r);
    }
    let mut g = psign_norm(y);
    for c in g.iter_mut() {
        *c *= &cg;
    }
    g
}

fn psign_norm(mut p: Poly) -> Poly {
    if p.last().map_or(false, |c| c.is_negative()) {
        p = pneg(&p);
    }
    p
}

/// Exact division a / b in Z[x]; panics if not exact (callers divide by gcds).
fn pdiv_exact(a: &Poly, b: &Poly) -> Poly {
    assert!(!pis_zero(b), "division by zero polynomial");
    if pis_zero(a) {
        return pzero();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    while !pis_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap();
        let (c, rem) = lr.div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        q[dr - db] = c.clone();
        let mut nr = r.clone();
        for (i, bc) in b.iter().enumerate() {
            nr[i + dr - db] -= bc * &c;
        }
        r = ptrim(nr);
    }
    assert!(pis_zero(&r), "inexact polynomial division (remainder)");
    q
}

fn peval(p: &Poly, x: f64) -> f64 {
    let mut acc = 0.0;
    for c in p.iter().rev() {
        acc = acc * x + bigint_to_f64(c);
    }
    acc
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// Laurent polynomials in s over Z
// ---------------------------------------------------------------------------

/// Integer Laurent polynomial in s: `c[0]*s^lo + c[1]*s^{lo+1} + ...`,
/// with both ends of `c` nonzero (empty = zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    lo: i64,
    c: Poly,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { lo: 0, c: pzero() }
    }

    pub fn one() -> Self {
        Laurent { lo: 0, c: pone() }
    }

    pub fn from_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Laurent {
            lo: 0,
            c: vec![BigInt::from(n)],
        }
    }

    /// The monomial c*s^e.
    pub fn monomial(coeff: i64, e: i64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Laurent {
            lo: e,
            c: vec![BigInt::from(coeff)],
        }
    }

    fn normalize(mut self) -> Self {
        // strip trailing zeros, shift leading zeros into lo
        self.c = ptrim(self.c);
        let lead = self.c.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.c.len() as i64).max(other.lo + other.c.len() as i64);
        let mut c = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[(other.lo - lo) as usize + i] += x;
        }
        Laurent { lo, c }.normalize()
    }

    fn mul(&self, other: &Laurent) -> Laurent {
        Laurent {
            lo: self.lo + other.lo,
            c: pmul(&self.c, &other.c),
        }
        .normalize()
    }

    fn neg(&self) -> Laurent {
        Laurent {
            lo: self.lo,
            c: pneg(&self.c),
        }
    }

    fn eval(&self, s: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        peval(&self.c, s) * s.powi(self.lo as i32)
    }
}

// ---------------------------------------------------------------------------
// reduced fractions of Laurent polynomials
// ---------------------------------------------------------------------------

/// Canonical fraction num/den with num Laurent, den an ordinary polynomial
/// with nonzero constant term and positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatS {
    num: Laurent,
    den: Poly,
}

impl RatS {
    pub fn zero() -> Self {
        RatS {
            num: Laurent::zero(),
            den: pone(),
        }
    }

    pub fn one() -> Self {
        RatS {
            num: Laurent::one(),
            den: pone(),
        }
    }

    pub fn from_laurent(num: Laurent) -> Self {
        RatS {
            num: num.normalize(),
            den: pone(),
        }
    }

    fn make(num: Laurent, den: Laurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let num = num.normalize();
        let den = den.normalize();
        if num.is_zero() {
            return RatS::zero();
        }
        // shift all s powers of the denominator into the numerator
        let mut n = num;
        n.lo -= den.lo;
        let mut d = den.c;
        // reduce
        let g = pgcd(&n.c, &d);
        if g != pone() {
            let nn = pdiv_exact(&n.c, &g);
            d = pdiv_exact(&d, &g);
            n.c = nn;
        }
        let mut out = RatS { num: n, den: d };
        if out.den.last().unwrap().is_negative() {
            out.num = out.num.neg();
            out.den = pneg(&out.den);
        }
        out.num = out.num.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &RatS::one()
    }

    pub fn add(&self, other: &RatS) -> RatS {
        let n = self
            .num
            .mul(&Laurent {
                lo: 0,
                c: other.den.clone(),
            })
            .add(&other.num.mul(&Laurent {
                lo: 0,
                c: self.den.clone(),
            }));
        RatS::make(
            n,
            Laurent {
                lo: 0,
                c: pmul(&self.den, &other.den),
            },
        )
    }

    pub fn mul(&self, other: &RatS) -> RatS {
        if self.is_zero() || other.is_zero() {
            return RatS::zero();
        }
        RatS::make(
            self.num.mul(&other.num),
            Laurent {
                lo: 0,
                c: pmul(&self.den, &other.den),
            },
        )
    }

    pub fn neg(&self) -> RatS {
        RatS {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatS, QslabError> {
        if self.is_zero() {
            return Err(QslabError::ZeroInverse);
        }
        Ok(RatS::make(
            Laurent {
                lo: 0,
                c: self.den.clone(),
            },
            self.num.clone(),
        ))
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.num.eval(s) / peval(&self.den, s)
    }

    fn den_vanishes(&self, s: f64) -> bool {
        // relative to the scale of the evaluated monomials, so that roots hit
        // through floating-point q are still detected
        let val = peval(&self.den, s).abs();
        let scale: f64 = self
            .den
            .iter()
            .enumerate()
            .map(|(i, c)| (bigint_to_f64(c) * s.powi(i as i32)).abs())
            .sum();
        val < 1e-12 * scale.max(1.0)
    }
}

// ---------------------------------------------------------------------------
// ScalarQ: Gaussian extension of Q(s)
// ---------------------------------------------------------------------------

/// An element re + im*i of Q(s)(i). The imaginary part is zero almost
/// everywhere; only the Dirac parameters ever populate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarQ {
    re: RatS,
    im: RatS,
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ {
            re: RatS::zero(),
            im: RatS::zero(),
        }
    }

    pub fn one() -> Self {
        ScalarQ {
            re: RatS::one(),
            im: RatS::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ {
            re: RatS::from_laurent(Laurent::from_int(n)),
            im: RatS::zero(),
        }
    }

    /// s^k, i.e. q^{k/2}.
    pub fn s_pow(k: i64) -> Self {
        ScalarQ {
            re: RatS::from_laurent(Laurent::monomial(1, k)),
            im: RatS::zero(),
        }
    }

    /// q^k.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ScalarQ {
            re: RatS::zero(),
            im: RatS::one(),
        }
    }

    /// c*s^e as a shorthand constructor.
    pub fn term(c: i64, s_exp: i64) -> Self {
        ScalarQ {
            re: RatS::from_laurent(Laurent::monomial(c, s_exp)),
            im: RatS::zero(),
        }
    }

    /// The q-integer [n] = (q^n - q^{-n})/(q - q^{-1}).
    pub fn q_int(n: i64) -> Self {
        let num = Self::q_pow(n) - Self::q_pow(-n);
        let den = Self::q_pow(1) - Self::q_pow(-1);
        num.try_div(&den).expect("q-integer denominator is nonzero")
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugation; s itself is real (0 < q < 1), so only `i` flips.
    pub fn conj(&self) -> ScalarQ {
        ScalarQ {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn inv(&self) -> Result<ScalarQ, QslabError> {
        if self.is_zero() {
            return Err(QslabError::ZeroInverse);
        }
        if self.im.is_zero() {
            return Ok(ScalarQ {
                re: self.re.inv()?,
                im: RatS::zero(),
            });
        }
        // (re - i*im) / (re^2 + im^2)
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let n2i = n2.inv()?;
        Ok(ScalarQ {
            re: self.re.mul(&n2i),
            im: self.im.neg().mul(&n2i),
        })
    }

    pub fn try_div(&self, other: &ScalarQ) -> Result<ScalarQ, QslabError> {
        Ok(self.clone() * other.inv()?)
    }

    pub fn pow(&self, k: i64) -> ScalarQ {
        if k < 0 {
            return self.inv().expect("inverse of zero in pow").pow(-k);
        }
        let mut acc = ScalarQ::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Evaluate at s = sqrt(q). Errors if a denominator vanishes there.
    pub fn eval(&self, q: f64) -> Result<NumericScalar, QslabError> {
        if !(0.0 < q && q < 1.0) {
            return Err(QslabError::BadQ(q));
        }
        let s = q.sqrt();
        if self.re.den_vanishes(s) || self.im.den_vanishes(s) {
            return Err(QslabError::DenominatorVanishes {
                scalar: self.to_string(),
                q,
            });
        }
        Ok(NumericScalar {
            value: Complex64::new(self.re.eval(s), self.im.eval(s)),
            q,
        })
    }
}

impl Add for ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: ScalarQ) -> ScalarQ {
        &self + &rhs
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }
}

impl Sub for ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: ScalarQ) -> ScalarQ {
        &self - &rhs
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ {
            re: self.re.add(&rhs.re.neg()),
            im: self.im.add(&rhs.im.neg()),
        }
    }
}

impl Mul for ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: ScalarQ) -> ScalarQ {
        &self * &rhs
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        // fast path: both real
        if self.im.is_zero() && rhs.im.is_zero() {
            return ScalarQ {
                re: self.re.mul(&rhs.re),
                im: RatS::zero(),
            };
        }
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im).neg());
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        ScalarQ { re, im }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Div for ScalarQ {
    type Output = ScalarQ;
    fn div(self, rhs: ScalarQ) -> ScalarQ {
        ScalarQ::try_div(&self, &rhs).expect("division by zero scalar")
    }
}

// ---------------------------------------------------------------------------
// display
// ---------------------------------------------------------------------------

fn fmt_laurent(l: &Laurent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if l.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    // print from highest power down
    for (i, c) in l.c.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = l.lo + i as i64;
        let (sign, mag) = if c.is_negative() {
            ("-", -c.clone())
        } else {
            ("+", c.clone())
        };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", sign)?;
        }
        let one = BigInt::from(1);
        if e == 0 {
            write!(f, "{}", mag)?;
        } else {
            if mag != one {
                write!(f, "{}*", mag)?;
            }
            if e % 2 == 0 {
                let k = e / 2;
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", k)?;
                }
            } else if e == 1 {
                write!(f, "s")?;
            } else {
                write!(f, "s^{}", e)?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for RatS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == pone() {
            fmt_laurent(&self.num, f)
        } else {
            write!(f, "(")?;
            fmt_laurent(&self.num, f)?;
            write!(f, ")/(")?;
            fmt_laurent(
                &Laurent {
                    lo: 0,
                    c: self.den.clone(),
                },
                f,
            )?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*i", self.im)
        } else {
            write!(f, "{} + ({})*i", self.re, self.im)
        }
    }
}

// ---------------------------------------------------------------------------
// numeric scalars
// ---------------------------------------------------------------------------

/// A complex double tagged with the q it was evaluated at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericScalar {
    pub value: Complex64,
    pub q: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_scalar(rng: &mut ChaCha8Rng) -> ScalarQ {
        let mut acc = ScalarQ::zero();
        for _ in 0..rng.gen_range(1..4) {
            let c = rng.gen_range(-4i64..5);
            let e = rng.gen_range(-5i64..6);
            acc = acc + ScalarQ::term(c, e);
        }
        if rng.gen_range(0..4) == 0 {
            // occasionally a genuine fraction
            let d = ScalarQ::term(1, 2) + ScalarQ::from_int(rng.gen_range(2..5));
            acc = acc.try_div(&d).unwrap();
        }
        acc
    }

    #[test]
    fn adds_monomials() {
        // s^2 + s^2 = 2q
        let a = ScalarQ::s_pow(2);
        let sum = &a + &a;
        assert_eq!(sum, ScalarQ::term(2, 2));
    }

    #[test]
    fn q_int_two_is_q_plus_qinv() {
        let expect = ScalarQ::s_pow(2) + ScalarQ::s_pow(-2);
        assert_eq!(ScalarQ::q_int(2), expect);
    }

    #[test]
    fn inverse_of_polynomial() {
        let a = ScalarQ::s_pow(4) - ScalarQ::one();
        let prod = a.inv().unwrap() * a;
        assert!(prod.is_one());
    }

    #[test]
    fn inversion_of_zero_errors() {
        assert!(ScalarQ::zero().inv().is_err());
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = rand_scalar(&mut rng);
            let b = rand_scalar(&mut rng);
            let c = rand_scalar(&mut rng);
            assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), (&a * &b) + (&a * &c));
            assert!((&a - &a).is_zero());
        }
    }

    #[test]
    fn complex_arithmetic() {
        let z = ScalarQ::one() + ScalarQ::i();
        let w = z.conj();
        let n = &z * &w; // (1+i)(1-i) = 2
        assert_eq!(n, ScalarQ::from_int(2));
        let zi = z.inv().unwrap();
        assert!((z * zi).is_one());
    }

    #[test]
    fn eval_substitutes_sqrt_q() {
        let v = ScalarQ::s_pow(2).eval(0.81).unwrap();
        assert!((v.value.re - 0.81).abs() < 1e-14);
        // [2] at q = 0.5 is q + 1/q = 2.5
        let v = ScalarQ::q_int(2).eval(0.5).unwrap();
        assert!((v.value.re - 2.5).abs() < 1e-12);
        // (q - q^-1)^{-1}(q^2 - q^-2) at q = 0.9
        let num = ScalarQ::q_pow(2) - ScalarQ::q_pow(-2);
        let den = ScalarQ::q_pow(1) - ScalarQ::q_pow(-1);
        let v = num.try_div(&den).unwrap().eval(0.9).unwrap();
        let expect = 0.9 + 1.0 / 0.9;
        assert!((v.value.re - expect).abs() < 1e-12);
    }

    #[test]
    fn eval_is_field_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = rand_scalar(&mut rng);
            let b = rand_scalar(&mut rng);
            for &q in &[0.5, 0.9] {
                let ea = a.eval(q).unwrap().value;
                let eb = b.eval(q).unwrap().value;
                let esum = (&a + &b).eval(q).unwrap().value;
                let eprod = (&a * &b).eval(q).unwrap().value;
                let rel =
                    |x: Complex64, y: Complex64| (x - y).norm() / (1.0 + x.norm().max(y.norm()));
                assert!(rel(esum, ea + eb) < 1e-12);
                assert!(rel(eprod, ea * eb) < 1e-12);
            }
        }
    }

    #[test]
    fn eval_rejects_bad_q() {
        assert!(ScalarQ::one().eval(1.5).is_err());
    }

    #[test]
    fn eval_reports_vanishing_denominator() {
        // 1/(2q - 1) blows up exactly at q = 0.5; the error names the scalar
        let a = (ScalarQ::term(2, 2) - ScalarQ::one()).inv().unwrap();
        match a.eval(0.5) {
            Err(QslabError::DenominatorVanishes { scalar, q }) => {
                assert_eq!(q, 0.5);
                assert!(scalar.contains("q"));
            }
            other => panic!("expected a vanishing-denominator error, got {:?}", other),
        }
        assert!(a.eval(0.9).is_ok());
    }

    #[test]
    fn display_is_readable() {
        let a = ScalarQ::q_pow(2) - ScalarQ::q_pow(-1);
        assert_eq!(a.to_string(), "q^2 - q^-1");
        let b = ScalarQ::term(-1, 1);
        assert_eq!(b.to_string(), "-s");
    }
}
