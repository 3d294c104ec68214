//! Dense polynomial arithmetic over a [`Field`], used for quotient-ring
//! element arithmetic, irreducibility testing, the isogeny rational maps and
//! convolution inverses.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros after `trim`. The zero polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Element, Field};

pub fn trim(f: &mut Vec<Element>) {
    while f.last().is_some_and(Element::is_zero) {
        f.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(f: &[Element]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn add(field: &Field, f: &[Element], g: &[Element]) -> Vec<Element> {
    let n = f.len().max(g.len());
    let zero = field.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).unwrap_or(&zero);
        let b = g.get(i).unwrap_or(&zero);
        out.push(a + b);
    }
    trim(&mut out);
    out
}

pub fn sub(field: &Field, f: &[Element], g: &[Element]) -> Vec<Element> {
    let n = f.len().max(g.len());
    let zero = field.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).unwrap_or(&zero);
        let b = g.get(i).unwrap_or(&zero);
        out.push(a - b);
    }
    trim(&mut out);
    out
}

pub fn mul(field: &Field, f: &[Element], g: &[Element]) -> Vec<Element> {
    if degree(f).is_none() || degree(g).is_none() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    trim(&mut out);
    out
}

pub fn scale(f: &[Element], c: &Element) -> Vec<Element> {
    let mut out: Vec<Element> = f.iter().map(|a| a * c).collect();
    trim(&mut out);
    out
}

/// Euclidean division; the divisor's leading coefficient must be invertible.
pub fn div_rem(field: &Field, f: &[Element], g: &[Element]) -> Result<(Vec<Element>, Vec<Element>)> {
    let gdeg = degree(g).ok_or(Error::DivisionByZero)?;
    let inv_lead = g[gdeg].inv()?;
    let mut r: Vec<Element> = f.to_vec();
    trim(&mut r);
    if r.len() < gdeg + 1 {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![field.zero(); r.len() - gdeg];
    while let Some(rdeg) = degree(&r) {
        if rdeg < gdeg {
            break;
        }
        let c = &r[rdeg] * &inv_lead;
        let shift = rdeg - gdeg;
        q[shift] = c.clone();
        for i in 0..=gdeg {
            r[i + shift] = &r[i + shift] - &(&c * &g[i]);
        }
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}

pub fn rem(field: &Field, f: &[Element], g: &[Element]) -> Result<Vec<Element>> {
    Ok(div_rem(field, f, g)?.1)
}

/// Monic greatest common divisor.
pub fn gcd(field: &Field, f: &[Element], g: &[Element]) -> Result<Vec<Element>> {
    let mut a: Vec<Element> = f.to_vec();
    let mut b: Vec<Element> = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while degree(&b).is_some() {
        let r = rem(field, &a, &b)?;
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = a[d].inv()?;
        a = scale(&a, &inv);
    }
    Ok(a)
}

/// Extended Euclid: returns monic `g = gcd(f, m)` and `s, t` with
/// `s*f + t*m = g`.
pub fn xgcd(
    field: &Field,
    f: &[Element],
    m: &[Element],
) -> Result<(Vec<Element>, Vec<Element>, Vec<Element>)> {
    let mut r0: Vec<Element> = f.to_vec();
    let mut r1: Vec<Element> = m.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![field.one()];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![field.one()];
    while degree(&r1).is_some() {
        let (q, r) = div_rem(field, &r0, &r1)?;
        let s = sub(field, &s0, &mul(field, &q, &s1));
        let t = sub(field, &t0, &mul(field, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(d) = degree(&r0) {
        let inv = r0[d].inv()?;
        r0 = scale(&r0, &inv);
        s0 = scale(&s0, &inv);
        t0 = scale(&t0, &inv);
    }
    Ok((r0, s0, t0))
}

pub fn eval(field: &Field, f: &[Element], x: &Element) -> Element {
    let mut acc = field.zero();
    for c in f.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// `f^e mod m` by square-and-multiply.
pub fn pow_mod(field: &Field, f: &[Element], mut e: u128, m: &[Element]) -> Result<Vec<Element>> {
    let mut result = vec![field.one()];
    let mut base = rem(field, f, m)?;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(field, &mul(field, &result, &base), m)?;
        }
        base = rem(field, &mul(field, &base, &base), m)?;
        e >>= 1;
    }
    Ok(result)
}

/// Irreducibility over the coefficient field: `h` of degree `d` is
/// irreducible iff `X^(q^d) = X (mod h)` and `gcd(X^(q^(d/l)) - X, h) = 1`
/// for every prime `l` dividing `d`.
pub fn is_irreducible(field: &Field, h: &[Element]) -> Result<bool> {
    let d = degree(h).ok_or(Error::DivisionByZero)?;
    if d == 0 {
        return Err(Error::InvalidParameter("constant polynomial".into()));
    }
    if d == 1 {
        return Ok(true);
    }
    let q = field.order().ok_or(Error::ScaleExceeded)?;
    let x = vec![field.zero(), field.one()];
    // q-power towers: powers[i] = X^(q^i) mod h
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(rem(field, &x, h)?);
    for _ in 0..d {
        let last = powers.last().unwrap();
        powers.push(pow_mod(field, last, q, h)?);
    }
    if degree(&sub(field, &powers[d], &x)).is_some() {
        return Ok(false);
    }
    for l in prime_divisors(d as u64) {
        let g = gcd(field, &sub(field, &powers[d / l as usize], &x), h)?;
        if degree(&g) != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Prime divisors of `n` in ascending order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorization as (prime, multiplicity) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
