//! Exact arithmetic in prime fields `F_p`, prime-power base fields `F_q`, and
//! extensions `F_{q^n}` represented as polynomial quotient rings.
//!
//! Fields are immutable descriptors shared through `Arc`; elements carry a
//! handle to their field and are always kept in canonical reduced form, so
//! equality and ordering are plain coefficient comparisons. The element order
//! used everywhere (searches, root selection, non-residue hunting) is
//! lexicographic on coefficient sequences, lowest degree first.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly;

enum Repr {
    Prime { p: u64 },
    Extension { base: Field, modulus: Vec<Element> },
}

/// A prime field or a quotient-ring extension of one.
#[derive(Clone)]
pub struct Field(Arc<Repr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Repr::Prime { p: a }, Repr::Prime { p: b }) => a == b,
            (
                Repr::Extension { base: b1, modulus: m1 },
                Repr::Extension { base: b2, modulus: m2 },
            ) => b1 == b2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Prime { p } => write!(f, "F_{p}"),
            Repr::Extension { base, modulus } => {
                write!(f, "{base:?}[X]/(deg {})", modulus.len() - 1)
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if p >= 1 << 31 {
            return Err(Error::ScaleExceeded);
        }
        Ok(Field(Arc::new(Repr::Prime { p })))
    }

    /// The quotient ring `base[X]/(modulus)`, which is a field exactly when
    /// the modulus is irreducible over the base.
    ///
    /// The modulus is given lowest degree first and must be monic of degree
    /// at least 2.
    pub fn extension(base: &Field, modulus: &[Element]) -> Result<Field> {
        let mut m: Vec<Element> = modulus.to_vec();
        poly::trim(&mut m);
        if m.len() < 3 {
            return Err(Error::InvalidParameter(
                "extension modulus must have degree at least 2".into(),
            ));
        }
        for c in &m {
            if c.field() != base {
                return Err(Error::MismatchedFields);
            }
        }
        if !m.last().unwrap().is_one() {
            return Err(Error::InvalidParameter("modulus must be monic".into()));
        }
        if !poly::is_irreducible(base, &m)? {
            return Err(Error::ReducibleModulus);
        }
        Ok(Field(Arc::new(Repr::Extension { base: base.clone(), modulus: m })))
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Repr::Prime { p } => *p,
            Repr::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Extension degree over the immediate base field (1 for a prime field).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Repr::Prime { .. } => 1,
            Repr::Extension { modulus, .. } => modulus.len() - 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            Repr::Prime { .. } => None,
            Repr::Extension { base, .. } => Some(base),
        }
    }

    pub fn modulus(&self) -> Option<&[Element]> {
        match &*self.0 {
            Repr::Prime { .. } => None,
            Repr::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// Number of elements, or `None` if it does not fit in `u128`.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            Repr::Prime { p } => Some(*p as u128),
            Repr::Extension { base, modulus } => {
                let b = base.order()?;
                let mut acc: u128 = 1;
                for _ in 0..modulus.len() - 1 {
                    acc = acc.checked_mul(b)?;
                }
                Some(acc)
            }
        }
    }

    pub fn zero(&self) -> Element {
        match &*self.0 {
            Repr::Prime { .. } => Element { field: self.clone(), data: Data::Prime(0) },
            Repr::Extension { base, modulus } => Element {
                field: self.clone(),
                data: Data::Ext(vec![base.zero(); modulus.len() - 1]),
            },
        }
    }

    pub fn one(&self) -> Element {
        self.from_u64(1)
    }

    /// The image of an integer under the canonical map `Z -> F`.
    pub fn from_u64(&self, v: u64) -> Element {
        match &*self.0 {
            Repr::Prime { p } => Element { field: self.clone(), data: Data::Prime(v % p) },
            Repr::Extension { base, modulus } => {
                let mut coeffs = vec![base.zero(); modulus.len() - 1];
                coeffs[0] = base.from_u64(v);
                Element { field: self.clone(), data: Data::Ext(coeffs) }
            }
        }
    }

    /// Builds an extension element from base-field coefficients, lowest
    /// degree first. Short inputs are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[Element]) -> Result<Element> {
        match &*self.0 {
            Repr::Prime { .. } => Err(Error::InvalidParameter(
                "prime-field elements have no coefficient vector".into(),
            )),
            Repr::Extension { base, modulus } => {
                let deg = modulus.len() - 1;
                if coeffs.len() > deg {
                    return Err(Error::InvalidParameter(
                        "coefficient vector longer than the extension degree".into(),
                    ));
                }
                let mut data = Vec::with_capacity(deg);
                for c in coeffs {
                    if c.field() != base {
                        return Err(Error::MismatchedFields);
                    }
                    data.push(c.clone());
                }
                data.resize(deg, base.zero());
                Ok(Element { field: self.clone(), data: Data::Ext(data) })
            }
        }
    }

    /// The residue class of the indeterminate (only for extensions).
    pub fn generator(&self) -> Result<Element> {
        match &*self.0 {
            Repr::Prime { .. } => Err(Error::InvalidParameter(
                "prime fields have no polynomial generator".into(),
            )),
            Repr::Extension { base, .. } => self.from_coeffs(&[base.zero(), base.one()]),
        }
    }

    /// Embeds an element of the immediate base field (or of this field
    /// itself) into this field.
    pub fn embed(&self, x: &Element) -> Result<Element> {
        if x.field() == self {
            return Ok(x.clone());
        }
        match &*self.0 {
            Repr::Extension { base, .. } if x.field() == base => {
                self.from_coeffs(core::slice::from_ref(x))
            }
            _ => Err(Error::MismatchedFields),
        }
    }

    /// All field elements in canonical order (lexicographic on coefficient
    /// sequences, lowest degree first, starting from zero).
    pub fn elements(&self) -> Elements {
        Elements { next: Some(self.zero()) }
    }

    fn data_add(&self, a: &Data, b: &Data) -> Data {
        match (&*self.0, a, b) {
            (Repr::Prime { p }, Data::Prime(x), Data::Prime(y)) => Data::Prime((x + y) % p),
            (Repr::Extension { .. }, Data::Ext(u), Data::Ext(v)) => {
                Data::Ext(u.iter().zip(v).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("element data does not match its field"),
        }
    }

    fn data_sub(&self, a: &Data, b: &Data) -> Data {
        match (&*self.0, a, b) {
            (Repr::Prime { p }, Data::Prime(x), Data::Prime(y)) => {
                Data::Prime((x + p - y) % p)
            }
            (Repr::Extension { .. }, Data::Ext(u), Data::Ext(v)) => {
                Data::Ext(u.iter().zip(v).map(|(x, y)| x - y).collect())
            }
            _ => unreachable!("element data does not match its field"),
        }
    }

    fn data_mul(&self, a: &Data, b: &Data) -> Data {
        match (&*self.0, a, b) {
            (Repr::Prime { p }, Data::Prime(x), Data::Prime(y)) => Data::Prime(x * y % p),
            (Repr::Extension { base, modulus }, Data::Ext(u), Data::Ext(v)) => {
                let prod = poly::mul(base, u, v);
                let mut rem = poly::rem(base, &prod, modulus)
                    .expect("modulus is monic, division cannot fail");
                rem.resize(modulus.len() - 1, base.zero());
                Data::Ext(rem)
            }
            _ => unreachable!("element data does not match its field"),
        }
    }

    fn data_neg(&self, a: &Data) -> Data {
        match (&*self.0, a) {
            (Repr::Prime { p }, Data::Prime(x)) => Data::Prime((p - x) % p),
            (Repr::Extension { .. }, Data::Ext(u)) => Data::Ext(u.iter().map(|x| -x).collect()),
            _ => unreachable!("element data does not match its field"),
        }
    }
}

/// Iterator over all elements of a field in canonical order.
pub struct Elements {
    next: Option<Element>,
}

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let cur = self.next.take()?;
        self.next = cur.successor();
        Some(cur)
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Data {
    Prime(u64),
    Ext(Vec<Element>),
}

/// An element of a [`Field`], stored as its canonical representative.
#[derive(Clone)]
pub struct Element {
    field: Field,
    data: Data,
}

impl Element {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Prime(v) => *v == 0,
            Data::Ext(cs) => cs.iter().all(Element::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The residue value of a prime-field element.
    pub fn value(&self) -> Option<u64> {
        match &self.data {
            Data::Prime(v) => Some(*v),
            Data::Ext(_) => None,
        }
    }

    /// Base-field coefficients of an extension element, lowest degree first.
    pub fn coeffs(&self) -> Option<&[Element]> {
        match &self.data {
            Data::Prime(_) => None,
            Data::Ext(cs) => Some(cs),
        }
    }

    pub fn inv(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&*self.field.0, &self.data) {
            (Repr::Prime { p }, Data::Prime(v)) => {
                let mut result = 1u64;
                let mut base = *v;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Ok(Element { field: self.field.clone(), data: Data::Prime(result) })
            }
            (Repr::Extension { base, modulus }, Data::Ext(cs)) => {
                let (g, s, _) = poly::xgcd(base, cs, modulus)?;
                if poly::degree(&g) != Some(0) {
                    return Err(Error::DivisionByZero);
                }
                let mut s = poly::rem(base, &s, modulus)?;
                s.resize(modulus.len() - 1, base.zero());
                Ok(Element { field: self.field.clone(), data: Data::Ext(s) })
            }
            _ => unreachable!("element data does not match its field"),
        }
    }

    pub fn div(&self, rhs: &Element) -> Result<Element> {
        Ok(self * &rhs.inv()?)
    }

    /// Square-and-multiply exponentiation with a non-negative exponent.
    pub fn pow(&self, mut e: u128) -> Element {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// The relative Frobenius `x -> x^q`, where `q` is the order of the base
    /// field. Fixes prime-field elements.
    pub fn frobenius(&self) -> Element {
        match &*self.field.0 {
            Repr::Prime { .. } => self.clone(),
            Repr::Extension { base, .. } => {
                let q = base.order().expect("base field order exceeds u128");
                self.pow(q)
            }
        }
    }

    /// The next element in canonical order, or `None` at the maximum.
    pub fn successor(&self) -> Option<Element> {
        match (&*self.field.0, &self.data) {
            (Repr::Prime { p }, Data::Prime(v)) => {
                if v + 1 < *p {
                    Some(Element { field: self.field.clone(), data: Data::Prime(v + 1) })
                } else {
                    None
                }
            }
            (Repr::Extension { base, .. }, Data::Ext(cs)) => {
                // odometer with the highest-degree coefficient fastest, so the
                // order is lexicographic on (c_0, c_1, ...)
                let mut cs = cs.clone();
                for i in (0..cs.len()).rev() {
                    match cs[i].successor() {
                        Some(next) => {
                            cs[i] = next;
                            return Some(Element {
                                field: self.field.clone(),
                                data: Data::Ext(cs),
                            });
                        }
                        None => cs[i] = base.zero(),
                    }
                }
                None
            }
            _ => unreachable!("element data does not match its field"),
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.data == other.data
    }
}

impl Eq for Element {}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.data, &other.data) {
            (Data::Prime(a), Data::Prime(b)) => a.cmp(b),
            (Data::Ext(a), Data::Ext(b)) => a.cmp(b),
            (Data::Prime(_), Data::Ext(_)) => Ordering::Less,
            (Data::Ext(_), Data::Prime(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data {
            Data::Prime(v) => write!(f, "{v}"),
            Data::Ext(cs) => {
                write!(f, "[")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

macro_rules! check_same_field {
    ($a:expr, $b:expr) => {
        assert!(
            $a.field == $b.field,
            "arithmetic on elements of different fields"
        );
    };
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        check_same_field!(self, rhs);
        Element { field: self.field.clone(), data: self.field.data_add(&self.data, &rhs.data) }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        check_same_field!(self, rhs);
        Element { field: self.field.clone(), data: self.field.data_sub(&self.data, &rhs.data) }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        check_same_field!(self, rhs);
        Element { field: self.field.clone(), data: self.field.data_mul(&self.data, &rhs.data) }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { field: self.field.clone(), data: self.field.data_neg(&self.data) }
    }
}

/// Square root by Tonelli-Shanks for odd fields, by the inverse Frobenius in
/// characteristic 2. Returns `None` for quadratic non-residues.
pub fn sqrt(x: &Element) -> Result<Option<Element>> {
    let field = x.field();
    let q = field.order().ok_or(Error::ScaleExceeded)?;
    if x.is_zero() {
        return Ok(Some(field.zero()));
    }
    if field.characteristic() == 2 {
        // squaring is bijective; the root is x^(q/2)
        return Ok(Some(x.pow(q / 2)));
    }
    if x.pow((q - 1) / 2) != field.one() {
        return Ok(None);
    }
    let mut m = q - 1;
    let mut s = 0u32;
    while m % 2 == 0 {
        m /= 2;
        s += 1;
    }
    let non_residue = field
        .elements()
        .find(|z| !z.is_zero() && z.pow((q - 1) / 2) != field.one())
        .ok_or_else(|| Error::Consistency("no quadratic non-residue found".into()))?;
    let mut c = non_residue.pow(m);
    let mut t = x.pow(m);
    let mut r = x.pow((m + 1) / 2);
    let mut level = s;
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = &tt * &tt;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..level - i - 1 {
            b = &b * &b;
        }
        level = i;
        c = &b * &b;
        t = &t * &c;
        r = &r * &b;
    }
    Ok(Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn random_element(field: &Field, state: &mut u64) -> Element {
        let p = field.characteristic();
        match field.modulus() {
            None => field.from_u64(splitmix(state) % p),
            Some(_) => {
                let base = field.base().unwrap().clone();
                let coeffs: Vec<Element> =
                    (0..field.degree()).map(|_| random_element(&base, state)).collect();
                field.from_coeffs(&coeffs).unwrap()
            }
        }
    }

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    fn f49() -> Field {
        let f7 = Field::prime(7).unwrap();
        // X^2 + 1, irreducible since -1 is a non-residue mod 7
        let m = [f7.one(), f7.zero(), f7.one()];
        Field::extension(&f7, &m).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        assert!(Field::prime(13).is_ok());
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::prime(12).unwrap_err(), Error::CompositeCharacteristic(12));
        assert_eq!(Field::prime(1).unwrap_err(), Error::CompositeCharacteristic(1));
    }

    #[test]
    fn extension_construction() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f49().order(), Some(49));
        // X^2 - 1 = (X-1)(X+1)
        let m = [f7.from_u64(6), f7.zero(), f7.one()];
        assert_eq!(Field::extension(&f7, &m).unwrap_err(), Error::ReducibleModulus);
    }

    #[test]
    fn inverse_by_exhaustive_search() {
        let f = f13();
        // independent oracle: scan all candidates for the product 1
        let x = f.from_u64(6);
        let found = f
            .elements()
            .find(|y| (&x * y).is_one())
            .unwrap();
        assert_eq!(found, f.from_u64(11));
        assert_eq!(x.inv().unwrap(), found);
        // inv(c) = inv(11) -> 6, the scalar pair of the first worked example
        assert_eq!(f.from_u64(11).inv().unwrap(), f.from_u64(6));
    }

    #[test]
    fn pow_identity_exponent() {
        let f = f49();
        let mut state = 7u64;
        for _ in 0..20 {
            let x = random_element(&f, &mut state);
            assert_eq!(x.pow(1), x);
            assert!(x.pow(0).is_one());
        }
    }

    #[test]
    fn division_by_zero() {
        let f = f13();
        assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!(f.one().div(&f.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn field_axioms_randomized() {
        for field in [f13(), f49()] {
            let mut state = 42u64;
            for _ in 0..1000 {
                let a = random_element(&field, &mut state);
                let b = random_element(&field, &mut state);
                let c = random_element(&field, &mut state);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&(&a - &b) + &b, a);
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_ring_homomorphism() {
        let field = f49();
        let mut state = 3u64;
        for _ in 0..200 {
            let a = random_element(&field, &mut state);
            let b = random_element(&field, &mut state);
            assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
            assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
        }
    }

    #[test]
    fn frobenius_fixes_base_and_has_order_n() {
        let field = f49();
        let c = field.from_u64(5);
        assert_eq!(c.frobenius(), c);
        let mut state = 11u64;
        for _ in 0..50 {
            let x = random_element(&field, &mut state);
            let mut y = x.clone();
            for _ in 0..field.degree() {
                y = y.frobenius();
            }
            assert_eq!(y, x);
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let f = f49();
        let els: Vec<Element> = f.elements().collect();
        assert_eq!(els.len(), 49);
        let mut sorted = els.clone();
        sorted.sort();
        assert_eq!(els, sorted);
        // (0,1) < (1,0): constant coefficient dominates
        let base = f.base().unwrap().clone();
        let a = f.from_coeffs(&[base.zero(), base.one()]).unwrap();
        let b = f.from_coeffs(&[base.one(), base.zero()]).unwrap();
        assert!(a < b);
    }

    #[test]
    fn sqrt_roundtrip() {
        for field in [f13(), f49()] {
            let mut state = 99u64;
            for _ in 0..100 {
                let x = random_element(&field, &mut state);
                let square = &x * &x;
                let r = sqrt(&square).unwrap().expect("square must have a root");
                assert_eq!(&r * &r, square);
            }
        }
        // char-2 square roots always exist
        let f2 = Field::prime(2).unwrap();
        let m = [f2.one(), f2.one(), f2.one()]; // X^2 + X + 1
        let f4 = Field::extension(&f2, &m).unwrap();
        for x in f4.elements() {
            let r = sqrt(&x).unwrap().unwrap();
            assert_eq!(&r * &r, x);
        }
    }
}
