//! The cyclic convolution algebra `F_q[Z/nZ]`, the special vectors attached
//! to a parameter set, the multiplication tensor, per-row weights, and the
//! complexity bounds together with the exact table weight.
//!
//! Conventions, validated against the worked examples: `shift(u, 1)` is the
//! right cyclic shift `(u_{m-1})_m`, convolution is `(u * v)_m =
//! sum_{i+j=m} u_i v_j` with indices mod `n`, and `convolve(u, e_k)` equals
//! `shift(u, k)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{self, Point};
use crate::enb::EnbParams;
use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::poly;

/// A length-n sequence over `F_q` carrying the group-algebra operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVector {
    field: Field,
    entries: Vec<Element>,
}

impl CyclicVector {
    pub fn new(field: &Field, entries: Vec<Element>) -> Result<CyclicVector> {
        for e in &entries {
            if e.field() != field {
                return Err(Error::MismatchedFields);
            }
        }
        Ok(CyclicVector { field: field.clone(), entries })
    }

    pub fn from_u64(field: &Field, entries: &[u64]) -> CyclicVector {
        CyclicVector {
            field: field.clone(),
            entries: entries.iter().map(|&v| field.from_u64(v)).collect(),
        }
    }

    /// The convolution identity `(1, 0, ..., 0)`.
    pub fn unit(field: &Field, n: usize) -> CyclicVector {
        let mut entries = vec![field.zero(); n];
        entries[0] = field.one();
        CyclicVector { field: field.clone(), entries }
    }

    /// The k-th standard basis vector.
    pub fn basis_vector(field: &Field, n: usize, k: usize) -> CyclicVector {
        let mut entries = vec![field.zero(); n];
        entries[k % n] = field.one();
        CyclicVector { field: field.clone(), entries }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    fn check(&self, other: &CyclicVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MismatchedFields);
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// Convolution product `(u * v)_m = sum_{i+j=m mod n} u_i v_j`.
    pub fn convolve(&self, other: &CyclicVector) -> Result<CyclicVector> {
        self.check(other)?;
        let n = self.len();
        let mut entries = vec![self.field.zero(); n];
        for (i, a) in self.entries.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.entries.iter().enumerate() {
                let m = (i + j) % n;
                entries[m] = &entries[m] + &(a * b);
            }
        }
        Ok(CyclicVector { field: self.field.clone(), entries })
    }

    /// Component-wise product.
    pub fn componentwise(&self, other: &CyclicVector) -> Result<CyclicVector> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect();
        Ok(CyclicVector { field: self.field.clone(), entries })
    }

    /// Right cyclic shift by `k`: `shift(u, 1) = (u_{m-1})_m`.
    pub fn shift(&self, k: usize) -> CyclicVector {
        let n = self.len();
        let k = k % n;
        let entries = (0..n).map(|m| self.entries[(m + n - k) % n].clone()).collect();
        CyclicVector { field: self.field.clone(), entries }
    }

    pub fn add(&self, other: &CyclicVector) -> Result<CyclicVector> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(CyclicVector { field: self.field.clone(), entries })
    }

    pub fn sub(&self, other: &CyclicVector) -> Result<CyclicVector> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(CyclicVector { field: self.field.clone(), entries })
    }

    pub fn scaled(&self, c: &Element) -> CyclicVector {
        CyclicVector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Inverse in the convolution algebra, by the extended Euclidean
    /// algorithm modulo `X^n - 1`; reports the obstruction when the vector is
    /// a zero divisor.
    pub fn inverse(&self) -> Result<CyclicVector> {
        let n = self.len();
        let field = &self.field;
        let mut modulus = vec![field.zero(); n + 1];
        modulus[0] = -&field.one();
        modulus[n] = field.one();
        let (g, s, _) = poly::xgcd(field, &self.entries, &modulus)?;
        if poly::degree(&g) != Some(0) {
            return Err(Error::NotInvertible { gcd: g });
        }
        let mut inv = poly::rem(field, &s, &modulus)?;
        inv.resize(n, field.zero());
        Ok(CyclicVector { field: field.clone(), entries: inv })
    }
}

/// The component-wise product of a vector with its own k-shift.
pub fn shift_product(r: &CyclicVector, k: usize) -> CyclicVector {
    r.componentwise(&r.shift(k)).expect("same vector, same length")
}

/// The vectors governing the multiplication table of a parameter set.
#[derive(Clone, Debug)]
pub struct SpecialVectors {
    /// Scaled slope evaluations along the auxiliary orbit.
    pub r: CyclicVector,
    /// x-coordinates along the auxiliary orbit.
    pub rx: CyclicVector,
    /// Convolution inverse of `r`.
    pub r_inv: CyclicVector,
    /// Coordinates of the lifted point's x-coordinate in the basis.
    pub iota: CyclicVector,
}

/// Computes the special vectors of a parameter set.
pub fn special_vectors(params: &EnbParams) -> Result<SpecialVectors> {
    let curve = params.curve();
    let field = params.base();
    let n = params.n();
    let torsion = params.torsion();
    let mut r_entries = Vec::with_capacity(n as usize);
    let mut rx_entries = Vec::with_capacity(n as usize);
    let mut point = params.aux().clone();
    for _ in 0..n {
        let slope = curve::elliptic_slope(curve, &Point::Infinity, torsion, &point)?;
        r_entries.push(&(params.scale() * &slope) + params.offset());
        rx_entries.push(point.x().ok_or(Error::PoleEvaluation)?.clone());
        point = curve.add(&point, torsion);
    }
    let r = CyclicVector::new(field, r_entries)?;
    let rx = CyclicVector::new(field, rx_entries)?;
    let r_inv = r.inverse()?;
    let iota = coordinates(params, params.lifted().x().ok_or(Error::PoleEvaluation)?)?;
    Ok(SpecialVectors { r, rx, r_inv, iota })
}

/// Coordinates of an extension element in the normal basis, through the
/// precomputed change-of-basis inverse.
pub fn coordinates(params: &EnbParams, x: &Element) -> Result<CyclicVector> {
    if x.field() != params.ext() {
        return Err(Error::MismatchedFields);
    }
    let coeffs = x.coeffs().ok_or(Error::MismatchedFields)?;
    let inv = params.coords_inverse();
    let n = inv.len();
    let base = params.base();
    let mut entries = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = base.zero();
        for (c, row) in coeffs.iter().zip(inv) {
            acc = &acc + &(c * &row[j]);
        }
        entries.push(acc);
    }
    CyclicVector::new(base, entries)
}

/// Inverse of [`coordinates`]: the element `sum_k c_k alpha_k`.
pub fn from_coordinates(params: &EnbParams, coords: &CyclicVector) -> Result<Element> {
    if coords.len() != params.n() as usize {
        return Err(Error::LengthMismatch { left: coords.len(), right: params.n() as usize });
    }
    let ext = params.ext();
    let mut acc = ext.zero();
    for (c, alpha) in coords.entries().iter().zip(params.basis()) {
        acc = &acc + &(&ext.embed(c)? * alpha);
    }
    Ok(acc)
}

/// The multiplication tensor of a parameter set, precomputed once.
#[derive(Clone, Debug)]
pub struct MultiplicationTensor {
    special: SpecialVectors,
    scale_sq: Element,
    n: usize,
}

impl MultiplicationTensor {
    pub fn new(params: &EnbParams) -> Result<MultiplicationTensor> {
        let special = special_vectors(params)?;
        let scale_sq = params.scale() * params.scale();
        Ok(MultiplicationTensor { special, scale_sq, n: params.n() as usize })
    }

    pub fn special(&self) -> &SpecialVectors {
        &self.special
    }

    /// Coordinates of the field product from the coordinates of the factors:
    /// five convolutions, two component-wise products, one addition and three
    /// subtractions.
    pub fn multiply(&self, x: &CyclicVector, y: &CyclicVector) -> Result<CyclicVector> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { left: x.len(), right: self.n });
        }
        let dx = x.sub(&x.shift(1))?;
        let dy = y.sub(&y.shift(1))?;
        let dd = dx.componentwise(&dy)?;
        let first = self.special.iota.scaled(&self.scale_sq).convolve(&dd)?;
        let rx_term = self.special.rx.scaled(&self.scale_sq).convolve(&dd)?;
        let cross = self
            .special
            .r
            .convolve(x)?
            .componentwise(&self.special.r.convolve(y)?)?;
        let second = self.special.r_inv.convolve(&cross.sub(&rx_term)?)?;
        first.add(&second)
    }
}

/// One-shot tensor product of two coordinate vectors.
pub fn tensor_multiply(
    params: &EnbParams,
    x: &CyclicVector,
    y: &CyclicVector,
) -> Result<CyclicVector> {
    MultiplicationTensor::new(params)?.multiply(x, y)
}

/// Coordinates of `alpha_0 * alpha_k`, computed by the tensor formula and
/// cross-checked against direct field multiplication; a mismatch is a hard
/// error.
pub fn basis_product_row(params: &EnbParams, k: usize) -> Result<CyclicVector> {
    let tensor = MultiplicationTensor::new(params)?;
    row_with_tensor(params, &tensor, k)
}

fn row_with_tensor(
    params: &EnbParams,
    tensor: &MultiplicationTensor,
    k: usize,
) -> Result<CyclicVector> {
    let n = params.n() as usize;
    let base = params.base();
    let e0 = CyclicVector::unit(base, n);
    let ek = CyclicVector::basis_vector(base, n, k);
    let row = tensor.multiply(&e0, &ek)?;
    let direct = &params.basis()[0] * &params.basis()[k % n];
    let expected = coordinates(params, &direct)?;
    if row != expected {
        return Err(Error::Consistency(
            "tensor row disagrees with direct field multiplication".into(),
        ));
    }
    Ok(row)
}

/// Lower and upper bounds on the table weight derived from the auxiliary
/// vector alone: `(3 + S, 3n + S)` where `S` sums the weights of
/// `r^-1 * shift_product(r, k)` over the middle rows.
pub fn complexity_bounds(r: &CyclicVector) -> Result<(u64, u64)> {
    let n = r.len() as u64;
    let r_inv = r.inverse()?;
    let mut s = 0u64;
    for k in 2..n.saturating_sub(1) {
        let mid = r_inv.convolve(&shift_product(r, k as usize))?;
        s += mid.weight() as u64;
    }
    Ok((3 + s, 3 * n + s))
}

/// A middle row of the multiplication table together with its weight.
#[derive(Clone, Debug)]
pub struct MiddleVector {
    pub k: usize,
    pub vector: CyclicVector,
    pub weight: usize,
}

/// Everything the analysis produces for one parameter set.
#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub special: SpecialVectors,
    /// `r^-1 * shift_product(r, k)` for `k = 2..=n-2`.
    pub middle: Vec<MiddleVector>,
    pub middle_sum: u64,
    /// Coordinates of `alpha_0^2`.
    pub row_first: CyclicVector,
    /// Coordinates of `alpha_0 * alpha_1`.
    pub row_second: CyclicVector,
    /// Coordinates of `alpha_0 * alpha_{n-1}`.
    pub row_last: CyclicVector,
    /// Weights of all `n` rows in order.
    pub row_weights: Vec<usize>,
    pub lower: u64,
    pub upper: u64,
    /// Total weight of the multiplication table.
    pub exact: u64,
    /// Rows `shift_product(r, k)` for `k = 1..=n`.
    pub m_matrix: Vec<CyclicVector>,
}

/// Runs the full analysis: special vectors, middle rows, all table rows with
/// the direct-multiplication cross-check, bounds, and the exact weight.
pub fn complexity_report(params: &EnbParams) -> Result<ComplexityReport> {
    let n = params.n() as usize;
    let tensor = MultiplicationTensor::new(params)?;
    let special = tensor.special().clone();

    let mut middle = Vec::new();
    let mut middle_sum = 0u64;
    for k in 2..=n.saturating_sub(2) {
        let vector = special.r_inv.convolve(&shift_product(&special.r, k))?;
        let weight = vector.weight();
        middle_sum += weight as u64;
        middle.push(MiddleVector { k, vector, weight });
    }

    let mut rows = Vec::with_capacity(n);
    let mut row_weights = Vec::with_capacity(n);
    for k in 0..n {
        let row = row_with_tensor(params, &tensor, k)?;
        row_weights.push(row.weight());
        rows.push(row);
    }
    // the middle rows of the table must coincide with the middle vectors
    for m in &middle {
        if rows[m.k] != m.vector {
            return Err(Error::Consistency(
                "middle table row differs from the reduced convolution".into(),
            ));
        }
    }
    let exact: u64 = row_weights.iter().map(|&w| w as u64).sum();
    let lower = 3 + middle_sum;
    let upper = 3 * n as u64 + middle_sum;
    if !(lower <= exact && exact <= upper) {
        return Err(Error::Consistency("exact weight escapes the bounds".into()));
    }
    // the 2n-1 lower bound holds for every normal basis; no upper bound
    // below n^2 does (small-field enumeration produces bases of weight n^2)
    let n64 = n as u64;
    if !(2 * n64 - 1 <= exact && exact <= n64 * n64) {
        return Err(Error::Consistency("exact weight escapes the generic bounds".into()));
    }

    let m_matrix = (1..=n).map(|k| shift_product(&special.r, k)).collect();

    Ok(ComplexityReport {
        row_first: rows[0].clone(),
        row_second: rows[1 % n].clone(),
        row_last: rows[n - 1].clone(),
        special,
        middle,
        middle_sum,
        row_weights,
        lower,
        upper,
        exact,
        m_matrix,
    })
}

/// The exact multiplication-table weight of a parameter set.
pub fn exact_complexity(params: &EnbParams) -> Result<u64> {
    Ok(complexity_report(params)?.exact)
}
