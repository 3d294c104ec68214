//! Assembly of the full parameter bundle behind an elliptic normal basis:
//! torsion point, quotient isogeny, field modulus, lifted point, scalars,
//! auxiliary point and the basis itself, plus the deterministic end-to-end
//! search with override support for replaying known parameter sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{self, Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::isogeny::Isogeny;
use crate::poly;

/// Caps on the deterministic searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Maximum number of curve coefficient tuples examined.
    pub curves: u64,
    /// Maximum number of candidate generator points per curve.
    pub points: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { curves: 1_000_000, points: 10_000 }
    }
}

/// Pins for replaying a known parameter set; any subset may be given.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub curve: Option<[Element; 5]>,
    pub torsion: Option<Point>,
    pub generator: Option<Point>,
    pub aux: Option<Point>,
    pub scale: Option<Element>,
    pub offset: Option<Element>,
}

impl Overrides {
    /// Convenience constructor from prime-subfield integer coordinates.
    pub fn from_integers(
        base: &Field,
        curve: Option<[u64; 5]>,
        torsion: Option<(u64, u64)>,
        generator: Option<(u64, u64)>,
        aux: Option<(u64, u64)>,
        scale: Option<u64>,
        offset: Option<u64>,
    ) -> Overrides {
        let pt = |(x, y): (u64, u64)| Point::Affine(base.from_u64(x), base.from_u64(y));
        Overrides {
            curve: curve.map(|a| a.map(|c| base.from_u64(c))),
            torsion: torsion.map(pt),
            generator: generator.map(pt),
            aux: aux.map(pt),
            scale: scale.map(|s| base.from_u64(s)),
            offset: offset.map(|o| base.from_u64(o)),
        }
    }
}

/// The complete data of one elliptic normal basis.
///
/// Invariants maintained by construction: the torsion point has exact order
/// `n`; `phi(b) = b + t` and `n*b != O` for the lifted point; the scalars
/// satisfy `a*c + n*b = 1` with `a != 0`; the auxiliary point is outside the
/// n-torsion; the basis is linearly independent and Frobenius-cyclic with
/// `alpha_{k+1} = phi(alpha_k)`.
#[derive(Clone, Debug)]
pub struct EnbParams {
    q: u64,
    n: u64,
    base: Field,
    curve: Curve,
    torsion: Point,
    isogeny: Isogeny,
    generator: Point,
    modulus: Vec<Element>,
    ext: Field,
    lifted: Point,
    constant: Element,
    scale: Element,
    offset: Element,
    aux: Point,
    basis: Vec<Element>,
    coords_inv: Vec<Vec<Element>>,
    index: u128,
    advisory: bool,
}

impl EnbParams {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn torsion(&self) -> &Point {
        &self.torsion
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    /// The quotient-curve point whose preimage polynomial is the field
    /// modulus; equals the image of the lifted point.
    pub fn generator(&self) -> &Point {
        &self.generator
    }

    pub fn modulus(&self) -> &[Element] {
        &self.modulus
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    /// The lifted point `b` with `phi(b) = b + t` and `n*b != O`.
    pub fn lifted(&self) -> &Point {
        &self.lifted
    }

    /// The constant sum of the slope functions.
    pub fn constant(&self) -> &Element {
        &self.constant
    }

    /// The scalar multiplying the slope evaluations.
    pub fn scale(&self) -> &Element {
        &self.scale
    }

    /// The additive offset of the evaluations.
    pub fn offset(&self) -> &Element {
        &self.offset
    }

    /// The auxiliary rational point outside the n-torsion.
    pub fn aux(&self) -> &Point {
        &self.aux
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// The arithmetic invariant of `(q, n)` and whether it satisfies the
    /// sufficient existence condition (advisory only).
    pub fn existence_index(&self) -> u128 {
        self.index
    }

    pub fn advisory(&self) -> bool {
        self.advisory
    }

    pub(crate) fn coords_inverse(&self) -> &[Vec<Element>] {
        &self.coords_inv
    }

    /// End-to-end deterministic construction for `F_q` with extension degree
    /// `n`, honoring overrides. `q` may be a prime power; the base field then
    /// uses the first irreducible modulus in canonical order.
    pub fn compute(
        q: u64,
        n: u64,
        overrides: &Overrides,
        budget: &SearchBudget,
    ) -> Result<EnbParams> {
        let base = canonical_base_field(q)?;
        Self::compute_in(&base, n, overrides, budget)
    }

    /// Same as [`EnbParams::compute`] over an explicitly constructed base
    /// field.
    pub fn compute_in(
        base: &Field,
        n: u64,
        overrides: &Overrides,
        budget: &SearchBudget,
    ) -> Result<EnbParams> {
        if n < 2 {
            return Err(Error::InvalidParameter("n must be at least 2".into()));
        }
        let q128 = base.order().ok_or(Error::ScaleExceeded)?;
        if q128 > curve::DESK_LIMIT {
            return Err(Error::ScaleExceeded);
        }
        let q = q128 as u64;
        let index = curve::existence_index(q, n);
        let advisory = curve::existence_advisory(q, n);

        let mut last_error = Error::ParameterSearchExhausted;
        let candidates = CurveCandidates::new(base, overrides.curve.clone(), budget.curves);
        for candidate in candidates {
            let curve = match candidate {
                Ok(c) => c,
                Err(e) => {
                    // an explicitly overridden curve must be valid
                    if overrides.curve.is_some() {
                        return Err(e);
                    }
                    continue;
                }
            };
            match Self::attempt(
                base, &curve, q, n, overrides, budget, index, advisory,
            ) {
                Ok(params) => return Ok(params),
                Err(e) => {
                    // pinned curves report their own failure instead of
                    // searching onward
                    if overrides.curve.is_some() {
                        return Err(e);
                    }
                    last_error = e;
                }
            }
        }
        match last_error {
            // surface input mistakes; everything else means exhaustion
            Error::InvalidParameter(m) => Err(Error::InvalidParameter(m)),
            _ => Err(Error::ParameterSearchExhausted),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn attempt(
        base: &Field,
        curve: &Curve,
        q: u64,
        n: u64,
        overrides: &Overrides,
        budget: &SearchBudget,
        index: u128,
        advisory: bool,
    ) -> Result<EnbParams> {
        let group_order = curve.group_order()?;
        if group_order % n != 0 {
            return Err(Error::NoTorsionPoint { order: n });
        }
        let torsion = match &overrides.torsion {
            Some(t) => {
                if !curve.contains(t) {
                    return Err(Error::InvalidParameter(
                        "torsion override is not on the curve".into(),
                    ));
                }
                let actual = curve.point_order_given(t, group_order);
                if actual != n {
                    return Err(Error::KernelOrderMismatch { expected: n, actual });
                }
                t.clone()
            }
            None => find_torsion_point(curve, n)?,
        };
        let aux = match &overrides.aux {
            Some(r) => {
                if !curve.contains(r) {
                    return Err(Error::InvalidParameter(
                        "auxiliary override is not on the curve".into(),
                    ));
                }
                if curve.mul(r, n).is_infinity() {
                    return Err(Error::NoAuxiliaryPoint);
                }
                r.clone()
            }
            None => choose_aux_point(curve, n)?,
        };
        let constant = curve::slope_sum_constant(curve, &torsion, n)?;
        let (scale, offset) = match (&overrides.scale, &overrides.offset) {
            (None, None) => normalizing_scalars(&constant, n)?,
            (s, o) => {
                let scale = s.as_ref().cloned().unwrap_or_else(|| base.zero());
                let offset = o.as_ref().cloned().unwrap_or_else(|| base.zero());
                if scale.is_zero() {
                    return Err(Error::InvalidParameter(
                        "scale override must be nonzero".into(),
                    ));
                }
                let n_elem = base.from_u64(n % base.characteristic());
                if &(&scale * &constant) + &(&n_elem * &offset) != base.one() {
                    return Err(Error::InvalidParameter(
                        "scalar overrides violate a*c + n*b = 1".into(),
                    ));
                }
                (scale, offset)
            }
        };
        let isogeny = Isogeny::quotient(curve, &torsion, n)?;

        let mut last_error = Error::NoGeneratorFound;
        let mut tried = 0u64;
        let mut seen_x: Vec<Element> = Vec::new();
        let candidates: Vec<Point> = match &overrides.generator {
            Some(a) => [a.clone()].to_vec(),
            None => isogeny.codomain().points()?,
        };
        #[allow(clippy::explicit_counter_loop)]
        for a in candidates {
            if tried >= budget.points {
                break;
            }
            tried += 1;
            // negatives share the preimage polynomial
            let ax = a.x().expect("affine candidates only").clone();
            if seen_x.contains(&ax) {
                continue;
            }
            seen_x.push(ax);
            let h = match isogeny.preimage_polynomial(&a) {
                Ok(h) => h,
                Err(e) => {
                    last_error = e;
                    continue;
                }
            };
            if !poly::is_irreducible(base, &h)? {
                last_error = Error::NoGeneratorFound;
                continue;
            }
            let (ext, lifted) = match lift_preimage(&isogeny, &a, &torsion) {
                Ok(pair) => pair,
                Err(e) => {
                    last_error = e;
                    continue;
                }
            };
            let basis = match build_basis(curve, &torsion, &lifted, &scale, &offset, n) {
                Ok(b) => b,
                Err(e) => {
                    last_error = e;
                    continue;
                }
            };
            let coords_inv = match invert_basis_matrix(base, &basis) {
                Some(m) => m,
                None => {
                    last_error = Error::NotABasis;
                    continue;
                }
            };
            // store the actual image of the lifted point, so that the
            // bundled generator always satisfies I(b) = a
            let generator = isogeny.apply(&lifted)?;
            let generator = match &generator {
                Point::Infinity => return Err(Error::Consistency("lift landed in kernel".into())),
                Point::Affine(x, y) => {
                    let descend = |e: &Element| -> Result<Element> {
                        let cs = e.coeffs().ok_or(Error::MismatchedFields)?;
                        if cs.iter().skip(1).any(|c| !c.is_zero()) {
                            return Err(Error::Consistency(
                                "isogeny image is not rational".into(),
                            ));
                        }
                        Ok(cs[0].clone())
                    };
                    Point::Affine(descend(x)?, descend(y)?)
                }
            };
            return Ok(EnbParams {
                q,
                n,
                base: base.clone(),
                curve: curve.clone(),
                torsion,
                isogeny,
                generator,
                modulus: h,
                ext,
                lifted,
                constant,
                scale,
                offset,
                aux,
                basis,
                coords_inv,
                index,
                advisory,
            });
        }
        Err(last_error)
    }
}

/// The base field for `q = p^e`: the prime field itself, or its extension by
/// the first irreducible monic modulus in canonical order.
pub fn canonical_base_field(q: u64) -> Result<Field> {
    let factors = poly::factorize(q);
    if factors.len() != 1 {
        return Err(Error::InvalidParameter("q must be a prime power".into()));
    }
    let (p, e) = factors[0];
    let base = Field::prime(p)?;
    if e == 1 {
        return Ok(base);
    }
    let mut lower = vec![base.zero(); e as usize];
    loop {
        let mut modulus = lower.clone();
        modulus.push(base.one());
        if poly::is_irreducible(&base, &modulus)? {
            return Field::extension(&base, &modulus);
        }
        if !increment_lex(&base, &mut lower) {
            return Err(Error::Consistency("no irreducible modulus found".into()));
        }
    }
}

/// Advances a coefficient vector in the canonical order (lexicographic with
/// the lowest-degree coefficient most significant).
fn increment_lex(base: &Field, coeffs: &mut [Element]) -> bool {
    for i in (0..coeffs.len()).rev() {
        match coeffs[i].successor() {
            Some(next) => {
                coeffs[i] = next;
                return true;
            }
            None => coeffs[i] = base.zero(),
        }
    }
    false
}

/// Lexicographic enumeration of curve coefficient tuples, budget-limited.
struct CurveCandidates<'a> {
    base: &'a Field,
    fixed: Option<[Element; 5]>,
    state: Option<Vec<Element>>,
    remaining: u64,
}

impl<'a> CurveCandidates<'a> {
    fn new(base: &'a Field, fixed: Option<[Element; 5]>, budget: u64) -> Self {
        CurveCandidates {
            base,
            fixed,
            state: Some(vec![base.zero(); 5]),
            remaining: budget,
        }
    }
}

impl Iterator for CurveCandidates<'_> {
    type Item = Result<Curve>;

    fn next(&mut self) -> Option<Result<Curve>> {
        if let Some(coeffs) = self.fixed.take() {
            self.state = None;
            return Some(Curve::new(self.base.clone(), coeffs));
        }
        loop {
            let state = self.state.as_mut()?;
            if self.remaining == 0 {
                self.state = None;
                return None;
            }
            self.remaining -= 1;
            let coeffs: [Element; 5] = state.clone().try_into().unwrap();
            let advanced = increment_lex(self.base, state);
            if !advanced {
                self.state = None;
            }
            match Curve::new(self.base.clone(), coeffs) {
                Ok(curve) => return Some(Ok(curve)),
                Err(Error::SingularCurve) => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// First point of exact order `n` in canonical enumeration.
pub fn find_torsion_point(curve: &Curve, n: u64) -> Result<Point> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let group_order = curve.group_order()?;
    if group_order % n != 0 {
        return Err(Error::NoTorsionPoint { order: n });
    }
    for p in curve.points()? {
        if curve.point_order_given(&p, group_order) == n {
            return Ok(p);
        }
    }
    Err(Error::NoTorsionPoint { order: n })
}

/// First rational point with `n*R != O` in canonical enumeration.
pub fn choose_aux_point(curve: &Curve, n: u64) -> Result<Point> {
    for p in curve.points()? {
        if !curve.mul(&p, n).is_infinity() {
            return Ok(p);
        }
    }
    Err(Error::NoAuxiliaryPoint)
}

/// The scalar pair `(a, b)` with `a*c + n*b = 1`: `(c^-1, 0)` when the
/// constant is nonzero, `(1, (1 - c) * n^-1)` otherwise.
pub fn normalizing_scalars(constant: &Element, n: u64) -> Result<(Element, Element)> {
    let field = constant.field().clone();
    if !constant.is_zero() {
        return Ok((constant.inv()?, field.zero()));
    }
    let n_elem = field.from_u64(n % field.characteristic());
    if n_elem.is_zero() {
        return Err(Error::NoScalarSolution);
    }
    let offset = (&field.one() - constant).div(&n_elem)?;
    Ok((field.one(), offset))
}

/// Builds `F_{q^n}` from the preimage polynomial of `a` and returns it with
/// the point `b` over it satisfying `phi(b) = b + t` and `n*b != O`.
pub fn lift_preimage(isogeny: &Isogeny, a: &Point, torsion: &Point) -> Result<(Field, Point)> {
    let base = isogeny.domain().field();
    let n = isogeny.kernel_order();
    let h = isogeny.preimage_polynomial(a)?;
    let ext = Field::extension(base, &h)?;
    let curve_ext = isogeny.domain().base_change(&ext)?;
    let torsion_ext = Curve::embed_point(&ext, torsion)?;
    let x = ext.generator()?;
    for y in curve_ext.solve_y(&x)? {
        let b = Point::Affine(x.clone(), y);
        let frob = Point::Affine(
            b.x().unwrap().frobenius(),
            b.y().unwrap().frobenius(),
        );
        if frob != curve_ext.add(&b, &torsion_ext) {
            continue;
        }
        if curve_ext.mul(&b, n).is_infinity() {
            continue;
        }
        return Ok((ext, b));
    }
    Err(Error::FrobeniusConditionFailed)
}

/// The basis elements `alpha_k = a * f_k(-b) + b_offset`, where `f_k` is the
/// slope function with poles at `k*t` and `(k+1)*t`.
///
/// Evaluating the family at the negative of the lifted point makes the
/// sequence ascend under Frobenius (`alpha_{k+1} = phi(alpha_k)` given
/// `phi(b) = b + t`); evaluating at `b` itself would make it descend.
pub fn build_basis(
    curve: &Curve,
    torsion: &Point,
    lifted: &Point,
    scale: &Element,
    offset: &Element,
    n: u64,
) -> Result<Vec<Element>> {
    let ext = lifted.x().ok_or(Error::PoleEvaluation)?.field().clone();
    let curve_ext = curve.base_change(&ext)?;
    let torsion_ext = Curve::embed_point(&ext, torsion)?;
    let scale_ext = ext.embed(scale)?;
    let offset_ext = ext.embed(offset)?;
    let eval_point = curve_ext.negate(lifted);
    let mut basis = Vec::with_capacity(n as usize);
    let mut pole_a = Point::Infinity;
    for _ in 0..n {
        let pole_b = curve_ext.add(&pole_a, &torsion_ext);
        let slope = curve::elliptic_slope(&curve_ext, &pole_a, &pole_b, &eval_point)?;
        basis.push(&(&scale_ext * &slope) + &offset_ext);
        pole_a = pole_b;
    }
    // Frobenius-cyclic by construction; check it anyway
    for k in 0..n as usize {
        if basis[k].frobenius() != basis[(k + 1) % n as usize] {
            return Err(Error::Consistency("basis is not Frobenius-cyclic".into()));
        }
    }
    if invert_basis_matrix(curve.field(), &basis).is_none() {
        return Err(Error::NotABasis);
    }
    Ok(basis)
}

/// Inverse of the matrix whose rows are the basis elements' coefficient
/// vectors over the base field; `None` when the rows are dependent.
pub(crate) fn invert_basis_matrix(base: &Field, basis: &[Element]) -> Option<Vec<Vec<Element>>> {
    let n = basis.len();
    let mut work: Vec<Vec<Element>> = Vec::with_capacity(n);
    for (i, alpha) in basis.iter().enumerate() {
        let coeffs = alpha.coeffs()?;
        let mut row: Vec<Element> = coeffs.to_vec();
        for j in 0..n {
            row.push(if i == j { base.one() } else { base.zero() });
        }
        work.push(row);
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = work[col][col].inv().ok()?;
        for entry in work[col].iter_mut() {
            *entry = &*entry * &inv;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                let pivot_row = work[col].clone();
                for (entry, pivot) in work[r].iter_mut().zip(&pivot_row) {
                    let sub = &factor * pivot;
                    *entry = &*entry - &sub;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn example1() -> EnbParams {
        let overrides = Overrides::from_integers(
            &f13(),
            Some([4, 1, 9, 3, 8]),
            Some((0, 10)),
            Some((11, 11)),
            Some((9, 0)),
            Some(6),
            Some(0),
        );
        EnbParams::compute(13, 7, &overrides, &SearchBudget::default()).unwrap()
    }

    fn example2() -> EnbParams {
        let overrides = Overrides::from_integers(
            &f7(),
            Some([3, 1, 2, 2, 4]),
            Some((2, 2)),
            Some((4, 3)),
            Some((4, 1)),
            Some(2),
            Some(0),
        );
        EnbParams::compute(7, 6, &overrides, &SearchBudget::default()).unwrap()
    }

    fn example3() -> EnbParams {
        let overrides = Overrides::from_integers(
            &f7(),
            Some([3, 6, 4, 0, 1]),
            Some((4, 5)),
            None,
            Some((1, 1)),
            None,
            None,
        );
        EnbParams::compute(7, 6, &overrides, &SearchBudget::default()).unwrap()
    }

    #[test]
    fn torsion_point_canonical_firsts() {
        let e1 = Curve::from_u64_coeffs(&f13(), [4, 1, 9, 3, 8]).unwrap();
        let t = find_torsion_point(&e1, 7).unwrap();
        assert_eq!(t, Point::Affine(f13().from_u64(0), f13().from_u64(7)));
        // the paper's pick is also an order-7 point
        let paper = Point::Affine(f13().from_u64(0), f13().from_u64(10));
        assert_eq!(e1.point_order(&paper).unwrap(), 7);

        let e2 = Curve::from_u64_coeffs(&f7(), [3, 1, 2, 2, 4]).unwrap();
        assert_eq!(
            find_torsion_point(&e2, 6).unwrap(),
            Point::Affine(f7().from_u64(2), f7().from_u64(2))
        );
        assert!(matches!(
            find_torsion_point(&e1, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(
            find_torsion_point(&e1, 5).unwrap_err(),
            Error::NoTorsionPoint { order: 5 }
        );
    }

    #[test]
    fn aux_point_canonical_firsts() {
        let e1 = Curve::from_u64_coeffs(&f13(), [4, 1, 9, 3, 8]).unwrap();
        let r = choose_aux_point(&e1, 7).unwrap();
        assert_eq!(r, Point::Affine(f13().from_u64(1), f13().from_u64(0)));
        // the paper's pick (9, 0) also lies outside the 7-torsion
        let paper = Point::Affine(f13().from_u64(9), f13().from_u64(0));
        assert!(!e1.mul(&paper, 7).is_infinity());
        // kernel points are rejected
        let t = Point::Affine(f13().from_u64(0), f13().from_u64(10));
        assert!(e1.mul(&t, 7).is_infinity());

        let e3 = Curve::from_u64_coeffs(&f7(), [3, 6, 4, 0, 1]).unwrap();
        assert_eq!(
            choose_aux_point(&e3, 6).unwrap(),
            Point::Affine(f7().from_u64(1), f7().from_u64(1))
        );
    }

    #[test]
    fn scalar_examples() {
        let (a, b) = normalizing_scalars(&f13().from_u64(11), 7).unwrap();
        assert_eq!((a.value(), b.value()), (Some(6), Some(0)));
        let (a, b) = normalizing_scalars(&f7().from_u64(4), 6).unwrap();
        assert_eq!((a.value(), b.value()), (Some(2), Some(0)));
        // c = 0 with p | n has no solution
        assert_eq!(
            normalizing_scalars(&f7().zero(), 7).unwrap_err(),
            Error::NoScalarSolution
        );
        // c = 0 with n invertible: a*0 + n*b = 1
        let (a, b) = normalizing_scalars(&f7().zero(), 6).unwrap();
        assert!(a.is_one());
        assert_eq!(&f7().from_u64(6) * &b, f7().one());
    }

    #[test]
    fn scalar_relation_holds_for_all_nonzero_constants() {
        let f = f13();
        for c in f.elements().filter(|c| !c.is_zero()) {
            let (a, b) = normalizing_scalars(&c, 7).unwrap();
            let n_elem = f.from_u64(7);
            assert_eq!(&(&a * &c) + &(&n_elem * &b), f.one());
            assert!(!a.is_zero());
        }
    }

    #[test]
    fn lift_satisfies_frobenius_condition() {
        let params = example1();
        let b = params.lifted();
        let ext_curve = params.curve().base_change(params.ext()).unwrap();
        let t_ext = Curve::embed_point(params.ext(), params.torsion()).unwrap();
        let frob = Point::Affine(
            b.x().unwrap().frobenius(),
            b.y().unwrap().frobenius(),
        );
        assert_eq!(frob, ext_curve.add(b, &t_ext));
        assert!(!ext_curve.mul(b, 7).is_infinity());
        // phi^n(b) = b
        let mut p = b.clone();
        for _ in 0..7 {
            p = Point::Affine(p.x().unwrap().frobenius(), p.y().unwrap().frobenius());
        }
        assert_eq!(&p, b);
    }

    #[test]
    fn lift_rejects_n_torsion_preimages() {
        // the quotient point (0, 1) of the third example curve has an
        // irreducible preimage, but its lift is killed by n*b = O
        let curve = Curve::from_u64_coeffs(&f7(), [3, 6, 4, 0, 1]).unwrap();
        let t = Point::Affine(f7().from_u64(4), f7().from_u64(5));
        let iso = Isogeny::quotient(&curve, &t, 6).unwrap();
        let a = Point::Affine(f7().from_u64(0), f7().from_u64(1));
        let h = iso.preimage_polynomial(&a).unwrap();
        assert!(poly::is_irreducible(&f7(), &h).unwrap());
        assert_eq!(
            lift_preimage(&iso, &a, &t).unwrap_err(),
            Error::FrobeniusConditionFailed
        );
    }

    #[test]
    fn example_parameter_bundles() {
        let p1 = example1();
        assert_eq!(p1.modulus().iter().map(|c| c.value().unwrap()).collect::<Vec<_>>(),
            [3, 2, 5, 5, 6, 0, 1, 1]);
        assert_eq!(p1.constant().value(), Some(11));
        assert_eq!(p1.scale().value(), Some(6));
        assert_eq!(p1.existence_index(), 7);
        assert!(!p1.advisory()); // 7^2 > 13
        // stored generator is the actual image of the lift
        assert_eq!(
            p1.generator(),
            &Point::Affine(f13().from_u64(11), f13().from_u64(1))
        );

        let p2 = example2();
        assert_eq!(p2.constant().value(), Some(4));
        assert_eq!(p2.scale().value(), Some(2));
        assert_eq!(p2.modulus().iter().map(|c| c.value().unwrap()).collect::<Vec<_>>(),
            [2, 3, 4, 1, 4, 3, 1]);

        let p3 = example3();
        assert_eq!(p3.constant().value(), Some(1));
        assert_eq!(p3.scale().value(), Some(1));
        assert!(p3.offset().is_zero());
        assert_eq!(p3.modulus().iter().map(|c| c.value().unwrap()).collect::<Vec<_>>(),
            [2, 5, 1, 1, 2, 6, 1]);
    }

    #[test]
    fn basis_is_frobenius_ascending() {
        let params = example1();
        let basis = params.basis();
        for k in 0..7 {
            assert_eq!(basis[k].frobenius(), basis[(k + 1) % 7]);
        }
        let expected_alpha0: Vec<u64> = [7, 7, 0, 3, 5, 6, 7].to_vec();
        let got: Vec<u64> = basis[0]
            .coeffs()
            .unwrap()
            .iter()
            .map(|c| c.value().unwrap())
            .collect();
        assert_eq!(got, expected_alpha0);
    }

    #[test]
    fn translated_lift_rotates_the_basis() {
        let params = example1();
        let ext_curve = params.curve().base_change(params.ext()).unwrap();
        let t_ext = Curve::embed_point(params.ext(), params.torsion()).unwrap();
        let shifted = ext_curve.add(params.lifted(), &t_ext);
        let rotated = build_basis(
            params.curve(),
            params.torsion(),
            &shifted,
            params.scale(),
            params.offset(),
            7,
        )
        .unwrap();
        for k in 0..7 {
            assert_eq!(rotated[k], params.basis()[(k + 1) % 7]);
        }
    }

    #[test]
    fn canonical_search_without_overrides() {
        // tiny case: first curve over F_5 carrying an order-3 basis
        let params =
            EnbParams::compute(5, 3, &Overrides::default(), &SearchBudget::default()).unwrap();
        assert_eq!(params.q(), 5);
        assert_eq!(params.n(), 3);
        assert_eq!(params.curve().group_order().unwrap() % 3, 0);
        let t = params.torsion();
        assert_eq!(params.curve().point_order(t).unwrap(), 3);
    }

    #[test]
    fn search_exhaustion() {
        // no curve over F_5 has a point of order 100
        let err = EnbParams::compute(5, 100, &Overrides::default(), &SearchBudget::default())
            .unwrap_err();
        assert_eq!(err, Error::ParameterSearchExhausted);
    }

    #[test]
    fn prime_power_base_field() {
        let base = canonical_base_field(9).unwrap();
        assert_eq!(base.order(), Some(9));
        assert_eq!(base.characteristic(), 3);
        let params =
            EnbParams::compute_in(&base, 4, &Overrides::default(), &SearchBudget::default())
                .unwrap();
        assert_eq!(params.n(), 4);
        assert_eq!(params.basis().len(), 4);
        for k in 0..4 {
            assert_eq!(params.basis()[k].frobenius(), params.basis()[(k + 1) % 4]);
        }
    }

    #[test]
    fn characteristic_two_pipeline() {
        let base = canonical_base_field(4).unwrap();
        let params =
            EnbParams::compute_in(&base, 3, &Overrides::default(), &SearchBudget::default())
                .unwrap();
        assert_eq!(params.q(), 4);
        let ext_curve = params.curve().base_change(params.ext()).unwrap();
        let t_ext = Curve::embed_point(params.ext(), params.torsion()).unwrap();
        let b = params.lifted();
        let frob = Point::Affine(b.x().unwrap().frobenius(), b.y().unwrap().frobenius());
        assert_eq!(frob, ext_curve.add(b, &t_ext));
        for k in 0..3 {
            assert_eq!(params.basis()[k].frobenius(), params.basis()[(k + 1) % 3]);
        }
    }

    #[test]
    fn invalid_q_is_rejected() {
        assert!(matches!(
            EnbParams::compute(12, 5, &Overrides::default(), &SearchBudget::default()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn aux_override_inside_torsion_is_rejected() {
        let overrides = Overrides::from_integers(
            &f13(),
            Some([4, 1, 9, 3, 8]),
            Some((0, 10)),
            None,
            Some((0, 7)), // -t, a 7-torsion point
            Some(6),
            Some(0),
        );
        assert_eq!(
            EnbParams::compute(13, 7, &overrides, &SearchBudget::default()).unwrap_err(),
            Error::NoAuxiliaryPoint
        );
    }
}
