//! The quotient isogeny `E -> E/<t>` by a cyclic kernel, in the classical
//! Velu normalization, together with the degree-n preimage polynomial used to
//! construct the extension field.
//!
//! The rational maps are kept symbolically: the x-map as a ratio of
//! polynomials in x, the y-map as `(A(x)*y + B(x)) / D(x)`, so points can be
//! pushed through the isogeny over the base field or any extension of it.

use alloc::vec;
use alloc::vec::Vec;

use crate::curve::{kernel_points, Curve, Point};
use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::poly;

#[derive(Clone, Debug)]
pub struct Isogeny {
    domain: Curve,
    codomain: Curve,
    kernel_generator: Point,
    kernel_order: u64,
    x_num: Vec<Element>,
    x_den: Vec<Element>,
    y_num_y: Vec<Element>,
    y_num_c: Vec<Element>,
    y_den: Vec<Element>,
}

/// Per-kernel-point quantities of Velu's formulas.
struct KernelTerm {
    x: Element,
    y: Element,
    gx: Element,
    gy: Element,
    v: Element,
    u: Element,
}

impl Isogeny {
    /// Velu's formulas for the quotient by the cyclic group generated by a
    /// point `t` of exact order `n`.
    pub fn quotient(domain: &Curve, t: &Point, n: u64) -> Result<Isogeny> {
        let kernel = kernel_points(domain, t, n)?;
        let field = domain.field().clone();
        let [a1, a2, a3, a4, a6] = domain.coefficients();
        let two = field.from_u64(2);
        let three = field.from_u64(3);

        // one representative per +-pair, two-torsion kept as is
        let mut reps: Vec<&Point> = Vec::new();
        let mut seen: Vec<Point> = Vec::new();
        for q in kernel.iter().skip(1) {
            if seen.contains(q) {
                continue;
            }
            seen.push(q.clone());
            seen.push(domain.negate(q));
            reps.push(q);
        }

        let mut terms = Vec::with_capacity(reps.len());
        let mut v_sum = field.zero();
        let mut w_sum = field.zero();
        for q in reps {
            let (Point::Affine(xq, yq), neg) = (q, domain.negate(q)) else { unreachable!() };
            let gx = &(&(&(&three * &(xq * xq)) + &(&(&two * a2) * xq)) + a4) - &(a1 * yq);
            let gy = &(-&(&(&two * yq) + &(a1 * xq))) - a3;
            let v = if &neg == q { gx.clone() } else { &(&two * &gx) - &(a1 * &gy) };
            let u = &gy * &gy;
            v_sum = &v_sum + &v;
            w_sum = &w_sum + &(&u + &(xq * &v));
            terms.push(KernelTerm { x: xq.clone(), y: yq.clone(), gx, gy, v, u });
        }

        let b2 = &(a1 * a1) + &(&field.from_u64(4) * a2);
        let new_a4 = a4 - &(&field.from_u64(5) * &v_sum);
        let new_a6 = a6 - &(&(&b2 * &v_sum) + &(&field.from_u64(7) * &w_sum));
        let codomain = Curve::new(
            field.clone(),
            [a1.clone(), a2.clone(), a3.clone(), new_a4, new_a6],
        )?;

        let (x_num, x_den, y_num_y, y_num_c, y_den) =
            rational_maps(&field, a1, a3, &terms)?;

        Ok(Isogeny {
            domain: domain.clone(),
            codomain,
            kernel_generator: t.clone(),
            kernel_order: n,
            x_num,
            x_den,
            y_num_y,
            y_num_c,
            y_den,
        })
    }

    pub fn domain(&self) -> &Curve {
        &self.domain
    }

    pub fn codomain(&self) -> &Curve {
        &self.codomain
    }

    pub fn kernel_generator(&self) -> &Point {
        &self.kernel_generator
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel_order
    }

    /// The x-map as `(numerator, denominator)`, lowest degree first.
    pub fn x_map(&self) -> (&[Element], &[Element]) {
        (&self.x_num, &self.x_den)
    }

    /// The y-map as `(y-coefficient, constant part, denominator)`.
    pub fn y_map(&self) -> (&[Element], &[Element], &[Element]) {
        (&self.y_num_y, &self.y_num_c, &self.y_den)
    }

    /// Pushes a point through the isogeny. The point may live on the domain
    /// curve over the base field or over an extension of it.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        let (x, y) = match p {
            Point::Infinity => return Ok(Point::Infinity),
            Point::Affine(x, y) => (x, y),
        };
        let target = x.field().clone();
        let embed_poly = |f: &[Element]| -> Result<Vec<Element>> {
            f.iter().map(|c| target.embed(c)).collect()
        };
        let x_den = embed_poly(&self.x_den)?;
        let den_at = poly::eval(&target, &x_den, x);
        if den_at.is_zero() {
            return Ok(Point::Infinity);
        }
        let x_num = poly::eval(&target, &embed_poly(&self.x_num)?, x);
        let yy = poly::eval(&target, &embed_poly(&self.y_num_y)?, x);
        let yc = poly::eval(&target, &embed_poly(&self.y_num_c)?, x);
        let y_den = poly::eval(&target, &embed_poly(&self.y_den)?, x);
        if y_den.is_zero() {
            return Err(Error::Consistency(
                "y-map pole without x-map pole".into(),
            ));
        }
        let new_x = x_num.div(&den_at)?;
        let new_y = (&(&yy * y) + &yc).div(&y_den)?;
        Ok(Point::Affine(new_x, new_y))
    }

    /// Monic degree-n polynomial whose roots are the x-coordinates of the
    /// preimages of `a`, obtained by clearing denominators in `x_map = x(a)`.
    pub fn preimage_polynomial(&self, a: &Point) -> Result<Vec<Element>> {
        let Point::Affine(ax, _) = a else {
            return Err(Error::InvalidParameter("preimage of the identity".into()));
        };
        if !self.codomain.contains(a) {
            return Err(Error::InvalidParameter(
                "point does not lie on the quotient curve".into(),
            ));
        }
        let field = self.domain.field();
        let mut h = poly::sub(field, &self.x_num, &poly::scale(&self.x_den, ax));
        let n = self.kernel_order as usize;
        match poly::degree(&h) {
            Some(d) if d == n => {}
            other => {
                return Err(Error::DegreeCollapse {
                    expected: n,
                    actual: other.unwrap_or(0),
                })
            }
        }
        let lead_inv = h[n].inv()?;
        h = poly::scale(&h, &lead_inv);
        Ok(h)
    }

    /// First point of the quotient curve, in canonical order, whose preimage
    /// polynomial is irreducible.
    pub fn find_generator(&self) -> Result<Point> {
        let field = self.domain.field();
        for a in self.codomain.points()? {
            let Ok(h) = self.preimage_polynomial(&a) else { continue };
            if poly::is_irreducible(field, &h)? {
                return Ok(a);
            }
        }
        Err(Error::NoGeneratorFound)
    }
}

/// Builds the symbolic x- and y-maps from the per-point Velu terms.
#[allow(clippy::type_complexity)]
fn rational_maps(
    field: &Field,
    a1: &Element,
    a3: &Element,
    terms: &[KernelTerm],
) -> Result<(Vec<Element>, Vec<Element>, Vec<Element>, Vec<Element>, Vec<Element>)> {
    let x_poly = vec![field.zero(), field.one()];

    // X = x + sum_Q (v_Q*(x - x_Q) + u_Q) / (x - x_Q)^2
    let mut x_den = vec![field.one()];
    for term in terms {
        let lin = vec![-&term.x, field.one()];
        x_den = poly::mul(field, &x_den, &poly::mul(field, &lin, &lin));
    }
    let mut x_num = poly::mul(field, &x_poly, &x_den);
    for term in terms {
        let lin = vec![-&term.x, field.one()];
        let sq = poly::mul(field, &lin, &lin);
        let cofactor = poly::div_rem(field, &x_den, &sq)?.0;
        let local =
            poly::add(field, &poly::scale(&lin, &term.v), core::slice::from_ref(&term.u));
        x_num = poly::add(field, &x_num, &poly::mul(field, &local, &cofactor));
    }
    let g = poly::gcd(field, &x_num, &x_den)?;
    if poly::degree(&g) != Some(0) {
        x_num = poly::div_rem(field, &x_num, &g)?.0;
        x_den = poly::div_rem(field, &x_den, &g)?.0;
    }

    // Y = y - sum_Q [ u_Q*(2y + a1*x + a3) / (x - x_Q)^3
    //               + (v_Q*(a1*(x - x_Q) + y - y_Q) + a1*u_Q - gx_Q*gy_Q)
    //                 / (x - x_Q)^2 ]
    let mut y_den = vec![field.one()];
    for term in terms {
        let lin = vec![-&term.x, field.one()];
        let cube = poly::mul(field, &poly::mul(field, &lin, &lin), &lin);
        y_den = poly::mul(field, &y_den, &cube);
    }
    let two = field.from_u64(2);
    let mut y_num_y = y_den.clone();
    let mut y_num_c: Vec<Element> = Vec::new();
    for term in terms {
        let lin = vec![-&term.x, field.one()];
        let sq = poly::mul(field, &lin, &lin);
        let cube = poly::mul(field, &sq, &lin);
        let cof3 = poly::div_rem(field, &y_den, &cube)?.0;
        let cof2 = poly::div_rem(field, &y_den, &sq)?.0;
        // y-coefficient: 2*u_Q/(x-x_Q)^3 + v_Q/(x-x_Q)^2
        let y_part = poly::add(
            field,
            &poly::scale(&cof3, &(&two * &term.u)),
            &poly::scale(&cof2, &term.v),
        );
        y_num_y = poly::sub(field, &y_num_y, &y_part);
        // constant: u_Q*(a1*x + a3)/(x-x_Q)^3
        //         + (v_Q*(a1*(x-x_Q) - y_Q) + a1*u_Q - gx_Q*gy_Q)/(x-x_Q)^2
        let a1x = vec![a3.clone(), a1.clone()];
        let c3 = poly::mul(field, &poly::scale(&a1x, &term.u), &cof3);
        let inner = poly::add(
            field,
            &poly::scale(&poly::scale(&lin, a1), &term.v),
            &[&(&(-&term.y) * &term.v) + &(&(a1 * &term.u) - &(&term.gx * &term.gy))],
        );
        let c2 = poly::mul(field, &inner, &cof2);
        y_num_c = poly::sub(field, &y_num_c, &poly::add(field, &c3, &c2));
    }
    let mut g = poly::gcd(field, &y_num_y, &y_num_c)?;
    g = poly::gcd(field, &g, &y_den)?;
    if poly::degree(&g) != Some(0) {
        y_num_y = poly::div_rem(field, &y_num_y, &g)?.0;
        y_num_c = poly::div_rem(field, &y_num_c, &g)?.0;
        y_den = poly::div_rem(field, &y_den, &g)?.0;
    }

    Ok((x_num, x_den, y_num_y, y_num_c, y_den))
}
