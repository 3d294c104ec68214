//! Cross-module invariants of constructed parameter sets: structural checks,
//! the weight bounds of the special vectors, the bound sandwich, and the
//! kernel-translation symmetry of the basis.

use enb_core::curve::Curve;
use enb_core::enb::{build_basis, EnbParams, Overrides, SearchBudget};
use enb_core::field::Field;
use enb_core::tensor::{self, shift_product};
use enb_core::Point;

fn example_params() -> Vec<EnbParams> {
    let f13 = Field::prime(13).unwrap();
    let f7 = Field::prime(7).unwrap();
    let budget = SearchBudget::default();
    let e1 = EnbParams::compute(
        13,
        7,
        &Overrides::from_integers(
            &f13,
            Some([4, 1, 9, 3, 8]),
            Some((0, 10)),
            Some((11, 11)),
            Some((9, 0)),
            Some(6),
            Some(0),
        ),
        &budget,
    )
    .unwrap();
    let e2 = EnbParams::compute(
        7,
        6,
        &Overrides::from_integers(
            &f7,
            Some([3, 1, 2, 2, 4]),
            Some((2, 2)),
            Some((4, 3)),
            Some((4, 1)),
            Some(2),
            Some(0),
        ),
        &budget,
    )
    .unwrap();
    let e3 = EnbParams::compute(
        7,
        6,
        &Overrides::from_integers(
            &f7,
            Some([3, 6, 4, 0, 1]),
            Some((4, 5)),
            None,
            Some((1, 1)),
            None,
            None,
        ),
        &budget,
    )
    .unwrap();
    vec![e1, e2, e3]
}

/// Structural invariants every bundle must satisfy.
fn check_structure(params: &EnbParams) {
    let n = params.n();
    let curve = params.curve();
    assert_eq!(curve.point_order(params.torsion()).unwrap(), n);
    assert!(!curve.mul(params.aux(), n).is_infinity(), "aux point is n-torsion");
    let ext_curve = curve.base_change(params.ext()).unwrap();
    let t_ext = Curve::embed_point(params.ext(), params.torsion()).unwrap();
    let b = params.lifted();
    let frob = Point::Affine(b.x().unwrap().frobenius(), b.y().unwrap().frobenius());
    assert_eq!(frob, ext_curve.add(b, &t_ext), "phi(b) != b + t");
    assert!(!ext_curve.mul(b, n).is_infinity(), "n*b = O");
    // a*c + n*b = 1
    let base = params.base();
    let n_elem = base.from_u64(n % base.characteristic());
    let relation = &(params.scale() * params.constant()) + &(&n_elem * params.offset());
    assert!(relation.is_one(), "scalar relation violated");
    // basis independence comes with coordinates being well defined
    let one = tensor::coordinates(params, &params.ext().one()).unwrap();
    assert_eq!(tensor::from_coordinates(params, &one).unwrap(), params.ext().one());
    // Frobenius-cyclic
    for k in 0..n as usize {
        assert_eq!(params.basis()[k].frobenius(), params.basis()[(k + 1) % n as usize]);
    }
}

/// Weight bounds of the special vectors: the slope vector and the
/// x-coordinate vector miss at most two entries, and the shift products lose
/// at most twice the zero count.
fn check_weight_bounds(params: &EnbParams) {
    let n = params.n() as usize;
    let s = tensor::special_vectors(params).unwrap();
    assert!(s.rx.weight() >= n - 2, "x-vector weight below n-2");
    let r_zeros = n - s.r.weight();
    if params.offset().is_zero() {
        assert!(r_zeros <= 2, "slope vector weight below n-2");
    } else {
        assert!(r_zeros <= 1, "slope vector weight below n-1");
    }
    for k in 1..n {
        let w = shift_product(&s.r, k).weight();
        match r_zeros {
            0 => assert_eq!(w, n),
            1 => assert_eq!(w, n - 2),
            _ => assert!(w >= n - 2 * r_zeros),
        }
    }
}

fn check_bound_sandwich(params: &EnbParams) {
    let report = tensor::complexity_report(params).unwrap();
    assert!(report.lower <= report.exact && report.exact <= report.upper);
    let n = params.n();
    assert!(2 * n - 1 <= report.exact, "true lower bound violated");
    assert!(report.exact <= n * n, "trivial upper bound violated");
    // bounds recomputed from the slope vector alone agree
    let (lo, hi) = tensor::complexity_bounds(&report.special.r).unwrap();
    assert_eq!((lo, hi), (report.lower, report.upper));
}

#[test]
fn example_bundles_satisfy_all_invariants() {
    for params in example_params() {
        check_structure(&params);
        check_weight_bounds(&params);
        check_bound_sandwich(&params);
    }
}

#[test]
fn translated_lift_preserves_complexity() {
    for params in example_params() {
        let curve = params.curve();
        let ext_curve = curve.base_change(params.ext()).unwrap();
        let t_ext = Curve::embed_point(params.ext(), params.torsion()).unwrap();
        let shifted = ext_curve.add(params.lifted(), &t_ext);
        let rotated = build_basis(
            curve,
            params.torsion(),
            &shifted,
            params.scale(),
            params.offset(),
            params.n(),
        )
        .unwrap();
        // the translate rotates the basis, so every row weight is preserved
        let n = params.n() as usize;
        for k in 0..n {
            assert_eq!(rotated[k], params.basis()[(k + 1) % n]);
        }
        let exact = tensor::exact_complexity(&params).unwrap();
        // recompute the complexity directly from the rotated basis
        let mut total = 0u64;
        for k in 0..n {
            let product = &rotated[0] * &rotated[k];
            let coords = tensor::coordinates(&params, &product).unwrap();
            // coordinates in the rotated basis are a cyclic shift of the
            // coordinates in the original one; weights are unaffected
            total += coords.weight() as u64;
        }
        assert_eq!(total, exact);
    }
}

#[test]
fn canonical_small_searches_satisfy_invariants() {
    // a handful of organic (no-override) searches on small fields
    let budget = SearchBudget::default();
    for (q, n) in [(5u64, 3u64), (5, 4), (7, 3), (7, 6), (11, 4)] {
        let params = EnbParams::compute(q, n, &Overrides::default(), &budget)
            .unwrap_or_else(|e| panic!("search (q={q}, n={n}) failed: {e}"));
        check_structure(&params);
        check_weight_bounds(&params);
        check_bound_sandwich(&params);
    }
}

#[test]
fn tensor_oracle_on_canonical_search() {
    let params =
        EnbParams::compute(11, 5, &Overrides::default(), &SearchBudget::default()).unwrap();
    let tensor = tensor::MultiplicationTensor::new(&params).unwrap();
    let base = params.base().clone();
    let mut state = 0x5a5a_u64;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    for _ in 0..100 {
        let x = enb_core::tensor::CyclicVector::from_u64(
            &base,
            &(0..5).map(|_| next() % 11).collect::<Vec<_>>(),
        );
        let y = enb_core::tensor::CyclicVector::from_u64(
            &base,
            &(0..5).map(|_| next() % 11).collect::<Vec<_>>(),
        );
        let via_tensor = tensor.multiply(&x, &y).unwrap();
        let xf = tensor::from_coordinates(&params, &x).unwrap();
        let yf = tensor::from_coordinates(&params, &y).unwrap();
        assert_eq!(via_tensor, tensor::coordinates(&params, &(&xf * &yf)).unwrap());
    }
}

#[test]
fn extension_field_axioms() {
    // the big extension field behind the first example, hammered directly
    let params = example_params().remove(0);
    let ext = params.ext().clone();
    let base = params.base().clone();
    let mut state = 0x11f_u64;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let random = |rng: &mut dyn FnMut() -> u64| {
        let coeffs: Vec<_> = (0..7).map(|_| base.from_u64(rng() % 13)).collect();
        ext.from_coeffs(&coeffs).unwrap()
    };
    for _ in 0..1000 {
        let a = random(&mut next);
        let b = random(&mut next);
        let c = random(&mut next);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}
