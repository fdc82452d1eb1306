use padelin_core::certify::{
    determinant_certificate, dimension_bound, integrality_audit, linear_form, BoundVariant, Evidence,
};
use padelin_core::exact::{cyclo_field, rat, CycloElement};
use padelin_core::pade::{build_pade, remainder_series, remainder_series_raw, vanishing_bound, PadeSystemJson};
use padelin_core::padic::{zeta_p, PrecisionContext};
use padelin_core::Error;

#[test]
fn pade_json_round_trips() {
    let sys = build_pade(4, 3, 1).unwrap();
    let text = serde_json::to_string(&sys.to_json()).unwrap();
    let back: PadeSystemJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.polys().unwrap(), sys.polys());
}

#[test]
fn prototype_remainder_starts_at_the_bound() {
    let sys = build_pade(3, 2, 0).unwrap();
    let field = cyclo_field(2);
    let raw = remainder_series_raw(&sys, 2, 12).unwrap();
    assert_eq!(raw.first_nonzero(), Some(6));
    assert_eq!(raw.coeff(6).unwrap(), CycloElement::from_rational(&field, rat(-9, 2)));
    // d_3^2 = 36
    let normalized = remainder_series(&sys, 2, 12).unwrap();
    assert_eq!(normalized.coeff(6).unwrap(), CycloElement::from_rational(&field, rat(-162, 1)));
    assert!(normalized.first_nonzero().unwrap() >= vanishing_bound(3, 2));
}

#[test]
fn certificate_unlocks_the_bound() {
    let cert = determinant_certificate(3, 2).unwrap();
    let r = dimension_bound(2, 19, 19, 2, 2, BoundVariant::Proposition, Evidence::Certificate(&cert)).unwrap();
    assert!(r.certified);
    assert!(r.tau_lower_bound > 1.0);
    let wrong = determinant_certificate(2, 3).unwrap();
    assert!(matches!(
        dimension_bound(2, 19, 19, 2, 2, BoundVariant::Proposition, Evidence::Certificate(&wrong)),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn normalised_values_are_integral_and_small() {
    let sys = build_pade(9, 2, 1).unwrap();
    assert!(integrality_audit(&sys, 2, 5, 5, 2).unwrap().passed());
    let ctx = PrecisionContext::new(5, 30, 8).unwrap();
    let lf = linear_form(&sys, 2, 5, 5, 2, &ctx).unwrap();
    assert!(lf.valuation >= 2 * 9 - 8);
    assert!(lf.valuation < lf.working_precision);
}

#[test]
fn zeta_rejects_points_inside_the_unit_disc() {
    let ctx = PrecisionContext::new(3, 10, 4).unwrap();
    let x = ctx.from_rational(&rat(2, 1));
    assert!(matches!(zeta_p(2, &x, &ctx), Err(Error::Domain(_))));
    let y = ctx.from_rational(&rat(2, 3));
    assert!(!zeta_p(2, &y, &ctx).unwrap().is_zero());
}

