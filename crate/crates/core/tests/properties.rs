mod laws;

#[test]
fn field_axioms() {
    laws::field_axioms();
}

#[test]
fn shifts_compose_and_commute() {
    laws::shifts_compose_and_commute();
}

#[test]
fn series_converges_at_the_truncation_order() {
    laws::series_converges_at_the_truncation_order();
}

#[test]
fn ordering_is_admissible() {
    laws::ordering_is_admissible();
}

#[test]
fn divisibility_matches_exhaustive_search() {
    laws::divisibility_matches_exhaustive_search();
}

#[test]
fn normal_form_is_irreducible_and_idempotent() {
    laws::normal_form_is_irreducible_and_idempotent();
}

#[test]
fn limits_multiply() {
    laws::limits_multiply();
}

#[test]
fn limits_are_linear() {
    laws::limits_are_linear();
}

#[test]
fn janet_cones_are_disjoint() {
    laws::janet_cones_are_disjoint();
}

#[test]
fn pseudo_remainder_certificates_replay() {
    laws::pseudo_remainder_certificates_replay();
}

#[test]
fn rendered_polynomials_parse_back() {
    laws::rendered_polynomials_parse_back();
}

#[test]
fn json_reports_round_trip() {
    laws::json_reports_round_trip();
}
