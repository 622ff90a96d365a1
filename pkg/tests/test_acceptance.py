"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import pytest

from lmokit import acceptance as acc


def _run(fn):
    ok, detail = fn()
    print(("PASS " if ok else "FAIL ") + detail)
    assert ok, detail


def test_c01_associator_pentagon_hexagons_grouplike():
    _run(acc.check_associator)


def test_c02_closed_diagram_dims_two_routes():
    _run(acc.check_dimensions)


def test_c03_kontsevich_gamma123_and_linking_numbers():
    _run(acc.check_kontsevich)


def test_c04_multiplicative_splits_and_grouplike():
    _run(acc.check_multiplicativity)


def test_c05_iota_identities_and_dual_route():
    _run(acc.check_iota)


def test_c06_omega_one_invariance():
    _run(acc.check_omega_invariance)


def test_c07_theta_surgery_omega_minus_theta():
    _run(acc.check_theta_surgery)


@pytest.mark.xfail(strict=True, reason="the alternating sum has sign (-1)^3 on the full sublink")
def test_c07_literal_delta_fixes_tilde_beta():
    assert acc.delta_literal_holds()


def test_c08_casson_proportionality():
    _run(acc.check_casson)


def test_c09_i_filter_laws():
    _run(acc.check_i_filter)


def test_c10_omega_two_truncates_to_omega_one():
    _run(acc.check_omega_two)
