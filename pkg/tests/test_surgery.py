import pytest

from lmokit.diagrams import EMPTY_SUPPORT, DiagramError
from lmokit.gradedsum import GradedSum
from lmokit.kontsevich import TangleError, fixture, linking_matrix, tensor_word, zhat
from lmokit.lmo import omega_n
from lmokit.relations import reduce_chords
from lmokit.surgery import (PAIRS, beta_gamma, delta_sum, is_unit_framed_split, kirby_pair, lcs_word,
                            n_components, normalized, sn_operation, sublink, theta_link,
                            tilde_beta, tilde_delta, trivialize, window_unknot)

ONE = GradedSum.one(EMPTY_SUPPORT, 1)


def test_delta_counts_and_signs():
    w = tensor_word(fixture("unknot", 1), fixture("unknot", -1))
    comb = delta_sum(w)
    assert len(comb) == 4
    assert sorted(c for c, _ in comb) == [-1, -1, 1, 1]


def test_delta_of_split_sum_of_spheres_vanishes():
    w = tensor_word(fixture("unknot", 1), fixture("unknot", -1))
    assert not omega_n(delta_sum(w), 1)


def test_sublink_and_trivialize():
    w = fixture("borromean", 1, 1, 1)
    assert n_components(sublink(w, [1, 3])) == 2
    t = trivialize(w, 2)
    assert n_components(t) == 3
    lk = linking_matrix(t)
    assert lk[1] == [0, 1, 0]


def test_tilde_delta_sizes():
    w = fixture("borromean", 1, 1, 1)
    assert len(tilde_delta(w, [1, 2])) == 4
    with pytest.raises(DiagramError):
        tilde_delta(w, [])


def test_unit_framed_split():
    assert is_unit_framed_split(fixture("borromean", 1, -1, 1))
    assert not is_unit_framed_split(fixture("hopf", 1, 1))
    assert not is_unit_framed_split(fixture("unknot", 2))


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_kirby_pairs_agree(name):
    a, b = kirby_pair(name)
    assert omega_n(a, 1) == omega_n(b, 1)


def test_kirby_pair_errors():
    with pytest.raises(DiagramError):
        kirby_pair("nonsense")
    with pytest.raises(DiagramError):
        kirby_pair("hopf-s3", base=fixture("unknot", 1))
    a, b = kirby_pair("stabilize", fixture("trefoil", 1), 1)
    assert n_components(b) == 2


def test_gadget_components():
    assert n_components(theta_link(True, True)) == 3
    assert n_components(theta_link(False, False)) == 3
    assert linking_matrix(theta_link(True, False)) == linking_matrix(theta_link(False, False))


def test_beta_signs_and_framing():
    assert [c for c, _ in beta_gamma()] == [1, -1, -1, 1]
    for _, w in tilde_beta():
        assert is_unit_framed_split(w)
        assert all(linking_matrix(w)[i][i] == 1 for i in range(3))


def test_delta_of_tilde_beta_signed():
    tb = tilde_beta()
    # the full sublink has three components, hence the overall sign
    assert normalized(delta_sum(tb)) == normalized(tb.scale(-1))


def test_lcs_low_degrees_vanish():
    w = lcs_word(3, 2)
    z = reduce_chords(zhat(w, 2))
    assert z.truncate(2) == GradedSum.one(z.support, 2)


def test_sn_splice_keeps_sphere():
    w = sn_operation(window_unknot(1), 2, 1)
    assert linking_matrix(w) == [[1]]
    assert omega_n(w, 1) == ONE
    with pytest.raises(TangleError):
        sn_operation(window_unknot(1), 2, 1, position=3)


def test_only_theta_graph():
    with pytest.raises(DiagramError):
        beta_gamma("k4")
