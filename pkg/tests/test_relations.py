import pytest

from lmokit.diagrams import EMPTY_SUPPORT, DiagramError, Support, canonical_form, theta
from lmokit.gradedsum import GradedSum
from lmokit.ops import _touches_support, assemble
from lmokit.relations import (chord_quotient, closed_dimension, closed_quotient, enumerate_diagrams,
                              generate_relations, load_quotient, quotient_basis, reduce_chords,
                              save_quotient, space_dimension, stu_eliminate, stu_row, stu_sites,
                              support_quotient)
from lmokit.weights import weight_sl2


def y_on_line():
    return assemble(Support.intervals(1), [["a", "b", "c"]], [["x", "y", "z"]],
                    [("a", "x"), ("b", "y"), ("c", "z")])


def r123():
    return assemble(Support.intervals(3), [["a"], ["b"], ["c"]], [["x", "y", "z"]],
                    [("a", "x"), ("b", "y"), ("c", "z")])


def test_enumerate_small():
    assert len(enumerate_diagrams(EMPTY_SUPPORT, 1)) == 1
    assert len(enumerate_diagrams(Support.circles(1), 1, internal=0)) == 1
    assert len(enumerate_diagrams(Support.circles(1), 0)) == 1


def test_enumeration_is_deterministic():
    a = enumerate_diagrams(Support.circles(1), 2)
    b = enumerate_diagrams(Support.circles(1), 2)
    assert a == b


@pytest.mark.parametrize("deg,dim", [(1, 1), (2, 2)])
def test_closed_dims_two_routes(deg, dim):
    assert closed_dimension(deg, "sparse") == closed_dimension(deg, "dense") == dim


def test_theta_survives_and_has_nonzero_weight():
    key, _ = canonical_form(theta())
    assert closed_quotient(1).basis == [key]
    assert weight_sl2(theta()) != 0


@pytest.mark.parametrize("support,dims", [
    (Support.circles(1), [1, 2, 3]),
    (Support.intervals(2), [3, 9]),
    (Support.intervals(3), [6, 28]),
])
def test_chord_dims(support, dims):
    assert [chord_quotient(support, d).dim for d in range(1, len(dims) + 1)] == dims


def test_stu_on_y_is_two_chord_terms():
    out = stu_eliminate(GradedSum.of(y_on_line()))
    assert all(not d.verts for d in out.terms)
    assert len(out.terms) == 2
    assert sorted(out.terms.values()) == [-1, 1]


def test_stu_on_r123_is_commutator():
    out = stu_eliminate(GradedSum.of(r123()))
    assert len(out.terms) == 2 and sorted(out.terms.values()) == [-1, 1]
    assert all(sorted(len(s) for s in d.legs) == [1, 1, 2] for d in out.terms)


def test_stu_output_equals_input_in_quotient():
    for d in enumerate_diagrams(Support.intervals(2), 2):
        if not _touches_support(d):
            continue
        x = GradedSum.of(d)
        y = stu_eliminate(x)
        q = support_quotient(Support.intervals(2), 2)
        assert q.is_zero((x - y).terms)


def test_stu_rejects_floating_component():
    floating = [d for d in enumerate_diagrams(Support.intervals(2), 2) if not _touches_support(d)]
    assert floating
    with pytest.raises(DiagramError):
        stu_eliminate(GradedSum.of(floating[0]))


def test_projection_idempotent_and_kills_rows():
    span = enumerate_diagrams(Support.circles(1), 2)
    rows = generate_relations(span, ["STU", "IHX"])
    q = quotient_basis(span, rows)
    for r in rows:
        assert q.project(r) == {}
    for k in span:
        p = q.project({k: 1})
        assert q.project(p) == p


def test_o_rows_and_unknown_kind():
    span = enumerate_diagrams(Support.circles(1), 1, loops=1)
    rows = generate_relations(span, ["O"])
    assert all(sorted(r.values()) == [1, 2] for r in rows)
    with pytest.raises(DiagramError):
        generate_relations(span, ["XYZ"])


def test_r2_rows_have_three_terms():
    # two parallel chords on a circle: the repair family on 2 segments
    span = enumerate_diagrams(Support.circles(1), 2, internal=0)
    rows = generate_relations(span, ["R"], n=1)
    assert rows and all(len(r) <= 3 for r in rows)


def test_reduce_chords_kills_4t():
    sup = Support.circles(1)
    d = enumerate_diagrams(sup, 2, internal=1)[0]
    sites = stu_sites(d)
    r = dict(stu_row(d, sites[0]))
    for k, v in stu_row(d, sites[1]).items():
        r[k] = r.get(k, 0) - v
    x = GradedSum(sup, {k: v for k, v in r.items() if not k.verts}, canonical=True)
    assert not reduce_chords(x)


def test_quotient_cache_round_trip(tmp_path, monkeypatch):
    q = closed_quotient(2)
    path = tmp_path / "q.txt"
    save_quotient(q, str(path))
    label, dim, basis = load_quotient(str(path))
    assert dim == q.dim == len(basis)
    monkeypatch.setenv("LMOKIT_CACHE_DIR", str(tmp_path / "c"))
    assert space_dimension("D", 2) == 2
    assert space_dimension("D", 2) == 2
    assert len(list((tmp_path / "c").iterdir())) == 1


def test_stale_cache_rejected(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("lmokit-quotient 0\nx\n1\n")
    with pytest.raises(ValueError):
        load_quotient(str(p))
