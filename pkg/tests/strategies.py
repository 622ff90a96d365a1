"""Hypothesis strategies for small diagrams."""

from hypothesis import strategies as st

from lmokit.diagrams import Support, chord_diagram
from lmokit.ops import assemble


@st.composite
def chord_diagrams(draw, max_chords=3, components=(1, 2), kind="circle"):
    l = draw(st.sampled_from(components))
    k = draw(st.integers(1, max_chords))
    ends = [i for i in range(k) for _ in range(2)]
    order = draw(st.permutations(ends))
    cuts = sorted(draw(st.lists(st.integers(0, 2 * k), min_size=l - 1, max_size=l - 1)))
    seqs, prev = [], 0
    for c in cuts + [2 * k]:
        seqs.append(list(order[prev:c]))
        prev = c
    sup = Support.circles(l) if kind == "circle" else Support.intervals(l)
    return chord_diagram(sup, seqs)


@st.composite
def y_diagrams(draw, strands=3):
    """A single trivalent vertex with three legs placed among chords."""
    sup = Support.intervals(strands)
    targets = draw(st.lists(st.integers(0, strands - 1), min_size=3, max_size=3))
    legs = [[] for _ in range(strands)]
    for i, t in enumerate(targets):
        legs[t].append(f"l{i}")
    for s in legs:
        draw(st.randoms()).shuffle(s)
    return assemble(sup, legs, [["v0", "v1", "v2"]], [(f"l{i}", f"v{i}") for i in range(3)])
