"""Golden DOT outputs for frames, morphisms and countermodels."""

from ordsem.dot import countermodel_dot, frame_dot, pmorphism_dot
from ordsem.formulas import parse
from ordsem.morphism import pmorphism_from_labels
from ordsem.semantics import Countermodel, ipc_check_bounded

FORK_DOT = """digraph frame {
  rankdir=BT;
  n0 [label="r"];
  n1 [label="l"];
  n2 [label="k"];
  n0 -> n1;
  n0 -> n2;
}
"""

EXCLUDED_MIDDLE_DOT = """digraph countermodel {
  rankdir=BT;
  n0 [label="ε", peripheries=2];
  n1 [label="0: p"];
  n2 [label="1"];
  n0 -> n1;
  n0 -> n2;
}
"""


def test_frame_golden(fork):
    assert frame_dot(fork) == FORK_DOT


def test_hasse_edges_only(diamond):
    text = frame_dot(diamond)
    assert text.count("->") == 4  # the bot -> top edge is reduced away


def test_pmorphism_golden_fragments(fork, chain2):
    m = pmorphism_from_labels(fork, chain2, {"r": "a", "l": "b", "k": "b"})
    text = pmorphism_dot(m)
    assert "cluster_source" in text and "cluster_target" in text
    assert text.count("style=dashed") == 3
    assert "s0 -> t0" in text and "s1 -> t1" in text and "s2 -> t1" in text


def test_countermodel_golden():
    result = ipc_check_bounded(parse("p | ~p"), 3)
    assert isinstance(result, Countermodel)
    text = countermodel_dot(result.frame, result.valuation, result.point)
    assert text == EXCLUDED_MIDDLE_DOT
