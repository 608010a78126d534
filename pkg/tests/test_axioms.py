import json
import random

import pytest

from weakind import axioms
from weakind.axioms import (
    AxiomStatement,
    apply_ciwi1,
    apply_ciwi2,
    apply_wi1,
    apply_wi2,
    apply_wi3,
    closure,
    repair,
    replay_trace,
    soundness_probe,
    statement,
    statement_from_json,
)
from weakind.errors import LimitError, RuleShapeError

U3 = ("A", "B", "C")
U4 = ("A", "B", "C", "D")


def fs(*names):
    return frozenset(names)


# ---------------------------------------------------------------------------
# literal rule applications
# ---------------------------------------------------------------------------


def test_wi1_literal():
    s = apply_wi1(U3, ("A",), ("A", "B"))
    assert s == AxiomStatement("WI", fs("A"), fs("C"), fs("A", "B"), U3)
    assert s.non_disjoint and not s.degenerate


def test_wi1_degenerate_edges():
    full = apply_wi1(U3, U3, U3)
    assert full.z == frozenset() and full.degenerate
    empty = apply_wi1(U3, (), ("A",))
    assert empty.x == frozenset() and empty.degenerate
    assert empty.z == fs("B", "C")


def test_wi1_guard():
    with pytest.raises(RuleShapeError):
        apply_wi1(U3, ("A",), ("B",))


def test_wi2_literal():
    premise = statement("WI", ("A",), ("B",), U4)  # WI(A ⊥ CD | B)
    first, second = apply_wi2(premise, ("B",))
    assert first == AxiomStatement("WI", fs("A"), fs("B", "C", "D"), fs("B"), U4)
    assert first.non_disjoint
    assert second == AxiomStatement("WI", fs("A", "B"), fs("C", "D"), fs("B"), U4)
    assert second.non_disjoint
    # Both repair back to the premise.
    assert repair(first)[0] == premise
    assert repair(second)[0] == premise


def test_wi2_empty_w_is_identity():
    premise = statement("WI", ("A",), ("B",), U4)
    first, second = apply_wi2(premise, ())
    assert first == premise and second == premise


def test_wi2_guards():
    premise = statement("WI", ("A",), ("B",), U4)
    with pytest.raises(RuleShapeError):
        apply_wi2(premise, ("C",))  # W not inside Y
    bad = AxiomStatement("WI", fs("A"), fs("C"), fs("B"), U4)  # not covering
    with pytest.raises(RuleShapeError):
        apply_wi2(bad, ())


def test_wi3_literal():
    premise = statement("WI", ("A",), ("B",), U4)
    assert apply_wi3(premise, ("C",)) == AxiomStatement(
        "WI", fs("A"), fs("D"), fs("B", "C"), U4
    )
    assert apply_wi3(premise, ()) == premise
    degenerate = apply_wi3(premise, ("C", "D"))
    assert degenerate.z == frozenset() and degenerate.degenerate


def test_wi3_guards():
    premise = statement("WI", ("A",), ("B",), U4)
    with pytest.raises(RuleShapeError):
        apply_wi3(premise, ("A",))
    with pytest.raises(RuleShapeError):
        apply_wi3(premise, ("B",))


def test_ciwi1_literal():
    premise = statement("CI", ("A",), ("B",), U3)
    conclusion = apply_ciwi1(premise)
    assert conclusion == AxiomStatement("WI", fs("B"), fs("C"), fs("B"), U3)
    assert conclusion.non_disjoint
    degenerate = apply_ciwi1(statement("CI", ("A",), (), U3))
    assert degenerate.x == frozenset() and degenerate.degenerate
    with pytest.raises(RuleShapeError):
        apply_ciwi1(statement("WI", ("A",), ("B",), U3))


def test_ciwi2_literal():
    p1 = statement("WI", ("A",), ("B", "C"), U4)  # WI(A ⊥ D | BC)
    p2 = statement("WI", ("A",), ("B", "D"), U4)  # WI(A ⊥ C | BD)
    p3 = statement("CI", ("C",), ("A", "B"), U4)  # I(C ⊥ D | BA)
    conclusion = apply_ciwi2(p1, p2, p3)
    assert conclusion == AxiomStatement("WI", fs("A"), fs("C", "D"), fs("B"), U4)


def test_ciwi2_collapsed_z1():
    # Z1 empty: the conclusion coincides with the first premise.
    p1 = statement("WI", ("A",), ("B",), U3)  # WI(A ⊥ C | B)
    p2 = AxiomStatement("WI", fs("A"), frozenset(), fs("B", "C"), U3)
    p3 = AxiomStatement("CI", frozenset(), fs("C"), fs("A", "B"), U3)
    assert apply_ciwi2(p1, p2, p3) == p1


def test_ciwi2_universe_guard():
    p1 = statement("WI", ("A",), ("B", "C"), U4)
    p2 = statement("WI", ("A",), ("B", "D"), U4)
    p3 = statement("CI", ("C",), ("A", "B"), ("A", "B", "C", "E"))
    with pytest.raises(RuleShapeError):
        apply_ciwi2(p1, p2, p3)


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------


def wi1_canonical_instances(universe):
    out = set()
    names = list(universe)
    for mask in range(2 ** len(names)):
        y = tuple(n for i, n in enumerate(names) if mask >> i & 1)
        out.add(repair(apply_wi1(universe, (), y))[0])
    return out


def test_closure_empty_premises_is_reflexivity():
    result = closure([], ("A", "B"))
    assert result.statements == frozenset(wi1_canonical_instances(("A", "B")))


def test_closure_contains_wi3_conclusions():
    premise = statement("WI", ("A",), ("B",), U4)
    result = closure([premise], U4)
    assert statement("WI", ("A",), ("B", "C"), U4) in result.statements
    assert statement("WI", ("A",), ("B", "D"), U4) in result.statements


def test_closure_idempotent():
    premise = statement("WI", ("A",), ("B",), U4)
    once = closure([premise], U4)
    twice = closure(once.statements, U4)
    assert once.statements == twice.statements


def test_closure_inflationary_and_monotone():
    rng = random.Random(9)
    names = U4
    for _ in range(20):
        s = {random_statement(rng, names) for _ in range(rng.randint(0, 3))}
        t = s | {random_statement(rng, names) for _ in range(rng.randint(0, 2))}
        cs = closure(s, names).statements
        ct = closure(t, names).statements
        assert s <= cs
        assert cs <= ct


def random_statement(rng, names):
    roles = [rng.choice("XZY") for _ in names]
    x = [n for n, r in zip(names, roles) if r == "X"]
    z = [n for n, r in zip(names, roles) if r == "Z"]
    y = [n for n, r in zip(names, roles) if r == "Y"]
    kind = rng.choice(["CI", "WI"])
    return AxiomStatement(kind, frozenset(x), frozenset(z), frozenset(y), tuple(names))


def test_traces_replay():
    premise = statement("WI", ("A",), ("B",), U4)
    ci = statement("CI", ("C",), ("A", "B"), U4)
    result = closure([premise, ci], U4)
    assert result.traces
    assert all(replay_trace(t) for t in result.traces)


def test_closure_rule_restriction():
    premise = statement("WI", ("A",), ("B",), U4)
    result = closure([premise], U4, rules=("WI3",))
    assert statement("WI", ("A",), ("B", "C"), U4) in result.statements
    # Reflexivity instances are absent without their rule.
    assert repair(apply_wi1(U4, (), ()))[0] not in result.statements


def test_closure_universe_bound():
    with pytest.raises(LimitError):
        closure([], tuple(f"V{i}" for i in range(9)))


def test_closure_unknown_rule():
    with pytest.raises(RuleShapeError):
        closure([], U3, rules=("WI9",))


def test_statement_json_round_trip():
    s = statement("WI", ("A",), ("B",), U4)
    assert statement_from_json(s.to_json_dict()) == s
    tagged = apply_ciwi1(statement("CI", ("A",), ("B",), U3))
    assert statement_from_json(tagged.to_json_dict()) == tagged


# ---------------------------------------------------------------------------
# soundness probe
# ---------------------------------------------------------------------------


def test_probe_deterministic():
    a = soundness_probe(3, 2, trials=8, seed=0)
    b = soundness_probe(3, 2, trials=8, seed=0)
    assert json.dumps(a.to_json_dict()) == json.dumps(b.to_json_dict())
    c = soundness_probe(3, 2, trials=8, seed=1)
    assert json.dumps(c.to_json_dict()) != json.dumps(a.to_json_dict())


def test_probe_zero_trials():
    report = soundness_probe(3, 2, trials=0, seed=0)
    assert report.evaluated == 0 and not report.violations


def test_probe_reflexivity_only():
    report = soundness_probe(3, 2, trials=25, seed=0, rules=("WI1",))
    assert not report.violations
    # Every reflexivity instance repairs to an empty left side.
    assert report.vacuous == report.evaluated > 0


def test_probe_augmentation_only():
    report = soundness_probe(3, 2, trials=100, seed=0, rules=("WI3",))
    assert report.violations == ()
