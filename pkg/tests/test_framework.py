import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caseframe import (
    Attack,
    AttackType,
    Canon,
    CanonClass,
    CapExceededError,
    Conclusion,
    CQ,
    DirectiveKind,
    DirectiveSpec,
    Label,
    Polarity,
    Slot,
    build_framework,
    framework_to_dict,
    framework_to_dot,
    framework_to_json,
    grounded_labeling,
    preferred_labelings,
)
from caseframe.arguments import Argument, ArgumentKind
from caseframe.framework import ArgumentationFramework

from oracles import complete_labelings, grounded_oracle, preferred_oracle


def node(ident: str) -> Argument:
    """Bare argument with a conclusion that conflicts with nothing."""
    return Argument(
        id=ident,
        kind=ArgumentKind.PRIOR_CASE,
        conclusion=Conclusion(value=f"claim {ident}", polarity=Polarity.POSITIVE),
        rationale="synthetic",
    )


def undercut(a: str, b: str) -> Attack:
    return Attack(attacker=a, target=b, type=AttackType.UNDERCUT, cq=CQ.CQ1)


def af_of(names: str, *edges: tuple[str, str]) -> ArgumentationFramework:
    return ArgumentationFramework(
        arguments=tuple(node(n) for n in names.split()),
        defeats=tuple(undercut(a, b) for a, b in edges),
    )


def as_values(labeling) -> dict[str, str]:
    return {k: v.value for k, v in labeling.items()}


def draw_graph(data, max_nodes: int, max_edges: int):
    n = data.draw(st.integers(min_value=1, max_value=max_nodes))
    names = [f"n{i}" for i in range(n)]
    pairs = [(a, b) for a in names for b in names if a != b]
    if pairs:
        edges = data.draw(st.lists(st.sampled_from(pairs), max_size=max_edges, unique=True))
    else:
        edges = []
    return names, edges


# ---------------------------------------------------------------------------
# grounded semantics
# ---------------------------------------------------------------------------

def test_unattacked_argument_is_in():
    assert as_values(grounded_labeling(af_of("a"))) == {"a": "in"}


def test_simple_defeat():
    lab = as_values(grounded_labeling(af_of("a b", ("a", "b"))))
    assert lab == {"a": "in", "b": "out"}


def test_mutual_attack_is_undecided():
    lab = as_values(grounded_labeling(af_of("a b", ("a", "b"), ("b", "a"))))
    assert lab == {"a": "undec", "b": "undec"}


def test_reinstatement_chain():
    lab = as_values(grounded_labeling(af_of("a b c", ("a", "b"), ("b", "c"))))
    assert lab == {"a": "in", "b": "out", "c": "in"}


def test_floating_defeat():
    # a and b disagree; both attack c; c stays undecided, d is reinstated
    af = af_of("a b c d", ("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "d"))
    lab = as_values(grounded_labeling(af))
    assert lab == {"a": "undec", "b": "undec", "c": "undec", "d": "undec"}


def test_grounded_matches_oracle_on_handmade_graphs():
    graphs = [
        ("a", []),
        ("a b", [("a", "b")]),
        ("a b", [("a", "b"), ("b", "a")]),
        ("a b c", [("a", "b"), ("b", "c")]),
        ("a b c d", [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "d")]),
        ("a b c", [("a", "b"), ("b", "c"), ("c", "a")]),  # odd cycle
        ("a b c d", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),  # even cycle
    ]
    for names, edges in graphs:
        af = af_of(names, *edges)
        assert as_values(grounded_labeling(af)) == grounded_oracle(names.split(), edges)


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_grounded_laws_on_random_graphs(data):
    names, edges = draw_graph(data, max_nodes=7, max_edges=14)
    af = af_of(" ".join(names), *edges)
    lab = grounded_labeling(af)

    attackers = {x: {a for a, b in edges if b == x} for x in names}
    for x in names:
        if lab[x] is Label.IN:
            assert all(lab[a] is Label.OUT for a in attackers[x])
        elif lab[x] is Label.OUT:
            assert any(lab[a] is Label.IN for a in attackers[x])
        else:
            assert not all(lab[a] is Label.OUT for a in attackers[x])
            assert not any(lab[a] is Label.IN for a in attackers[x])


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_grounded_equals_minimal_complete_labeling(data):
    names, edges = draw_graph(data, max_nodes=6, max_edges=12)
    af = af_of(" ".join(names), *edges)
    assert as_values(grounded_labeling(af)) == grounded_oracle(names, edges)


# ---------------------------------------------------------------------------
# preferred semantics
# ---------------------------------------------------------------------------

def test_preferred_of_mutual_attack():
    labs = preferred_labelings(af_of("a b", ("a", "b"), ("b", "a")))
    assert [as_values(l) for l in labs] == [
        {"a": "in", "b": "out"},
        {"a": "out", "b": "in"},
    ]


def test_preferred_without_attacks_is_all_in():
    labs = preferred_labelings(af_of("a b c"))
    assert len(labs) == 1
    assert set(as_values(labs[0]).values()) == {"in"}


def test_preferred_cap():
    names = " ".join(f"n{i}" for i in range(21))
    with pytest.raises(CapExceededError):
        preferred_labelings(af_of(names))


def test_preferred_cap_is_configurable():
    af = af_of("a b c")
    with pytest.raises(CapExceededError):
        preferred_labelings(af, cap=2)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_preferred_matches_oracle(data):
    names, edges = draw_graph(data, max_nodes=5, max_edges=10)
    engine = [as_values(l) for l in preferred_labelings(af_of(" ".join(names), *edges))]
    oracle = preferred_oracle(names, edges)
    key = lambda lab: tuple(sorted(lab.items()))
    assert sorted(engine, key=key) == sorted(oracle, key=key)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_grounded_in_set_inside_every_preferred(data):
    names, edges = draw_graph(data, max_nodes=6, max_edges=12)
    af = af_of(" ".join(names), *edges)
    grounded_in = {k for k, v in grounded_labeling(af).items() if v is Label.IN}
    for lab in preferred_labelings(af):
        assert grounded_in <= {k for k, v in lab.items() if v is Label.IN}


# ---------------------------------------------------------------------------
# framework construction
# ---------------------------------------------------------------------------

def contender(ident, value, polarity=Polarity.POSITIVE, canon=None):
    return Argument(
        id=ident,
        kind=ArgumentKind.CANON_BASED if canon else ArgumentKind.PRIOR_CASE,
        conclusion=Conclusion(
            value=value, polarity=polarity,
            target_slot=Slot.INTERPRETANS, about="the term",
        ),
        rationale="synthetic",
        canons=(Canon(canon_class=canon),) if canon else (),
    )


PREF = DirectiveSpec(
    kind=DirectiveKind.PREFERENCE,
    text="linguistic first",
    directive_class="linguistic-priority-strict",
    tiers=(frozenset({CanonClass.LINGUISTIC}), frozenset({CanonClass.TELEOLOGICAL})),
)

PROC = DirectiveSpec(
    kind=DirectiveKind.PROCEDURE,
    text="stop at the first productive tier",
    directive_class="linguistic-first-procedure",
    tiers=(frozenset({CanonClass.LINGUISTIC}), frozenset({CanonClass.TELEOLOGICAL})),
)


def test_rebuttals_are_mutual_without_preference():
    a = contender("a", "reading one")
    b = contender("b", "reading two")
    af = build_framework([a, b], [])
    pairs = {(d.attacker, d.target) for d in af.defeats}
    assert pairs == {("a", "b"), ("b", "a")}
    assert all(d.type is AttackType.REBUTTAL for d in af.defeats)


def test_preference_drops_one_direction():
    a = contender("a", "reading one", canon=CanonClass.LINGUISTIC)
    b = contender("b", "reading two", canon=CanonClass.TELEOLOGICAL)
    af = build_framework([a, b], [], active=PREF)
    pairs = {(d.attacker, d.target) for d in af.defeats}
    assert pairs == {("a", "b")}
    lab = grounded_labeling(af)
    assert lab["a"] is Label.IN and lab["b"] is Label.OUT


def test_override_restores_mutual_rebuttal():
    a = contender("a", "reading one", canon=CanonClass.LINGUISTIC)
    b = contender("b", "reading two", canon=CanonClass.TELEOLOGICAL)
    af = build_framework([a, b], [], active=PREF, overridden=frozenset({"a"}))
    pairs = {(d.attacker, d.target) for d in af.defeats}
    assert pairs == {("a", "b"), ("b", "a")}


def test_undercuts_survive_preference():
    a = contender("a", "reading one", canon=CanonClass.LINGUISTIC)
    cq = node("cq-x")
    af = build_framework([a, cq], [undercut("cq-x", "a")], active=PREF)
    assert {(d.attacker, d.target) for d in af.defeats} == {("cq-x", "a")}


def test_cq_attackers_never_earn_rebuttals():
    a = contender("a", "reading one")
    hostile = Argument(
        id="cq-y",
        kind=ArgumentKind.CQ_ATTACKER,
        conclusion=Conclusion(
            value="reading one", polarity=Polarity.NEGATIVE,
            target_slot=Slot.INTERPRETANS, about="the term",
        ),
        rationale="synthetic",
        cq=CQ.CQ1,
    )
    af = build_framework([a, hostile], [undercut("cq-y", "a")])
    assert {(d.attacker, d.target) for d in af.defeats} == {("cq-y", "a")}


def test_procedure_excludes_later_tier_canon_arguments():
    ling = contender("ling", "reading one", canon=CanonClass.LINGUISTIC)
    tele = contender("tele", "reading two", canon=CanonClass.TELEOLOGICAL)
    prior = contender("prior", "reading three")
    af = build_framework([ling, tele, prior], [], active=PROC)
    ids = {a.id for a in af.arguments}
    assert ids == {"ling", "prior"}  # prior-case arguments are never excluded


def test_procedure_exclusion_respects_override():
    ling = contender("ling", "reading one", canon=CanonClass.LINGUISTIC)
    tele = contender("tele", "reading two", canon=CanonClass.TELEOLOGICAL)
    af = build_framework([ling, tele], [], active=PROC, overridden=frozenset({"tele"}))
    assert {a.id for a in af.arguments} == {"ling", "tele"}


def test_procedure_without_productive_tier_excludes_nothing():
    hist = contender("hist", "reading one", canon=CanonClass.HISTORICAL)
    af = build_framework([hist], [], active=PROC)
    assert {a.id for a in af.arguments} == {"hist"}


def test_dangling_attack_endpoint_rejected():
    a = node("a")
    with pytest.raises(ValueError):
        build_framework([a], [undercut("a", "ghost")])


def test_duplicate_arguments_and_attacks_deduplicated():
    a, b = node("a"), node("b")
    af = build_framework([a, b, a], [undercut("a", "b"), undercut("a", "b")])
    assert len(af.arguments) == 2
    assert len(af.defeats) == 1


def test_self_attack_construction_rejected():
    with pytest.raises(ValueError):
        Attack(attacker="a", target="a", type=AttackType.UNDERCUT, cq=CQ.CQ1)


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def test_json_export_is_sorted_and_newline_terminated():
    af = af_of("b a", ("a", "b"))
    text = framework_to_json(af, grounded_labeling(af))
    assert text.endswith("\n")
    data = framework_to_dict(af, grounded_labeling(af))
    assert [a["id"] for a in data["arguments"]] == ["a", "b"]
    assert list(data["labeling"]) == ["a", "b"]


def test_dot_styles_encode_labels():
    af = af_of("a b c", ("a", "b"), ("b", "c"), ("c", "b"))
    dot = framework_to_dot(af, grounded_labeling(af))
    assert '"a" [label="a", style=solid];' in dot
    assert '"b"' in dot and "style=dashed" in dot
    assert "style=dotted" not in dot  # b is out, c is in, nothing undecided


def test_dot_marks_undercuts_and_cq_tags():
    n = node("a")
    cq = Argument(
        id="cq-z",
        kind=ArgumentKind.CQ_ATTACKER,
        conclusion=Conclusion(value="challenge", polarity=Polarity.NEGATIVE),
        rationale="challenge",
        cq=CQ.CQ4,
    )
    af = build_framework([n, cq], [Attack("cq-z", "a", AttackType.UNDERCUT, cq=CQ.CQ4)])
    dot = framework_to_dot(af, grounded_labeling(af))
    assert 'label="CQ4"' in dot
    assert "arrowhead=onormal" in dot
    assert "CQ4\\ncq-z" in dot


def test_exports_are_deterministic():
    af = af_of("x y z", ("x", "y"), ("y", "z"))
    lab = grounded_labeling(af)
    assert framework_to_json(af, lab) == framework_to_json(af, lab)
    assert framework_to_dot(af, lab) == framework_to_dot(af, lab)
