"""Automatic critical questions against prior-case arguments.

Each generator returns attacker nodes rather than deleting edges, so a
challenge can itself be challenged and the target reinstated.  Similarity
relevance (CQ1) and free-form distinguishing (CQ2) have no computable
criterion and stay manual; ``difference_report`` feeds those decisions.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .arguments import (
    Argument,
    ArgumentKind,
    Attack,
    AttackType,
    CQ,
    Conclusion,
    _digest,
    shared_elements,
)
from .casebase import CaseBase
from .frames import (
    CaseFrame,
    CharacteristicCategory,
    Polarity,
    ProblemFrame,
    Procedural,
    SIMILARITY_SLOTS,
    SlotElementRef,
    frame_elements,
    normalize_term,
)


@dataclass(frozen=True)
class CQResult:
    """One attacker node with every attack edge it emits.

    Most critical questions emit a single edge against the questioned
    argument; CQ8 nodes additionally attack the opposing CQ8 nodes, which
    is what leaves both sides undecided instead of defeating both.
    """

    attacker: Argument
    attacks: tuple[Attack, ...]


@dataclass(frozen=True)
class DifferenceReport:
    """Unshared similarity-slot elements between a cited case and the problem."""

    case_id: str
    only_in_case: tuple[SlotElementRef, ...]
    only_in_problem: tuple[SlotElementRef, ...]


def years_between(start: dt.date, end: dt.date) -> int:
    """Whole calendar years from start to end (negative when end < start)."""
    years = end.year - start.year
    if (end.month, end.day) < (start.month, start.day):
        years -= 1
    return years


def _attacker(tag: CQ, target: Argument, evidence: str, rationale: str) -> tuple[Argument, Attack]:
    node = Argument(
        id=f"cq-{tag.value.lower()}-" + _digest(tag.value, target.id, evidence),
        kind=ArgumentKind.CQ_ATTACKER,
        conclusion=Conclusion(value=rationale, polarity=Polarity.NEGATIVE),
        rationale=rationale,
        cq=tag,
    )
    return node, Attack(attacker=node.id, target=target.id, type=AttackType.UNDERCUT, cq=tag)


def _category_values(frame_chars, category: CharacteristicCategory, aliases) -> set[str]:
    return {
        normalize_term(ch.value, aliases)
        for ch in frame_chars
        if ch.category is category
    }


def auto_critical_attacks(
    arg: Argument, p: ProblemFrame, base: CaseBase
) -> tuple[list[CQResult], list[str]]:
    """CQ2a-c, CQ4, CQ5a/b, CQ6, CQ7 checks for one prior-case argument.

    Returns the triggered attackers plus informational notes (hierarchy
    gaps, equal court rank) that do not justify an attack.
    """
    results: list[CQResult] = []
    notes: list[str] = []
    if arg.kind is not ArgumentKind.PRIOR_CASE or not arg.cited_case_id:
        return results, notes
    c = base.get(arg.cited_case_id)
    if c is None:
        return results, notes
    cid = c.identifier

    def add(tag: CQ, evidence: str, rationale: str) -> None:
        node, attack = _attacker(tag, arg, evidence, rationale)
        results.append(CQResult(attacker=node, attacks=(attack,)))

    # CQ2a/2b/2c: mechanical distinguishing on categorized characteristics.
    # Fires only when both frames state the category and share no value.
    for tag, category, label in (
        (CQ.CQ2A, CharacteristicCategory.BRANCH, "branch of law"),
        (CQ.CQ2B, CharacteristicCategory.PROVISION_TYPE, "provision type"),
        (CQ.CQ2C, CharacteristicCategory.GOAL, "goal"),
    ):
        case_values = _category_values(c.winning.characteristics, category, base.aliases)
        problem_values = _category_values(p.characteristics, category, base.aliases)
        if case_values and problem_values and not (case_values & problem_values):
            add(
                tag,
                category.value,
                f"{cid} concerns {label} {sorted(case_values)} but the problem "
                f"concerns {sorted(problem_values)}",
            )

    if normalize_term(c.case_data.jurisdiction, base.aliases) != normalize_term(
        p.forum.jurisdiction, base.aliases
    ):
        add(
            CQ.CQ4,
            "jurisdiction",
            f"{cid} was decided in {c.case_data.jurisdiction!r}, not in the forum "
            f"jurisdiction {p.forum.jurisdiction!r}",
        )

    age = years_between(c.case_data.date, p.as_of_date)
    if age > base.config.obsolescence_years:
        add(
            CQ.CQ5A,
            "age",
            f"{cid} was decided {age} years before the problem date, beyond the "
            f"{base.config.obsolescence_years}-year threshold",
        )
    elif age < base.config.recency_years:
        citing = base.citing_counts.get(cid, 0)
        if citing < base.config.min_citing_cases:
            add(
                CQ.CQ5B,
                "recency",
                f"{cid} is only {age} year(s) old and cited by {citing} case(s); "
                "its position is not yet well established",
            )

    if normalize_term(c.case_data.jurisdiction, base.aliases) == normalize_term(
        p.forum.jurisdiction, base.aliases
    ):
        case_rank = base.court_rank(c.case_data.jurisdiction, c.case_data.court)
        forum_rank = base.court_rank(p.forum.jurisdiction, p.forum.court)
        if case_rank is None or forum_rank is None:
            notes.append(
                f"CQ6 not evaluated for {cid}: court rank unknown "
                f"({c.case_data.court!r} vs {p.forum.court!r})"
            )
        elif case_rank > forum_rank:
            add(
                CQ.CQ6,
                "hierarchy",
                f"{c.case_data.court} ranks below the forum court {p.forum.court}",
            )
        elif case_rank == forum_rank:
            notes.append(f"{cid}: cited court and forum court are of equal rank")

    if c.case_data.procedural is not Procedural.FINAL:
        add(
            CQ.CQ7,
            "procedural",
            f"{cid} is not known to be a final decision "
            f"(status: {c.case_data.procedural.value})",
        )

    return results, notes


def counterexample_search(
    arg: Argument, p: ProblemFrame, base: CaseBase
) -> list[CQResult]:
    """CQ3: cases more similar to the problem that lack the transferred element."""
    results: list[CQResult] = []
    if arg.kind is not ArgumentKind.PRIOR_CASE or not arg.cited_case_id or arg.beta is None:
        return results
    c = base.get(arg.cited_case_id)
    if c is None:
        return results
    cited_count = len(shared_elements(c, p, base))
    beta_key = arg.beta.key()
    for identifier, r in base.cases.items():
        if identifier == arg.cited_case_id:
            continue
        r_count = len(shared_elements(r, p, base))
        if r_count <= cited_count:
            continue
        if any(ref.key() == beta_key for ref in frame_elements(r, base.aliases)):
            continue
        node, attack = _attacker(
            CQ.CQ3,
            arg,
            identifier,
            f"{identifier} shares {r_count} element(s) with the problem against "
            f"{cited_count} for {arg.cited_case_id}, and does not contain "
            f"{arg.beta.slot.value} = {arg.beta.value!r}",
        )
        results.append(CQResult(attacker=node, attacks=(attack,)))
    return results


def directive_conflict_attacks(
    args: list[Argument], p: ProblemFrame, base: CaseBase
) -> list[CQResult]:
    """CQ8: sharing cases whose second-order rules are incompatible.

    For each conflicting case pair, every prior-case argument citing one
    case gets an attacker evidenced by the other case; opposing attackers
    attack each other, so neither side wins by default.
    """
    by_case: dict[str, list[Argument]] = {}
    for arg in args:
        if arg.kind is ArgumentKind.PRIOR_CASE and arg.cited_case_id:
            by_case.setdefault(arg.cited_case_id, []).append(arg)

    case_ids = [
        cid
        for cid in by_case
        if base.get(cid) is not None and base.cases[cid].second_order is not None
    ]

    nodes: dict[tuple[str, str], Argument] = {}
    primary: dict[tuple[str, str], Attack] = {}

    def node_for(target: Argument, evidence_cid: str) -> Argument:
        key = (target.id, evidence_cid)
        if key not in nodes:
            target_class = base.cases[target.cited_case_id].second_order.directive_class
            evidence_class = base.cases[evidence_cid].second_order.directive_class
            node, attack = _attacker(
                CQ.CQ8,
                target,
                evidence_cid,
                f"{evidence_cid} also shares features with the problem but follows "
                f"the second-order rule {evidence_class!r}, not {target_class!r} "
                f"as {target.cited_case_id} does",
            )
            nodes[key] = node
            primary[key] = attack
        return nodes[key]

    cross: dict[tuple[str, str], list[Attack]] = {}
    for i, ci in enumerate(case_ids):
        for cj in case_ids[i + 1 :]:
            spec_i = base.cases[ci].second_order
            spec_j = base.cases[cj].second_order
            if not base.config.directives_conflict(
                spec_i.directive_class, spec_j.directive_class
            ):
                continue
            for a in by_case[ci]:
                for b in by_case[cj]:
                    node_a = node_for(a, cj)
                    node_b = node_for(b, ci)
                    cross.setdefault((a.id, cj), []).append(
                        Attack(attacker=node_a.id, target=node_b.id, type=AttackType.UNDERCUT, cq=CQ.CQ8)
                    )
                    cross.setdefault((b.id, ci), []).append(
                        Attack(attacker=node_b.id, target=node_a.id, type=AttackType.UNDERCUT, cq=CQ.CQ8)
                    )

    results: list[CQResult] = []
    for key, node in nodes.items():
        extra = []
        seen: set[tuple[str, str]] = set()
        for attack in cross.get(key, []):
            pair = (attack.attacker, attack.target)
            if pair not in seen:
                seen.add(pair)
                extra.append(attack)
        results.append(CQResult(attacker=node, attacks=(primary[key], *extra)))
    return results


def difference_report(c: CaseFrame, p: ProblemFrame, base: CaseBase) -> DifferenceReport:
    """Similarity-slot elements each side holds that the other lacks.

    This is advisory output for the human CQ1/CQ2 judgment; it never
    attacks anything by itself.
    """
    case_refs = [ref for ref in frame_elements(c, base.aliases) if ref.slot in SIMILARITY_SLOTS]
    problem_refs = [ref for ref in frame_elements(p, base.aliases) if ref.slot in SIMILARITY_SLOTS]
    case_keys = {ref.key() for ref in case_refs}
    problem_keys = {ref.key() for ref in problem_refs}
    return DifferenceReport(
        case_id=c.identifier,
        only_in_case=tuple(ref for ref in case_refs if ref.key() not in problem_keys),
        only_in_problem=tuple(ref for ref in problem_refs if ref.key() not in case_keys),
    )
