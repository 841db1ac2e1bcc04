"""Abstract argumentation framework construction and labeling.

``build_framework`` turns synthesized arguments and candidate attacks into
a defeat graph: rebuttals are generated pairwise from conflicting
conclusions and then filtered by the active directive of preference;
undercuts (critical questions, user assertions) always survive.  Labeling
follows the grounded least-fixpoint semantics, with exhaustive preferred
enumeration available for small graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .arguments import (
    Argument,
    ArgumentKind,
    Attack,
    AttackType,
    Preference,
    conflicting_conclusions,
    directive_preference,
)
from .errors import CapExceededError
from .frames import DirectiveKind, DirectiveSpec


class Label(str, Enum):
    IN = "in"
    OUT = "out"
    UNDEC = "undec"


@dataclass(frozen=True)
class ArgumentationFramework:
    arguments: tuple[Argument, ...]
    defeats: tuple[Attack, ...]

    def argument(self, arg_id: str) -> Argument | None:
        for arg in self.arguments:
            if arg.id == arg_id:
                return arg
        return None


def _excluded_by_procedure(
    args: list[Argument], active: DirectiveSpec | None, overridden: frozenset[str]
) -> set[str]:
    """Canon-based arguments cut off by the active directive of procedure.

    Once some canon argument is produced from an earlier tier, arguments
    whose canon class only appears in later tiers are excluded, unless an
    override assertion exempts them.  Prior-case arguments are never
    excluded: appealing to a case is usable at any stage.
    """
    if active is None or active.kind is DirectiveKind.PREFERENCE or not active.tiers:
        return set()

    def tier_of(arg: Argument) -> int | None:
        best: int | None = None
        for canon in arg.canons:
            for i, tier in enumerate(active.tiers):
                if canon.canon_class in tier:
                    if best is None or i < best:
                        best = i
                    break
        return best

    canon_args = [a for a in args if a.kind is ArgumentKind.CANON_BASED]
    tiers = {a.id: tier_of(a) for a in canon_args}
    productive = [t for t in tiers.values() if t is not None]
    if not productive:
        return set()
    first = min(productive)
    return {
        a.id
        for a in canon_args
        if tiers[a.id] is not None and tiers[a.id] > first and a.id not in overridden
    }


def build_framework(
    args: list[Argument],
    attacks: list[Attack],
    active: DirectiveSpec | None = None,
    overridden: frozenset[str] = frozenset(),
) -> ArgumentationFramework:
    """Assemble the defeat graph.

    ``attacks`` are taken as-is (undercuts are preference-immune);
    rebuttals between conflicting conclusions are generated here and a
    direction is dropped when the directive of preference favors its
    target.  Attack endpoints must be in ``args``.
    """
    by_id: dict[str, Argument] = {}
    ordered: list[Argument] = []
    for arg in args:
        if arg.id not in by_id:
            by_id[arg.id] = arg
            ordered.append(arg)

    excluded = _excluded_by_procedure(ordered, active, overridden)
    if excluded:
        ordered = [a for a in ordered if a.id not in excluded]
        by_id = {a.id: a for a in ordered}

    defeats: list[Attack] = []
    seen: set[tuple[str, str]] = set()
    for attack in attacks:
        if attack.attacker in excluded or attack.target in excluded:
            continue
        if attack.attacker not in by_id or attack.target not in by_id:
            raise ValueError(
                f"attack {attack.attacker} -> {attack.target} references an unknown argument"
            )
        key = (attack.attacker, attack.target)
        if key not in seen:
            seen.add(key)
            defeats.append(attack)

    contenders = [a for a in ordered if a.kind is not ArgumentKind.CQ_ATTACKER]
    for i, a in enumerate(contenders):
        for b in contenders[i + 1 :]:
            if not conflicting_conclusions(a, b):
                continue
            pref = directive_preference(active, a, b, overridden)
            # a rebuts b unless b is preferred; b rebuts a unless a is preferred
            if pref is not Preference.B_PREFERRED and (a.id, b.id) not in seen:
                seen.add((a.id, b.id))
                defeats.append(
                    Attack(attacker=a.id, target=b.id, type=AttackType.REBUTTAL, auto=True)
                )
            if pref is not Preference.A_PREFERRED and (b.id, a.id) not in seen:
                seen.add((b.id, a.id))
                defeats.append(
                    Attack(attacker=b.id, target=a.id, type=AttackType.REBUTTAL, auto=True)
                )

    return ArgumentationFramework(arguments=tuple(ordered), defeats=tuple(defeats))


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------

def grounded_labeling(af: ArgumentationFramework) -> dict[str, Label]:
    """Least-fixpoint labeling: IN when all attackers are OUT, OUT when
    some attacker is IN, UNDEC for whatever never stabilizes."""
    attackers: dict[str, list[str]] = {arg.id: [] for arg in af.arguments}
    for attack in af.defeats:
        attackers[attack.target].append(attack.attacker)

    labels: dict[str, Label] = {}
    changed = True
    while changed:
        changed = False
        for arg in af.arguments:
            if arg.id in labels:
                continue
            atts = attackers[arg.id]
            if all(labels.get(x) is Label.OUT for x in atts):
                labels[arg.id] = Label.IN
                changed = True
            elif any(labels.get(x) is Label.IN for x in atts):
                labels[arg.id] = Label.OUT
                changed = True
    for arg in af.arguments:
        labels.setdefault(arg.id, Label.UNDEC)
    return labels


def preferred_labelings(af: ArgumentationFramework, cap: int = 20) -> list[dict[str, Label]]:
    """All maximal admissible labelings, by exhaustive enumeration.

    Refuses frameworks beyond the cap; enumeration is exponential and
    meant for desk-scale graphs only.
    """
    n = len(af.arguments)
    if n > cap:
        raise CapExceededError(
            f"preferred semantics enumerates 2^n labelings; {n} arguments exceed the cap of {cap}"
        )
    ids = [arg.id for arg in af.arguments]
    index = {arg_id: i for i, arg_id in enumerate(ids)}
    attackers_mask = [0] * n
    attacks_mask = [0] * n
    for attack in af.defeats:
        s, t = index[attack.attacker], index[attack.target]
        attackers_mask[t] |= 1 << s
        attacks_mask[s] |= 1 << t

    admissible: list[int] = []
    for subset in range(1 << n):
        ok = True
        attacked_by_subset = 0
        for i in range(n):
            if subset >> i & 1:
                if attackers_mask[i] & subset:
                    ok = False
                    break
                attacked_by_subset |= attacks_mask[i]
        if not ok:
            continue
        defended = True
        for i in range(n):
            if subset >> i & 1 and attackers_mask[i] & ~attacked_by_subset:
                defended = False
                break
        if defended:
            admissible.append(subset)

    preferred = [
        s for s in admissible if not any(s != t and s & t == s for t in admissible)
    ]
    labelings: list[dict[str, Label]] = []
    for subset in preferred:
        attacked = 0
        for i in range(n):
            if subset >> i & 1:
                attacked |= attacks_mask[i]
        labeling = {}
        for i, arg_id in enumerate(ids):
            if subset >> i & 1:
                labeling[arg_id] = Label.IN
            elif attacked >> i & 1:
                labeling[arg_id] = Label.OUT
            else:
                labeling[arg_id] = Label.UNDEC
        labelings.append(labeling)
    labelings.sort(key=lambda lab: sorted(k for k, v in lab.items() if v is Label.IN))
    return labelings


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def _ref_to_dict(ref) -> dict[str, str]:
    return {"slot": ref.slot.value, "value": ref.value, "origin": ref.origin.value}


def argument_to_dict(arg: Argument) -> dict:
    out: dict = {
        "id": arg.id,
        "kind": arg.kind.value,
        "conclusion": {
            "value": arg.conclusion.value,
            "polarity": arg.conclusion.polarity.value,
        },
        "rationale": arg.rationale,
    }
    if arg.conclusion.target_slot is not None:
        out["conclusion"]["targetSlot"] = arg.conclusion.target_slot.value
    if arg.conclusion.about:
        out["conclusion"]["about"] = arg.conclusion.about
    if arg.cited_case_id:
        out["citedCaseId"] = arg.cited_case_id
    if arg.alpha is not None:
        out["alpha"] = _ref_to_dict(arg.alpha)
    if arg.shared:
        out["shared"] = [_ref_to_dict(r) for r in arg.shared]
    if arg.beta is not None:
        out["beta"] = _ref_to_dict(arg.beta)
    if arg.canons:
        out["canons"] = [
            {"class": c.canon_class.value, **({"citedCaseId": c.cited_case_id} if c.cited_case_id else {}), **({"label": c.label} if c.label else {})}
            for c in arg.canons
        ]
    if arg.cq is not None:
        out["cq"] = arg.cq.value
    return out


def framework_to_dict(af: ArgumentationFramework, labeling: dict[str, Label]) -> dict:
    return {
        "arguments": [argument_to_dict(a) for a in sorted(af.arguments, key=lambda x: x.id)],
        "defeats": [
            {
                "attacker": d.attacker,
                "target": d.target,
                "type": d.type.value,
                **({"cq": d.cq.value} if d.cq else {}),
                "auto": d.auto,
            }
            for d in sorted(af.defeats, key=lambda x: (x.attacker, x.target))
        ],
        "labeling": {arg_id: labeling[arg_id].value for arg_id in sorted(labeling)},
    }


_DOT_STYLE = {Label.IN: "solid", Label.OUT: "dashed", Label.UNDEC: "dotted"}


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def framework_to_dot(af: ArgumentationFramework, labeling: dict[str, Label]) -> str:
    """Graphviz rendering; node outline style encodes the label."""
    lines = ["digraph framework {", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
    for arg in sorted(af.arguments, key=lambda x: x.id):
        label = arg.id
        if arg.cq is not None:
            label = f"{arg.cq.value}\\n{arg.id}"
        elif arg.cited_case_id:
            label = f"{arg.id}\\n{_dot_escape(arg.cited_case_id)}"
        style = _DOT_STYLE[labeling[arg.id]]
        lines.append(f'  "{arg.id}" [label="{label}", style={style}];')
    for attack in sorted(af.defeats, key=lambda x: (x.attacker, x.target)):
        attrs = []
        if attack.cq is not None:
            attrs.append(f'label="{attack.cq.value}"')
        if attack.type is AttackType.UNDERCUT:
            attrs.append("arrowhead=onormal")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{attack.attacker}" -> "{attack.target}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def framework_to_json(af: ArgumentationFramework, labeling: dict[str, Label]) -> str:
    return json.dumps(framework_to_dict(af, labeling), ensure_ascii=False, indent=2, sort_keys=True) + "\n"
