"""Brute-force reference implementations used to check the engine.

Everything here is written independently of the package internals:
labelings are found by exhaustive enumeration over candidate IN-sets,
not by fixpoint iteration, so agreement is meaningful evidence.
"""

from __future__ import annotations

import datetime as dt
from itertools import chain, combinations


def complete_labelings(nodes, edges):
    """All complete labelings of a digraph, brute-forced.

    nodes: iterable of hashable ids; edges: iterable of (attacker, target).
    Returns a list of dicts mapping node -> "in" | "out" | "undec".
    """
    nodes = list(nodes)
    attackers = {n: set() for n in nodes}
    for a, t in edges:
        attackers[t].add(a)

    found = []
    for bits in range(2 ** len(nodes)):
        in_set = {n for i, n in enumerate(nodes) if bits >> i & 1}
        out_set = {n for n in nodes if attackers[n] & in_set}
        if in_set & out_set:
            continue
        undec = set(nodes) - in_set - out_set
        # IN iff all attackers OUT
        if any(not attackers[n] <= out_set for n in in_set):
            continue
        # UNDEC must have no IN attacker (holds by construction) and
        # must not have all attackers OUT (else the laws force IN)
        if any(attackers[n] <= out_set for n in undec):
            continue
        lab = {n: "undec" for n in undec}
        lab.update({n: "in" for n in in_set})
        lab.update({n: "out" for n in out_set})
        found.append(lab)
    return found


def grounded_oracle(nodes, edges):
    """The complete labeling whose IN-set is contained in all others."""
    labs = complete_labelings(nodes, edges)
    for lab in labs:
        in_set = {n for n, v in lab.items() if v == "in"}
        if all(
            in_set <= {n for n, v in other.items() if v == "in"}
            for other in labs
        ):
            return lab
    raise AssertionError("no minimal complete labeling found")


def preferred_oracle(nodes, edges):
    """All maximal admissible sets, as labelings."""
    nodes = list(nodes)
    attackers = {n: set() for n in nodes}
    for a, t in edges:
        attackers[t].add(a)

    def attacks_set(group, target):
        return bool(attackers[target] & group)

    def admissible(group):
        for n in group:
            if attackers[n] & group:  # conflict inside
                return False
            for enemy in attackers[n]:
                if not attacks_set(group, enemy):  # undefended member
                    return False
        return True

    subsets = [
        set(c)
        for c in chain.from_iterable(
            combinations(nodes, k) for k in range(len(nodes) + 1)
        )
    ]
    admissibles = [s for s in subsets if admissible(s)]
    maximal = [
        s for s in admissibles
        if not any(s < other for other in admissibles)
    ]
    out = []
    for s in maximal:
        lab = {}
        for n in nodes:
            if n in s:
                lab[n] = "in"
            elif attackers[n] & s:
                lab[n] = "out"
            else:
                lab[n] = "undec"
        out.append(lab)
    return out


def add_years(d: dt.date, k: int) -> dt.date:
    """Anniversary of d after k years; Feb 29 rolls to Mar 1 off leap years."""
    try:
        return d.replace(year=d.year + k)
    except ValueError:
        return d.replace(year=d.year + k, month=3, day=1)


def years_between_oracle(start: dt.date, end: dt.date) -> int:
    """Largest k with anniversary(start, k) <= end, found by stepping."""
    k = 0
    if end >= start:
        while add_years(start, k + 1) <= end:
            k += 1
        return k
    while add_years(start, k) > end:
        k -= 1
    return k


def shared_count_oracle(case_elements, problem_elements, similarity_slots):
    """Count of shared (slot, value) pairs restricted to similarity slots."""
    case_keys = {
        (slot, value) for slot, value in case_elements if slot in similarity_slots
    }
    problem_keys = {
        (slot, value) for slot, value in problem_elements if slot in similarity_slots
    }
    return len(case_keys & problem_keys)
