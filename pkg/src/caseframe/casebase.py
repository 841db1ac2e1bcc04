"""Case-base loading, persistence, indexing, and citation analysis.

A case base is an immutable snapshot: a set of validated case frames plus
the configuration the critical-question generators need (term aliases,
court hierarchies, age thresholds).  Mutations produce a new snapshot.

The interchange format is a UTF-8 JSON document:

    { "schema": "case-frame/1",
      "aliases": { term: canonical, ... },
      "courtHierarchies": { jurisdiction: [ [pattern, ...], ... ] },
      "config": { "obsolescenceYears": 20, "recencyYears": 2,
                  "minCitingCases": 2 },
      "cases": [ ... ] }

Tier 0 of a court hierarchy is the highest court.  Unknown fields are
rejected unless loading leniently.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fnmatch import fnmatchcase
from functools import cached_property
from typing import Any, Mapping

from .errors import CaseBaseError
from .frames import (
    CanonClass,
    CaseFrame,
    case_frame_to_dict,
    normalize_term,
    parse_case_frame,
)

SCHEMA_VERSION = "case-frame/1"

_TOP_KEYS = {"schema", "aliases", "courtHierarchies", "config", "cases"}
_CONFIG_KEYS = {"obsolescenceYears", "recencyYears", "minCitingCases", "compatibleDirectives"}


@dataclass(frozen=True)
class CQConfig:
    """Thresholds and overrides for the automatic critical questions."""

    obsolescence_years: int = 20
    recency_years: int = 2
    min_citing_cases: int = 2
    #: Pairs of directiveClass tags declared compatible (suppresses CQ8).
    compatible_directives: frozenset[frozenset[str]] = frozenset()

    def directives_conflict(self, a: str, b: str) -> bool:
        """Default rule: distinct classes conflict unless paired here."""
        ka, kb = normalize_term(a), normalize_term(b)
        if ka == kb:
            return False
        return frozenset({ka, kb}) not in self.compatible_directives


@dataclass(frozen=True, eq=False)
class CaseBase:
    """Immutable collection of case frames with lookup indexes.

    Safe for concurrent readers; ``add_case`` returns a new snapshot.
    """

    schema_version: str
    cases: dict[str, CaseFrame]
    aliases: dict[str, str]
    court_hierarchies: dict[str, tuple[tuple[str, ...], ...]]
    config: CQConfig
    warnings: tuple[str, ...] = ()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CaseBase):
            return NotImplemented
        return (
            self.schema_version == other.schema_version
            and self.cases == other.cases
            and self.aliases == other.aliases
            and self.court_hierarchies == other.court_hierarchies
            and self.config == other.config
        )

    def __len__(self) -> int:
        return len(self.cases)

    def get(self, identifier: str) -> CaseFrame | None:
        return self.cases.get(identifier)

    @cached_property
    def citation_edges(self) -> tuple[tuple[str, str], ...]:
        """Resolvable (citing, cited) pairs, deduplicated, in base order."""
        edges: list[tuple[str, str]] = []
        seen: set[tuple[str, str]] = set()
        for identifier, frame in self.cases.items():
            for canon in _frame_canons(frame):
                if canon.canon_class is not CanonClass.APPEAL_TO_PRIOR_CASE:
                    continue
                target = self._resolve(canon.cited_case_id or "")
                if target is None:
                    continue
                edge = (identifier, target)
                if edge not in seen:
                    seen.add(edge)
                    edges.append(edge)
        return tuple(edges)

    @cached_property
    def dangling_citations(self) -> tuple[tuple[str, str], ...]:
        """(citing, unresolvable cited id) pairs."""
        out: list[tuple[str, str]] = []
        for identifier, frame in self.cases.items():
            for canon in _frame_canons(frame):
                if canon.canon_class is not CanonClass.APPEAL_TO_PRIOR_CASE:
                    continue
                cited = canon.cited_case_id or ""
                if self._resolve(cited) is None:
                    out.append((identifier, cited))
        return tuple(out)

    @cached_property
    def citing_counts(self) -> dict[str, int]:
        """Distinct citing cases per cited case (for CQ5b)."""
        counts: dict[str, int] = {identifier: 0 for identifier in self.cases}
        for _, cited in self.citation_edges:
            counts[cited] += 1
        return counts

    @cached_property
    def _by_interpretandum(self) -> dict[str, list[str]]:
        return self._index(
            lambda f: [normalize_term(f.winning.interpretandum.expression, self.aliases)]
        )

    @cached_property
    def _by_citation(self) -> dict[str, list[str]]:
        return self._index(lambda f: [normalize_term(f.winning.document.citation, self.aliases)])

    @cached_property
    def _by_jurisdiction(self) -> dict[str, list[str]]:
        return self._index(lambda f: [normalize_term(f.case_data.jurisdiction, self.aliases)])

    @cached_property
    def _by_canon_class(self) -> dict[str, list[str]]:
        return self._index(
            lambda f: [c.canon_class.value for c in _frame_canons(f)]
        )

    def _index(self, keys) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for identifier, frame in self.cases.items():
            for key in keys(frame):
                out.setdefault(key, [])
                if identifier not in out[key]:
                    out[key].append(identifier)
        return out

    def _resolve(self, cited: str) -> str | None:
        if cited in self.cases:
            return cited
        token = normalize_term(cited, self.aliases)
        for identifier in self.cases:
            if normalize_term(identifier, self.aliases) == token:
                return identifier
        return None

    def court_rank(self, jurisdiction: str, court: str) -> int | None:
        """Tier index of a court (0 = highest); None when not configured."""
        tiers = self.court_hierarchies.get(normalize_term(jurisdiction, self.aliases))
        if tiers is None:
            return None
        name = normalize_term(court, self.aliases)
        for rank, patterns in enumerate(tiers):
            for pattern in patterns:
                if fnmatchcase(name, pattern):
                    return rank
        return None


@dataclass(frozen=True)
class OpinionLine:
    """A chain of cases linked by appeals to the previous one, newest first."""

    chain: tuple[str, ...]


def _frame_canons(frame: CaseFrame):
    yield from frame.winning.statement.canons
    for stmt in frame.defeated:
        yield from stmt.canons


# ---------------------------------------------------------------------------
# Loading and persistence
# ---------------------------------------------------------------------------

def _parse_config(raw: Any, errors: list[str], warnings: list[str], lenient: bool) -> CQConfig:
    if raw is None:
        return CQConfig()
    if not isinstance(raw, Mapping):
        errors.append("config: must be an object")
        return CQConfig()
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        msg = f"config: unknown field(s) {', '.join(unknown)}"
        (warnings if lenient else errors).append(msg)
    values: dict[str, int] = {}
    for key, attr in (
        ("obsolescenceYears", "obsolescence_years"),
        ("recencyYears", "recency_years"),
        ("minCitingCases", "min_citing_cases"),
    ):
        if key in raw:
            value = raw[key]
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                errors.append(f"config.{key}: must be a non-negative integer")
            else:
                values[attr] = value
    compatible: set[frozenset[str]] = set()
    raw_pairs = raw.get("compatibleDirectives")
    if raw_pairs is not None:
        if not isinstance(raw_pairs, list):
            errors.append("config.compatibleDirectives: must be a list of class pairs")
        else:
            for i, pair in enumerate(raw_pairs):
                if (
                    not isinstance(pair, list)
                    or len(pair) != 2
                    or not all(isinstance(x, str) and x.strip() for x in pair)
                ):
                    errors.append(
                        f"config.compatibleDirectives[{i}]: must be a pair of directiveClass tags"
                    )
                    continue
                compatible.add(frozenset(normalize_term(x) for x in pair))
    return CQConfig(compatible_directives=frozenset(compatible), **values)


def _parse_hierarchies(
    raw: Any, errors: list[str]
) -> dict[str, tuple[tuple[str, ...], ...]]:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        errors.append("courtHierarchies: must be an object keyed by jurisdiction")
        return {}
    out: dict[str, tuple[tuple[str, ...], ...]] = {}
    for jurisdiction, tiers in raw.items():
        where = f"courtHierarchies.{jurisdiction}"
        if not isinstance(tiers, list):
            errors.append(f"{where}: must be a list of tiers")
            continue
        parsed: list[tuple[str, ...]] = []
        for i, tier in enumerate(tiers):
            if not isinstance(tier, list) or not all(isinstance(p, str) for p in tier):
                errors.append(f"{where}[{i}]: tier must be a list of court-name patterns")
                continue
            parsed.append(tuple(normalize_term(p) for p in tier))
        out[normalize_term(str(jurisdiction))] = tuple(parsed)
    return out


def _parse_aliases(raw: Any, errors: list[str]) -> dict[str, str]:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        errors.append("aliases: must be an object mapping term to canonical term")
        return {}
    out: dict[str, str] = {}
    for key, value in raw.items():
        if not isinstance(value, str) or not value.strip():
            errors.append(f"aliases.{key}: canonical term must be a non-empty string")
            continue
        out[" ".join(str(key).split()).casefold()] = value
    return out


def _assemble(
    schema_version: str,
    frames: list[CaseFrame],
    aliases: dict[str, str],
    hierarchies: dict[str, tuple[tuple[str, ...], ...]],
    config: CQConfig,
    errors: list[str],
    warnings: list[str],
) -> CaseBase:
    """Cross-case validation: unique ids, citation dates, cycles."""
    cases: dict[str, CaseFrame] = {}
    for frame in frames:
        identifier = frame.identifier
        if identifier in cases:
            errors.append(f"duplicate identifier {identifier!r}")
            continue
        cases[identifier] = frame

    base = CaseBase(
        schema_version=schema_version,
        cases=cases,
        aliases=aliases,
        court_hierarchies=hierarchies,
        config=config,
        warnings=(),
    )
    for citing, cited in base.citation_edges:
        if cases[citing].case_data.date <= cases[cited].case_data.date:
            errors.append(
                f"citation {citing} -> {cited}: citing case must be decided "
                f"after the cited case ({cases[citing].case_data.date} <= "
                f"{cases[cited].case_data.date})"
            )
    for citing, cited in base.dangling_citations:
        warnings.append(f"{citing}: cites unknown case {cited!r}")

    if errors:
        raise CaseBaseError(errors)
    return CaseBase(
        schema_version=schema_version,
        cases=cases,
        aliases=aliases,
        court_hierarchies=hierarchies,
        config=config,
        warnings=tuple(warnings),
    )


def parse_case_base(document: Mapping[str, Any], lenient: bool = False) -> CaseBase:
    """Build a validated CaseBase from a parsed interchange document.

    Raises ``CaseBaseError`` listing every violation found, not just the
    first.
    """
    errors: list[str] = []
    warnings: list[str] = []
    if not isinstance(document, Mapping):
        raise CaseBaseError(["document must be a JSON object"])
    unknown = sorted(set(document) - _TOP_KEYS)
    if unknown:
        msg = f"unknown top-level field(s) {', '.join(unknown)}"
        (warnings if lenient else errors).append(msg)

    schema = document.get("schema")
    if schema != SCHEMA_VERSION:
        errors.append(f"schema: expected {SCHEMA_VERSION!r}, got {schema!r}")

    aliases = _parse_aliases(document.get("aliases"), errors)
    hierarchies = _parse_hierarchies(document.get("courtHierarchies"), errors)
    config = _parse_config(document.get("config"), errors, warnings, lenient)

    frames: list[CaseFrame] = []
    raw_cases = document.get("cases")
    if not isinstance(raw_cases, list):
        errors.append("cases: must be a list")
        raw_cases = []
    for i, raw in enumerate(raw_cases):
        frame, report = parse_case_frame(raw, lenient=lenient)
        label = None
        if isinstance(raw, Mapping):
            raw_cd = raw.get("caseData")
            if isinstance(raw_cd, Mapping):
                label = raw_cd.get("identifier")
        prefix = f"cases[{i}]" + (f" ({label})" if label else "")
        errors.extend(f"{prefix}: {e}" for e in report.errors)
        warnings.extend(f"{prefix}: {w}" for w in report.warnings)
        if frame is not None:
            frames.append(frame)

    return _assemble(SCHEMA_VERSION, frames, aliases, hierarchies, config, errors, warnings)


def load_case_base(source: Mapping[str, Any] | str | os.PathLike, lenient: bool = False) -> CaseBase:
    """Load a case base from a parsed document or a JSON file path."""
    if isinstance(source, Mapping):
        return parse_case_base(source, lenient=lenient)
    try:
        with open(source, encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        raise CaseBaseError([f"cannot read {source}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise CaseBaseError([f"{source}: invalid JSON: {exc}"]) from exc
    return parse_case_base(document, lenient=lenient)


def case_base_to_dict(base: CaseBase) -> dict[str, Any]:
    """Serialize back to the interchange shape; load(save(b)) == b."""
    out: dict[str, Any] = {"schema": base.schema_version}
    if base.aliases:
        out["aliases"] = dict(base.aliases)
    if base.court_hierarchies:
        out["courtHierarchies"] = {
            jurisdiction: [list(tier) for tier in tiers]
            for jurisdiction, tiers in base.court_hierarchies.items()
        }
    config: dict[str, Any] = {
        "obsolescenceYears": base.config.obsolescence_years,
        "recencyYears": base.config.recency_years,
        "minCitingCases": base.config.min_citing_cases,
    }
    if base.config.compatible_directives:
        config["compatibleDirectives"] = sorted(
            sorted(pair) for pair in base.config.compatible_directives
        )
    out["config"] = config
    out["cases"] = [case_frame_to_dict(frame) for frame in base.cases.values()]
    return out


def save_case_base(base: CaseBase, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(case_base_to_dict(base), fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def add_case(base: CaseBase, frame: CaseFrame) -> CaseBase:
    """New snapshot with the frame added; all cross-case invariants rechecked."""
    errors: list[str] = []
    warnings: list[str] = []
    return _assemble(
        base.schema_version,
        list(base.cases.values()) + [frame],
        base.aliases,
        base.court_hierarchies,
        base.config,
        errors,
        warnings,
    )


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def query_cases(
    base: CaseBase,
    interpretandum: str | None = None,
    document_citation: str | None = None,
    jurisdiction: str | None = None,
    canon_class: str | None = None,
    decided_before: Any = None,
) -> list[CaseFrame]:
    """Conjunction of the provided filters; date descending, then identifier."""
    candidates: set[str] | None = None

    def narrow(ids: list[str]) -> None:
        nonlocal candidates
        candidates = set(ids) if candidates is None else candidates & set(ids)

    if interpretandum is not None:
        narrow(base._by_interpretandum.get(normalize_term(interpretandum, base.aliases), []))
    if document_citation is not None:
        narrow(base._by_citation.get(normalize_term(document_citation, base.aliases), []))
    if jurisdiction is not None:
        narrow(base._by_jurisdiction.get(normalize_term(jurisdiction, base.aliases), []))
    if canon_class is not None:
        try:
            cls = CanonClass(normalize_term(canon_class, base.aliases))
        except ValueError:
            return []
        narrow(base._by_canon_class.get(cls.value, []))

    selected = base.cases.keys() if candidates is None else candidates
    frames = [base.cases[identifier] for identifier in selected]
    if decided_before is not None:
        frames = [f for f in frames if f.case_data.date < decided_before]
    frames.sort(key=lambda f: (f.case_data.date.toordinal() * -1, f.identifier))
    return frames


def citation_graph(base: CaseBase) -> frozenset[tuple[str, str]]:
    """Directed (citing, cited) edges; dangling targets are on the base."""
    return frozenset(base.citation_edges)


def lines_of_opinion(base: CaseBase) -> list[OpinionLine]:
    """All maximal citation chains of at least two cases, newest case first.

    The citation graph is acyclic for any base that passed loading (dates
    strictly decrease along edges); the guard here is defensive.
    """
    succ: dict[str, list[str]] = {}
    has_incoming: set[str] = set()
    for citing, cited in base.citation_edges:
        succ.setdefault(citing, []).append(cited)
        has_incoming.add(cited)
    for targets in succ.values():
        targets.sort(key=lambda c: (base.cases[c].case_data.date.toordinal() * -1, c))

    lines: list[OpinionLine] = []
    sources = sorted(
        (node for node in succ if node not in has_incoming),
        key=lambda c: (base.cases[c].case_data.date.toordinal() * -1, c),
    )

    def walk(node: str, path: list[str]) -> None:
        if node in path:
            raise CaseBaseError([f"citation cycle through {node!r}"])
        path.append(node)
        targets = succ.get(node, [])
        if not targets:
            if len(path) >= 2:
                lines.append(OpinionLine(chain=tuple(path)))
        else:
            for target in targets:
                walk(target, path)
        path.pop()

    for source in sources:
        walk(source, [])
    lines.sort(
        key=lambda ln: (base.cases[ln.chain[0]].case_data.date.toordinal() * -1, ln.chain)
    )
    return lines
