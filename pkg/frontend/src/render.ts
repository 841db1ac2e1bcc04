/**
 * DOM builders for the workspace.
 *
 * Builders are pure: they take a Document plus view data and return detached
 * elements, attaching no event listeners. Interactive elements carry
 * `data-action` attributes; a single delegated listener in main.ts turns
 * clicks and submits into API calls. Labels are rendered only when the
 * latest server response carries them — nothing is recomputed client-side.
 */

import type {
  ArgumentView,
  AssertionView,
  CaseSummary,
  CQSuggestion,
  Label,
  SessionView,
} from "./api.js";
import type { Layout } from "./graph.js";
import {
  ASSERTABLE_CQS,
  attackerNodes,
  attacksOn,
  argumentsBySlot,
  filledSlots,
  labelOf,
} from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

type Child = Node | string | null;

function el(
  doc: Document,
  tag: string,
  attrs: Record<string, string> = {},
  children: Child[] = [],
): HTMLElement {
  const node = doc.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  for (const child of children) {
    if (child === null) {
      continue;
    }
    node.append(child);
  }
  return node;
}

function badge(doc: Document, label: Label | null): HTMLElement | null {
  if (label === null) {
    return null;
  }
  return el(doc, "span", { class: `badge label-${label}`, "data-label": label }, [label]);
}

export function renderCaseList(doc: Document, cases: CaseSummary[]): HTMLElement {
  const rows = cases.map((c) =>
    el(doc, "li", { class: "case-row", "data-case-id": c.identifier }, [
      el(doc, "strong", {}, [c.identifier]),
      el(doc, "span", { class: "muted" }, [` ${c.court}, ${c.date} (${c.procedural})`]),
      el(doc, "div", { class: "case-expression" }, [`“${c.interpretandum}”`]),
    ]),
  );
  return el(doc, "section", { class: "panel", id: "case-list" }, [
    el(doc, "h2", {}, ["Case base"]),
    el(doc, "ul", { class: "cases" }, rows),
  ]);
}

export function renderProblemPanel(doc: Document, state: SessionView): HTMLElement {
  const problem = state.problem;
  const rows: Child[] = [
    el(doc, "dt", {}, ["forum"]),
    el(doc, "dd", {}, [`${problem.forum.jurisdiction}, ${problem.forum.court}`]),
    el(doc, "dt", {}, ["as of"]),
    el(doc, "dd", {}, [problem.asOfDate]),
    el(doc, "dt", {}, ["interpretandum"]),
    el(doc, "dd", {}, [
      `“${problem.interpretandum.expression}”` +
        (problem.interpretandum.locus ? ` — ${problem.interpretandum.locus}` : ""),
    ]),
  ];
  for (const [slot, value] of filledSlots(state)) {
    rows.push(el(doc, "dt", {}, [slot]));
    rows.push(el(doc, "dd", { "data-slot": slot }, [value]));
  }
  return el(doc, "section", { class: "panel", id: "problem-panel" }, [
    el(doc, "h2", {}, [`Problem ${state.sessionId}`]),
    el(doc, "dl", { class: "problem-slots" }, rows),
  ]);
}

function elementText(ref: { slot: string; value: string } | undefined): string {
  return ref ? `${ref.slot} = ${ref.value}` : "—";
}

export function renderArgumentCard(
  doc: Document,
  argument: ArgumentView,
  state: SessionView,
): HTMLElement {
  const label = labelOf(state, argument.id);
  const attackers = attackerNodes(state);
  const sign = argument.conclusion.polarity === "positive" ? "" : "not ";
  const conclusion = `${argument.conclusion.targetSlot ?? "?"} = ${sign}${argument.conclusion.value}`;

  const details: Child[] = [
    el(doc, "dt", {}, ["cited case"]),
    el(doc, "dd", {}, [argument.citedCaseId ?? "—"]),
    el(doc, "dt", {}, ["α (anchor)"]),
    el(doc, "dd", {}, [elementText(argument.alpha)]),
    el(doc, "dt", {}, ["shared"]),
    el(doc, "dd", {}, [(argument.shared ?? []).map(elementText).join("; ") || "—"]),
    el(doc, "dt", {}, ["β (transfers)"]),
    el(doc, "dd", {}, [elementText(argument.beta)]),
  ];
  if (argument.canons && argument.canons.length > 0) {
    details.push(el(doc, "dt", {}, ["canons"]));
    details.push(
      el(doc, "dd", {}, [argument.canons.map((c) => `${c.label} (${c.class})`).join(", ")]),
    );
  }

  const challenges = attacksOn(state, argument.id).map((defeat) => {
    const attacker = attackers.get(defeat.attacker);
    const attackerLabel = labelOf(state, defeat.attacker);
    return el(doc, "li", { class: "challenge", "data-attacker": defeat.attacker }, [
      el(doc, "span", { class: "cq-tag" }, [defeat.cq ?? defeat.type]),
      " ",
      attacker ? attacker.rationale : defeat.attacker,
      " ",
      badge(doc, attackerLabel),
    ]);
  });

  const body: Child[] = [
    el(doc, "header", { class: "card-head" }, [
      el(doc, "code", { class: "arg-id" }, [argument.id]),
      badge(doc, label),
    ]),
    el(doc, "p", { class: "conclusion" }, [conclusion]),
    el(doc, "dl", { class: "arg-details" }, details),
    el(doc, "p", { class: "rationale" }, [argument.rationale]),
  ];
  if (challenges.length > 0) {
    body.push(el(doc, "h4", {}, ["Challenges"]));
    body.push(el(doc, "ul", { class: "challenges" }, challenges));
  }
  if (argument.conclusion.targetSlot) {
    body.push(
      el(
        doc,
        "button",
        {
          class: "transfer" + (label === "in" ? "" : " subdued"),
          "data-action": "transfer",
          "data-argument-id": argument.id,
          type: "button",
        },
        [`Transfer ${argument.conclusion.targetSlot}`],
      ),
    );
  }

  return el(
    doc,
    "article",
    {
      class: "argument-card",
      "data-argument-id": argument.id,
      "data-slot": argument.conclusion.targetSlot ?? "",
      "data-kind": argument.kind,
    },
    body,
  );
}

export function renderArgumentCards(doc: Document, state: SessionView): HTMLElement {
  const sections: Child[] = [];
  for (const [slot, group] of argumentsBySlot(state)) {
    sections.push(
      el(doc, "section", { class: "slot-group", "data-slot": slot }, [
        el(doc, "h3", {}, [slot]),
        el(
          doc,
          "div",
          { class: "cards" },
          group.map((a) => renderArgumentCard(doc, a, state)),
        ),
      ]),
    );
  }
  return el(doc, "section", { class: "panel", id: "arguments" }, [
    el(doc, "h2", {}, ["Arguments"]),
    ...(sections.length > 0 ? sections : [el(doc, "p", { class: "muted" }, ["none synthesized"])]),
  ]);
}

export function renderSuggestions(doc: Document, suggestions: CQSuggestion[]): HTMLElement {
  const blocks = suggestions.map((s) => {
    const diffList = (title: string, refs: { slot: string; value: string }[]) =>
      refs.length === 0
        ? null
        : el(doc, "div", { class: "diff-list" }, [
            el(doc, "h5", {}, [title]),
            el(
              doc,
              "ul",
              {},
              refs.map((r) => el(doc, "li", {}, [`${r.slot}: ${r.value}`])),
            ),
          ]);
    return el(doc, "div", { class: "suggestion", "data-case-id": s.caseId }, [
      el(doc, "h4", {}, [s.caseId]),
      el(doc, "p", {}, [`consider ${s.cqs.join(", ")}`]),
      diffList("only in case", s.differences.onlyInCase),
      diffList("only in problem", s.differences.onlyInProblem),
    ]);
  });
  return el(doc, "section", { class: "panel", id: "suggestions" }, [
    el(doc, "h2", {}, ["Difference reports"]),
    ...(blocks.length > 0 ? blocks : [el(doc, "p", { class: "muted" }, ["none"])]),
  ]);
}

export function renderNotes(doc: Document, notes: string[]): HTMLElement {
  return el(doc, "section", { class: "panel", id: "notes" }, [
    el(doc, "h2", {}, ["Notes"]),
    notes.length === 0
      ? el(doc, "p", { class: "muted" }, ["none"])
      : el(
          doc,
          "ul",
          {},
          notes.map((n) => el(doc, "li", {}, [n])),
        ),
  ]);
}

function argumentOption(doc: Document, argument: ArgumentView): HTMLElement {
  const hint =
    argument.kind === "cq-attacker"
      ? `${argument.cq ?? "?"} attacker`
      : `${argument.conclusion.targetSlot ?? "?"} ← ${argument.citedCaseId ?? "?"}`;
  return el(doc, "option", { value: argument.id }, [`${argument.id} (${hint})`]);
}

export function renderAssertionComposer(doc: Document, state: SessionView): HTMLElement {
  const targets = [el(doc, "option", { value: "" }, ["— target argument —"])];
  for (const argument of [...state.arguments].sort((a, b) => (a.id < b.id ? -1 : 1))) {
    targets.push(argumentOption(doc, argument));
  }
  const counters = [el(doc, "option", { value: "" }, ["— counter an assertion —"])];
  for (const assertion of state.assertions) {
    counters.push(
      el(doc, "option", { value: assertion.id }, [
        `${assertion.id}: ${assertion.cq} on ${assertion.targetArgumentId}`,
      ]),
    );
  }
  const cqs = ASSERTABLE_CQS.map((cq) => el(doc, "option", { value: cq }, [cq]));

  return el(doc, "section", { class: "panel", id: "composer" }, [
    el(doc, "h2", {}, ["Pose a critical question"]),
    el(doc, "form", { id: "assertion-form", "data-action": "assert" }, [
      el(doc, "label", {}, ["Question", el(doc, "select", { name: "cq" }, cqs)]),
      el(doc, "label", {}, ["Target", el(doc, "select", { name: "targetArgumentId" }, targets)]),
      el(doc, "label", {}, ["Counter", el(doc, "select", { name: "counterTo" }, counters)]),
      el(doc, "label", {}, [
        "Justification",
        el(doc, "textarea", { name: "payload", rows: "2" }, []),
      ]),
      el(doc, "button", { type: "submit" }, ["Assert"]),
      el(doc, "p", { class: "form-error", id: "assertion-error", role: "alert" }, []),
    ]),
  ]);
}

export function renderAssertionLog(doc: Document, assertions: AssertionView[]): HTMLElement {
  return el(doc, "section", { class: "panel", id: "assertions" }, [
    el(doc, "h2", {}, ["Assertions"]),
    assertions.length === 0
      ? el(doc, "p", { class: "muted" }, ["none"])
      : el(
          doc,
          "ol",
          {},
          assertions.map((a) =>
            el(doc, "li", { "data-assertion-id": a.id }, [
              `${a.id}: ${a.cq} on ${a.counterTo ? `assertion ${a.counterTo}` : a.targetArgumentId}` +
                (a.payload ? ` — ${a.payload}` : ""),
            ]),
          ),
        ),
  ]);
}

export function renderGraph(doc: Document, layout: Layout, state: SessionView): SVGSVGElement {
  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  svg.setAttribute("id", "argument-graph");
  svg.setAttribute("role", "img");

  const defs = doc.createElementNS(SVG_NS, "defs");
  const marker = doc.createElementNS(SVG_NS, "marker");
  marker.setAttribute("id", "arrow");
  marker.setAttribute("viewBox", "0 0 10 10");
  marker.setAttribute("refX", "10");
  marker.setAttribute("refY", "5");
  marker.setAttribute("markerWidth", "7");
  marker.setAttribute("markerHeight", "7");
  marker.setAttribute("orient", "auto-start-reverse");
  const tip = doc.createElementNS(SVG_NS, "path");
  tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
  marker.append(tip);
  defs.append(marker);
  svg.append(defs);

  const positions = new Map(layout.nodes.map((n) => [n.id, n]));
  const byId = new Map(state.arguments.map((a) => [a.id, a]));

  for (const edge of layout.edges) {
    const from = positions.get(edge.from);
    const to = positions.get(edge.to);
    if (!from || !to) {
      continue;
    }
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(from.x));
    line.setAttribute("y1", String(from.y));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y));
    line.setAttribute("class", `edge edge-${edge.type}`);
    line.setAttribute("marker-end", "url(#arrow)");
    line.setAttribute("data-from", edge.from);
    line.setAttribute("data-to", edge.to);
    if (edge.cq) {
      line.setAttribute("data-cq", edge.cq);
    }
    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.from} ${edge.type}s ${edge.to}` + (edge.cq ? ` (${edge.cq})` : "");
    line.append(title);
    svg.append(line);
  }

  for (const node of layout.nodes) {
    const argument = byId.get(node.id);
    const label = labelOf(state, node.id);
    const group = doc.createElementNS(SVG_NS, "g");
    group.setAttribute(
      "class",
      `node node-${node.kind}` + (label === null ? "" : ` label-${label}`),
    );
    group.setAttribute("data-node-id", node.id);
    if (label !== null) {
      group.setAttribute("data-label", label);
    }
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", node.kind === "cq-attacker" ? "7" : "14");
    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent = argument
      ? `${node.id}${label === null ? "" : ` [${label}]`}: ${argument.rationale}`
      : node.id;
    circle.append(title);
    group.append(circle);
    if (argument && argument.kind !== "cq-attacker") {
      const text = doc.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(node.x));
      text.setAttribute("y", String(node.y + 28));
      text.setAttribute("text-anchor", "middle");
      text.textContent = argument.citedCaseId ?? node.id;
      group.append(text);
    }
    svg.append(group);
  }

  return svg;
}

export function renderGraphPanel(doc: Document, layout: Layout, state: SessionView): HTMLElement {
  return el(doc, "section", { class: "panel", id: "graph-panel" }, [
    el(doc, "h2", {}, ["Argument graph"]),
    el(doc, "div", { class: "graph-scroll" }, [renderGraph(doc, layout, state)]),
  ]);
}

export function renderLogLink(doc: Document, logUrl: string): HTMLElement {
  return el(doc, "p", { class: "log-link" }, [
    el(doc, "a", { href: logUrl, download: "session-log.ndjson", id: "log-download" }, [
      "Download event log",
    ]),
  ]);
}
