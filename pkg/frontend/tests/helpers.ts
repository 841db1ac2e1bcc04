/** Builders for synthetic view states used across the unit tests. */

import type {
  ArgumentView,
  DefeatView,
  Label,
  SessionView,
} from "../src/api.js";

export function arg(id: string, overrides: Partial<ArgumentView> = {}): ArgumentView {
  const kind = overrides.kind ?? (id.startsWith("cq-") || id.startsWith("as-") ? "cq-attacker" : "prior-case");
  return {
    id,
    kind,
    conclusion: { value: "v", polarity: "positive", ...(kind === "cq-attacker" ? {} : { targetSlot: "interpretans" }) },
    rationale: `rationale for ${id}`,
    ...(kind === "cq-attacker" ? { cq: "CQ1" } : { citedCaseId: "C 1/10" }),
    ...overrides,
  };
}

export function defeat(
  attacker: string,
  target: string,
  overrides: Partial<DefeatView> = {},
): DefeatView {
  return { attacker, target, type: "undercut", auto: true, ...overrides };
}

export function session(
  argumentViews: ArgumentView[],
  defeats: DefeatView[] = [],
  labeling: Record<string, Label> = {},
  overrides: Partial<SessionView> = {},
): SessionView {
  return {
    sessionId: "s-test",
    problem: {
      forum: { jurisdiction: "Poland", court: "Supreme Administrative Court" },
      asOfDate: "2020-01-01",
      interpretandum: { expression: "parking fee", locus: "art. 1" },
    },
    arguments: argumentViews,
    defeats,
    labeling,
    assertions: [],
    notes: [],
    pendingCQSuggestions: [],
    ...overrides,
  };
}

/** Poll until `cond` holds; fails the test on timeout. */
export async function until(cond: () => boolean, ms = 10_000): Promise<void> {
  const start = Date.now();
  while (!cond()) {
    if (Date.now() - start > ms) {
      throw new Error("condition not reached in time");
    }
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}
