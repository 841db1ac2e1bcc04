/**
 * Layered layout for the argument graph.
 *
 * Attackers sit above their targets: each defeat edge pushes its target at
 * least one row below the attacker. Rows are settled by iterative relaxation
 * capped at |V| passes, so cyclic graphs (mutual attacks) terminate with a
 * best-effort layering instead of looping. The layout is deterministic:
 * within a row, nodes are ordered by id.
 */

import type { ArgumentView, DefeatView } from "./api.js";

export interface GraphNode {
  id: string;
  kind: string;
  row: number;
  x: number;
  y: number;
}

export interface GraphEdge {
  from: string;
  to: string;
  type: string;
  cq?: string;
}

export interface Layout {
  nodes: GraphNode[];
  edges: GraphEdge[];
  width: number;
  height: number;
}

export interface LayoutOptions {
  columnGap: number;
  rowGap: number;
  margin: number;
}

const DEFAULTS: LayoutOptions = { columnGap: 150, rowGap: 110, margin: 60 };

export function layoutGraph(
  argumentViews: ArgumentView[],
  defeats: DefeatView[],
  options: Partial<LayoutOptions> = {},
): Layout {
  const { columnGap, rowGap, margin } = { ...DEFAULTS, ...options };
  const ids = argumentViews.map((a) => a.id);
  const known = new Set(ids);
  const rows = new Map<string, number>(ids.map((id) => [id, 0]));
  const edges: GraphEdge[] = defeats
    .filter((d) => known.has(d.attacker) && known.has(d.target))
    .map((d) => ({ from: d.attacker, to: d.target, type: d.type, cq: d.cq }));

  for (let pass = 0; pass < ids.length; pass += 1) {
    let changed = false;
    for (const edge of edges) {
      const below = (rows.get(edge.from) ?? 0) + 1;
      if ((rows.get(edge.to) ?? 0) < below) {
        rows.set(edge.to, below);
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
  }

  const byRow = new Map<number, string[]>();
  for (const id of ids) {
    const row = rows.get(id) ?? 0;
    const members = byRow.get(row);
    if (members) {
      members.push(id);
    } else {
      byRow.set(row, [id]);
    }
  }
  let widest = 0;
  for (const members of byRow.values()) {
    members.sort();
    widest = Math.max(widest, members.length);
  }
  const maxRow = byRow.size === 0 ? 0 : Math.max(...byRow.keys());
  const width = 2 * margin + Math.max(0, widest - 1) * columnGap;

  const positions = new Map<string, { x: number; y: number }>();
  for (const [row, members] of byRow) {
    const span = (members.length - 1) * columnGap;
    const start = (width - span) / 2;
    members.forEach((id, index) => {
      positions.set(id, { x: start + index * columnGap, y: margin + row * rowGap });
    });
  }

  const nodes: GraphNode[] = argumentViews.map((a) => {
    const position = positions.get(a.id) ?? { x: margin, y: margin };
    return {
      id: a.id,
      kind: a.kind,
      row: rows.get(a.id) ?? 0,
      x: position.x,
      y: position.y,
    };
  });

  return { nodes, edges, width, height: 2 * margin + maxRow * rowGap };
}
