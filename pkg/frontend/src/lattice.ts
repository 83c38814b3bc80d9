// View model for the Hasse diagram: screen positions, reduced labels, and
// per-node support, all read off the service's lattice payload.

import type { ContextPayload, LatticePayload } from "./types";

export interface LatticeNodeVM {
  index: number;
  x: number;
  y: number;
  extent: number[];
  intent: number[];
  /** reduced labeling: objects annotate their object concept, below */
  objLabels: string[];
  /** attributes annotate their attribute concept, above */
  attrLabels: string[];
  support: number;
  sigma: string | null;
}

export interface LatticeEdgeVM {
  upper: number;
  lower: number;
}

export interface LatticeViewModel {
  nodes: LatticeNodeVM[];
  edges: LatticeEdgeVM[];
  width: number;
  height: number;
}

export interface LayoutOptions {
  colGap?: number;
  rowGap?: number;
  margin?: number;
}

export function parseFraction(text: string): number {
  const [p, q] = text.split("/");
  return q === undefined ? Number(p) : Number(p) / Number(q);
}

export function buildViewModel(
  payload: LatticePayload,
  context: ContextPayload,
  options: LayoutOptions = {},
): LatticeViewModel {
  const colGap = options.colGap ?? 90;
  const rowGap = options.rowGap ?? 70;
  const margin = options.margin ?? 60;

  const xs = payload.layout.map((p) => p.x);
  const ys = payload.layout.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const topY = Math.max(...ys);
  const bottomY = Math.min(...ys);

  const labelsAt = (assignment: Record<string, number>, order: string[]) => {
    const at = new Map<number, string[]>();
    for (const label of order) {
      const idx = assignment[label];
      if (idx === undefined) continue;
      if (!at.has(idx)) at.set(idx, []);
      at.get(idx)!.push(label);
    }
    return at;
  };
  const objAt = labelsAt(payload.objectLabels, context.objects);
  const attrAt = labelsAt(payload.attributeLabels, context.attributes);

  const nObjects = context.objects.length;
  const nodes = payload.concepts.map((c, i) => ({
    index: i,
    x: margin + (payload.layout[i].x - minX) * colGap,
    // the payload puts the top concept at the greatest y; screen y grows down
    y: margin + (topY - payload.layout[i].y) * rowGap,
    extent: c.extent,
    intent: c.intent,
    objLabels: objAt.get(i) ?? [],
    attrLabels: attrAt.get(i) ?? [],
    support: nObjects === 0 ? 0 : c.extent.length / nObjects,
    sigma: payload.sigma?.[i] ?? null,
  }));

  const edges = payload.covers.map(([lower, upper]) => {
    if (!(nodes[upper].y < nodes[lower].y)) {
      throw new Error(
        `cover ${lower} < ${upper} would not be drawn strictly downward`,
      );
    }
    return { upper, lower };
  });

  return {
    nodes,
    edges,
    width: 2 * margin + (maxX - minX) * colGap,
    height: 2 * margin + (topY - bottomY) * rowGap,
  };
}

export interface SummaryRow {
  index: number;
  extent: string[];
  intent: string[];
  support: number;
  sigma: string | null;
}

/** the fallback listing when a lattice is too large to draw */
export function summaryRows(
  payload: LatticePayload,
  context: ContextPayload,
  limit: number,
): SummaryRow[] {
  const nObjects = context.objects.length;
  const rows = payload.concepts.map((c, i) => ({
    index: i,
    extent: c.extent.map((g) => context.objects[g]),
    intent: c.intent.map((m) => context.attributes[m]),
    support: nObjects === 0 ? 0 : c.extent.length / nObjects,
    sigma: payload.sigma?.[i] ?? null,
  }));
  const haveSigma = payload.sigma !== undefined;
  rows.sort((a, b) => {
    const ka = haveSigma ? parseFraction(a.sigma ?? "0") : a.support;
    const kb = haveSigma ? parseFraction(b.sigma ?? "0") : b.support;
    return kb - ka || a.index - b.index;
  });
  return rows.slice(0, limit);
}
