// Client-side mirror of the service's counterexample check. This is the one
// piece of domain logic the UI owns, so the form can refuse doomed submissions
// before they travel; the wording must stay identical to the service's
// reasons, which the fixture corpus in tests/ enforces.

import type { CheckResult, ContextPayload, ImplicationLabels } from "./types";

// How the service quotes labels in messages (Python repr for plain strings).
function quoted(label: string): string {
  if (label.includes("'") && !label.includes('"')) {
    return '"' + label + '"';
  }
  return "'" + label.replace(/\\/g, "\\\\").replace(/'/g, "\\'") + "'";
}

function indexSet(
  context: ContextPayload,
  labels: string[],
): Set<number> | string {
  const at = new Map(context.attributes.map((m, j) => [m, j]));
  const out = new Set<number>();
  for (const label of labels) {
    const j = at.get(label);
    if (j === undefined) {
      return `unknown attribute label: ${quoted(label)}`;
    }
    out.add(j);
  }
  return out;
}

function joinByIndex(context: ContextPayload, labels: string[]): string {
  const at = new Map(context.attributes.map((m, j) => [m, j]));
  return labels
    .slice()
    .sort((a, b) => (at.get(a) ?? 0) - (at.get(b) ?? 0))
    .join(" ");
}

export function checkCounterexample(
  context: ContextPayload,
  accepted: ImplicationLabels[],
  pending: ImplicationLabels | null,
  label: string,
  attributes: string[],
): CheckResult {
  if (pending === null) {
    return { ok: false, reasons: ["no pending question"] };
  }
  const attrs = indexSet(context, attributes);
  if (typeof attrs === "string") {
    return { ok: false, reasons: [attrs] };
  }
  const has = (labels: string[]) => {
    const idx = indexSet(context, labels);
    return typeof idx === "string"
      ? false
      : [...idx].every((j) => attrs.has(j));
  };

  const reasons: string[] = [];
  if (context.objects.includes(label)) {
    reasons.push(`object label ${quoted(label)} is already used`);
  }
  const missing = pending.premise.filter((m) => !has([m]));
  if (missing.length) {
    reasons.push(
      `missing premise attributes: ${joinByIndex(context, missing)}`,
    );
  }
  if (has(pending.conclusion)) {
    reasons.push("the object satisfies the pending implication");
  }
  for (const rule of accepted) {
    if (has(rule.premise) && !has(rule.conclusion)) {
      reasons.push(
        `violates the accepted implication ${
          joinByIndex(context, rule.premise) || "{}"
        } -> ${joinByIndex(context, rule.conclusion)}`,
      );
    }
  }
  return { ok: reasons.length === 0, reasons };
}
