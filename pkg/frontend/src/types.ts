// Shapes of the fca-service payloads. The UI renders these as-is; apart from
// the counterexample pre-check mirror it never derives lattice facts itself.

export interface ContextPayload {
  objects: string[];
  attributes: string[];
  incidence: number[][];
}

export interface ImplicationLabels {
  premise: string[];
  conclusion: string[];
}

export type TranscriptEntry =
  | { answer: "accept"; question: ImplicationLabels }
  | {
      answer: "counterexample";
      label: string;
      attributes: string[];
      question: ImplicationLabels;
    };

export interface SessionState {
  context: ContextPayload;
  accepted: ImplicationLabels[];
  pending: ImplicationLabels | null;
  state: "awaiting_answer" | "finished";
  transcript: TranscriptEntry[];
}

export interface SessionSummary {
  state: string;
  pending: ImplicationLabels | null;
}

export interface OpenedSession extends SessionSummary {
  sessionId: string;
}

export type AnswerVerdict =
  | { accept: true }
  | { counterexample: { label: string; attributes: string[] } };

export interface CheckResult {
  ok: boolean;
  reasons: string[];
}

export interface LatticeConcept {
  extent: number[];
  intent: number[];
}

export interface LatticePayload {
  concepts: LatticeConcept[];
  covers: [number, number][];
  objectLabels: Record<string, number>;
  attributeLabels: Record<string, number>;
  layout: { x: number; y: number }[];
  /** exact stability per concept, when the service provides it */
  sigma?: string[];
}

export interface DgBasePayload {
  rules: ImplicationLabels[];
}
