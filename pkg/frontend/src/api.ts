// Thin typed client for the fca-service REST API.

import type {
  AnswerVerdict,
  ContextPayload,
  DgBasePayload,
  LatticePayload,
  OpenedSession,
  SessionState,
  SessionSummary,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
  ) {
    super(`service responded ${status}`);
  }

  /** detail string of a FastAPI error body, if there is one */
  get detail(): string {
    const body = this.body as { detail?: unknown } | null;
    return typeof body?.detail === "string" ? body.detail : this.message;
  }
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ServiceClient {
  constructor(
    private base = "",
    private fetchFn: FetchLike = (...args) => globalThis.fetch(...args),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<Response> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let parsed: unknown = null;
      try {
        parsed = await resp.json();
      } catch {
        parsed = null;
      }
      throw new ApiError(resp.status, parsed);
    }
    return resp;
  }

  async uploadContext(context: ContextPayload): Promise<string> {
    const resp = await this.request("POST", "/contexts", context);
    const data = (await resp.json()) as { contextId: string };
    return data.contextId;
  }

  async openSession(contextId: string): Promise<OpenedSession> {
    const resp = await this.request("POST", "/sessions", { contextId });
    return (await resp.json()) as OpenedSession;
  }

  /** session state exactly as the service serialized it */
  async getSessionText(sessionId: string): Promise<string> {
    const resp = await this.request("GET", `/sessions/${sessionId}`);
    return await resp.text();
  }

  async getSession(sessionId: string): Promise<SessionState> {
    return JSON.parse(await this.getSessionText(sessionId)) as SessionState;
  }

  async answer(
    sessionId: string,
    verdict: AnswerVerdict,
  ): Promise<SessionSummary> {
    const resp = await this.request(
      "POST",
      `/sessions/${sessionId}/answer`,
      verdict,
    );
    return (await resp.json()) as SessionSummary;
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request("DELETE", `/sessions/${sessionId}`);
  }

  async getLattice(contextId: string): Promise<LatticePayload> {
    const resp = await this.request("GET", `/contexts/${contextId}/lattice`);
    return (await resp.json()) as LatticePayload;
  }

  async getDgBase(contextId: string): Promise<DgBasePayload> {
    const resp = await this.request("GET", `/contexts/${contextId}/dg-base`);
    return (await resp.json()) as DgBasePayload;
  }
}
