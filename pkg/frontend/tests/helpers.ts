// Test doubles built on recorded service traffic. `scripts/record_fixtures.py`
// drives the real fca-service in-process and stores every exchange verbatim;
// the scripted fetch replays those bytes and fails loudly on any divergence
// in method, path, or request body.

import { readFileSync } from "node:fs";
import { expect } from "vitest";

export interface Exchange {
  method: string;
  path: string;
  body: unknown;
  status: number;
  text: string;
}

export function fixtureText(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export class ScriptedFetch {
  private cursor = 0;

  constructor(private script: Exchange[]) {}

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const step = this.cursor;
    expect(step, `unexpected extra request ${init?.method ?? "GET"} ${url}`)
      .toBeLessThan(this.script.length);
    const expected = this.script[this.cursor++];
    expect(`${init?.method ?? "GET"} ${url}`).toBe(
      `${expected.method} ${expected.path}`,
    );
    const sent =
      init?.body === undefined ? null : JSON.parse(init.body as string);
    expect(sent).toEqual(expected.body);
    return new Response(expected.text, {
      status: expected.status,
      headers: { "Content-Type": "application/json" },
    });
  };

  /** every recorded exchange must have been consumed */
  expectDone(): void {
    expect(this.cursor).toBe(this.script.length);
  }
}

/** let the promise chains behind fired DOM events settle */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
