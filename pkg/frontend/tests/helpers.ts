/** Shared test scaffolding: canned schemas and a scripted fetch stub. */

import { vi } from "vitest";

import type { FormSchema, SessionView } from "../src/types.js";

export function schemaWithAllDatatypes(): FormSchema {
  return {
    form_id: "form-2",
    concept: "http://example.org/doc#Cable",
    title: "câble électrique",
    fields: [
      { id: "designation", label: "désignation", datatype: "string", required: true },
      { id: "quantite", label: "quantité", datatype: "integer", required: false },
      { id: "section", label: "section", datatype: "decimal", required: false },
      { id: "isolant", label: "isolant", datatype: "boolean", required: false },
      { id: "datePose", label: "date de pose", datatype: "date", required: false },
    ],
    components: [
      { property: "http://example.org/doc#hasPart", concept: "http://example.org/doc#Gaine", label: "gaine" },
    ],
  };
}

export function viewFixture(partial: Partial<SessionView> = {}): SessionView {
  return {
    session_id: "s1",
    state: "InProgress",
    revision: 0,
    progress: { answered: 0, pending: 1 },
    product: { iri: "http://example.org/doc#Produit", label: "produit" },
    tree: null,
    ...partial,
  };
}

export interface CannedResponse {
  method: string;
  path: string;
  status: number;
  body: unknown;
  /** When set, the request body must deep-equal this value. */
  expectBody?: unknown;
}

/**
 * Replaces global fetch with a queue of canned responses; each request is
 * matched against the next entry's method, path, and (optionally) body.
 * Returns the recorded "METHOD path" strings for inspection.
 */
export function stubFetch(script: CannedResponse[]): string[] {
  const calls: string[] = [];
  const queue = [...script];
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string, init?: RequestInit): Promise<Response> => {
      const method = init?.method ?? "GET";
      const path = String(url);
      calls.push(`${method} ${path}`);
      const next = queue.shift();
      if (next === undefined) {
        throw new Error(`unexpected request: ${method} ${path}`);
      }
      if (next.method !== method || next.path !== path) {
        throw new Error(`expected ${next.method} ${next.path}, got ${method} ${path}`);
      }
      if (next.expectBody !== undefined) {
        const got: unknown = init?.body === undefined ? undefined : JSON.parse(String(init.body));
        if (JSON.stringify(got) !== JSON.stringify(next.expectBody)) {
          throw new Error(`request body ${JSON.stringify(got)} != ${JSON.stringify(next.expectBody)}`);
        }
      }
      return {
        ok: next.status >= 200 && next.status < 300,
        status: next.status,
        json: async () => next.body,
      } as Response;
    }),
  );
  return calls;
}
