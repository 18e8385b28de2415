/**
 * Typed client for the documented service endpoints. All sequencing
 * authority stays server-side; this module only moves JSON around.
 */

import type {
  AnswerResult,
  CreatedSession,
  ErrorBody,
  FieldError,
  FormSchema,
  ProductOption,
  SessionView,
} from "./types.js";

/** Error body of a non-2xx response, with the HTTP status attached. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: FieldError[];

  constructor(status: number, body: ErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.details = body.details ?? [];
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async products(): Promise<ProductOption[]> {
    return this.request("GET", "/api/products");
  }

  async createSession(product: string, sessionId?: string): Promise<CreatedSession> {
    const body: Record<string, string> = { product };
    if (sessionId !== undefined) {
      body.session_id = sessionId;
    }
    return this.request("POST", "/api/sessions", body);
  }

  async view(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/api/sessions/${sessionId}`);
  }

  /** The pending form schema, or null once the session is complete. */
  async currentForm(sessionId: string): Promise<FormSchema | null> {
    const body = await this.request<FormSchema | { state: "Complete" }>(
      "GET",
      `/api/sessions/${sessionId}/form`,
    );
    return "form_id" in body ? body : null;
  }

  async submit(
    sessionId: string,
    revision: number,
    formId: string,
    values: Record<string, string>,
  ): Promise<AnswerResult> {
    return this.request("POST", `/api/sessions/${sessionId}/answers`, {
      revision,
      form_id: formId,
      values,
    });
  }

  exportUrl(sessionId: string, format: "ttl" | "html"): string {
    return `${this.base}/api/sessions/${sessionId}/export?format=${format}`;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await fetch(this.base + path, init);
    if (!response.ok) {
      let parsed: ErrorBody;
      try {
        parsed = (await response.json()) as ErrorBody;
      } catch {
        parsed = { code: "ENGINE_ERROR", message: `HTTP ${response.status}` };
      }
      throw new ApiError(response.status, parsed);
    }
    return (await response.json()) as T;
  }
}
