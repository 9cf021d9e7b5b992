// Single typed gateway to the explanation service. Every service call the
// UI makes goes through this module, which is what the traffic-interception
// tests rely on: swap `fetchImpl` and you see (and control) all domain data.

import type {
  ApiErrorBody,
  ContrastResult,
  ExplainResult,
  FactsResult,
  ModelsResult,
  SessionCreated,
} from "./generated/api-types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export interface ExplainRequest {
  atom: string;
  mode: "in" | "out";
  alternatives?: number;
  model?: string[];
}

export interface SpaceFamilyBody {
  name: string;
  exactly: number | null;
  facts: string[];
}

export interface ContrastRequest {
  mode: "not-an-answer-set" | "foil-becomes-brave" | "fact-no-longer-brave";
  target: string;
  space: { families: SpaceFamilyBody[] };
  k?: number;
}

export interface FactsRequest {
  assume?: string[];
  retract?: string[];
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  createSession(program: string): Promise<SessionCreated> {
    return this.request("POST", "/sessions", { program });
  }

  models(sessionId: string, limit?: number): Promise<ModelsResult> {
    const query = limit === undefined ? "" : `?limit=${limit}`;
    return this.request("GET", `/sessions/${sessionId}/models${query}`);
  }

  explain(sessionId: string, body: ExplainRequest): Promise<ExplainResult> {
    return this.request("POST", `/sessions/${sessionId}/explain`, body);
  }

  contrast(sessionId: string, body: ContrastRequest): Promise<ContrastResult> {
    return this.request("POST", `/sessions/${sessionId}/contrast`, body);
  }

  facts(sessionId: string, body: FactsRequest): Promise<FactsResult> {
    return this.request("POST", `/sessions/${sessionId}/facts`, body);
  }

  deleteSession(sessionId: string): Promise<{ deleted: boolean }> {
    return this.request("DELETE", `/sessions/${sessionId}`);
  }
}
