// Shared test scaffolding: a fetch stub that logs every request and serves
// canned JSON, so tests can both script the service and prove that every
// displayed value originated in a response.

import type { FetchLike } from "../src/client.js";

export interface LoggedRequest {
  method: string;
  path: string;
  body: unknown;
}

export interface Route {
  method: string;
  path: string | RegExp;
  reply: (body: unknown, path: string) => unknown;
  status?: number;
}

export class FakeService {
  requests: LoggedRequest[] = [];
  responses: unknown[] = [];

  constructor(private routes: Route[]) {}

  fetchImpl: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body === undefined ? undefined : JSON.parse(init.body as string);
    this.requests.push({ method, path: input, body });
    for (const route of this.routes) {
      const matches =
        route.method === method &&
        (typeof route.path === "string" ? input.endsWith(route.path) : route.path.test(input));
      if (matches) {
        const payload = route.reply(body, input);
        this.responses.push(payload);
        return new Response(JSON.stringify(payload), {
          status: route.status ?? 200,
          headers: { "content-type": "application/json" },
        });
      }
    }
    throw new Error(`unrouted request: ${method} ${input}`);
  };

  /** Every string/number rendered by the UI must be findable in some
   * response this service produced. */
  responseCorpus(): string {
    return JSON.stringify(this.responses);
  }
}
