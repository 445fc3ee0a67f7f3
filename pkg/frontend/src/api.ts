// Thin JSON client for the session API; fetch is injectable for tests.

import type { ApiError, ParseResult, SessionSpec, SessionState } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(public code: string, message: string, public status: number) {
    super(message);
  }
}

export class NetworkError extends Error {}

async function request<T>(fetchFn: FetchLike, url: string, init?: RequestInit): Promise<T> {
  let resp: Response;
  try {
    resp = await fetchFn(url, init);
  } catch (err) {
    throw new NetworkError(String(err));
  }
  if (resp.status === 204) {
    return undefined as T;
  }
  const body = await resp.json();
  if (!resp.ok) {
    const err = body as ApiError;
    throw new ApiRequestError(err.error?.code ?? "UNKNOWN", err.error?.message ?? "request failed",
      resp.status);
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string = "", private fetchFn: FetchLike = fetch.bind(globalThis)) {}

  createSession(spec: SessionSpec): Promise<SessionState> {
    return request(this.fetchFn, `${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(spec),
    });
  }

  getSession(id: string): Promise<SessionState> {
    return request(this.fetchFn, `${this.base}/sessions/${id}`);
  }

  listSessions(): Promise<{ sessions: SessionState[] }> {
    return request(this.fetchFn, `${this.base}/sessions`);
  }

  postMove(id: string, move: Record<string, unknown>): Promise<SessionState> {
    return request(this.fetchFn, `${this.base}/sessions/${id}/moves`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(move),
    });
  }

  deleteSession(id: string): Promise<void> {
    return request(this.fetchFn, `${this.base}/sessions/${id}`, { method: "DELETE" });
  }

  parseOrdinal(text: string): Promise<ParseResult> {
    return request(this.fetchFn, `${this.base}/parse?text=${encodeURIComponent(text)}`);
  }
}
