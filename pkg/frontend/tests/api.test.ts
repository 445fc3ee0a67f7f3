import { describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError, NetworkError } from "../src/api.js";

function fakeFetch(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fn = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fn, calls };
}

describe("api client", () => {
  it("posts session specs as JSON", async () => {
    const { fn, calls } = fakeFetch(201, { id: "s1", status: "AwaitingI" });
    const client = new ApiClient("http://x", fn);
    const state = await client.createSession({ kind: "EFD", A: "order:w", B: "order:w", clock: "2" });
    expect(state.id).toBe("s1");
    expect(calls[0].url).toBe("http://x/sessions");
    expect(JSON.parse(String(calls[0].init?.body))).toMatchObject({ A: "order:w" });
  });

  it("raises typed errors with the server code", async () => {
    const { fn } = fakeFetch(400, { error: { code: "CLOCK_NOT_DECREASING", message: "no" } });
    const client = new ApiClient("", fn);
    await expect(client.postMove("s1", {})).rejects.toMatchObject({ code: "CLOCK_NOT_DECREASING" });
  });

  it("maps 404 to UNKNOWN_SESSION", async () => {
    const { fn } = fakeFetch(404, { error: { code: "UNKNOWN_SESSION", message: "gone" } });
    const client = new ApiClient("", fn);
    try {
      await client.getSession("nope");
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiRequestError);
      expect((err as ApiRequestError).status).toBe(404);
    }
  });

  it("wraps transport failures as NetworkError", async () => {
    const client = new ApiClient("", async () => {
      throw new Error("connection refused");
    });
    await expect(client.listSessions()).rejects.toBeInstanceOf(NetworkError);
  });

  it("url-encodes parse queries", async () => {
    const { fn, calls } = fakeFetch(200, { ok: true, canonical: "w+1" });
    const client = new ApiClient("", fn);
    await client.parseOrdinal("w+1");
    expect(calls[0].url).toBe("/parse?text=w%2B1");
  });
});
