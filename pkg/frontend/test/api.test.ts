import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("loads the queue for a reviewer (name URL-encoded)", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse([{ id: "i 1" }]));
    vi.stubGlobal("fetch", fetchMock);
    const client = new ApiClient();
    const items = await client.loadQueue("dr. who?");
    expect(items).toEqual([{ id: "i 1" }]);
    expect(fetchMock).toHaveBeenCalledWith("/api/items?reviewer=dr.%20who%3F", undefined);
  });

  it("posts verdicts as JSON", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ ok: true }));
    vi.stubGlobal("fetch", fetchMock);
    const client = new ApiClient();
    const ack = await client.submitVerdict({ item: "i1", reviewer: "r", score: -2 });
    expect(ack.ok).toBe(true);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/verdicts");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body as string)).toEqual({ item: "i1", reviewer: "r", score: -2 });
  });

  it("surfaces server rejections with status and detail", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse({ detail: "unknown item 'x'" }, 404)),
    );
    const client = new ApiClient();
    const error = await client
      .submitVerdict({ item: "x", reviewer: "r", score: 0 })
      .then(() => null)
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(404);
    expect((error as ApiError).message).toContain("unknown item");
  });

  it("wraps network failures (no response at all)", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("connection refused")));
    const client = new ApiClient();
    const error = await client.stats().then(() => null).catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBeNull();
  });

  it("prefixes an explicit base URL", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ per_reviewer: {} }));
    vi.stubGlobal("fetch", fetchMock);
    const client = new ApiClient("http://127.0.0.1:8321");
    await client.stats();
    expect(fetchMock).toHaveBeenCalledWith("http://127.0.0.1:8321/api/stats", undefined);
  });
});
