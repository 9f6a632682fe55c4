/** Thin fetch client for the review API. No retries here: failures surface
 * to the caller so the UI can offer an explicit retry (nothing is ever
 * silently dropped). */

import type { ItemView, StatsResponse, VerdictBody } from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number | null,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.base + path, init);
    } catch (err) {
      throw new ApiError(`network failure: ${String(err)}`, null);
    }
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = (await resp.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(detail, resp.status);
    }
    return (await resp.json()) as T;
  }

  loadQueue(reviewer: string): Promise<ItemView[]> {
    return this.request<ItemView[]>(`/api/items?reviewer=${encodeURIComponent(reviewer)}`);
  }

  submitVerdict(body: VerdictBody): Promise<{ ok: boolean }> {
    return this.request<{ ok: boolean }>("/api/verdicts", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  stats(): Promise<StatsResponse> {
    return this.request<StatsResponse>("/api/stats");
  }
}
