/** Thin typed client for the annotation service HTTP API. */

import type { LikertValue, StepView } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    // bind so a bare global fetch keeps its expected receiver
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (error) {
      throw new Error(`network failure: ${String(error)}`);
    }
    let body: unknown = {};
    try {
      body = await response.json();
    } catch {
      // non-JSON body; fall through with the status text
    }
    if (!response.ok) {
      const detail =
        typeof body === "object" && body !== null && "error" in body
          ? String((body as { error: unknown }).error)
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return body;
  }

  private post(path: string, payload: unknown): Promise<unknown> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async openSession(annotatorId: string, seed?: number): Promise<string> {
    const body = (await this.post("/sessions", {
      annotator_id: annotatorId,
      ...(seed === undefined ? {} : { seed }),
    })) as { session_id: string };
    return body.session_id;
  }

  async next(sessionId: string): Promise<StepView> {
    return (await this.request(`/sessions/${sessionId}/next`)) as StepView;
  }

  async submitPostEdit(
    sessionId: string,
    itemId: string,
    text: string,
  ): Promise<StepView> {
    return (await this.post(`/items/${encodeURIComponent(itemId)}/postedit`, {
      session_id: sessionId,
      text,
    })) as StepView;
  }

  async confirmMeaning(
    sessionId: string,
    itemId: string,
    matches: boolean,
  ): Promise<StepView> {
    return (await this.post(`/items/${encodeURIComponent(itemId)}/meaning`, {
      session_id: sessionId,
      matches,
    })) as StepView;
  }

  async submitScores(
    sessionId: string,
    itemId: string,
    scores: {
      grammaticality: LikertValue;
      fluency: LikertValue;
      meaning: LikertValue;
    },
  ): Promise<StepView> {
    return (await this.post(`/items/${encodeURIComponent(itemId)}/scores`, {
      session_id: sessionId,
      ...scores,
    })) as StepView;
  }

  exportUrl(annotator?: string): string {
    const query = annotator ? `?annotator=${encodeURIComponent(annotator)}` : "";
    return `${this.baseUrl}/export${query}`;
  }
}
