// Typed client for the trainer service. All rule values come from here;
// the UI never computes digits, carries or explanations itself.

import type {
  NextResult,
  SessionConfig,
  SessionCreated,
  StepAnswer,
  StepResult,
  Summary,
  TraceDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class TrainerApi {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        (body as { error?: string }).error ?? "http_error",
        (body as { message?: string }).message ?? `HTTP ${response.status}`,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  health(): Promise<{ status: string }> {
    return this.request("/health");
  }

  createSession(config: SessionConfig): Promise<SessionCreated> {
    return this.post("/sessions", config);
  }

  nextChallenge(sessionId: string): Promise<NextResult> {
    return this.request(`/sessions/${sessionId}/next`);
  }

  respond(sessionId: string, challengeId: string, answer: StepAnswer): Promise<StepResult> {
    return this.post(`/sessions/${sessionId}/respond`, {
      challenge_id: challengeId,
      answer,
    });
  }

  summary(sessionId: string): Promise<Summary> {
    return this.request(`/sessions/${sessionId}/summary`);
  }

  trace(n: string, m: number): Promise<TraceDoc> {
    return this.request(`/trace?n=${encodeURIComponent(n)}&m=${m}`);
  }
}
