// Typed client for the correction service. All verdicts and suggestion
// ordering come from the server; this module only moves JSON.

export type SuggestionView = {
  display: string;
  class: string;
};

export type FlagView = {
  span: [number, number];
  word: string;
  suggestions: SuggestionView[];
  ordinal: number;
  total?: number;
};

export type NextResponse =
  | { done: false; flag: FlagView }
  | { done: true; status: string };

export type CheckResponse = { flags: FlagView[] };

export type SessionAction = "skip" | "edit" | "store" | "correct" | "exit";

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
    public detail: string = "",
  ) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(path, init);
  if (!res.ok) {
    let error = `HTTP ${res.status}`;
    let detail = "";
    try {
      const body = await res.json();
      error = body.error ?? error;
      detail = body.detail ?? "";
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(error, res.status, detail);
  }
  return res.json() as Promise<T>;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class SpellApi {
  constructor(private base: string = "") {}

  health(): Promise<{ status: string }> {
    return request(`${this.base}/v1/health`);
  }

  check(text: string): Promise<CheckResponse> {
    return request(`${this.base}/v1/check`, post({ text }));
  }

  openSession(text: string): Promise<{ id: string }> {
    return request(`${this.base}/v1/sessions`, post({ text }));
  }

  next(sessionId: string): Promise<NextResponse> {
    return request(`${this.base}/v1/sessions/${sessionId}/next`);
  }

  action(
    sessionId: string,
    action: SessionAction,
    options: { replacement?: string; index?: number } = {},
  ): Promise<{ status: string }> {
    return request(
      `${this.base}/v1/sessions/${sessionId}/action`,
      post({ action, ...options }),
    );
  }

  exportText(sessionId: string): Promise<{ text: string }> {
    return request(`${this.base}/v1/sessions/${sessionId}/export`);
  }

  addUserWord(word: string): Promise<{ added: string; size: number }> {
    return request(`${this.base}/v1/userdict`, post({ word }));
  }
}
