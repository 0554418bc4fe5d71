import type {
  ApiError,
  EngineReply,
  MovesListing,
  RulesInfo,
  SequenceInfo,
  SessionView,
  Strategy,
} from "./types.js";

export class ServiceRequestError extends Error implements ApiError {
  status: number;
  error: string;
  reason?: string;
  turn?: number;

  constructor(status: number, payload: Record<string, unknown>) {
    super(String(payload["message"] ?? `request failed with ${status}`));
    this.status = status;
    this.error = String(payload["error"] ?? "unknown");
    if (typeof payload["reason"] === "string") this.reason = payload["reason"];
    if (typeof payload["turn"] === "number") this.turn = payload["turn"];
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client; all game rules stay on the server side of this line. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ServiceRequestError(response.status, body);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  createSession(n: number, seed?: number): Promise<SessionView> {
    return this.post("/sessions", seed === undefined ? { n } : { n, seed });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request(`/sessions/${id}`);
  }

  listMoves(id: string): Promise<MovesListing> {
    return this.request(`/sessions/${id}/moves`);
  }

  playMove(id: string, move: string, turn?: number): Promise<SessionView> {
    return this.post(`/sessions/${id}/moves`, turn === undefined ? { move } : { move, turn });
  }

  engineMove(id: string, strategy: Strategy): Promise<EngineReply> {
    return this.post(`/sessions/${id}/engine-move`, { strategy });
  }

  rules(): Promise<RulesInfo> {
    return this.request("/meta/rules");
  }

  sequence(maxIndex: number): Promise<SequenceInfo> {
    return this.request(`/meta/sequence?max=${maxIndex}`);
  }
}
