/** Thin typed client over the exploration service endpoints. */

import type {
  BasketResponse,
  Gesture,
  MuseumSnapshot,
  OverlayEntry,
  RoomResponse,
  ServerEvent,
  SessionInfo,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      detail = (await response.json()).detail ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ExplorationApi {
  constructor(public baseUrl: string, public sessionId: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async createSession(clockMode: "realtime" | "logical", seed = 0): Promise<SessionInfo> {
    const created = await expectJson<{ session_id: string }>(
      await fetch(this.url("/sessions"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ clock_mode: clockMode, seed }),
      }),
    );
    this.sessionId = created.session_id;
    return this.info();
  }

  async info(): Promise<SessionInfo> {
    return expectJson(await fetch(this.url(`/sessions/${this.sessionId}`)));
  }

  async post(gesture: Gesture): Promise<unknown> {
    return expectJson(
      await fetch(this.url(`/sessions/${this.sessionId}/interactions`), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(gesture),
      }),
    );
  }

  async ticks(n: number): Promise<{ clock: number; events: ServerEvent[] }> {
    return expectJson(
      await fetch(this.url(`/sessions/${this.sessionId}/ticks?n=${n}`), { method: "POST" }),
    );
  }

  async museum(): Promise<MuseumSnapshot> {
    return expectJson(await fetch(this.url(`/sessions/${this.sessionId}/museum`)));
  }

  async room(roomId: string): Promise<RoomResponse> {
    return expectJson(await fetch(this.url(`/sessions/${this.sessionId}/rooms/${roomId}`)));
  }

  async overlay(dimension: "chronos" | "topos" | "thema"): Promise<OverlayEntry[]> {
    const data = await expectJson<{ entities: OverlayEntry[] }>(
      await fetch(this.url(`/sessions/${this.sessionId}/relevance?dimension=${dimension}`)),
    );
    return data.entities;
  }

  async basket(): Promise<BasketResponse> {
    return expectJson(await fetch(this.url(`/sessions/${this.sessionId}/basket`)));
  }

  /**
   * Subscribe to the server-push stream; falls back to 1 Hz polling when
   * EventSource is unavailable or errors out.
   */
  subscribe(onEvent: (event: ServerEvent) => void, since = 0): () => void {
    const streamUrl = this.url(`/sessions/${this.sessionId}/events?since=${since}`);
    let lastSeq = since;
    let pollTimer: ReturnType<typeof setInterval> | null = null;

    const startPolling = () => {
      if (pollTimer !== null) return;
      pollTimer = setInterval(async () => {
        try {
          const info = await this.info();
          void info; // poll keeps the view reconciling via snapshot fetches
          onEvent({ seq: ++lastSeq, tick: info.clock, type: "relevance_updated", top: [] });
        } catch {
          // server unreachable; keep trying
        }
      }, 1000);
    };

    if (typeof EventSource === "undefined") {
      startPolling();
      return () => pollTimer !== null && clearInterval(pollTimer);
    }
    const source = new EventSource(streamUrl);
    source.onmessage = (message) => {
      const event = JSON.parse(message.data) as ServerEvent;
      lastSeq = event.seq;
      onEvent(event);
    };
    source.onerror = () => startPolling();
    return () => {
      source.close();
      if (pollTimer !== null) clearInterval(pollTimer);
    };
  }
}

/** Service base URL: ?api=... overrides, else same origin. */
export function resolveBaseUrl(location: Location): string {
  const override = new URLSearchParams(location.search).get("api");
  if (override) return override.replace(/\/$/, "");
  return `${location.protocol}//${location.host}`;
}
