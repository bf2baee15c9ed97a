/** Thin typed client for the game service; fetch is injectable for tests. */

import type {
  Breakdown,
  Clue,
  FinalizeResponse,
  LayoutWire,
  MoveResponse,
  NetworkDoc,
  SessionOpened,
  StackResponse,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown, token?: string): Promise<T> {
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (token) headers['X-Session-Token'] = token;
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, `${method} ${path} failed with ${resp.status}`);
    }
    if (resp.status === 204) return null as T;
    return (await resp.json()) as T;
  }

  network(gameId: string): Promise<NetworkDoc> {
    return this.request('GET', `/games/${gameId}/network`);
  }

  best(gameId: string): Promise<{ layout: LayoutWire; breakdown: Breakdown }> {
    return this.request('GET', `/games/${gameId}/best`);
  }

  openSession(gameId: string): Promise<SessionOpened> {
    return this.request('POST', `/games/${gameId}/sessions`);
  }

  move(sessionId: string, token: string, node: string, x: number, y: number): Promise<MoveResponse> {
    return this.request('POST', `/sessions/${sessionId}/moves`, { node, x, y }, token);
  }

  clue(sessionId: string, token: string): Promise<Clue | null> {
    return this.request('GET', `/sessions/${sessionId}/clue`, undefined, token);
  }

  stack(sessionId: string, token: string, action: 'undo' | 'redo' | 'revert'): Promise<StackResponse> {
    return this.request('POST', `/sessions/${sessionId}/${action}`, {}, token);
  }

  finalize(sessionId: string, token: string): Promise<FinalizeResponse> {
    return this.request('POST', `/sessions/${sessionId}/finalize`, {}, token);
  }
}
