// Thin typed client for the box service. The fetch implementation is
// injectable so tests can substitute a fake transport and inspect the
// exact requests the panel makes.

import type { EventName, EventResponse, FrequencyTable, Panel } from './model.js'

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message)
  }
}

export interface BoxHandle {
  box_id: string
  seed: number
}

export interface PrepSpec {
  kind: 'pure' | 'mixed' | 'dephased'
  phase?: number
  strength?: number
}

export interface ObsSpec {
  kind: 'h' | 's' | 'rotated'
  theta?: number
}

export class CatboxClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} }
    if (body !== undefined) {
      init.headers = { 'content-type': 'application/json' }
      init.body = JSON.stringify(body)
    }
    const response = await this.fetchImpl(this.baseUrl + path, init)
    if (!response.ok) {
      let code = 'UNKNOWN'
      let message = `${method} ${path} failed with ${response.status}`
      try {
        const payload = (await response.json()) as { code?: string; message?: string }
        code = payload.code ?? code
        message = payload.message ?? message
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(response.status, code, message)
    }
    if (response.status === 204) {
      return undefined as T
    }
    return (await response.json()) as T
  }

  createBox(seed?: number): Promise<BoxHandle> {
    return this.request('POST', '/boxes', seed === undefined ? {} : { seed })
  }

  getPanel(boxId: string): Promise<Panel> {
    return this.request('GET', `/boxes/${boxId}`)
  }

  sendEvent(boxId: string, event: EventName): Promise<EventResponse> {
    return this.request('POST', `/boxes/${boxId}/events`, { event })
  }

  async fetchTranscript(boxId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/boxes/${boxId}/transcript`, {
      method: 'GET',
    })
    if (!response.ok) {
      throw new ApiError(response.status, 'UNKNOWN', 'transcript fetch failed')
    }
    return response.text()
  }

  deleteBox(boxId: string): Promise<void> {
    return this.request('DELETE', `/boxes/${boxId}`)
  }

  runTrials(prep: PrepSpec, obs: ObsSpec, n: number, seed: number): Promise<FrequencyTable> {
    return this.request('POST', '/experiments/trials', { prep, obs, n, seed })
  }
}
