/**
 * Typed client for the assessment HTTP API.
 *
 * Every method returns the parsed JSON document. Validation rejections on
 * answer submission are part of the normal flow (the wizard shows them
 * inline), so submitAnswers returns a discriminated union instead of
 * throwing; every other non-2xx status raises ApiError.
 */

import type {
  AnswerPatch,
  CatalogDoc,
  ComparisonDoc,
  DeltaReportDoc,
  LiveScore,
  SessionCreated,
  SessionDoc,
  SessionSummary,
  ValueReportDoc,
  Violation,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
    message?: string,
  ) {
    super(message ?? `request failed with status ${status}`);
    this.name = 'ApiError';
  }
}

export type SubmitResult =
  | { ok: true; score: LiveScore }
  | { ok: false; violations: Violation[] };

interface Exchange {
  status: number;
  doc: unknown;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async exchange(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<Exchange> {
    const init: RequestInit = {
      method,
      headers: { accept: 'application/json' },
    };
    if (body !== undefined) {
      init.headers = { ...init.headers, 'content-type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    return { status: response.status, doc: await response.json() };
  }

  private async requireOk<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const { status, doc } = await this.exchange(method, path, body);
    if (status < 200 || status >= 300) {
      const error = (doc as { error?: string }).error;
      throw new ApiError(status, doc, error);
    }
    return doc as T;
  }

  getCatalog(): Promise<CatalogDoc> {
    return this.requireOk('GET', '/catalog');
  }

  createSession(datasetId: string, mode = 'raw_sum'): Promise<SessionCreated> {
    return this.requireOk('POST', '/sessions', {
      dataset_id: datasetId,
      mode,
    });
  }

  async listSessions(): Promise<SessionSummary[]> {
    const doc = await this.requireOk<{ sessions: SessionSummary[] }>(
      'GET',
      '/sessions',
    );
    return doc.sessions;
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.requireOk('GET', `/sessions/${sessionId}`);
  }

  async submitAnswers(
    sessionId: string,
    answers: AnswerPatch,
  ): Promise<SubmitResult> {
    const { status, doc } = await this.exchange(
      'PUT',
      `/sessions/${sessionId}/answers`,
      { answers },
    );
    if (status === 422) {
      const body = doc as { violations?: Violation[] };
      return { ok: false, violations: body.violations ?? [] };
    }
    if (status < 200 || status >= 300) {
      throw new ApiError(status, doc, (doc as { error?: string }).error);
    }
    return { ok: true, score: doc as LiveScore };
  }

  getScore(sessionId: string): Promise<ValueReportDoc> {
    return this.requireOk('GET', `/sessions/${sessionId}/score`);
  }

  whatIf(
    sessionId: string,
    changes: Record<string, string | number>,
  ): Promise<DeltaReportDoc> {
    return this.requireOk('POST', '/whatif', {
      session_id: sessionId,
      changes,
    });
  }

  compareSessions(sessionIds: string[]): Promise<ComparisonDoc> {
    return this.requireOk('POST', '/compare', { session_ids: sessionIds });
  }
}
