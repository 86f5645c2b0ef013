/**
 * Typed client for the scoring service.
 *
 * Score requests supersede each other: starting a new one aborts the
 * previous in-flight request, so at most one score round-trip is ever
 * pending and stale responses can never overwrite fresh ones.
 */

import type {
  AuditDoc,
  FrameworkDoc,
  Mode,
  ScoreDocument,
  ValidationResult,
  WhatIfDocument,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly body: unknown,
  ) {
    super(message);
  }
}

export class ValidationFailure extends Error {
  constructor(readonly result: ValidationResult) {
    super("audit failed validation");
  }
}

/** Thrown internally when a request was superseded; callers ignore it. */
export class Superseded extends Error {}

async function parseJson(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return JSON.parse(text);
  } catch {
    throw new ServiceError(`service returned non-JSON (${response.status})`, response.status, text);
  }
}

export class ApiClient {
  private scoreAbort: AbortController | null = null;

  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    let response: Response;
    try {
      response = await fetch(this.url(path), init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        throw new Superseded();
      }
      throw new ServiceError(`service unreachable: ${String(err)}`, 0, null);
    }
    const body = await parseJson(response);
    if (response.status === 422) {
      throw new ValidationFailure(body as ValidationResult);
    }
    if (!response.ok) {
      throw new ServiceError(`service error ${response.status}`, response.status, body);
    }
    return body;
  }

  async health(): Promise<{ status: string; version: string }> {
    return (await this.request("/v1/health")) as { status: string; version: string };
  }

  async frameworks(): Promise<{ frameworks: { id: string; version: string }[] }> {
    return (await this.request("/v1/frameworks")) as {
      frameworks: { id: string; version: string }[];
    };
  }

  async framework(id: string): Promise<FrameworkDoc> {
    return (await this.request(`/v1/frameworks/${id}`)) as FrameworkDoc;
  }

  /** Aborts and replaces any score request still in flight. */
  async score(frameworkId: string, audit: AuditDoc, mode: Mode): Promise<ScoreDocument> {
    this.scoreAbort?.abort();
    const controller = new AbortController();
    this.scoreAbort = controller;
    const body = JSON.stringify({ audit, mode });
    return (await this.request(`/v1/frameworks/${frameworkId}/score`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body,
      signal: controller.signal,
    })) as ScoreDocument;
  }

  async validate(frameworkId: string, audit: AuditDoc): Promise<ValidationResult> {
    return (await this.request(`/v1/frameworks/${frameworkId}/validate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(audit),
    })) as ValidationResult;
  }

  async whatIf(
    frameworkId: string,
    audit: AuditDoc,
    question: string,
    answer: string,
    mode: Mode,
  ): Promise<WhatIfDocument> {
    return (await this.request(`/v1/frameworks/${frameworkId}/whatif`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ audit, question, answer, mode }),
    })) as WhatIfDocument;
  }
}
