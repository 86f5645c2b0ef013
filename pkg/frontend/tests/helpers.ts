/**
 * A fetch double that replays recorded service responses.
 *
 * Fixture files are byte-for-byte captures from the real scoring service
 * (regenerate with scripts/generate_ui_fixtures.py in the repo root), so
 * every value the UI displays in these tests is a genuine service
 * response field. Paths outside the recorded flows get synthesized
 * validation responses for partial drafts, and 404 otherwise.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

export function fixtureText(name: string): string {
  return readFileSync(join(here, "fixtures", `${name}.json`), "utf-8");
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export function exampleText(name: string): string {
  return readFileSync(join(here, "..", "examples", `${name}.json`), "utf-8");
}

const BETA_ANSWERS = JSON.parse(exampleText("beta_ltd")).answers as Record<string, string>;

function sameAnswers(a: Record<string, string>, b: Record<string, string>): boolean {
  const aKeys = Object.keys(a);
  return aKeys.length === Object.keys(b).length && aKeys.every((k) => a[k] === b[k]);
}

function jsonResponse(text: string, status = 200): Response {
  return new Response(text, {
    status,
    headers: { "content-type": "application/json" },
  });
}

export interface FetchLogEntry {
  method: string;
  path: string;
  body: unknown;
}

export interface MockOptions {
  /** Simulate a dead service: every call rejects. */
  unreachable?: boolean;
  /** Simulate a service with no frameworks loaded. */
  emptyFrameworkList?: boolean;
}

export function installFetchMock(options: MockOptions = {}): FetchLogEntry[] {
  const log: FetchLogEntry[] = [];
  const framework = fixtureJson<{ questions: { tag: string }[] }>("framework_ers_v1");

  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = typeof input === "string" ? input : input.toString();
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const method = init?.method ?? "GET";
    const rawBody = typeof init?.body === "string" ? init.body : null;
    const body = rawBody ? JSON.parse(rawBody) : null;
    log.push({ method, path, body });

    if (init?.signal?.aborted) {
      throw new DOMException("The operation was aborted.", "AbortError");
    }
    if (options.unreachable) {
      throw new TypeError("fetch failed: connection refused");
    }

    if (method === "GET" && path === "/v1/frameworks") {
      if (options.emptyFrameworkList) {
        return jsonResponse(JSON.stringify({ frameworks: [] }));
      }
      return jsonResponse(fixtureText("frameworks_list"));
    }
    if (method === "GET" && path === "/v1/frameworks/ers-v1") {
      return jsonResponse(fixtureText("framework_ers_v1"));
    }
    if (method === "GET" && path === "/v1/health") {
      return jsonResponse(fixtureText("health"));
    }
    if (method === "GET" && path.endsWith("/examples/beta_ltd.json")) {
      return jsonResponse(exampleText("beta_ltd"));
    }
    if (method === "GET" && path.endsWith("/examples/alpha_ltd.json")) {
      return jsonResponse(exampleText("alpha_ltd"));
    }

    if (method === "POST" && path === "/v1/frameworks/ers-v1/score") {
      const answers = body.audit.answers as Record<string, string>;
      if (sameAnswers(answers, BETA_ANSWERS)) {
        return jsonResponse(fixtureText("score_beta_literal"));
      }
      const variant = { ...BETA_ANSWERS, "Q2.1": "yes" };
      if (sameAnswers(answers, variant)) {
        return jsonResponse(fixtureText("score_beta_q21_yes_literal"));
      }
      throw new Error(`no recorded score fixture for these answers: ${rawBody}`);
    }

    if (method === "POST" && path === "/v1/frameworks/ers-v1/whatif") {
      if (body.question === "Q2.1" && body.answer === "yes"
          && sameAnswers(body.audit.answers, BETA_ANSWERS)) {
        return jsonResponse(fixtureText("whatif_beta_q21_yes"));
      }
      throw new Error(`no recorded what-if fixture for ${rawBody}`);
    }

    if (method === "POST" && path === "/v1/frameworks/ers-v1/validate") {
      const answers = (body.answers ?? body.audit?.answers ?? {}) as Record<string, string>;
      if (Object.keys(answers).length === 0) {
        return jsonResponse(fixtureText("validate_empty"));
      }
      // synthesized for partial drafts outside the recorded flows
      const errors = framework.questions
        .filter((q) => answers[q.tag] === undefined)
        .map((q) => ({
          kind: "missing_answer",
          tag: q.tag,
          message: `no answer for question ${q.tag}`,
        }));
      return jsonResponse(JSON.stringify({
        framework: { id: "ers-v1", version: "1.0.0" },
        errors,
      }));
    }

    return jsonResponse(JSON.stringify({ error: `unknown framework` }), 404);
  }) as typeof fetch;

  return log;
}
