import { describe, expect, it } from "vitest";

import { ApiClient, Superseded, ValidationFailure } from "../src/api.js";
import type { AuditDoc } from "../src/types.js";
import { exampleText, installFetchMock } from "./helpers.js";

const beta = JSON.parse(exampleText("beta_ltd")) as AuditDoc;

describe("api client", () => {
  it("fetches the framework snapshot", async () => {
    installFetchMock();
    const client = new ApiClient("http://127.0.0.1:8000");
    const fw = await client.framework("ers-v1");
    expect(fw.id).toBe("ers-v1");
    expect(fw.questions.length).toBe(23);
    expect(fw.computed.literal.max_possible_total).toBe("6.23125");
  });

  it("surfaces 422 bodies as ValidationFailure with every issue", async () => {
    installFetchMock();
    const client = new ApiClient("http://127.0.0.1:8000");
    // mock routes unknown-answer score bodies to a thrown error, so use
    // validate for the full-list check
    const empty = { ...beta, answers: {} };
    const result = await client.validate("ers-v1", empty);
    expect(result.errors.length).toBe(23);
    expect(result.errors.every((e) => e.kind === "missing_answer")).toBe(true);
  });

  it("keeps at most one score request in flight", async () => {
    // a hand-rolled fetch that parks requests until released
    const pending: { resolve: (r: Response) => void; reject: (e: unknown) => void;
                     signal: AbortSignal | null }[] = [];
    globalThis.fetch = ((_url: RequestInfo | URL, init?: RequestInit) =>
      new Promise<Response>((resolve, reject) => {
        const entry = { resolve, reject, signal: init?.signal ?? null };
        init?.signal?.addEventListener("abort", () =>
          reject(new DOMException("aborted", "AbortError")));
        pending.push(entry);
      })) as typeof fetch;

    const client = new ApiClient("http://127.0.0.1:8000");
    const first = client.score("ers-v1", beta, "literal");
    const second = client.score("ers-v1", beta, "literal");
    expect(pending.length).toBe(2);
    expect(pending[0].signal?.aborted).toBe(true);
    expect(pending[1].signal?.aborted).toBe(false);

    await expect(first).rejects.toBeInstanceOf(Superseded);
    pending[1].resolve(new Response(
      JSON.stringify({ report: { total: "5.4" }, trace: { entries: [] }, notices: [] }),
      { status: 200, headers: { "content-type": "application/json" } }));
    const doc = await second;
    expect(doc.report.total).toBe("5.4");
  });

  it("raises ValidationFailure on a 422 response", async () => {
    globalThis.fetch = (async () => new Response(
      JSON.stringify({ framework: { id: "ers-v1", version: "1.0.0" },
                       errors: [{ kind: "missing_answer", tag: "Q1.1", message: "m" }] }),
      { status: 422, headers: { "content-type": "application/json" } },
    )) as typeof fetch;
    const client = new ApiClient("http://127.0.0.1:8000");
    await expect(client.score("ers-v1", beta, "literal"))
      .rejects.toBeInstanceOf(ValidationFailure);
  });
});
