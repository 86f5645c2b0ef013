import { beforeEach, describe, expect, it } from "vitest";

import { SessionStore } from "../src/store.js";
import type { AuditDoc, FrameworkDoc } from "../src/types.js";
import { exampleText, fixtureJson } from "./helpers.js";

const framework = fixtureJson<FrameworkDoc>("framework_ers_v1");
const beta = JSON.parse(exampleText("beta_ltd")) as AuditDoc;

describe("session store", () => {
  beforeEach(() => localStorage.clear());

  it("starts empty and incomplete", () => {
    const store = new SessionStore(localStorage);
    store.setFramework(framework);
    expect(store.isComplete()).toBe(false);
    expect(store.current.lastScore).toBeNull();
  });

  it("is complete exactly when every question is answered", () => {
    const store = new SessionStore(localStorage);
    store.setFramework(framework);
    for (const q of framework.questions.slice(0, -1)) {
      store.answer(q.tag, "yes");
    }
    expect(store.isComplete()).toBe(false);
    store.answer(framework.questions.at(-1)!.tag, "no");
    expect(store.isComplete()).toBe(true);
  });

  it("exports the audit file format the CLI reads", () => {
    const store = new SessionStore(localStorage);
    store.setFramework(framework);
    store.importAudit(beta);
    const exported = store.exportAudit();
    expect(exported.framework).toEqual({ id: "ers-v1", version: "1.0.0" });
    expect(exported.answers).toEqual(beta.answers);
    expect(exported.subject).toEqual(beta.subject);
  });

  it("persists the draft to storage and restores it for the same framework", () => {
    const store = new SessionStore(localStorage);
    store.setFramework(framework);
    store.answer("Q1.1", "yes");
    store.setSubjectField("organization", "Acme");

    const reloaded = new SessionStore(localStorage);
    reloaded.setFramework(framework);
    expect(reloaded.current.draft["Q1.1"]).toBe("yes");
    expect(reloaded.current.subject.organization).toBe("Acme");
  });

  it("ignores a stored draft for a different framework", () => {
    localStorage.setItem("ethicalrisk.draft", JSON.stringify({
      framework: { id: "other-fw", version: "1" },
      subject: {},
      answers: { "Q1.1": "yes" },
    }));
    const store = new SessionStore(localStorage);
    store.setFramework(framework);
    expect(store.current.draft).toEqual({});
  });

  it("collects flagged tags from the last validation result", () => {
    const store = new SessionStore(localStorage);
    store.setFramework(framework);
    store.recordValidation({
      framework: { id: "ers-v1", version: "1.0.0" },
      errors: [
        { kind: "missing_answer", tag: "Q4.5", message: "no answer for question Q4.5" },
        { kind: "framework_mismatch", tag: null, message: "other" },
      ],
    });
    expect([...store.flaggedTags()]).toEqual(["Q4.5"]);
  });
});
