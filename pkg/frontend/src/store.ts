/**
 * Session state for one auditor working on one framework.
 *
 * The store never computes scores; it only holds what the service said
 * last. Draft answers persist in browser localStorage and round-trip
 * through the same audit file format the CLI reads.
 */

import type {
  AuditDoc,
  FrameworkDoc,
  Mode,
  ScoreDocument,
  ValidationResult,
  WhatIfDocument,
} from "./types.js";

export interface PinnedWhatIf {
  id: number;
  doc: WhatIfDocument;
}

export interface SessionState {
  framework: FrameworkDoc | null;
  mode: Mode;
  subject: Record<string, string>;
  draft: Record<string, string>;
  lastValidation: ValidationResult | null;
  lastScore: ScoreDocument | null;
  pins: PinnedWhatIf[];
  banner: string | null;
}

export type Listener = (state: SessionState) => void;

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const STORAGE_KEY = "ethicalrisk.draft";

export class SessionStore {
  private state: SessionState;
  private listeners: Listener[] = [];
  private nextPinId = 1;

  constructor(private storage: StorageLike | null = null) {
    this.state = {
      framework: null,
      mode: "literal",
      subject: {},
      draft: {},
      lastValidation: null,
      lastScore: null,
      pins: [],
      banner: null,
    };
  }

  get current(): SessionState {
    return this.state;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private update(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    this.emit();
  }

  setFramework(framework: FrameworkDoc): void {
    this.update({ framework, mode: framework.default_mode, banner: null });
    this.restoreDraft();
  }

  setBanner(message: string | null): void {
    this.update({ banner: message });
  }

  setMode(mode: Mode): void {
    this.update({ mode, lastScore: null });
  }

  /** True once every framework question has an answer. */
  isComplete(): boolean {
    const fw = this.state.framework;
    if (!fw) return false;
    return fw.questions.every((q) => this.state.draft[q.tag] !== undefined);
  }

  answer(tag: string, key: string): void {
    this.update({ draft: { ...this.state.draft, [tag]: key } });
    this.persistDraft();
  }

  setSubjectField(field: string, value: string): void {
    this.update({ subject: { ...this.state.subject, [field]: value } });
    this.persistDraft();
  }

  recordValidation(result: ValidationResult): void {
    this.update({ lastValidation: result, lastScore: null });
  }

  recordScore(doc: ScoreDocument): void {
    this.update({ lastScore: doc, lastValidation: null });
  }

  /** Tags flagged by the last validation round, for highlighting. */
  flaggedTags(): Set<string> {
    const flagged = new Set<string>();
    for (const issue of this.state.lastValidation?.errors ?? []) {
      if (issue.tag) flagged.add(issue.tag);
    }
    return flagged;
  }

  pin(doc: WhatIfDocument): PinnedWhatIf {
    const pinned = { id: this.nextPinId++, doc };
    this.update({ pins: [...this.state.pins, pinned] });
    return pinned;
  }

  unpin(id: number): void {
    this.update({ pins: this.state.pins.filter((p) => p.id !== id) });
  }

  /** The draft as an audit document, interchangeable with CLI audits. */
  exportAudit(): AuditDoc {
    const fw = this.state.framework;
    if (!fw) throw new Error("no framework loaded");
    return {
      framework: { id: fw.id, version: fw.version },
      subject: { ...this.state.subject },
      answers: { ...this.state.draft },
    };
  }

  /** Load an audit document (file import or bundled example) into the draft. */
  importAudit(doc: AuditDoc): void {
    this.update({
      subject: { ...doc.subject },
      draft: { ...doc.answers },
      lastScore: null,
      lastValidation: null,
      ...(doc.mode ? { mode: doc.mode } : {}),
    });
    this.persistDraft();
  }

  private persistDraft(): void {
    if (!this.storage || !this.state.framework) return;
    this.storage.setItem(STORAGE_KEY, JSON.stringify(this.exportAudit()));
  }

  private restoreDraft(): void {
    if (!this.storage) return;
    const raw = this.storage.getItem(STORAGE_KEY);
    if (!raw) return;
    try {
      const doc = JSON.parse(raw) as AuditDoc;
      if (doc.framework?.id === this.state.framework?.id) {
        this.update({ subject: { ...doc.subject }, draft: { ...doc.answers } });
      }
    } catch {
      // corrupted stored draft: start fresh rather than break the session
    }
  }
}
