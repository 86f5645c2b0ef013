/**
 * The questionnaire application: form, live gauges, what-if panel.
 *
 * All score math happens on the service; this module moves strings
 * between responses and the DOM. Displayed values are verbatim response
 * fields; numeric parsing is used only to size gauge bars.
 */

import { ApiClient, ServiceError, Superseded, ValidationFailure } from "./api.js";
import { SessionStore } from "./store.js";
import type { AuditDoc, FrameworkDoc, Mode, WhatIfDocument } from "./types.js";

export interface AppConfig {
  apiBase: string;
  frameworkId: string;
  /** URL serving the bundled example audits, e.g. "./examples". */
  examplesBase: string;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class QuestionnaireApp {
  readonly store: SessionStore;
  readonly api: ApiClient;
  private root: HTMLElement;
  private config: AppConfig;

  constructor(root: HTMLElement, config: AppConfig, store?: SessionStore) {
    this.root = root;
    this.config = config;
    this.api = new ApiClient(config.apiBase);
    this.store = store ?? new SessionStore(globalThis.localStorage ?? null);
    this.store.subscribe(() => this.renderDynamic());
  }

  async start(): Promise<void> {
    this.renderSkeleton();
    await this.loadFramework();
  }

  async loadFramework(): Promise<void> {
    try {
      const listing = await this.api.frameworks();
      if (listing.frameworks.length === 0) {
        this.renderEmptyState();
        return;
      }
      const id = listing.frameworks.some((f) => f.id === this.config.frameworkId)
        ? this.config.frameworkId
        : listing.frameworks[0].id;
      const framework = await this.api.framework(id);
      this.store.setFramework(framework);
      this.renderForm(framework);
      await this.refresh();
    } catch (err) {
      this.store.setBanner(
        err instanceof ServiceError ? err.message : `failed to load framework: ${String(err)}`,
      );
    }
  }

  private renderEmptyState(): void {
    const section = this.root.querySelector<HTMLElement>(".questionnaire")!;
    section.innerHTML = "";
    section.append(el("p", { "data-testid": "empty-state" },
      "The scoring service has no frameworks to offer."));
  }

  /** Re-validate or re-score after any draft change. */
  async refresh(): Promise<void> {
    const fw = this.store.current.framework;
    if (!fw) return;
    const audit = this.store.exportAudit();
    try {
      if (this.store.isComplete()) {
        const doc = await this.api.score(fw.id, audit, this.store.current.mode);
        this.store.recordScore(doc);
      } else {
        const result = await this.api.validate(fw.id, audit);
        this.store.recordValidation(result);
      }
      this.store.setBanner(null);
    } catch (err) {
      if (err instanceof Superseded) return;
      if (err instanceof ValidationFailure) {
        this.store.recordValidation(err.result);
        return;
      }
      this.store.setBanner(err instanceof Error ? err.message : String(err));
    }
  }

  async loadExample(name: string): Promise<void> {
    try {
      const response = await fetch(`${this.config.examplesBase}/${name}.json`);
      if (!response.ok) throw new Error(`example ${name} not available (${response.status})`);
      const doc = (await response.json()) as AuditDoc;
      this.store.importAudit(doc);
      this.syncFormFromDraft();
      await this.refresh();
    } catch (err) {
      this.store.setBanner(err instanceof Error ? err.message : String(err));
    }
  }

  importAuditDoc(doc: AuditDoc): Promise<void> {
    this.store.importAudit(doc);
    this.syncFormFromDraft();
    return this.refresh();
  }

  async previewWhatIf(question: string, answer: string): Promise<WhatIfDocument | null> {
    const fw = this.store.current.framework;
    if (!fw || !this.store.isComplete()) {
      this.store.setBanner("what-if needs a complete draft");
      return null;
    }
    try {
      const doc = await this.api.whatIf(
        fw.id, this.store.exportAudit(), question, answer, this.store.current.mode);
      this.renderWhatIfPreview(doc);
      return doc;
    } catch (err) {
      if (err instanceof ValidationFailure) {
        this.store.recordValidation(err.result);
        return null;
      }
      this.store.setBanner(err instanceof Error ? err.message : String(err));
      return null;
    }
  }

  async applyWhatIf(doc: WhatIfDocument): Promise<void> {
    this.store.answer(doc.question, doc.new_answer);
    this.syncFormFromDraft();
    await this.refresh();
  }

  pinWhatIf(doc: WhatIfDocument): void {
    this.store.pin(doc);
  }

  // -- rendering --------------------------------------------------------

  private renderSkeleton(): void {
    this.root.innerHTML = "";
    const header = el("header");
    header.append(el("h1", {}, "Ethical Risk Questionnaire"));
    const controls = el("div", { class: "controls" });

    const modeSelect = el("select", { "data-testid": "mode-select" });
    for (const mode of ["literal", "gated"] as Mode[]) {
      modeSelect.append(el("option", { value: mode }, mode));
    }
    modeSelect.addEventListener("change", () => {
      this.store.setMode(modeSelect.value as Mode);
      void this.refresh();
    });
    controls.append(el("label", {}, "mode "), modeSelect);

    const loadBeta = el("button", { "data-testid": "load-beta" }, "Load Beta example");
    loadBeta.addEventListener("click", () => void this.loadExample("beta_ltd"));
    const loadAlpha = el("button", { "data-testid": "load-alpha" }, "Load Alpha example");
    loadAlpha.addEventListener("click", () => void this.loadExample("alpha_ltd"));
    controls.append(loadAlpha, loadBeta);

    const exportButton = el("button", { "data-testid": "export" }, "Export audit");
    exportButton.addEventListener("click", () => this.downloadAudit());
    const importInput = el("input", { type: "file", "data-testid": "import", accept: ".json" });
    importInput.addEventListener("change", () => {
      const file = (importInput as HTMLInputElement).files?.[0];
      if (!file) return;
      void file.text().then((text) => this.importAuditDoc(JSON.parse(text) as AuditDoc));
    });
    controls.append(exportButton, importInput);
    header.append(controls);

    const banner = el("div", { class: "banner", "data-testid": "banner", hidden: "" });
    const retry = el("button", { "data-testid": "retry" }, "Retry");
    retry.addEventListener("click", () => void this.loadFramework());
    banner.append(el("span", { class: "banner-text" }), retry);

    const main = el("main");
    main.append(
      el("section", { class: "questionnaire", "data-testid": "questionnaire" }),
      el("aside", { class: "scorepanel" }),
    );
    const aside = main.querySelector("aside")!;
    aside.append(
      el("div", { class: "gauges", "data-testid": "gauges" }),
      el("div", { class: "notices", "data-testid": "notices" }),
      this.buildWhatIfPanel(),
      el("div", { class: "pins", "data-testid": "pins" }),
    );

    this.root.append(header, banner, main);
  }

  private buildWhatIfPanel(): HTMLElement {
    const panel = el("div", { class: "whatif", "data-testid": "whatif-panel" });
    panel.append(el("h2", {}, "What if?"));
    const questionSelect = el("select", { "data-testid": "whatif-question" });
    const answerSelect = el("select", { "data-testid": "whatif-answer" });
    questionSelect.addEventListener("change", () => {
      this.fillAnswerOptions(questionSelect.value, answerSelect);
    });
    const preview = el("button", { "data-testid": "whatif-preview" }, "Preview");
    preview.addEventListener("click", () =>
      void this.previewWhatIf(questionSelect.value, answerSelect.value));
    panel.append(questionSelect, answerSelect, preview,
                 el("div", { class: "whatif-result", "data-testid": "whatif-result" }));
    return panel;
  }

  private fillAnswerOptions(tag: string, answerSelect: HTMLSelectElement): void {
    const fw = this.store.current.framework;
    answerSelect.innerHTML = "";
    const question = fw?.questions.find((q) => q.tag === tag);
    for (const option of question?.options ?? []) {
      answerSelect.append(el("option", { value: option.key }, option.key));
    }
  }

  private renderForm(fw: FrameworkDoc): void {
    const section = this.root.querySelector<HTMLElement>(".questionnaire")!;
    section.innerHTML = "";
    const groups = new Map<number, HTMLElement>();
    fw.dimensions.forEach((dim, index) => {
      const fieldset = el("fieldset", { "data-testid": `group-${dim.symbol}` });
      fieldset.append(el("legend", {}, `${dim.symbol}: ${dim.label}`));
      groups.set(index + 1, fieldset);
      section.append(fieldset);
    });
    for (const question of fw.questions) {
      const groupIndex = Number(question.tag.slice(1).split(".")[0]);
      const host = groups.get(groupIndex) ?? section;
      const row = el("div", { class: "question", "data-testid": `question-${question.tag}` });
      row.append(el("span", { class: "tag" }, question.tag),
                 el("span", { class: "text" }, question.text));
      for (const option of question.options) {
        const label = el("label");
        const input = el("input", {
          type: "radio",
          name: question.tag,
          value: option.key,
          "data-testid": `answer-${question.tag}-${option.key}`,
        });
        input.addEventListener("change", () => {
          this.store.answer(question.tag, option.key);
          void this.refresh();
        });
        label.append(input, el("span", {}, option.key));
        row.append(label);
      }
      host.append(row);
    }
    const questionSelect = this.root.querySelector<HTMLSelectElement>(
      '[data-testid="whatif-question"]')!;
    questionSelect.innerHTML = "";
    for (const question of fw.questions) {
      questionSelect.append(el("option", { value: question.tag }, question.tag));
    }
    this.fillAnswerOptions(fw.questions[0]?.tag ?? "",
      this.root.querySelector<HTMLSelectElement>('[data-testid="whatif-answer"]')!);
  }

  private syncFormFromDraft(): void {
    const draft = this.store.current.draft;
    for (const input of this.root.querySelectorAll<HTMLInputElement>("input[type=radio]")) {
      input.checked = draft[input.name] === input.value;
    }
  }

  private renderDynamic(): void {
    const state = this.store.current;
    const banner = this.root.querySelector<HTMLElement>('[data-testid="banner"]');
    if (banner) {
      const text = banner.querySelector<HTMLElement>(".banner-text")!;
      if (state.banner) {
        banner.removeAttribute("hidden");
        text.textContent = state.banner;
      } else {
        banner.setAttribute("hidden", "");
        text.textContent = "";
      }
    }

    const flagged = this.store.flaggedTags();
    for (const row of this.root.querySelectorAll<HTMLElement>(".question")) {
      const tag = row.getAttribute("data-testid")!.replace("question-", "");
      row.classList.toggle("flagged", flagged.has(tag));
    }

    const modeSelect = this.root.querySelector<HTMLSelectElement>('[data-testid="mode-select"]');
    if (modeSelect && modeSelect.value !== state.mode) modeSelect.value = state.mode;

    this.renderGauges();
    this.renderNotices();
    this.renderPins();
  }

  private renderGauges(): void {
    const host = this.root.querySelector<HTMLElement>('[data-testid="gauges"]');
    if (!host) return;
    host.innerHTML = "";
    const state = this.store.current;
    const fw = state.framework;
    if (!fw) return;
    const doc = state.lastScore;
    if (!doc) {
      const missing = this.store.flaggedTags().size;
      host.append(el("p", { class: "placeholder" },
        missing > 0 ? `${missing} question(s) still need answers` : "answer the questionnaire to see scores"));
      return;
    }
    const computed = fw.computed[doc.report.mode];
    for (const dim of fw.dimensions) {
      const value = doc.report.dimensions[dim.symbol];
      const max = computed.dimension_max[dim.symbol];
      const row = el("div", { class: "gauge" });
      row.append(el("span", { class: "label" }, `${dim.symbol} ${dim.label}`));
      const bar = el("div", { class: "bar" });
      const fill = el("div", { class: "fill" });
      const ratio = Number(max) > 0 ? Math.min(1, Number(value) / Number(max)) : 0;
      fill.style.width = `${(ratio * 100).toFixed(1)}%`;
      bar.append(fill);
      row.append(bar, el("span", { "data-testid": `gauge-${dim.symbol}` }, value));
      host.append(row);
    }
    const totalRow = el("div", { class: "gauge total" });
    totalRow.append(el("span", { class: "label" }, "ERS total"));
    totalRow.append(el("span", { "data-testid": "gauge-total" }, doc.report.total));
    host.append(totalRow);

    const normRow = el("div", { class: "gauge normalized" });
    normRow.append(el("span", { class: "label" },
      `normalized (0..${fw.normalization.target_max})`));
    const bar = el("div", { class: "bar" });
    const fill = el("div", { class: "fill" });
    const target = Number(fw.normalization.target_max);
    fill.style.width = `${Math.min(100, (Number(doc.report.normalized) / target) * 100).toFixed(1)}%`;
    bar.append(fill);
    normRow.append(bar, el("span", { "data-testid": "gauge-normalized" }, doc.report.normalized));
    host.append(normRow);
  }

  private renderNotices(): void {
    const host = this.root.querySelector<HTMLElement>('[data-testid="notices"]');
    if (!host) return;
    host.innerHTML = "";
    for (const notice of this.store.current.lastScore?.notices ?? []) {
      host.append(el("p", { class: "notice" }, notice));
    }
  }

  private renderWhatIfPreview(doc: WhatIfDocument): void {
    const host = this.root.querySelector<HTMLElement>('[data-testid="whatif-result"]');
    if (!host) return;
    host.innerHTML = "";
    host.append(el("p", {},
      `${doc.question}: ${doc.old_answer} → ${doc.new_answer}`));
    const list = el("ul");
    for (const [symbol, delta] of Object.entries(doc.deltas.dimensions)) {
      const item = el("li");
      item.append(el("span", {}, `${symbol} `),
                  el("span", { "data-testid": `whatif-delta-${symbol}` }, delta));
      list.append(item);
    }
    const total = el("li");
    total.append(el("span", {}, "total "),
                 el("span", { "data-testid": "whatif-total-delta" }, doc.deltas.total));
    list.append(total);
    host.append(list);

    const apply = el("button", { "data-testid": "whatif-apply" }, "Apply");
    apply.addEventListener("click", () => void this.applyWhatIf(doc));
    const pin = el("button", { "data-testid": "whatif-pin" }, "Pin");
    pin.addEventListener("click", () => this.pinWhatIf(doc));
    host.append(apply, pin);
  }

  private renderPins(): void {
    const host = this.root.querySelector<HTMLElement>('[data-testid="pins"]');
    if (!host) return;
    host.innerHTML = "";
    for (const pinned of this.store.current.pins) {
      const card = el("div", { class: "pin", "data-testid": `pin-${pinned.id}` });
      card.append(el("strong", {},
        `${pinned.doc.question} → ${pinned.doc.new_answer}`));
      card.append(el("span", { "data-testid": `pin-${pinned.id}-total` },
        ` total ${pinned.doc.deltas.total}`));
      card.append(el("span", { "data-testid": `pin-${pinned.id}-variant-total` },
        ` variant ${pinned.doc.variant.total}`));
      const unpin = el("button", { "data-testid": `unpin-${pinned.id}` }, "Unpin");
      unpin.addEventListener("click", () => this.store.unpin(pinned.id));
      card.append(unpin);
      host.append(card);
    }
  }

  private downloadAudit(): void {
    const doc = this.store.exportAudit();
    const blob = new Blob([JSON.stringify(doc, null, 2) + "\n"],
                          { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const anchor = el("a", { href: url, download: "audit.json" });
    anchor.click();
    URL.revokeObjectURL(url);
  }
}
