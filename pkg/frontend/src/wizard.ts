// The attribute-exploration wizard. All state shown here is re-fetched from
// the service after every mutation; the pre-check mirror only decides whether
// the counterexample submit button is worth enabling.

import { ApiError, ServiceClient } from "./api";
import { checkCounterexample } from "./precheck";
import type {
  CheckResult,
  ImplicationLabels,
  SessionState,
  TranscriptEntry,
} from "./types";

function braced(labels: string[]): string {
  return `{${labels.join(", ")}}`;
}

function arrow(rule: ImplicationLabels): string {
  return `${rule.premise.join(" ") || "{}"} -> ${rule.conclusion.join(" ")}`;
}

export function questionText(pending: ImplicationLabels): string {
  return `Is it true that objects with ${braced(pending.premise)} also have ${braced(pending.conclusion)}?`;
}

function transcriptLine(entry: TranscriptEntry): string {
  if (entry.answer === "accept") {
    return `accepted: ${arrow(entry.question)}`;
  }
  return `counterexample ${entry.label} ${braced(entry.attributes)}`;
}

export interface WizardOptions {
  onUpdate?: (session: SessionState) => void;
}

export class ExplorationWizard {
  session!: SessionState;
  /** the last session response exactly as the service sent it */
  lastRawSession = "";
  private busy = false;

  private constructor(
    private client: ServiceClient,
    private container: HTMLElement,
    readonly sessionId: string,
    private options: WizardOptions = {},
  ) {}

  /** hydrate a wizard from the service, fresh or mid-session */
  static async open(
    client: ServiceClient,
    container: HTMLElement,
    sessionId: string,
    options: WizardOptions = {},
  ): Promise<ExplorationWizard> {
    const wizard = new ExplorationWizard(client, container, sessionId, options);
    await wizard.refresh();
    return wizard;
  }

  private async refresh(): Promise<void> {
    this.lastRawSession = await this.client.getSessionText(this.sessionId);
    this.session = JSON.parse(this.lastRawSession) as SessionState;
    this.render();
    this.options.onUpdate?.(this.session);
  }

  async accept(): Promise<void> {
    if (this.busy || !this.session.pending) return;
    this.busy = true;
    this.setControlsDisabled(true);
    try {
      await this.client.answer(this.sessionId, { accept: true });
      await this.refresh();
    } finally {
      this.busy = false;
      this.setControlsDisabled(false);
    }
  }

  async submitCounterexample(label: string, attributes: string[]): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.setControlsDisabled(true);
    try {
      await this.client.answer(this.sessionId, {
        counterexample: { label, attributes },
      });
      await this.refresh();
    } catch (err) {
      // the service stayed authoritative and turned the object down; the
      // session has not advanced, so keep the form and show its reasons
      if (err instanceof ApiError && err.status === 422) {
        const body = err.body as { check?: CheckResult } | null;
        this.renderRejection(body?.check?.reasons ?? [err.detail]);
      } else {
        throw err;
      }
    } finally {
      this.busy = false;
      this.setControlsDisabled(false);
    }
  }

  private setControlsDisabled(disabled: boolean): void {
    for (const el of this.container.querySelectorAll("button, input")) {
      (el as HTMLButtonElement | HTMLInputElement).disabled = disabled;
    }
    if (!disabled) this.revalidate();
  }

  private render(): void {
    this.container.innerHTML = "";
    this.container.appendChild(this.renderTranscript());
    if (this.session.state === "finished") {
      this.container.appendChild(this.renderFinished());
    } else if (this.session.pending) {
      this.container.appendChild(this.renderQuestion(this.session.pending));
    }
  }

  private renderTranscript(): HTMLElement {
    const box = el("div", "transcript");
    for (const entry of this.session.transcript) {
      box.appendChild(el("div", "transcript-entry", transcriptLine(entry)));
    }
    return box;
  }

  private renderFinished(): HTMLElement {
    const box = el("div", "finished");
    box.appendChild(el("h2", "", "Exploration finished"));
    box.appendChild(el("p", "", "Accepted implications:"));
    const list = document.createElement("ul");
    list.className = "accepted-list";
    for (const rule of this.session.accepted) {
      const item = document.createElement("li");
      item.textContent = arrow(rule);
      list.appendChild(item);
    }
    box.appendChild(list);
    return box;
  }

  private renderQuestion(pending: ImplicationLabels): HTMLElement {
    const card = el("div", "question-card");
    card.appendChild(el("p", "question", questionText(pending)));

    const acceptBtn = button("accept-btn", "Accept");
    acceptBtn.addEventListener("click", () => void this.accept());
    card.appendChild(acceptBtn);

    const toggle = button("cx-toggle", "Give a counterexample");
    card.appendChild(toggle);

    const form = this.renderCounterexampleForm(pending);
    form.hidden = true;
    toggle.addEventListener("click", () => {
      form.hidden = !form.hidden;
      if (!form.hidden) this.revalidate();
    });
    card.appendChild(form);
    return card;
  }

  private renderCounterexampleForm(pending: ImplicationLabels): HTMLElement {
    const form = el("div", "cx-form");
    const labelInput = document.createElement("input");
    labelInput.className = "cx-label";
    labelInput.placeholder = "object label";
    form.appendChild(labelInput);

    const attrs = el("div", "cx-attrs");
    for (const m of this.session.context.attributes) {
      const wrap = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.className = "cx-attr";
      box.dataset.attr = m;
      // premise attributes start checked: a counterexample must satisfy them
      box.checked = pending.premise.includes(m);
      wrap.appendChild(box);
      wrap.appendChild(document.createTextNode(m));
      attrs.appendChild(wrap);
    }
    form.appendChild(attrs);

    form.appendChild(el("div", "cx-validation"));
    form.appendChild(el("div", "service-rejection"));

    const submit = button("cx-submit", "Submit counterexample");
    submit.disabled = true;
    submit.addEventListener("click", () => {
      void this.submitCounterexample(...this.readForm());
    });
    form.appendChild(submit);

    form.addEventListener("input", () => this.revalidate());
    form.addEventListener("change", () => this.revalidate());
    return form;
  }

  private readForm(): [string, string[]] {
    const label =
      this.container.querySelector<HTMLInputElement>(".cx-label")?.value ?? "";
    const attributes = [
      ...this.container.querySelectorAll<HTMLInputElement>(".cx-attr"),
    ]
      .filter((box) => box.checked)
      .map((box) => box.dataset.attr ?? "");
    return [label.trim(), attributes];
  }

  /** live validation: the mirror decides whether submitting could succeed */
  private revalidate(): void {
    const validation =
      this.container.querySelector<HTMLElement>(".cx-validation");
    const submit = this.container.querySelector<HTMLButtonElement>(".cx-submit");
    if (!validation || !submit || !this.session.pending) return;
    const [label, attributes] = this.readForm();
    const check = checkCounterexample(
      this.session.context,
      this.session.accepted,
      this.session.pending,
      label,
      attributes,
    );
    validation.innerHTML = "";
    for (const reason of check.reasons) {
      validation.appendChild(el("div", "violation", reason));
    }
    submit.disabled = !check.ok || label === "";
  }

  private renderRejection(reasons: string[]): void {
    const box = this.container.querySelector<HTMLElement>(".service-rejection");
    if (!box) return;
    box.innerHTML = "";
    box.appendChild(el("p", "", "The service rejected this counterexample:"));
    for (const reason of reasons) {
      box.appendChild(el("div", "violation", reason));
    }
  }
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function button(className: string, text: string): HTMLButtonElement {
  const node = document.createElement("button");
  node.className = className;
  node.textContent = text;
  return node;
}
