import { ApiError, ServiceClient } from "./api";
import { renderContextGrid } from "./contextGrid";
import { LatticeView } from "./latticeView";
import { ContextPayload } from "./types";
import { ExplorationWizard } from "./wizard";

const SAMPLE = `{
  "objects": ["plane", "amphibian car", "catamaran", "car", "submarine"],
  "attributes": ["surface", "air", "water", "underwater"],
  "incidence": [[1], [0, 2], [2], [2, 3], [2, 3]]
}`;

/** Top-level page: upload a context, then explore it or draw its lattice. */
export class App {
  client: ServiceClient;
  contextId: string | null = null;
  context: ContextPayload | null = null;
  wizard: ExplorationWizard | null = null;
  latticeView: LatticeView | null = null;

  private status: HTMLElement;
  private input: HTMLTextAreaElement;
  private startButton: HTMLButtonElement;
  private latticeButton: HTMLButtonElement;
  private gridPanel: HTMLElement;
  private wizardPanel: HTMLElement;
  private latticePanel: HTMLElement;

  constructor(container: HTMLElement, client: ServiceClient) {
    this.client = client;

    const uploadPanel = el("div", "upload-panel");
    const heading = el("h1", "", "Attribute exploration");
    this.input = document.createElement("textarea");
    this.input.className = "context-input";
    this.input.rows = 8;
    this.input.value = SAMPLE;
    const uploadButton = button("upload-btn", "Upload context");
    uploadButton.addEventListener("click", () => void this.upload());
    this.status = el("div", "upload-status");
    uploadPanel.append(heading, this.input, uploadButton, this.status);

    const actions = el("div", "actions");
    this.startButton = button("start-wizard", "Start exploration");
    this.startButton.disabled = true;
    this.startButton.addEventListener("click", () => void this.startWizard());
    this.latticeButton = button("show-lattice", "Show lattice");
    this.latticeButton.disabled = true;
    this.latticeButton.addEventListener("click", () => void this.showLattice());
    actions.append(this.startButton, this.latticeButton);

    this.gridPanel = el("div", "grid-panel");
    this.wizardPanel = el("div", "wizard-panel");
    this.latticePanel = el("div", "lattice-panel");

    container.append(uploadPanel, actions, this.gridPanel, this.wizardPanel, this.latticePanel);
  }

  async upload(): Promise<void> {
    let payload: ContextPayload;
    try {
      payload = JSON.parse(this.input.value);
    } catch (exc) {
      this.status.textContent = "not valid JSON: " + String(exc);
      return;
    }
    try {
      this.contextId = await this.client.uploadContext(payload);
    } catch (exc) {
      this.reportError(exc);
      return;
    }
    this.context = payload;
    this.status.textContent = `uploaded as ${this.contextId}`;
    this.startButton.disabled = false;
    this.latticeButton.disabled = false;
    this.wizardPanel.textContent = "";
    this.latticePanel.textContent = "";
    renderContextGrid(this.gridPanel, payload);
  }

  async startWizard(): Promise<void> {
    if (!this.contextId) return;
    try {
      const opened = await this.client.openSession(this.contextId);
      this.wizard = await ExplorationWizard.open(this.client, this.wizardPanel, opened.sessionId, {
        onUpdate: (session) => renderContextGrid(this.gridPanel, session.context),
      });
    } catch (exc) {
      this.reportError(exc);
    }
  }

  async showLattice(): Promise<void> {
    if (!this.contextId || !this.context) return;
    try {
      const payload = await this.client.getLattice(this.contextId);
      this.latticeView = new LatticeView(this.latticePanel, payload, this.context);
    } catch (exc) {
      this.reportError(exc);
    }
  }

  private reportError(exc: unknown): void {
    if (exc instanceof ApiError) {
      this.status.textContent = `service error ${exc.status}: ${exc.detail}`;
    } else {
      this.status.textContent = String(exc);
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
  node.type = "button";
  return node;
}
