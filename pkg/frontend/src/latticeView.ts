// SVG renderer for the lattice view model: draggable nodes, reduced labels
// with offset stacking, an iceberg slider, and a click-for-details panel.
// Oversized or empty payloads fall back to flat views instead of a diagram.

import {
  buildViewModel,
  summaryRows,
  type LatticeViewModel,
} from "./lattice";
import type { ContextPayload, LatticePayload } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const LABEL_STEP = 14;

export interface LatticeViewOptions {
  /** beyond this many concepts only the summary list is shown */
  nodeCap?: number;
  summaryLimit?: number;
}

export class LatticeView {
  vm: LatticeViewModel | null = null;
  minSupport = 0;
  private positions = new Map<number, { x: number; y: number }>();
  private svg: SVGSVGElement | null = null;

  constructor(
    private container: HTMLElement,
    private payload: LatticePayload,
    private context: ContextPayload,
    options: LatticeViewOptions = {},
  ) {
    container.innerHTML = "";
    if (payload.concepts.length === 0) {
      container.appendChild(
        div("lattice-empty", "The lattice payload contains no concepts."),
      );
      return;
    }
    const cap = options.nodeCap ?? 150;
    if (payload.concepts.length > cap) {
      this.renderSummary(cap, options.summaryLimit ?? 20);
      return;
    }
    this.vm = buildViewModel(payload, context);
    this.renderDiagram();
  }

  private renderSummary(cap: number, limit: number): void {
    const box = div("lattice-summary");
    box.appendChild(
      div(
        "summary-note",
        `${this.payload.concepts.length} concepts exceed the drawing cap of ${cap}; showing the top ${limit}.`,
      ),
    );
    const list = document.createElement("ol");
    for (const row of summaryRows(this.payload, this.context, limit)) {
      const item = document.createElement("li");
      item.className = "summary-row";
      const sigma = row.sigma === null ? "" : ` sigma=${row.sigma}`;
      item.textContent = `({${row.extent.join(" ")}}, {${row.intent.join(" ")}})${sigma}`;
      list.appendChild(item);
    }
    box.appendChild(list);
    this.container.appendChild(box);
  }

  private renderDiagram(): void {
    const vm = this.vm!;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("class", "lattice-svg");
    svg.setAttribute("viewBox", `0 0 ${vm.width} ${vm.height}`);
    svg.setAttribute("width", String(vm.width));
    svg.setAttribute("height", String(vm.height));

    for (const edge of vm.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "edge");
      line.setAttribute("data-upper", String(edge.upper));
      line.setAttribute("data-lower", String(edge.lower));
      svg.appendChild(line);
    }
    for (const node of vm.nodes) {
      this.positions.set(node.index, { x: node.x, y: node.y });
      svg.appendChild(this.renderNode(node.index));
    }
    this.svg = svg;
    this.container.appendChild(svg);
    this.syncPositions();

    const slider = document.createElement("input");
    slider.type = "range";
    slider.className = "iceberg-slider";
    slider.min = "0";
    slider.max = "100";
    slider.value = "0";
    slider.addEventListener("input", () => {
      this.setMinSupport(Number(slider.value) / 100);
    });
    this.container.appendChild(slider);
    this.container.appendChild(div("node-detail"));
    this.applyThreshold();
    this.wireDrag();
  }

  private renderNode(index: number): SVGGElement {
    const node = this.vm!.nodes[index];
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node");
    group.setAttribute("data-index", String(index));

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("r", "8");
    group.appendChild(circle);

    // stacked offsets keep multiple labels at one node apart
    node.attrLabels.forEach((label, k) => {
      group.appendChild(
        svgText("label-attr", label, 0, -14 - k * LABEL_STEP),
      );
    });
    node.objLabels.forEach((label, k) => {
      group.appendChild(svgText("label-obj", label, 0, 24 + k * LABEL_STEP));
    });
    if (node.sigma !== null) {
      group.appendChild(svgText("sigma-badge", `σ=${node.sigma}`, 14, 4));
    }

    group.addEventListener("click", () => this.showDetail(index));
    return group;
  }

  private showDetail(index: number): void {
    const node = this.vm!.nodes[index];
    const panel = this.container.querySelector<HTMLElement>(".node-detail");
    if (!panel) return;
    const extent = node.extent.map((g) => this.context.objects[g]);
    const intent = node.intent.map((m) => this.context.attributes[m]);
    panel.textContent = `extent: {${extent.join(", ")}} intent: {${intent.join(", ")}}`;
  }

  setMinSupport(threshold: number): void {
    this.minSupport = threshold;
    this.applyThreshold();
  }

  private applyThreshold(): void {
    if (!this.vm || !this.svg) return;
    for (const node of this.vm.nodes) {
      const group = this.svg.querySelector(
        `g.node[data-index="${node.index}"]`,
      );
      group?.classList.toggle(
        "below-threshold",
        node.support < this.minSupport,
      );
    }
  }

  private syncPositions(): void {
    if (!this.svg) return;
    for (const [index, pos] of this.positions) {
      const group = this.svg.querySelector<SVGGElement>(
        `g.node[data-index="${index}"]`,
      );
      group?.setAttribute("transform", `translate(${pos.x} ${pos.y})`);
    }
    for (const line of this.svg.querySelectorAll<SVGLineElement>("line.edge")) {
      const upper = this.positions.get(Number(line.getAttribute("data-upper")))!;
      const lower = this.positions.get(Number(line.getAttribute("data-lower")))!;
      line.setAttribute("x1", String(upper.x));
      line.setAttribute("y1", String(upper.y));
      line.setAttribute("x2", String(lower.x));
      line.setAttribute("y2", String(lower.y));
    }
  }

  position(index: number): { x: number; y: number } {
    return { ...this.positions.get(index)! };
  }

  private wireDrag(): void {
    if (!this.svg) return;
    let dragged: number | null = null;
    let last = { x: 0, y: 0 };
    this.svg.addEventListener("mousedown", (event) => {
      const target = event.target as Element;
      const group = target.closest("g.node") as SVGGElement | null;
      if (!group) return;
      dragged = Number(group.getAttribute("data-index"));
      last = { x: event.clientX, y: event.clientY };
    });
    this.svg.addEventListener("mousemove", (event) => {
      if (dragged === null) return;
      const pos = this.positions.get(dragged)!;
      pos.x += event.clientX - last.x;
      pos.y += event.clientY - last.y;
      last = { x: event.clientX, y: event.clientY };
      this.syncPositions();
    });
    this.svg.addEventListener("mouseup", () => {
      dragged = null;
    });
  }
}

function div(className: string, text?: string): HTMLElement {
  const node = document.createElement("div");
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgText(
  className: string,
  content: string,
  dx: number,
  dy: number,
): SVGTextElement {
  const text = document.createElementNS(SVG_NS, "text");
  text.setAttribute("class", className);
  text.setAttribute("x", String(dx));
  text.setAttribute("y", String(dy));
  text.textContent = content;
  return text;
}
