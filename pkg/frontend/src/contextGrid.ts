import { ContextPayload } from "./types";

/** Render a formal context as a cross table. */
export function renderContextGrid(container: HTMLElement, context: ContextPayload): void {
  container.textContent = "";
  const table = document.createElement("table");
  table.className = "context-grid";

  const head = document.createElement("thead");
  const headRow = document.createElement("tr");
  headRow.appendChild(document.createElement("th"));
  for (const attribute of context.attributes) {
    const th = document.createElement("th");
    th.textContent = attribute;
    headRow.appendChild(th);
  }
  head.appendChild(headRow);
  table.appendChild(head);

  const body = document.createElement("tbody");
  context.objects.forEach((objectLabel, i) => {
    const row = document.createElement("tr");
    const th = document.createElement("th");
    th.textContent = objectLabel;
    row.appendChild(th);
    const incident = new Set(context.incidence[i]);
    context.attributes.forEach((_, j) => {
      const cell = document.createElement("td");
      cell.textContent = incident.has(j) ? "×" : "";
      row.appendChild(cell);
    });
    body.appendChild(row);
  });
  table.appendChild(body);

  container.appendChild(table);
}
