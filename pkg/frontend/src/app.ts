// Browser wiring: loads a program into a fresh session, lists its models,
// opens justification graphs on atom clicks, and hosts the what-if panel.

import { ApiClient } from "./client.js";
import { GraphView } from "./graph-view.js";
import { WhatIfPanel } from "./whatif.js";
import type { SpaceFamilyBody } from "./client.js";

const client = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

let sessionId = "";
let graphView: GraphView | null = null;
let panel: WhatIfPanel | null = null;

function renderGraph(): void {
  const host = el<HTMLDivElement>("graph");
  host.textContent = "";
  if (graphView === null) return;
  const banner = graphView.errorBanner;
  if (banner !== null) {
    const div = document.createElement("div");
    div.className = "error-banner";
    div.textContent = `invalid explanation payload: ${banner}`;
    host.appendChild(div);
    return;
  }
  const view = graphView.render();
  for (const layer of view.layers) {
    const row = document.createElement("div");
    row.className = "layer";
    for (const node of layer) {
      const box = document.createElement("button");
      box.className = `node ${node.kind} ${node.sign ?? ""}`;
      box.textContent = node.label + (node.expanded ? "" : " …");
      box.onclick = async () => {
        if (!node.expanded) await graphView?.expand(node.id);
        else graphView?.toggleDetails(node.id);
        renderGraph();
      };
      if (node.rule !== undefined) {
        const rule = document.createElement("div");
        rule.className = "annotation";
        rule.textContent = node.rule;
        box.appendChild(rule);
      }
      for (const witness of node.witnesses) {
        const line = document.createElement("div");
        line.className = "annotation";
        line.textContent = witness;
        box.appendChild(line);
      }
      row.appendChild(box);
    }
    host.appendChild(row);
  }
  const edges = document.createElement("pre");
  edges.textContent = view.edges.map((e) => `${e.from} -${e.label}-> ${e.to}`).join("\n");
  host.appendChild(edges);
}

function renderModels(models: string[][]): void {
  const host = el<HTMLUListElement>("models");
  host.textContent = "";
  for (const model of models) {
    const item = document.createElement("li");
    for (const atom of model) {
      const link = document.createElement("a");
      link.href = "#";
      link.textContent = atom;
      link.onclick = async (event) => {
        event.preventDefault();
        const result = await client.explain(sessionId, { atom, mode: "in" });
        graphView = new GraphView(result.graphs[0], (a, mode) =>
          client.explain(sessionId, { atom: a, mode }),
        );
        await graphView.expand(graphView.rootId);
        renderGraph();
      };
      item.appendChild(link);
      item.appendChild(document.createTextNode(" "));
    }
    host.appendChild(item);
  }
}

function renderPanel(): void {
  if (panel === null) return;
  const view = panel.viewModel();
  const host = el<HTMLDivElement>("whatif");
  host.textContent = "";
  for (const family of view.families) {
    const group = document.createElement("fieldset");
    const legend = document.createElement("legend");
    legend.textContent =
      family.exactly === null ? family.name : `${family.name} (exactly ${family.exactly})`;
    group.appendChild(legend);
    for (const entry of family.facts) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = entry.selected;
      box.onchange = () => {
        panel?.toggle(entry.fact);
        renderPanel();
      };
      label.appendChild(box);
      label.appendChild(document.createTextNode(entry.fact));
      group.appendChild(label);
    }
    host.appendChild(group);
  }
  const status = document.createElement("p");
  switch (view.contrast.kind) {
    case "idle":
      status.textContent = "pose a foil to see the minimal change";
      break;
    case "already-holds":
      status.textContent = "already holds (distance 0)";
      break;
    case "no-contrast":
      status.textContent = "no minimal change found";
      break;
    case "result":
      status.textContent =
        `remove {${view.contrast.removed.join(", ")}}; ` +
        `add {${view.contrast.added.join(", ")}}; distance ${view.contrast.distance}`;
      break;
  }
  host.appendChild(status);
  renderModels(view.models);
  el<HTMLButtonElement>("undo").disabled = !view.canUndo;
}

async function boot(): Promise<void> {
  el<HTMLButtonElement>("load").onclick = async () => {
    const program = el<HTMLTextAreaElement>("program").value;
    const created = await client.createSession(program);
    sessionId = created.id;
    const familiesRaw = el<HTMLTextAreaElement>("space").value.trim();
    const families: SpaceFamilyBody[] = familiesRaw ? JSON.parse(familiesRaw) : [];
    const models = await client.models(sessionId);
    const currentFacts = families
      .flatMap((f) => f.facts)
      .filter((fact) => models.models.some((m) => m.includes(fact)));
    panel = new WhatIfPanel(client, sessionId, families, currentFacts);
    await panel.refreshModels();
    renderPanel();
  };
  el<HTMLButtonElement>("contrast").onclick = async () => {
    const mode = el<HTMLSelectElement>("mode").value as
      | "not-an-answer-set"
      | "foil-becomes-brave"
      | "fact-no-longer-brave";
    await panel?.submitFoil(mode, el<HTMLInputElement>("target").value);
    renderPanel();
  };
  el<HTMLButtonElement>("apply").onclick = async () => {
    await panel?.applyContrast();
    renderPanel();
  };
  el<HTMLButtonElement>("undo").onclick = async () => {
    await panel?.undo();
    renderPanel();
  };
}

boot();
