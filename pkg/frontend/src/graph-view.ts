// Interactive justification-graph view model. Holds schema-checked graph
// data plus per-node expansion and annotation state; the layered layout is
// deterministic (BFS depth from the root, ids sorted within a layer) so
// renders are stable for visual regression tests. No domain values are
// computed here: everything shown comes from service payloads.

import type { Graph, GraphEdge, GraphNode } from "./generated/api-types.js";

export interface SubExplanationFetcher {
  (atom: string, mode: "in" | "out"): Promise<{ graphs: Graph[] }>;
}

export type GraphViewState =
  | { kind: "ready" }
  | { kind: "error"; message: string };

const NODE_KINDS = new Set(["atom", "fact", "no-rule"]);
const EDGE_LABELS = new Set(["+", "-"]);

export function checkGraphPayload(payload: unknown): string | null {
  if (typeof payload !== "object" || payload === null) return "payload is not an object";
  const graph = payload as Partial<Graph>;
  if (typeof graph.root !== "string") return "missing root";
  if (!Array.isArray(graph.nodes) || !Array.isArray(graph.edges)) return "missing nodes or edges";
  const ids = new Set<string>();
  for (const node of graph.nodes) {
    if (typeof node !== "object" || node === null) return "node is not an object";
    if (typeof node.id !== "string") return "node without id";
    if (!NODE_KINDS.has(node.kind as string)) return `unknown node kind ${String(node.kind)}`;
    if (node.kind === "atom" && (typeof node.atom !== "string" || (node.sign !== "in" && node.sign !== "out"))) {
      return `atom node ${node.id} lacks atom or sign`;
    }
    if (ids.has(node.id)) return `duplicate node id ${node.id}`;
    ids.add(node.id);
  }
  if (!ids.has(graph.root)) return "root is not a node";
  for (const edge of graph.edges) {
    if (typeof edge !== "object" || edge === null) return "edge is not an object";
    if (!ids.has(edge.from as string) || !ids.has(edge.to as string)) {
      return "edge endpoint is not a node";
    }
    if (!EDGE_LABELS.has(edge.label as string)) return `unknown edge label ${String(edge.label)}`;
  }
  return null;
}

export interface RenderedNode {
  id: string;
  label: string;
  kind: GraphNode["kind"];
  sign?: "in" | "out";
  expanded: boolean;
  detailsShown: boolean;
  rule?: string;
  witnesses: string[];
}

export interface RenderedView {
  state: GraphViewState;
  layers: RenderedNode[][];
  edges: GraphEdge[];
}

export class GraphView {
  private nodes = new Map<string, GraphNode>();
  private edges = new Map<string, GraphEdge>();
  private root = "";
  private expanded = new Set<string>();
  private detailsShown = new Set<string>();
  private state: GraphViewState = { kind: "ready" };

  constructor(
    payload: unknown,
    private readonly fetchSubExplanation: SubExplanationFetcher,
  ) {
    const problem = checkGraphPayload(payload);
    if (problem !== null) {
      this.state = { kind: "error", message: problem };
      return;
    }
    const graph = payload as Graph;
    this.root = graph.root;
    this.merge(graph);
  }

  get rootId(): string {
    return this.root;
  }

  get errorBanner(): string | null {
    return this.state.kind === "error" ? this.state.message : null;
  }

  private merge(graph: Graph): void {
    for (const node of graph.nodes) this.nodes.set(node.id, node);
    for (const edge of graph.edges) this.edges.set(`${edge.from}>${edge.to}>${edge.label}`, edge);
  }

  private outgoing(id: string): GraphEdge[] {
    return [...this.edges.values()]
      .filter((e) => e.from === id)
      .sort((a, b) => (a.to < b.to ? -1 : a.to > b.to ? 1 : 0));
  }

  isExpanded(id: string): boolean {
    return this.expanded.has(id);
  }

  /** Expand a node: reveal its children, fetching the sub-justification
   * from the service when its edges are not in the view yet. */
  async expand(id: string): Promise<void> {
    if (this.state.kind === "error" || this.expanded.has(id)) return;
    const node = this.nodes.get(id);
    if (node === undefined || node.kind !== "atom") return;
    if (this.outgoing(id).length === 0) {
      const result = await this.fetchSubExplanation(node.atom as string, node.sign as "in" | "out");
      const sub = result.graphs[0];
      const problem = checkGraphPayload(sub);
      if (problem !== null) {
        this.state = { kind: "error", message: problem };
        return;
      }
      this.merge(sub);
    }
    this.expanded.add(id);
  }

  collapse(id: string): void {
    if (id !== this.root) this.expanded.delete(id);
  }

  toggleDetails(id: string): void {
    if (this.detailsShown.has(id)) this.detailsShown.delete(id);
    else this.detailsShown.add(id);
  }

  /** Nodes currently visible: everything reachable from the root through
   * expanded nodes. Expansion state never contradicts edge data because
   * only nodes whose edges are present can be expanded. */
  private visible(): Set<string> {
    const seen = new Set<string>([this.root]);
    const frontier = [this.root];
    while (frontier.length > 0) {
      const current = frontier.pop() as string;
      if (!this.expanded.has(current)) continue;
      for (const edge of this.outgoing(current)) {
        if (!seen.has(edge.to)) {
          seen.add(edge.to);
          frontier.push(edge.to);
        }
      }
    }
    return seen;
  }

  render(): RenderedView {
    if (this.state.kind === "error") {
      return { state: this.state, layers: [], edges: [] };
    }
    const visible = this.visible();
    const depth = new Map<string, number>([[this.root, 0]]);
    const queue = [this.root];
    while (queue.length > 0) {
      const current = queue.shift() as string;
      for (const edge of this.outgoing(current)) {
        if (visible.has(edge.to) && !depth.has(edge.to)) {
          depth.set(edge.to, (depth.get(current) as number) + 1);
          queue.push(edge.to);
        }
      }
    }
    const layers: RenderedNode[][] = [];
    for (const [id, d] of [...depth.entries()].sort()) {
      const node = this.nodes.get(id) as GraphNode;
      while (layers.length <= d) layers.push([]);
      layers[d].push({
        id,
        kind: node.kind,
        sign: node.sign,
        label: node.kind === "atom" ? `${node.atom} [${node.sign}]` : node.kind,
        expanded: this.expanded.has(id),
        detailsShown: this.detailsShown.has(id),
        rule: this.detailsShown.has(id) ? node.rule?.text : undefined,
        witnesses: this.detailsShown.has(id)
          ? (node.witness ?? []).map(
              (w) =>
                `${w.aggregate} [${w.polarity}] true(${w.true_atoms.join(",") || "-"}) false(${w.false_atoms.join(",") || "-"})`,
            )
          : [],
      });
    }
    const edges = [...this.edges.values()]
      .filter((e) => visible.has(e.from) && visible.has(e.to) && this.expanded.has(e.from))
      .sort((a, b) => `${a.from}>${a.to}`.localeCompare(`${b.from}>${b.to}`));
    return { state: this.state, layers, edges };
  }
}
