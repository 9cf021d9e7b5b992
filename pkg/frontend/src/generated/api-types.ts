// Generated by scripts/gen-types.mjs from ../src/xplain/schemas; do not edit.

export interface AbduceResult {
  hypotheses: string[][];
}

export interface ContrastExplanation {
  added: string[];
  distance: number;
  facts: string[];
  removed: string[];
}

export interface ContrastResult {
  explanations: ContrastExplanation[];
  found: boolean;
}

export interface ApiErrorBody {
  code: string;
  detail: string;
  message: string;
}

export interface GraphEdge {
  from: string;
  label: "+" | "-";
  to: string;
}

export interface Graph {
  edges: GraphEdge[];
  nodes: GraphNode[];
  root: string;
}

export interface GraphNode {
  atom?: string;
  id: string;
  kind: "atom" | "fact" | "no-rule";
  rule?: {
  index: number;
  text: string;
};
  sign?: "in" | "out";
  witness?: WitnessUse[];
}

export interface WitnessUse {
  aggregate: string;
  false_atoms: string[];
  polarity: "satisfaction" | "violation";
  rule: number;
  true_atoms: string[];
}

export interface ExplainResult {
  graphs: Graph[];
}

export interface FactsResult {
  overlay: {
  assumed: string[];
  retracted: string[];
};
}

export interface JustificationGraph {
  edges: GraphEdge[];
  nodes: GraphNode[];
  root: string;
}

export interface ModelsResult {
  complete: boolean;
  models: string[][];
}

export interface MusResult {
  minimal_correction_sets: string[][];
  minimal_inconsistent_subsets: string[][];
  soft: string[];
}

export interface SessionCreated {
  id: string;
}
