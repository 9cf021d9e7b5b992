// What-if panel: toggle candidate facts inside their families, pose a
// contrastive query, apply the answer to the session overlay, and walk it
// all back with undo. Added/removed sets, distances and model lists are
// displayed exactly as the service reported them.

import type { ApiClient, ContrastRequest, SpaceFamilyBody } from "./client.js";
import type { ContrastResult, ModelsResult } from "./generated/api-types.js";

export type ContrastState =
  | { kind: "idle" }
  | { kind: "already-holds" }
  | { kind: "no-contrast" }
  | { kind: "result"; added: string[]; removed: string[]; distance: number };

export interface WhatIfViewModel {
  families: { name: string; exactly: number | null; facts: { fact: string; selected: boolean }[] }[];
  contrast: ContrastState;
  models: string[][];
  canUndo: boolean;
}

interface OverlayChange {
  assumed: string[];
  retracted: string[];
}

export class WhatIfPanel {
  private selection: Set<string>;
  private contrastState: ContrastState = { kind: "idle" };
  private models: string[][] = [];
  private undoStack: OverlayChange[] = [];

  constructor(
    private readonly client: ApiClient,
    private readonly sessionId: string,
    private readonly families: SpaceFamilyBody[],
    currentFacts: string[],
  ) {
    this.selection = new Set(currentFacts);
  }

  async refreshModels(): Promise<void> {
    const result: ModelsResult = await this.client.models(this.sessionId);
    this.models = result.models;
  }

  /** Toggle a candidate fact; exactly-one families behave like radios and
   * other exactly-n families refuse to grow beyond their bound. */
  toggle(fact: string): boolean {
    const family = this.families.find((f) => f.facts.includes(fact));
    if (family === undefined) return false;
    if (this.selection.has(fact)) {
      this.selection.delete(fact);
      return true;
    }
    const chosen = family.facts.filter((f) => this.selection.has(f));
    if (family.exactly === 1) {
      for (const f of chosen) this.selection.delete(f);
    } else if (family.exactly !== null && chosen.length >= family.exactly) {
      return false;
    }
    this.selection.add(fact);
    return true;
  }

  async submitFoil(mode: ContrastRequest["mode"], target: string): Promise<ContrastState> {
    const result: ContrastResult = await this.client.contrast(this.sessionId, {
      mode,
      target,
      space: { families: this.families },
    });
    if (!result.found) {
      this.contrastState = { kind: "no-contrast" };
    } else {
      const best = result.explanations[0];
      this.contrastState =
        best.distance === 0
          ? { kind: "already-holds" }
          : {
              kind: "result",
              added: best.added,
              removed: best.removed,
              distance: best.distance,
            };
    }
    return this.contrastState;
  }

  /** Apply the current contrast answer to the session overlay and refresh
   * the model list; the inverse change lands on the undo stack. */
  async applyContrast(): Promise<void> {
    if (this.contrastState.kind !== "result") return;
    const { added, removed } = this.contrastState;
    await this.client.facts(this.sessionId, { assume: added, retract: removed });
    this.undoStack.push({ assumed: added, retracted: removed });
    for (const fact of added) this.selection.add(fact);
    for (const fact of removed) this.selection.delete(fact);
    await this.refreshModels();
  }

  /** One UI undo = one inverse overlay change, so N applies followed by
   * N undos restore the initial view model. */
  async undo(): Promise<boolean> {
    const change = this.undoStack.pop();
    if (change === undefined) return false;
    await this.client.facts(this.sessionId, {
      assume: change.retracted,
      retract: change.assumed,
    });
    for (const fact of change.retracted) this.selection.add(fact);
    for (const fact of change.assumed) this.selection.delete(fact);
    await this.refreshModels();
    return true;
  }

  viewModel(): WhatIfViewModel {
    return {
      families: this.families.map((family) => ({
        name: family.name,
        exactly: family.exactly,
        facts: family.facts.map((fact) => ({ fact, selected: this.selection.has(fact) })),
      })),
      contrast: this.contrastState,
      models: this.models,
      canUndo: this.undoStack.length > 0,
    };
  }
}
