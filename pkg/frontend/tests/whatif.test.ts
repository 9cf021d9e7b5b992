import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/client.js";
import { WhatIfPanel } from "../src/whatif.js";
import { FakeService } from "./helpers.js";

const FAMILIES = [
  { name: "legs", exactly: 1, facts: ["legs(6)"] },
  { name: "eyes", exactly: 1, facts: ["eyes(2)", "eyes(5)"] },
  { name: "wings", exactly: 1, facts: ["wings(2)"] },
];

const BASELINE = ["legs(6)", "eyes(2)", "wings(2)"];

function bugService(): FakeService {
  return new FakeService([
    {
      method: "POST",
      path: /contrast$/,
      reply: (body) => {
        const target = (body as { target: string }).target;
        if (target === "class(fly)") {
          return {
            found: true,
            explanations: [
              {
                facts: ["eyes(5)", "legs(6)", "wings(2)"],
                added: ["eyes(5)"],
                removed: ["eyes(2)"],
                distance: 2,
              },
            ],
          };
        }
        if (target === "class(beetle)") {
          return {
            found: true,
            explanations: [
              { facts: BASELINE.slice().sort(), added: [], removed: [], distance: 0 },
            ],
          };
        }
        return { found: false, explanations: [] };
      },
    },
    {
      method: "POST",
      path: /facts$/,
      reply: () => ({ overlay: { assumed: ["eyes(5)"], retracted: ["eyes(2)"] } }),
    },
    {
      method: "GET",
      path: /models$/,
      reply: () => ({ models: [["legs(6)", "wings(2)", "class(fly)", "eyes(5)"]], complete: true }),
    },
  ]);
}

describe("what-if panel", () => {
  it("displays the added and removed sets from the foil answer", async () => {
    const service = bugService();
    const panel = new WhatIfPanel(
      new ApiClient("", service.fetchImpl), "s1", FAMILIES, BASELINE,
    );
    const state = await panel.submitFoil("foil-becomes-brave", "class(fly)");
    expect(state).toEqual({
      kind: "result",
      added: ["eyes(5)"],
      removed: ["eyes(2)"],
      distance: 2,
    });
    const view = panel.viewModel();
    expect(view.contrast).toEqual(state);
  });

  it("reports distance 0 as already holding", async () => {
    const panel = new WhatIfPanel(
      new ApiClient("", bugService().fetchImpl), "s1", FAMILIES, BASELINE,
    );
    expect(await panel.submitFoil("foil-becomes-brave", "class(beetle)")).toEqual({
      kind: "already-holds",
    });
  });

  it("reports the explicit no-contrast state", async () => {
    const panel = new WhatIfPanel(
      new ApiClient("", bugService().fetchImpl), "s1", FAMILIES, BASELINE,
    );
    expect(await panel.submitFoil("foil-becomes-brave", "class(spider)")).toEqual({
      kind: "no-contrast",
    });
  });

  it("applies a contrast through the facts endpoint and refreshes models", async () => {
    const service = bugService();
    const panel = new WhatIfPanel(
      new ApiClient("", service.fetchImpl), "s1", FAMILIES, BASELINE,
    );
    await panel.submitFoil("foil-becomes-brave", "class(fly)");
    await panel.applyContrast();
    const view = panel.viewModel();
    expect(view.models).toEqual([["legs(6)", "wings(2)", "class(fly)", "eyes(5)"]]);
    const eyes = view.families.find((f) => f.name === "eyes");
    expect(eyes?.facts).toEqual([
      { fact: "eyes(2)", selected: false },
      { fact: "eyes(5)", selected: true },
    ]);
    const factsCalls = service.requests.filter((r) => r.path.endsWith("/facts"));
    expect(factsCalls).toHaveLength(1);
    expect(factsCalls[0].body).toEqual({ assume: ["eyes(5)"], retract: ["eyes(2)"] });
  });

  it("keeps exactly-one families radio-like and bounds other families", () => {
    const panel = new WhatIfPanel(
      new ApiClient("", bugService().fetchImpl),
      "s1",
      [
        { name: "eyes", exactly: 1, facts: ["eyes(2)", "eyes(5)"] },
        { name: "extras", exactly: 2, facts: ["x1", "x2", "x3"] },
        { name: "free", exactly: null, facts: ["f1"] },
      ],
      ["eyes(2)", "x1", "x2"],
    );
    expect(panel.toggle("eyes(5)")).toBe(true);
    let eyes = panel.viewModel().families[0];
    expect(eyes.facts).toEqual([
      { fact: "eyes(2)", selected: false },
      { fact: "eyes(5)", selected: true },
    ]);
    expect(panel.toggle("x3")).toBe(false); // exactly-2 family is full
    expect(panel.toggle("x1")).toBe(true); // deselect works
    expect(panel.toggle("x3")).toBe(true); // now there is room
    expect(panel.toggle("unknown(1)")).toBe(false);
    expect(panel.toggle("f1")).toBe(true);
  });
});
