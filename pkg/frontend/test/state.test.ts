import { describe, expect, it } from "vitest";

import { ConsoleTabs, defaultProfile, invalidProfileFields } from "../src/state.js";

describe("profile validation", () => {
  it("accepts the default draft", () => {
    expect(invalidProfileFields(defaultProfile())).toEqual([]);
  });

  it("flags each broken field by name", () => {
    expect(invalidProfileFields({ ...defaultProfile(), efficiency: 0 })).toEqual(["efficiency"]);
    expect(invalidProfileFields({ ...defaultProfile(), availability: 101 })).toEqual(["availability"]);
    expect(invalidProfileFields({ ...defaultProfile(), cases: 0 })).toEqual(["cases"]);
    expect(invalidProfileFields({ ...defaultProfile(), sims: 0 })).toEqual(["sims"]);
    expect(invalidProfileFields({ ...defaultProfile(), seed: -1 })).toEqual(["seed"]);
    expect(invalidProfileFields({ ...defaultProfile(), cases: 1.5 })).toEqual(["cases"]);
  });
});

describe("console tabs", () => {
  it("starts with the default and overview consoles", () => {
    const tabs = new ConsoleTabs();
    expect(tabs.tabs.map((t) => t.id)).toEqual(["default", "overview"]);
  });

  it("opens one console per execution id, never duplicated", () => {
    const tabs = new ConsoleTabs();
    const first = tabs.open("00af1171");
    expect(first.title).toBe("Console Simul-00af1171");
    expect(tabs.active).toBe("00af1171");
    tabs.open("00af1171");
    expect(tabs.tabs.filter((t) => t.id === "00af1171")).toHaveLength(1);
    tabs.open("beef0001");
    expect(tabs.tabs.map((t) => t.id)).toEqual(["default", "overview", "00af1171", "beef0001"]);
  });

  it("only activates known tabs", () => {
    const tabs = new ConsoleTabs();
    tabs.activate("nope");
    expect(tabs.active).toBe("default");
    tabs.activate("overview");
    expect(tabs.active).toBe("overview");
  });
});
