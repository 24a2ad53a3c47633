/** Client-side state: open files, the profile draft, and the console tab
 * set (one tab per execution id, plus Default and Overview). */

import { ProfileDraft, Tool } from "./api.js";

export const MAX_SEED = 2 ** 53 - 1; // practical JS integer ceiling

export function defaultProfile(): ProfileDraft {
  return { efficiency: 100, availability: 100, cases: 1, sims: 10, seed: 1 };
}

/** Field names that fail validation; empty means the draft can be posted. */
export function invalidProfileFields(draft: ProfileDraft): string[] {
  const bad: string[] = [];
  const integral = (v: number) => Number.isInteger(v);
  if (!integral(draft.efficiency) || draft.efficiency < 1) {
    bad.push("efficiency");
  }
  if (!integral(draft.availability) || draft.availability < 0 || draft.availability > 100) {
    bad.push("availability");
  }
  if (!integral(draft.cases) || draft.cases < 1) {
    bad.push("cases");
  }
  if (!integral(draft.sims) || draft.sims < 1) {
    bad.push("sims");
  }
  if (!integral(draft.seed) || draft.seed < 0 || draft.seed > MAX_SEED) {
    bad.push("seed");
  }
  return bad;
}

export interface ConsoleTab {
  id: string; // "default", "overview", or an execution id
  title: string;
}

export class ConsoleTabs {
  readonly tabs: ConsoleTab[] = [
    { id: "default", title: "Default Console" },
    { id: "overview", title: "Console Overview" },
  ];
  active = "default";

  /** Open (or re-focus) the console for one execution; never duplicates. */
  open(execId: string): ConsoleTab {
    const existing = this.tabs.find((t) => t.id === execId);
    if (existing) {
      this.active = existing.id;
      return existing;
    }
    const tab = { id: execId, title: `Console Simul-${execId}` };
    this.tabs.push(tab);
    this.active = tab.id;
    return tab;
  }

  activate(id: string): void {
    if (this.tabs.some((t) => t.id === id)) {
      this.active = id;
    }
  }
}

export interface UiState {
  openFiles: Map<string, string>;
  activeFile: string | null;
  tool: Tool;
  profile: ProfileDraft;
  running: boolean;
}

export function initialState(): UiState {
  return {
    openFiles: new Map(),
    activeFile: null,
    tool: "simulate",
    profile: defaultProfile(),
    running: false,
  };
}
