/** Wires the panels together: File Manager, Code Editor, Outline, Settings,
 * Tool Menu and the Console area, all driven by the workbench API. */

import {
  DiagnosticsError,
  Preset,
  ProfileFieldError,
  RunResult,
  ServiceError,
  Tool,
  WorkbenchClient,
  isSimulation,
} from "./api.js";
import { renderConsole } from "./console.js";
import { ModelEditor } from "./editor.js";
import { renderOverview } from "./overview.js";
import { ConsoleTabs, UiState, initialState, invalidProfileFields } from "./state.js";

const PROFILE_FIELDS = ["efficiency", "availability", "cases", "sims", "seed"] as const;

export class App {
  readonly state: UiState = initialState();
  readonly tabs = new ConsoleTabs();
  readonly editor: ModelEditor;
  private consoleBodies = new Map<string, HTMLElement>();
  private results = new Map<string, RunResult>();

  constructor(private root: HTMLElement, private client: WorkbenchClient) {
    this.editor = new ModelEditor(this.panel("editor"));
    this.renderTabs();
  }

  private panel(name: string): HTMLElement {
    let el = this.root.querySelector<HTMLElement>(`[data-panel="${name}"]`);
    if (!el) {
      el = document.createElement("div");
      el.dataset.panel = name;
      this.root.appendChild(el);
    }
    return el;
  }

  async start(): Promise<void> {
    await Promise.all([this.loadFiles(), this.loadPresets()]);
    this.renderSettings();
    this.renderToolMenu();
    await this.refreshOverview();
  }

  // ------------------------------------------------------------ file manager

  private async loadFiles(): Promise<void> {
    const names = await this.client.listExamples();
    const list = this.panel("files");
    list.replaceChildren();
    const scratch = document.createElement("button");
    scratch.textContent = "scratch.rpl";
    scratch.dataset.file = "scratch.rpl";
    scratch.addEventListener("click", () => this.openFile("scratch.rpl", ""));
    list.appendChild(scratch);
    for (const name of names) {
      const button = document.createElement("button");
      button.textContent = name;
      button.dataset.file = name;
      button.addEventListener("click", async () => {
        const source = this.state.openFiles.get(name) ?? (await this.client.getExample(name));
        this.openFile(name, source);
      });
      list.appendChild(button);
    }
  }

  openFile(name: string, source: string): void {
    if (this.state.activeFile) {
      this.state.openFiles.set(this.state.activeFile, this.editor.value);
    }
    if (!this.state.openFiles.has(name)) {
      this.state.openFiles.set(name, source);
    }
    this.state.activeFile = name;
    this.editor.setText(this.state.openFiles.get(name) ?? "");
    void this.refreshOutline();
  }

  // ------------------------------------------------------------ outline

  private async refreshOutline(): Promise<void> {
    const outlinePanel = this.panel("outline");
    outlinePanel.replaceChildren();
    try {
      const entries = await this.client.outline(this.editor.value);
      const list = document.createElement("ul");
      for (const entry of entries) {
        const item = document.createElement("li");
        item.textContent = `${entry.kind} ${entry.name}`;
        item.dataset.line = String(entry.line);
        list.appendChild(item);
      }
      outlinePanel.appendChild(list);
    } catch (error) {
      if (error instanceof DiagnosticsError) {
        this.editor.setDiagnostics(error.diagnostics);
        return;
      }
      // outline is best-effort; leave the panel empty when the service is away
    }
  }

  // ------------------------------------------------------------ settings

  private presets: Preset[] = [];

  private async loadPresets(): Promise<void> {
    try {
      this.presets = await this.client.listPresets();
    } catch {
      this.presets = [];
    }
  }

  private renderToolMenu(): void {
    const menu = this.panel("tool-menu");
    menu.replaceChildren();
    const select = document.createElement("select");
    select.id = "tool-select";
    for (const tool of ["simulate", "peak", "time"] as Tool[]) {
      const option = document.createElement("option");
      option.value = tool;
      option.textContent = tool;
      select.appendChild(option);
    }
    select.value = this.state.tool;
    select.addEventListener("change", () => {
      this.state.tool = select.value as Tool;
    });
    menu.appendChild(select);
    const run = document.createElement("button");
    run.id = "run-button";
    run.textContent = "Run";
    run.addEventListener("click", () => void this.runSelected());
    menu.appendChild(run);
  }

  private renderSettings(): void {
    const panel = this.panel("settings");
    panel.replaceChildren();
    const presetSelect = document.createElement("select");
    presetSelect.id = "preset-select";
    const custom = document.createElement("option");
    custom.value = "";
    custom.textContent = "custom profile";
    presetSelect.appendChild(custom);
    for (const preset of this.presets) {
      const option = document.createElement("option");
      option.value = preset.name;
      option.textContent = `${preset.name} (${preset.tool})`;
      presetSelect.appendChild(option);
    }
    presetSelect.addEventListener("change", () => {
      const preset = this.presets.find((p) => p.name === presetSelect.value);
      if (preset) {
        this.state.tool = preset.tool as Tool;
        this.state.profile = { ...preset.profile };
        const toolSelect = this.root.querySelector<HTMLSelectElement>("#tool-select");
        if (toolSelect) {
          toolSelect.value = preset.tool;
        }
        this.renderSettings();
      }
    });
    panel.appendChild(presetSelect);
    for (const field of PROFILE_FIELDS) {
      const label = document.createElement("label");
      label.textContent = field;
      const input = document.createElement("input");
      input.type = "number";
      input.name = field;
      input.value = String(this.state.profile[field]);
      input.addEventListener("input", () => {
        this.state.profile[field] = Number(input.value);
        input.classList.remove("invalid");
      });
      label.appendChild(input);
      panel.appendChild(label);
    }
  }

  markInvalidFields(fields: string[]): void {
    for (const field of fields) {
      const input = this.panel("settings").querySelector<HTMLInputElement>(`input[name="${field}"]`);
      input?.classList.add("invalid");
    }
  }

  // ------------------------------------------------------------ consoles

  private renderTabs(): void {
    const bar = this.panel("console-tabs");
    bar.replaceChildren();
    for (const tab of this.tabs.tabs) {
      const button = document.createElement("button");
      button.textContent = tab.title;
      button.dataset.tab = tab.id;
      if (tab.id === this.tabs.active) {
        button.classList.add("active");
      }
      button.addEventListener("click", () => {
        this.tabs.activate(tab.id);
        this.renderTabs();
      });
      bar.appendChild(button);
    }
    const body = this.panel("console-body");
    body.replaceChildren();
    const active = this.tabs.active;
    if (active === "default") {
      const hint = document.createElement("p");
      hint.textContent = "Pick a model, choose a tool and press Run.";
      body.appendChild(hint);
    } else if (active === "overview") {
      const holder = document.createElement("div");
      holder.id = "overview-holder";
      body.appendChild(holder);
      void this.client.listRuns().then((rows) => renderOverview(holder, rows));
    } else {
      const result = this.results.get(active);
      if (result) {
        renderConsole(body, result);
      }
    }
    this.consoleBodies.set(active, body);
  }

  async refreshOverview(): Promise<void> {
    if (this.tabs.active === "overview") {
      this.renderTabs();
    }
  }

  /** The Run button: pre-check the model, post the run, open its console
   * tab, refresh the overview, and mark violation lines in the editor. */
  async runSelected(): Promise<RunResult | null> {
    if (this.state.running) {
      return null;
    }
    const fields = invalidProfileFields(this.state.profile);
    if (fields.length > 0) {
      this.markInvalidFields(fields);
      return null;
    }
    const fileName = this.state.activeFile ?? "scratch.rpl";
    const source = this.editor.value;
    this.state.running = true;
    const runButton = this.root.querySelector<HTMLButtonElement>("#run-button");
    if (runButton) {
      runButton.disabled = true;
    }
    try {
      this.editor.clearAnnotations();
      try {
        await this.client.outline(source); // dry-run parse check
      } catch (error) {
        if (error instanceof DiagnosticsError) {
          this.editor.setDiagnostics(error.diagnostics);
          return null;
        }
        throw error;
      }
      const result = await this.client.run(source, fileName, this.state.tool, this.state.profile);
      this.results.set(result.execId, result);
      this.tabs.open(result.execId);
      if (isSimulation(result)) {
        const byLine = new Map<number, number>();
        for (const site of result.violations.perSite) {
          byLine.set(site.line, (byLine.get(site.line) ?? 0) + site.count);
        }
        this.editor.setViolationMarkers(
          [...byLine.entries()].map(([line, count]) => ({ line, count })),
        );
      }
      this.renderTabs();
      return result;
    } catch (error) {
      if (error instanceof DiagnosticsError) {
        this.editor.setDiagnostics(error.diagnostics);
      } else if (error instanceof ProfileFieldError) {
        this.markInvalidFields(error.fields);
      } else if (error instanceof ServiceError) {
        const body = this.panel("console-body");
        const note = document.createElement("p");
        note.className = "service-error";
        note.textContent = `run failed (${error.status}): ${error.message}`;
        body.appendChild(note);
      } else {
        throw error;
      }
      return null;
    } finally {
      this.state.running = false;
      if (runButton) {
        runButton.disabled = false;
      }
    }
  }
}
