/** Typed client for the workbench HTTP API. The UI never computes metrics:
 * everything rendered comes straight from these payloads. */

export interface StatBlock {
  min: number;
  max: number;
  avg: string; // exact average rendered to two decimals by the service
}

export interface OverviewRow {
  execId: string;
  file: string;
  sims: number;
  efficiency: number;
  availability: number;
  cases: number;
  time: StatBlock | null;
  cost: StatBlock | null;
}

export interface ViolationSite {
  method: string;
  line: number;
  count: number;
}

export interface SimulationResult {
  execId: string;
  file: string;
  sims: number;
  efficiency: number;
  availability: number;
  cases: number;
  time: StatBlock;
  cost: StatBlock;
  violations: { total: number; perSite: ViolationSite[] };
  peaks: Record<string, number>;
}

export interface PeakResult {
  execId: string;
  file: string;
  perCategory: Record<string, { observed: number; exact: number | null; static: number }>;
  exploredSchedules: number;
  truncated: boolean;
}

export interface TimeResult {
  execId: string;
  file: string;
  sequential: string;
  criticalPath: string;
  evaluations: Array<{
    EFFICIENCY: number;
    CONC_CASES: number;
    sequential: number;
    criticalPath: number;
  }>;
}

export type RunResult = SimulationResult | PeakResult | TimeResult;

export interface DiagnosticRecord {
  line: number;
  column: number;
  severity: string;
  message: string;
}

export interface OutlineEntry {
  kind: string;
  name: string;
  line: number;
  column: number;
}

export interface ProfileDraft {
  efficiency: number;
  availability: number;
  cases: number;
  sims: number;
  seed: number;
}

export interface Preset {
  name: string;
  description: string;
  tool: string;
  profile: ProfileDraft;
}

export type Tool = "simulate" | "peak" | "time";

export class DiagnosticsError extends Error {
  constructor(public diagnostics: DiagnosticRecord[]) {
    super(diagnostics[0]?.message ?? "model has errors");
  }
}

export class ProfileFieldError extends Error {
  constructor(public fields: string[]) {
    super(`invalid profile field(s): ${fields.join(", ")}`);
  }
}

export class ServiceError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function parseJson(response: Response): Promise<any> {
  try {
    return await response.json();
  } catch {
    return {};
  }
}

export class WorkbenchClient {
  constructor(private base: string = "") {}

  private async get(path: string): Promise<any> {
    const response = await fetch(this.base + path);
    const body = await parseJson(response);
    if (!response.ok) {
      throw new ServiceError(response.status, body.error ?? response.statusText);
    }
    return body;
  }

  listExamples(): Promise<string[]> {
    return this.get("/api/examples");
  }

  async getExample(name: string): Promise<string> {
    const body = await this.get(`/api/examples/${encodeURIComponent(name)}`);
    return body.source;
  }

  listPresets(): Promise<Preset[]> {
    return this.get("/api/presets");
  }

  listRuns(): Promise<OverviewRow[]> {
    return this.get("/api/runs");
  }

  getRun(execId: string): Promise<RunResult> {
    return this.get(`/api/runs/${encodeURIComponent(execId)}`);
  }

  async outline(source: string): Promise<OutlineEntry[]> {
    const response = await fetch(`${this.base}/api/outline?source=${encodeURIComponent(source)}`);
    const body = await parseJson(response);
    if (response.status === 400) {
      throw new DiagnosticsError(body.diagnostics ?? []);
    }
    if (!response.ok) {
      throw new ServiceError(response.status, body.error ?? response.statusText);
    }
    return body.entries;
  }

  async run(source: string, fileName: string, tool: Tool, profile: ProfileDraft): Promise<RunResult> {
    const response = await fetch(`${this.base}/api/runs`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ source, fileName, tool, profile }),
    });
    const body = await parseJson(response);
    if (response.status === 400) {
      throw new DiagnosticsError(body.diagnostics ?? []);
    }
    if (response.status === 422) {
      const fields = (body.detail ?? [])
        .map((d: any) => (Array.isArray(d.loc) ? String(d.loc[d.loc.length - 1]) : ""))
        .filter((f: string) => f.length > 0);
      throw new ProfileFieldError(fields.length ? fields : ["profile"]);
    }
    if (!response.ok) {
      throw new ServiceError(response.status, body.error ?? response.statusText);
    }
    return body;
  }
}

export function isSimulation(result: RunResult): result is SimulationResult {
  return (result as SimulationResult).violations !== undefined;
}

export function isPeak(result: RunResult): result is PeakResult {
  return (result as PeakResult).perCategory !== undefined;
}
