/** Per-execution console tabs: profile echo, stat tables, violation
 * breakdown for simulations; key-value tables for the analyses. */

import { PeakResult, RunResult, SimulationResult, TimeResult, isPeak, isSimulation } from "./api.js";

function keyValueTable(entries: Array<[string, string]>): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "kv-table";
  for (const [key, value] of entries) {
    const row = table.insertRow();
    const th = document.createElement("th");
    th.textContent = key;
    row.appendChild(th);
    row.insertCell().textContent = value;
  }
  return table;
}

function heading(text: string): HTMLElement {
  const el = document.createElement("h3");
  el.textContent = text;
  return el;
}

function renderSimulation(root: HTMLElement, result: SimulationResult): void {
  root.appendChild(keyValueTable([
    ["Execution", result.execId],
    ["File", result.file],
    ["Simulations", String(result.sims)],
    ["Efficiency", String(result.efficiency)],
    ["Availability", String(result.availability)],
    ["Concurrent cases", String(result.cases)],
  ]));
  root.appendChild(heading("Execution time"));
  root.appendChild(keyValueTable([
    ["Minimum", String(result.time.min)],
    ["Maximum", String(result.time.max)],
    ["Average", result.time.avg],
  ]));
  root.appendChild(heading("Financial cost"));
  root.appendChild(keyValueTable([
    ["Minimum", String(result.cost.min)],
    ["Maximum", String(result.cost.max)],
    ["Average", result.cost.avg],
  ]));
  root.appendChild(heading(`Deadline violations: ${result.violations.total}`));
  const list = document.createElement("ul");
  list.className = "violation-list";
  for (const site of result.violations.perSite) {
    const item = document.createElement("li");
    item.textContent = `${site.method} (line ${site.line}): ${site.count}`;
    item.dataset.line = String(site.line);
    list.appendChild(item);
  }
  root.appendChild(list);
  root.appendChild(heading("Peak allocation"));
  root.appendChild(keyValueTable(
    Object.entries(result.peaks).map(([cat, n]) => [cat, String(n)]),
  ));
}

function renderPeak(root: HTMLElement, result: PeakResult): void {
  root.appendChild(keyValueTable([
    ["Execution", result.execId],
    ["File", result.file],
    ["Explored schedules", String(result.exploredSchedules)],
    ["Truncated", result.truncated ? "yes (exact values are lower bounds)" : "no"],
  ]));
  root.appendChild(heading("Peak per category"));
  const table = document.createElement("table");
  table.className = "peak-table";
  const head = table.createTHead().insertRow();
  for (const column of ["Category", "Observed", "Exact", "Static bound"]) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const [cat, entry] of Object.entries(result.perCategory)) {
    const row = body.insertRow();
    row.insertCell().textContent = cat;
    row.insertCell().textContent = String(entry.observed);
    row.insertCell().textContent = entry.exact === null ? "-" : String(entry.exact);
    row.insertCell().textContent = String(entry.static);
  }
  root.appendChild(table);
}

function renderTime(root: HTMLElement, result: TimeResult): void {
  root.appendChild(keyValueTable([
    ["Execution", result.execId],
    ["File", result.file],
    ["Sequential bound", result.sequential],
    ["Critical-path bound", result.criticalPath],
  ]));
  root.appendChild(heading("Evaluations"));
  for (const entry of result.evaluations) {
    root.appendChild(keyValueTable([
      ["EFFICIENCY", String(entry.EFFICIENCY)],
      ["CONC_CASES", String(entry.CONC_CASES)],
      ["Sequential", String(entry.sequential)],
      ["Critical path", String(entry.criticalPath)],
    ]));
  }
}

export function renderConsole(root: HTMLElement, result: RunResult): void {
  root.replaceChildren();
  if (isSimulation(result)) {
    renderSimulation(root, result);
  } else if (isPeak(result)) {
    renderPeak(root, result);
  } else {
    renderTime(root, result as TimeResult);
  }
}
