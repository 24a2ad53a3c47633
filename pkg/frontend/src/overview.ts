/** The Console Overview: the eight-column run table plus the two bar charts
 * (average execution time; average financial cost in millions). */

import { OverviewRow } from "./api.js";
import { renderBarChart } from "./charts.js";

export const OVERVIEW_COLUMNS = [
  "Id",
  "File",
  "Executions",
  "Efficiency",
  "Availability",
  "Cases",
  "Time (min/max/avg)",
  "Cost (min/max/avg)",
] as const;

function statCell(stats: OverviewRow["time"]): string {
  if (!stats) {
    return "-";
  }
  return `${stats.min} / ${stats.max} / ${stats.avg}`;
}

export interface ChartPoint {
  execId: string;
  value: number;
}

/** Chart series in run-creation order (rows arrive newest first). The cost
 * series is scaled to millions for display, as the chart axis demands. */
export function chartData(rows: OverviewRow[]): { time: ChartPoint[]; costMillions: ChartPoint[] } {
  const ordered = [...rows].reverse();
  const time: ChartPoint[] = [];
  const costMillions: ChartPoint[] = [];
  for (const row of ordered) {
    if (!row.time || !row.cost) {
      continue; // peak/time runs have no averages to chart
    }
    time.push({ execId: row.execId, value: Number(row.time.avg) });
    costMillions.push({ execId: row.execId, value: Number(row.cost.avg) / 1_000_000 });
  }
  return { time, costMillions };
}

export function renderOverview(container: HTMLElement, rows: OverviewRow[]): void {
  container.replaceChildren();

  const table = document.createElement("table");
  table.className = "overview-table";
  const head = table.createTHead().insertRow();
  for (const column of OVERVIEW_COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    tr.dataset.execId = row.execId;
    const cells = [
      row.execId,
      row.file,
      String(row.sims),
      String(row.efficiency),
      String(row.availability),
      String(row.cases),
      statCell(row.time),
      statCell(row.cost),
    ];
    for (const value of cells) {
      tr.insertCell().textContent = value;
    }
  }
  container.appendChild(table);

  const series = chartData(rows);
  const charts = document.createElement("div");
  charts.className = "overview-charts";
  charts.appendChild(renderBarChart(
    "Average execution time",
    series.time.map((p) => ({ label: p.execId, value: p.value })),
    "chart-time",
  ));
  charts.appendChild(renderBarChart(
    "Average financial cost (millions)",
    series.costMillions.map((p) => ({ label: p.execId, value: p.value })),
    "chart-cost",
  ));
  container.appendChild(charts);
}
