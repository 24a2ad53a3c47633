import { OverviewRow, SimulationResult } from "../src/api.js";

/** The service response for the canonical supply-chain run where the goods
 * were missing: execution time 400, financial cost 2,212,500, ten runs each
 * violating the stock-check deadline once. */
export function traceOracleResult(): SimulationResult {
  return {
    execId: "00af1171",
    file: "supply_chain.rpl",
    sims: 10,
    efficiency: 100,
    availability: 100,
    cases: 1,
    time: { min: 400, max: 400, avg: "400.00" },
    cost: { min: 2212500, max: 2212500, avg: "2212500.00" },
    violations: { total: 10, perSite: [{ method: "check_goods", line: 12, count: 10 }] },
    peaks: { Van: 1, Driver: 1, Helper: 1 },
  };
}

export function traceOracleRow(): OverviewRow {
  const result = traceOracleResult();
  return {
    execId: result.execId,
    file: result.file,
    sims: result.sims,
    efficiency: result.efficiency,
    availability: result.availability,
    cases: result.cases,
    time: result.time,
    cost: result.cost,
  };
}
