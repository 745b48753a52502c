/** Parsers for the experiment artifacts the figures consume. */

import { readFileSync, readdirSync, existsSync } from "fs";
import { join } from "path";
import { parseCsv, requireColumns, toNumber } from "./csv.js";

export interface CurvePoint {
  x: number;
  theta: number;
  method: string;
  n: number;
}

export interface SummaryRow {
  method: string;
  distribution: string;
  n: number;
  d: number;
  mean: number;
  sd: number;
}

export interface DistributionInfo {
  name: string;
  mu_star: number | null;
}

export interface Manifest {
  experiment?: string;
  distributions: DistributionInfo[];
}

export function parseCurves(text: string, context: string): CurvePoint[] {
  const table = parseCsv(text);
  const [xi, ti, mi, ni] = requireColumns(table, ["x", "theta", "method", "n"], context);
  return table.rows.map((row, k) => ({
    x: toNumber(row[xi], `${context}:${k + 2}`),
    theta: toNumber(row[ti], `${context}:${k + 2}`),
    method: row[mi],
    n: toNumber(row[ni], `${context}:${k + 2}`),
  }));
}

export function parseSummary(text: string, context: string): SummaryRow[] {
  const table = parseCsv(text);
  const cols = requireColumns(
    table,
    ["method", "distribution", "n", "d", "mean", "sd"],
    context,
  );
  const [mi, di, ni, dimi, meani, sdi] = cols;
  return table.rows.map((row, k) => ({
    method: row[mi],
    distribution: row[di],
    n: toNumber(row[ni], `${context}:${k + 2}`),
    d: toNumber(row[dimi], `${context}:${k + 2}`),
    mean: toNumber(row[meani], `${context}:${k + 2}`),
    sd: toNumber(row[sdi], `${context}:${k + 2}`),
  }));
}

export function readManifest(inputDir: string): Manifest {
  const path = join(inputDir, "manifest.json");
  if (!existsSync(path)) {
    return { distributions: [] };
  }
  return JSON.parse(readFileSync(path, "utf8")) as Manifest;
}

/** Per-distribution curve files under figure_data/, keyed by distribution name. */
export function readCurveFiles(inputDir: string): Map<string, CurvePoint[]> {
  const dir = join(inputDir, "figure_data");
  if (!existsSync(dir)) {
    throw new Error(`no figure_data/ directory under ${inputDir}`);
  }
  const out = new Map<string, CurvePoint[]>();
  const manifest = readManifest(inputDir);
  const known = manifest.distributions.map((d) => d.name);
  for (const file of readdirSync(dir).sort()) {
    if (!file.endsWith(".csv")) continue;
    const stem = file.replace(/\.csv$/, "");
    const dist =
      known.find((name) => stem.endsWith(`_${name}`)) ?? stem.replace(/^.*?_(\w+)$/, "$1");
    out.set(dist, parseCurves(readFileSync(join(dir, file), "utf8"), file));
  }
  if (out.size === 0) {
    throw new Error(`no curve CSVs found in ${dir}`);
  }
  return out;
}

export function muStarOf(manifest: Manifest, dist: string): number | null {
  const info = manifest.distributions.find((d) => d.name === dist);
  return info ? info.mu_star : null;
}
