/** The three figure kinds, rendered to standalone SVG plus a legend manifest. */

import { readFileSync } from "fs";
import { join } from "path";
import {
  CurvePoint,
  Manifest,
  SummaryRow,
  muStarOf,
  parseSummary,
  readCurveFiles,
  readManifest,
} from "./figdata.js";
import { shadeForSize, styleFor } from "./palette.js";
import { extent, linearScale, niceTicks, padded, Scale } from "./scale.js";
import { lineEl, polylineEl, svgDocument, textEl } from "./svg.js";

export type FigureKind = "methods_overlay" | "convergence_overlay" | "correlation_bars";

export const FIGURE_KINDS: FigureKind[] = [
  "methods_overlay",
  "convergence_overlay",
  "correlation_bars",
];

export interface FigureJob {
  inputDir: string;
  kind: FigureKind;
  outPath: string;
  /** overrides the manifest's center annotation for every panel */
  muStar?: number | null;
  /** optional subset of methods to draw; omitted methods leave the legend */
  methods?: string[] | null;
}

export interface LegendManifest {
  kind: FigureKind;
  out: string;
  panels: string[];
  series: string[];
  sizes?: number[];
}

const PANEL_W = 260;
const PANEL_H = 190;
const GAP = 22;
const MARGIN_L = 56;
const MARGIN_T = 48;
const MARGIN_B = 40;

interface Frame {
  sx: Scale;
  sy: Scale;
  content: string;
}

function panelFrame(
  px: number,
  py: number,
  title: string,
  xDomain: [number, number],
  yDomain: [number, number],
): Frame {
  const sx = linearScale(xDomain, [px, px + PANEL_W]);
  const sy = linearScale(yDomain, [py + PANEL_H, py]);
  let content = "";
  content += lineEl(px, py + PANEL_H, px + PANEL_W, py + PANEL_H, { stroke: "#333", "stroke-width": 1 });
  content += lineEl(px, py, px, py + PANEL_H, { stroke: "#333", "stroke-width": 1 });
  for (const t of niceTicks(sx.domain, 4)) {
    const x = sx(t);
    content += lineEl(x, py + PANEL_H, x, py + PANEL_H + 4, { stroke: "#333", "stroke-width": 1 });
    content += textEl(x, py + PANEL_H + 16, trimTick(t), {
      "font-size": 9,
      "text-anchor": "middle",
      fill: "#333",
    });
  }
  for (const t of niceTicks(sy.domain, 4)) {
    const y = sy(t);
    content += lineEl(px - 4, y, px, y, { stroke: "#333", "stroke-width": 1 });
    content += textEl(px - 7, y + 3, trimTick(t), {
      "font-size": 9,
      "text-anchor": "end",
      fill: "#333",
    });
  }
  content += textEl(px + PANEL_W / 2, py - 7, title, {
    "font-size": 11,
    "text-anchor": "middle",
    fill: "#000",
  });
  return { sx, sy, content };
}

function trimTick(t: number): string {
  const abs = Math.abs(t);
  if (abs >= 1000) return t.toExponential(0);
  if (abs >= 10 || t === Math.round(t)) return String(Math.round(t * 100) / 100);
  return t.toPrecision(2);
}

function centerLine(frame: Frame, mu: number | null, py: number): string {
  if (mu === null || mu < frame.sx.domain[0] || mu > frame.sx.domain[1]) {
    return "";
  }
  return lineEl(frame.sx(mu), py, frame.sx(mu), py + PANEL_H, {
    stroke: "#555",
    "stroke-width": 1,
    "stroke-dasharray": "4,3",
  });
}

function legendStrip(labels: Array<{ label: string; color: string; dash?: string }>): string {
  let content = "";
  let x = MARGIN_L;
  for (const item of labels) {
    content += lineEl(x, 18, x + 22, 18, {
      stroke: item.color,
      "stroke-width": 2,
      ...(item.dash ? { "stroke-dasharray": item.dash } : {}),
    });
    content += textEl(x + 27, 21, item.label, { "font-size": 10, fill: "#000" });
    x += 36 + item.label.length * 6;
  }
  return content;
}

function groupBy<T, K>(items: T[], key: (item: T) => K): Map<K, T[]> {
  const out = new Map<K, T[]>();
  for (const item of items) {
    const k = key(item);
    const bucket = out.get(k);
    if (bucket) bucket.push(item);
    else out.set(k, [item]);
  }
  return out;
}

function presentMethods(curves: Map<string, CurvePoint[]>, filter?: string[] | null): string[] {
  const seen: string[] = [];
  for (const points of curves.values()) {
    for (const p of points) {
      if (!seen.includes(p.method)) seen.push(p.method);
    }
  }
  return filter ? filter.filter((m) => seen.includes(m)) : seen;
}

function renderCurvesFigure(
  job: FigureJob,
  manifest: Manifest,
  curves: Map<string, CurvePoint[]>,
  byMethodPanels: boolean,
): { svg: string; legend: LegendManifest } {
  const dists = [...curves.keys()];
  const methods = presentMethods(curves, job.methods);
  const sizes = [...new Set([...curves.values()].flat().map((p) => p.n))].sort((a, b) => a - b);
  const cols = byMethodPanels ? methods.length : sizes.length;
  const panels: string[] = [];
  let body = "";

  dists.forEach((dist, row) => {
    const points = curves.get(dist)!;
    const mu = job.muStar !== undefined ? job.muStar : muStarOf(manifest, dist);
    const xDomain = padded(extent(points.map((p) => p.x)));
    const yDomain = padded(extent(points.map((p) => p.theta)));
    const columnKeys: Array<string | number> = byMethodPanels ? methods : sizes;
    columnKeys.forEach((colKey, col) => {
      const px = MARGIN_L + col * (PANEL_W + GAP);
      const py = MARGIN_T + row * (PANEL_H + GAP + 26);
      const title = byMethodPanels ? `${dist}: ${colKey}` : `${dist}, n=${colKey}`;
      const frame = panelFrame(px, py, title, xDomain, yDomain);
      body += frame.content;
      body += centerLine(frame, mu, py);
      if (byMethodPanels) {
        const subset = points.filter((p) => p.method === colKey);
        sizes.forEach((n, rank) => {
          const line = subset
            .filter((p) => p.n === n)
            .sort((a, b) => a.x - b.x)
            .map((p) => [frame.sx(p.x), frame.sy(p.theta)] as [number, number]);
          if (line.length > 1) {
            body += polylineEl(line, { stroke: shadeForSize(rank, sizes.length), "stroke-width": 1.4 });
          }
        });
      } else {
        methods.forEach((method, mi) => {
          const style = styleFor(method, mi);
          const line = points
            .filter((p) => p.method === method && p.n === colKey)
            .sort((a, b) => a.x - b.x)
            .map((p) => [frame.sx(p.x), frame.sy(p.theta)] as [number, number]);
          if (line.length > 1) {
            body += polylineEl(line, {
              stroke: style.color,
              "stroke-width": 1.4,
              ...(style.dash ? { "stroke-dasharray": style.dash } : {}),
            });
          }
        });
      }
      panels.push(title);
    });
  });

  const legendItems = byMethodPanels
    ? sizes.map((n, rank) => ({ label: `n=${n}`, color: shadeForSize(rank, sizes.length) }))
    : methods.map((m, i) => ({ label: m, ...styleFor(m, i) }));
  body += legendStrip(legendItems);

  const width = MARGIN_L + cols * (PANEL_W + GAP) + 10;
  const height = MARGIN_T + dists.length * (PANEL_H + GAP + 26) + MARGIN_B;
  return {
    svg: svgDocument(width, height, body),
    legend: { kind: job.kind, out: job.outPath, panels, series: methods, sizes },
  };
}

function renderCorrelationBars(
  job: FigureJob,
  rows: SummaryRow[],
): { svg: string; legend: LegendManifest } {
  const filtered = job.methods ? rows.filter((r) => job.methods!.includes(r.method)) : rows;
  const dists = [...new Set(filtered.map((r) => r.distribution))];
  const methods = [...new Set(filtered.map((r) => r.method))];
  const sizes = [...new Set(filtered.map((r) => r.n))].sort((a, b) => a - b);
  const panels: string[] = [];
  let body = "";

  const yDomain = padded(
    extent(filtered.flatMap((r) => [r.mean - r.sd, Math.min(r.mean + r.sd, 1.05)])),
    0.08,
  );

  dists.forEach((dist, row) => {
    const px = MARGIN_L + row * (PANEL_W + GAP);
    const py = MARGIN_T;
    const frame = panelFrame(px, py, dist, [-0.5, sizes.length - 0.5], yDomain);
    body += frame.content;
    // x axis positions are category slots labeled with the sample sizes
    sizes.forEach((n, i) => {
      body += textEl(frame.sx(i), py + PANEL_H + 28, `n=${n}`, {
        "font-size": 9,
        "text-anchor": "middle",
        fill: "#000",
      });
    });
    const byMethod = groupBy(
      filtered.filter((r) => r.distribution === dist),
      (r) => r.method,
    );
    methods.forEach((method, mi) => {
      const style = styleFor(method, mi);
      const series = (byMethod.get(method) ?? []).sort((a, b) => a.n - b.n);
      const offset = (mi - (methods.length - 1) / 2) * 7;
      const pts: Array<[number, number]> = [];
      for (const r of series) {
        const cx = frame.sx(sizes.indexOf(r.n)) + offset;
        const lo = frame.sy(r.mean - r.sd);
        const hi = frame.sy(r.mean + r.sd);
        body += lineEl(cx, lo, cx, hi, { stroke: style.color, "stroke-width": 1.2 });
        body += lineEl(cx - 3, lo, cx + 3, lo, { stroke: style.color, "stroke-width": 1.2 });
        body += lineEl(cx - 3, hi, cx + 3, hi, { stroke: style.color, "stroke-width": 1.2 });
        body += `<circle cx="${cx}" cy="${frame.sy(r.mean)}" r="2.6" fill="${style.color}"/>`;
        pts.push([cx, frame.sy(r.mean)]);
      }
      if (pts.length > 1) {
        body += polylineEl(pts, {
          stroke: style.color,
          "stroke-width": 1,
          ...(style.dash ? { "stroke-dasharray": style.dash } : {}),
        });
      }
    });
    panels.push(dist);
  });

  body += legendStrip(methods.map((m, i) => ({ label: m, ...styleFor(m, i) })));
  const width = MARGIN_L + dists.length * (PANEL_W + GAP) + 10;
  const height = MARGIN_T + PANEL_H + GAP + 26 + MARGIN_B;
  return {
    svg: svgDocument(width, height, body),
    legend: { kind: job.kind, out: job.outPath, panels, series: methods },
  };
}

export function renderJob(job: FigureJob): { svg: string; legend: LegendManifest } {
  if (job.kind === "correlation_bars") {
    const path = join(job.inputDir, "summary.csv");
    const rows = parseSummary(readFileSync(path, "utf8"), "summary.csv");
    return renderCorrelationBars(job, rows);
  }
  const manifest = readManifest(job.inputDir);
  const curves = readCurveFiles(job.inputDir);
  return renderCurvesFigure(job, manifest, curves, job.kind === "convergence_overlay");
}
