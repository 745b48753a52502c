/** Fixed per-method colors and dashes so figures stay comparable across runs. */

export interface SeriesStyle {
  color: string;
  dash?: string;
}

const METHOD_STYLES: Record<string, SeriesStyle> = {
  population_gd: { color: "#1f77b4" },
  reference_gd: { color: "#2ca02c" },
  leaveout_gd: { color: "#d62728" },
  leaveout_spectral: { color: "#9467bd", dash: "5,3" },
  core_gd: { color: "#d62728" },
  core_spectral: { color: "#9467bd", dash: "5,3" },
  winrate: { color: "#8c564b" },
  neg_l2: { color: "#ff7f0e" },
  mahalanobis_depth: { color: "#17becf" },
  spatial_depth: { color: "#bcbd22" },
  rp_spatial: { color: "#7f7f7f", dash: "2,2" },
};

const FALLBACK = ["#e377c2", "#aec7e8", "#ffbb78", "#98df8a", "#c5b0d5"];

export function styleFor(method: string, index: number): SeriesStyle {
  return METHOD_STYLES[method] ?? { color: FALLBACK[index % FALLBACK.length] };
}

/** Shades used when a panel overlays several sample sizes. */
export function shadeForSize(rank: number, total: number): string {
  const t = total <= 1 ? 1 : rank / (total - 1);
  const level = Math.round(200 - 170 * t);
  return `rgb(${level},${Math.round(level * 0.55)},${Math.round(60 + 120 * t)})`;
}
