/** Linear scales and tick placement for the panel axes. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    // degenerate domain: pad so everything maps to the range midpoint
    d0 -= 1;
    d1 += 1;
  }
  const f = ((value: number) =>
    range[0] + ((value - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  f.domain = [d0, d1];
  f.range = range;
  return f;
}

/** Round tick positions covering the domain, at most `count + 1` of them. */
export function niceTicks(domain: [number, number], count = 4): number[] {
  const [lo, hi] = domain;
  if (!(hi > lo)) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const scaled = span / count / step;
  const factor = scaled >= 5 ? 5 : scaled >= 2 ? 2 : 1;
  const tick = factor * step;
  const start = Math.ceil(lo / tick) * tick;
  const ticks: number[] = [];
  for (let v = start; v <= hi + tick * 1e-9; v += tick) {
    ticks.push(Number(v.toFixed(12)));
  }
  return ticks;
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) {
    return [0, 1];
  }
  return [lo, hi];
}

export function padded(domain: [number, number], frac = 0.05): [number, number] {
  const [lo, hi] = domain;
  const pad = (hi - lo || 1) * frac;
  return [lo - pad, hi + pad];
}
