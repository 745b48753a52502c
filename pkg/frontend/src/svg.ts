/** String-level SVG construction; no DOM, fully deterministic output. */

export type Attrs = Record<string, string | number>;

function attrText(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([key, value]) => ` ${key}="${value}"`)
    .join("");
}

export function el(tag: string, attrs: Attrs, children = ""): string {
  return children === ""
    ? `<${tag}${attrText(attrs)}/>`
    : `<${tag}${attrText(attrs)}>${children}</${tag}>`;
}

export function textEl(x: number, y: number, content: string, attrs: Attrs = {}): string {
  const escaped = content
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
  return el(
    "text",
    { x: round(x), y: round(y), "font-family": "Helvetica, sans-serif", ...attrs },
    escaped,
  );
}

export function lineEl(x1: number, y1: number, x2: number, y2: number, attrs: Attrs): string {
  return el("line", { x1: round(x1), y1: round(y1), x2: round(x2), y2: round(y2), ...attrs });
}

export function polylineEl(points: Array<[number, number]>, attrs: Attrs): string {
  const joined = points.map(([x, y]) => `${round(x)},${round(y)}`).join(" ");
  return el("polyline", { points: joined, fill: "none", ...attrs });
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">` +
    el("rect", { x: 0, y: 0, width, height, fill: "white" }) +
    body +
    "</svg>\n"
  );
}

export function round(v: number): number {
  return Math.round(v * 100) / 100;
}
