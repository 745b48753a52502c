/** Minimal CSV reading for the harness artifacts (plain commas, no quoting). */

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    return { header: [], rows: [] };
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  return { header, rows };
}

/** Resolve column indexes, failing loudly with the missing column's name. */
export function requireColumns(table: Table, names: string[], context: string): number[] {
  return names.map((name) => {
    const idx = table.header.indexOf(name);
    if (idx < 0) {
      throw new Error(`${context}: missing column '${name}' (found: ${table.header.join(", ")})`);
    }
    return idx;
  });
}

export function toNumber(raw: string, context: string): number {
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new Error(`${context}: expected a number, got '${raw}'`);
  }
  return value;
}
