/** Figure rendering CLI.
 *
 * Usage:
 *   node dist/src/cli.js --input-dir results/fig_1d_methods --kind methods_overlay --out fig1.svg
 *
 * Writes the SVG plus a `<out>.legend.json` manifest describing the panels
 * and series, which downstream checks parse back. Exit codes: 0 success,
 * 2 usage or input failure.
 */

import { writeFileSync } from "fs";
import { pathToFileURL } from "url";
import { FIGURE_KINDS, FigureJob, FigureKind, renderJob } from "./render.js";

function parseArgs(argv: string[]): FigureJob {
  let inputDir: string | null = null;
  let kind: string | null = null;
  let out: string | null = null;
  let muStar: number | null | undefined = undefined;
  let methods: string[] | null = null;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      const value = argv[++i];
      if (value === undefined) throw new Error(`${flag} needs a value`);
      return value;
    };
    switch (flag) {
      case "--input-dir":
        inputDir = next();
        break;
      case "--kind":
        kind = next();
        break;
      case "--out":
        out = next();
        break;
      case "--mu-star": {
        const raw = next();
        muStar = raw === "none" ? null : Number(raw);
        if (muStar !== null && !Number.isFinite(muStar)) {
          throw new Error(`--mu-star expects a number or 'none', got '${raw}'`);
        }
        break;
      }
      case "--methods":
        methods = next().split(",").filter((m) => m.length > 0);
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!inputDir || !kind || !out) {
    throw new Error("required: --input-dir DIR --kind KIND --out FILE.svg");
  }
  if (!FIGURE_KINDS.includes(kind as FigureKind)) {
    throw new Error(`unknown kind '${kind}'; expected one of ${FIGURE_KINDS.join(", ")}`);
  }
  return { inputDir, kind: kind as FigureKind, outPath: out, muStar, methods };
}

export function main(argv: string[]): number {
  try {
    const job = parseArgs(argv);
    const { svg, legend } = renderJob(job);
    writeFileSync(job.outPath, svg);
    writeFileSync(`${job.outPath}.legend.json`, JSON.stringify(legend, null, 2) + "\n");
    console.log(
      `wrote ${job.outPath} (${legend.panels.length} panels, ${legend.series.length} series)`,
    );
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 2;
  }
}

if (import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
