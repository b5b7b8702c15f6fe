#!/usr/bin/env node
/**
 * semcom-plots render --input summary.csv --source slow --out figure.svg
 *                     [--metric error|cost|uninformative]
 *
 * Exit codes: 0 rendered, 1 data error (malformed CSV / missing rows),
 * 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { CsvError, parseSummaryCsv } from "./csv.js";
import { FigureSpec, Metric, SourceLabel, buildFigureModel } from "./figure.js";
import { renderSvg } from "./svg.js";

const USAGE =
  "usage: semcom-plots render --input PATH --source {slow|rapid} --out PATH " +
  "[--metric {error|cost|uninformative}]";

class UsageError extends Error {}

export function parseArgs(argv: string[]): FigureSpec {
  if (argv[0] !== "render") {
    throw new UsageError(USAGE);
  }
  const values: Record<string, string> = {};
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new UsageError(USAGE);
    }
    values[flag.slice(2)] = value;
  }
  const known = new Set(["input", "source", "out", "metric"]);
  for (const key of Object.keys(values)) {
    if (!known.has(key)) {
      throw new UsageError(`unknown flag --${key}\n${USAGE}`);
    }
  }
  const { input, source, out, metric } = values;
  if (!input || !source || !out) {
    throw new UsageError(USAGE);
  }
  if (source !== "slow" && source !== "rapid") {
    throw new UsageError(`--source must be slow or rapid, got ${source}`);
  }
  if (metric !== undefined && !["error", "cost", "uninformative"].includes(metric)) {
    throw new UsageError(`--metric must be error, cost or uninformative, got ${metric}`);
  }
  return {
    input,
    source: source as SourceLabel,
    out,
    metric: metric as Metric | undefined,
  };
}

export function renderFigure(spec: FigureSpec): string {
  const text = readFileSync(spec.input, "utf-8");
  const rows = parseSummaryCsv(text);
  const model = buildFigureModel(rows, spec.source, spec.metric);
  const svg = renderSvg(model);
  writeFileSync(spec.out, svg, { encoding: "utf-8" });
  return spec.out;
}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    const written = renderFigure(spec);
    process.stdout.write(written + "\n");
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(err.message + "\n");
      return 2;
    }
    if (err instanceof CsvError) {
      process.stderr.write(`data error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
