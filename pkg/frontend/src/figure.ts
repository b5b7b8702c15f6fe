/**
 * Chart data model: a pure function of the parsed CSV rows.
 *
 * Tests verify figures by reading this model (and the data attributes the
 * renderer stamps on each bar), never by comparing pixels.
 */

import { CHANNELS, CsvError, POLICIES, SummaryRow, findRow, requireFullGrid } from "./csv.js";

export type SourceLabel = "slow" | "rapid";
export type Metric = "error" | "cost" | "uninformative";

export interface FigureSpec {
  input: string;
  source: SourceLabel;
  out: string;
  metric?: Metric;
}

export interface Bar {
  policy: string;
  ps: number;
  value: number;
}

export interface Panel {
  /** subfigure tag: "a", "b", ... */
  tag: string;
  title: string;
  bars: Bar[];
}

export interface FigureModel {
  title: string;
  panels: Panel[];
}

const METRIC_COLUMNS: Record<Metric, { column: keyof SummaryRow; title: string }> = {
  error: { column: "recon_error", title: "Real-time reconstruction error" },
  cost: { column: "actuation_cost", title: "Cost of actuation error" },
  uninformative: { column: "uninformative_frac", title: "Fraction of uninformative transmissions" },
};

const SOURCE_TITLES: Record<SourceLabel, string> = {
  slow: "Slowly varying source",
  rapid: "Rapidly varying source",
};

function panelFor(rows: SummaryRow[], metric: Metric, tag: string): Panel {
  const column = METRIC_COLUMNS[metric].column;
  const bars: Bar[] = [];
  for (const policy of POLICIES) {
    for (const ps of CHANNELS) {
      const row = findRow(rows, policy, ps)!;
      bars.push({ policy, ps, value: row[column] as number });
    }
  }
  return { tag, title: METRIC_COLUMNS[metric].title, bars };
}

export function buildFigureModel(
  rows: SummaryRow[],
  source: SourceLabel,
  metric?: Metric,
): FigureModel {
  requireFullGrid(rows);
  const pairs = new Set(rows.map((r) => `${r.p}/${r.q}`));
  if (pairs.size > 1) {
    throw new CsvError(
      `CSV mixes source settings (${[...pairs].join(", ")}); render one source per figure`,
    );
  }
  const metrics: Metric[] = metric === undefined ? ["error", "cost"] : [metric];
  const panels = metrics.map((m, i) => panelFor(rows, m, String.fromCharCode(97 + i)));
  return { title: SOURCE_TITLES[source], panels };
}
