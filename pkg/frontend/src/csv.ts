/**
 * Strict reader for the simulator's summary CSV schema.
 *
 * The frontend never recomputes metrics: whatever numbers the CSV carries
 * are the numbers that end up in the figure.
 */

export const SUMMARY_HEADER =
  "policy,p,q,ps,period,threshold,slots,seed," +
  "recon_error,actuation_cost,tx_rate,uninformative_frac";

export const POLICIES = ["uniform", "age", "change", "e2e"] as const;
export const CHANNELS = [0.4, 0.9] as const;

export interface SummaryRow {
  policy: string;
  p: number;
  q: number;
  ps: number;
  period: number;
  threshold: number;
  slots: number;
  seed: number;
  recon_error: number;
  actuation_cost: number;
  tx_rate: number;
  uninformative_frac: number;
}

export class CsvError extends Error {}

const NUMERIC_FIELDS = [
  "p",
  "q",
  "ps",
  "period",
  "threshold",
  "slots",
  "seed",
  "recon_error",
  "actuation_cost",
  "tx_rate",
  "uninformative_frac",
] as const;

export function parseSummaryCsv(text: string): SummaryRow[] {
  const lines = text.trim().split(/\r?\n/);
  if (lines.length === 0 || lines[0] !== SUMMARY_HEADER) {
    throw new CsvError(
      `unexpected header; expected exactly: ${SUMMARY_HEADER}`,
    );
  }
  if (lines.length === 1) {
    throw new CsvError("CSV contains a header but no data rows");
  }
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== 12) {
      throw new CsvError(`row ${i + 2}: expected 12 fields, got ${cells.length}`);
    }
    const row: Record<string, number | string> = { policy: cells[0] };
    NUMERIC_FIELDS.forEach((name, j) => {
      const value = Number(cells[j + 1]);
      if (!Number.isFinite(value)) {
        throw new CsvError(`row ${i + 2}: field ${name} is not a number: ${cells[j + 1]}`);
      }
      row[name] = value;
    });
    if (row.policy === "") {
      throw new CsvError(`row ${i + 2}: empty policy name`);
    }
    return row as unknown as SummaryRow;
  });
}

/** Find the row for one (policy, ps) cell of the experiment grid. */
export function findRow(rows: SummaryRow[], policy: string, ps: number): SummaryRow | undefined {
  return rows.find((r) => r.policy === policy && r.ps === ps);
}

/**
 * The figure needs every policy at both channel qualities; report all the
 * missing rows at once so a truncated CSV is diagnosed in one pass.
 */
export function requireFullGrid(rows: SummaryRow[]): void {
  const missing: string[] = [];
  for (const policy of POLICIES) {
    for (const ps of CHANNELS) {
      if (findRow(rows, policy, ps) === undefined) {
        missing.push(`${policy} at ps=${ps}`);
      }
    }
  }
  if (missing.length > 0) {
    throw new CsvError(`missing scenario rows: ${missing.join(", ")}`);
  }
}
