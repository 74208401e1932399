import { existsSync, readFileSync } from "node:fs";

export interface Table {
  header: string[];
  /** column-major numeric data, keyed by header name */
  columns: Map<string, number[]>;
  /** non-numeric columns (e.g. the sigma label) kept as strings */
  text: Map<string, string[]>;
  rows: number;
}

/** Read a CSV written by the simulator; fails fast with a precise message. */
export function readCsv(path: string, expected?: string[]): Table {
  if (!existsSync(path)) {
    throw new Error(`missing input file: expected ${path}`);
  }
  const raw = readFileSync(path, "utf8");
  const lines = raw.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`${path}: file is empty`);
  }
  const header = lines[0].split(",");
  if (expected) {
    for (const col of expected) {
      if (!header.includes(col)) {
        throw new Error(
          `${path}: schema mismatch, missing column "${col}" ` +
          `(found: ${header.join(", ")})`,
        );
      }
    }
  }
  if (lines.length === 1) {
    throw new Error(`${path}: no data rows`);
  }
  const numeric: number[][] = header.map(() => []);
  const strings: string[][] = header.map(() => []);
  const isNumeric: boolean[] = header.map(() => true);
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new Error(
        `${path}: row ${i + 1} has ${cells.length} cells, ` +
        `expected ${header.length} (${header.join(", ")})`,
      );
    }
    for (let c = 0; c < cells.length; c++) {
      const x = Number(cells[c]);
      strings[c].push(cells[c]);
      if (Number.isFinite(x) && cells[c].trim() !== "") {
        numeric[c].push(x);
      } else {
        isNumeric[c] = false;
      }
    }
  }
  const columns = new Map<string, number[]>();
  const text = new Map<string, string[]>();
  header.forEach((name, c) => {
    if (isNumeric[c]) columns.set(name, numeric[c]);
    text.set(name, strings[c]);
  });
  return { header, columns, text, rows: lines.length - 1 };
}

export function column(t: Table, name: string, path = "table"): number[] {
  const col = t.columns.get(name);
  if (!col) {
    throw new Error(`${path}: column "${name}" is missing or non-numeric`);
  }
  return col;
}

export function readSidecar(path: string): Record<string, unknown> {
  if (!existsSync(path)) {
    throw new Error(`missing sidecar file: expected ${path}`);
  }
  try {
    return JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new Error(`${path}: not valid JSON (${(err as Error).message})`);
  }
}
