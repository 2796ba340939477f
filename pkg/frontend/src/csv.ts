/**
 * Strict CSV reader for the numeric engine's delimited outputs.
 *
 * Cells are numeric; the literal "nan" (emitted for failed sweep points) maps
 * to NaN and is filtered downstream, while any other non-numeric cell is a
 * hard error — silently plotting garbage is worse than refusing.
 */

export interface Table {
  columns: string[];
  rows: number[][];
}

export class CsvError extends Error {}

function parseCell(cell: string, line: number): number {
  if (cell === "nan") return Number.NaN;
  if (cell.trim() === "") {
    throw new CsvError(`empty cell on line ${line}`);
  }
  const value = Number(cell);
  if (Number.isNaN(value)) {
    throw new CsvError(`non-numeric cell "${cell}" on line ${line}`);
  }
  return value;
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").filter((line, i) => !(line === "" && i > 0));
  const header = lines[0];
  if (header === undefined || header === "") {
    throw new CsvError("empty input: no header line");
  }
  const columns = header.split(",");
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `line ${i + 2} has ${cells.length} cells, header has ${columns.length}`,
      );
    }
    return cells.map((cell) => parseCell(cell, i + 2));
  });
  if (rows.length === 0) {
    throw new CsvError("no data rows");
  }
  return { columns, rows };
}

/** Indices of the named columns; throws naming every absent one. */
export function requireColumns(table: Table, names: string[]): number[] {
  const missing = names.filter((name) => !table.columns.includes(name));
  if (missing.length > 0) {
    throw new CsvError(`missing columns: ${missing.join(", ")}`);
  }
  return names.map((name) => table.columns.indexOf(name));
}

export function column(table: Table, name: string): number[] {
  const [index] = requireColumns(table, [name]);
  return table.rows.map((row) => row[index!]!);
}
