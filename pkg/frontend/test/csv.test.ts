import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { CsvError, column, parseCsv, requireColumns } from "../src/csv.js";

const fixture = (name: string): string =>
  readFileSync(fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url)), "utf8");

describe("parseCsv", () => {
  it("reads an engine sweep artifact", () => {
    const table = parseCsv(fixture("position_sweep.csv"));
    expect(table.columns).toEqual([
      "sweep_coordinate",
      "f1",
      "f2",
      "f12",
      "p_plus",
      "p_minus",
      "singular_flag",
      "error_estimate",
    ]);
    expect(table.rows).toHaveLength(40);
    expect(table.rows[0]![0]).toBe(1.05);
  });

  it("maps the literal nan to NaN", () => {
    const table = parseCsv("x,y\n1,nan\n");
    expect(table.rows[0]![1]).toBeNaN();
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("")).toThrow(CsvError);
    expect(() => parseCsv("")).toThrow("no header");
  });

  it("rejects a header-only document", () => {
    expect(() => parseCsv("x,y\n")).toThrow("no data rows");
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("x,y\n1,2\n3\n")).toThrow("line 3 has 1 cells");
  });

  it("rejects non-numeric cells", () => {
    expect(() => parseCsv("x,y\n1,pineapple\n")).toThrow('non-numeric cell "pineapple"');
  });
});

describe("column selection", () => {
  it("names every missing column at once", () => {
    const table = parseCsv("x,y\n1,2\n");
    expect(() => requireColumns(table, ["x", "q", "z"])).toThrow(
      "missing columns: q, z",
    );
  });

  it("extracts a column by name", () => {
    const table = parseCsv("x,y\n1,2\n3,4\n");
    expect(column(table, "y")).toEqual([2, 4]);
  });
});
