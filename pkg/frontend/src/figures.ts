/**
 * Figure presets over the engine's CSV artifacts.
 *
 * figure3: detector probabilities against the radius ratio of a position
 * superposition.  figure4: against the square-root mass ratio of a mass
 * superposition, where resonant rows appear as spikes.  spectrum: the
 * detector-probed spectrum, with the constant singular part shown as a
 * horizontal offset between the regular and total curves when present.
 */

import { CsvError, parseCsv, requireColumns, type Table } from "./csv.js";
import { renderChart, type GuideLine, type Series } from "./svg.js";

export interface FigureSpec {
  inputCsv: string;
  xColumn: string;
  yColumns: string[];
  labels: string[];
  title: string;
  outputPath: string;
  xLabel: string;
  yLabel: string;
  yRange?: [number, number];
}

export type SweepKind = "figure3" | "figure4";

/** Matplotlib's default blue/orange, first curve above the second. */
const CURVE_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c"];

export function sweepFigureSpec(
  kind: SweepKind,
  inputCsv: string,
  outputPath: string,
): FigureSpec {
  return {
    inputCsv,
    xColumn: "sweep_coordinate",
    yColumns: ["p_plus", "p_minus"],
    labels: ["P+/N", "P-/N"],
    title:
      kind === "figure3"
        ? "Detector probabilities, position superposition"
        : "Detector probabilities, mass superposition",
    outputPath,
    xLabel: kind === "figure3" ? "R₂/R₁" : "√(M₂/M₁)",
    yLabel: "P±/N",
  };
}

/** Dual curve (regular/total) when a singular part is present, single otherwise. */
export function spectrumFigureSpec(
  inputCsv: string,
  outputPath: string,
  csvText: string,
): FigureSpec {
  const table = parseCsv(csvText);
  const [singularIndex] = requireColumns(table, ["singular_part"]);
  const hasSingular = table.rows.some((row) => row[singularIndex!] !== 0);
  return {
    inputCsv,
    xColumn: "K",
    yColumns: hasSingular ? ["regular_part", "total"] : ["total"],
    labels: hasSingular ? ["regular part", "total"] : ["spectrum"],
    title: "Detector-probed spectrum",
    outputPath,
    xLabel: "Kσ",
    yLabel: "spectrum",
  };
}

function finiteSeries(
  table: Table,
  xIndex: number,
  yIndex: number,
  label: string,
  color: string,
): Series {
  const x: number[] = [];
  const y: number[] = [];
  for (const row of table.rows) {
    const xv = row[xIndex]!;
    const yv = row[yIndex]!;
    if (Number.isFinite(xv) && Number.isFinite(yv)) {
      x.push(xv);
      y.push(yv);
    }
  }
  if (x.length === 0) {
    throw new CsvError(`column "${label}" has no finite values to plot`);
  }
  return { label, color, x, y };
}

export function renderFigure(spec: FigureSpec, csvText: string): string {
  const table = parseCsv(csvText);
  const [xIndex, ...yIndexes] = requireColumns(table, [
    spec.xColumn,
    ...spec.yColumns,
  ]);
  const series = yIndexes.map((yIndex, i) =>
    finiteSeries(
      table,
      xIndex!,
      yIndex,
      spec.labels[i] ?? spec.yColumns[i]!,
      CURVE_COLORS[i % CURVE_COLORS.length]!,
    ),
  );

  const guides: GuideLine[] = [];
  if (spec.yColumns.includes("total") && table.columns.includes("singular_part")) {
    const [singularIndex] = requireColumns(table, ["singular_part"]);
    const level = Math.max(...table.rows.map((row) => row[singularIndex!]!));
    if (level !== 0) {
      guides.push({ y: level, label: "singular offset" });
    }
  }

  return renderChart(
    {
      title: spec.title,
      xLabel: spec.xLabel,
      yLabel: spec.yLabel,
      ...(spec.yRange ? { yRange: spec.yRange } : {}),
    },
    series,
    guides,
  );
}
