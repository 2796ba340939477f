import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { CsvError } from "../src/csv.js";
import { renderFigure, spectrumFigureSpec, sweepFigureSpec } from "../src/figures.js";
import { niceTicks } from "../src/svg.js";

const fixturePath = (name: string): string =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
const fixture = (name: string): string => readFileSync(fixturePath(name), "utf8");

interface Curve {
  label: string;
  stroke: string;
  points: [number, number][];
  pixels: [number, number][];
}

function curvesOf(svg: string): Curve[] {
  const out: Curve[] = [];
  const re =
    /<path class="curve" data-label="([^"]*)" data-points="([^"]*)" fill="none" stroke="([^"]*)" stroke-width="[^"]*"(?: stroke-dasharray="[^"]*")? d="([^"]*)"\/>/g;
  for (const match of svg.matchAll(re)) {
    const points = match[2]!
      .split(" ")
      .map((pair) => pair.split(":").map(Number) as [number, number]);
    const pixels = [...match[4]!.matchAll(/[ML] ([0-9.]+),([0-9.]+)/g)].map(
      (m) => [Number(m[1]), Number(m[2])] as [number, number],
    );
    out.push({ label: match[1]!, stroke: match[3]!, points, pixels });
  }
  return out;
}

describe("figure3 (position sweep)", () => {
  const svg = renderFigure(
    sweepFigureSpec("figure3", "in.csv", "out.svg"),
    fixture("position_sweep.csv"),
  );

  it("draws two labeled curves over all 40 rows", () => {
    const curves = curvesOf(svg);
    expect(curves.map((c) => c.label)).toEqual(["P+/N", "P-/N"]);
    expect(curves[0]!.points).toHaveLength(40);
    expect(curves[1]!.points).toHaveLength(40);
    expect(svg.match(/class="legend"/g)).toHaveLength(2);
  });

  it("keeps the blue curve above the orange one", () => {
    const [plus, minus] = curvesOf(svg);
    expect(plus!.stroke).toBe("#1f77b4");
    expect(minus!.stroke).toBe("#ff7f0e");
    // smaller pixel y means higher on the canvas
    plus!.pixels.forEach(([, py], i) => {
      expect(py).toBeLessThan(minus!.pixels[i]![1]);
    });
  });

  it("labels the axes with the sweep quantities", () => {
    expect(svg).toContain("R₂/R₁");
    expect(svg).toContain("P±/N");
  });

  it("is deterministic", () => {
    const again = renderFigure(
      sweepFigureSpec("figure3", "in.csv", "out.svg"),
      fixture("position_sweep.csv"),
    );
    expect(again).toBe(svg);
  });
});

describe("figure4 (mass sweep)", () => {
  const csvText = fixture("mass_sweep.csv");
  const svg = renderFigure(sweepFigureSpec("figure4", "in.csv", "out.svg"), csvText);

  it("carries every CSV row, including the resonant spikes", () => {
    const [plus, minus] = curvesOf(svg);
    const rows = csvText
      .trim()
      .split("\n")
      .slice(1)
      .map((line) => line.split(","));
    expect(plus!.points).toHaveLength(rows.length);
    const spikes = rows.filter((cells) => cells[6] === "1");
    expect(spikes).toHaveLength(4);
    for (const cells of spikes) {
      const x = Number(cells[0]);
      expect(plus!.points).toContainEqual([x, Number(cells[4])]);
      expect(minus!.points).toContainEqual([x, Number(cells[5])]);
    }
  });

  it("scales the axis to include the spike magnitudes", () => {
    const [plus] = curvesOf(svg);
    const ys = plus!.points.map(([, y]) => y);
    expect(Math.max(...ys)).toBeGreaterThan(3); // resonant row, not clipped
    expect(svg).toContain("√(M₂/M₁)");
  });
});

describe("spectrum", () => {
  it("draws regular and total curves with the singular offset marked", () => {
    const csvText = fixture("spectrum_single.csv");
    const svg = renderFigure(spectrumFigureSpec("in.csv", "out.svg", csvText), csvText);
    const curves = curvesOf(svg);
    expect(curves.map((c) => c.label)).toEqual(["regular part", "total"]);
    const guide = svg.match(/<line class="guide" data-level="([^"]*)"/);
    expect(guide).not.toBeNull();
    expect(Number(guide![1])).toBeCloseTo(0.360843918244, 12);
    expect(svg).toContain("singular offset");
    expect(svg).toContain('stroke-dasharray="6 4"');
  });

  it("collapses to a single curve when the singular part vanishes", () => {
    const csvText = fixture("spectrum_position_cross.csv");
    const svg = renderFigure(spectrumFigureSpec("in.csv", "out.svg", csvText), csvText);
    const curves = curvesOf(svg);
    expect(curves.map((c) => c.label)).toEqual(["spectrum"]);
    expect(svg).not.toContain('class="guide"');
  });
});

describe("validation", () => {
  it("rejects a CSV missing a required column", () => {
    const spec = sweepFigureSpec("figure3", "in.csv", "out.svg");
    expect(() => renderFigure(spec, "sweep_coordinate,p_plus\n1.5,0.4\n")).toThrow(
      "missing columns: p_minus",
    );
  });

  it("rejects an empty body", () => {
    const spec = sweepFigureSpec("figure3", "in.csv", "out.svg");
    expect(() => renderFigure(spec, "sweep_coordinate,p_plus,p_minus\n")).toThrow(
      CsvError,
    );
  });

  it("rejects columns that are entirely nan", () => {
    const spec = sweepFigureSpec("figure3", "in.csv", "out.svg");
    const text =
      "sweep_coordinate,p_plus,p_minus\n1.5,nan,0.3\n2,nan,0.2\n";
    expect(() => renderFigure(spec, text)).toThrow("no finite values");
  });

  it("honors an explicit y range", () => {
    const spec = {
      ...sweepFigureSpec("figure3", "in.csv", "out.svg"),
      yRange: [0, 1] as [number, number],
    };
    const svg = renderFigure(spec, fixture("position_sweep.csv"));
    const yTicks = [...svg.matchAll(/text-anchor="end"[^>]*>([-\d.e]+)<\/text>/g)].map(
      (m) => Number(m[1]),
    );
    expect(Math.min(...yTicks)).toBeGreaterThanOrEqual(0);
    expect(Math.max(...yTicks)).toBeLessThanOrEqual(1);
  });
});

describe("niceTicks", () => {
  it("uses 1-2-5 steps covering the range", () => {
    expect(niceTicks(0, 1)).toEqual([0, 0.2, 0.4, 0.6, 0.8, 1]);
    expect(niceTicks(1.05, 3)).toEqual([1.5, 2, 2.5, 3]);
  });

  it("handles negative spans", () => {
    const ticks = niceTicks(-2.3, 2.6);
    expect(ticks[0]!).toBeGreaterThanOrEqual(-2.3);
    expect(ticks.at(-1)!).toBeLessThanOrEqual(2.6);
    expect(ticks).toContain(0);
  });
});
