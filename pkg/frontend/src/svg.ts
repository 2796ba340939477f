/**
 * Minimal deterministic SVG chart renderer (no DOM, no timestamps, no
 * randomness): identical inputs produce identical bytes.
 *
 * Each curve is a `<path class="curve">` carrying its label and the raw data
 * values in `data-label` / `data-points` attributes, so downstream checks can
 * read back exactly what was plotted without rasterizing.
 */

export interface Series {
  label: string;
  color: string;
  x: number[];
  y: number[];
  dash?: string;
}

export interface GuideLine {
  y: number;
  label: string;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  yRange?: [number, number];
  width?: number;
  height?: number;
}

const MARGIN = { left: 76, right: 24, top: 48, bottom: 58 } as const;
const GRID_COLOR = "#dddddd";
const AXIS_COLOR = "#333333";
const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function px(value: number): string {
  return value.toFixed(2);
}

/** 1-2-5 tick positions covering [lo, hi], about `target` of them. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  const rawStep = span / Math.max(1, target);
  const power = Math.floor(Math.log10(rawStep));
  const base = 10 ** power;
  const mantissa = rawStep / base;
  const nice = mantissa <= 1 ? 1 : mantissa <= 2 ? 2 : mantissa <= 5 ? 5 : 10;
  const step = nice * base;
  const ticks: number[] = [];
  const decimals = Math.max(0, -Math.floor(Math.log10(step)) + 1);
  for (let k = Math.ceil(lo / step - 1e-9); k * step <= hi + 1e-9 * span; k++) {
    ticks.push(Number((k * step).toFixed(decimals)));
  }
  return ticks;
}

function tickLabel(value: number): string {
  if (value !== 0 && (Math.abs(value) >= 1e5 || Math.abs(value) < 1e-4)) {
    return value.toExponential(1);
  }
  return String(value);
}

interface Extent {
  lo: number;
  hi: number;
}

function extent(values: number[]): Extent {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === Infinity) {
    throw new Error("no finite values to scale");
  }
  if (lo === hi) {
    const pad = Math.max(1, Math.abs(lo) * 0.05);
    return { lo: lo - pad, hi: hi + pad };
  }
  return { lo, hi };
}

function padExtent(e: Extent, fraction: number): Extent {
  const pad = (e.hi - e.lo) * fraction;
  return { lo: e.lo - pad, hi: e.hi + pad };
}

export function renderChart(
  spec: ChartSpec,
  series: Series[],
  guides: GuideLine[] = [],
): string {
  const width = spec.width ?? 720;
  const height = spec.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  for (const s of series) {
    if (s.x.length === 0) {
      throw new Error(`series "${s.label}" has no plottable points`);
    }
  }

  const xExt = extent(series.flatMap((s) => s.x));
  const yExt = spec.yRange
    ? { lo: spec.yRange[0], hi: spec.yRange[1] }
    : padExtent(
        extent([...series.flatMap((s) => s.y), ...guides.map((g) => g.y)]),
        0.05,
      );

  const sx = (v: number) => MARGIN.left + ((v - xExt.lo) / (xExt.hi - xExt.lo)) * plotW;
  const sy = (v: number) => MARGIN.top + (1 - (v - yExt.lo) / (yExt.hi - yExt.lo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);

  // grid and ticks
  for (const t of niceTicks(xExt.lo, xExt.hi)) {
    const x = px(sx(t));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" ` +
        `stroke="${GRID_COLOR}" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" ` +
        `font-size="12" ${FONT} fill="${AXIS_COLOR}">${esc(tickLabel(t))}</text>`,
    );
  }
  for (const t of niceTicks(yExt.lo, yExt.hi)) {
    const y = px(sy(t));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" ` +
        `stroke="${GRID_COLOR}" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" ` +
        `font-size="12" ${FONT} fill="${AXIS_COLOR}">${esc(tickLabel(t))}</text>`,
    );
  }

  // frame
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="${AXIS_COLOR}" stroke-width="1"/>`,
  );

  // guide lines under the curves
  for (const g of guides) {
    const y = px(sy(g.y));
    parts.push(
      `<line class="guide" data-level="${String(g.y)}" x1="${MARGIN.left}" y1="${y}" ` +
        `x2="${MARGIN.left + plotW}" y2="${y}" stroke="#888888" stroke-width="1.2" ` +
        `stroke-dasharray="6 4"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left + plotW - 6}" y="${px(sy(g.y) - 5)}" text-anchor="end" ` +
        `font-size="11" ${FONT} fill="#666666">${esc(g.label)}</text>`,
    );
  }

  // curves
  for (const s of series) {
    const d = s.x
      .map((xv, i) => `${i === 0 ? "M" : "L"} ${px(sx(xv))},${px(sy(s.y[i]!))}`)
      .join(" ");
    const points = s.x.map((xv, i) => `${String(xv)}:${String(s.y[i])}`).join(" ");
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<path class="curve" data-label="${esc(s.label)}" data-points="${esc(points)}" ` +
        `fill="none" stroke="${s.color}" stroke-width="1.8"${dash} d="${d}"/>`,
    );
  }

  // legend (top-right, inside the frame)
  series.forEach((s, i) => {
    const y = MARGIN.top + 16 + 18 * i;
    const x0 = MARGIN.left + plotW - 150;
    parts.push(
      `<line x1="${x0}" y1="${y}" x2="${x0 + 26}" y2="${y}" stroke="${s.color}" ` +
        `stroke-width="1.8"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`,
    );
    parts.push(
      `<text class="legend" x="${x0 + 32}" y="${y + 4}" font-size="12" ${FONT} ` +
        `fill="${AXIS_COLOR}">${esc(s.label)}</text>`,
    );
  });

  // titles and axis labels
  parts.push(
    `<text x="${width / 2}" y="24" text-anchor="middle" font-size="15" ${FONT} ` +
      `fill="${AXIS_COLOR}">${esc(spec.title)}</text>`,
  );
  parts.push(
    `<text class="x-label" x="${MARGIN.left + plotW / 2}" y="${height - 14}" ` +
      `text-anchor="middle" font-size="13" ${FONT} fill="${AXIS_COLOR}">` +
      `${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text class="y-label" x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `font-size="13" ${FONT} fill="${AXIS_COLOR}" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${esc(spec.yLabel)}</text>`,
  );

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
