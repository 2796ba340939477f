export { CsvError, column, parseCsv, requireColumns, type Table } from "./csv.js";
export {
  renderFigure,
  spectrumFigureSpec,
  sweepFigureSpec,
  type FigureSpec,
  type SweepKind,
} from "./figures.js";
export {
  niceTicks,
  renderChart,
  type ChartSpec,
  type GuideLine,
  type Series,
} from "./svg.js";
export { EXIT_DATA, EXIT_OK, EXIT_USAGE, main } from "./cli.js";
