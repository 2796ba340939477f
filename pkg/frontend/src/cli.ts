#!/usr/bin/env node
/**
 * plotkit <figure3|figure4|spectrum> --csv <path> --out <path>
 *
 * Renders an engine CSV as a deterministic SVG figure.  Exit codes:
 * 0 success, 1 unreadable/invalid input data, 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { CsvError } from "./csv.js";
import {
  renderFigure,
  spectrumFigureSpec,
  sweepFigureSpec,
  type FigureSpec,
} from "./figures.js";

export const EXIT_OK = 0;
export const EXIT_DATA = 1;
export const EXIT_USAGE = 2;

const USAGE = "usage: plotkit <figure3|figure4|spectrum> --csv <path> --out <path>";

export interface Io {
  stderr: (text: string) => void;
}

const processIo: Io = {
  stderr: (text) => process.stderr.write(text),
};

interface Args {
  command: "figure3" | "figure4" | "spectrum";
  csv: string;
  out: string;
}

function parseArgs(argv: string[]): Args | string {
  const [command, ...rest] = argv;
  if (command !== "figure3" && command !== "figure4" && command !== "spectrum") {
    return `unknown command "${command ?? ""}"`;
  }
  const flags = new Map<string, string>();
  for (let i = 0; i < rest.length; i += 2) {
    const flag = rest[i]!;
    const value = rest[i + 1];
    if ((flag !== "--csv" && flag !== "--out") || value === undefined) {
      return `unexpected argument "${flag}"`;
    }
    flags.set(flag, value);
  }
  const csv = flags.get("--csv");
  const out = flags.get("--out");
  if (csv === undefined || out === undefined) {
    return "both --csv and --out are required";
  }
  return { command, csv, out };
}

export function main(argv: string[], io: Io = processIo): number {
  const args = parseArgs(argv);
  if (typeof args === "string") {
    io.stderr(`${args}\n${USAGE}\n`);
    return EXIT_USAGE;
  }

  let csvText: string;
  try {
    csvText = readFileSync(args.csv, "utf8");
  } catch (error) {
    io.stderr(`cannot read ${args.csv}: ${(error as Error).message}\n`);
    return EXIT_DATA;
  }

  try {
    const spec: FigureSpec =
      args.command === "spectrum"
        ? spectrumFigureSpec(args.csv, args.out, csvText)
        : sweepFigureSpec(args.command, args.csv, args.out);
    writeFileSync(spec.outputPath, renderFigure(spec, csvText), "utf8");
  } catch (error) {
    if (error instanceof CsvError) {
      io.stderr(`invalid input ${args.csv}: ${error.message}\n`);
      return EXIT_DATA;
    }
    throw error;
  }
  return EXIT_OK;
}

if (
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(main(process.argv.slice(2)));
}
