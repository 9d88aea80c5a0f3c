/** Readers and validation for the solver CLI's CSV/JSON output schema. */

import * as fs from "node:fs";

export const SCHEMA_VERSION = 1;

export class SchemaMismatchError extends Error {}
export class EmptyWindowError extends Error {}

export type FigureKind = "threshold_loglog" | "ratio_panel" | "dsf_band";

export interface PlotSpec {
    input_csv: string;
    input_sidecar: string;
    figure_kind: FigureKind;
    out_path: string;
}

export interface SpectralRow {
    channel: string;
    xi: number;
    k: number;
    omega: number;
    domega: number;
    A_finiteL: number;
    A_continuum: number;
    rel_dev: number;
}

export interface SideFit {
    fitted_slope: number;
    analytic_slope: number;
    log_amplitude: number;
    n_bins: number;
    window: [number, number];
    decades: number;
}

export interface SpectralSeriesEntry {
    k: number;
    threshold: number;
    mu: number;
    analytic_slope: number;
    alpha: number;
    fits: { positive?: SideFit; negative?: SideFit };
    amplitude_ratio?: { fitted?: number; analytic: number };
}

export interface SpectralSidecar {
    schema_version: number;
    kind: "spectral";
    channel: string;
    xi: number;
    series: SpectralSeriesEntry[];
}

export interface DsfRow {
    omega: number;
    value: number;
}

export interface DsfSidecar {
    schema_version: number;
    kind: "dsf";
    xi: number;
    k: number;
    band: [number, number];
    height: number;
    integral: number;
}

const SPECTRAL_COLUMNS = ["channel", "xi", "k", "omega", "domega", "A_finiteL", "A_continuum", "rel_dev"];
const DSF_COLUMNS = ["omega", "value"];

function parseNumber(text: string, context: string): number {
    const value = Number(text);
    if (!Number.isFinite(value)) {
        throw new SchemaMismatchError(`non-finite numeric field ${context}: ${text}`);
    }
    return value;
}

function readCsvLines(path: string, columns: string[]): string[][] {
    const text = fs.readFileSync(path, "utf-8");
    const lines = text.split("\n").filter((line) => line.length > 0);
    if (lines.length < 2) {
        throw new SchemaMismatchError(`${path}: no data rows`);
    }
    const header = lines[0].split(",");
    if (header.length !== columns.length || !columns.every((c, i) => header[i] === c)) {
        throw new SchemaMismatchError(
            `${path}: expected columns ${columns.join(",")} but found ${lines[0]}`);
    }
    return lines.slice(1).map((line) => line.split(","));
}

export function readSpectralCsv(path: string): SpectralRow[] {
    return readCsvLines(path, SPECTRAL_COLUMNS).map((f, i) => ({
        channel: f[0],
        xi: parseNumber(f[1], `xi row ${i}`),
        k: parseNumber(f[2], `k row ${i}`),
        omega: parseNumber(f[3], `omega row ${i}`),
        domega: parseNumber(f[4], `domega row ${i}`),
        A_finiteL: parseNumber(f[5], `A_finiteL row ${i}`),
        A_continuum: parseNumber(f[6], `A_continuum row ${i}`),
        rel_dev: parseNumber(f[7], `rel_dev row ${i}`),
    }));
}

export function readDsfCsv(path: string): DsfRow[] {
    return readCsvLines(path, DSF_COLUMNS).map((f, i) => ({
        omega: parseNumber(f[0], `omega row ${i}`),
        value: parseNumber(f[1], `value row ${i}`),
    }));
}

function readJson(path: string): Record<string, unknown> {
    let doc: unknown;
    try {
        doc = JSON.parse(fs.readFileSync(path, "utf-8"));
    } catch (err) {
        throw new SchemaMismatchError(`${path}: ${String(err)}`);
    }
    if (typeof doc !== "object" || doc === null) {
        throw new SchemaMismatchError(`${path}: sidecar must be a JSON object`);
    }
    return doc as Record<string, unknown>;
}

export function readSpectralSidecar(path: string): SpectralSidecar {
    const doc = readJson(path);
    if (doc.schema_version !== SCHEMA_VERSION) {
        throw new SchemaMismatchError(
            `${path}: schema_version ${String(doc.schema_version)} != ${SCHEMA_VERSION}`);
    }
    if (doc.kind !== "spectral" || !Array.isArray(doc.series) || doc.series.length === 0) {
        throw new SchemaMismatchError(`${path}: not a spectral sidecar`);
    }
    return doc as unknown as SpectralSidecar;
}

export function readDsfSidecar(path: string): DsfSidecar {
    const doc = readJson(path);
    if (doc.schema_version !== SCHEMA_VERSION) {
        throw new SchemaMismatchError(
            `${path}: schema_version ${String(doc.schema_version)} != ${SCHEMA_VERSION}`);
    }
    if (doc.kind !== "dsf") {
        throw new SchemaMismatchError(`${path}: not a dsf sidecar`);
    }
    return doc as unknown as DsfSidecar;
}

const FIGURE_KINDS: FigureKind[] = ["threshold_loglog", "ratio_panel", "dsf_band"];

export function readPlotSpec(path: string): PlotSpec {
    const doc = readJson(path);
    for (const field of ["input_csv", "input_sidecar", "figure_kind", "out_path"]) {
        if (typeof doc[field] !== "string") {
            throw new SchemaMismatchError(`plot spec ${path}: missing string field '${field}'`);
        }
    }
    const spec = doc as unknown as PlotSpec;
    if (!FIGURE_KINDS.includes(spec.figure_kind)) {
        throw new SchemaMismatchError(
            `plot spec ${path}: figure_kind must be one of ${FIGURE_KINDS.join(", ")}`);
    }
    if (!spec.out_path.endsWith(".svg")) {
        throw new SchemaMismatchError("out_path must end in .svg (vector output)");
    }
    for (const input of [spec.input_csv, spec.input_sidecar]) {
        if (!fs.existsSync(input)) {
            throw new SchemaMismatchError(`referenced file does not exist: ${input}`);
        }
    }
    return spec;
}
