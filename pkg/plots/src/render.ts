/** The three figure kinds rendered from the solver's CSV/JSON outputs. */

import * as fs from "node:fs";

import {
    DsfRow,
    DsfSidecar,
    EmptyWindowError,
    PlotSpec,
    SpectralRow,
    SpectralSidecar,
    readDsfCsv,
    readDsfSidecar,
    readSpectralCsv,
    readSpectralSidecar,
} from "./schema.js";
import { HEIGHT, MARGINS, Scene, WIDTH, linearScale, logScale } from "./svg.js";

const POS_COLOR = "#1f77b4";
const NEG_COLOR = "#d62728";
const CURVE_COLOR = "#444444";

interface Extent {
    min: number;
    max: number;
}

function extend(ext: Extent | null, v: number): Extent {
    if (ext === null) return { min: v, max: v };
    return { min: Math.min(ext.min, v), max: Math.max(ext.max, v) };
}

function padLog(ext: Extent): Extent {
    return { min: ext.min / 1.5, max: ext.max * 1.5 };
}

/**
 * Log-log view of the spectral density around the edge: finite-size
 * histogram samples (side encoded by marker: circles above the edge,
 * squares below), continuum closed-form curves, and the fitted-vs-analytic
 * exponent annotation taken verbatim from the sidecar.
 */
export function renderThresholdLoglog(rows: SpectralRow[], sidecar: SpectralSidecar): string {
    const entry = sidecar.series[0];
    const sides = Object.keys(entry.fits) as Array<"positive" | "negative">;
    if (sides.length === 0) {
        throw new EmptyWindowError("sidecar carries no fitted window on either side");
    }

    let xExt: Extent | null = null;
    let yExt: Extent | null = null;
    for (const r of rows) {
        if (r.A_finiteL > 0) {
            xExt = extend(xExt, Math.abs(r.domega));
            yExt = extend(yExt, r.A_finiteL);
        }
        if (r.A_continuum > 0) {
            yExt = extend(yExt, r.A_continuum);
        }
    }
    if (xExt === null || yExt === null) {
        throw new EmptyWindowError("no positive-weight samples to plot");
    }
    const xe = padLog(xExt);
    const ye = padLog(yExt);
    const sx = logScale(xe.min, xe.max, MARGINS.left, WIDTH - MARGINS.right);
    const sy = logScale(ye.min, ye.max, HEIGHT - MARGINS.bottom, MARGINS.top);

    const scene = new Scene();
    scene.xAxisLog(sx, xe.min, xe.max, "|domega|");
    scene.yAxisLog(sy, ye.min, ye.max, "A(omega, k)");

    for (const sign of [1, -1]) {
        const curve = rows
            .filter((r) => Math.sign(r.domega) === sign && r.A_continuum > 0)
            .sort((a, b) => Math.abs(a.domega) - Math.abs(b.domega))
            .map((r): [number, number] => [sx(Math.abs(r.domega)), sy(r.A_continuum)]);
        if (curve.length >= 2) {
            scene.polyline(curve, CURVE_COLOR, sign > 0 ? "curve-pos" : "curve-neg");
        }
    }
    for (const r of rows) {
        if (r.A_finiteL <= 0) continue;
        const x = sx(Math.abs(r.domega));
        const y = sy(r.A_finiteL);
        if (r.domega > 0) {
            scene.circle(x, y, 3.2, POS_COLOR, "pt-pos");
        } else {
            scene.square(x, y, 3.0, NEG_COLOR, "pt-neg");
        }
    }

    let line = 0;
    const annotate = (text: string) => {
        scene.text(MARGINS.left + 10, MARGINS.top + 14 + 16 * line, text, { cls: "annotation" });
        line += 1;
    };
    annotate(`channel ${sidecar.channel}  xi=${String(sidecar.xi)}  k=${String(entry.k)}`);
    const sideLabel = { positive: "above edge", negative: "below edge" };
    for (const side of ["positive", "negative"] as const) {
        const fit = entry.fits[side];
        if (!fit) continue;
        annotate(
            `${sideLabel[side]}: fitted slope ${String(fit.fitted_slope)}` +
            ` vs analytic ${String(fit.analytic_slope)}`);
    }
    if (entry.amplitude_ratio && entry.amplitude_ratio.fitted !== undefined) {
        annotate(
            `side ratio: fitted ${String(entry.amplitude_ratio.fitted)}` +
            ` vs analytic ${String(entry.amplitude_ratio.analytic)}`);
    }
    return scene.render("spectral density near the edge (log-log)");
}

/**
 * Ratio of the spectral density above vs below the edge at matched
 * |domega|, against the fitted and analytic side-amplitude ratios.
 */
export function renderRatioPanel(rows: SpectralRow[], sidecar: SpectralSidecar): string {
    const entry = sidecar.series[0];
    if (!entry.amplitude_ratio) {
        throw new EmptyWindowError("sidecar has no amplitude_ratio (one-sided channel?)");
    }
    const byAbs = new Map<string, { pos?: number; neg?: number }>();
    for (const r of rows) {
        if (r.A_finiteL <= 0) continue;
        const key = Math.abs(r.domega).toPrecision(12);
        const slot = byAbs.get(key) ?? {};
        if (r.domega > 0) slot.pos = r.A_finiteL;
        else slot.neg = r.A_finiteL;
        byAbs.set(key, slot);
    }
    const points: Array<[number, number]> = [];
    for (const [key, slot] of byAbs) {
        if (slot.pos !== undefined && slot.neg !== undefined) {
            points.push([Number(key), slot.pos / slot.neg]);
        }
    }
    points.sort((a, b) => a[0] - b[0]);
    if (points.length < 2) {
        throw new EmptyWindowError("fewer than two matched |domega| pairs across the edge");
    }

    let xExt: Extent | null = null;
    let yExt: Extent | null = null;
    for (const [x, y] of points) {
        xExt = extend(xExt, x);
        yExt = extend(yExt, y);
    }
    const analytic = entry.amplitude_ratio.analytic;
    yExt = extend(yExt!, analytic);
    if (entry.amplitude_ratio.fitted !== undefined) {
        yExt = extend(yExt, entry.amplitude_ratio.fitted);
    }
    const xe = padLog(xExt!);
    const ye = padLog(yExt);
    const sx = logScale(xe.min, xe.max, MARGINS.left, WIDTH - MARGINS.right);
    const sy = logScale(ye.min, ye.max, HEIGHT - MARGINS.bottom, MARGINS.top);

    const scene = new Scene();
    scene.xAxisLog(sx, xe.min, xe.max, "|domega|");
    scene.yAxisLog(sy, ye.min, ye.max, "A(+)/A(-)");
    scene.line(MARGINS.left, sy(analytic), WIDTH - MARGINS.right, sy(analytic), CURVE_COLOR, 1.5);
    for (const [x, y] of points) {
        scene.circle(sx(x), sy(y), 3.2, POS_COLOR, "pt-ratio");
    }
    scene.text(MARGINS.left + 10, MARGINS.top + 14,
        `analytic ratio ${String(analytic)}`, { cls: "annotation" });
    if (entry.amplitude_ratio.fitted !== undefined) {
        scene.text(MARGINS.left + 10, MARGINS.top + 30,
            `fitted ratio ${String(entry.amplitude_ratio.fitted)}`, { cls: "annotation" });
    }
    return scene.render("side-amplitude ratio across the edge");
}

/** The small-momentum density-response band: a flat step between the edges. */
export function renderDsfBand(rows: DsfRow[], sidecar: DsfSidecar): string {
    let xExt: Extent | null = null;
    for (const r of rows) {
        xExt = extend(xExt, r.omega);
    }
    if (xExt === null) {
        throw new EmptyWindowError("no rows to plot");
    }
    const yMax = sidecar.height * 1.25;
    const sx = linearScale(xExt.min, xExt.max, MARGINS.left, WIDTH - MARGINS.right);
    const sy = linearScale(0, yMax, HEIGHT - MARGINS.bottom, MARGINS.top);

    const scene = new Scene();
    const [bandLo, bandHi] = sidecar.band;
    scene.rect(sx(bandLo), MARGINS.top, sx(bandHi) - sx(bandLo),
        HEIGHT - MARGINS.top - MARGINS.bottom, "#eaf1f8", "band");
    scene.xAxisLinear(sx, xExt.min, xExt.max, "omega");
    scene.yAxisLinear(sy, 0, yMax, "S(omega, k)");
    scene.polyline(rows.map((r): [number, number] => [sx(r.omega), sy(r.value)]),
        POS_COLOR, "step");
    scene.text(MARGINS.left + 10, MARGINS.top + 14,
        `height m/(k xi) = ${String(sidecar.height)}`, { cls: "annotation" });
    scene.text(MARGINS.left + 10, MARGINS.top + 30,
        `integral = ${String(sidecar.integral)} (k/xi)`, { cls: "annotation" });
    scene.text(MARGINS.left + 10, MARGINS.top + 46,
        `band [${String(bandLo)}, ${String(bandHi)}]`, { cls: "annotation" });
    return scene.render("density structure factor band");
}

/** Render the figure described by the plot spec and write it to out_path. */
export function renderSpec(spec: PlotSpec): string {
    let svg: string;
    if (spec.figure_kind === "dsf_band") {
        svg = renderDsfBand(readDsfCsv(spec.input_csv), readDsfSidecar(spec.input_sidecar));
    } else {
        const rows = readSpectralCsv(spec.input_csv);
        const sidecar = readSpectralSidecar(spec.input_sidecar);
        svg = spec.figure_kind === "threshold_loglog"
            ? renderThresholdLoglog(rows, sidecar)
            : renderRatioPanel(rows, sidecar);
    }
    fs.writeFileSync(spec.out_path, svg, "utf-8");
    return svg;
}
