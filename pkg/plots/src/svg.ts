/** Minimal deterministic SVG scene building: scales, axes, markers, text. */

export interface Margins {
    left: number;
    right: number;
    top: number;
    bottom: number;
}

export const WIDTH = 760;
export const HEIGHT = 520;
export const MARGINS: Margins = { left: 72, right: 24, top: 44, bottom: 56 };

export type Scale = (value: number) => number;

const px = (value: number): string => value.toFixed(2);

export function logScale(min: number, max: number, rangeLo: number, rangeHi: number): Scale {
    const lmin = Math.log10(min);
    const lmax = Math.log10(max);
    return (v) => rangeLo + ((Math.log10(v) - lmin) / (lmax - lmin)) * (rangeHi - rangeLo);
}

export function linearScale(min: number, max: number, rangeLo: number, rangeHi: number): Scale {
    return (v) => rangeLo + ((v - min) / (max - min)) * (rangeHi - rangeLo);
}

export function decadeTicks(min: number, max: number): number[] {
    const ticks: number[] = [];
    for (let e = Math.ceil(Math.log10(min) - 1e-9); e <= Math.floor(Math.log10(max) + 1e-9); e++) {
        ticks.push(Math.pow(10, e));
    }
    return ticks;
}

export function linearTicks(min: number, max: number, count: number): number[] {
    const ticks: number[] = [];
    for (let i = 0; i < count; i++) {
        ticks.push(min + ((max - min) * i) / (count - 1));
    }
    return ticks;
}

const tickLabel = (v: number): string => {
    const e = Math.log10(Math.abs(v));
    if (v !== 0 && (e >= 4 || e <= -3)) {
        return v.toExponential(0);
    }
    return String(Number(v.toPrecision(4)));
};

export class Scene {
    private parts: string[] = [];

    rect(x: number, y: number, w: number, h: number, fill: string, cls = ""): void {
        this.parts.push(
            `<rect x="${px(x)}" y="${px(y)}" width="${px(w)}" height="${px(h)}"` +
            ` fill="${fill}"${cls ? ` class="${cls}"` : ""}/>`);
    }

    line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
        this.parts.push(
            `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}"` +
            ` stroke="${stroke}" stroke-width="${width}"/>`);
    }

    circle(x: number, y: number, r: number, fill: string, cls: string): void {
        this.parts.push(
            `<circle cx="${px(x)}" cy="${px(y)}" r="${r}" fill="${fill}" class="${cls}"/>`);
    }

    square(x: number, y: number, half: number, fill: string, cls: string): void {
        this.rect(x - half, y - half, 2 * half, 2 * half, fill, cls);
    }

    polyline(points: Array<[number, number]>, stroke: string, cls: string): void {
        const body = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
        this.parts.push(
            `<polyline points="${body}" fill="none" stroke="${stroke}"` +
            ` stroke-width="1.5" class="${cls}"/>`);
    }

    text(x: number, y: number, content: string, opts: { anchor?: string; size?: number; cls?: string } = {}): void {
        const anchor = opts.anchor ?? "start";
        const size = opts.size ?? 12;
        this.parts.push(
            `<text x="${px(x)}" y="${px(y)}" font-size="${size}" font-family="monospace"` +
            ` text-anchor="${anchor}"${opts.cls ? ` class="${opts.cls}"` : ""}>` +
            `${escapeXml(content)}</text>`);
    }

    xAxisLog(scale: Scale, min: number, max: number, label: string): void {
        const y0 = HEIGHT - MARGINS.bottom;
        this.line(MARGINS.left, y0, WIDTH - MARGINS.right, y0, "#222");
        for (const t of decadeTicks(min, max)) {
            const x = scale(t);
            this.line(x, y0, x, y0 + 5, "#222");
            this.text(x, y0 + 20, tickLabel(t), { anchor: "middle" });
        }
        this.text((MARGINS.left + WIDTH - MARGINS.right) / 2, HEIGHT - 12, label, { anchor: "middle" });
    }

    yAxisLog(scale: Scale, min: number, max: number, label: string): void {
        const x0 = MARGINS.left;
        this.line(x0, MARGINS.top, x0, HEIGHT - MARGINS.bottom, "#222");
        for (const t of decadeTicks(min, max)) {
            const y = scale(t);
            this.line(x0 - 5, y, x0, y, "#222");
            this.text(x0 - 8, y + 4, tickLabel(t), { anchor: "end" });
        }
        this.text(14, MARGINS.top - 14, label);
    }

    xAxisLinear(scale: Scale, min: number, max: number, label: string, count = 6): void {
        const y0 = HEIGHT - MARGINS.bottom;
        this.line(MARGINS.left, y0, WIDTH - MARGINS.right, y0, "#222");
        for (const t of linearTicks(min, max, count)) {
            const x = scale(t);
            this.line(x, y0, x, y0 + 5, "#222");
            this.text(x, y0 + 20, tickLabel(t), { anchor: "middle" });
        }
        this.text((MARGINS.left + WIDTH - MARGINS.right) / 2, HEIGHT - 12, label, { anchor: "middle" });
    }

    yAxisLinear(scale: Scale, min: number, max: number, label: string, count = 5): void {
        const x0 = MARGINS.left;
        this.line(x0, MARGINS.top, x0, HEIGHT - MARGINS.bottom, "#222");
        for (const t of linearTicks(min, max, count)) {
            const y = scale(t);
            this.line(x0 - 5, y, x0, y, "#222");
            this.text(x0 - 8, y + 4, tickLabel(t), { anchor: "end" });
        }
        this.text(14, MARGINS.top - 14, label);
    }

    render(title: string): string {
        return [
            `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}"` +
            ` viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
            `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
            `<text x="${px(WIDTH / 2)}" y="24" font-size="15" font-family="monospace"` +
            ` text-anchor="middle">${escapeXml(title)}</text>`,
            ...this.parts,
            "</svg>",
            "",
        ].join("\n");
    }
}

function escapeXml(text: string): string {
    return text
        .replaceAll("&", "&amp;")
        .replaceAll("<", "&lt;")
        .replaceAll(">", "&gt;")
        .replaceAll('"', "&quot;");
}
