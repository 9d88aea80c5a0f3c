/**
 * plot --spec <json>
 *
 * Renders one figure from the solver CLI's CSV/JSON outputs, as described
 * by a plot-spec JSON file:
 *
 *   { "input_csv": "...", "input_sidecar": "...",
 *     "figure_kind": "threshold_loglog" | "ratio_panel" | "dsf_band",
 *     "out_path": "figure.svg" }
 *
 * Exit codes: 0 success, 2 spec/schema problem, 3 empty fitted window.
 */

import { EmptyWindowError, SchemaMismatchError, readPlotSpec } from "./schema.js";
import { renderSpec } from "./render.js";

export function runCli(argv: string[]): number {
    let specPath: string | undefined;
    for (let i = 0; i < argv.length; i++) {
        const arg = argv[i];
        if (arg === "--spec") {
            specPath = argv[i + 1];
            i += 1;
        } else if (arg.startsWith("--spec=")) {
            specPath = arg.slice("--spec=".length);
        } else if (arg === "plot") {
            // tolerated subcommand prefix
        } else {
            console.error(`unknown argument: ${arg}`);
            return 2;
        }
    }
    if (!specPath) {
        console.error("usage: plot --spec <plotspec.json>");
        return 2;
    }
    try {
        const spec = readPlotSpec(specPath);
        renderSpec(spec);
        console.error(`wrote ${spec.out_path}`);
        return 0;
    } catch (err) {
        if (err instanceof EmptyWindowError) {
            console.error(`empty fitted window: ${err.message}`);
            return 3;
        }
        if (err instanceof SchemaMismatchError) {
            console.error(`schema mismatch: ${err.message}`);
            return 2;
        }
        console.error(String(err));
        return 2;
    }
}

const entry = process.argv[1];
if (entry && (entry.endsWith("cli.js") || entry.endsWith("cli.ts"))) {
    process.exit(runCli(process.argv.slice(2)));
}
