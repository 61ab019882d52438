/**
 * Reader for the simulator's metrics.csv:
 * run_id,strategy,params,sw,participation,efficiency,time_s
 */

export interface MetricsRow {
    runId: string;
    strategy: string;
    params: string;
    sw: number;
    participation: number;
    efficiency: number;
    timeS: number;
}

export const METRICS_HEADER = "run_id,strategy,params,sw,participation,efficiency,time_s";

export function parseMetricsCsv(text: string): MetricsRow[] {
    const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
    if (lines.length === 0) {
        throw new Error("metrics.csv is empty");
    }
    if (lines[0] !== METRICS_HEADER) {
        throw new Error(`unexpected metrics.csv header: ${lines[0]}`);
    }
    return lines.slice(1).map((line, i) => {
        const parts = line.split(",");
        if (parts.length !== 7) {
            throw new Error(`metrics.csv line ${i + 2}: expected 7 fields, got ${parts.length}`);
        }
        const [runId, strategy, params, sw, participation, efficiency, timeS] = parts;
        const row: MetricsRow = {
            runId,
            strategy,
            params,
            sw: Number(sw),
            participation: Number(participation),
            efficiency: Number(efficiency),
            timeS: Number(timeS),
        };
        for (const key of ["sw", "participation", "efficiency", "timeS"] as const) {
            if (!Number.isFinite(row[key])) {
                throw new Error(`metrics.csv line ${i + 2}: bad number in ${key}`);
            }
        }
        return row;
    });
}
