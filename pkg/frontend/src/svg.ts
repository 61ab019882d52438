/**
 * Static SVG rendering of bar-chart specs. Pure string building: identical
 * specs yield identical bytes (no timestamps, no randomness).
 */

import { Bar, BarChartSpec } from "./charts";

const GROUP_COLORS: Record<string, string> = {
    default: "#4878a8",
    agent: "#4878a8",
    gain: "#2e8b57",
    loss: "#c0392b",
};

const LEFT = 170;
const BAR_HEIGHT = 18;
const BAR_GAP = 6;
const PLOT_WIDTH = 560;
const TOP = 48;

function escapeXml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

function barColor(bar: Bar): string {
    return GROUP_COLORS[bar.group] ?? GROUP_COLORS.default;
}

export function renderBarChart(spec: BarChartSpec): string {
    const maxAbs = Math.max(1e-12, ...spec.bars.map((b) => Math.abs(b.value)));
    const height = TOP + spec.bars.length * (BAR_HEIGHT + BAR_GAP) + 40;
    const width = LEFT + PLOT_WIDTH + 120;
    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
            `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    );
    parts.push(`<text x="${LEFT}" y="20" font-size="14">${escapeXml(spec.title)}</text>`);
    spec.bars.forEach((bar, i) => {
        const y = TOP + i * (BAR_HEIGHT + BAR_GAP);
        const length = (Math.abs(bar.value) / maxAbs) * PLOT_WIDTH;
        const x = bar.value >= 0 ? LEFT : LEFT - length;
        parts.push(
            `<text x="${LEFT - 8}" y="${y + BAR_HEIGHT - 4}" font-size="11" ` +
                `text-anchor="end">${escapeXml(bar.label)}</text>`,
        );
        parts.push(
            `<rect x="${x.toFixed(2)}" y="${y}" width="${length.toFixed(2)}" ` +
                `height="${BAR_HEIGHT}" fill="${barColor(bar)}"/>`,
        );
        parts.push(
            `<text x="${(LEFT + length + 6).toFixed(2)}" y="${y + BAR_HEIGHT - 4}" ` +
                `font-size="11">${bar.value.toPrecision(4)}</text>`,
        );
    });
    parts.push(
        `<text x="${LEFT}" y="${height - 12}" font-size="11" fill="#555">` +
            `${escapeXml(spec.valueLabel)}</text>`,
    );
    parts.push("</svg>");
    return parts.join("\n");
}
