import assert from "node:assert/strict";
import { test } from "node:test";

import { BarChartSpec } from "../src/charts";
import { renderBarChart } from "../src/svg";

const SPEC: BarChartSpec = {
    title: "demo <chart>",
    bars: [
        { label: "overpro", value: 0.08, group: "default" },
        { label: "greedy", value: 0.04, group: "default" },
        { label: "loss word", value: 0.02, group: "loss" },
    ],
    valueLabel: "efficiency",
};

test("render is deterministic", () => {
    assert.equal(renderBarChart(SPEC), renderBarChart(SPEC));
});

test("bar lengths scale with values", () => {
    const svg = renderBarChart(SPEC);
    const widths = [...svg.matchAll(/<rect[^>]*width="([0-9.]+)"/g)].map((m) => Number(m[1]));
    assert.equal(widths.length, 3);
    assert.ok(Math.abs(widths[0] / widths[1] - 2.0) < 1e-6);
    assert.ok(widths[1] > widths[2]);
});

test("equal values give equal-length bars", () => {
    const spec: BarChartSpec = {
        title: "equal",
        bars: [
            { label: "a", value: 0.5, group: "default" },
            { label: "b", value: 0.5, group: "default" },
        ],
        valueLabel: "x",
    };
    const svg = renderBarChart(spec);
    const widths = [...svg.matchAll(/<rect[^>]*width="([0-9.]+)"/g)].map((m) => Number(m[1]));
    assert.equal(widths[0], widths[1]);
});

test("group colors distinguish gain and loss", () => {
    const svg = renderBarChart(SPEC);
    assert.ok(svg.includes("#c0392b"));
    assert.ok(svg.includes("#4878a8"));
});

test("xml special characters are escaped", () => {
    const svg = renderBarChart(SPEC);
    assert.ok(svg.includes("demo &lt;chart&gt;"));
    assert.ok(!svg.includes("demo <chart>"));
});
