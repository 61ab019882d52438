/**
 * Chart specifications: the data-inspection layer between input files and
 * SVG. Tests assert on these specs; rendering consumes them unchanged.
 */

import { MetricsRow } from "./csv";

export interface Bar {
    label: string;
    value: number;
    /** render color group, e.g. "agent" | "gain" | "loss" | "default" */
    group: string;
}

export interface BarChartSpec {
    title: string;
    /** horizontal bars, drawn top to bottom in array order */
    bars: Bar[];
    valueLabel: string;
}

/** One bar per (strategy, params) cohort: mean efficiency across its runs,
 * longest bar first. */
export function efficiencyChart(rows: MetricsRow[]): BarChartSpec {
    if (rows.length === 0) {
        throw new Error("no metric rows");
    }
    const order: string[] = [];
    const sums = new Map<string, { total: number; count: number }>();
    for (const row of rows) {
        const key = `${row.strategy} ${row.params}`;
        if (!sums.has(key)) {
            sums.set(key, { total: 0, count: 0 });
            order.push(key);
        }
        const entry = sums.get(key)!;
        entry.total += row.efficiency;
        entry.count += 1;
    }
    const bars: Bar[] = order.map((key) => {
        const { total, count } = sums.get(key)!;
        return { label: key, value: total / count, group: "default" };
    });
    bars.sort((a, b) => b.value - a.value || a.label.localeCompare(b.label));
    return {
        title: "Mean efficiency (social welfare per unit of invested resource)",
        bars,
        valueLabel: "efficiency",
    };
}

export interface TopicDump {
    agent: number;
    t: number;
    words: string[];
    topics: number[][];
}

export function parseTopicDump(text: string): TopicDump {
    const doc = JSON.parse(text);
    if (!Array.isArray(doc.words) || !Array.isArray(doc.topics)) {
        throw new Error("topic dump must have words[] and topics[][]");
    }
    for (const row of doc.topics) {
        if (row.length !== doc.words.length) {
            throw new Error("topic row length does not match the word list");
        }
    }
    return doc as TopicDump;
}

/** Word-probability bars for one topic; the trailing gain/loss words are
 * flagged so the renderer can set them apart. */
export function topicChart(dump: TopicDump, topicId: number): BarChartSpec {
    if (topicId < 0 || topicId >= dump.topics.length) {
        throw new Error(`topic ${topicId} out of range (model has ${dump.topics.length})`);
    }
    const row = dump.topics[topicId];
    const bars: Bar[] = dump.words.map((word, i) => ({
        label: word,
        value: row[i],
        group: word === "gain" ? "gain" : word === "loss" ? "loss" : "agent",
    }));
    const mass = row.reduce((acc, p) => acc + p, 0);
    return {
        title:
            `Agent ${dump.agent}, topic ${topicId} at t=${dump.t} ` +
            `(probability mass ${mass.toFixed(3)})`,
        bars,
        valueLabel: "word probability",
    };
}
