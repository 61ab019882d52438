#!/usr/bin/env node
/**
 * plots efficiency --in metrics.csv --out fig2.svg
 * plots topic --in topics_a7_t500.json --topic 3 --out fig1a.svg
 */

import * as fs from "fs";

import { efficiencyChart, parseTopicDump, topicChart } from "./charts";
import { parseMetricsCsv } from "./csv";
import { renderBarChart } from "./svg";

function parseArgs(argv: string[]): Map<string, string> {
    const args = new Map<string, string>();
    for (let i = 0; i < argv.length; i += 2) {
        const key = argv[i];
        if (!key.startsWith("--") || i + 1 >= argv.length) {
            throw new Error(`expected --flag value pairs, got ${argv.join(" ")}`);
        }
        args.set(key.slice(2), argv[i + 1]);
    }
    return args;
}

function need(args: Map<string, string>, key: string): string {
    const value = args.get(key);
    if (value === undefined) {
        throw new Error(`missing --${key}`);
    }
    return value;
}

export function main(argv: string[]): number {
    const [command, ...rest] = argv;
    if (command !== "efficiency" && command !== "topic") {
        process.stderr.write(
            "usage: plots efficiency --in metrics.csv --out fig.svg\n" +
                "       plots topic --in topics_aN_tT.json --topic K --out fig.svg\n",
        );
        return 2;
    }
    const args = parseArgs(rest);
    const input = fs.readFileSync(need(args, "in"), "utf8");
    let svg: string;
    if (command === "efficiency") {
        svg = renderBarChart(efficiencyChart(parseMetricsCsv(input)));
    } else {
        const topicId = Number(need(args, "topic"));
        if (!Number.isInteger(topicId)) {
            throw new Error("--topic must be an integer");
        }
        svg = renderBarChart(topicChart(parseTopicDump(input), topicId));
    }
    const out = need(args, "out");
    fs.writeFileSync(out, svg + "\n");
    process.stdout.write(`wrote ${out}\n`);
    return 0;
}

if (require.main === module) {
    try {
        process.exitCode = main(process.argv.slice(2));
    } catch (err) {
        process.stderr.write(`${(err as Error).message}\n`);
        process.exitCode = 1;
    }
}
