export { MetricsRow, parseMetricsCsv, METRICS_HEADER } from "./csv";
export {
    Bar,
    BarChartSpec,
    TopicDump,
    efficiencyChart,
    parseTopicDump,
    topicChart,
} from "./charts";
export { renderBarChart } from "./svg";
