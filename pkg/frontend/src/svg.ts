/**
 * Deterministic SVG renderer for the grouped-bar figure model.
 *
 * Every bar <rect> carries data-policy / data-ps / data-value attributes
 * with the untouched model values, so the rendered file embeds its own
 * data model and can be verified without rasterizing anything.
 */

import { Bar, FigureModel, Panel } from "./figure.js";

const PANEL_W = 440;
const PANEL_H = 320;
const MARGIN = { top: 58, right: 18, bottom: 64, left: 64 };
const BAR_COLORS: Record<string, string> = { "0.4": "#d08770", "0.9": "#5e81ac" };

const POLICY_LABELS: Record<string, string> = {
  uniform: "Uniform",
  age: "Age-aware",
  change: "Semantics-aware",
  e2e: "E2E semantics",
};

function fmt(x: number): string {
  return x.toFixed(2);
}

function niceCeiling(maxValue: number): number {
  if (maxValue <= 0) return 1;
  const exp = Math.floor(Math.log10(maxValue));
  const step = Math.pow(10, exp);
  return Math.ceil((maxValue * 1.08) / step) * step;
}

function renderBars(bars: Bar[], x0: number, yMax: number, plotW: number, plotH: number): string[] {
  const groups = [...new Set(bars.map((b) => b.policy))];
  const perGroup = bars.length / groups.length;
  const groupW = plotW / groups.length;
  const barW = (groupW * 0.72) / perGroup;
  const parts: string[] = [];
  bars.forEach((bar, i) => {
    const g = groups.indexOf(bar.policy);
    const slot = i % perGroup;
    const x = x0 + g * groupW + groupW * 0.14 + slot * barW;
    const h = yMax > 0 ? (bar.value / yMax) * plotH : 0;
    const y = MARGIN.top + plotH - h;
    parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(barW * 0.92)}" height="${fmt(h)}" ` +
        `fill="${BAR_COLORS[String(bar.ps)] ?? "#888888"}" ` +
        `data-policy="${bar.policy}" data-ps="${bar.ps}" data-value="${bar.value}"/>`,
    );
  });
  return parts;
}

function renderPanel(panel: Panel, index: number): string[] {
  const x0 = index * PANEL_W + MARGIN.left;
  const plotW = PANEL_W - MARGIN.left - MARGIN.right;
  const plotH = PANEL_H - MARGIN.top - MARGIN.bottom;
  const yMax = niceCeiling(Math.max(...panel.bars.map((b) => b.value)));
  const parts: string[] = [];

  parts.push(
    `<text x="${fmt(index * PANEL_W + PANEL_W / 2)}" y="${fmt(MARGIN.top - 26)}" ` +
      `text-anchor="middle" font-size="14" font-weight="bold">(${panel.tag}) ${panel.title}</text>`,
  );

  // y axis with 5 ticks
  for (let k = 0; k <= 5; k++) {
    const v = (yMax * k) / 5;
    const y = MARGIN.top + plotH - (plotH * k) / 5;
    parts.push(
      `<line x1="${fmt(x0)}" y1="${fmt(y)}" x2="${fmt(x0 + plotW)}" y2="${fmt(y)}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${fmt(x0 - 8)}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">` +
        `${Number(v.toPrecision(3))}</text>`,
    );
  }
  parts.push(
    `<line x1="${fmt(x0)}" y1="${fmt(MARGIN.top)}" x2="${fmt(x0)}" ` +
      `y2="${fmt(MARGIN.top + plotH)}" stroke="#333333" stroke-width="1"/>`,
    `<line x1="${fmt(x0)}" y1="${fmt(MARGIN.top + plotH)}" x2="${fmt(x0 + plotW)}" ` +
      `y2="${fmt(MARGIN.top + plotH)}" stroke="#333333" stroke-width="1"/>`,
  );

  parts.push(...renderBars(panel.bars, x0, yMax, plotW, plotH));

  const groups = [...new Set(panel.bars.map((b) => b.policy))];
  const groupW = plotW / groups.length;
  groups.forEach((policy, g) => {
    parts.push(
      `<text x="${fmt(x0 + g * groupW + groupW / 2)}" y="${fmt(MARGIN.top + plotH + 18)}" ` +
        `text-anchor="middle" font-size="11">${POLICY_LABELS[policy] ?? policy}</text>`,
    );
  });
  return parts;
}

export function renderSvg(model: FigureModel): string {
  const width = PANEL_W * model.panels.length;
  const height = PANEL_H;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`,
    `<text x="${fmt(width / 2)}" y="18" text-anchor="middle" font-size="15" font-weight="bold">` +
      `${model.title}</text>`,
  ];
  model.panels.forEach((panel, i) => parts.push(...renderPanel(panel, i)));

  // legend: one swatch per channel quality
  const legendX = width / 2 - 90;
  const legendY = height - 22;
  Object.entries(BAR_COLORS).forEach(([ps, color], i) => {
    const x = legendX + i * 110;
    parts.push(
      `<rect x="${fmt(x)}" y="${fmt(legendY - 10)}" width="14" height="14" fill="${color}"/>`,
      `<text x="${fmt(x + 20)}" y="${fmt(legendY + 2)}" font-size="12">Ps = ${ps}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
