/**
 * Pure string renderers for the explorer view.
 *
 * Everything here formats server numbers; nothing recomputes them. Each
 * function takes response documents and returns HTML or SVG text, so the
 * whole presentation layer is testable without a DOM.
 */

import type {
  BoxSummaryDoc,
  QualitativeFlagDoc,
  RiskDoc,
  VariantToken,
  WhatIfResponse,
} from "./api.js";
import { CHAIN_STEPS } from "./api.js";
import { axisFor, boxGlyphSvg, glyphFor } from "./boxplot.js";

// Display formatting only; grouping and rounding never feed back into a number.
const GROUPED = new Intl.NumberFormat("en-US", { maximumFractionDigits: 6 });
const SIGNED = new Intl.NumberFormat("en-US", {
  maximumFractionDigits: 6,
  signDisplay: "exceptZero",
});

export function formatRisk(value: number): string {
  return GROUPED.format(value);
}

export function formatSignedRisk(value: number): string {
  return SIGNED.format(value);
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Headline delta, signed, with the units the server attached. */
export function deltaBanner(response: WhatIfResponse): string {
  const units = escapeHtml(response.ai.units);
  return `${formatSignedRisk(response.delta)} ${units} (${escapeHtml(response.classification)})`;
}

function riskRow(doc: RiskDoc): string {
  const units = escapeHtml(doc.units);
  return [
    `<tr><td>${escapeHtml(doc.variant)}</td>`,
    `<td>${String(doc.overall_probability)}</td>`,
    `<td>${formatRisk(doc.consequence)} ${units}</td>`,
    `<td>${formatRisk(doc.risk)} ${units}</td></tr>`,
  ].join("");
}

export function riskTableHtml(response: WhatIfResponse): string {
  return [
    '<table class="risk-table">',
    "<thead><tr><th>variant</th><th>overall P</th><th>consequence</th><th>expected risk</th></tr></thead>",
    "<tbody>",
    riskRow(response.baseline),
    riskRow(response.ai),
    "</tbody></table>",
  ].join("");
}

export function flagsHtml(flags: QualitativeFlagDoc[]): string {
  if (flags.length === 0) {
    return '<p class="flags-none">no qualitative level changes</p>';
  }
  const items = flags.map((flag) => {
    const cls = flag.flag === "concerning" ? "flag flag-concerning" : "flag";
    const text = `${flag.step} ${flag.field}: ${flag.baseline} -&gt; ${flag.ai} [${flag.flag}]`;
    return `<li class="${cls}" data-step="${escapeHtml(flag.step)}">${text}</li>`;
  });
  return `<ul class="flags">${items.join("")}</ul>`;
}

const PANEL_WIDTH = 150;
const PLOT_TOP = 24;
const PLOT_HEIGHT = 240;
const LABEL_Y = PLOT_TOP + PLOT_HEIGHT + 28;
const COLORS: Record<VariantToken, string> = {
  baseline: "#4c72b0",
  ai_augmented: "#dd8452",
};

function panelSvg(
  label: string,
  baselineBox: BoxSummaryDoc,
  aiBox: BoxSummaryDoc,
  xLeft: number,
): string {
  const axis = axisFor([baselineBox, aiBox], PLOT_TOP, PLOT_HEIGHT);
  const center = xLeft + PANEL_WIDTH / 2;
  return [
    boxGlyphSvg(glyphFor(baselineBox, axis), center - 30, 40, COLORS.baseline),
    boxGlyphSvg(glyphFor(aiBox, axis), center + 30, 40, COLORS.ai_augmented),
    `<text x="${center}" y="${LABEL_Y}" text-anchor="middle" class="panel-label">${escapeHtml(label)}</text>`,
  ].join("\n");
}

/** Side by side per-step and overall box plots for both variants. */
export function comparisonSvg(response: WhatIfResponse): string {
  const keys: string[] = [...CHAIN_STEPS, "overall"];
  const width = keys.length * PANEL_WIDTH;
  const height = LABEL_Y + 12;
  const panels = keys.map((key, i) => {
    const baselineBox = response.box_summaries.baseline[key];
    const aiBox = response.box_summaries.ai_augmented[key];
    if (baselineBox === undefined || aiBox === undefined) {
      throw new Error(`response is missing box summaries for ${key}`);
    }
    return panelSvg(key, baselineBox, aiBox, i * PANEL_WIDTH);
  });
  const legend = [
    `<rect x="8" y="4" width="12" height="12" fill="${COLORS.baseline}"/>`,
    '<text x="24" y="14" class="panel-label">baseline</text>',
    `<rect x="110" y="4" width="12" height="12" fill="${COLORS.ai_augmented}"/>`,
    '<text x="126" y="14" class="panel-label">ai_augmented</text>',
  ].join("");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" role="img">`,
    legend,
    ...panels,
    "</svg>",
  ].join("\n");
}

export function errorPanelHtml(message: string): string {
  return `<div class="error-panel">service error: ${escapeHtml(message)}</div>`;
}

/** Full results view. Every risk figure carries units; disclaimers stay visible. */
export function viewHtml(response: WhatIfResponse): string {
  return [
    `<p class="disclaimer">${escapeHtml(response.disclaimer)}</p>`,
    `<h2 class="delta-banner">${deltaBanner(response)}</h2>`,
    riskTableHtml(response),
    `<p class="disclaimer">${escapeHtml(response.baseline.independence_disclaimer)}</p>`,
    "<h3>step and overall probability distributions</h3>",
    comparisonSvg(response),
    "<h3>qualitative level changes</h3>",
    flagsHtml(response.qualitative_flags),
    `<p class="meta">pair ${escapeHtml(response.pair_id)}, seed ${String(response.seed)}, ${String(response.n_trials)} trials, project revision ${String(response.revision)}</p>`,
  ].join("\n");
}
