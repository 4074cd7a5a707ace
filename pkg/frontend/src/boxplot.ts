/**
 * Box plot glyph geometry.
 *
 * Every coordinate is an affine image of a BoxSummary field under a value
 * axis: y = top + (hi - value) / (hi - lo) * height. The client never sees
 * raw trials, so there is nothing else geometry could be derived from.
 */

import type { BoxSummaryDoc } from "./api.js";

export interface ValueAxis {
  lo: number;
  hi: number;
  top: number;
  height: number;
}

export function yOf(axis: ValueAxis, value: number): number {
  // degenerate domain: every value sits mid-axis
  if (axis.hi === axis.lo) return axis.top + axis.height / 2;
  return axis.top + ((axis.hi - value) / (axis.hi - axis.lo)) * axis.height;
}

/** Axis spanning whiskers and outliers of every box shown on it. */
export function axisFor(boxes: BoxSummaryDoc[], top: number, height: number): ValueAxis {
  let lo = Infinity;
  let hi = -Infinity;
  for (const box of boxes) {
    lo = Math.min(lo, box.whisker_low, ...box.outliers);
    hi = Math.max(hi, box.whisker_high, ...box.outliers);
  }
  return { lo, hi, top, height };
}

export interface BoxGlyph {
  medianY: number;
  q1Y: number;
  q3Y: number;
  whiskerLowY: number;
  whiskerHighY: number;
  outlierYs: number[];
}

export function glyphFor(box: BoxSummaryDoc, axis: ValueAxis): BoxGlyph {
  return {
    medianY: yOf(axis, box.median),
    q1Y: yOf(axis, box.q1),
    q3Y: yOf(axis, box.q3),
    whiskerLowY: yOf(axis, box.whisker_low),
    whiskerHighY: yOf(axis, box.whisker_high),
    outlierYs: box.outliers.map((value) => yOf(axis, value)),
  };
}

const fmt = (value: number): string => String(Math.round(value * 100) / 100);

/** SVG fragment for one box at horizontal center x. */
export function boxGlyphSvg(
  glyph: BoxGlyph,
  x: number,
  width: number,
  color: string,
): string {
  const half = width / 2;
  const cap = width / 3;
  const parts = [
    `<line x1="${fmt(x)}" y1="${fmt(glyph.whiskerLowY)}" x2="${fmt(x)}" y2="${fmt(glyph.q1Y)}" stroke="${color}"/>`,
    `<line x1="${fmt(x)}" y1="${fmt(glyph.q3Y)}" x2="${fmt(x)}" y2="${fmt(glyph.whiskerHighY)}" stroke="${color}"/>`,
    `<line x1="${fmt(x - cap)}" y1="${fmt(glyph.whiskerLowY)}" x2="${fmt(x + cap)}" y2="${fmt(glyph.whiskerLowY)}" stroke="${color}"/>`,
    `<line x1="${fmt(x - cap)}" y1="${fmt(glyph.whiskerHighY)}" x2="${fmt(x + cap)}" y2="${fmt(glyph.whiskerHighY)}" stroke="${color}"/>`,
    `<rect x="${fmt(x - half)}" y="${fmt(glyph.q3Y)}" width="${fmt(width)}" height="${fmt(glyph.q1Y - glyph.q3Y)}" fill="${color}" fill-opacity="0.35" stroke="${color}"/>`,
    `<line x1="${fmt(x - half)}" y1="${fmt(glyph.medianY)}" x2="${fmt(x + half)}" y2="${fmt(glyph.medianY)}" stroke="${color}" stroke-width="2"/>`,
  ];
  for (const cy of glyph.outlierYs) {
    parts.push(`<circle cx="${fmt(x)}" cy="${fmt(cy)}" r="2.5" fill="none" stroke="${color}"/>`);
  }
  return parts.join("\n");
}
