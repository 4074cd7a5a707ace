import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import type { BoxSummaryDoc, WhatIfResponse } from "../src/api.js";
import { axisFor, boxGlyphSvg, glyphFor, yOf } from "../src/boxplot.js";
import type { ValueAxis } from "../src/boxplot.js";

const RECORDED = JSON.parse(
  readFileSync(new URL("./fixtures/whatif_500_1700.json", import.meta.url), "utf-8"),
) as WhatIfResponse;

// every field maps to an exactly representable y on the 0..12 axis below
const BOX: BoxSummaryDoc = {
  n: 9,
  mean: 6,
  median: 6,
  q1: 3,
  q3: 9,
  iqr: 6,
  whisker_low: 0,
  whisker_high: 10.5,
  outliers: [12],
};

// deterministic PRNG for property loops, no dependencies
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe("value axis", () => {
  it("is an affine map: constant slope, exact endpoints", () => {
    const rand = mulberry32(20240816);
    for (let i = 0; i < 200; i++) {
      const lo = rand() * 10 - 5;
      const hi = lo + rand() * 10 + 0.1;
      const axis: ValueAxis = { lo, hi, top: rand() * 50, height: 100 + rand() * 300 };
      expect(yOf(axis, lo)).toBeCloseTo(axis.top + axis.height, 9);
      expect(yOf(axis, hi)).toBeCloseTo(axis.top, 9);
      const a = lo + rand() * (hi - lo);
      const b = lo + rand() * (hi - lo);
      const c = lo + rand() * (hi - lo);
      const slopeAB = (yOf(axis, a) - yOf(axis, b)) / (a - b);
      const slopeBC = (yOf(axis, b) - yOf(axis, c)) / (b - c);
      expect(slopeAB).toBeCloseTo(slopeBC, 6);
      expect(slopeAB).toBeLessThan(0); // larger values sit higher on screen
    }
  });

  it("centers a degenerate domain", () => {
    const axis: ValueAxis = { lo: 0.017, hi: 0.017, top: 24, height: 240 };
    expect(yOf(axis, 0.017)).toBe(24 + 120);
  });

  it("spans whiskers and outliers of every box it carries", () => {
    const axis = axisFor([BOX], 20, 240);
    expect(axis.lo).toBe(0);
    expect(axis.hi).toBe(12);
  });
});

describe("box glyph", () => {
  const axis: ValueAxis = { lo: 0, hi: 12, top: 20, height: 240 };

  it("matches the snapshot of hand-computed coordinates", () => {
    expect(glyphFor(BOX, axis)).toEqual({
      medianY: 140,
      q1Y: 200,
      q3Y: 80,
      whiskerLowY: 260,
      whiskerHighY: 50,
      outlierYs: [20],
    });
  });

  it("maps every coordinate through the same affine axis as the raw fields", () => {
    const rand = mulberry32(7);
    for (let i = 0; i < 100; i++) {
      const q1 = rand();
      const q3 = q1 + rand();
      const median = q1 + rand() * (q3 - q1);
      const box: BoxSummaryDoc = {
        n: 5,
        mean: median,
        median,
        q1,
        q3,
        iqr: q3 - q1,
        whisker_low: q1 - rand(),
        whisker_high: q3 + rand(),
        outliers: [q3 + 2 + rand()],
      };
      const ax = axisFor([box], 10, 300);
      const glyph = glyphFor(box, ax);
      expect(glyph.medianY).toBe(yOf(ax, box.median));
      expect(glyph.q1Y).toBe(yOf(ax, box.q1));
      expect(glyph.q3Y).toBe(yOf(ax, box.q3));
      expect(glyph.whiskerLowY).toBe(yOf(ax, box.whisker_low));
      expect(glyph.whiskerHighY).toBe(yOf(ax, box.whisker_high));
      expect(glyph.outlierYs).toEqual(box.outliers.map((v) => yOf(ax, v)));
      // ordering is preserved by the (decreasing) affine map
      expect(glyph.whiskerHighY).toBeLessThanOrEqual(glyph.q3Y);
      expect(glyph.q3Y).toBeLessThanOrEqual(glyph.medianY);
      expect(glyph.medianY).toBeLessThanOrEqual(glyph.q1Y);
      expect(glyph.q1Y).toBeLessThanOrEqual(glyph.whiskerLowY);
    }
  });

  it("translates and scales with the axis, as an affine image must", () => {
    const glyph = glyphFor(BOX, axis);
    const shifted: ValueAxis = { ...axis, top: axis.top + 37 };
    const shiftedGlyph = glyphFor(BOX, shifted);
    expect(shiftedGlyph.medianY).toBeCloseTo(glyph.medianY + 37, 9);
    expect(shiftedGlyph.q1Y).toBeCloseTo(glyph.q1Y + 37, 9);
    const doubled: ValueAxis = { ...axis, height: axis.height * 2 };
    const doubledGlyph = glyphFor(BOX, doubled);
    expect(doubledGlyph.medianY - doubled.top).toBeCloseTo((glyph.medianY - axis.top) * 2, 9);
  });

  it("renders the recorded degenerate boxes without NaN coordinates", () => {
    const overall = RECORDED.box_summaries.ai_augmented.overall!;
    const ax = axisFor([overall], 24, 240);
    const svg = boxGlyphSvg(glyphFor(overall, ax), 75, 40, "#dd8452");
    expect(svg).not.toContain("NaN");
    expect(svg).toContain("<rect");
    expect(svg).toContain('stroke-width="2"'); // median line present
  });
});
