import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import type { WhatIfResponse } from "../src/api.js";
import {
  comparisonSvg,
  deltaBanner,
  errorPanelHtml,
  flagsHtml,
  formatRisk,
  formatSignedRisk,
  riskTableHtml,
  viewHtml,
} from "../src/render.js";

function loadFixture(name: string): WhatIfResponse {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as WhatIfResponse;
}

const RECORDED = loadFixture("whatif_500_1700.json");
const FLAGGED = loadFixture("whatif_flagged.json");

describe("delta banner", () => {
  it("reads +1,200 with units for the recorded 500/1700 response", () => {
    expect(RECORDED.baseline.risk).toBe(500.0);
    expect(RECORDED.ai.risk).toBe(1700.0000000000002);
    expect(deltaBanner(RECORDED)).toBe("+1,200 deaths (increased)");
  });

  it("reads 0 with units for a no-op delta", () => {
    const noop: WhatIfResponse = { ...RECORDED, delta: 0, classification: "unchanged" };
    expect(deltaBanner(noop)).toBe("0 deaths (unchanged)");
  });

  it("keeps the sign for decreases", () => {
    const down: WhatIfResponse = { ...RECORDED, delta: -300, classification: "decreased" };
    expect(deltaBanner(down)).toBe("-300 deaths (decreased)");
  });
});

describe("number formatting", () => {
  it("groups thousands and drops float noise", () => {
    expect(formatRisk(1700.0000000000002)).toBe("1,700");
    expect(formatRisk(500.0)).toBe("500");
    expect(formatRisk(2121.7721)).toBe("2,121.7721");
  });

  it("signs everything except zero", () => {
    expect(formatSignedRisk(1200.0000000000002)).toBe("+1,200");
    expect(formatSignedRisk(0)).toBe("0");
    expect(formatSignedRisk(-42.5)).toBe("-42.5");
  });
});

describe("risk table", () => {
  it("shows the server numbers with units on every figure", () => {
    const html = riskTableHtml(RECORDED);
    expect(html).toContain("<td>500 deaths</td>");
    expect(html).toContain("<td>1,700 deaths</td>");
    expect(html).toContain("<td>100,000 deaths</td>");
    // probabilities pass through verbatim, no reformatting
    expect(html).toContain(`<td>${String(RECORDED.baseline.overall_probability)}</td>`);
    expect(html).toContain(`<td>${String(RECORDED.ai.overall_probability)}</td>`);
    expect(html).toContain("baseline");
    expect(html).toContain("ai_augmented");
  });
});

describe("qualitative flags", () => {
  it("renders nothing alarming when there are no flags", () => {
    expect(flagsHtml(RECORDED.qualitative_flags)).toContain("no qualitative level changes");
  });

  it("highlights a concerning transition on its step", () => {
    const html = flagsHtml(FLAGGED.qualitative_flags);
    expect(html).toContain("flag-concerning");
    expect(html).toContain('data-step="acquisition"');
    expect(html).toContain("acquisition relative_p: low -&gt; med [concerning]");
  });

  it("does not highlight a non-concerning row", () => {
    const html = flagsHtml([
      { step: "production", field: "relative_p", baseline: "high", ai: "low", flag: "not_concerning" },
    ]);
    expect(html).toContain("[not_concerning]");
    expect(html).not.toContain("flag-concerning");
  });
});

describe("full view", () => {
  it("keeps both disclaimers visible and embeds the comparison chart", () => {
    const html = viewHtml(RECORDED);
    expect(html).toContain(RECORDED.disclaimer);
    expect(html).toContain(RECORDED.baseline.independence_disclaimer);
    expect(html).toContain("+1,200 deaths");
    expect(html).toContain("<svg");
    expect(html).toContain("seed 7");
    expect(html).toContain("2200 trials");
  });

  it("renders one panel per step plus overall, both variants colored apart", () => {
    const svg = comparisonSvg(RECORDED);
    for (const label of ["ideation", "acquisition", "production", "weaponization", "deploy", "overall"]) {
      expect(svg).toContain(`>${label}</text>`);
    }
    expect(svg.match(/#4c72b0/g)!.length).toBeGreaterThanOrEqual(6);
    expect(svg.match(/#dd8452/g)!.length).toBeGreaterThanOrEqual(6);
  });

  it("is deterministic for a fixed response", () => {
    expect(viewHtml(RECORDED)).toBe(viewHtml(RECORDED));
  });

  it("escapes error text in the error panel", () => {
    expect(errorPanelHtml('<b>boom</b> & "quotes"')).toBe(
      '<div class="error-panel">service error: &lt;b&gt;boom&lt;/b&gt; &amp; &quot;quotes&quot;</div>',
    );
  });
});
