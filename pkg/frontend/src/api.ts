/**
 * Wire types and HTTP client for the risk chain service JSON API.
 *
 * The types mirror the server documents field for field. The explorer is a
 * pure view: every number it displays comes out of a response unchanged
 * (formatting aside), so these shapes are the whole contract.
 */

export const CHAIN_STEPS = [
  "ideation",
  "acquisition",
  "production",
  "weaponization",
  "deploy",
] as const;
export type StepToken = (typeof CHAIN_STEPS)[number];

export const VARIANTS = ["baseline", "ai_augmented"] as const;
export type VariantToken = (typeof VARIANTS)[number];

export const LEVELS = ["low", "med", "high"] as const;
export type LevelToken = (typeof LEVELS)[number];

export interface RiskDoc {
  overall_probability: number;
  consequence: number;
  risk: number;
  variant: string;
  units: string;
  independence_disclaimer: string;
}

export interface BoxSummaryDoc {
  n: number;
  mean: number;
  median: number;
  q1: number;
  q3: number;
  iqr: number;
  whisker_low: number;
  whisker_high: number;
  outliers: number[];
}

export interface QualitativeFlagDoc {
  step: string;
  field: string;
  baseline: string;
  ai: string;
  flag: string;
}

export interface WhatIfResponse {
  disclaimer: string;
  revision: number;
  pair_id: string;
  seed: number;
  n_trials: number;
  baseline: RiskDoc;
  ai: RiskDoc;
  delta: number;
  classification: string;
  box_summaries: Record<VariantToken, Record<string, BoxSummaryDoc>>;
  qualitative_flags: QualitativeFlagDoc[];
}

/** Exactly one override kind per document; the server rejects mixtures. */
export type OverrideDoc =
  | { variant: VariantToken; step: StepToken; fixed_value: number }
  | { variant: VariantToken; step: StepToken; dataset: string; cohort: string }
  | { variant: VariantToken; step: StepToken; relative_p: LevelToken };

export interface WhatIfRequest {
  pair_id: string;
  seed: number;
  n_trials: number;
  overrides: OverrideDoc[];
  consequence_override?: number;
}

export interface DatasetDoc {
  name: string;
  description: string;
  samples: { cohort: string }[];
}

export interface ProjectDoc {
  schema_version: number;
  name: string;
  datasets: DatasetDoc[];
  scenarios: { id: string; variant: string; consequence?: { units: string; value: number } }[];
  pairs: { id: string }[];
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`service returned ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function readDetail(response: Response): Promise<string> {
  const text = await response.text();
  try {
    const doc = JSON.parse(text);
    if (doc && typeof doc.detail === "string") return doc.detail;
    return JSON.stringify(doc.detail ?? doc);
  } catch {
    return text;
  }
}

async function requireOk(response: Response): Promise<Response> {
  if (!response.ok) {
    throw new ApiError(response.status, await readDetail(response));
  }
  return response;
}

export async function getProject(fetchImpl: FetchLike, base = ""): Promise<ProjectDoc> {
  const response = await requireOk(await fetchImpl(`${base}/api/project`));
  return (await response.json()) as ProjectDoc;
}

export async function postWhatIf(
  fetchImpl: FetchLike,
  body: WhatIfRequest,
  base = "",
): Promise<WhatIfResponse> {
  const response = await requireOk(
    await fetchImpl(`${base}/api/whatif`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }),
  );
  return (await response.json()) as WhatIfResponse;
}

/** Cohorts present in a dataset, sorted, for the distribution selector. */
export function datasetCohorts(dataset: DatasetDoc): string[] {
  return [...new Set(dataset.samples.map((row) => row.cohort))].sort();
}
