/**
 * View state and the request loop.
 *
 * The state owns what the user touched; buildRequest turns it into a body
 * matching the service schema exactly (untouched controls contribute
 * nothing). WhatIfLoop serializes submissions: debounced, one request in
 * flight at a time, stale responses discarded by sequence number.
 */

import type {
  LevelToken,
  OverrideDoc,
  StepToken,
  VariantToken,
  WhatIfRequest,
  WhatIfResponse,
} from "./api.js";

export type OverrideControl =
  | { kind: "fixed"; variant: VariantToken; step: StepToken; value: number }
  | { kind: "distribution"; variant: VariantToken; step: StepToken; dataset: string; cohort: string }
  | { kind: "level"; variant: VariantToken; step: StepToken; level: LevelToken };

export interface ViewState {
  pairId: string;
  seed: number;
  nTrials: number;
  consequenceOverride: number | null;
  // keyed by variant:step, insertion ordered; absent key = untouched control
  overrides: Map<string, OverrideControl>;
  response: WhatIfResponse | null;
}

export function initialState(pairId: string): ViewState {
  return {
    pairId,
    seed: 42,
    nTrials: 10000,
    consequenceOverride: null,
    overrides: new Map(),
    response: null,
  };
}

export function controlKey(variant: VariantToken, step: StepToken): string {
  return `${variant}:${step}`;
}

export function setOverride(state: ViewState, control: OverrideControl): void {
  state.overrides.set(controlKey(control.variant, control.step), control);
}

export function clearOverride(state: ViewState, variant: VariantToken, step: StepToken): void {
  state.overrides.delete(controlKey(variant, step));
}

function toDoc(control: OverrideControl): OverrideDoc {
  switch (control.kind) {
    case "fixed":
      return { variant: control.variant, step: control.step, fixed_value: control.value };
    case "distribution":
      return {
        variant: control.variant,
        step: control.step,
        dataset: control.dataset,
        cohort: control.cohort,
      };
    case "level":
      return { variant: control.variant, step: control.step, relative_p: control.level };
  }
}

export function buildRequest(state: ViewState): WhatIfRequest {
  const body: WhatIfRequest = {
    pair_id: state.pairId,
    seed: state.seed,
    n_trials: state.nTrials,
    overrides: [...state.overrides.values()].map(toDoc),
  };
  if (state.consequenceOverride !== null) {
    body.consequence_override = state.consequenceOverride;
  }
  return body;
}

/** Client-side mirror of server validation; failures block submission. */
export function validateState(state: ViewState): Record<string, string> {
  const problems: Record<string, string> = {};
  if (!Number.isSafeInteger(state.seed) || state.seed < 0) {
    problems.seed = "seed must be a non-negative integer";
  }
  if (!Number.isSafeInteger(state.nTrials) || state.nTrials < 1) {
    problems.n_trials = "trial count must be a positive integer";
  }
  if (state.consequenceOverride !== null) {
    if (!Number.isFinite(state.consequenceOverride) || state.consequenceOverride < 0) {
      problems.consequence = "consequence must be a finite non-negative number";
    }
  }
  for (const control of state.overrides.values()) {
    if (control.kind === "fixed" && !(control.value >= 0 && control.value <= 1)) {
      problems[controlKey(control.variant, control.step)] =
        "fixed probability must lie in [0, 1]";
    }
  }
  return problems;
}

type Settled =
  | { ok: true; response: WhatIfResponse }
  | { ok: false; error: unknown };

export class WhatIfLoop {
  latest: WhatIfResponse | null = null;

  private seq = 0;
  private inFlight = false;
  private queued: WhatIfRequest | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly send: (request: WhatIfRequest) => Promise<WhatIfResponse>,
    private readonly onApply: (response: WhatIfResponse) => void,
    private readonly onError: (error: unknown) => void = () => {},
    private readonly debounceMs = 150,
  ) {}

  /** Debounced submission: rapid calls collapse to the last request. */
  submit(request: WhatIfRequest): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.fire(request);
    }, this.debounceMs);
  }

  /** Immediate submission (initial load, explicit run button). */
  submitNow(request: WhatIfRequest): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.fire(request);
  }

  private fire(request: WhatIfRequest): void {
    if (this.inFlight) {
      // single in-flight request: remember only the newest
      this.queued = request;
      return;
    }
    const token = ++this.seq;
    this.inFlight = true;
    this.send(request).then(
      (response) => this.settle(token, { ok: true, response }),
      (error) => this.settle(token, { ok: false, error }),
    );
  }

  private settle(token: number, result: Settled): void {
    this.inFlight = false;
    if (this.queued !== null) {
      const next = this.queued;
      this.queued = null;
      this.fire(next); // bumps seq, so the result below is stale
    }
    if (token !== this.seq) return; // stale response: discard
    if (result.ok) {
      this.latest = result.response;
      this.onApply(result.response);
    } else {
      this.onError(result.error);
    }
  }
}
