import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import type { WhatIfRequest, WhatIfResponse } from "../src/api.js";
import {
  WhatIfLoop,
  buildRequest,
  clearOverride,
  initialState,
  setOverride,
  validateState,
} from "../src/state.js";

function fakeResponse(tag: number): WhatIfResponse {
  return { delta: tag } as unknown as WhatIfResponse;
}

describe("request building", () => {
  it("sends an empty overrides list when no control was touched", () => {
    const state = initialState("chatbot");
    expect(buildRequest(state)).toEqual({
      pair_id: "chatbot",
      seed: 42,
      n_trials: 10000,
      overrides: [],
    });
    // field names match the service schema exactly
    expect(Object.keys(buildRequest(state)).sort()).toEqual([
      "n_trials",
      "overrides",
      "pair_id",
      "seed",
    ]);
  });

  it("maps a slider at 0.0 to a fixed 0.0 override", () => {
    const state = initialState("chatbot");
    setOverride(state, { kind: "fixed", variant: "ai_augmented", step: "production", value: 0.0 });
    expect(buildRequest(state).overrides).toEqual([
      { variant: "ai_augmented", step: "production", fixed_value: 0 },
    ]);
  });

  it("maps a Level pick to a relative_p override", () => {
    const state = initialState("chatbot");
    setOverride(state, { kind: "level", variant: "ai_augmented", step: "acquisition", level: "high" });
    expect(buildRequest(state).overrides).toEqual([
      { variant: "ai_augmented", step: "acquisition", relative_p: "high" },
    ]);
  });

  it("maps a distribution pick to dataset plus cohort", () => {
    const state = initialState("chatbot");
    setOverride(state, {
      kind: "distribution",
      variant: "baseline",
      step: "ideation",
      dataset: "synthetic_scores",
      cohort: "internet_llm",
    });
    expect(buildRequest(state).overrides).toEqual([
      { variant: "baseline", step: "ideation", dataset: "synthetic_scores", cohort: "internet_llm" },
    ]);
  });

  it("replaces an override per variant and step, and clears back to untouched", () => {
    const state = initialState("chatbot");
    setOverride(state, { kind: "fixed", variant: "baseline", step: "deploy", value: 0.3 });
    setOverride(state, { kind: "fixed", variant: "baseline", step: "deploy", value: 0.9 });
    expect(buildRequest(state).overrides).toEqual([
      { variant: "baseline", step: "deploy", fixed_value: 0.9 },
    ]);
    clearOverride(state, "baseline", "deploy");
    expect(buildRequest(state).overrides).toEqual([]);
  });

  it("includes consequence_override only when set", () => {
    const state = initialState("chatbot");
    expect("consequence_override" in buildRequest(state)).toBe(false);
    state.consequenceOverride = 200000;
    expect(buildRequest(state).consequence_override).toBe(200000);
  });
});

describe("client-side validation", () => {
  it("accepts the initial state", () => {
    expect(validateState(initialState("chatbot"))).toEqual({});
  });

  it("rejects what the server would reject", () => {
    const state = initialState("chatbot");
    state.seed = -1;
    state.nTrials = 0;
    state.consequenceOverride = -5;
    setOverride(state, { kind: "fixed", variant: "baseline", step: "ideation", value: 1.3 });
    const problems = validateState(state);
    expect(problems.seed).toMatch(/non-negative integer/);
    expect(problems.n_trials).toMatch(/positive integer/);
    expect(problems.consequence).toMatch(/non-negative/);
    expect(problems["baseline:ideation"]).toMatch(/\[0, 1\]/);
  });

  it("rejects non-integer and NaN inputs", () => {
    const state = initialState("chatbot");
    state.seed = 1.5;
    state.nTrials = NaN;
    expect(Object.keys(validateState(state)).sort()).toEqual(["n_trials", "seed"]);
  });
});

describe("request loop", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  function request(seed: number): WhatIfRequest {
    return { pair_id: "chatbot", seed, n_trials: 100, overrides: [] };
  }

  it("debounces rapid submissions down to the last request", async () => {
    const sent: WhatIfRequest[] = [];
    const applied: WhatIfResponse[] = [];
    const loop = new WhatIfLoop(
      (req) => {
        sent.push(req);
        return Promise.resolve(fakeResponse(req.seed));
      },
      (resp) => applied.push(resp),
    );
    loop.submit(request(1));
    loop.submit(request(2));
    loop.submit(request(3));
    expect(sent).toEqual([]);
    await vi.runAllTimersAsync();
    expect(sent).toEqual([request(3)]);
    expect(applied).toEqual([fakeResponse(3)]);
    expect(loop.latest).toEqual(fakeResponse(3));
  });

  it("keeps a single request in flight and discards the stale response", async () => {
    const resolvers: ((resp: WhatIfResponse) => void)[] = [];
    const sent: WhatIfRequest[] = [];
    const applied: WhatIfResponse[] = [];
    const loop = new WhatIfLoop(
      (req) => {
        sent.push(req);
        return new Promise((resolve) => resolvers.push(resolve));
      },
      (resp) => applied.push(resp),
      () => {},
      0,
    );
    loop.submitNow(request(1));
    // two more edits arrive while the first request is still on the wire
    loop.submitNow(request(2));
    loop.submitNow(request(3));
    expect(sent).toEqual([request(1)]);

    resolvers[0]!(fakeResponse(1));
    await vi.runAllTimersAsync();
    // the queued (newest) request fired; the old response was discarded
    expect(sent).toEqual([request(1), request(3)]);
    expect(applied).toEqual([]);

    resolvers[1]!(fakeResponse(3));
    await vi.runAllTimersAsync();
    expect(applied).toEqual([fakeResponse(3)]);
    expect(loop.latest).toEqual(fakeResponse(3));
  });

  it("routes failures to the error handler and recovers on the next response", async () => {
    const errors: unknown[] = [];
    const applied: WhatIfResponse[] = [];
    let fail = true;
    const loop = new WhatIfLoop(
      (req) => {
        if (fail) return Promise.reject(new Error("service unreachable"));
        return Promise.resolve(fakeResponse(req.seed));
      },
      (resp) => applied.push(resp),
      (err) => errors.push(err),
    );
    loop.submitNow(request(5));
    await vi.runAllTimersAsync();
    expect(errors).toHaveLength(1);
    expect(applied).toEqual([]);
    expect(loop.latest).toBeNull();

    fail = false;
    loop.submitNow(request(6));
    await vi.runAllTimersAsync();
    expect(applied).toEqual([fakeResponse(6)]);
  });

  it("drops an error from a superseded request", async () => {
    const errors: unknown[] = [];
    const applied: WhatIfResponse[] = [];
    let reject: ((err: Error) => void) | null = null;
    let resolveNext: ((resp: WhatIfResponse) => void) | null = null;
    let calls = 0;
    const loop = new WhatIfLoop(
      () => {
        calls += 1;
        if (calls === 1) return new Promise((_, rej) => (reject = rej));
        return new Promise((resolve) => (resolveNext = resolve));
      },
      (resp) => applied.push(resp),
      (err) => errors.push(err),
    );
    loop.submitNow(request(1));
    loop.submitNow(request(2));
    reject!(new Error("aborted"));
    await vi.runAllTimersAsync();
    expect(errors).toEqual([]); // stale failure, nobody cares
    resolveNext!(fakeResponse(2));
    await vi.runAllTimersAsync();
    expect(applied).toEqual([fakeResponse(2)]);
  });
});
