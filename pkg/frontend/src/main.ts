/**
 * Browser wiring: builds the control grid from the project document, feeds
 * user edits through the view state into the debounced request loop, and
 * swaps the results panel when a response is acknowledged.
 */

import type {
  DatasetDoc,
  LevelToken,
  ProjectDoc,
  StepToken,
  VariantToken,
} from "./api.js";
import { CHAIN_STEPS, LEVELS, VARIANTS, datasetCohorts, getProject, postWhatIf } from "./api.js";
import { errorPanelHtml, escapeHtml, viewHtml } from "./render.js";
import {
  WhatIfLoop,
  buildRequest,
  clearOverride,
  initialState,
  setOverride,
  validateState,
} from "./state.js";
import type { ViewState } from "./state.js";

type Mode = "keep" | "fixed" | "distribution" | "level";

function option(value: string, label: string, selected = false): string {
  return `<option value="${escapeHtml(value)}"${selected ? " selected" : ""}>${escapeHtml(label)}</option>`;
}

function modeCellHtml(variant: VariantToken, step: StepToken): string {
  const id = `${variant}-${step}`;
  return [
    `<select class="mode" id="mode-${id}" data-variant="${variant}" data-step="${step}">`,
    option("keep", "keep"),
    option("fixed", "fixed value"),
    option("distribution", "dataset cohort"),
    option("level", "relative P level"),
    "</select>",
    `<span class="control-body" id="body-${id}"></span>`,
  ].join("");
}

function controlsHtml(project: ProjectDoc, pairId: string, units: string): string {
  const rows = CHAIN_STEPS.map((step) => {
    const cells = VARIANTS.map((v) => `<td>${modeCellHtml(v, step)}</td>`).join("");
    return `<tr><th>${step}</th>${cells}</tr>`;
  }).join("");
  return [
    `<div class="globals">`,
    `<label>pair <input id="pair" value="${escapeHtml(pairId)}" readonly></label>`,
    `<label>seed <input id="seed" type="number" min="0" step="1" value="42"></label>`,
    `<label>trials <input id="trials" type="number" min="1" step="1" value="10000"></label>`,
    `<label>consequence override (${escapeHtml(units)}) <input id="consequence" type="number" min="0" placeholder="keep"></label>`,
    `<button id="run" type="button">run</button>`,
    `</div>`,
    `<table class="control-grid">`,
    `<thead><tr><th>step</th><th>baseline</th><th>ai_augmented</th></tr></thead>`,
    `<tbody>${rows}</tbody></table>`,
    `<div id="problems" class="problems"></div>`,
  ].join("\n");
}

function distributionOptions(datasets: DatasetDoc[]): string {
  return datasets
    .flatMap((dataset) =>
      datasetCohorts(dataset).map((cohort) =>
        option(`${dataset.name}:::${cohort}`, `${dataset.name} / ${cohort}`),
      ),
    )
    .join("");
}

function controlBodyHtml(mode: Mode, datasets: DatasetDoc[]): string {
  switch (mode) {
    case "keep":
      return "";
    case "fixed":
      return (
        '<input type="range" class="fixed-slider" min="0" max="1" step="0.005" value="0.5">' +
        '<output class="fixed-readout">0.5</output>'
      );
    case "distribution":
      return `<select class="dist-pick">${distributionOptions(datasets)}</select>`;
    case "level":
      return `<select class="level-pick">${LEVELS.map((l) => option(l, l)).join("")}</select>`;
  }
}

function applyCellToState(state: ViewState, cell: HTMLElement): void {
  const mode = cell.querySelector<HTMLSelectElement>("select.mode");
  if (mode === null) return;
  const variant = mode.dataset.variant as VariantToken;
  const step = mode.dataset.step as StepToken;
  switch (mode.value as Mode) {
    case "keep":
      clearOverride(state, variant, step);
      return;
    case "fixed": {
      const slider = cell.querySelector<HTMLInputElement>("input.fixed-slider");
      if (slider === null) return;
      setOverride(state, { kind: "fixed", variant, step, value: Number(slider.value) });
      return;
    }
    case "distribution": {
      const pick = cell.querySelector<HTMLSelectElement>("select.dist-pick");
      if (pick === null) return;
      const [dataset = "", cohort = ""] = pick.value.split(":::");
      setOverride(state, { kind: "distribution", variant, step, dataset, cohort });
      return;
    }
    case "level": {
      const pick = cell.querySelector<HTMLSelectElement>("select.level-pick");
      if (pick === null) return;
      setOverride(state, { kind: "level", variant, step, level: pick.value as LevelToken });
      return;
    }
  }
}

function renderProblems(target: HTMLElement, problems: Record<string, string>): void {
  const entries = Object.entries(problems);
  target.innerHTML = entries
    .map(([field, msg]) => `<p class="problem">${escapeHtml(field)}: ${escapeHtml(msg)}</p>`)
    .join("");
}

async function start(root: HTMLElement): Promise<void> {
  const fetchImpl = fetch.bind(globalThis);
  const project = await getProject(fetchImpl);
  const pair = project.pairs[0];
  if (pair === undefined) {
    root.innerHTML = errorPanelHtml("project has no scenario pairs");
    return;
  }
  const units = project.scenarios[0]?.consequence?.units ?? "";
  const state = initialState(pair.id);

  root.innerHTML = [
    '<section id="controls"></section>',
    '<section id="error"></section>',
    '<section id="results"><p>running...</p></section>',
  ].join("\n");
  const controls = root.querySelector<HTMLElement>("#controls");
  const errorPanel = root.querySelector<HTMLElement>("#error");
  const results = root.querySelector<HTMLElement>("#results");
  if (controls === null || errorPanel === null || results === null) return;
  controls.innerHTML = controlsHtml(project, pair.id, units);
  const problemsPanel = controls.querySelector<HTMLElement>("#problems");

  const loop = new WhatIfLoop(
    (request) => postWhatIf(fetchImpl, request),
    (response) => {
      state.response = response;
      errorPanel.innerHTML = "";
      results.innerHTML = viewHtml(response);
    },
    (error) => {
      // controls stay enabled; the last good view stays up
      errorPanel.innerHTML = errorPanelHtml(error instanceof Error ? error.message : String(error));
    },
  );

  const syncAndSubmit = (immediate = false): void => {
    const seed = controls.querySelector<HTMLInputElement>("#seed");
    const trials = controls.querySelector<HTMLInputElement>("#trials");
    const consequence = controls.querySelector<HTMLInputElement>("#consequence");
    if (seed !== null) state.seed = Number(seed.value);
    if (trials !== null) state.nTrials = Number(trials.value);
    if (consequence !== null) {
      state.consequenceOverride = consequence.value === "" ? null : Number(consequence.value);
    }
    for (const cell of controls.querySelectorAll<HTMLElement>("td")) {
      applyCellToState(state, cell);
    }
    const problems = validateState(state);
    if (problemsPanel !== null) renderProblems(problemsPanel, problems);
    if (Object.keys(problems).length > 0) return; // invalid state never leaves the client
    const request = buildRequest(state);
    if (immediate) loop.submitNow(request);
    else loop.submit(request);
  };

  controls.addEventListener("change", (event) => {
    const target = event.target;
    if (target instanceof HTMLSelectElement && target.classList.contains("mode")) {
      const body = controls.querySelector<HTMLElement>(
        `#body-${target.dataset.variant}-${target.dataset.step}`,
      );
      if (body !== null) body.innerHTML = controlBodyHtml(target.value as Mode, project.datasets);
    }
    syncAndSubmit();
  });
  controls.addEventListener("input", (event) => {
    const target = event.target;
    if (target instanceof HTMLInputElement && target.classList.contains("fixed-slider")) {
      const readout = target.parentElement?.querySelector("output.fixed-readout");
      if (readout instanceof HTMLOutputElement) readout.value = target.value;
    }
    syncAndSubmit();
  });
  controls.querySelector("#run")?.addEventListener("click", () => syncAndSubmit(true));

  syncAndSubmit(true);
}

const appRoot = typeof document === "undefined" ? null : document.getElementById("app");
if (appRoot !== null) {
  start(appRoot).catch((error) => {
    appRoot.innerHTML = errorPanelHtml(error instanceof Error ? error.message : String(error));
  });
}
