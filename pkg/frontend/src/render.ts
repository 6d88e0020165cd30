/** DOM rendering for each workflow step.
 *
 * Information hiding is structural: each renderer only receives the fields
 * the server exposed for that step, so the reference text cannot appear in
 * the post-editing screen and the student source only appears in scoring.
 * Every control is a native form element, so a keyboard alone can complete
 * an item.
 */

import type { ServiceClient } from "./api.js";
import type { WorkflowController } from "./workflow.js";
import {
  DIMENSIONS,
  emptyScores,
  scoresComplete,
  type Dimension,
  type LikertValue,
  type ScoreDraft,
  type StepView,
} from "./types.js";

const DIMENSION_LABELS: Record<Dimension, string> = {
  grammaticality: "Grammaticality",
  fluency: "Fluency",
  meaning: "Meaning preservation",
};

const LIKERT_OPTIONS: Array<{ value: LikertValue; label: string }> = [
  { value: 4, label: "4" },
  { value: 3, label: "3" },
  { value: 2, label: "2" },
  { value: 1, label: "1" },
  { value: "other", label: "other" },
];

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function textBlock(doc: Document, label: string, value: string, cls: string) {
  const wrap = el(doc, "section", { class: `block ${cls}` });
  wrap.append(el(doc, "h3", {}, label));
  wrap.append(el(doc, "p", { class: "text" }, value));
  return wrap;
}

export function renderApp(
  root: HTMLElement,
  controller: WorkflowController,
  client: ServiceClient,
  annotator?: string,
): void {
  const doc = root.ownerDocument;
  root.textContent = "";

  if (controller.error) {
    const banner = el(doc, "div", { class: "banner", role: "alert" });
    banner.append(el(doc, "span", {}, controller.error));
    const retry = el(doc, "button", { type: "button", class: "retry" }, "Retry");
    retry.addEventListener("click", () => void controller.start());
    banner.append(retry);
    root.append(banner);
  }

  const view = controller.view;
  if (!view) {
    root.append(el(doc, "p", {}, "Connecting..."));
    return;
  }

  const progress = el(
    doc,
    "p",
    { class: "progress" },
    `Items completed: ${view.progress.done} / ${view.progress.total}`,
  );
  root.append(progress);

  switch (view.step) {
    case "post_edit":
      renderPostEdit(root, view, controller);
      break;
    case "meaning_check":
      renderMeaningCheck(root, view, controller);
      break;
    case "scoring":
      renderScoring(root, view, controller);
      break;
    case "done":
      renderItemDone(root, controller);
      break;
    case "complete":
      renderComplete(root, client, annotator);
      break;
  }
}

function renderPostEdit(
  root: HTMLElement,
  view: Extract<StepView, { step: "post_edit" }>,
  controller: WorkflowController,
): void {
  const doc = root.ownerDocument;
  root.append(el(doc, "h2", {}, "Step 1: post-edit the system output"));
  root.append(
    el(
      doc,
      "p",
      { class: "hint" },
      "Modify the text below, if necessary, to reach the level of a native " +
        "writer (grammar and fluency) with the minimum amount of editing.",
    ),
  );
  if (view.revisions > 0) {
    root.append(
      el(doc, "p", { class: "hint revisit" },
        "The meaning did not match the reference; please revise your edit."),
    );
  }
  const form = el(doc, "form", { id: "postedit-form" });
  const label = el(doc, "label", { for: "postedit-text" }, "Your edited sentence");
  const box = el(doc, "textarea", {
    id: "postedit-text",
    rows: "4",
    autofocus: "",
  }) as HTMLTextAreaElement;
  box.value = view.postedit;
  const submit = el(doc, "button", { type: "submit", id: "postedit-submit" },
    "Submit edit");
  if (controller.busy) submit.setAttribute("disabled", "");
  form.append(label, box, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void controller.submitPostEdit(box.value);
  });
  root.append(form);
}

function renderMeaningCheck(
  root: HTMLElement,
  view: Extract<StepView, { step: "meaning_check" }>,
  controller: WorkflowController,
): void {
  const doc = root.ownerDocument;
  root.append(el(doc, "h2", {}, "Step 2: does the meaning match?"));
  const pair = el(doc, "div", { class: "side-by-side" });
  pair.append(textBlock(doc, "Your edited sentence", view.postedit, "postedit"));
  pair.append(textBlock(doc, "Reference", view.reference, "reference"));
  root.append(pair);
  const yes = el(doc, "button", { type: "button", id: "meaning-yes" },
    "Meaning matches");
  const no = el(doc, "button", { type: "button", id: "meaning-no" },
    "Meaning differs, edit again");
  if (controller.busy) {
    yes.setAttribute("disabled", "");
    no.setAttribute("disabled", "");
  }
  yes.addEventListener("click", () => void controller.confirmMeaning(true));
  no.addEventListener("click", () => void controller.confirmMeaning(false));
  root.append(yes, no);
}

function renderScoring(
  root: HTMLElement,
  view: Extract<StepView, { step: "scoring" }>,
  controller: WorkflowController,
): void {
  const doc = root.ownerDocument;
  root.append(el(doc, "h2", {}, "Step 3: score the original system output"));
  root.append(textBlock(doc, "Student sentence", view.source, "source"));
  root.append(textBlock(doc, "System output (unedited)", view.output, "output"));
  root.append(textBlock(doc, "Reference", view.reference, "reference"));

  const draft: ScoreDraft = emptyScores();
  const form = el(doc, "form", { id: "scores-form" });
  const submit = el(doc, "button", { type: "submit", id: "scores-submit" },
    "Submit scores");
  submit.setAttribute("disabled", "");

  for (const dimension of DIMENSIONS) {
    const fieldset = el(doc, "fieldset", { id: `likert-${dimension}` });
    fieldset.append(el(doc, "legend", {}, DIMENSION_LABELS[dimension]));
    for (const option of LIKERT_OPTIONS) {
      const id = `${dimension}-${option.value}`;
      const input = el(doc, "input", {
        type: "radio",
        name: dimension,
        id,
        value: String(option.value),
      });
      input.addEventListener("change", () => {
        draft[dimension] = option.value;
        if (scoresComplete(draft) && !controller.busy) {
          submit.removeAttribute("disabled");
        }
      });
      fieldset.append(input, el(doc, "label", { for: id }, option.label));
    }
    form.append(fieldset);
  }
  form.append(submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!scoresComplete(draft)) return; // form gating
    void controller.submitScores({
      grammaticality: draft.grammaticality as LikertValue,
      fluency: draft.fluency as LikertValue,
      meaning: draft.meaning as LikertValue,
    });
  });
  root.append(form);
}

function renderItemDone(root: HTMLElement, controller: WorkflowController): void {
  const doc = root.ownerDocument;
  root.append(el(doc, "h2", {}, "Item complete"));
  const next = el(doc, "button", { type: "button", id: "continue" },
    "Continue to next item");
  if (controller.busy) next.setAttribute("disabled", "");
  next.addEventListener("click", () => void controller.continueToNext());
  root.append(next);
}

function renderComplete(
  root: HTMLElement,
  client: ServiceClient,
  annotator?: string,
): void {
  const doc = root.ownerDocument;
  root.append(el(doc, "h2", {}, "All items completed"));
  root.append(el(doc, "p", {}, "Thank you! Every item in the pool is annotated."));
  root.append(
    el(doc, "a", { href: client.exportUrl(annotator), id: "export-link" },
      "Download your annotations"),
  );
}
