/** Bootstrap: session form, then the workflow loop.
 *
 * The UI keeps no workflow state of its own; reloading the page and
 * re-entering the session id resumes exactly where the server says the
 * annotator is.
 */

import { ServiceClient } from "./api.js";
import { renderApp } from "./render.js";
import { WorkflowController } from "./workflow.js";

function serviceBase(): string {
  // the service serves this UI under /ui/, so the API lives at the origin
  return window.location.origin;
}

function startSessionForm(root: HTMLElement): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  const form = doc.createElement("form");
  form.id = "session-form";

  const annotatorLabel = doc.createElement("label");
  annotatorLabel.setAttribute("for", "annotator-id");
  annotatorLabel.textContent = "Annotator id";
  const annotatorInput = doc.createElement("input");
  annotatorInput.id = "annotator-id";
  annotatorInput.required = true;

  const resumeLabel = doc.createElement("label");
  resumeLabel.setAttribute("for", "session-id");
  resumeLabel.textContent = "Session id (leave empty to start a new session)";
  const resumeInput = doc.createElement("input");
  resumeInput.id = "session-id";

  const submit = doc.createElement("button");
  submit.type = "submit";
  submit.textContent = "Start annotating";

  form.append(annotatorLabel, annotatorInput, resumeLabel, resumeInput, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void startWorkflow(root, annotatorInput.value, resumeInput.value || undefined);
  });
  root.append(form);
}

async function startWorkflow(
  root: HTMLElement,
  annotator: string,
  existingSession?: string,
): Promise<void> {
  const client = new ServiceClient(serviceBase());
  let sessionId = existingSession;
  if (!sessionId) {
    try {
      sessionId = await client.openSession(annotator);
    } catch (error) {
      root.textContent = `Could not open session: ${String(error)}`;
      return;
    }
  }
  const heading = root.ownerDocument.createElement("p");
  heading.className = "session-info";
  heading.textContent = `Session ${sessionId}`;

  const controller = new WorkflowController(client, sessionId);
  const app = root.ownerDocument.createElement("div");
  app.id = "workflow";
  root.textContent = "";
  root.append(heading, app);
  controller.onChange(() => renderApp(app, controller, client, annotator));
  await controller.start();
}

const rootElement = document.getElementById("app");
if (rootElement) {
  startSessionForm(rootElement);
}
