import { describe, expect, it } from "vitest";

import { ApiError, ServiceClient } from "../src/api.js";
import { WorkflowController } from "../src/workflow.js";
import type { StepView } from "../src/types.js";

const progress = { done: 0, total: 2 };

function postEditView(): StepView {
  return {
    step: "post_edit",
    item_id: "s1:sys",
    output: "system output",
    postedit: "system output",
    revisions: 0,
    progress,
  };
}

function meaningView(): StepView {
  return {
    step: "meaning_check",
    item_id: "s1:sys",
    postedit: "edited",
    reference: "the hidden reference",
    progress,
  };
}

/** fetch stub speaking the service wire protocol from a scripted queue. */
function scriptedClient(
  script: Array<{ status: number; body: unknown }>,
  log: string[] = [],
): ServiceClient {
  const fetchImpl = async (url: string, init?: RequestInit) => {
    log.push(`${init?.method ?? "GET"} ${new URL(url).pathname}`);
    const next = script.shift();
    if (!next) throw new Error("script exhausted");
    return new Response(JSON.stringify(next.body), {
      status: next.status,
      headers: { "content-type": "application/json" },
    });
  };
  return new ServiceClient("http://service", fetchImpl);
}

describe("WorkflowController", () => {
  it("loads the first step on start", async () => {
    const controller = new WorkflowController(
      scriptedClient([{ status: 200, body: postEditView() }]),
      "session-1",
    );
    await controller.start();
    expect(controller.view?.step).toBe("post_edit");
    expect(controller.error).toBeNull();
  });

  it("performs exactly one API call per action and ignores double submits", async () => {
    const log: string[] = [];
    const client = scriptedClient(
      [
        { status: 200, body: postEditView() },
        { status: 200, body: meaningView() },
      ],
      log,
    );
    const controller = new WorkflowController(client, "session-1");
    await controller.start();
    // two rapid submissions: the second arrives while the first is in flight
    const first = controller.submitPostEdit("edited");
    const second = controller.submitPostEdit("edited");
    await Promise.all([first, second]);
    const postCalls = log.filter((line) => line.includes("/postedit"));
    expect(postCalls).toHaveLength(1);
    expect(controller.view?.step).toBe("meaning_check");
  });

  it("keeps the local view and surfaces the error on network failure", async () => {
    const failing = new ServiceClient("http://service", async () => {
      throw new Error("connection refused");
    });
    const controller = new WorkflowController(failing, "session-1");
    controller.view = postEditView();
    await controller.submitPostEdit("edited");
    expect(controller.view.step).toBe("post_edit");
    expect(controller.error).toContain("network failure");
  });

  it("resynchronizes from the server on a state violation", async () => {
    const log: string[] = [];
    const client = scriptedClient(
      [
        { status: 409, body: { error: "wrong state" } },
        { status: 200, body: meaningView() },
      ],
      log,
    );
    const controller = new WorkflowController(client, "session-1");
    controller.view = postEditView();
    await controller.submitPostEdit("edited");
    expect(controller.error).toBe("wrong state");
    expect(controller.view?.step).toBe("meaning_check");
    expect(log.at(-1)).toBe("GET /sessions/session-1/next");
  });

  it("notifies listeners around every action", async () => {
    const controller = new WorkflowController(
      scriptedClient([{ status: 200, body: postEditView() }]),
      "session-1",
    );
    let notifications = 0;
    controller.onChange(() => {
      notifications += 1;
    });
    await controller.start();
    expect(notifications).toBe(2); // busy=true render + final render
  });

  it("ignores step actions when no item is loaded", async () => {
    const log: string[] = [];
    const controller = new WorkflowController(scriptedClient([], log), "session-1");
    await controller.submitPostEdit("text");
    await controller.confirmMeaning(true);
    expect(log).toHaveLength(0);
  });
});
