/** View-model for the three-step annotation workflow.
 *
 * The server is the single source of truth: every action performs exactly
 * one API call and replaces the local view with the server's response.
 * While a request is in flight all further actions are ignored (this is
 * the double-submit guard), on a workflow-state rejection the view is
 * resynchronized from the server, and on a network failure the local view
 * stays untouched and the error is surfaced verbatim.
 */

import { ApiError, ServiceClient } from "./api.js";
import type { StepView } from "./types.js";

export class WorkflowController {
  view: StepView | null = null;
  error: string | null = null;
  busy = false;
  private listeners: Array<() => void> = [];

  constructor(
    private readonly client: ServiceClient,
    readonly sessionId: string,
  ) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  /** Fetch the current step from the server (also resumes after reload). */
  async start(): Promise<void> {
    await this.perform(() => this.client.next(this.sessionId));
  }

  async submitPostEdit(text: string): Promise<void> {
    const itemId = this.currentItemId();
    if (itemId === null) return;
    await this.perform(() =>
      this.client.submitPostEdit(this.sessionId, itemId, text),
    );
  }

  async confirmMeaning(matches: boolean): Promise<void> {
    const itemId = this.currentItemId();
    if (itemId === null) return;
    await this.perform(() =>
      this.client.confirmMeaning(this.sessionId, itemId, matches),
    );
  }

  async submitScores(scores: {
    grammaticality: 1 | 2 | 3 | 4 | "other";
    fluency: 1 | 2 | 3 | 4 | "other";
    meaning: 1 | 2 | 3 | 4 | "other";
  }): Promise<void> {
    const itemId = this.currentItemId();
    if (itemId === null) return;
    await this.perform(() =>
      this.client.submitScores(this.sessionId, itemId, scores),
    );
  }

  /** Move on after an item-done acknowledgment. */
  async continueToNext(): Promise<void> {
    await this.perform(() => this.client.next(this.sessionId));
  }

  private currentItemId(): string | null {
    if (this.view && "item_id" in this.view) return this.view.item_id;
    return null;
  }

  private async perform(call: () => Promise<StepView>): Promise<void> {
    if (this.busy) return; // double-submit guard: ignore, no second call
    this.busy = true;
    this.error = null;
    this.notify();
    try {
      this.view = await call();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // the server rejected the transition: resynchronize, do not invent
        // any local state
        this.error = error.message;
        try {
          this.view = await this.client.next(this.sessionId);
        } catch {
          // keep the stale view; the banner already explains the rejection
        }
      } else {
        this.error = error instanceof Error ? error.message : String(error);
      }
    } finally {
      this.busy = false;
      this.notify();
    }
  }
}
