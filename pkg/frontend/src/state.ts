import type { AskResponse, AskView } from "./types.js";

/** Append-only session history plus the single-in-flight submit guard. */
export class SessionState {
  private views: AskView[] = [];
  private pending = false;

  get history(): readonly AskView[] {
    return this.views;
  }

  get inFlight(): boolean {
    return this.pending;
  }

  /** Returns false when a request is already running. */
  begin(): boolean {
    if (this.pending) {
      return false;
    }
    this.pending = true;
    return true;
  }

  /** Record a completed ask; history only ever grows. */
  complete(question: string, response: AskResponse): AskView {
    const view: AskView = { question, response };
    this.views.push(view);
    this.pending = false;
    return view;
  }

  /** A failed request ends the in-flight state without touching history. */
  fail(): void {
    this.pending = false;
  }
}
