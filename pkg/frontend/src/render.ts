import type { AskResponse, AskView } from "./types.js";

/** HTML-string builders. Every rendered fact comes verbatim from one API
 * response; the UI itself never parses or rewrites the data. */

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function statusLabel(status: AskResponse["status"]): string {
  switch (status) {
    case "ok":
      return "answered";
    case "empty":
      return "no results";
    case "no_parse":
      return "no parse";
  }
}

export function renderStatusBadge(response: AskResponse): string {
  return `<span class="badge badge-${response.status}">${statusLabel(response.status)}</span>`;
}

export function renderAnswers(response: AskResponse): string {
  if (response.status === "no_parse") {
    const position =
      response.failure_position === undefined
        ? ""
        : `<p class="failure">not analyzable at token ${response.failure_position}</p>`;
    return `${position}`;
  }
  const answers = response.answers;
  if (answers === undefined) {
    return "";
  }
  if (Array.isArray(answers)) {
    if (answers.length === 0) {
      return `<p class="empty-answers">no matching entries</p>`;
    }
    const items = answers.map((a) => `<li>${escapeHtml(a)}</li>`).join("");
    return `<ul class="answers">${items}</ul>`;
  }
  return `<p class="count-answer">count: <strong>${answers.count}</strong></p>`;
}

/** Collapsible panel preserving the text's own indentation; collapsed by
 * default. Returns "" when the field is absent so the panel is not shown. */
export function renderPanel(title: string, text: string | undefined): string {
  if (text === undefined || text === "") {
    return "";
  }
  return (
    `<details class="panel"><summary>${escapeHtml(title)}</summary>` +
    `<pre>${escapeHtml(text)}</pre></details>`
  );
}

export function renderPanels(response: AskResponse): string {
  return (
    renderPanel("parse tree", response.parse_tree) +
    renderPanel("intent", response.intent) +
    renderPanel("generated query", response.generated_query)
  );
}

export function renderElapsed(response: AskResponse): string {
  return `<span class="elapsed">${response.elapsed_ms.toFixed(1)} ms</span>`;
}

export function renderAskView(view: AskView): string {
  const rule = view.response.rule_id
    ? `<span class="rule">${escapeHtml(view.response.rule_id)}</span>`
    : "";
  return (
    `<article class="ask-view">` +
    `<header><span class="question">${escapeHtml(view.question)}</span>` +
    `${renderStatusBadge(view.response)}${rule}${renderElapsed(view.response)}</header>` +
    renderAnswers(view.response) +
    renderPanels(view.response) +
    `</article>`
  );
}

export function renderHistory(views: readonly AskView[]): string {
  // newest first so the latest answer stays in view
  return [...views].reverse().map(renderAskView).join("");
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner">${escapeHtml(message)}</div>`;
}
