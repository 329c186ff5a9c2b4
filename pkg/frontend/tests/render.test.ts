import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderAnswers,
  renderAskView,
  renderHistory,
  renderPanel,
  renderPanels,
  renderStatusBadge,
} from "../src/render.js";
import {
  countResponse,
  emptyResponse,
  nestedResponse,
  noParseResponse,
  okResponse,
} from "./fixtures.js";

describe("renderAnswers", () => {
  it("lists every answer", () => {
    const html = renderAnswers(okResponse);
    expect(html).toContain("<ul");
    expect(html).toContain("Nguyễn Văn An");
  });

  it("renders counts as a single line", () => {
    expect(renderAnswers(countResponse)).toContain("count: <strong>25</strong>");
  });

  it("marks empty results", () => {
    expect(renderAnswers(emptyResponse)).toContain("no matching entries");
  });

  it("shows the failure position for rejected questions", () => {
    expect(renderAnswers(noParseResponse)).toContain("token 1");
  });
});

describe("renderPanels", () => {
  it("renders the query panel with the SELECT line first", () => {
    const html = renderPanels(okResponse);
    const pre = html.slice(html.lastIndexOf("<pre>") + 5);
    expect(pre.startsWith("SELECT DISTINCT ?authorname")).toBe(true);
  });

  it("shows both SELECT lines of a nested query", () => {
    const html = renderPanels(nestedResponse);
    const occurrences = html.split("SELECT DISTINCT ?authorname").length - 1;
    expect(occurrences).toBe(2);
  });

  it("keeps panels collapsed by default", () => {
    const html = renderPanels(okResponse);
    expect(html).toContain("<details");
    expect(html).not.toContain("<details open");
  });

  it("preserves tree indentation verbatim", () => {
    const html = renderPanel("parse tree", okResponse.parse_tree);
    expect(html).toContain("\n  what_author: &#39;Ai&#39;");
  });

  it("omits panels for absent fields", () => {
    expect(renderPanels(noParseResponse)).toBe("");
    expect(renderPanel("intent", undefined)).toBe("");
  });
});

describe("renderStatusBadge", () => {
  it.each([
    [okResponse, "answered"],
    [emptyResponse, "no results"],
    [noParseResponse, "no parse"],
  ])("labels %#", (response, label) => {
    expect(renderStatusBadge(response)).toContain(label);
  });
});

describe("renderAskView", () => {
  it("combines question, badge, answers and panels", () => {
    const html = renderAskView({ question: "Ai đã viết sách Toan?", response: okResponse });
    expect(html).toContain("Ai đã viết sách Toan?");
    expect(html).toContain("answered");
    expect(html).toContain("Nguyễn Văn An");
    expect(html).toContain("generated query");
    expect(html).toContain("1.6 ms");
  });

  it("escapes markup in question and answers", () => {
    const html = renderAskView({
      question: "<script>alert(1)</script>?",
      response: { ...okResponse, answers: ["<b>x</b>"] },
    });
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
    expect(html).toContain("&lt;b&gt;x&lt;/b&gt;");
  });
});

describe("renderHistory", () => {
  it("renders one entry per view, newest first", () => {
    const views = [
      { question: "first?", response: okResponse },
      { question: "second?", response: noParseResponse },
    ];
    const html = renderHistory(views);
    expect(html.indexOf("second?")).toBeLessThan(html.indexOf("first?"));
    expect(html.split("ask-view").length - 1).toBe(2);
  });

  it("repeating a question renders identical payload blocks", () => {
    const views = [
      { question: "same?", response: okResponse },
      { question: "same?", response: okResponse },
    ];
    const html = renderHistory(views);
    const first = html.slice(0, html.length / 2);
    const second = html.slice(html.length / 2);
    expect(first).toBe(second);
  });
});

describe("escapeHtml", () => {
  it("escapes all markup-significant characters", () => {
    expect(escapeHtml(`<a href="x" title='y'>&</a>`)).toBe(
      "&lt;a href=&quot;x&quot; title=&#39;y&#39;&gt;&amp;&lt;/a&gt;",
    );
  });
});
