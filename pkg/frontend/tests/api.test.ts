import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, askQuestion, getHealth, getStats } from "../src/api.js";
import { okResponse } from "./fixtures.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("askQuestion", () => {
  it("posts the trimmed question and returns the report", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(okResponse));
    vi.stubGlobal("fetch", fetchMock);

    const report = await askQuestion("  Ai đã viết sách Toan?  ");

    expect(fetchMock).toHaveBeenCalledWith("/api/ask", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ question: "Ai đã viết sách Toan?" }),
    });
    expect(report.status).toBe("ok");
    expect(report.answers).toEqual(["Nguyễn Văn An"]);
  });

  it("rejects empty questions without calling the service", async () => {
    const fetchMock = vi.fn();
    vi.stubGlobal("fetch", fetchMock);

    await expect(askQuestion("   ")).rejects.toThrow(ApiError);
    expect(fetchMock).not.toHaveBeenCalled();
  });

  it("surfaces the service error message on 400", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse({ error: "empty question" }, 400)),
    );

    await expect(askQuestion("x?")).rejects.toThrow("empty question");
  });

  it("wraps network failures in ApiError", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("refused")));

    const failure = askQuestion("Ai đã viết sách Toan?");
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(askQuestion("Ai?")).rejects.toThrow(/unreachable/);
  });

  it("reports the HTTP status for opaque 5xx bodies", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(new Response("boom", { status: 500 })),
    );

    try {
      await askQuestion("Ai?");
      expect.unreachable();
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).status).toBe(500);
    }
  });
});

describe("getHealth / getStats", () => {
  it("returns the health payload", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse({ status: "up", courses: 25 })),
    );
    expect(await getHealth()).toEqual({ status: "up", courses: 25 });
  });

  it("returns the stats payload", async () => {
    const stats = { entities: 98, triples: 315, courses: 25, classes: { Course: 25 } };
    vi.stubGlobal("fetch", vi.fn().mockResolvedValue(jsonResponse(stats)));
    expect(await getStats()).toEqual(stats);
  });
});
