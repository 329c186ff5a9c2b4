import type { AskResponse, HealthResponse, StatsResponse } from "./types.js";

/** Raised for transport failures and non-2xx responses. */
export class ApiError extends Error {
  readonly status: number | null;

  constructor(message: string, status: number | null = null) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

async function readError(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    if (body && typeof body.error === "string") {
      return body.error;
    }
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${response.status}`;
}

export async function askQuestion(question: string, base = ""): Promise<AskResponse> {
  const trimmed = question.trim();
  if (!trimmed) {
    throw new ApiError("empty question");
  }
  let response: Response;
  try {
    response = await fetch(`${base}/api/ask`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ question: trimmed }),
    });
  } catch (cause) {
    throw new ApiError(`service unreachable: ${String(cause)}`);
  }
  if (!response.ok) {
    throw new ApiError(await readError(response), response.status);
  }
  return (await response.json()) as AskResponse;
}

export async function getHealth(base = ""): Promise<HealthResponse> {
  const response = await fetch(`${base}/api/health`);
  if (!response.ok) {
    throw new ApiError(await readError(response), response.status);
  }
  return (await response.json()) as HealthResponse;
}

export async function getStats(base = ""): Promise<StatsResponse> {
  const response = await fetch(`${base}/api/stats`);
  if (!response.ok) {
    throw new ApiError(await readError(response), response.status);
  }
  return (await response.json()) as StatsResponse;
}
