/**
 * Backend client plus last-write-wins sequencing for overlapping requests.
 *
 * Every edit gets a monotonically increasing sequence number; a response is
 * applied only if no newer request was issued meanwhile, so the display
 * always corresponds to the most recent user input.
 */

import type {
  ApiErrorBody,
  ConfigResponse,
  Overrides,
  RegionResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.error ?? `request failed with status ${status}`);
    this.status = status;
    this.body = body;
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let body: ApiErrorBody = { error: `request failed with status ${response.status}` };
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    // non-JSON error body; keep the status message
  }
  throw new ApiError(response.status, body);
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async config(): Promise<ConfigResponse> {
    return parseOrThrow(await fetch(`${this.baseUrl}/api/config`));
  }

  async region(overrides: Overrides): Promise<RegionResponse> {
    const response = await fetch(`${this.baseUrl}/api/region`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ overrides }),
    });
    return parseOrThrow(await Promise.resolve(response));
  }
}

/** Hands out sequence numbers and reports whether one is still the latest. */
export class Sequencer {
  private latest = 0;

  next(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(seq: number): boolean {
    return seq === this.latest;
  }
}
