/**
 * Typed HTTP client for the case-frame service.
 *
 * Every method maps to exactly one endpoint. Non-2xx responses are raised as
 * `ApiError` carrying the status code and the server's `errors` list, so the
 * caller can surface them inline without inspecting raw responses. Network
 * failures become an `ApiError` with status 0.
 */

export type Label = "in" | "out" | "undec";
export type Polarity = "positive" | "negative";

export interface CaseSummary {
  identifier: string;
  jurisdiction: string;
  court: string;
  date: string;
  procedural: string;
  interpretandum: string;
  interpretans: string;
  canonClasses: string[];
  directiveClass: string | null;
}

export interface ElementRef {
  slot: string;
  value: string;
  origin?: string;
}

export interface CanonRef {
  class: string;
  label: string;
}

export interface Conclusion {
  value: string;
  polarity: Polarity;
  targetSlot?: string;
}

export interface ArgumentView {
  id: string;
  kind: "prior-case" | "canon-based" | "cq-attacker";
  conclusion: Conclusion;
  rationale: string;
  cq?: string;
  citedCaseId?: string;
  alpha?: ElementRef;
  shared?: ElementRef[];
  beta?: ElementRef;
  canons?: CanonRef[];
}

export interface DefeatView {
  attacker: string;
  target: string;
  type: string;
  cq?: string;
  auto: boolean;
}

export interface AssertionView {
  id: string;
  cq: string;
  targetArgumentId: string;
  payload: string;
  counterTo?: string | null;
}

export interface DifferenceReport {
  onlyInCase: ElementRef[];
  onlyInProblem: ElementRef[];
}

export interface CQSuggestion {
  caseId: string;
  cqs: string[];
  differences: DifferenceReport;
}

export interface ProblemView {
  forum: { jurisdiction: string; court: string };
  asOfDate: string;
  interpretandum: { expression: string; locus?: string };
  [slot: string]: unknown;
}

export interface SessionView {
  sessionId: string;
  problem: ProblemView;
  arguments: ArgumentView[];
  defeats: DefeatView[];
  labeling: Record<string, Label>;
  assertions: AssertionView[];
  notes: string[];
  pendingCQSuggestions: CQSuggestion[];
}

export interface FrameworkView {
  arguments: ArgumentView[];
  defeats: DefeatView[];
  labeling: Record<string, Label>;
}

export interface AssertionRequest {
  cq: string;
  targetArgumentId?: string;
  payload?: string;
  counterTo?: string;
}

export interface LinesResponse {
  lines: string[][];
}

export class ApiError extends Error {
  readonly status: number;
  readonly errors: string[];

  constructor(status: number, errors: string[]) {
    super(errors.join("; ") || `request failed with status ${status}`);
    this.name = "ApiError";
    this.status = status;
    this.errors = errors;
  }
}

async function errorsFrom(response: Response): Promise<string[]> {
  try {
    const body = (await response.json()) as { errors?: unknown };
    if (Array.isArray(body.errors)) {
      return body.errors.map(String);
    }
  } catch {
    // fall through: non-JSON error body
  }
  return [`request failed with status ${response.status}`];
}

export class ApiClient {
  readonly baseUrl: string;

  /** `baseUrl` is the service origin, e.g. "" (same origin) or "http://127.0.0.1:8000". */
  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  logUrl(sessionId: string): string {
    return `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/log`;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, [`network failure: ${String(err)}`]);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await errorsFrom(response));
    }
    return (await response.json()) as T;
  }

  private async requestText(path: string): Promise<string> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path);
    } catch (err) {
      throw new ApiError(0, [`network failure: ${String(err)}`]);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await errorsFrom(response));
    }
    return response.text();
  }

  listCases(): Promise<CaseSummary[]> {
    return this.request("GET", "/api/cases");
  }

  getCase(identifier: string): Promise<Record<string, unknown>> {
    return this.request("GET", `/api/cases/${encodeURIComponent(identifier)}`);
  }

  postCase(frame: Record<string, unknown>): Promise<CaseSummary> {
    return this.request("POST", "/api/cases", frame);
  }

  getLines(): Promise<LinesResponse> {
    return this.request("GET", "/api/lines");
  }

  createSession(problem: Record<string, unknown>): Promise<SessionView> {
    return this.request("POST", "/api/sessions", { problem });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/api/sessions/${encodeURIComponent(sessionId)}`);
  }

  getFramework(sessionId: string): Promise<FrameworkView> {
    return this.request("GET", `/api/sessions/${encodeURIComponent(sessionId)}/framework`);
  }

  postAssertion(sessionId: string, assertion: AssertionRequest): Promise<SessionView> {
    return this.request(
      "POST",
      `/api/sessions/${encodeURIComponent(sessionId)}/assertions`,
      assertion,
    );
  }

  postTransfer(sessionId: string, argumentId: string): Promise<SessionView> {
    return this.request("POST", `/api/sessions/${encodeURIComponent(sessionId)}/transfers`, {
      argumentId,
    });
  }

  fetchLog(sessionId: string): Promise<string> {
    return this.requestText(`/api/sessions/${encodeURIComponent(sessionId)}/log`);
  }
}
