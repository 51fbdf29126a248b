/** Typed client over the JSON API; counts calls so tests can prove the
 * static pages never touch the search endpoint. */

import type {
  ApiErrorBody,
  IncidentResponse,
  LeaderboardsView,
  SearchResponse,
  SubmissionResponse,
  WordcountsView,
} from "./types.js";
import type { DiscoverState } from "./urlstate.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public fieldErrors: string[] = [],
  ) {
    super(message);
  }
}

export interface DraftFields {
  title: string;
  text: string;
  url: string;
  source: string;
  authors: string[];
  datePublished: string;
  incidentDate: string | null;
}

export class ApiClient {
  searchCalls = 0;
  viewCalls = 0;

  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async search(state: DiscoverState, pageSize: number): Promise<SearchResponse> {
    this.searchCalls += 1;
    const params = new URLSearchParams();
    params.set("q", state.q);
    for (const [key, values] of state.filters) {
      for (const value of values) params.append("f", `${key}:${value}`);
    }
    params.set("page", String(state.page));
    params.set("pageSize", String(pageSize));
    const response = await this.fetchFn(`${this.baseUrl}/api/search?${params}`);
    return (await this.decode(response)) as SearchResponse;
  }

  async incident(number: number): Promise<IncidentResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/api/incidents/${number}`);
    return (await this.decode(response)) as IncidentResponse;
  }

  async submit(draft: DraftFields, submitter: string): Promise<SubmissionResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/api/submissions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ draft, submitter }),
    });
    return (await this.decode(response)) as SubmissionResponse;
  }

  async wordcounts(): Promise<WordcountsView> {
    return (await this.view("wordcounts")) as WordcountsView;
  }

  async leaderboards(): Promise<LeaderboardsView> {
    return (await this.view("leaderboards")) as LeaderboardsView;
  }

  private async view(name: string): Promise<unknown> {
    this.viewCalls += 1;
    const response = await this.fetchFn(`${this.baseUrl}/api/views/${name}`);
    return this.decode(response);
  }

  private async decode(response: Response): Promise<unknown> {
    if (response.ok) return response.json();
    let body: ApiErrorBody | null = null;
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      body = null;
    }
    throw new ApiError(
      response.status,
      body?.error?.code ?? "http_error",
      body?.error?.message ?? `request failed with status ${response.status}`,
      body?.error?.fieldErrors ?? [],
    );
  }
}
