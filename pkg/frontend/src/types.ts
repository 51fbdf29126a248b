/** Wire types for the incident database JSON API. */

export interface Snippet {
  field: "title" | "text";
  fragment: string;
}

export interface SearchHit {
  reportId: number;
  incidentNumber: number;
  title: string;
  url: string;
  source: string;
  authors: string[];
  submitters: string[];
  datePublished: string;
  dateSubmitted: string;
  incidentDate: string | null;
  score: number;
  snippets: Snippet[];
}

export type FacetCounts = Record<string, Record<string, number>>;

export interface SearchResponse {
  totalHits: number;
  page: number;
  pageSize: number;
  hits: SearchHit[];
  facetCounts: FacetCounts;
  elapsedMs: number;
  warnings: string[];
}

export interface ReportDoc {
  id: number;
  incidentNumber: number;
  title: string;
  text: string;
  url: string;
  source: string;
  authors: string[];
  submitters: string[];
  datePublished: string;
  dateSubmitted: string;
  incidentDate: string | null;
}

export interface ClassificationDoc {
  incidentNumber: number;
  namespace: string;
  tag: string;
  classifier: string;
  date: string;
}

export interface IncidentResponse {
  number: number;
  firstSubmitter: string;
  earliestIncidentDate: string;
  earliestDateIsApproximate: boolean;
  reportCount: number;
  reports: ReportDoc[];
  classifications: ClassificationDoc[];
  citationString: string;
}

export interface CandidateDoc {
  incidentNumber: number;
  score: number;
}

export interface SubmissionResponse {
  id: number;
  state: string;
  candidates: CandidateDoc[];
  incidentNumber: number | null;
  reportId: number | null;
}

export interface ApiErrorBody {
  error: {
    code: string;
    message: string;
    fieldErrors?: string[];
  };
}

export interface WordcountsView {
  name: string;
  payload: { topN: number; counts: [string, number][] };
}

export interface LeaderboardsView {
  name: string;
  payload: {
    submitters: [string, number][];
    authors: [string, number][];
  };
}
