/** Page models for incident detail, submit form, and the static views.
 * Pure data in, view-model out; DOM work stays in dom.ts. */

import { ApiClient, ApiError, DraftFields } from "./api.js";
import type {
  IncidentResponse,
  LeaderboardsView,
  SubmissionResponse,
  WordcountsView,
} from "./types.js";

export interface IncidentPage {
  kind: "incident";
  incident: IncidentResponse;
}

export interface NotFoundPage {
  kind: "not-found";
  message: string;
}

export async function loadIncidentPage(
  api: ApiClient,
  number: number,
): Promise<IncidentPage | NotFoundPage> {
  try {
    return { kind: "incident", incident: await api.incident(number) };
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      return { kind: "not-found", message: `Incident ${number} does not exist.` };
    }
    throw error;
  }
}

export interface SubmitOutcome {
  ok: boolean;
  submission?: SubmissionResponse;
  fieldErrors: string[];
  message: string;
}

export async function submitDraft(
  api: ApiClient,
  draft: DraftFields,
  submitter: string,
): Promise<SubmitOutcome> {
  try {
    const submission = await api.submit(draft, submitter);
    return {
      ok: true,
      submission,
      fieldErrors: [],
      message: `Submission #${submission.id} is pending review.`,
    };
  } catch (error) {
    if (error instanceof ApiError) {
      return { ok: false, fieldErrors: error.fieldErrors, message: error.message };
    }
    throw error;
  }
}

/** Static pages read pre-built view artifacts only; no search calls. */
export async function loadLeaderboardPage(api: ApiClient): Promise<LeaderboardsView> {
  return api.leaderboards();
}

export async function loadTopWordsPage(api: ApiClient): Promise<WordcountsView> {
  return api.wordcounts();
}
