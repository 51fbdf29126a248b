/** Discover controller: per-keystroke search with facet toggles, pagination,
 * URL-synced state, and sequence-gated rendering. The view and the hash sink
 * are injected so the controller runs identically in the browser and tests. */

import { ApiClient } from "./api.js";
import { SequenceGate } from "./seq.js";
import type { SearchResponse } from "./types.js";
import {
  DiscoverState,
  cloneState,
  decodeState,
  emptyState,
  encodeState,
  statesEqual,
  toggleFilter,
} from "./urlstate.js";

export interface DiscoverView {
  renderResults(response: SearchResponse, state: DiscoverState): void;
  renderError(message: string): void;
}

export class DiscoverController {
  state: DiscoverState = emptyState();
  lastResponse: SearchResponse | null = null;

  private gate = new SequenceGate();
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private supersededResolve: (() => void) | null = null;

  constructor(
    private api: ApiClient,
    private view: DiscoverView,
    private syncHash: (hash: string) => void = () => {},
    private pageSize = 10,
    private debounceMs = 0,
  ) {}

  /** Apply a deep link; returns when the first render lands. */
  async restore(hash: string): Promise<void> {
    this.state = decodeState(hash);
    await this.execute();
  }

  /** One keystroke: update text, reset page, re-query immediately
   * (or after the configured debounce for slow links). */
  async handleInput(text: string): Promise<void> {
    const next = cloneState(this.state);
    next.q = text;
    next.page = 1;
    this.state = next;
    this.syncHash(encodeState(this.state));
    if (this.debounceMs <= 0) {
      await this.execute();
      return;
    }
    if (this.debounceTimer !== null) {
      // A newer keystroke supersedes the pending one; settle its promise.
      clearTimeout(this.debounceTimer);
      this.supersededResolve?.();
    }
    await new Promise<void>((resolve) => {
      this.supersededResolve = resolve;
      this.debounceTimer = setTimeout(() => {
        this.debounceTimer = null;
        this.supersededResolve = null;
        void this.execute().then(resolve);
      }, this.debounceMs);
    });
  }

  async toggleFacet(key: string, value: string): Promise<void> {
    this.state = toggleFilter(this.state, key, value);
    this.syncHash(encodeState(this.state));
    await this.execute();
  }

  async setPage(page: number): Promise<void> {
    const next = cloneState(this.state);
    next.page = Math.max(1, page);
    if (statesEqual(next, this.state)) return;
    this.state = next;
    this.syncHash(encodeState(this.state));
    await this.execute();
  }

  activeFilters(): [string, string][] {
    const active: [string, string][] = [];
    for (const [key, values] of this.state.filters) {
      for (const value of values) active.push([key, value]);
    }
    return active;
  }

  private async execute(): Promise<void> {
    const sequence = this.gate.next();
    const requested = this.state;
    let response: SearchResponse;
    try {
      response = await this.api.search(requested, this.pageSize);
    } catch (error) {
      // Failures also advance the gate: an older in-flight success must not
      // render over the newest query. Keep the last good results on screen.
      if (this.gate.tryApply(sequence)) {
        this.view.renderError(error instanceof Error ? error.message : String(error));
      }
      return;
    }
    if (!this.gate.tryApply(sequence)) return; // stale: a newer render landed
    this.lastResponse = response;
    this.view.renderResults(response, requested);
  }
}
