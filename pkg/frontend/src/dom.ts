/** Browser rendering. Everything is built with createElement/textContent;
 * fragment text never passes through innerHTML. */

import { splitFragment } from "./highlight.js";
import type { DiscoverView } from "./discover.js";
import type {
  IncidentResponse,
  LeaderboardsView,
  SearchHit,
  SearchResponse,
  WordcountsView,
} from "./types.js";
import type { DiscoverState } from "./urlstate.js";

const FACET_ORDER = ["source", "author", "submitter", "incidentNumber"];

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderFragment(fragment: string): HTMLElement {
  const span = el("span", "snippet");
  for (const part of splitFragment(fragment)) {
    if (part.match) {
      span.appendChild(el("mark", "hl", part.text));
    } else {
      span.appendChild(document.createTextNode(part.text));
    }
  }
  return span;
}

export interface DiscoverCallbacks {
  onToggleFacet(key: string, value: string): void;
  onPage(page: number): void;
}

export class DomDiscoverView implements DiscoverView {
  private results: HTMLElement;
  private facets: HTMLElement;
  private status: HTMLElement;
  private banner: HTMLElement;
  private pager: HTMLElement;

  constructor(root: HTMLElement, private callbacks: DiscoverCallbacks) {
    root.replaceChildren();
    const layout = el("div", "discover-layout");
    this.facets = el("aside", "facet-sidebar");
    const main = el("section", "results-pane");
    this.banner = el("div", "error-banner hidden");
    this.status = el("div", "result-status");
    this.results = el("div", "result-list");
    this.pager = el("nav", "pager");
    main.append(this.banner, this.status, this.results, this.pager);
    layout.append(this.facets, main);
    root.appendChild(layout);
  }

  renderResults(response: SearchResponse, state: DiscoverState): void {
    this.banner.classList.add("hidden");
    this.status.textContent =
      `${response.totalHits} reports` +
      (response.elapsedMs >= 0 ? ` (${response.elapsedMs.toFixed(1)} ms)` : "");
    this.results.replaceChildren(
      ...response.hits.map((hit) => this.renderHit(hit)),
    );
    this.renderFacets(response, state);
    this.renderPager(response);
  }

  renderError(message: string): void {
    this.banner.textContent = `Search is unreachable: ${message}`;
    this.banner.classList.remove("hidden");
  }

  private renderHit(hit: SearchHit): HTMLElement {
    const item = el("article", "hit");
    const title = el("h3", "hit-title");
    const link = el("a", undefined, hit.title || hit.url);
    link.href = hit.url;
    link.target = "_blank";
    link.rel = "noopener";
    title.appendChild(link);
    const meta = el(
      "div",
      "hit-meta",
      `${hit.source} · ${hit.datePublished} · incident `,
    );
    const incidentLink = el("a", undefined, `#${hit.incidentNumber}`);
    incidentLink.href = `#/incident/${hit.incidentNumber}`;
    meta.appendChild(incidentLink);
    item.append(title, meta);
    for (const snippet of hit.snippets) {
      const row = el("p", `snippet-row snippet-${snippet.field}`);
      row.appendChild(renderFragment(snippet.fragment));
      item.appendChild(row);
    }
    return item;
  }

  private renderFacets(response: SearchResponse, state: DiscoverState): void {
    this.facets.replaceChildren();
    const keys = Object.keys(response.facetCounts).sort(
      (a, b) => facetRank(a) - facetRank(b) || a.localeCompare(b),
    );
    for (const key of keys) {
      const group = el("div", "facet-group");
      group.appendChild(el("h4", "facet-key", key));
      const counts = response.facetCounts[key];
      const values = Object.keys(counts).sort(
        (a, b) => counts[b] - counts[a] || a.localeCompare(b),
      );
      for (const value of values.slice(0, 12)) {
        const active = state.filters.get(key)?.has(value) ?? false;
        const row = el("label", "facet-value" + (active ? " active" : ""));
        const box = el("input") as HTMLInputElement;
        box.type = "checkbox";
        box.checked = active;
        box.addEventListener("change", () => this.callbacks.onToggleFacet(key, value));
        row.append(box, el("span", "facet-label", value), el("span", "facet-count", String(counts[value])));
        group.appendChild(row);
      }
      this.facets.appendChild(group);
    }
  }

  private renderPager(response: SearchResponse): void {
    this.pager.replaceChildren();
    const pages = Math.max(1, Math.ceil(response.totalHits / response.pageSize));
    if (pages === 1) return;
    const previous = el("button", "page-button", "‹ prev");
    previous.disabled = response.page <= 1;
    previous.addEventListener("click", () => this.callbacks.onPage(response.page - 1));
    const label = el("span", "page-label", `page ${response.page} of ${pages}`);
    const next = el("button", "page-button", "next ›");
    next.disabled = response.page >= pages;
    next.addEventListener("click", () => this.callbacks.onPage(response.page + 1));
    this.pager.append(previous, label, next);
  }
}

function facetRank(key: string): number {
  const index = FACET_ORDER.indexOf(key);
  return index === -1 ? FACET_ORDER.length : index;
}

export function renderIncidentPage(root: HTMLElement, incident: IncidentResponse): void {
  root.replaceChildren();
  const page = el("div", "incident-page");
  page.appendChild(el("h2", undefined, `Incident ${incident.number}`));
  const facts = el("dl", "incident-facts");
  const fact = (term: string, detail: string) => {
    facts.append(el("dt", undefined, term), el("dd", undefined, detail));
  };
  fact("Reports", String(incident.reportCount));
  fact(
    "Earliest date",
    incident.earliestIncidentDate + (incident.earliestDateIsApproximate ? " (approximate)" : ""),
  );
  fact("First submitted by", incident.firstSubmitter);
  page.appendChild(facts);

  const citation = el("div", "citation");
  const citationText = el("code", "citation-string", incident.citationString);
  const copy = el("button", "copy-citation", "Copy citation");
  copy.addEventListener("click", () => {
    void navigator.clipboard?.writeText(incident.citationString);
  });
  citation.append(citationText, copy);
  page.appendChild(citation);

  if (incident.classifications.length > 0) {
    const tags = el("div", "classification-tags");
    for (const c of incident.classifications) {
      tags.appendChild(el("span", "tag", `${c.namespace}:${c.tag}`));
    }
    page.appendChild(tags);
  }

  const list = el("div", "incident-reports");
  for (const report of incident.reports) {
    const item = el("article", "hit");
    const title = el("h3", "hit-title");
    const link = el("a", undefined, report.title);
    link.href = report.url;
    link.target = "_blank";
    link.rel = "noopener";
    title.appendChild(link);
    item.append(
      title,
      el(
        "div",
        "hit-meta",
        `${report.source} · ${report.datePublished} · by ${report.authors.join(", ")}`,
      ),
    );
    list.appendChild(item);
  }
  page.appendChild(list);
  root.appendChild(page);
}

export function renderNotFound(root: HTMLElement, message: string): void {
  root.replaceChildren();
  const page = el("div", "not-found");
  page.appendChild(el("h2", undefined, "Not found"));
  page.appendChild(el("p", undefined, message));
  const back = el("a", undefined, "Back to Discover");
  back.href = "#/";
  page.appendChild(back);
  root.appendChild(page);
}

export function renderLeaderboards(root: HTMLElement, view: LeaderboardsView): void {
  root.replaceChildren();
  const page = el("div", "leaderboard-page");
  page.appendChild(el("h2", undefined, "Leaderboards"));
  const boards: [string, [string, number][]][] = [
    ["Submitters", view.payload.submitters],
    ["Authors", view.payload.authors],
  ];
  for (const [heading, rows] of boards) {
    const section = el("section", "board");
    section.appendChild(el("h3", undefined, heading));
    const table = el("table", "board-table");
    for (const [name, count] of rows.slice(0, 50)) {
      const row = el("tr");
      row.append(el("td", "board-name", name), el("td", "board-count", String(count)));
      table.appendChild(row);
    }
    section.appendChild(table);
    page.appendChild(section);
  }
  root.appendChild(page);
}

export function renderTopWords(root: HTMLElement, view: WordcountsView): void {
  root.replaceChildren();
  const page = el("div", "topwords-page");
  page.appendChild(el("h2", undefined, "Top words"));
  page.appendChild(
    el("p", "note", "Stems over all report text, computed at build time."),
  );
  const max = Math.max(1, ...view.payload.counts.map(([, count]) => count));
  const list = el("div", "word-bars");
  for (const [stem, count] of view.payload.counts) {
    const row = el("div", "word-bar-row");
    const bar = el("div", "word-bar");
    bar.style.width = `${Math.max(2, Math.round((count / max) * 100))}%`;
    row.append(el("span", "word-stem", stem), bar, el("span", "word-count", String(count)));
    list.appendChild(row);
  }
  page.appendChild(list);
  root.appendChild(page);
}
